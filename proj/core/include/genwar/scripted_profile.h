#pragma once

#include <memory>

#include "genwar/scenario.h"
#include "genwar/scripted_backend.h"

namespace genwar {

// Deterministic rule table driving the full agent pipeline without any
// model: importance scores keyed on the event wording (road 1, approaching 7,
// seizing 8, otherwise 3), flat relevance 5, canned reflection questions and
// insight, a one-line summary, per-side plans that send every unit toward
// the control point at speed, and tactical reviews that always accept.
std::shared_ptr<ScriptedBackend> make_scripted_profile(const Scenario& scenario);

// Same table with the tactical-review rule replaced by an objection that
// never goes away; negotiation then always runs to its round cap.
std::shared_ptr<ScriptedBackend> make_always_object_profile(const Scenario& scenario);

}  // namespace genwar
