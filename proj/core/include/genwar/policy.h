#pragma once

#include <string>

#include "genwar/sim.h"
#include "genwar/view.h"

namespace genwar {

// A side's decision maker. Implementations only ever see the fog-restricted
// SideView; sim-core re-checks whatever they return.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual ActionMap decide(const SideView& view) = 0;
  virtual std::string name() const = 0;
};

}  // namespace genwar
