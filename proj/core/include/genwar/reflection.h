#pragma once

#include <string>
#include <vector>

#include "genwar/backend.h"
#include "genwar/memory.h"
#include "genwar/prompts.h"

namespace genwar {

struct ReflectionConfig {
  double threshold = 20.0;  // accumulated importance that arms reflection
  int window = 20;          // recent memories shown to the question prompt
  int questions = 2;        // questions (and so insights) per reflection
};

struct ReflectionRecord {
  std::string question;
  std::string insight;
  int memory_id = 0;          // id of the stored reflection memory
  std::vector<int> sources;   // memory ids the insight cited
};

struct ReflectionOutcome {
  std::vector<ReflectionRecord> insights;
};

// True once importance recorded since the last reflection strictly exceeds
// the threshold.
bool should_reflect(const MemoryStream& stream, const ReflectionConfig& cfg);

// Two-phase reflection: ask for salient questions over the recent window,
// retrieve evidence per question, then distill one insight per question. All
// backend calls happen before anything is written, so a failure anywhere
// leaves the stream (accumulator included) untouched. On success the insights
// are recorded, retrieved evidence is marked accessed, and the accumulator
// resets.
ReflectionOutcome generate_reflection(MemoryStream& stream, const ReflectionConfig& cfg,
                                      Backend& backend, const PromptLibrary& prompts,
                                      RelevanceScorer& relevance, ImportanceScorer& importance,
                                      int now);

}  // namespace genwar
