#pragma once

#include <cstdint>

#include "genwar/policy.h"
#include "genwar/rng.h"

namespace genwar {

// Fixed-doctrine opponent: shoot the nearest enemy in weapon range, otherwise
// take the greedy free-cell step toward the control point, otherwise hold.
class RulePolicy : public Policy {
 public:
  ActionMap decide(const SideView& view) override;
  std::string name() const override { return "rule"; }
};

// Uniform choice among each unit's view-legal actions, from an owned seeded
// generator.
class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : rng_(seed) {}
  ActionMap decide(const SideView& view) override;
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

}  // namespace genwar
