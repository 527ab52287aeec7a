#pragma once

#include "zslab/lengths.hpp"

#include <optional>
#include <string>
#include <vector>

namespace zslab {

// All length sets realized by zero-sum sequences of length at most max_len,
// with a witness sequence for each. The empty sequence contributes {0}.
struct LengthSystem {
  Group group;
  int64_t max_len = 0;
  std::vector<LengthSet> sets;      // sorted
  std::vector<Sequence> witnesses;  // parallel to sets: first realizing sequence
};

LengthSystem length_system(const Group& g, int64_t max_len, const EnumOptions& opts = {});

struct SystemComparison {
  std::string left, right;  // group names
  int64_t max_len = 0;
  bool bounded_equal = true;

  // populated when the bounded systems differ
  std::optional<LengthSet> witness;  // least length set realized on one side only
  std::string realized_in;           // group name of the realizing side
  std::string witness_sequence;      // literal of a realizing sequence
  // "absolute": the other group cannot realize the witness at any bound,
  // because every candidate sequence was already inside the horizon.
  // "bounded": exclusion certified only up to max_len.
  std::string exclusion;
};

// Compares the bounded systems of two groups and certifies any difference.
SystemComparison compare_systems(const Group& a, const Group& b, int64_t max_len,
                                 const EnumOptions& opts = {});

}  // namespace zslab
