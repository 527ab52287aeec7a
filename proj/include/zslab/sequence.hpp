#pragma once

#include "zslab/group.hpp"
#include "zslab/numeric.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zslab {

// Finite multiset of group elements, stored as (element index, multiplicity)
// pairs sorted by index. Order never matters; equality is multiset equality.
class Sequence {
public:
  Sequence() = default;
  static Sequence from_pairs(std::vector<std::pair<int32_t, int64_t>> pairs);

  const std::vector<std::pair<int32_t, int64_t>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int64_t length() const;
  int64_t mult(int32_t index) const;
  std::vector<int32_t> support() const;

  bool divides(const Sequence& s) const;

  friend bool operator==(const Sequence&, const Sequence&) = default;
  friend auto operator<=>(const Sequence& a, const Sequence& b) {
    return a.entries_ <=> b.entries_;
  }

private:
  std::vector<std::pair<int32_t, int64_t>> entries_;
};

Sequence mul(const Sequence& a, const Sequence& b);
Sequence power(const Sequence& a, int64_t k);
Sequence divide(const Sequence& s, const Sequence& t);  // throws NotDivisibleError

int32_t sigma(const GroupTable& t, const Sequence& s);
Rational cross_number(const GroupTable& t, const Sequence& s);

struct SumOptions {
  // Hard cap on |S| for the subset-sum table; quadratic-in-order work per
  // element of the sequence keeps this cheap, but the result can be the full
  // group long before the cap.
  int64_t length_cap = 24;
};

// reachable[x] = 1 iff some nonempty subsequence of s sums to element x.
std::vector<char> subsequence_sum_table(const GroupTable& t, const Sequence& s,
                                        const SumOptions& opts = {});
std::vector<int32_t> subsequence_sums(const GroupTable& t, const Sequence& s,
                                      const SumOptions& opts = {});

bool is_zero_sum(const GroupTable& t, const Sequence& s);
bool is_zero_sum_free(const GroupTable& t, const Sequence& s, const SumOptions& opts = {});

// Minimal zero-sum test via the removal characterization: s is zero-sum and
// dropping one copy of any element of the support leaves a zero-sum-free
// sequence.
bool is_minimal_zero_sum(const GroupTable& t, const Sequence& s, const SumOptions& opts = {});

// Same predicate by direct enumeration of proper nonempty subsequences; used
// to cross-check the removal characterization.
bool is_minimal_zero_sum_direct(const GroupTable& t, const Sequence& s);

std::string format_sequence(const Group& g, const Sequence& s);
Sequence parse_sequence(const Group& g, std::string_view text);

Sequence sequence_from_elements(const Group& g,
                                const std::vector<std::pair<Element, int64_t>>& parts);

}  // namespace zslab
