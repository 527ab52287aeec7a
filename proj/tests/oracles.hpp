// Independent reference implementations for cross-checking the library.
// Everything here favors directness over speed: exhaustive enumeration,
// no memoization, no pruning beyond hard horizons.
#pragma once

#include "zslab/group.hpp"
#include "zslab/sequence.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace zslab::oracle {

// Sums of all nonempty subsequences, by expanding the multiset into a flat
// list and walking every bitmask. Lengths above 20 are rejected.
std::set<int32_t> sums_bitmask(const GroupTable& t, const Sequence& s);

// Minimality by scanning every proper nonempty submultiset for a zero sum.
bool minimal_zero_sum(const GroupTable& t, const Sequence& s);

// Every atom over the subset, by filtering all multisets of length up to the
// group order (no atom is longer: a longer sequence repeats a prefix sum,
// splitting off a proper zero-sum subsequence). Sorted.
std::vector<Sequence> atoms(const GroupTable& t, const std::vector<int32_t>& subset);

int64_t davenport(const GroupTable& t, const std::vector<int32_t>& subset);

// Factorization lengths of b over the given atoms, by recursive division
// with atom indices kept nondecreasing so each factorization multiset is
// visited once.
std::set<int64_t> length_set(const GroupTable& t, const std::vector<Sequence>& atoms,
                             const Sequence& b);

// Every permutation of element indices that fixes 0 and preserves addition.
// Meant for group orders up to 9.
std::vector<std::vector<int32_t>> automorphisms(const GroupTable& t);

// All zero-sum sequences over the subset with length in [0, max_len].
std::vector<Sequence> zero_sum_sequences(const GroupTable& t,
                                         const std::vector<int32_t>& subset,
                                         int64_t max_len);

}  // namespace zslab::oracle
