#pragma once

#include "zslab/lengths.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace zslab {

// Per-subset record produced by a sweep over nonempty subsets of the nonzero
// elements.
struct SubsetReport {
  std::vector<int32_t> subset;  // orbit-canonical representative, sorted
  int64_t min_delta = 0;
  bool half_factorial = false;
  bool lcn = false;
  Rational max_cross = 0;
  int64_t davenport = 0;
  std::optional<Rational> elasticity;  // filled when requested
  bool budget_exceeded = false;
  uint64_t nodes = 0;
};

struct SweepOptions {
  std::optional<int64_t> max_size;  // cap on subset size; none = full sweep
  bool orbit_reduction = true;
  bool with_elasticity = false;  // sweeps fill it lazily when a caller needs it
  int threads = 1;
  // Bound on candidate subsets canonicalized while generating representatives;
  // groups whose sweep would explode fail fast instead of spinning.
  uint64_t canon_budget = 2'000'000;
  EnumOptions enum_opts;
  AutCaps aut_caps;
  // Called once per finished report, in report-index order regardless of
  // thread count and never concurrently.
  std::function<void(size_t, const SubsetReport&)> on_report;
};

struct SweepResult {
  Group group;
  std::shared_ptr<const GroupTable> table;
  bool orbit_reduced = false;       // automorphism materialization succeeded
  bool capped = false;              // subset sizes were capped below full
  bool any_budget_exceeded = false;
  int64_t max_size = 0;             // effective size cap
  EnumOptions enum_opts;
  std::vector<SubsetReport> reports;  // ordered by (size, lexicographic subset)
};

// Orbit representatives are grown level by level: every orbit of a
// (k+1)-subset contains an extension of some level-k representative, so
// extending each representative by every outside element and canonicalizing
// covers all orbits.
SweepResult sweep_subsets(const Group& g, const SweepOptions& opts = {});

// Derived invariants. All of them throw IncompleteResult if the sweep lost
// subsets to budget errors; a size-capped sweep instead clears the exact
// flag, making the value lower-bound-certified.
struct SetWithExactness {
  std::set<int64_t> values;
  bool exact = true;
};
struct IntWithExactness {
  int64_t value = 0;
  bool exact = true;
};
struct RationalWithExactness {
  Rational value;
  bool exact = true;
  std::vector<int32_t> witness;  // subset attaining the value
};

// Set of min_delta values over non-half-factorial subsets.
SetWithExactness delta_star(const SweepResult& sweep);

// Largest min_delta over subsets whose atoms all have cross number >= 1;
// 0 when no such non-half-factorial subset exists.
IntWithExactness m_of(const SweepResult& sweep);

// Largest elasticity over non-half-factorial subsets whose min_delta is a
// multiple of d; nullopt when no subset qualifies. May fill elasticities
// into the sweep, hence the mutable reference.
std::optional<RationalWithExactness> rho_star(SweepResult& sweep, int64_t d);

// Largest max_cross over the same family of subsets.
std::optional<RationalWithExactness> k_of(const SweepResult& sweep, int64_t d);

struct RhoDBounds {
  int64_t d = 0;
  Rational lower, upper;
  bool exact = false;
  std::vector<int32_t> lower_witness, upper_witness;
  std::string note;  // provenance of the lower bound when no exact-d subset exists
};

// Sandwich for the growth coefficient at distance d: upper bound rho_star,
// lower bound the best elasticity among subsets with min_delta exactly d.
std::optional<RhoDBounds> rho_d_bounds(SweepResult& sweep, int64_t d);

struct Delta1Bounds {
  std::set<int64_t> lower, upper;
  bool exact = true;
};

// lower: delta_star itself. upper: divisors of delta_star members clipped to
// [1, max(rank-1, exp/2-1)] union [max(1, exp-k-1), exp-2] with k the
// exponent multiplicity.
Delta1Bounds delta1_bounds(const SweepResult& sweep);

// Decomposition of a length set as head + arithmetic progression + tail on
// the d-grid: the progression is a maximal run of difference exactly d, and
// the bound caps how far head and tail protrude past the progression ends.
struct AAPWitness {
  int64_t y = 0;      // progression start
  int64_t d = 1;      // difference
  int64_t ell = 0;    // progression has ell+1 members
  int64_t bound = 0;  // max protrusion of head and tail
  std::vector<int64_t> head, tail;
};
AAPWitness aap_decompose(const LengthSet& l, int64_t d);

}  // namespace zslab
