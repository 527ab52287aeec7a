#pragma once

#include "zslab/atoms.hpp"
#include "zslab/linalg.hpp"

#include <set>
#include <unordered_map>
#include <vector>

namespace zslab {

// Set of factorization lengths of one zero-sum sequence.
struct LengthSet {
  std::vector<int64_t> lengths;  // sorted, distinct

  std::vector<int64_t> delta() const;  // successive differences
  Rational rho() const;                // max/min; 1 for {0}

  friend bool operator==(const LengthSet&, const LengthSet&) = default;
  friend auto operator<=>(const LengthSet& a, const LengthSet& b) {
    return a.lengths <=> b.lengths;
  }
};

// Exponent matrix of the atoms: rows follow the subset, columns the atoms.
struct RelationMatrix {
  std::vector<int32_t> subset;
  linalg::MatrixX<BigInt> m;
};
RelationMatrix relation_matrix(const AtomSet& atoms);

// gcd over the kernel of the relation matrix of the coordinate sum: the
// least positive distance between factorization lengths over the subset,
// or 0 when every sequence is half-factorial. A kernel vector x splits as
// x+ - x- into two factorizations of one sequence differing by sum(x) in
// length, and conversely, so the set of length differences is exactly the
// image of the kernel under the coordinate sum.
int64_t min_delta(const AtomSet& atoms);

// Shared-memo length-set solver over one atom set. Every call reuses the
// memo, which is what makes bounded enumerations of many sequences cheap.
class LengthSolver {
public:
  LengthSolver(const GroupTable& t, AtomSet atoms, uint64_t node_budget = 100'000'000);

  LengthSet lengths(const Sequence& b);
  const AtomSet& atoms() const { return atoms_; }

private:
  struct SeqHash {
    size_t operator()(const Sequence& s) const {
      uint64_t h = 1469598103934665603ULL;
      for (auto [idx, mult] : s.entries()) {
        h ^= static_cast<uint64_t>(idx) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
        h ^= static_cast<uint64_t>(mult);
        h *= 1099511628211ULL;
      }
      return static_cast<size_t>(h);
    }
  };

  const std::vector<int64_t>& solve(const Sequence& b);

  const GroupTable& table_;
  AtomSet atoms_;
  // atoms bucketed by least support index: every factorization of b uses an
  // atom covering b's least element, and restricting the branching to those
  // atoms still reaches every length
  std::unordered_map<int32_t, std::vector<const Sequence*>> by_least_;
  std::unordered_map<Sequence, std::vector<int64_t>, SeqHash> memo_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
};

// One-shot wrappers.
LengthSet length_set(const GroupTable& t, const Sequence& b, const AtomSet& atoms,
                     uint64_t node_budget = 100'000'000);
LengthSet length_set(const GroupTable& t, const Sequence& b,
                     const EnumOptions& opts = {});

// Half-factorial: every atom has cross number 1, equivalently every length
// set is a singleton.
bool is_half_factorial(const AtomSet& atoms);

// Every atom has cross number at least 1.
bool is_lcn(const AtomSet& atoms);

struct ElasticityResult {
  Rational value;
  // optimal vertex of the underlying program: two fractional factorizations
  // of a common sequence, column weights over the atoms
  linalg::VectorX<Rational> x, y;
};

// sup of max L / min L over zero-sum sequences: the optimum of the exact
// rational program max 1.y subject to Mx = My, 1.x = 1, x, y >= 0.
ElasticityResult elasticity_lp(const AtomSet& atoms);
Rational elasticity(const AtomSet& atoms);

// Union of delta(L(b)) over all zero-sum b over the subset with
// |b| <= length_budget. Every member is a multiple of min_delta.
std::set<int64_t> delta_bounded(const GroupTable& t, const AtomSet& atoms,
                                int64_t length_budget,
                                uint64_t node_budget = 100'000'000);

}  // namespace zslab
