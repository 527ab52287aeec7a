#include "zslab/lengths.hpp"

#include "zslab/errors.hpp"

#include <algorithm>

namespace zslab {

std::vector<int64_t> LengthSet::delta() const {
  std::vector<int64_t> out;
  for (size_t i = 1; i < lengths.size(); ++i) {
    out.push_back(lengths[i] - lengths[i - 1]);
  }
  return out;
}

Rational LengthSet::rho() const {
  if (lengths.empty()) throw DomainError("rho of an empty length set");
  if (lengths.front() == 0) return 1;  // only the empty sequence has length 0
  return Rational(lengths.back(), lengths.front());
}

RelationMatrix relation_matrix(const AtomSet& atoms) {
  RelationMatrix out;
  out.subset = atoms.subset;
  out.m = linalg::MatrixX<BigInt>::Zero(static_cast<Eigen::Index>(atoms.subset.size()),
                                        static_cast<Eigen::Index>(atoms.atoms.size()));
  for (size_t j = 0; j < atoms.atoms.size(); ++j) {
    for (auto [idx, mult] : atoms.atoms[j].entries()) {
      auto it = std::lower_bound(atoms.subset.begin(), atoms.subset.end(), idx);
      out.m(it - atoms.subset.begin(), static_cast<Eigen::Index>(j)) = mult;
    }
  }
  return out;
}

int64_t min_delta(const AtomSet& atoms) {
  RelationMatrix rel = relation_matrix(atoms);
  BigInt g = linalg::kernel_sum_gcd(rel.m);
  return g.convert_to<int64_t>();
}

LengthSolver::LengthSolver(const GroupTable& t, AtomSet atoms, uint64_t node_budget)
    : table_(t), atoms_(std::move(atoms)), budget_(node_budget) {
  for (const Sequence& a : atoms_.atoms) {
    by_least_[a.entries().front().first].push_back(&a);
  }
}

const std::vector<int64_t>& LengthSolver::solve(const Sequence& b) {
  if (auto it = memo_.find(b); it != memo_.end()) return it->second;
  if (++nodes_ > budget_) {
    throw BudgetExceeded("length-set recursion exceeded the node budget of " +
                         std::to_string(budget_));
  }
  std::set<int64_t> acc;
  int32_t least = b.entries().front().first;
  auto bucket = by_least_.find(least);
  if (bucket != by_least_.end()) {
    for (const Sequence* a : bucket->second) {
      if (++nodes_ > budget_) {
        throw BudgetExceeded("length-set recursion exceeded the node budget of " +
                             std::to_string(budget_));
      }
      if (!a->divides(b)) continue;
      Sequence rest = divide(b, *a);
      if (rest.empty()) {
        acc.insert(1);
      } else {
        for (int64_t len : solve(rest)) acc.insert(len + 1);
      }
    }
  }
  if (acc.empty()) {
    throw DomainError("sequence admits no factorization over the given atoms");
  }
  return memo_.emplace(b, std::vector<int64_t>(acc.begin(), acc.end())).first->second;
}

LengthSet LengthSolver::lengths(const Sequence& b) {
  if (b.empty()) return LengthSet{{0}};
  if (sigma(table_, b) != 0) throw DomainError("length set of a non-zero-sum sequence");
  for (auto [idx, mult] : b.entries()) {
    if (!std::binary_search(atoms_.subset.begin(), atoms_.subset.end(), idx)) {
      throw DomainError("sequence uses an element outside the atom set's subset");
    }
  }
  return LengthSet{solve(b)};
}

LengthSet length_set(const GroupTable& t, const Sequence& b, const AtomSet& atoms,
                     uint64_t node_budget) {
  LengthSolver solver(t, atoms, node_budget);
  return solver.lengths(b);
}

LengthSet length_set(const GroupTable& t, const Sequence& b, const EnumOptions& opts) {
  if (b.empty()) return LengthSet{{0}};
  return length_set(t, b, enumerate_atoms(t, b.support(), opts), opts.node_budget);
}

bool is_half_factorial(const AtomSet& atoms) {
  return atoms.atoms.empty() || (atoms.min_cross == 1 && atoms.max_cross == 1);
}

bool is_lcn(const AtomSet& atoms) {
  return atoms.atoms.empty() || atoms.min_cross >= 1;
}

ElasticityResult elasticity_lp(const AtomSet& atoms) {
  if (atoms.atoms.empty()) throw DomainError("elasticity over an empty atom set");
  Eigen::Index m = static_cast<Eigen::Index>(atoms.subset.size());
  Eigen::Index n = static_cast<Eigen::Index>(atoms.atoms.size());
  RelationMatrix rel = relation_matrix(atoms);

  linalg::MatrixX<Rational> e = linalg::MatrixX<Rational>::Zero(m + 1, 2 * n);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Rational v(rel.m(i, j));
      e(i, j) = v;
      e(i, n + j) = -v;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) e(m, j) = 1;
  linalg::VectorX<Rational> b = linalg::VectorX<Rational>::Zero(m + 1);
  b(m) = 1;
  linalg::VectorX<Rational> c = linalg::VectorX<Rational>::Zero(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) c(n + j) = 1;

  linalg::LpResult<Rational> lp = linalg::simplex_maximize(std::move(e), std::move(b), c);
  ElasticityResult out;
  out.value = lp.value;
  out.x = lp.primal.head(n);
  out.y = lp.primal.tail(n);
  return out;
}

Rational elasticity(const AtomSet& atoms) {
  // with every cross number 1, all factorizations of b have length k(b)
  if (is_half_factorial(atoms)) return 1;
  return elasticity_lp(atoms).value;
}

std::set<int64_t> delta_bounded(const GroupTable& t, const AtomSet& atoms,
                                int64_t length_budget, uint64_t node_budget) {
  LengthSolver solver(t, atoms, node_budget);
  std::set<int64_t> out;
  int64_t md = min_delta(atoms);
  uint64_t nodes = 0;

  const std::vector<int32_t>& subset = atoms.subset;
  std::vector<int64_t> mults(subset.size(), 0);

  auto process = [&](int64_t total) {
    if (total == 0) return;
    std::vector<std::pair<int32_t, int64_t>> pairs;
    for (size_t i = 0; i < subset.size(); ++i) {
      if (mults[i] > 0) pairs.emplace_back(subset[i], mults[i]);
    }
    LengthSet l = solver.lengths(Sequence::from_pairs(std::move(pairs)));
    for (int64_t d : l.delta()) {
      if (md == 0 || d % md != 0) {
        throw DomainError("internal: observed length distance incompatible with min_delta");
      }
      out.insert(d);
    }
  };

  auto dfs = [&](auto&& self, size_t pos, int32_t sum, int64_t total) -> void {
    if (++nodes > node_budget) {
      throw BudgetExceeded("bounded distance enumeration exceeded the node budget");
    }
    if (pos == subset.size()) {
      if (sum == 0) process(total);
      return;
    }
    int32_t g = subset[pos];
    int32_t acc = sum;
    for (int64_t v = 0; total + v <= length_budget; ++v) {
      mults[pos] = v;
      self(self, pos + 1, acc, total + v);
      acc = t.add(acc, g);
    }
    mults[pos] = 0;
  };
  dfs(dfs, 0, 0, 0);
  return out;
}

}  // namespace zslab
