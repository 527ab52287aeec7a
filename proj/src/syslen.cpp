#include "zslab/syslen.hpp"

#include "zslab/errors.hpp"

#include <algorithm>
#include <map>

namespace zslab {

LengthSystem length_system(const Group& g, int64_t max_len, const EnumOptions& opts) {
  if (max_len < 0) throw DomainError("negative length bound");
  GroupTable t(g);
  int32_t n = t.size();

  std::vector<int32_t> everything(static_cast<size_t>(n));
  for (int32_t x = 0; x < n; ++x) everything[static_cast<size_t>(x)] = x;
  AtomSet atoms = enumerate_atoms(t, everything, opts);
  LengthSolver solver(t, atoms, opts.node_budget);

  std::vector<std::vector<int32_t>> auts;
  try {
    auts = automorphisms(t);
  } catch (const CapExceeded&) {
    // identity-only: every sequence is its own representative
  }

  // The orbit of a sequence under Aut(G) has a constant length set, so only
  // canonical representatives (least multiplicity vector under the index
  // permutations) are solved.
  std::vector<int64_t> mults(static_cast<size_t>(n), 0);
  std::vector<int64_t> image(static_cast<size_t>(n), 0);
  auto is_canonical = [&]() {
    for (const auto& perm : auts) {
      for (int32_t x = 0; x < n; ++x) image[static_cast<size_t>(perm[x])] = mults[x];
      if (std::lexicographical_compare(image.begin(), image.end(), mults.begin(),
                                       mults.end())) {
        return false;
      }
    }
    return true;
  };

  std::map<LengthSet, Sequence> found;
  found.emplace(LengthSet{{0}}, Sequence());

  auto process = [&]() {
    if (!is_canonical()) return;
    std::vector<std::pair<int32_t, int64_t>> pairs;
    for (int32_t x = 0; x < n; ++x) {
      if (mults[x] > 0) pairs.emplace_back(x, mults[x]);
    }
    Sequence b = Sequence::from_pairs(std::move(pairs));
    LengthSet l = solver.lengths(b);
    found.emplace(l, b);  // keeps the first witness in enumeration order
  };

  auto dfs = [&](auto&& self, int32_t pos, int32_t sum, int64_t total) -> void {
    if (pos == n) {
      if (sum == 0 && total > 0) process();
      return;
    }
    int32_t acc = sum;
    for (int64_t v = 0; total + v <= max_len; ++v) {
      mults[pos] = v;
      self(self, pos + 1, acc, total + v);
      acc = t.add(acc, pos);
    }
    mults[pos] = 0;
  };
  dfs(dfs, 0, 0, 0);

  LengthSystem out;
  out.group = g;
  out.max_len = max_len;
  for (auto& [l, b] : found) {
    out.sets.push_back(l);
    out.witnesses.push_back(b);
  }
  return out;
}

SystemComparison compare_systems(const Group& a, const Group& b, int64_t max_len,
                                 const EnumOptions& opts) {
  LengthSystem sys_a = length_system(a, max_len, opts);
  LengthSystem sys_b = length_system(b, max_len, opts);

  SystemComparison out;
  out.left = a.name();
  out.right = b.name();
  out.max_len = max_len;

  auto pick_unmatched = [](const LengthSystem& mine, const LengthSystem& other,
                           std::optional<LengthSet>& witness, Sequence& seq) {
    for (size_t i = 0; i < mine.sets.size(); ++i) {
      if (!std::binary_search(other.sets.begin(), other.sets.end(), mine.sets[i])) {
        witness = mine.sets[i];
        seq = mine.witnesses[i];
        return;
      }
    }
  };

  std::optional<LengthSet> from_a, from_b;
  Sequence seq_a, seq_b;
  pick_unmatched(sys_a, sys_b, from_a, seq_a);
  pick_unmatched(sys_b, sys_a, from_b, seq_b);
  if (!from_a && !from_b) return out;

  out.bounded_equal = false;
  const Group* realizer = nullptr;
  const Group* excluded = nullptr;
  Sequence seq;
  if (from_a && (!from_b || from_a->lengths <= from_b->lengths)) {
    out.witness = from_a;
    realizer = &a;
    excluded = &b;
    seq = seq_a;
  } else {
    out.witness = from_b;
    realizer = &b;
    excluded = &a;
    seq = seq_b;
  }
  out.realized_in = realizer->name();
  out.witness_sequence = format_sequence(*realizer, seq);

  // Any sequence over the excluded group realizing lengths L satisfies
  // min L >= |B| / D, so candidates longer than the horizon cannot exist
  // when max(L) * D stays below it.
  GroupTable te(*excluded);
  int64_t d_other = enumerate_atoms_full(te, opts).davenport;
  int64_t max_l = out.witness->lengths.back();
  out.exclusion = (max_l * d_other < max_len) ? "absolute" : "bounded";
  return out;
}

}  // namespace zslab
