#include "zslab/errors.hpp"
#include "zslab/invariants.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace zslab;

namespace {

SweepOptions quick(bool reduce = true) {
  SweepOptions o;
  o.orbit_reduction = reduce;
  o.enum_opts.use_cache = false;
  return o;
}

bool reports_equal(const SubsetReport& a, const SubsetReport& b) {
  return a.subset == b.subset && a.min_delta == b.min_delta &&
         a.half_factorial == b.half_factorial && a.lcn == b.lcn &&
         a.max_cross == b.max_cross && a.davenport == b.davenport &&
         a.elasticity == b.elasticity && a.budget_exceeded == b.budget_exceeded;
}

// m and delta_star recomputed from oracle atom lists over raw subsets
struct BruteDerived {
  int64_t m = 0;
  std::set<int64_t> delta_star;
};

BruteDerived brute_derived(const GroupTable& t) {
  BruteDerived out;
  int32_t n = t.size() - 1;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int32_t> subset;
    for (int32_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(i + 1);
    }
    AtomSet as;
    as.group = t.group();
    as.subset = subset;
    as.atoms = oracle::atoms(t, subset);
    int64_t md = min_delta(as);
    if (md > 0) out.delta_star.insert(md);
    bool lcn = !as.atoms.empty();
    for (const Sequence& a : as.atoms) {
      if (cross_number(t, a) < 1) {
        lcn = false;
        break;
      }
    }
    if (lcn && md > 0) out.m = std::max(out.m, md);
  }
  return out;
}

}  // namespace

TEST_SUITE("invariants") {

TEST_CASE("sweep over C4 lists orbit representatives in size-then-lex order") {
  SweepResult reduced = sweep_subsets(parse_group("C4"), quick());
  REQUIRE(reduced.orbit_reduced);
  REQUIRE(reduced.reports.size() == 5);
  std::vector<std::vector<int32_t>> expected = {{1}, {2}, {1, 2}, {1, 3}, {1, 2, 3}};
  for (size_t i = 0; i < expected.size(); ++i) {
    CHECK(reduced.reports[i].subset == expected[i]);
  }
  CHECK_FALSE(reduced.capped);

  SweepResult raw = sweep_subsets(parse_group("C4"), quick(false));
  REQUIRE(raw.reports.size() == 7);
  std::vector<std::vector<int32_t>> all = {{1},    {2},    {3},    {1, 2},
                                           {1, 3}, {2, 3}, {1, 2, 3}};
  for (size_t i = 0; i < all.size(); ++i) CHECK(raw.reports[i].subset == all[i]);
}

TEST_CASE("derived invariants are blind to orbit reduction") {
  for (const char* name : {"C4", "C5", "C6", "C2^2", "C3^2"}) {
    CAPTURE(name);
    Group g = parse_group(name);
    SweepResult reduced = sweep_subsets(g, quick());
    SweepResult raw = sweep_subsets(g, quick(false));
    CHECK(delta_star(reduced).values == delta_star(raw).values);
    CHECK(m_of(reduced).value == m_of(raw).value);
    auto k1 = k_of(reduced, 1), k2 = k_of(raw, 1);
    CHECK(k1.has_value() == k2.has_value());
    if (k1 && k2) CHECK(k1->value == k2->value);
  }
}

TEST_CASE("sweep results do not depend on the thread count") {
  for (const char* name : {"C5", "C3^2"}) {
    CAPTURE(name);
    SweepOptions one = quick();
    SweepOptions four = quick();
    four.threads = 4;
    SweepResult a = sweep_subsets(parse_group(name), one);
    SweepResult b = sweep_subsets(parse_group(name), four);
    REQUIRE(a.reports.size() == b.reports.size());
    for (size_t i = 0; i < a.reports.size(); ++i) {
      CAPTURE(i);
      CHECK(reports_equal(a.reports[i], b.reports[i]));
      CHECK(a.reports[i].nodes == b.reports[i].nodes);
    }
  }
}

TEST_CASE("report callback fires once per report, in index order, under threads") {
  SweepOptions o = quick();
  o.threads = 4;
  std::vector<size_t> seen;
  std::vector<std::vector<int32_t>> subsets;
  o.on_report = [&](size_t i, const SubsetReport& rep) {
    seen.push_back(i);
    subsets.push_back(rep.subset);
  };
  SweepResult r = sweep_subsets(parse_group("C3^2"), o);
  REQUIRE(seen.size() == r.reports.size());
  for (size_t i = 0; i < seen.size(); ++i) {
    CHECK(seen[i] == i);
    CHECK(subsets[i] == r.reports[i].subset);
  }
}

TEST_CASE("delta_star of small groups") {
  auto ds = [](const char* name) {
    SweepResult s = sweep_subsets(parse_group(name), quick());
    return delta_star(s);
  };
  CHECK(ds("C4").values == std::set<int64_t>{1, 2});
  CHECK(ds("C5").values == std::set<int64_t>{1, 3});
  CHECK(ds("C2^2").values == std::set<int64_t>{1});
  CHECK(ds("C3^2").values == std::set<int64_t>{1});
  CHECK(ds("C2^3").values == std::set<int64_t>{1, 2});
  CHECK(ds("C2").values.empty());
  CHECK(ds("C4").exact);
}

TEST_CASE("m of small groups, against the oracle recomputation") {
  for (const char* name : {"C4", "C5", "C6", "C2^2"}) {
    CAPTURE(name);
    GroupTable t(parse_group(name));
    BruteDerived brute = brute_derived(t);
    SweepResult s = sweep_subsets(t.group(), quick());
    CHECK(m_of(s).value == brute.m);
    CHECK(delta_star(s).values == brute.delta_star);
  }
  SweepResult c4 = sweep_subsets(parse_group("C4"), quick());
  CHECK(m_of(c4).value == 0);  // every LCN subset of C4 is half-factorial
  SweepResult c5 = sweep_subsets(parse_group("C5"), quick());
  CHECK(m_of(c5).value == 0);
  SweepResult klein = sweep_subsets(parse_group("C2^2"), quick());
  CHECK(m_of(klein).value == 1);
  SweepResult c33 = sweep_subsets(parse_group("C3^2"), quick());
  CHECK(m_of(c33).value == 1);
}

TEST_CASE("rho_star picks the best qualifying subset") {
  SweepResult s = sweep_subsets(parse_group("C5"), quick());
  auto r1 = rho_star(s, 1);
  REQUIRE(r1.has_value());
  CHECK(r1->value == Rational(5, 2));
  CHECK(r1->exact);
  CHECK(r1->witness == std::vector<int32_t>{1, 4});
  auto r3 = rho_star(s, 3);
  REQUIRE(r3.has_value());
  CHECK(r3->value == Rational(5, 2));
  CHECK_FALSE(rho_star(s, 2).has_value());
  CHECK_FALSE(rho_star(s, 4).has_value());
  CHECK_THROWS_AS(rho_star(s, 0), DomainError);
}

TEST_CASE("rho_star shrinks as the divisor grows") {
  SweepResult s = sweep_subsets(parse_group("C3^2"), quick());
  auto r1 = rho_star(s, 1);
  REQUIRE(r1.has_value());
  // every subset qualifying at d also qualifies at 1
  for (int64_t d = 2; d <= 4; ++d) {
    auto rd = rho_star(s, d);
    if (rd) CHECK(rd->value <= r1->value);
  }
}

TEST_CASE("k_of on C5") {
  SweepResult s = sweep_subsets(parse_group("C5"), quick());
  auto k3 = k_of(s, 3);
  REQUIRE(k3.has_value());
  CHECK(k3->value == Rational(1));
  CHECK(k3->witness == std::vector<int32_t>{1, 4});
  CHECK_FALSE(k_of(s, 2).has_value());
}

TEST_CASE("growth bounds collapse when one subset is extremal both ways") {
  SweepResult s = sweep_subsets(parse_group("C5"), quick());
  auto b = rho_d_bounds(s, 3);
  REQUIRE(b.has_value());
  CHECK(b->d == 3);
  CHECK(b->lower == Rational(5, 2));
  CHECK(b->upper == Rational(5, 2));
  CHECK(b->exact);
  CHECK(b->note.empty());
  CHECK(b->lower_witness == std::vector<int32_t>{1, 4});

  SweepResult c4 = sweep_subsets(parse_group("C4"), quick());
  auto b2 = rho_d_bounds(c4, 2);
  REQUIRE(b2.has_value());
  CHECK(b2->lower == Rational(2));
  CHECK(b2->upper == Rational(2));
  CHECK(b2->exact);

  CHECK_FALSE(rho_d_bounds(s, 2).has_value());
}

TEST_CASE("growth bounds fall back to the trivial lower bound when the exact distance is missing") {
  // capped at pairs, C4 has min_delta 2 via {1,3} but no subset of least
  // distance exactly 1, so d = 1 keeps only the trivial lower bound
  SweepOptions o = quick();
  o.max_size = 2;
  SweepResult s = sweep_subsets(parse_group("C4"), o);
  auto b = rho_d_bounds(s, 1);
  REQUIRE(b.has_value());
  CHECK(b->lower == Rational(1));
  CHECK(b->upper == Rational(2));
  CHECK_FALSE(b->exact);
  CHECK_FALSE(b->note.empty());
  CHECK(b->lower_witness.empty());
  CHECK(b->upper_witness == std::vector<int32_t>{1, 3});
}

TEST_CASE("delta1 windows on cyclic groups") {
  SweepResult c4 = sweep_subsets(parse_group("C4"), quick());
  Delta1Bounds b4 = delta1_bounds(c4);
  CHECK(b4.lower == std::set<int64_t>{1, 2});
  CHECK(b4.upper == std::set<int64_t>{1, 2});
  CHECK(b4.exact);

  SweepResult c5 = sweep_subsets(parse_group("C5"), quick());
  Delta1Bounds b5 = delta1_bounds(c5);
  CHECK(b5.lower == std::set<int64_t>{1, 3});
  CHECK(b5.upper == std::set<int64_t>{1, 3});

  // the lower family always sits inside the upper one
  for (const char* name : {"C4", "C5", "C6", "C2^3", "C3^2"}) {
    CAPTURE(name);
    SweepResult s = sweep_subsets(parse_group(name), quick());
    Delta1Bounds b = delta1_bounds(s);
    for (int64_t d : b.lower) CHECK(b.upper.count(d) == 1);
  }
}

TEST_CASE("capped sweeps mark their derived values inexact") {
  SweepOptions o = quick();
  o.max_size = 2;
  SweepResult s = sweep_subsets(parse_group("C5"), o);
  CHECK(s.capped);
  SetWithExactness ds = delta_star(s);
  CHECK_FALSE(ds.exact);
  CHECK(ds.values == std::set<int64_t>{1, 3});  // both already visible at pairs
  auto r = rho_star(s, 1);
  REQUIRE(r.has_value());
  CHECK_FALSE(r->exact);

  SweepOptions oversize = quick();
  oversize.max_size = 99;
  SweepResult t = sweep_subsets(parse_group("C5"), oversize);
  CHECK_FALSE(t.capped);  // clamped to the full size
}

TEST_CASE("budget losses poison derived invariants") {
  SweepOptions o = quick();
  o.enum_opts.node_budget = 3;
  SweepResult s = sweep_subsets(parse_group("C5"), o);
  CHECK(s.any_budget_exceeded);
  bool some_failed = false;
  for (const auto& rep : s.reports) some_failed |= rep.budget_exceeded;
  CHECK(some_failed);
  CHECK_THROWS_AS(delta_star(s), IncompleteResult);
  CHECK_THROWS_AS(m_of(s), IncompleteResult);
  CHECK_THROWS_AS(rho_star(s, 1), IncompleteResult);
  CHECK_THROWS_AS(k_of(s, 1), IncompleteResult);
}

TEST_CASE("full sweeps refuse oversized groups; capped sweeps accept them") {
  CHECK_THROWS_AS(sweep_subsets(parse_group("C88"), quick()), DomainError);
  SweepOptions o = quick();
  o.max_size = 1;
  SweepResult s = sweep_subsets(parse_group("C88"), o);
  CHECK(s.capped);
  CHECK(!s.reports.empty());
}

TEST_CASE("size cap of zero yields an empty sweep") {
  SweepOptions o = quick();
  o.max_size = 0;
  SweepResult s = sweep_subsets(parse_group("C5"), o);
  CHECK(s.reports.empty());
  CHECK(delta_star(s).values.empty());
  CHECK_FALSE(delta_star(s).exact);
}

TEST_CASE("identity fallback when automorphism caps are hit") {
  SweepOptions o = quick();
  o.aut_caps.max_order = 1;
  SweepResult s = sweep_subsets(parse_group("C4"), o);
  CHECK_FALSE(s.orbit_reduced);
  CHECK(s.reports.size() == 7);
}

TEST_CASE("C2 sweeps to a single half-factorial report") {
  SweepResult s = sweep_subsets(parse_group("C2"), quick());
  REQUIRE(s.reports.size() == 1);
  const SubsetReport& rep = s.reports[0];
  CHECK(rep.subset == std::vector<int32_t>{1});
  CHECK(rep.half_factorial);
  CHECK(rep.min_delta == 0);
  CHECK(rep.max_cross == Rational(1));
  CHECK(rep.davenport == 2);
  CHECK(m_of(s).value == 0);
  CHECK(delta_star(s).values.empty());
}

TEST_CASE("progression decomposition of length sets") {
  AAPWitness w = aap_decompose(LengthSet{{2, 3, 4}}, 1);
  CHECK(w.y == 2);
  CHECK(w.ell == 2);
  CHECK(w.bound == 0);
  CHECK(w.head.empty());
  CHECK(w.tail.empty());

  w = aap_decompose(LengthSet{{3, 5, 7, 8}}, 2);
  CHECK(w.y == 3);
  CHECK(w.ell == 2);
  CHECK(w.bound == 1);
  CHECK(w.head.empty());
  CHECK(w.tail == std::vector<int64_t>{8});

  w = aap_decompose(LengthSet{{0}}, 1);
  CHECK(w.y == 0);
  CHECK(w.ell == 0);
  CHECK(w.bound == 0);

  // no two members differ by exactly d: the progression degenerates to the
  // member minimizing the protrusion
  w = aap_decompose(LengthSet{{1, 2, 3}}, 2);
  CHECK(w.y == 2);
  CHECK(w.ell == 0);
  CHECK(w.bound == 1);
  CHECK(w.head == std::vector<int64_t>{1});
  CHECK(w.tail == std::vector<int64_t>{3});

  CHECK_THROWS_AS(aap_decompose(LengthSet{{1, 2}}, 0), DomainError);
  CHECK_THROWS_AS(aap_decompose(LengthSet{}, 1), DomainError);
}

}  // TEST_SUITE
