#include "zslab/atoms.hpp"
#include "zslab/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace zslab;

namespace {

EnumOptions no_cache() {
  EnumOptions o;
  o.use_cache = false;
  return o;
}

// every subset of the nonzero elements, as sorted index lists
std::vector<std::vector<int32_t>> nonzero_subsets(const GroupTable& t) {
  int32_t n = t.size() - 1;
  std::vector<std::vector<int32_t>> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int32_t> subset;
    for (int32_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(i + 1);
    }
    out.push_back(std::move(subset));
  }
  return out;
}

struct TempCacheDir {
  std::filesystem::path path;
  TempCacheDir() {
    path = std::filesystem::temp_directory_path() /
           ("zslab_test_cache_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
    set_cache_dir(path.string());
  }
  ~TempCacheDir() {
    set_cache_dir(std::nullopt);
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

TEST_SUITE("atoms") {

TEST_CASE("enumeration matches the filtering oracle on all subsets of small groups") {
  for (const char* name : {"C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2^2", "C2^3", "C2xC4"}) {
    CAPTURE(name);
    GroupTable t(parse_group(name));
    for (const auto& subset : nonzero_subsets(t)) {
      AtomSet got = enumerate_atoms(t, subset, no_cache());
      std::vector<Sequence> expected = oracle::atoms(t, subset);
      CAPTURE(subset.size());
      CHECK(got.atoms == expected);
    }
  }
}

TEST_CASE("enumeration matches the oracle on selected subsets of C3^2") {
  GroupTable t(parse_group("C3^2"));
  Group g = t.group();
  auto idx = [&](int64_t a, int64_t b) {
    return static_cast<int32_t>(element_index(g, {a, b}));
  };
  std::vector<std::vector<int32_t>> picks = {
      {idx(1, 0), idx(0, 1)},
      {idx(1, 0), idx(0, 1), idx(1, 1)},
      {idx(1, 0), idx(0, 1), idx(2, 2)},
      {idx(1, 0), idx(0, 1), idx(1, 1), idx(1, 2)},
  };
  for (auto subset : picks) {
    std::sort(subset.begin(), subset.end());
    AtomSet got = enumerate_atoms(t, subset, no_cache());
    CHECK(got.atoms == oracle::atoms(t, subset));
  }
}

TEST_CASE("a zero in the subset contributes exactly the singleton atom") {
  GroupTable t(parse_group("C4"));
  AtomSet with_zero = enumerate_atoms(t, {0, 1, 3}, no_cache());
  AtomSet without = enumerate_atoms(t, {1, 3}, no_cache());
  CHECK(with_zero.contains_zero);
  CHECK_FALSE(without.contains_zero);
  CHECK(with_zero.atoms.size() == without.atoms.size() + 1);
  Sequence zero_atom = Sequence::from_pairs({{0, 1}});
  CHECK(std::find(with_zero.atoms.begin(), with_zero.atoms.end(), zero_atom) !=
        with_zero.atoms.end());
}

TEST_CASE("statistics agree with the atom list") {
  GroupTable t(parse_group("C6"));
  AtomSet a = enumerate_atoms_full(t, no_cache());
  int64_t max_len = 0;
  Rational lo, hi;
  bool first = true;
  for (const Sequence& s : a.atoms) {
    max_len = std::max(max_len, s.length());
    Rational k = cross_number(t, s);
    if (first || k < lo) lo = k;
    if (first || k > hi) hi = k;
    first = false;
  }
  CHECK(a.davenport == max_len);
  CHECK(a.max_cross == hi);
  CHECK(a.min_cross == lo);
  CHECK(a.nodes > 0);
}

TEST_CASE("empty subset yields no atoms") {
  GroupTable t(parse_group("C5"));
  AtomSet a = enumerate_atoms(t, {}, no_cache());
  CHECK(a.atoms.empty());
  CHECK(a.davenport == 0);
}

TEST_CASE("Davenport constants of well-known groups") {
  auto d = [](const char* name) {
    GroupTable t(parse_group(name));
    return davenport_constant(t, no_cache());
  };
  CHECK(d("C2") == 2);
  CHECK(d("C3") == 3);
  CHECK(d("C7") == 7);
  CHECK(d("C12") == 12);
  CHECK(d("C2^2") == 3);
  CHECK(d("C2^3") == 4);
  CHECK(d("C3^2") == 5);
  CHECK(d("C2xC4") == 5);
  CHECK(d("C2xC6") == 7);
}

TEST_CASE("largest cross numbers of well-known groups") {
  auto k = [](const char* name) {
    GroupTable t(parse_group(name));
    return cross_number_max(t, no_cache());
  };
  CHECK(k("C2") == Rational(1));
  CHECK(k("C4") == Rational(1));
  CHECK(k("C6") == Rational(4, 3));
  CHECK(k("C2^2") == Rational(3, 2));
  CHECK(k("C2^3") == Rational(2));
  CHECK(k("C12") == Rational(3, 2));
}

TEST_CASE("reference cross number k_star") {
  CHECK(k_star(parse_group("C6")) == Rational(4, 3));
  CHECK(k_star(parse_group("C2^2")) == Rational(3, 2));
  CHECK(k_star(parse_group("C12")) == Rational(3, 2));
  CHECK(k_star(parse_group("C8")) == Rational(1));
  CHECK(k_star(parse_group("C2")) == Rational(1));
  // p-groups: the reference value matches the enumerated maximum
  for (const char* name : {"C2", "C4", "C8", "C9", "C3^2", "C2^3", "C2xC4"}) {
    CAPTURE(name);
    GroupTable t(parse_group(name));
    CHECK(cross_number_max(t, no_cache()) == k_star(t.group()));
  }
}

TEST_CASE("node budget is enforced") {
  GroupTable t(parse_group("C3^2"));
  EnumOptions o = no_cache();
  o.node_budget = 10;
  CHECK_THROWS_AS(enumerate_atoms_full(t, o), BudgetExceeded);
}

TEST_CASE("feasibility screen rejects hopeless boxes unless overridden") {
  GroupTable t(parse_group("C6"));
  EnumOptions o = no_cache();
  o.feasibility_limit = 2.0;  // prod of orders over nonzero C6 is far above this
  CHECK_THROWS_AS(enumerate_atoms_full(t, o), BudgetExceeded);
  o.override_feasibility = true;
  AtomSet a = enumerate_atoms_full(t, o);
  CHECK(a.davenport == 6);
}

TEST_CASE("element-facing wrapper reduces and indexes") {
  Group g = parse_group("C3^2");
  AtomSet a = enumerate_atoms_elements(g, {{1, 0}, {0, 1}}, no_cache());
  GroupTable t(g);
  AtomSet b = enumerate_atoms(
      t,
      {static_cast<int32_t>(element_index(g, {1, 0})),
       static_cast<int32_t>(element_index(g, {0, 1}))},
      no_cache());
  CHECK(a.atoms == b.atoms);
  CHECK(a.davenport == 3);
}

TEST_CASE("disk cache round-trips and shrugs off corruption") {
  TempCacheDir dir;
  GroupTable t(parse_group("C3^2"));
  EnumOptions o;  // cache on
  o.cache_write_min_nodes = 1;

  clear_atom_memory_cache();
  AtomSet first = enumerate_atoms_full(t, o);
  REQUIRE(cache_dir().has_value());

  // a cache file exists now; a fresh in-memory state must reload from disk
  size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
    ++files;
    (void)entry;
  }
  REQUIRE(files > 0);
  clear_atom_memory_cache();
  AtomSet reloaded = enumerate_atoms_full(t, o);
  CHECK(reloaded.atoms == first.atoms);
  CHECK(reloaded.davenport == first.davenport);

  // truncate every cache file: the loader must fall back to recomputing
  for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
    std::filesystem::resize_file(entry.path(), 3);
  }
  clear_atom_memory_cache();
  AtomSet after_truncate = enumerate_atoms_full(t, o);
  CHECK(after_truncate.atoms == first.atoms);

  // overwrite with garbage bytes: same story
  for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
    std::ofstream out(entry.path(), std::ios::binary | std::ios::trunc);
    out << "not a cache entry \x01\x02\x03";
  }
  clear_atom_memory_cache();
  AtomSet after_garbage = enumerate_atoms_full(t, o);
  CHECK(after_garbage.atoms == first.atoms);
}

TEST_CASE("enumeration is deterministic") {
  GroupTable t(parse_group("C2xC4"));
  AtomSet a = enumerate_atoms_full(t, no_cache());
  AtomSet b = enumerate_atoms_full(t, no_cache());
  CHECK(a.atoms == b.atoms);
  CHECK(a.nodes == b.nodes);
}

}  // TEST_SUITE
