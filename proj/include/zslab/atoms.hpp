#pragma once

#include "zslab/numeric.hpp"
#include "zslab/sequence.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zslab {

// The atoms (minimal zero-sum sequences) over a fixed subset, with the
// statistics every caller wants alongside them.
struct AtomSet {
  Group group;
  std::vector<int32_t> subset;   // sorted element indices
  std::vector<Sequence> atoms;   // sorted
  int64_t davenport = 0;         // max atom length
  Rational max_cross = 0;
  Rational min_cross = 0;
  bool contains_zero = false;    // subset included the zero element
  uint64_t nodes = 0;            // search nodes spent enumerating
};

struct EnumOptions {
  uint64_t node_budget = 100'000'000;
  // Upfront screen: the search tree is contained in the multiplicity box
  // prod(ord(g)); hopeless inputs are rejected before burning the budget.
  double feasibility_limit = 1e18;
  bool override_feasibility = false;
  bool use_cache = true;
  // Disk entries are only written for enumerations at least this expensive;
  // the in-memory layer covers the cheap ones.
  uint64_t cache_write_min_nodes = 10'000;
};

// Depth-first enumeration over nondecreasing element sequences. A prefix is
// kept zero-sum-free; a branch closes into an atom exactly when the next
// element is the inverse of the running sum. Every atom is reached once,
// along its sorted spelling.
AtomSet enumerate_atoms(const GroupTable& t, std::vector<int32_t> subset,
                        const EnumOptions& opts = {});
AtomSet enumerate_atoms_elements(const Group& g, const std::vector<Element>& subset,
                                 const EnumOptions& opts = {});

// All nonzero elements as the subset.
AtomSet enumerate_atoms_full(const GroupTable& t, const EnumOptions& opts = {});

int64_t davenport_constant(const GroupTable& t, const EnumOptions& opts = {});

// Largest cross number of an atom over the full nonzero subset.
Rational cross_number_max(const GroupTable& t, const EnumOptions& opts = {});

// 1/exp(G) + sum over the primary decomposition q of (q-1)/q.
Rational k_star(const Group& g);

// Atom cache. The in-memory layer always runs; the disk layer activates when
// a directory is configured here or through the ZSLAB_CACHE environment
// variable. Entries are versioned and atomically written; unreadable or
// stale files are recomputed, never trusted.
void set_cache_dir(std::optional<std::string> dir);
std::optional<std::string> cache_dir();
void clear_atom_memory_cache();

}  // namespace zslab
