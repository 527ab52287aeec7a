#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zslab {

// Finite abelian group in invariant-factor form: C_{n_1} x ... x C_{n_r}
// with 1 < n_1 | n_2 | ... | n_r. The trivial group has rank 0.
class Group {
public:
  Group() = default;

  // Accepts any list of cyclic orders >= 2 and regroups it into the
  // invariant-factor chain via the primary decomposition.
  explicit Group(const std::vector<int64_t>& cyclic_orders);

  const std::vector<int64_t>& invariant_factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  int64_t order() const { return order_; }

  // Largest k such that C_exp^k embeds in the group: the minimum over primes
  // p dividing exp of the number of invariant factors with maximal p-part.
  int exponent_multiplicity() const;

  // Prime-power cyclic orders q_1 <= ... <= q_s with the group isomorphic to
  // the direct sum of the C_{q_i}.
  std::vector<int64_t> primary_decomposition() const;

  // True when the order is a prime power p^k, k >= 1; reports p if asked.
  bool is_p_group(int64_t* prime = nullptr) const;

  // True when all invariant factors are equal (the group is C_n^r).
  bool is_homocyclic() const { return rank() > 0 && factors_.front() == factors_.back(); }

  std::string name() const;  // "C2xC4"; trivial group prints "C1"

  friend bool operator==(const Group&, const Group&) = default;

private:
  std::vector<int64_t> factors_;
  int64_t order_ = 1;
};

// Grammar: factors "Cn" joined by "x", optional "^k" exponents, whitespace
// ignored, letters case-insensitive. Examples: "C12", "C2xC4", "C3^2".
Group parse_group(std::string_view text);

// Element in coordinate form relative to the invariant factors; coordinate i
// lives in [0, n_i). Elements of the trivial group are the empty vector.
using Element = std::vector<int64_t>;

Element zero_of(const Group& g);
Element reduce(const Group& g, Element e);
Element add(const Group& g, const Element& a, const Element& b);
Element negate(const Group& g, const Element& a);
Element scaled(const Group& g, int64_t k, const Element& a);
int64_t element_order(const Group& g, const Element& a);

// Elements are indexed 0..order-1 by mixed-radix rank of their coordinates;
// index 0 is the zero element.
int64_t element_index(const Group& g, const Element& a);
Element element_at(const Group& g, int64_t index);

std::string format_element(const Element& a);            // "(1,0,3)"
Element parse_element(const Group& g, std::string_view text);

// Subgroup generated by a tuple; elements are parent indices, sorted.
struct Subgroup {
  Group shape;
  std::vector<int64_t> element_indices;
};
Subgroup span(const Group& g, const std::vector<Element>& generators);

// Independence: all generators nonzero and |span| equals the product of the
// element orders.
bool is_independent(const Group& g, const std::vector<Element>& generators);

// Dense operation tables over element indices for enumeration inner loops.
class GroupTable {
public:
  static constexpr int64_t kMaxOrder = 4096;

  explicit GroupTable(Group g);

  const Group& group() const { return group_; }
  int32_t size() const { return n_; }
  int32_t add(int32_t a, int32_t b) const { return add_[static_cast<size_t>(a) * n_ + b]; }
  int32_t neg(int32_t a) const { return neg_[a]; }
  int64_t ord(int32_t a) const { return ord_[a]; }

private:
  Group group_;
  int32_t n_ = 1;
  std::vector<int32_t> add_;
  std::vector<int32_t> neg_;
  std::vector<int64_t> ord_;
};

// Caps for automorphism-group materialization. max_order bounds the group
// order for which materialization is attempted at all; max_count aborts once
// the automorphism count itself becomes unmanageable.
struct AutCaps {
  int64_t max_order = 81;
  int64_t max_count = 1 << 20;
};

// All automorphisms as permutations of element indices, in lexicographic
// order of the images of the canonical generators. Throws CapExceeded when a
// cap is hit; callers fall back to identity-only canonicalization.
std::vector<std::vector<int32_t>> automorphisms(const GroupTable& t,
                                                const AutCaps& caps = {});

// Lexicographically least sorted automorphic image of a subset of element
// indices. Constant on orbits and distinct across orbits. An empty
// automorphism list means identity-only: the key is the sorted subset.
std::vector<int32_t> canonical_subset_key(
    const GroupTable& t, const std::vector<std::vector<int32_t>>& auts,
    std::vector<int32_t> subset);

}  // namespace zslab
