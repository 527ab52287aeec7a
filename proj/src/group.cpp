#include "zslab/group.hpp"

#include "zslab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace zslab {

namespace {

std::map<int64_t, int> factorize(int64_t n) {
  std::map<int64_t, int> out;
  for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

int64_t checked_mul(int64_t a, int64_t b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > (static_cast<__int128>(1) << 62)) {
    throw DomainError("group order exceeds 2^62");
  }
  return static_cast<int64_t>(p);
}

int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace

Group::Group(const std::vector<int64_t>& cyclic_orders) {
  // prime -> exponents of that prime across the given cyclic factors,
  // sorted descending; column j of this table forms invariant factor r-j.
  std::map<int64_t, std::vector<int>> primary;
  for (int64_t n : cyclic_orders) {
    if (n < 2) throw DomainError("cyclic factor must be at least 2");
    for (auto [p, e] : factorize(n)) primary[p].push_back(e);
  }
  size_t rank = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    rank = std::max(rank, exps.size());
  }
  std::vector<int64_t> chain;  // built largest factor first
  for (size_t j = 0; j < rank; ++j) {
    int64_t n = 1;
    for (auto& [p, exps] : primary) {
      if (j < exps.size()) n = checked_mul(n, ipow(p, exps[j]));
    }
    chain.push_back(n);
  }
  std::reverse(chain.begin(), chain.end());
  factors_ = std::move(chain);
  order_ = 1;
  for (int64_t n : factors_) order_ = checked_mul(order_, n);
}

int Group::exponent_multiplicity() const {
  if (factors_.empty()) return 0;
  int64_t exp = exponent();
  int k = rank();
  for (auto [p, e] : factorize(exp)) {
    int64_t q = ipow(p, e);
    int count = 0;
    for (int64_t n : factors_) {
      if (n % q == 0) ++count;
    }
    k = std::min(k, count);
  }
  return k;
}

std::vector<int64_t> Group::primary_decomposition() const {
  std::vector<int64_t> out;
  for (int64_t n : factors_) {
    for (auto [p, e] : factorize(n)) out.push_back(ipow(p, e));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Group::is_p_group(int64_t* prime) const {
  if (factors_.empty()) return false;
  auto f = factorize(order_);
  if (f.size() != 1) return false;
  if (prime) *prime = f.begin()->first;
  return true;
}

std::string Group::name() const {
  if (factors_.empty()) return "C1";
  std::string out;
  for (size_t i = 0; i < factors_.size();) {
    size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (i) out += "x";
    out += "C" + std::to_string(factors_[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Group parse_group(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  if (s.empty()) throw ParseError("empty group name");
  std::vector<int64_t> orders;
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != 'c') throw ParseError("expected 'C' in group name at position " + std::to_string(i));
    ++i;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) throw ParseError("expected cyclic order after 'C'");
    int64_t n = 0;
    for (size_t t = i; t < j; ++t) {
      n = n * 10 + (s[t] - '0');
      if (n > (int64_t{1} << 60)) throw ParseError("cyclic order too large");
    }
    if (n < 2) throw ParseError("cyclic order must be at least 2");
    i = j;
    int64_t rep = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      size_t k = i;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == i) throw ParseError("expected exponent after '^'");
      rep = 0;
      for (size_t t = i; t < k; ++t) {
        rep = rep * 10 + (s[t] - '0');
        if (rep > 64) throw ParseError("power exponent too large");
      }
      if (rep < 1) throw ParseError("power exponent must be positive");
      i = k;
    }
    for (int64_t t = 0; t < rep; ++t) orders.push_back(n);
    if (i < s.size()) {
      if (s[i] != 'x') throw ParseError("expected 'x' between factors");
      ++i;
      if (i == s.size()) throw ParseError("trailing 'x' in group name");
    }
  }
  try {
    return Group(orders);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Element zero_of(const Group& g) { return Element(g.rank(), 0); }

Element reduce(const Group& g, Element e) {
  if (static_cast<int>(e.size()) != g.rank()) {
    throw DomainError("element has wrong number of coordinates for " + g.name());
  }
  for (int i = 0; i < g.rank(); ++i) {
    int64_t n = g.invariant_factors()[i];
    e[i] %= n;
    if (e[i] < 0) e[i] += n;
  }
  return e;
}

Element add(const Group& g, const Element& a, const Element& b) {
  if (a.size() != b.size()) throw DomainError("element rank mismatch");
  Element out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return reduce(g, std::move(out));
}

Element negate(const Group& g, const Element& a) {
  Element out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return reduce(g, std::move(out));
}

Element scaled(const Group& g, int64_t k, const Element& a) {
  Element out(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t n = g.invariant_factors()[i];
    out[i] = static_cast<int64_t>((static_cast<__int128>(k % n) * (a[i] % n)) % n);
  }
  return reduce(g, std::move(out));
}

int64_t element_order(const Group& g, const Element& a) {
  Element e = reduce(g, a);
  int64_t ord = 1;
  for (int i = 0; i < g.rank(); ++i) {
    int64_t n = g.invariant_factors()[i];
    int64_t o = n / std::gcd(n, e[i]);
    ord = std::lcm(ord, o);
  }
  return ord;
}

int64_t element_index(const Group& g, const Element& a) {
  Element e = reduce(g, a);
  int64_t idx = 0;
  for (int i = 0; i < g.rank(); ++i) idx = idx * g.invariant_factors()[i] + e[i];
  return idx;
}

Element element_at(const Group& g, int64_t index) {
  if (index < 0 || index >= g.order()) throw DomainError("element index out of range");
  Element e(g.rank());
  for (int i = g.rank() - 1; i >= 0; --i) {
    int64_t n = g.invariant_factors()[i];
    e[i] = index % n;
    index /= n;
  }
  return e;
}

std::string format_element(const Element& a) {
  std::string out = "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  out += ")";
  return out;
}

Element parse_element(const Group& g, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') {
    throw ParseError("element literal must look like '(a1,...,ar)'");
  }
  std::string body = s.substr(1, s.size() - 2);
  Element e;
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) throw ParseError("empty coordinate in element literal");
      size_t pos = 0;
      int64_t v = 0;
      try {
        v = std::stoll(part, &pos);
      } catch (const std::exception&) {
        throw ParseError("bad coordinate '" + part + "'");
      }
      if (pos != part.size()) throw ParseError("bad coordinate '" + part + "'");
      e.push_back(v);
    }
    if (!body.empty() && body.back() == ',') throw ParseError("trailing comma in element literal");
  }
  if (static_cast<int>(e.size()) != g.rank()) {
    throw ParseError("element has " + std::to_string(e.size()) + " coordinates, group " +
                     g.name() + " has rank " + std::to_string(g.rank()));
  }
  return reduce(g, std::move(e));
}

Subgroup span(const Group& g, const std::vector<Element>& generators) {
  if (g.order() > GroupTable::kMaxOrder) {
    throw CapExceeded("span requires group order at most " + std::to_string(GroupTable::kMaxOrder));
  }
  // Closure of {0} under adding the generators. Negatives are reached via
  // (ord-1)-fold addition, so this is the generated subgroup.
  std::vector<Element> gens;
  gens.reserve(generators.size());
  for (const auto& e : generators) gens.push_back(reduce(g, e));
  std::vector<char> seen(static_cast<size_t>(g.order()), 0);
  std::vector<int64_t> list;
  seen[0] = 1;
  list.push_back(0);
  for (size_t head = 0; head < list.size(); ++head) {
    Element x = element_at(g, list[head]);
    for (const auto& gen : gens) {
      int64_t idx = element_index(g, add(g, x, gen));
      if (!seen[idx]) {
        seen[idx] = 1;
        list.push_back(idx);
      }
    }
  }
  std::sort(list.begin(), list.end());

  // Recover the isomorphism type from order statistics: within the p-part,
  // log_p #{h : p^k h = 0} increases by the number of cyclic components of
  // p-height >= k, which is the conjugate of the type partition.
  std::vector<int64_t> elem_orders;
  elem_orders.reserve(list.size());
  for (int64_t idx : list) elem_orders.push_back(element_order(g, element_at(g, idx)));
  int64_t h_order = static_cast<int64_t>(list.size());
  std::vector<int64_t> primary_orders;
  for (auto [p, e] : factorize(h_order)) {
    std::vector<int> conj;  // conj[k-1] = #components with p-height >= k
    int64_t prev_log = 0;
    for (int k = 1; k <= e; ++k) {
      int64_t pk = ipow(p, k);
      int64_t count = 0;
      for (int64_t o : elem_orders) {
        if (pk % o == 0) ++count;
      }
      int64_t log = 0;
      int64_t c = count;
      while (c > 1) {
        c /= p;
        ++log;
      }
      conj.push_back(static_cast<int>(log - prev_log));
      prev_log = log;
    }
    // Components of p-height exactly h: conj[h-1] - conj[h].
    for (int h = 1; h <= static_cast<int>(conj.size()); ++h) {
      int count = conj[h - 1] - (h < static_cast<int>(conj.size()) ? conj[h] : 0);
      for (int t = 0; t < count; ++t) primary_orders.push_back(ipow(p, h));
    }
  }
  Subgroup out;
  out.shape = primary_orders.empty() ? Group() : Group(primary_orders);
  out.element_indices = std::move(list);
  if (out.shape.order() != h_order) throw DomainError("internal: subgroup shape mismatch");
  return out;
}

bool is_independent(const Group& g, const std::vector<Element>& generators) {
  int64_t expected = 1;
  for (const auto& e : generators) {
    int64_t o = element_order(g, e);
    if (o == 1) return false;
    expected = checked_mul(expected, o);
  }
  if (expected > g.order()) return false;
  return static_cast<int64_t>(span(g, generators).element_indices.size()) == expected;
}

GroupTable::GroupTable(Group g) : group_(std::move(g)) {
  if (group_.order() > kMaxOrder) {
    throw BudgetExceeded("group order " + std::to_string(group_.order()) +
                         " exceeds the dense-table cap " + std::to_string(kMaxOrder));
  }
  n_ = static_cast<int32_t>(group_.order());
  add_.resize(static_cast<size_t>(n_) * n_);
  neg_.resize(n_);
  ord_.resize(n_);
  const auto& f = group_.invariant_factors();
  int r = group_.rank();
  std::vector<int64_t> a(r, 0), b(r, 0);
  for (int32_t i = 0; i < n_; ++i) {
    Element ei = element_at(group_, i);
    neg_[i] = static_cast<int32_t>(element_index(group_, negate(group_, ei)));
    ord_[i] = element_order(group_, ei);
    for (int32_t j = 0; j < n_; ++j) {
      // inline mixed-radix add to keep table construction quadratic
      Element ej = element_at(group_, j);
      int64_t idx = 0;
      for (int t = 0; t < r; ++t) {
        int64_t c = ei[t] + ej[t];
        if (c >= f[t]) c -= f[t];
        idx = idx * f[t] + c;
      }
      add_[static_cast<size_t>(i) * n_ + j] = static_cast<int32_t>(idx);
    }
  }
}

namespace {

// Subgroup closure state with undo, for the automorphism search.
struct SpanState {
  std::vector<char> in;
  std::vector<int32_t> list;

  explicit SpanState(int32_t n) : in(static_cast<size_t>(n), 0) {
    in[0] = 1;
    list.push_back(0);
  }

  size_t size() const { return list.size(); }

  // Extends the subgroup by g; returns the previous list length for undo.
  size_t push(const GroupTable& t, int32_t g) {
    size_t mark = list.size();
    if (in[g]) return mark;
    // smallest k >= 1 with k*g inside the current subgroup
    std::vector<int32_t> coset_reps;
    int32_t x = g;
    while (!in[x]) {
      coset_reps.push_back(x);
      x = t.add(x, g);
    }
    size_t base = mark;
    for (int32_t rep : coset_reps) {
      for (size_t i = 0; i < base; ++i) {
        int32_t y = t.add(list[i], rep);
        if (!in[y]) {
          in[y] = 1;
          list.push_back(y);
        }
      }
    }
    return mark;
  }

  void pop(size_t mark) {
    while (list.size() > mark) {
      in[list.back()] = 0;
      list.pop_back();
    }
  }
};

}  // namespace

std::vector<std::vector<int32_t>> automorphisms(const GroupTable& t, const AutCaps& caps) {
  const Group& g = t.group();
  if (g.order() > caps.max_order) {
    throw CapExceeded("automorphism materialization capped at group order " +
                      std::to_string(caps.max_order));
  }
  int r = g.rank();
  int32_t n = t.size();
  const auto& f = g.invariant_factors();

  // candidate images for generator i: elements with order dividing n_i
  std::vector<std::vector<int32_t>> candidates(r);
  for (int i = 0; i < r; ++i) {
    for (int32_t x = 0; x < n; ++x) {
      if (f[i] % t.ord(x) == 0) candidates[i].push_back(x);
    }
  }

  // strict_tail[i] = product of n_j for j >= i; the span of the first i
  // images times the remaining candidates' orders must reach |G|.
  std::vector<int64_t> strict_tail(r + 1, 1);
  for (int i = r - 1; i >= 0; --i) strict_tail[i] = strict_tail[i + 1] * f[i];

  std::vector<std::vector<int32_t>> result;
  std::vector<int32_t> images(r);
  SpanState spanstate(n);

  // generator index strides for building the permutation
  std::vector<int64_t> radix(f.begin(), f.end());

  auto emit = [&]() {
    if (static_cast<int64_t>(result.size()) >= caps.max_count) {
      throw CapExceeded("automorphism count exceeds cap " + std::to_string(caps.max_count));
    }
    // multiples[i][c] = index of c * images[i]
    std::vector<std::vector<int32_t>> multiples(r);
    for (int i = 0; i < r; ++i) {
      multiples[i].resize(static_cast<size_t>(radix[i]));
      multiples[i][0] = 0;
      for (int64_t c = 1; c < radix[i]; ++c) {
        multiples[i][c] = t.add(multiples[i][c - 1], images[i]);
      }
    }
    std::vector<int32_t> perm(n);
    std::vector<int64_t> coords(r, 0);
    std::vector<int32_t> psum(r + 1, 0);  // psum[i] = image of first i coordinates
    for (int32_t idx = 0;; ++idx) {
      perm[idx] = psum[r];
      if (idx == n - 1) break;
      int pos = r - 1;
      while (coords[pos] == radix[pos] - 1) {
        coords[pos] = 0;
        --pos;
      }
      ++coords[pos];
      for (int i = pos; i < r; ++i) {
        psum[i + 1] = t.add(psum[i], multiples[i][coords[i]]);
      }
    }
    result.push_back(std::move(perm));
  };

  auto dfs = [&](auto&& self, int i) -> void {
    if (i == r) {
      if (static_cast<int64_t>(spanstate.size()) == g.order()) emit();
      return;
    }
    for (int32_t cand : candidates[i]) {
      size_t mark = spanstate.push(t, cand);
      if (static_cast<int64_t>(spanstate.size()) * strict_tail[i + 1] >= g.order()) {
        images[i] = cand;
        self(self, i + 1);
      }
      spanstate.pop(mark);
    }
  };
  dfs(dfs, 0);
  return result;
}

namespace {

// Sorted image of a sorted subset under one permutation.
std::vector<int32_t> image_sorted(const std::vector<int32_t>& perm,
                                  const std::vector<int32_t>& subset) {
  std::vector<int32_t> img(subset.size());
  for (size_t i = 0; i < subset.size(); ++i) img[i] = perm[subset[i]];
  std::sort(img.begin(), img.end());
  return img;
}

// Lexicographic minimum of sorted images; optionally collects every
// permutation index achieving it.
std::vector<int32_t> min_image(const std::vector<std::vector<int32_t>>& auts,
                               const std::vector<int32_t>& subset,
                               std::vector<size_t>* achievers) {
  std::vector<int32_t> best;
  for (size_t pi = 0; pi < auts.size(); ++pi) {
    const auto& perm = auts[pi];
    if (!best.empty() && !subset.empty()) {
      // cheap pre-filter: the image's least element decides most comparisons
      int32_t lo = perm[subset[0]];
      for (size_t i = 1; i < subset.size(); ++i) lo = std::min(lo, perm[subset[i]]);
      if (lo > best[0]) continue;
      if (lo == best[0] && !achievers) {
        std::vector<int32_t> img = image_sorted(perm, subset);
        if (img < best) best = std::move(img);
        continue;
      }
    }
    std::vector<int32_t> img = image_sorted(perm, subset);
    if (best.empty() || img < best) {
      best = std::move(img);
      if (achievers) {
        achievers->clear();
        achievers->push_back(pi);
      }
    } else if (achievers && img == best) {
      achievers->push_back(pi);
    }
  }
  return best;
}

}  // namespace

std::vector<int32_t> canonical_subset_key(const GroupTable& t,
                                          const std::vector<std::vector<int32_t>>& auts,
                                          std::vector<int32_t> subset) {
  std::sort(subset.begin(), subset.end());
  if (auts.empty() || subset.empty()) return subset;
  size_t n = static_cast<size_t>(t.size());
  if (subset.size() == n) return subset;
  if (subset.size() * 2 <= n) return min_image(auts, subset, nullptr);

  // Large subsets: canonicalize the complement (same orbit structure), then
  // minimize the subset image over the complement's stabilizing achievers.
  std::vector<int32_t> comp;
  comp.reserve(n - subset.size());
  size_t j = 0;
  for (int32_t x = 0; x < t.size(); ++x) {
    if (j < subset.size() && subset[j] == x) {
      ++j;
    } else {
      comp.push_back(x);
    }
  }
  std::vector<size_t> achievers;
  min_image(auts, comp, &achievers);
  std::vector<int32_t> best;
  for (size_t pi : achievers) {
    std::vector<int32_t> img = image_sorted(auts[pi], subset);
    if (best.empty() || img < best) best = std::move(img);
  }
  return best;
}

}  // namespace zslab
