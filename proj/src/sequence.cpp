#include "zslab/sequence.hpp"

#include "zslab/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace zslab {

Sequence Sequence::from_pairs(std::vector<std::pair<int32_t, int64_t>> pairs) {
  std::map<int32_t, int64_t> acc;
  for (auto [idx, mult] : pairs) {
    if (mult < 0) throw DomainError("negative multiplicity in sequence");
    if (mult > 0) acc[idx] += mult;
  }
  Sequence s;
  s.entries_.assign(acc.begin(), acc.end());
  return s;
}

int64_t Sequence::length() const {
  int64_t len = 0;
  for (const auto& [idx, mult] : entries_) len += mult;
  return len;
}

int64_t Sequence::mult(int32_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const auto& e, int32_t v) { return e.first < v; });
  return (it != entries_.end() && it->first == index) ? it->second : 0;
}

std::vector<int32_t> Sequence::support() const {
  std::vector<int32_t> out;
  out.reserve(entries_.size());
  for (const auto& [idx, mult] : entries_) out.push_back(idx);
  return out;
}

bool Sequence::divides(const Sequence& s) const {
  size_t j = 0;
  for (const auto& [idx, mult] : entries_) {
    while (j < s.entries_.size() && s.entries_[j].first < idx) ++j;
    if (j == s.entries_.size() || s.entries_[j].first != idx || s.entries_[j].second < mult) {
      return false;
    }
  }
  return true;
}

Sequence mul(const Sequence& a, const Sequence& b) {
  std::vector<std::pair<int32_t, int64_t>> pairs(a.entries());
  pairs.insert(pairs.end(), b.entries().begin(), b.entries().end());
  return Sequence::from_pairs(std::move(pairs));
}

Sequence power(const Sequence& a, int64_t k) {
  if (k < 0) throw DomainError("negative sequence power");
  std::vector<std::pair<int32_t, int64_t>> pairs;
  pairs.reserve(a.entries().size());
  for (auto [idx, mult] : a.entries()) pairs.emplace_back(idx, mult * k);
  return Sequence::from_pairs(std::move(pairs));
}

Sequence divide(const Sequence& s, const Sequence& t) {
  if (!t.divides(s)) throw NotDivisibleError("sequence division with non-divisor");
  std::vector<std::pair<int32_t, int64_t>> pairs;
  size_t j = 0;
  for (auto [idx, mult] : s.entries()) {
    int64_t sub = 0;
    while (j < t.entries().size() && t.entries()[j].first < idx) ++j;
    if (j < t.entries().size() && t.entries()[j].first == idx) sub = t.entries()[j].second;
    if (mult - sub > 0) pairs.emplace_back(idx, mult - sub);
  }
  return Sequence::from_pairs(std::move(pairs));
}

int32_t sigma(const GroupTable& t, const Sequence& s) {
  int32_t acc = 0;
  for (auto [idx, mult] : s.entries()) {
    int64_t m = mult % t.ord(idx);
    for (int64_t i = 0; i < m; ++i) acc = t.add(acc, idx);
  }
  return acc;
}

Rational cross_number(const GroupTable& t, const Sequence& s) {
  Rational k = 0;
  for (auto [idx, mult] : s.entries()) k += Rational(mult, t.ord(idx));
  return k;
}

std::vector<char> subsequence_sum_table(const GroupTable& t, const Sequence& s,
                                        const SumOptions& opts) {
  if (s.length() > opts.length_cap) {
    throw CapExceeded("sequence length " + std::to_string(s.length()) +
                      " exceeds the subsequence-sum cap " + std::to_string(opts.length_cap));
  }
  std::vector<char> reach(static_cast<size_t>(t.size()), 0);
  std::vector<char> next(static_cast<size_t>(t.size()), 0);
  for (auto [idx, mult] : s.entries()) {
    for (int64_t c = 0; c < mult; ++c) {
      std::copy(reach.begin(), reach.end(), next.begin());
      for (int32_t x = 0; x < t.size(); ++x) {
        if (reach[x]) next[t.add(x, idx)] = 1;
      }
      next[idx] = 1;
      std::swap(reach, next);
      // multiplicities past the point where the reachable set is the whole
      // group cannot change it
    }
  }
  return reach;
}

std::vector<int32_t> subsequence_sums(const GroupTable& t, const Sequence& s,
                                      const SumOptions& opts) {
  std::vector<char> reach = subsequence_sum_table(t, s, opts);
  std::vector<int32_t> out;
  for (int32_t x = 0; x < t.size(); ++x) {
    if (reach[x]) out.push_back(x);
  }
  return out;
}

bool is_zero_sum(const GroupTable& t, const Sequence& s) { return sigma(t, s) == 0; }

bool is_zero_sum_free(const GroupTable& t, const Sequence& s, const SumOptions& opts) {
  if (s.empty()) return true;
  return !subsequence_sum_table(t, s, opts)[0];
}

bool is_minimal_zero_sum(const GroupTable& t, const Sequence& s, const SumOptions& opts) {
  if (s.empty() || sigma(t, s) != 0) return false;
  for (auto [idx, mult] : s.entries()) {
    Sequence one = Sequence::from_pairs({{idx, 1}});
    if (!is_zero_sum_free(t, divide(s, one), opts)) return false;
  }
  return true;
}

bool is_minimal_zero_sum_direct(const GroupTable& t, const Sequence& s) {
  if (s.empty() || sigma(t, s) != 0) return false;
  const auto& entries = s.entries();
  size_t m = entries.size();
  double states = 1;
  for (const auto& [idx, mult] : entries) states *= static_cast<double>(mult + 1);
  if (states > (1 << 24)) {
    throw CapExceeded("direct minimality check over too many subsequences");
  }
  // odometer over sub-multiplicities; skips the empty and full subsequences
  std::vector<int64_t> sub(m, 0);
  std::vector<int32_t> partial(m + 1, 0);  // partial[i] = sum of first i entries' picks
  while (true) {
    size_t pos = 0;
    while (pos < m && sub[pos] == entries[pos].second) {
      sub[pos] = 0;
      ++pos;
    }
    if (pos == m) break;
    ++sub[pos];
    // refresh partial sums from pos down to 0 (lower positions were reset)
    for (size_t i = pos + 1; i-- > 0;) {
      int32_t x = partial[i + 1];
      // partial[i] = partial[i+1] + sub[i] * entries[i]
      int64_t c = sub[i] % t.ord(entries[i].first);
      for (int64_t k = 0; k < c; ++k) x = t.add(x, entries[i].first);
      partial[i] = x;
    }
    bool full = true;
    for (size_t i = 0; i < m; ++i) {
      if (sub[i] != entries[i].second) {
        full = false;
        break;
      }
    }
    if (!full && partial[0] == 0) return false;
  }
  return true;
}

std::string format_sequence(const Group& g, const Sequence& s) {
  std::string out;
  for (const auto& [idx, mult] : s.entries()) {
    if (!out.empty()) out += " ";
    out += format_element(element_at(g, idx));
    if (mult > 1) out += "^" + std::to_string(mult);
  }
  return out;
}

Sequence parse_sequence(const Group& g, std::string_view text) {
  std::vector<std::pair<int32_t, int64_t>> pairs;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    if (text[i] != '(') throw ParseError("expected '(' in sequence literal");
    size_t close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unbalanced '(' in sequence literal");
    Element e = parse_element(g, text.substr(i, close - i + 1));
    i = close + 1;
    int64_t mult = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw ParseError("expected multiplicity after '^'");
      mult = 0;
      for (size_t k = i; k < j; ++k) {
        mult = mult * 10 + (text[k] - '0');
        if (mult > (int64_t{1} << 50)) throw ParseError("multiplicity too large");
      }
      if (mult < 1) throw ParseError("multiplicity must be positive");
      i = j;
    }
    pairs.emplace_back(static_cast<int32_t>(element_index(g, e)), mult);
  }
  return Sequence::from_pairs(std::move(pairs));
}

Sequence sequence_from_elements(const Group& g,
                                const std::vector<std::pair<Element, int64_t>>& parts) {
  std::vector<std::pair<int32_t, int64_t>> pairs;
  pairs.reserve(parts.size());
  for (const auto& [e, mult] : parts) {
    pairs.emplace_back(static_cast<int32_t>(element_index(g, e)), mult);
  }
  return Sequence::from_pairs(std::move(pairs));
}

}  // namespace zslab
