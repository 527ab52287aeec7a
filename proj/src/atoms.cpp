#include "zslab/atoms.hpp"

#include "zslab/errors.hpp"
#include "zslab/version.hpp"

#include "json.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace zslab {

namespace {

using nlohmann::json;

struct CacheState {
  std::mutex mu;
  bool dir_initialized = false;
  std::optional<std::string> dir;
  std::map<std::string, AtomSet> memory;
};

CacheState& cache_state() {
  static CacheState state;
  return state;
}

std::optional<std::string> resolve_dir_locked(CacheState& st) {
  if (!st.dir_initialized) {
    st.dir_initialized = true;
    if (const char* env = std::getenv("ZSLAB_CACHE"); env && *env) {
      st.dir = std::string(env);
    }
  }
  return st.dir;
}

std::string cache_key(const Group& g, const std::vector<int32_t>& subset) {
  std::string key = "g=";
  for (size_t i = 0; i < g.invariant_factors().size(); ++i) {
    if (i) key += ",";
    key += std::to_string(g.invariant_factors()[i]);
  }
  key += ";s=";
  for (size_t i = 0; i < subset.size(); ++i) {
    if (i) key += ",";
    key += std::to_string(subset[i]);
  }
  return key;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void compute_stats(const GroupTable& t, AtomSet& as) {
  as.davenport = 0;
  as.max_cross = 0;
  as.min_cross = 0;
  for (size_t i = 0; i < as.atoms.size(); ++i) {
    const Sequence& a = as.atoms[i];
    as.davenport = std::max(as.davenport, a.length());
    Rational k = cross_number(t, a);
    if (i == 0) {
      as.max_cross = as.min_cross = k;
    } else {
      if (k > as.max_cross) as.max_cross = k;
      if (k < as.min_cross) as.min_cross = k;
    }
  }
}

std::optional<AtomSet> load_disk(const GroupTable& t, const std::string& key,
                                 const std::string& dir) {
  namespace fs = std::filesystem;
  char name[32];
  std::snprintf(name, sizeof(name), "%016llx.json",
                static_cast<unsigned long long>(fnv1a64(key)));
  fs::path path = fs::path(dir) / name;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json doc;
  try {
    in >> doc;
    if (!doc.is_object()) return std::nullopt;
    if (doc.value("format", -1) != kCacheFormatVersion) return std::nullopt;
    if (doc.value("code", std::string()) != kVersion) return std::nullopt;
    if (doc.value("key", std::string()) != key) return std::nullopt;
    AtomSet as;
    as.group = t.group();
    for (const auto& v : doc.at("subset")) as.subset.push_back(v.get<int32_t>());
    as.contains_zero = !as.subset.empty() && as.subset.front() == 0;
    as.nodes = doc.value("nodes", uint64_t{0});
    for (const auto& atom : doc.at("atoms")) {
      std::vector<std::pair<int32_t, int64_t>> pairs;
      for (const auto& entry : atom) {
        pairs.emplace_back(entry.at(0).get<int32_t>(), entry.at(1).get<int64_t>());
      }
      as.atoms.push_back(Sequence::from_pairs(std::move(pairs)));
    }
    std::sort(as.atoms.begin(), as.atoms.end());
    compute_stats(t, as);
    // stored statistics double as a corruption check
    if (to_string(as.max_cross) != doc.value("max_cross", std::string()) ||
        to_string(as.min_cross) != doc.value("min_cross", std::string()) ||
        as.davenport != doc.value("davenport", int64_t{-1})) {
      return std::nullopt;
    }
    return as;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void store_disk(const AtomSet& as, const std::string& key, const std::string& dir) {
  namespace fs = std::filesystem;
  try {
    fs::create_directories(dir);
    json doc;
    doc["format"] = kCacheFormatVersion;
    doc["code"] = kVersion;
    doc["key"] = key;
    doc["subset"] = as.subset;
    doc["nodes"] = as.nodes;
    doc["davenport"] = as.davenport;
    doc["max_cross"] = to_string(as.max_cross);
    doc["min_cross"] = to_string(as.min_cross);
    json atoms = json::array();
    for (const Sequence& a : as.atoms) {
      json entries = json::array();
      for (auto [idx, mult] : a.entries()) entries.push_back({idx, mult});
      atoms.push_back(std::move(entries));
    }
    doc["atoms"] = std::move(atoms);

    char name[32];
    std::snprintf(name, sizeof(name), "%016llx.json",
                  static_cast<unsigned long long>(fnv1a64(key)));
    static std::atomic<uint64_t> counter{0};
    fs::path tmp = fs::path(dir) / (std::string(name) + ".tmp" +
                                    std::to_string(counter.fetch_add(1)) + "." +
                                    std::to_string(::getpid()));
    {
      std::ofstream out(tmp);
      out << doc.dump();
      if (!out) {
        std::error_code ec;
        fs::remove(tmp, ec);
        return;
      }
    }
    std::error_code ec;
    fs::rename(tmp, fs::path(dir) / name, ec);
    if (ec) fs::remove(tmp, ec);
  } catch (const std::exception&) {
    // cache writes are best-effort
  }
}

// The enumerator. Elements are the nonzero members of the subset, ascending.
struct AtomSearch {
  const GroupTable& t;
  const std::vector<int32_t>& elems;
  uint64_t budget;
  uint64_t nodes = 0;
  std::vector<Sequence>& out;

  std::vector<char> in_sum;          // membership table for subset sums of the prefix
  std::vector<int32_t> sum_list;     // the same set as a list, for undo
  std::vector<std::pair<size_t, int64_t>> stack;  // (position, multiplicity), ascending
  int32_t cur = 0;                   // sum of the prefix

  AtomSearch(const GroupTable& table, const std::vector<int32_t>& elements,
             uint64_t node_budget, std::vector<Sequence>& sink)
      : t(table), elems(elements), budget(node_budget), out(sink),
        in_sum(static_cast<size_t>(table.size()), 0) {}

  void run() { descend(0); }

  void descend(size_t min_pos) {
    for (size_t pos = min_pos; pos < elems.size(); ++pos) {
      if (++nodes > budget) {
        throw BudgetExceeded("atom enumeration exceeded the node budget of " +
                             std::to_string(budget));
      }
      int32_t g = elems[pos];
      if (t.add(cur, g) == 0) {
        // prefix is zero-sum-free, so prefix*g is minimal; extensions past a
        // closing copy would contain it properly and are never atoms
        emit(pos);
        continue;
      }
      if (in_sum[t.neg(g)]) continue;  // prefix*g would no longer be zero-sum-free
      size_t mark = push(pos, g);
      descend(pos);
      pop(mark, g);
    }
  }

  size_t push(size_t pos, int32_t g) {
    size_t mark = sum_list.size();
    for (size_t i = 0; i < mark; ++i) {
      int32_t u = t.add(sum_list[i], g);
      if (!in_sum[u]) {
        in_sum[u] = 1;
        sum_list.push_back(u);
      }
    }
    if (!in_sum[g]) {
      in_sum[g] = 1;
      sum_list.push_back(g);
    }
    cur = t.add(cur, g);
    if (!stack.empty() && stack.back().first == pos) {
      ++stack.back().second;
    } else {
      stack.emplace_back(pos, 1);
    }
    return mark;
  }

  void pop(size_t mark, int32_t g) {
    while (sum_list.size() > mark) {
      in_sum[sum_list.back()] = 0;
      sum_list.pop_back();
    }
    cur = t.add(cur, t.neg(g));
    if (--stack.back().second == 0) stack.pop_back();
  }

  void emit(size_t close_pos) {
    std::vector<std::pair<int32_t, int64_t>> pairs;
    pairs.reserve(stack.size() + 1);
    for (auto [pos, mult] : stack) pairs.emplace_back(elems[pos], mult);
    if (!pairs.empty() && pairs.back().first == elems[close_pos]) {
      ++pairs.back().second;
    } else {
      pairs.emplace_back(elems[close_pos], 1);
    }
    out.push_back(Sequence::from_pairs(std::move(pairs)));
  }
};

}  // namespace

AtomSet enumerate_atoms(const GroupTable& t, std::vector<int32_t> subset,
                        const EnumOptions& opts) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty()) {
    // the trivial monoid: no atoms, Davenport 0
    AtomSet empty;
    empty.group = t.group();
    return empty;
  }
  if (subset.front() < 0 || subset.back() >= t.size()) {
    throw DomainError("subset contains an element index outside the group");
  }

  std::string key = cache_key(t.group(), subset);
  std::optional<std::string> dir;
  if (opts.use_cache) {
    CacheState& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    if (auto it = st.memory.find(key); it != st.memory.end()) return it->second;
    dir = resolve_dir_locked(st);
  }
  if (dir) {
    if (std::optional<AtomSet> loaded = load_disk(t, key, *dir)) {
      CacheState& st = cache_state();
      std::lock_guard<std::mutex> lock(st.mu);
      st.memory.emplace(key, *loaded);
      return *loaded;
    }
  }

  AtomSet as;
  as.group = t.group();
  as.subset = subset;
  as.contains_zero = (subset.front() == 0);

  std::vector<int32_t> elems = subset;
  if (as.contains_zero) {
    elems.erase(elems.begin());
    // the zero element only ever appears in the length-one atom "0"
    as.atoms.push_back(Sequence::from_pairs({{0, 1}}));
  }

  double box = 1;
  for (int32_t g : elems) box *= static_cast<double>(t.ord(g));
  if (box > opts.feasibility_limit && !opts.override_feasibility) {
    throw BudgetExceeded(
        "atom enumeration looks infeasible: multiplicity box " + std::to_string(box) +
        " exceeds " + std::to_string(opts.feasibility_limit) +
        "; pass the override to attempt it anyway");
  }

  AtomSearch search(t, elems, opts.node_budget, as.atoms);
  search.run();
  as.nodes = search.nodes;
  std::sort(as.atoms.begin(), as.atoms.end());
  compute_stats(t, as);

  if (opts.use_cache) {
    CacheState& st = cache_state();
    std::lock_guard<std::mutex> lock(st.mu);
    st.memory.emplace(key, as);
  }
  if (dir && as.nodes >= opts.cache_write_min_nodes) store_disk(as, key, *dir);
  return as;
}

AtomSet enumerate_atoms_elements(const Group& g, const std::vector<Element>& subset,
                                 const EnumOptions& opts) {
  GroupTable t(g);
  std::vector<int32_t> indices;
  indices.reserve(subset.size());
  for (const Element& e : subset) {
    indices.push_back(static_cast<int32_t>(element_index(g, e)));
  }
  return enumerate_atoms(t, std::move(indices), opts);
}

AtomSet enumerate_atoms_full(const GroupTable& t, const EnumOptions& opts) {
  std::vector<int32_t> subset;
  subset.reserve(static_cast<size_t>(t.size()) - 1);
  for (int32_t x = 1; x < t.size(); ++x) subset.push_back(x);
  if (subset.empty()) throw DomainError("the trivial group has no nonzero elements");
  return enumerate_atoms(t, std::move(subset), opts);
}

int64_t davenport_constant(const GroupTable& t, const EnumOptions& opts) {
  return enumerate_atoms_full(t, opts).davenport;
}

Rational cross_number_max(const GroupTable& t, const EnumOptions& opts) {
  return enumerate_atoms_full(t, opts).max_cross;
}

Rational k_star(const Group& g) {
  Rational out(1, g.exponent());
  for (int64_t q : g.primary_decomposition()) out += Rational(q - 1, q);
  return out;
}

void set_cache_dir(std::optional<std::string> dir) {
  CacheState& st = cache_state();
  std::lock_guard<std::mutex> lock(st.mu);
  st.dir_initialized = true;
  st.dir = std::move(dir);
}

std::optional<std::string> cache_dir() {
  CacheState& st = cache_state();
  std::lock_guard<std::mutex> lock(st.mu);
  return resolve_dir_locked(st);
}

void clear_atom_memory_cache() {
  CacheState& st = cache_state();
  std::lock_guard<std::mutex> lock(st.mu);
  st.memory.clear();
}

}  // namespace zslab
