#include "zslab/invariants.hpp"

#include "zslab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace zslab {

namespace {

std::string subset_brief(const std::vector<int32_t>& subset) {
  std::string out = "{";
  for (size_t i = 0; i < subset.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(subset[i]);
  }
  out += "}";
  return out;
}

void fill_report(const GroupTable& t, const EnumOptions& enum_opts, bool with_elasticity,
                 SubsetReport& rep) {
  try {
    AtomSet atoms = enumerate_atoms(t, rep.subset, enum_opts);
    rep.min_delta = min_delta(atoms);
    rep.half_factorial = is_half_factorial(atoms);
    rep.lcn = is_lcn(atoms);
    rep.max_cross = atoms.max_cross;
    rep.davenport = atoms.davenport;
    rep.nodes = atoms.nodes;
    if (with_elasticity) rep.elasticity = elasticity(atoms);
  } catch (const BudgetExceeded&) {
    rep.budget_exceeded = true;
  }
}

void require_complete(const SweepResult& sweep, const char* what) {
  if (sweep.any_budget_exceeded) {
    throw IncompleteResult(std::string(what) +
                           " cannot be certified: the sweep lost subsets to budget errors");
  }
}

}  // namespace

SweepResult sweep_subsets(const Group& g, const SweepOptions& opts) {
  SweepResult out;
  out.group = g;
  out.table = std::make_shared<const GroupTable>(g);
  out.enum_opts = opts.enum_opts;
  const GroupTable& t = *out.table;
  int32_t n = t.size();
  int64_t full = n - 1;

  if (!opts.max_size && g.order() > 81) {
    throw DomainError("full sweeps are limited to groups of order at most 81; "
                      "set a subset size cap for larger groups");
  }
  out.max_size = std::min<int64_t>(opts.max_size.value_or(full), full);
  if (out.max_size < 0) out.max_size = 0;
  out.capped = out.max_size < full;

  std::vector<std::vector<int32_t>> auts;
  if (opts.orbit_reduction) {
    try {
      auts = automorphisms(t, opts.aut_caps);
      out.orbit_reduced = true;
    } catch (const CapExceeded&) {
      out.orbit_reduced = false;  // identity-only canonicalization
    }
  }

  // breadth-first canonical extension over subset sizes
  std::vector<std::vector<int32_t>> reps;
  {
    uint64_t canon_spent = 0;
    auto charge = [&](int64_t size) {
      if (++canon_spent > opts.canon_budget) {
        throw BudgetExceeded("subset sweep exhausted its canonicalization budget at size " +
                             std::to_string(size) +
                             "; cap subset sizes or raise the budget");
      }
    };
    std::set<std::vector<int32_t>> level;
    for (int64_t size = 1; size <= out.max_size; ++size) {
      std::set<std::vector<int32_t>> next;
      if (size == 1) {
        for (int32_t x = 1; x < n; ++x) {
          charge(size);
          next.insert(canonical_subset_key(t, auts, {x}));
        }
      } else {
        std::vector<int32_t> candidate;
        for (const auto& rep : level) {
          for (int32_t x = 1; x < n; ++x) {
            if (std::binary_search(rep.begin(), rep.end(), x)) continue;
            charge(size);
            candidate = rep;
            candidate.push_back(x);
            next.insert(canonical_subset_key(t, auts, std::move(candidate)));
          }
        }
      }
      for (const auto& rep : next) reps.push_back(rep);
      level = std::move(next);
    }
  }
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  out.reports.resize(reps.size());
  for (size_t i = 0; i < reps.size(); ++i) out.reports[i].subset = std::move(reps[i]);

  // Completions arrive out of order under threading; the sequencer holds
  // them back so on_report always fires in index order.
  std::mutex emit_mu;
  std::vector<char> done(out.reports.size(), 0);
  size_t next_emit = 0;
  auto mark_done = [&](size_t i) {
    if (!opts.on_report) return;
    std::lock_guard<std::mutex> lock(emit_mu);
    done[i] = 1;
    while (next_emit < done.size() && done[next_emit]) {
      opts.on_report(next_emit, out.reports[next_emit]);
      ++next_emit;
    }
  };

  int threads = std::max(1, opts.threads);
  if (threads == 1 || out.reports.size() < 2) {
    for (size_t i = 0; i < out.reports.size(); ++i) {
      fill_report(t, opts.enum_opts, opts.with_elasticity, out.reports[i]);
      mark_done(i);
    }
  } else {
    std::atomic<size_t> cursor{0};
    std::mutex err_mu;
    std::exception_ptr first_error;
    auto worker = [&]() {
      while (true) {
        size_t i = cursor.fetch_add(1);
        if (i >= out.reports.size()) return;
        try {
          fill_report(t, opts.enum_opts, opts.with_elasticity, out.reports[i]);
          mark_done(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  for (const SubsetReport& rep : out.reports) {
    if (rep.budget_exceeded) out.any_budget_exceeded = true;
  }
  return out;
}

SetWithExactness delta_star(const SweepResult& sweep) {
  require_complete(sweep, "delta_star");
  SetWithExactness out;
  out.exact = !sweep.capped;
  for (const SubsetReport& rep : sweep.reports) {
    if (rep.min_delta > 0) out.values.insert(rep.min_delta);
  }
  return out;
}

IntWithExactness m_of(const SweepResult& sweep) {
  require_complete(sweep, "m");
  IntWithExactness out;
  out.exact = !sweep.capped;
  for (const SubsetReport& rep : sweep.reports) {
    if (rep.lcn && rep.min_delta > 0) out.value = std::max(out.value, rep.min_delta);
  }
  return out;
}

std::optional<RationalWithExactness> rho_star(SweepResult& sweep, int64_t d) {
  if (d < 1) throw DomainError("distance parameter must be positive");
  require_complete(sweep, "rho_star");
  std::optional<RationalWithExactness> out;
  for (SubsetReport& rep : sweep.reports) {
    if (rep.min_delta <= 0 || rep.min_delta % d != 0) continue;
    if (!rep.elasticity) {
      AtomSet atoms = enumerate_atoms(*sweep.table, rep.subset, sweep.enum_opts);
      rep.elasticity = elasticity(atoms);
    }
    if (!out || *rep.elasticity > out->value) {
      out = RationalWithExactness{*rep.elasticity, !sweep.capped, rep.subset};
    }
  }
  return out;
}

std::optional<RationalWithExactness> k_of(const SweepResult& sweep, int64_t d) {
  if (d < 1) throw DomainError("distance parameter must be positive");
  require_complete(sweep, "k_of");
  std::optional<RationalWithExactness> out;
  for (const SubsetReport& rep : sweep.reports) {
    if (rep.min_delta <= 0 || rep.min_delta % d != 0) continue;
    if (!out || rep.max_cross > out->value) {
      out = RationalWithExactness{rep.max_cross, !sweep.capped, rep.subset};
    }
  }
  return out;
}

std::optional<RhoDBounds> rho_d_bounds(SweepResult& sweep, int64_t d) {
  std::optional<RationalWithExactness> rs = rho_star(sweep, d);
  if (!rs) return std::nullopt;
  RhoDBounds out;
  out.d = d;
  out.upper = rs->value;
  out.upper_witness = rs->witness;
  bool have_lower = false;
  for (SubsetReport& rep : sweep.reports) {
    if (rep.min_delta != d) continue;
    if (!rep.elasticity) {
      AtomSet atoms = enumerate_atoms(*sweep.table, rep.subset, sweep.enum_opts);
      rep.elasticity = elasticity(atoms);
    }
    if (!have_lower || *rep.elasticity > out.lower) {
      out.lower = *rep.elasticity;
      out.lower_witness = rep.subset;
      have_lower = true;
    }
  }
  if (!have_lower) {
    out.lower = 1;
    out.note = "no subset has least distance exactly " + std::to_string(d) +
               "; the trivial bound 1 stands in (best qualifying subset " +
               subset_brief(rs->witness) + " has least distance a proper multiple of " +
               std::to_string(d) + ")";
  }
  out.exact = (out.lower == out.upper) && rs->exact;
  return out;
}

Delta1Bounds delta1_bounds(const SweepResult& sweep) {
  SetWithExactness ds = delta_star(sweep);
  Delta1Bounds out;
  out.exact = ds.exact;
  out.lower = ds.values;

  const Group& g = sweep.group;
  int64_t e = g.exponent();
  int64_t r = g.rank();
  int64_t k = g.exponent_multiplicity();
  int64_t hi1 = std::max(r - 1, e / 2 - 1);
  int64_t lo2 = std::max<int64_t>(1, e - k - 1);
  int64_t hi2 = e - 2;

  std::set<int64_t> closure;
  for (int64_t d : ds.values) {
    for (int64_t q = 1; q * q <= d; ++q) {
      if (d % q == 0) {
        closure.insert(q);
        closure.insert(d / q);
      }
    }
  }
  for (int64_t d : closure) {
    if ((d >= 1 && d <= hi1) || (d >= lo2 && d <= hi2)) out.upper.insert(d);
  }
  return out;
}

AAPWitness aap_decompose(const LengthSet& l, int64_t d) {
  if (d < 1) throw DomainError("progression difference must be positive");
  if (l.lengths.empty()) throw DomainError("decomposition of an empty length set");
  const std::vector<int64_t>& v = l.lengths;

  // maximal runs of consecutive members at distance exactly d
  int64_t best_ell = -1, best_y = 0, best_bound = 0;
  size_t i = 0;
  while (i < v.size()) {
    size_t j = i;
    while (j + 1 < v.size() && v[j + 1] - v[j] == d) ++j;
    int64_t ell = static_cast<int64_t>(j - i);
    int64_t y = v[i];
    int64_t top = v[j];
    int64_t bound = std::max<int64_t>({0, y - v.front(), v.back() - top});
    if (ell > best_ell || (ell == best_ell && (bound < best_bound ||
                                               (bound == best_bound && y < best_y)))) {
      best_ell = ell;
      best_y = y;
      best_bound = bound;
    }
    i = j + 1;
  }

  AAPWitness out;
  out.d = d;
  out.y = best_y;
  out.ell = best_ell;
  out.bound = best_bound;
  for (int64_t x : v) {
    if (x < best_y) out.head.push_back(x);
    if (x > best_y + best_ell * d) out.tail.push_back(x);
  }
  return out;
}

}  // namespace zslab
