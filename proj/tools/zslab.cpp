// zslab: exact zero-sum invariants of finite abelian groups.
//
// Every command prints one JSON object (or CSV with --csv) to stdout and
// exits 0 on success, 1 on verification failure, 2 on usage errors, 3 when a
// computation hit a budget or cap. Errors additionally emit one structured
// JSON object on stderr. All values are exact rationals in lowest terms;
// --float adds decimal approximations without replacing anything, so output
// stays byte-identical across reruns with the same inputs.

#include "zslab/atoms.hpp"
#include "zslab/errors.hpp"
#include "zslab/group.hpp"
#include "zslab/invariants.hpp"
#include "zslab/lengths.hpp"
#include "zslab/numeric.hpp"
#include "zslab/sequence.hpp"
#include "zslab/syslen.hpp"
#include "zslab/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace zslab;

struct GlobalOpts {
  bool csv = false;
  bool with_float = false;
  int threads = 0;  // 0 = all available
  uint64_t budget = EnumOptions{}.node_budget;
  bool force = false;
  bool no_cache = false;
  std::string cache_dir_flag;
};

int resolved_threads(const GlobalOpts& g) {
  if (g.threads > 0) return g.threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

EnumOptions enum_options(const GlobalOpts& g) {
  EnumOptions eo;
  eo.node_budget = g.budget;
  eo.override_feasibility = g.force;
  eo.use_cache = !g.no_cache;
  return eo;
}

void apply_cache_flags(const GlobalOpts& g) {
  if (!g.cache_dir_flag.empty()) set_cache_dir(g.cache_dir_flag);
}

// ---- output helpers ------------------------------------------------------

void put_rational(json& j, const std::string& key, const Rational& v, bool with_float) {
  j[key] = to_string(v);
  if (with_float) j[key + "_float"] = to_double(v);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

void emit_csv(const std::string& cmd, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  std::cout << "# csv=1 cmd=" << cmd << "\n";
  for (size_t i = 0; i < header.size(); ++i) {
    std::cout << (i ? "," : "") << csv_escape(header[i]);
  }
  std::cout << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      std::cout << (i ? "," : "") << csv_escape(row[i]);
    }
    std::cout << "\n";
  }
}

void emit_json(const json& j) { std::cout << j.dump() << "\n"; }

std::string join_ints(const std::vector<int64_t>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string join_ints(const std::set<int64_t>& xs) {
  return join_ints(std::vector<int64_t>(xs.begin(), xs.end()));
}

// ---- input helpers -------------------------------------------------------

Element parse_element_arg(const Group& g, const std::string& raw) {
  // bare coordinates are accepted on the command line: "1,0" == "(1,0)"
  if (raw.find('(') == std::string::npos) return parse_element(g, "(" + raw + ")");
  return parse_element(g, raw);
}

std::vector<int32_t> subset_indices(const Group& g, const std::vector<std::string>& items) {
  std::vector<int32_t> out;
  for (const std::string& item : items) {
    out.push_back(static_cast<int32_t>(element_index(g, parse_element_arg(g, item))));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json subset_json(const Group& g, const std::vector<int32_t>& idxs) {
  json arr = json::array();
  for (int32_t i : idxs) arr.push_back(format_element(element_at(g, i)));
  return arr;
}

json lengths_json(const std::set<int64_t>& xs) {
  json arr = json::array();
  for (int64_t x : xs) arr.push_back(x);
  return arr;
}

// ---- sweep plumbing ------------------------------------------------------

struct SweepFlags {
  std::optional<int64_t> max_subset_size;
  bool no_orbit_reduction = false;
  bool stream = false;
  bool witness = false;
};

void add_sweep_flags(CLI::App* sub, SweepFlags& f, bool with_witness = true) {
  sub->add_option("--max-subset-size", f.max_subset_size,
                  "cap subset sizes; results become lower-bound-certified");
  sub->add_flag("--no-orbit-reduction", f.no_orbit_reduction,
                "sweep raw subsets instead of orbit representatives");
  sub->add_flag("--stream", f.stream, "emit one JSON line per swept subset before the result");
  if (with_witness) {
    sub->add_flag("--witness", f.witness, "include the attaining subset in the output");
  }
}

json report_json(const Group& g, size_t index, const SubsetReport& rep, bool with_float) {
  json j;
  j["index"] = index;
  j["subset"] = subset_json(g, rep.subset);
  j["size"] = rep.subset.size();
  j["min_delta"] = rep.min_delta;
  j["half_factorial"] = rep.half_factorial;
  j["lcn"] = rep.lcn;
  put_rational(j, "max_cross", rep.max_cross, with_float);
  j["davenport"] = rep.davenport;
  if (rep.elasticity) put_rational(j, "elasticity", *rep.elasticity, with_float);
  j["budget_exceeded"] = rep.budget_exceeded;
  j["nodes"] = rep.nodes;
  return j;
}

SweepResult run_sweep(const Group& g, const GlobalOpts& go, const SweepFlags& f,
                      bool with_elasticity = false) {
  SweepOptions so;
  so.max_size = f.max_subset_size;
  so.orbit_reduction = !f.no_orbit_reduction;
  so.with_elasticity = with_elasticity;
  so.threads = resolved_threads(go);
  so.enum_opts = enum_options(go);
  if (go.budget != EnumOptions{}.node_budget) {
    so.canon_budget = std::max<uint64_t>(so.canon_budget, go.budget);
  }
  if (f.stream) {
    bool with_float = go.with_float;
    so.on_report = [&g, with_float](size_t i, const SubsetReport& rep) {
      std::cout << report_json(g, i, rep, with_float).dump() << "\n" << std::flush;
    };
  }
  return sweep_subsets(g, so);
}

// ---- verify suites -------------------------------------------------------

struct Claim {
  std::string id;
  std::string law;
  std::string computed;
  std::string expected;
  std::string relation = "=";
  bool pass = false;
  bool show_values = true;
};

Claim valued(std::string id, std::string law, std::string computed, std::string expected,
             std::string relation, bool pass) {
  return Claim{std::move(id), std::move(law), std::move(computed), std::move(expected),
               std::move(relation), pass, true};
}

Claim boolean(std::string id, std::string law, bool computed, bool expected) {
  return Claim{std::move(id), std::move(law), computed ? "true" : "false",
               expected ? "true" : "false", "=", computed == expected, false};
}

std::vector<Claim> suite_core(const Group& g, const GlobalOpts& go) {
  if (g.order() < 2) throw DomainError("the core suite needs a nontrivial group");
  GroupTable t(g);
  AtomSet atoms = enumerate_atoms_full(t, enum_options(go));
  std::vector<Claim> claims;

  Rational rho = elasticity(atoms);
  Rational half_d = Rational(atoms.davenport, 2);
  claims.push_back(valued("rho_eq_D_over_2", "rho(G) = D(G)/2", to_string(rho),
                          to_string(half_d), "=", rho == half_d));

  bool hf = is_half_factorial(atoms);
  claims.push_back(boolean("half_factorial", "G half-factorial iff |G| <= 2", hf,
                           g.order() <= 2));

  if (g.order() >= 3) {
    int64_t md = min_delta(atoms);
    claims.push_back(valued("min_delta_full", "min Delta(G) = 1 for |G| >= 3",
                            std::to_string(md), "1", "=", md == 1));
  }

  Rational ks = k_star(g);
  claims.push_back(valued("cross_lower", "K(G) >= K*(G)", to_string(atoms.max_cross),
                          to_string(ks), ">=", atoms.max_cross >= ks));
  return claims;
}

std::vector<Claim> suite_pgroup(const Group& g, const GlobalOpts& go) {
  if (!g.is_p_group()) throw DomainError("the pgroup suite needs a p-group");
  GroupTable t(g);
  AtomSet atoms = enumerate_atoms_full(t, enum_options(go));
  std::vector<Claim> claims;

  Rational ks = k_star(g);
  claims.push_back(valued("K_eq_Kstar", "K(G) = K*(G) on p-groups", to_string(atoms.max_cross),
                          to_string(ks), "=", atoms.max_cross == ks));
  if (g.rank() >= 2) {
    claims.push_back(valued("K_lt_rank", "K(G) < r(G) on p-groups of rank >= 2",
                            to_string(atoms.max_cross), std::to_string(g.rank()), "<",
                            atoms.max_cross < Rational(g.rank())));
  }
  return claims;
}

std::vector<Claim> suite_distance(const Group& g, const GlobalOpts& go) {
  if (!g.is_homocyclic() || g.rank() < 2) {
    throw DomainError("the distance suite needs a homocyclic group of rank >= 2");
  }
  int64_t n = g.exponent();
  int64_t r = g.rank();
  std::vector<Element> basis;
  Element total = zero_of(g);
  for (int i = 0; i < r; ++i) {
    Element e = zero_of(g);
    e[static_cast<size_t>(i)] = 1;
    total = add(g, total, e);
    basis.push_back(std::move(e));
  }
  auto config_min_delta = [&](std::vector<Element> elems) {
    return min_delta(enumerate_atoms_elements(g, elems, enum_options(go)));
  };
  std::vector<Claim> claims;

  {
    std::vector<Element> conf = basis;
    conf.push_back(total);
    int64_t md = config_min_delta(conf);
    claims.push_back(valued("sum_config",
                            "min Delta({e1+...+er, e1,...,er}) = r-1",
                            std::to_string(md), std::to_string(r - 1), "=", md == r - 1));
  }
  if (n != r + 1) {
    std::vector<Element> conf = basis;
    conf.push_back(negate(g, total));
    int64_t md = config_min_delta(conf);
    int64_t expected = std::abs(n - r - 1);
    claims.push_back(valued("neg_config",
                            "min Delta({-(e1+...+er), e1,...,er}) = |n-r-1| for n != r+1",
                            std::to_string(md), std::to_string(expected), "=", md == expected));
  } else {
    std::vector<Element> conf = basis;
    conf.push_back(total);
    conf.push_back(negate(g, total));
    int64_t md = config_min_delta(conf);
    claims.push_back(valued("pm_config",
                            "min Delta({-(e1+...+er), e1+...+er, e1,...,er}) = r-1 for n = r+1",
                            std::to_string(md), std::to_string(r - 1), "=", md == r - 1));
  }
  return claims;
}

std::vector<Claim> suite_sweep(const Group& g, const GlobalOpts& go) {
  if (g.order() < 2) throw DomainError("the sweep suite needs a nontrivial group");
  SweepFlags f;  // full sweep, orbit-reduced, no stream
  SweepResult sweep = run_sweep(g, go, f);
  GroupTable t(g);
  AtomSet full = enumerate_atoms_full(t, enum_options(go));

  int64_t e = g.exponent();
  int64_t r = g.rank();
  int64_t k = g.exponent_multiplicity();
  int64_t n1 = g.invariant_factors().empty() ? 1 : g.invariant_factors().front();
  int64_t half = e / 2 - 1;
  int64_t box = std::max(r - 1, half);
  std::vector<Claim> claims;

  SetWithExactness ds = delta_star(sweep);
  if (g.order() >= 3) {
    std::set<int64_t> members;
    for (int64_t v : {int64_t(1), r - 1, e - 2}) {
      if (v >= 1) members.insert(v);
    }
    bool ok = std::includes(ds.values.begin(), ds.values.end(), members.begin(), members.end());
    claims.push_back(valued("delta_star_lower",
                            "{1, r-1, e-2} (positive members) is contained in Delta*(G)",
                            "{" + join_ints(ds.values) + "}", "{" + join_ints(members) + "}",
                            "contains", ok));
  }
  {
    bool ok = true;
    for (int64_t v : ds.values) {
      bool in_low = v >= 1 && v <= box;
      bool in_high = v >= std::max<int64_t>(1, e - k - 1) && v <= e - 2;
      if (!in_low && !in_high) ok = false;
    }
    claims.push_back(valued("delta_star_upper",
                            "Delta*(G) within [1, max(r-1, e/2-1)] union [max(1, e-k-1), e-2]",
                            "{" + join_ints(ds.values) + "}",
                            "[1," + std::to_string(box) + "] u [" +
                                std::to_string(std::max<int64_t>(1, e - k - 1)) + "," +
                                std::to_string(e - 2) + "]",
                            "within", ok));
  }
  if (full.davenport >= 4 && !ds.values.empty()) {
    int64_t expected = std::max(e - 2, r - 1);
    int64_t got = *ds.values.rbegin();
    claims.push_back(valued("delta_star_max", "max Delta*(G) = max(e-2, r-1) when D(G) >= 4",
                            std::to_string(got), std::to_string(expected), "=",
                            got == expected));
  }
  {
    IntWithExactness m = m_of(sweep);
    claims.push_back(valued("m_upper", "m(G) <= max(r-1, e/2-1)", std::to_string(m.value),
                            std::to_string(std::max<int64_t>(box, 0)), "<=",
                            m.value <= std::max<int64_t>(box, 0)));
  }
  for (int64_t d = 1; d <= r - 1; ++d) {
    auto rs = rho_star(sweep, d);
    auto kd = k_of(sweep, d);
    std::string id = "growth_chain_" + std::to_string(d);
    if (!rs || !kd) {
      claims.push_back(valued(id, "rho*(G,d) >= K(G,d) >= 1 + (n1-1)d/n1 for d in [1, r-1]",
                              "no witness subset", "witness family nonempty", "", false));
      continue;
    }
    Rational bound = 1 + Rational((n1 - 1) * d, n1);
    bool ok = rs->value >= kd->value && kd->value >= bound;
    claims.push_back(valued(id, "rho*(G,d) >= K(G,d) >= 1 + (n1-1)d/n1 for d in [1, r-1]",
                            to_string(rs->value) + " >= " + to_string(kd->value) + " >= " +
                                to_string(bound),
                            "chain holds", "", ok));
  }
  {
    Delta1Bounds d1 = delta1_bounds(sweep);
    bool ok = std::includes(d1.upper.begin(), d1.upper.end(), d1.lower.begin(), d1.lower.end());
    claims.push_back(valued("delta1_consistent",
                            "Delta_1 lower envelope within its upper envelope",
                            "{" + join_ints(d1.lower) + "}", "{" + join_ints(d1.upper) + "}",
                            "within", ok));
  }
  return claims;
}

int run_verify(const std::string& suite, const Group& g, const GlobalOpts& go) {
  std::vector<Claim> claims;
  if (suite == "core") {
    claims = suite_core(g, go);
  } else if (suite == "pgroup") {
    claims = suite_pgroup(g, go);
  } else if (suite == "distance") {
    claims = suite_distance(g, go);
  } else if (suite == "sweep") {
    claims = suite_sweep(g, go);
  } else {
    throw DomainError("unknown suite '" + suite + "' (core, pgroup, distance, sweep)");
  }

  int failed = 0;
  for (const Claim& c : claims) {
    std::cout << c.id << " [" << c.law << "]: ";
    if (c.show_values || !c.pass) {
      std::cout << c.computed;
      if (!c.relation.empty()) std::cout << " " << c.relation << " " << c.expected;
      std::cout << " ";
    }
    std::cout << (c.pass ? "PASS" : "FAIL") << "\n";
    if (!c.pass) ++failed;
  }
  std::cout << "suite=" << suite << " group=" << g.name() << " claims=" << claims.size()
            << " passed=" << claims.size() - failed << " failed=" << failed << "\n";
  return failed == 0 ? 0 : 1;
}

// ---- command implementations ---------------------------------------------

int cmd_atoms(const Group& g, const std::vector<std::string>& subset_items,
              const GlobalOpts& go) {
  GroupTable t(g);
  AtomSet atoms = subset_items.empty()
                      ? enumerate_atoms_full(t, enum_options(go))
                      : enumerate_atoms(t, subset_indices(g, subset_items), enum_options(go));
  if (go.csv) {
    std::vector<std::vector<std::string>> rows;
    for (const Sequence& a : atoms.atoms) {
      rows.push_back({format_sequence(g, a), std::to_string(a.length()),
                      to_string(cross_number(t, a))});
    }
    emit_csv("atoms", {"sequence", "length", "cross"}, rows);
    return 0;
  }
  json j;
  j["group"] = g.name();
  j["subset"] = subset_json(g, atoms.subset);
  j["count"] = atoms.atoms.size();
  j["davenport"] = atoms.davenport;
  put_rational(j, "max_cross", atoms.max_cross, go.with_float);
  put_rational(j, "min_cross", atoms.min_cross, go.with_float);
  j["nodes"] = atoms.nodes;
  json list = json::array();
  for (const Sequence& a : atoms.atoms) {
    json e;
    e["sequence"] = format_sequence(g, a);
    e["length"] = a.length();
    put_rational(e, "cross", cross_number(t, a), go.with_float);
    list.push_back(std::move(e));
  }
  j["atoms"] = std::move(list);
  emit_json(j);
  return 0;
}

int cmd_davenport(const Group& g, const std::vector<std::string>& subset_items,
                  const GlobalOpts& go) {
  GroupTable t(g);
  AtomSet atoms = subset_items.empty()
                      ? enumerate_atoms_full(t, enum_options(go))
                      : enumerate_atoms(t, subset_indices(g, subset_items), enum_options(go));
  if (go.csv) {
    emit_csv("davenport", {"value"}, {{std::to_string(atoms.davenport)}});
    return 0;
  }
  json j;
  j["group"] = g.name();
  j["subset"] = subset_json(g, atoms.subset);
  j["value"] = atoms.davenport;
  emit_json(j);
  return 0;
}

int cmd_kstar(const Group& g, const GlobalOpts& go) {
  Rational v = k_star(g);
  if (go.csv) {
    emit_csv("kstar", {"value"}, {{to_string(v)}});
    return 0;
  }
  json j;
  put_rational(j, "value", v, go.with_float);
  emit_json(j);
  return 0;
}

int cmd_lengths(const Group& g, const std::string& sequence_text,
                const std::vector<std::string>& subset_items, std::optional<int64_t> aap_d,
                const GlobalOpts& go) {
  GroupTable t(g);
  Sequence b = parse_sequence(g, sequence_text);
  LengthSet l;
  if (subset_items.empty()) {
    l = length_set(t, b, enum_options(go));
  } else {
    AtomSet atoms = enumerate_atoms(t, subset_indices(g, subset_items), enum_options(go));
    l = length_set(t, b, atoms, enum_options(go).node_budget);
  }
  if (go.csv) {
    emit_csv("lengths", {"lengths", "delta", "rho"},
             {{join_ints(l.lengths), join_ints(l.delta()), to_string(l.rho())}});
    return 0;
  }
  json j;
  j["group"] = g.name();
  j["sequence"] = format_sequence(g, b);
  j["lengths"] = l.lengths;
  j["delta"] = l.delta();
  put_rational(j, "rho", l.rho(), go.with_float);
  if (aap_d) {
    AAPWitness w = aap_decompose(l, *aap_d);
    json a;
    a["y"] = w.y;
    a["d"] = w.d;
    a["ell"] = w.ell;
    a["bound"] = w.bound;
    a["head"] = w.head;
    a["tail"] = w.tail;
    j["aap"] = std::move(a);
  }
  emit_json(j);
  return 0;
}

int cmd_min_delta(const Group& g, const std::vector<std::string>& subset_items,
                  const GlobalOpts& go) {
  GroupTable t(g);
  AtomSet atoms = subset_items.empty()
                      ? enumerate_atoms_full(t, enum_options(go))
                      : enumerate_atoms(t, subset_indices(g, subset_items), enum_options(go));
  int64_t v = min_delta(atoms);
  if (go.csv) {
    emit_csv("min-delta", {"value"}, {{std::to_string(v)}});
    return 0;
  }
  json j;
  j["group"] = g.name();
  j["subset"] = subset_json(g, atoms.subset);
  j["value"] = v;
  emit_json(j);
  return 0;
}

int cmd_elasticity(const Group& g, const std::vector<std::string>& subset_items,
                   const GlobalOpts& go) {
  GroupTable t(g);
  AtomSet atoms = subset_items.empty()
                      ? enumerate_atoms_full(t, enum_options(go))
                      : enumerate_atoms(t, subset_indices(g, subset_items), enum_options(go));
  Rational v = elasticity(atoms);
  if (go.csv) {
    emit_csv("elasticity", {"value"}, {{to_string(v)}});
    return 0;
  }
  json j;
  j["group"] = g.name();
  j["subset"] = subset_json(g, atoms.subset);
  put_rational(j, "value", v, go.with_float);
  emit_json(j);
  return 0;
}

int cmd_delta_star(const Group& g, const SweepFlags& f, const GlobalOpts& go) {
  SweepResult sweep = run_sweep(g, go, f);
  SetWithExactness ds = delta_star(sweep);
  if (go.csv) {
    emit_csv("delta-star", {"values", "exact"},
             {{join_ints(ds.values), ds.exact ? "true" : "false"}});
    return 0;
  }
  json j;
  j["values"] = lengths_json(ds.values);
  j["exact"] = ds.exact;
  emit_json(j);
  return 0;
}

int cmd_m(const Group& g, const SweepFlags& f, const GlobalOpts& go) {
  SweepResult sweep = run_sweep(g, go, f);
  IntWithExactness m = m_of(sweep);
  if (go.csv) {
    emit_csv("m", {"value", "exact"}, {{std::to_string(m.value), m.exact ? "true" : "false"}});
    return 0;
  }
  json j;
  j["value"] = m.value;
  j["exact"] = m.exact;
  emit_json(j);
  return 0;
}

int cmd_rho_star(const Group& g, int64_t d, const SweepFlags& f, const GlobalOpts& go) {
  SweepResult sweep = run_sweep(g, go, f);
  auto rs = rho_star(sweep, d);
  if (go.csv) {
    emit_csv("rho-star", {"value", "exact"},
             {{rs ? to_string(rs->value) : "", (rs ? rs->exact : !sweep.capped) ? "true" : "false"}});
    return 0;
  }
  json j;
  if (rs) {
    put_rational(j, "value", rs->value, go.with_float);
    j["exact"] = rs->exact;
    if (f.witness) j["witness"] = subset_json(g, rs->witness);
  } else {
    j["value"] = nullptr;
    j["exact"] = !sweep.capped;
    j["note"] = "no sampled subset has least distance divisible by d";
  }
  emit_json(j);
  return 0;
}

int cmd_k_of(const Group& g, int64_t d, const SweepFlags& f, const GlobalOpts& go) {
  SweepResult sweep = run_sweep(g, go, f);
  auto kd = k_of(sweep, d);
  if (go.csv) {
    emit_csv("k-of", {"value", "exact"},
             {{kd ? to_string(kd->value) : "", (kd ? kd->exact : !sweep.capped) ? "true" : "false"}});
    return 0;
  }
  json j;
  if (kd) {
    put_rational(j, "value", kd->value, go.with_float);
    j["exact"] = kd->exact;
    if (f.witness) j["witness"] = subset_json(g, kd->witness);
  } else {
    j["value"] = nullptr;
    j["exact"] = !sweep.capped;
    j["note"] = "no sampled subset has least distance divisible by d";
  }
  emit_json(j);
  return 0;
}

int cmd_rho_d(const Group& g, int64_t d, const SweepFlags& f, const GlobalOpts& go) {
  SweepResult sweep = run_sweep(g, go, f);
  auto bounds = rho_d_bounds(sweep, d);
  if (!bounds) {
    if (go.csv) {
      emit_csv("rho-d", {"d", "lower", "upper", "exact"},
               {{std::to_string(d), "", "", !sweep.capped ? "true" : "false"}});
      return 0;
    }
    json j;
    j["d"] = d;
    j["lower"] = nullptr;
    j["upper"] = nullptr;
    j["exact"] = !sweep.capped;
    j["note"] = "no sampled subset has least distance divisible by d";
    emit_json(j);
    return 0;
  }
  if (go.csv) {
    emit_csv("rho-d", {"d", "lower", "upper", "exact"},
             {{std::to_string(d), to_string(bounds->lower), to_string(bounds->upper),
               bounds->exact ? "true" : "false"}});
    return 0;
  }
  json j;
  j["d"] = d;
  put_rational(j, "lower", bounds->lower, go.with_float);
  put_rational(j, "upper", bounds->upper, go.with_float);
  j["exact"] = bounds->exact;
  if (f.witness) {
    j["lower_witness"] = subset_json(g, bounds->lower_witness);
    j["upper_witness"] = subset_json(g, bounds->upper_witness);
  }
  if (!bounds->note.empty()) j["note"] = bounds->note;
  emit_json(j);
  return 0;
}

int cmd_delta1_bounds(const Group& g, const SweepFlags& f, const GlobalOpts& go) {
  SweepResult sweep = run_sweep(g, go, f);
  Delta1Bounds b = delta1_bounds(sweep);
  if (go.csv) {
    emit_csv("delta1-bounds", {"lower", "upper", "exact"},
             {{join_ints(b.lower), join_ints(b.upper), b.exact ? "true" : "false"}});
    return 0;
  }
  json j;
  j["lower"] = lengths_json(b.lower);
  j["upper"] = lengths_json(b.upper);
  j["exact"] = b.exact;
  emit_json(j);
  return 0;
}

int cmd_system(const Group& g, int64_t max_len, bool witnesses, const GlobalOpts& go) {
  LengthSystem sys = length_system(g, max_len, enum_options(go));
  if (go.csv) {
    std::vector<std::vector<std::string>> rows;
    for (size_t i = 0; i < sys.sets.size(); ++i) {
      rows.push_back({join_ints(sys.sets[i].lengths), format_sequence(g, sys.witnesses[i])});
    }
    emit_csv("system", {"lengths", "witness"}, rows);
    return 0;
  }
  json j;
  j["group"] = g.name();
  j["max_len"] = sys.max_len;
  j["count"] = sys.sets.size();
  json sets = json::array();
  for (size_t i = 0; i < sys.sets.size(); ++i) {
    if (witnesses) {
      json e;
      e["lengths"] = sys.sets[i].lengths;
      e["witness"] = format_sequence(g, sys.witnesses[i]);
      sets.push_back(std::move(e));
    } else {
      sets.push_back(sys.sets[i].lengths);
    }
  }
  j["sets"] = std::move(sets);
  emit_json(j);
  return 0;
}

int cmd_compare(const Group& a, const Group& b, int64_t max_len, const GlobalOpts& go) {
  SystemComparison cmp = compare_systems(a, b, max_len, enum_options(go));
  if (go.csv) {
    emit_csv("compare",
             {"left", "right", "max_len", "bounded_equal", "witness", "realized_in",
              "witness_sequence", "exclusion"},
             {{cmp.left, cmp.right, std::to_string(cmp.max_len),
               cmp.bounded_equal ? "true" : "false",
               cmp.witness ? join_ints(cmp.witness->lengths) : "", cmp.realized_in,
               cmp.witness_sequence, cmp.exclusion}});
    return 0;
  }
  json j;
  j["left"] = cmp.left;
  j["right"] = cmp.right;
  j["max_len"] = cmp.max_len;
  j["bounded_equal"] = cmp.bounded_equal;
  if (!cmp.bounded_equal) {
    j["witness"] = cmp.witness->lengths;
    j["realized_in"] = cmp.realized_in;
    j["witness_sequence"] = cmp.witness_sequence;
    j["exclusion"] = cmp.exclusion;
  }
  emit_json(j);
  return 0;
}

int cmd_conjecture_scan(const Group& g, const SweepFlags& f, const GlobalOpts& go) {
  if (!g.is_homocyclic() || g.rank() < 2) {
    throw DomainError("conjecture-scan needs a homocyclic group of rank >= 2");
  }
  int64_t n = g.exponent();
  int64_t r = g.rank();
  int64_t d = r - 1;
  SweepResult sweep = run_sweep(g, go, f);
  auto kd = k_of(sweep, d);

  // distinct prime-power components of n
  std::vector<int64_t> qs = g.primary_decomposition();
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  Rational predicted = 1;
  for (int64_t q : qs) predicted += Rational(q - 1, q) * d;

  json j;
  j["normative"] = false;
  j["note"] = "scan of two open hypotheses about K(G, r-1); observations, not theorems";
  j["group"] = g.name();
  j["n"] = n;
  j["r"] = r;
  j["d"] = d;
  if (r < n - 1) j["range_note"] = "outside the hypothesized range r >= n-1";

  std::string ratio_statement = "K(G,r-1) = 1 + s(r-1)/n for some s coprime to n";
  std::string product_statement =
      "K(G,r-1) = 1 + (sum over prime powers q of n of (q-1)/q)(r-1)";
  if (!kd) {
    j["computed"] = nullptr;
    j["exact"] = !sweep.capped;
    j["ratio_form"] = {{"statement", ratio_statement}, {"verdict", "undetermined"}};
    j["product_form"] = {{"statement", product_statement},
                         {"predicted", to_string(predicted)},
                         {"verdict", "undetermined"}};
  } else {
    put_rational(j, "computed", kd->value, go.with_float);
    j["exact"] = kd->exact;
    Rational s_rat = (kd->value - 1) * n / d;
    json ratio;
    ratio["statement"] = ratio_statement;
    bool integral = boost::multiprecision::denominator(s_rat) == 1;
    if (integral) {
      BigInt s = boost::multiprecision::numerator(s_rat);
      ratio["s"] = to_string(s);
      ratio["holds"] = s > 0 && boost::multiprecision::gcd(s, BigInt(n)) == 1;
    } else {
      ratio["holds"] = false;
    }
    j["ratio_form"] = std::move(ratio);
    json product;
    product["statement"] = product_statement;
    product["predicted"] = to_string(predicted);
    product["matches"] = kd->value == predicted;
    j["product_form"] = std::move(product);
  }
  if (go.csv) {
    emit_csv("conjecture-scan", {"d", "computed", "exact", "ratio_holds", "product_predicted",
                                 "product_matches"},
             {{std::to_string(d), kd ? to_string(kd->value) : "",
               j["exact"].get<bool>() ? "true" : "false",
               kd && j["ratio_form"].contains("holds")
                   ? (j["ratio_form"]["holds"].get<bool>() ? "true" : "false")
                   : "",
               to_string(predicted),
               kd ? (j["product_form"]["matches"].get<bool>() ? "true" : "false") : ""}});
    return 0;
  }
  emit_json(j);
  return 0;
}

void emit_error(const std::string& kind, const std::string& message) {
  json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts go;
  CLI::App app{"exact zero-sum invariants of finite abelian groups"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_flag("--csv", go.csv, "CSV output instead of JSON");
  app.add_flag("--float", go.with_float, "add decimal approximations beside exact values");
  app.add_option("--threads", go.threads, "worker threads for sweeps (default: all cores)");
  app.add_option("--budget", go.budget, "search node budget per enumeration");
  app.add_flag("--force", go.force, "override the feasibility pre-check");
  app.add_option("--cache-dir", go.cache_dir_flag, "atom cache directory (or env ZSLAB_CACHE)");
  app.add_flag("--no-cache", go.no_cache, "disable the atom cache");

  std::function<int()> action;

  // containers for option values; one set per subcommand
  struct {
    std::string group, group2, sequence, suite = "core";
    std::vector<std::string> subset;
    int64_t d = 1, max_len = 0;
    std::optional<int64_t> aap_d;
    bool witnesses = false;
    SweepFlags sweep;
  } a;

  auto* atoms_cmd = app.add_subcommand("atoms", "minimal zero-sum sequences over a subset");
  atoms_cmd->add_option("group", a.group, "group, e.g. C3^2")->required();
  atoms_cmd->add_option("--subset", a.subset, "elements like '(1,0)' (default: all nonzero)");
  atoms_cmd->callback([&] {
    action = [&] { return cmd_atoms(parse_group(a.group), a.subset, go); };
  });

  auto* dav_cmd = app.add_subcommand("davenport", "longest atom length");
  dav_cmd->add_option("group", a.group, "group")->required();
  dav_cmd->add_option("--subset", a.subset, "elements (default: all nonzero)");
  dav_cmd->callback([&] {
    action = [&] { return cmd_davenport(parse_group(a.group), a.subset, go); };
  });

  auto* kstar_cmd = app.add_subcommand("kstar", "closed-form cross number benchmark K*");
  kstar_cmd->add_option("group", a.group, "group")->required();
  kstar_cmd->callback([&] {
    action = [&] { return cmd_kstar(parse_group(a.group), go); };
  });

  auto* lengths_cmd = app.add_subcommand("lengths", "factorization lengths of one sequence");
  lengths_cmd->add_option("group", a.group, "group")->required();
  lengths_cmd->add_option("--sequence", a.sequence, "sequence like '(1,0)^2 (0,1)'")->required();
  lengths_cmd->add_option("--subset", a.subset, "ambient subset (default: sequence support)");
  lengths_cmd->add_option("--aap", a.aap_d, "decompose the set on the given difference grid");
  lengths_cmd->callback([&] {
    action = [&] {
      return cmd_lengths(parse_group(a.group), a.sequence, a.subset, a.aap_d, go);
    };
  });

  auto* md_cmd = app.add_subcommand("min-delta", "least distance between factorization lengths");
  md_cmd->add_option("group", a.group, "group")->required();
  md_cmd->add_option("--subset", a.subset, "elements (default: all nonzero)");
  md_cmd->callback([&] {
    action = [&] { return cmd_min_delta(parse_group(a.group), a.subset, go); };
  });

  auto* el_cmd = app.add_subcommand("elasticity", "sup of max length / min length");
  el_cmd->add_option("group", a.group, "group")->required();
  el_cmd->add_option("--subset", a.subset, "elements (default: all nonzero)");
  el_cmd->callback([&] {
    action = [&] { return cmd_elasticity(parse_group(a.group), a.subset, go); };
  });

  auto* ds_cmd = app.add_subcommand("delta-star", "set of least distances over all subsets");
  ds_cmd->add_option("group", a.group, "group")->required();
  add_sweep_flags(ds_cmd, a.sweep, false);
  ds_cmd->callback([&] {
    action = [&] { return cmd_delta_star(parse_group(a.group), a.sweep, go); };
  });

  auto* m_cmd = app.add_subcommand("m", "largest least distance over LCN subsets");
  m_cmd->add_option("group", a.group, "group")->required();
  add_sweep_flags(m_cmd, a.sweep, false);
  m_cmd->callback([&] {
    action = [&] { return cmd_m(parse_group(a.group), a.sweep, go); };
  });

  auto* rs_cmd = app.add_subcommand("rho-star", "max elasticity over subsets with d | min delta");
  rs_cmd->add_option("group", a.group, "group")->required();
  rs_cmd->add_option("--d", a.d, "distance divisor")->required();
  add_sweep_flags(rs_cmd, a.sweep);
  rs_cmd->callback([&] {
    action = [&] { return cmd_rho_star(parse_group(a.group), a.d, a.sweep, go); };
  });

  auto* ko_cmd = app.add_subcommand("k-of", "max cross number over subsets with d | min delta");
  ko_cmd->add_option("group", a.group, "group")->required();
  ko_cmd->add_option("--d", a.d, "distance divisor")->required();
  add_sweep_flags(ko_cmd, a.sweep);
  ko_cmd->callback([&] {
    action = [&] { return cmd_k_of(parse_group(a.group), a.d, a.sweep, go); };
  });

  auto* rd_cmd = app.add_subcommand("rho-d", "sandwich bounds for the growth coefficient at d");
  rd_cmd->add_option("group", a.group, "group")->required();
  rd_cmd->add_option("--d", a.d, "distance")->required();
  add_sweep_flags(rd_cmd, a.sweep);
  rd_cmd->callback([&] {
    action = [&] { return cmd_rho_d(parse_group(a.group), a.d, a.sweep, go); };
  });

  auto* d1_cmd = app.add_subcommand("delta1-bounds", "bounds for the set of AAP differences");
  d1_cmd->add_option("group", a.group, "group")->required();
  add_sweep_flags(d1_cmd, a.sweep, false);
  d1_cmd->callback([&] {
    action = [&] { return cmd_delta1_bounds(parse_group(a.group), a.sweep, go); };
  });

  auto* sys_cmd = app.add_subcommand("system", "all length sets up to a sequence length bound");
  sys_cmd->add_option("group", a.group, "group")->required();
  sys_cmd->add_option("--max-len", a.max_len, "sequence length horizon")->required();
  sys_cmd->add_flag("--witnesses", a.witnesses, "include a witness sequence per set");
  sys_cmd->callback([&] {
    action = [&] { return cmd_system(parse_group(a.group), a.max_len, a.witnesses, go); };
  });

  auto* cmp_cmd = app.add_subcommand("compare", "compare bounded length systems of two groups");
  cmp_cmd->add_option("left", a.group, "first group")->required();
  cmp_cmd->add_option("right", a.group2, "second group")->required();
  cmp_cmd->add_option("--max-len", a.max_len, "sequence length horizon")->required();
  cmp_cmd->callback([&] {
    action = [&] {
      return cmd_compare(parse_group(a.group), parse_group(a.group2), a.max_len, go);
    };
  });

  auto* ver_cmd = app.add_subcommand("verify", "check invariant laws on a group");
  ver_cmd->add_option("--suite", a.suite, "core, pgroup, distance, or sweep")->required();
  ver_cmd->add_option("--group", a.group, "group")->required();
  ver_cmd->callback([&] {
    action = [&] { return run_verify(a.suite, parse_group(a.group), go); };
  });

  auto* cj_cmd = app.add_subcommand("conjecture-scan",
                                    "non-normative scan of open hypotheses about K(G, r-1)");
  cj_cmd->add_option("group", a.group, "homocyclic group of rank >= 2")->required();
  add_sweep_flags(cj_cmd, a.sweep, false);
  cj_cmd->callback([&] {
    action = [&] { return cmd_conjecture_scan(parse_group(a.group), a.sweep, go); };
  });

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("usage", e.what());
    return 2;
  }

  try {
    apply_cache_flags(go);
    return action ? action() : 2;
  } catch (const BudgetExceeded& e) {
    emit_error(e.kind(), e.what());
    return 3;
  } catch (const CapExceeded& e) {
    emit_error(e.kind(), e.what());
    return 3;
  } catch (const IncompleteResult& e) {
    emit_error(e.kind(), e.what());
    return 3;
  } catch (const Error& e) {
    emit_error(e.kind(), e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 2;
  }
}
