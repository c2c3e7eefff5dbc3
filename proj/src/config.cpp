#include <fstream>
#include <set>

#include "cmdnls/runner.hpp"

namespace cmdnls {

using nlohmann::json;

namespace {

void only_keys(const json& j, const char* where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(std::string("config: '") + where + "' must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(std::string("config: unknown key '") + k + "' in " + where);
}

cplx to_cplx(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(std::string("config: ") + what + " must be a number or [re, im]");
}

json from_cplx(cplx c) { return json::array({c.real(), c.imag()}); }

template <class T>
void get(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

const char* kind_name(DatumKind k) {
  switch (k) {
    case DatumKind::constant: return "constant";
    case DatumKind::rational: return "rational";
    case DatumKind::gaussian_bump: return "gaussian_bump";
    case DatumKind::multi_bump: return "multi_bump";
  }
  return "?";
}

DatumKind parse_kind(const std::string& s) {
  if (s == "constant") return DatumKind::constant;
  if (s == "rational") return DatumKind::rational;
  if (s == "gaussian_bump") return DatumKind::gaussian_bump;
  if (s == "multi_bump") return DatumKind::multi_bump;
  throw ConfigError("config: unknown datum kind '" + s + "'");
}

const char* mode_name(SolveMode m) {
  switch (m) {
    case SolveMode::automatic: return "auto";
    case SolveMode::dense: return "dense";
    case SolveMode::iterative: return "iterative";
  }
  return "?";
}

SolveMode parse_mode(const std::string& s) {
  if (s == "auto") return SolveMode::automatic;
  if (s == "dense") return SolveMode::dense;
  if (s == "iterative") return SolveMode::iterative;
  throw ConfigError("config: unknown solve mode '" + s + "'");
}

}  // namespace

RunConfig parse_config(const json& j) {
  RunConfig c;
  only_keys(j, "top level", {"version", "grid", "datum", "solver", "formula", "sweep", "compare", "output"});
  get(j, "version", c.version);
  if (c.version != 1) throw ConfigError("config: unsupported version " + std::to_string(c.version));

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    only_keys(g, "grid", {"L", "N"});
    get(g, "L", c.L);
    get(g, "N", c.N);
  }
  if (j.contains("datum")) {
    const auto& d = j["datum"];
    only_keys(d, "datum", {"kind", "c", "terms", "project", "balance_mass"});
    if (d.contains("kind")) {
      c.datum.kind = parse_kind(d["kind"].get<std::string>());
      if (c.datum.kind == DatumKind::constant) c.datum.terms.clear();
    }
    if (d.contains("c")) c.datum.c = to_cplx(d["c"], "datum.c");
    if (d.contains("terms")) {
      if (!d["terms"].is_array()) throw ConfigError("config: datum.terms must be an array");
      c.datum.terms.clear();
      for (const auto& t : d["terms"]) {
        only_keys(t, "datum.terms[]", {"amplitude", "width", "offset"});
        DatumTerm term;
        if (t.contains("amplitude")) term.amplitude = to_cplx(t["amplitude"], "datum.terms[].amplitude");
        get(t, "width", term.width);
        get(t, "offset", term.offset);
        c.datum.terms.push_back(term);
      }
    }
    get(d, "project", c.datum.project);
    get(d, "balance_mass", c.datum.balance_mass);
  }
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    only_keys(s, "solver", {"dt", "t_final", "snapshot_stride", "dealias", "leak_tol"});
    get(s, "dt", c.solver.dt);
    get(s, "t_final", c.solver.t_final);
    get(s, "snapshot_stride", c.solver.snapshot_stride);
    get(s, "dealias", c.solver.dealias);
    get(s, "leak_tol", c.solver.leak_tol);
  }
  if (j.contains("formula")) {
    const auto& f = j["formula"];
    only_keys(f, "formula", {"mode", "tol", "max_iter", "restart", "dense_limit", "max_condition",
                             "nodes_per_cell", "refine", "richardson", "z_min"});
    if (f.contains("mode")) c.formula.mode = parse_mode(f["mode"].get<std::string>());
    get(f, "tol", c.formula.tol);
    get(f, "max_iter", c.formula.max_iter);
    get(f, "restart", c.formula.restart);
    get(f, "dense_limit", c.formula.dense_limit);
    get(f, "max_condition", c.formula.max_condition);
    get(f, "nodes_per_cell", c.formula.nodes_per_cell);
    get(f, "refine", c.formula.refine);
    get(f, "richardson", c.formula.richardson);
    get(f, "z_min", c.formula.z_min);
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    only_keys(s, "sweep", {"t", "z", "eps"});
    get(s, "t", c.sweep.t);
    get(s, "eps", c.sweep.eps);
    if (s.contains("z")) {
      c.sweep.z.clear();
      for (const auto& z : s["z"]) c.sweep.z.push_back(to_cplx(z, "sweep.z[]"));
    }
  }
  if (j.contains("compare")) {
    only_keys(j["compare"], "compare", {"gate"});
    get(j["compare"], "gate", c.compare_gate);
  }
  if (j.contains("output")) {
    only_keys(j["output"], "output", {"dir"});
    get(j["output"], "dir", c.out_dir);
  }

  try {
    (void)c.grid();
  } catch (const GridError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.datum.validate();
  c.solver.validate();
  for (const auto& z : c.sweep.z)
    if (z.imag() < c.formula.z_min) throw ConfigError("config: sweep point below the Im z floor");
  for (double e : c.sweep.eps)
    if (!(e > 0.0)) throw ConfigError("config: sweep eps values must be positive");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json terms = json::array();
  for (const auto& t : c.datum.terms)
    terms.push_back({{"amplitude", from_cplx(t.amplitude)}, {"width", t.width}, {"offset", t.offset}});
  json zs = json::array();
  for (const auto& z : c.sweep.z) zs.push_back(from_cplx(z));
  return json{
      {"version", c.version},
      {"grid", {{"L", c.L}, {"N", c.N}}},
      {"datum",
       {{"kind", kind_name(c.datum.kind)},
        {"c", from_cplx(c.datum.c)},
        {"terms", terms},
        {"project", c.datum.project},
        {"balance_mass", c.datum.balance_mass}}},
      {"solver",
       {{"dt", c.solver.dt},
        {"t_final", c.solver.t_final},
        {"snapshot_stride", c.solver.snapshot_stride},
        {"dealias", c.solver.dealias},
        {"leak_tol", c.solver.leak_tol}}},
      {"formula",
       {{"mode", mode_name(c.formula.mode)},
        {"tol", c.formula.tol},
        {"max_iter", c.formula.max_iter},
        {"restart", c.formula.restart},
        {"dense_limit", c.formula.dense_limit},
        {"max_condition", c.formula.max_condition},
        {"nodes_per_cell", c.formula.nodes_per_cell},
        {"refine", c.formula.refine},
        {"richardson", c.formula.richardson},
        {"z_min", c.formula.z_min}}},
      {"sweep", {{"t", c.sweep.t}, {"z", zs}, {"eps", c.sweep.eps}}},
      {"compare", {{"gate", c.compare_gate}}},
      {"output", {{"dir", c.out_dir}}},
  };
}

}  // namespace cmdnls
