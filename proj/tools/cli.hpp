#pragma once

// The hybridcap command line: exponent | regime-map | min-backhaul | simulate | bound.
//
// Every command reads its parameters from defaults, then an optional --config
// file (a JSON object, or a CSV written by this tool whose first line is
// "# config: {...}"), then explicit flags. The resolved parameters are echoed
// as the first line of every CSV, so feeding a CSV back through --config
// reproduces it byte for byte.
//
// Exit codes: 0 success, 1 runtime failure (e.g. an empty routing cell),
// 2 invalid arguments or config, 3 a simulated aggregate above the cut-set
// bound.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hybridcap/hybridcap.hpp"

namespace hybridcap::cli {

inline constexpr int kConfigSchemaVersion = 1;

enum ExitCode { kOk = 0, kRuntimeError = 1, kInvalidConfig = 2, kInvariantViolation = 3 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DominanceViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using nlohmann::json;

// ---------------------------------------------------------------- parameters

enum class Kind { number, extended, integer, number_list, integer_list, string_list, text };

struct Param {
  std::string name;  // config key; the flag is --name with '_' -> '-'
  Kind kind;
  json fallback;
  std::string help;
};

inline std::string flag_of(const std::string& key) {
  std::string f = "--" + key;
  for (char& c : f)
    if (c == '_') c = '-';
  return f;
}

inline double parse_double(const std::string& s) {
  double v = 0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("not a number: '" + s + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

inline std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ','))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline json extended_value(const std::string& s) {
  if (s == "inf" || s == "+inf") return "inf";
  if (s == "-inf") return "-inf";
  return parse_double(s);
}

// Flag text to the JSON value stored in the config.
inline json flag_value(Kind kind, const std::string& s) {
  switch (kind) {
    case Kind::number: return parse_double(s);
    case Kind::extended: return extended_value(s);
    case Kind::integer: return parse_int(s);
    case Kind::text: return s;
    case Kind::number_list: {
      json a = json::array();
      for (const auto& x : split_commas(s)) a.push_back(parse_double(x));
      return a;
    }
    case Kind::integer_list: {
      json a = json::array();
      for (const auto& x : split_commas(s)) a.push_back(parse_int(x));
      return a;
    }
    case Kind::string_list: {
      json a = json::array();
      for (const auto& x : split_commas(s)) a.push_back(x);
      return a;
    }
  }
  throw std::logic_error("bad Kind");
}

inline void check_kind(const std::string& key, Kind kind, const json& v) {
  auto all = [&](auto pred) { return v.is_array() && std::all_of(v.begin(), v.end(), pred); };
  bool ok = false;
  switch (kind) {
    case Kind::number: ok = v.is_number(); break;
    case Kind::extended: ok = v.is_number() || (v.is_string() && (v == "inf" || v == "-inf")); break;
    case Kind::integer: ok = v.is_number_integer(); break;
    case Kind::text: ok = v.is_string(); break;
    case Kind::number_list: ok = all([](const json& x) { return x.is_number(); }); break;
    case Kind::integer_list: ok = all([](const json& x) { return x.is_number_integer(); }); break;
    case Kind::string_list: ok = all([](const json& x) { return x.is_string(); }); break;
  }
  if (!ok) throw ConfigError("config key '" + key + "' has the wrong type: " + v.dump());
}

inline Extended<double> to_extended(const json& v) {
  if (v.is_string()) return v == "inf" ? Extended<double>::pos_inf() : Extended<double>::neg_inf();
  return Extended<double>(v.get<double>());
}

inline std::string extended_text(const Extended<double>& e) {
  return to_string(e, [](double v) { return format_number(v); });
}

// ---------------------------------------------------------------- commands

struct Command {
  std::string name;
  std::string description;
  std::string footer;
  std::vector<Param> params;
};

inline std::vector<Param> grid_params() {
  return {
      {"beta_min", Kind::number, 0.0, "smallest beta"},
      {"beta_max", Kind::number, 0.98, "largest beta"},
      {"beta_steps", Kind::integer, 50, "beta grid points (>= 1)"},
      {"gamma_min", Kind::number, 0.0, "smallest gamma"},
      {"gamma_max", Kind::number, 0.98, "largest gamma"},
      {"gamma_steps", Kind::integer, 50, "gamma grid points (>= 1)"},
  };
}

inline std::vector<Param> instance_params() {
  return {
      {"n", Kind::integer_list, json::array({256, 512, 1024, 2048, 4096}), "node counts, comma separated"},
      {"alpha", Kind::number, 3.0, "path-loss exponent (> 2)"},
      {"beta", Kind::number, 0.0, "m = n^beta base stations"},
      {"gamma", Kind::number, 0.0, "l = n^gamma antennas per BS"},
      {"eta", Kind::extended, "inf", "R_BS = n^eta per backhaul link; inf or -inf allowed"},
      {"seeds", Kind::integer, 20, "number of seeds per n"},
      {"seed_base", Kind::integer, 0, "first seed"},
      {"P", Kind::number, SimConfig{}.P, "per-node transmit power (noise power 1)"},
  };
}

inline const std::vector<Command>& commands() {
  static const std::vector<Command> cmds = [] {
    std::vector<Command> c;
    c.push_back({"exponent",
                  "Throughput scaling exponent, winning scheme, regimes and limits at one point.",
                  "",
                  {{"alpha", Kind::number, 3.0, "path-loss exponent (> 2)"},
                   {"beta", Kind::number, 0.0, "m = n^beta"},
                   {"gamma", Kind::number, 0.0, "l = n^gamma"},
                   {"eta", Kind::extended, "inf", "R_BS = n^eta; inf or -inf allowed"},
                   {"format", Kind::text, "text", "text or json"}}});

    Command map{"regime-map", "Regime label and exponent over a (beta, gamma) grid.",
                "CSV columns: beta,gamma,regime,e@alpha=<a> for each alpha. Points with beta+gamma>1 are skipped.",
                grid_params()};
    map.params.push_back({"eta", Kind::extended, "inf", "backhaul exponent"});
    map.params.push_back({"alphas", Kind::number_list, json::array({2.2, 2.5, 3.0, 4.0, 6.0}), "reference alphas"});
    c.push_back(map);

    Command mb{"min-backhaul", "Smallest backhaul exponent that keeps the infinite-backhaul exponent.",
               "CSV columns: beta,gamma,regime,eta_star,negligible (negligible = 1 when eta_star <= 0).",
               grid_params()};
    c.push_back(mb);

    Command sim{"simulate", "Monte Carlo throughput of the routing schemes with cut-set bounds.",
                "CSV columns: scheme,n,m,l,R_BS,alpha,seed,aggregate,access,backhaul,exit,min_cut. "
                "Stage columns are empty for MH and HC. Trailing '# slope,<scheme>,<slope>,<stderr>' lines "
                "give log-log fits of aggregate against n.",
                instance_params()};
    sim.params.push_back({"schemes", Kind::string_list, json::array({"MH", "HC", "ISH", "IMH"}), "schemes to run"});
    sim.params.push_back({"tdma_k", Kind::integer, SimConfig{}.tdma_k, "spatial reuse factor (perfect square)"});
    sim.params.push_back({"hc_cluster_exponent", Kind::number, SimConfig{}.hc_cluster_exponent,
                          "HC cluster size M = n^x"});
    sim.params.push_back({"hc_quant_bits", Kind::number, SimConfig{}.hc_quant_bits, "HC bits per observation"});
    sim.params.push_back({"format", Kind::text, "csv", "csv or json"});
    c.push_back(sim);

    Command bound{"bound", "Cut-set upper bounds L1 and L2 per instance.",
                  "CSV columns: n,m,l,R_BS,alpha,seed,L1_D1,L1_D2,L1_D3,L1_total,L2_D1,L2_D2,L2_D3,L2_wired,"
                  "L2_total,min_cut.",
                  instance_params()};
    bound.params.push_back({"format", Kind::text, "csv", "csv or json"});
    c.push_back(bound);
    return c;
  }();
  return cmds;
}

inline const Command& command_named(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

// Reads a JSON config, or the "# config: " line of a CSV written by this tool.
inline json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  const std::string tag = "# config: ";
  if (text.rfind(tag, 0) == 0) text = text.substr(tag.size(), text.find('\n') - tag.size());
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

inline json resolve_config(const Command& cmd, const std::optional<json>& file,
                           const std::map<std::string, std::string>& flags) {
  json cfg = json::object();
  for (const auto& p : cmd.params) cfg[p.name] = p.fallback;
  if (file) {
    if (!file->is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : file->items()) {
      if (key == "schema_version") {
        if (value != kConfigSchemaVersion)
          throw ConfigError("unsupported schema_version " + value.dump() + ", expected " +
                            std::to_string(kConfigSchemaVersion));
        continue;
      }
      if (key == "command") {
        if (value != cmd.name) throw ConfigError("config is for command " + value.dump() + ", not '" + cmd.name + "'");
        continue;
      }
      const auto it = std::find_if(cmd.params.begin(), cmd.params.end(), [&](const Param& p) { return p.name == key; });
      if (it == cmd.params.end()) throw ConfigError("unknown config key '" + key + "' for " + cmd.name);
      cfg[key] = value;
    }
    if (!file->contains("schema_version")) throw ConfigError("config lacks schema_version");
  }
  for (const auto& [key, text] : flags) {
    const auto& p = *std::find_if(cmd.params.begin(), cmd.params.end(), [&](const Param& q) { return q.name == key; });
    cfg[key] = flag_value(p.kind, text);
  }
  for (const auto& p : cmd.params) check_kind(p.name, p.kind, cfg[p.name]);
  cfg["schema_version"] = kConfigSchemaVersion;
  cfg["command"] = cmd.name;
  return cfg;
}

// ---------------------------------------------------------------- helpers

inline std::vector<double> grid_axis(double lo, double hi, std::int64_t steps, const std::string& what) {
  if (steps < 1) throw ConfigError(what + "_steps must be at least 1");
  if (!(lo <= hi)) throw ConfigError(what + "_min must not exceed " + what + "_max");
  std::vector<double> v;
  for (std::int64_t i = 0; i < steps; ++i)
    v.push_back(steps == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1));
  return v;
}

struct Grid {
  std::vector<double> beta, gamma;
};

inline Grid read_grid(const json& c) {
  return {grid_axis(c["beta_min"], c["beta_max"], c["beta_steps"], "beta"),
          grid_axis(c["gamma_min"], c["gamma_max"], c["gamma_steps"], "gamma")};
}

inline bool valid_structure(double beta, double gamma) {
  return beta >= 0 && gamma >= 0 && beta < 1 && gamma < 1 && beta + gamma <= 1;
}

inline ScalingPoint<double> read_point(const json& c) {
  ScalingPoint<double> p{c["alpha"].get<double>(), c["beta"].get<double>(), c["gamma"].get<double>(),
                         to_extended(c["eta"])};
  try {
    validate(p);
  } catch (const InvalidPointError& e) {
    throw ConfigError(e.what());
  }
  return p;
}

// Seeds of instance (n, seed): the topology and the channel phases draw from
// separate keys.
inline std::uint64_t topology_seed(std::int64_t n, std::int64_t seed) {
  return hash_key(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(n), 1);
}
inline std::uint64_t phase_seed(std::int64_t n, std::int64_t seed) {
  return hash_key(static_cast<std::uint64_t>(seed), static_cast<std::uint64_t>(n), 2);
}

struct Instance {
  std::int64_t n;
  std::int64_t seed;
  FiniteInstance finite;
};

inline std::vector<Instance> read_instances(const json& c, const ScalingPoint<double>& p,
                                                std::vector<std::string>& warnings) {
  const auto seeds = c["seeds"].get<std::int64_t>();
  if (seeds < 1) throw ConfigError("seeds must be at least 1");
  const auto base = c["seed_base"].get<std::int64_t>();
  if (base < 0) throw ConfigError("seed_base must be non-negative");
  if (c["n"].empty()) throw ConfigError("n list is empty");
  std::vector<Instance> out;
  for (const auto& nv : c["n"]) {
    const auto n = nv.get<std::int64_t>();
    FiniteInstance f;
    try {
      f = map_finite_n(n, p);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (!f.warning.empty()) warnings.push_back("n=" + std::to_string(n) + ": " + f.warning);
    for (std::int64_t s = 0; s < seeds; ++s) out.push_back({n, base + s, f});
  }
  return out;
}

inline std::string config_line(const json& c) { return "# config: " + c.dump() + "\n"; }

inline std::string num(double v) { return format_number(v); }

// ---------------------------------------------------------------- exponent

inline std::string interval_text(const AlphaInterval<double>& iv) {
  return std::string(iv.lo_closed ? "[" : "(") + num(iv.lo) + ", " +
         (iv.hi.is_pos_inf() ? std::string("inf") : num(iv.hi.value())) + ")";
}

inline int cmd_exponent(const json& c, std::ostream& out) {
  const ScalingPoint<double> p = read_point(c);
  const RegimeReport<double> r = regime_report(p);
  const Extended<double> eta_star = min_backhaul_exponent(p.beta, p.gamma);
  const std::string format = c["format"];
  if (format == "json") {
    json j;
    j["alpha"] = p.alpha;
    j["beta"] = p.beta;
    j["gamma"] = p.gamma;
    j["eta"] = c["eta"];
    j["exponent"] = r.exponent;
    j["scheme"] = to_string(r.best_scheme);
    j["formula"] = to_string(r.formula);
    j["clipped"] = r.clipped;
    j["regime_2d"] = to_string(r.label2d);
    j["regime_3d"] = to_string(r.label3d);
    j["dof_limited"] = r.dof_limited;
    j["infra_limited"] = r.infra_limited;
    j["min_backhaul_exponent"] = number_to_json(eta_star.is_neg_inf()   ? -std::numeric_limits<double>::infinity()
                                                : eta_star.is_pos_inf() ? std::numeric_limits<double>::infinity()
                                                                        : eta_star.value());
    j["alpha_breakpoints"] = json::array();
    for (const auto& iv : r.alpha_breakpoints)
      j["alpha_breakpoints"].push_back({{"lo", iv.lo},
                                        {"lo_closed", iv.lo_closed},
                                        {"hi", iv.hi.is_pos_inf() ? json("inf") : json(iv.hi.value())},
                                        {"scheme", to_string(iv.scheme)},
                                        {"formula", to_string(iv.formula)}});
    out << j.dump(2) << "\n";
    return kOk;
  }
  if (format != "text") throw ConfigError("format must be text or json");
  out << "exponent: " << num(r.exponent) << "\n";
  out << "scheme: " << to_string(r.best_scheme) << (r.clipped ? " (held by backhaul)" : "") << "\n";
  out << "formula: " << to_string(r.formula) << "\n";
  out << "regime: " << to_string(r.label3d) << " (2-D: " << to_string(r.label2d) << ")\n";
  out << "dof_limited: " << (r.dof_limited ? "true" : "false") << "\n";
  out << "infra_limited: " << (r.infra_limited ? "true" : "false") << "\n";
  out << "min_backhaul_exponent: " << extended_text(eta_star) << "\n";
  out << "alpha_breakpoints:\n";
  for (const auto& iv : r.alpha_breakpoints)
    out << "  alpha in " << interval_text(iv) << ": " << to_string(iv.scheme) << " " << to_string(iv.formula) << "\n";
  return kOk;
}

// ---------------------------------------------------------------- maps

inline int cmd_regime_map(const json& c, std::ostream& out) {
  const Grid g = read_grid(c);
  const Extended<double> eta = to_extended(c["eta"]);
  std::vector<double> alphas;
  for (const auto& a : c["alphas"]) {
    if (!(a.get<double>() > 2)) throw ConfigError("every alpha must exceed 2");
    alphas.push_back(a.get<double>());
  }
  out << config_line(c);
  out << "beta,gamma,regime";
  for (double a : alphas) out << ",e@alpha=" << num(a);
  out << "\n";
  for (double b : g.beta)
    for (double gm : g.gamma) {
      if (!valid_structure(b, gm)) continue;
      out << num(b) << "," << num(gm) << "," << to_string(classify_regime_3d(b, gm, eta));
      for (double a : alphas) out << "," << num(achievable_exponent(ScalingPoint<double>{a, b, gm, eta}).exponent);
      out << "\n";
    }
  return kOk;
}

inline int cmd_min_backhaul(const json& c, std::ostream& out) {
  const Grid g = read_grid(c);
  out << config_line(c);
  out << "beta,gamma,regime,eta_star,negligible\n";
  for (double b : g.beta)
    for (double gm : g.gamma) {
      if (!valid_structure(b, gm)) continue;
      const Extended<double> e = min_backhaul_exponent(b, gm);
      out << num(b) << "," << num(gm) << "," << to_string(classify_regime_2d(b, gm)) << "," << extended_text(e)
          << "," << (e <= Extended<double>(0.0) ? 1 : 0) << "\n";
    }
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimRow {
  Scheme scheme;
  const Instance* inst;
  SimResult result;
  double min_cut;
};

inline SimConfig read_sim_config(const json& c, double r_bs) {
  SimConfig s;
  s.P = c["P"];
  s.tdma_k = static_cast<int>(c.value("tdma_k", std::int64_t{SimConfig{}.tdma_k}));
  s.hc_cluster_exponent = c.value("hc_cluster_exponent", SimConfig{}.hc_cluster_exponent);
  s.hc_quant_bits = c.value("hc_quant_bits", SimConfig{}.hc_quant_bits);
  s.r_bs = r_bs;
  try {
    validate(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

inline std::vector<Scheme> read_schemes(const json& c) {
  std::vector<Scheme> out;
  for (const auto& s : c["schemes"]) {
    try {
      out.push_back(scheme_from_string(s.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (out.empty()) throw ConfigError("schemes list is empty");
  return out;
}

inline std::string stage_cell(const SimResult& r, double v) { return r.has_stages ? num(v) : ""; }

inline int cmd_simulate(const json& c, std::ostream& out, unsigned threads) {
  const ScalingPoint<double> p = read_point(c);
  const auto schemes = read_schemes(c);
  const std::string format = c["format"];
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  std::vector<std::string> warnings;
  const auto instances = read_instances(c, p, warnings);
  // validates P, k, M, Q before any work
  (void)read_sim_config(c, 0.0);

  auto run_one = [&](std::size_t i) {
    const Instance& in = instances[i];
    const Topology t = generate_topology({in.n, in.finite.m, in.finite.l, topology_seed(in.n, in.seed)});
    const ChannelRealization ch(t, p.alpha, phase_seed(in.n, in.seed));
    const SimConfig cfg = read_sim_config(c, in.finite.r_bs);
    const double cut = min_cut(t, ch, cfg.P, cfg.r_bs);
    std::vector<SimRow> rows;
    for (Scheme s : schemes) rows.push_back({s, &in, simulate(s, t, ch, cfg), cut});
    return rows;
  };
  const auto per_instance = parallel_map(instances.size(), threads, run_one);

  std::vector<SimRow> rows;
  for (const auto& v : per_instance)
    for (const auto& r : v) rows.push_back(r);

  struct Slope {
    Scheme scheme;
    std::optional<SlopeFit> fit;
  };
  std::vector<Slope> slopes;
  for (Scheme s : schemes) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows)
      if (r.scheme == s) pts.push_back({static_cast<double>(r.inst->n), r.result.aggregate});
    Slope sl{s, std::nullopt};
    try {
      sl.fit = fit_scaling_exponent(pts);
    } catch (const DegenerateFitError&) {
    }
    slopes.push_back(sl);
  }

  std::vector<std::string> violations;
  for (const auto& r : rows)
    if (r.result.aggregate > r.min_cut)
      violations.push_back(std::string(to_string(r.scheme)) + " n=" + std::to_string(r.inst->n) +
                           " seed=" + std::to_string(r.inst->seed) + ": aggregate " + num(r.result.aggregate) +
                           " exceeds min_cut " + num(r.min_cut));

  if (format == "csv") {
    out << config_line(c);
    for (const auto& w : warnings) out << "# warning: " << w << "\n";
    out << "scheme,n,m,l,R_BS,alpha,seed,aggregate,access,backhaul,exit,min_cut\n";
    for (const auto& r : rows) {
      const auto& res = r.result;
      out << to_string(r.scheme) << "," << r.inst->n << "," << r.inst->finite.m << "," << r.inst->finite.l << ","
          << num(r.inst->finite.r_bs) << "," << num(p.alpha) << "," << r.inst->seed << "," << num(res.aggregate)
          << "," << stage_cell(res, res.stages.access) << "," << stage_cell(res, res.stages.backhaul) << ","
          << stage_cell(res, res.stages.exit) << "," << num(r.min_cut) << "\n";
    }
    for (const auto& s : slopes) {
      out << "# slope," << to_string(s.scheme) << ",";
      if (s.fit)
        out << num(s.fit->slope) << "," << num(s.fit->stderr_slope) << "\n";
      else
        out << "unavailable\n";
    }
  } else {
    json j;
    j["config"] = c;
    j["warnings"] = warnings;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json row = to_json(r.result);
      row.erase("per_pair");
      row["n"] = r.inst->n;
      row["m"] = r.inst->finite.m;
      row["l"] = r.inst->finite.l;
      row["R_BS"] = number_to_json(r.inst->finite.r_bs);
      row["alpha"] = p.alpha;
      row["seed"] = r.inst->seed;
      row["min_cut"] = number_to_json(r.min_cut);
      j["rows"].push_back(row);
    }
    j["slopes"] = json::array();
    for (const auto& s : slopes) {
      json e{{"scheme", to_string(s.scheme)}};
      if (s.fit) {
        e["slope"] = s.fit->slope;
        e["stderr"] = s.fit->stderr_slope;
      }
      j["slopes"].push_back(e);
    }
    out << j.dump(2) << "\n";
  }
  if (!violations.empty()) {
    std::string msg = "cut-set dominance violated:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw DominanceViolation(msg);
  }
  return kOk;
}

// ---------------------------------------------------------------- bound

inline int cmd_bound(const json& c, std::ostream& out, unsigned threads) {
  const ScalingPoint<double> p = read_point(c);
  const std::string format = c["format"];
  if (format != "csv" && format != "json") throw ConfigError("format must be csv or json");
  const double P = c["P"];
  if (!(P >= 0)) throw ConfigError("P must be non-negative");
  std::vector<std::string> warnings;
  const auto instances = read_instances(c, p, warnings);

  struct Row {
    CutBound l1, l2;
  };
  const auto rows = parallel_map(instances.size(), threads, [&](std::size_t i) {
    const Instance& in = instances[i];
    const Topology t = generate_topology({in.n, in.finite.m, in.finite.l, topology_seed(in.n, in.seed)});
    const ChannelRealization ch(t, p.alpha, phase_seed(in.n, in.seed));
    return Row{bound_l1(t, ch, P), bound_l2(t, ch, P, in.finite.r_bs)};
  });

  if (format == "csv") {
    out << config_line(c);
    for (const auto& w : warnings) out << "# warning: " << w << "\n";
    out << "n,m,l,R_BS,alpha,seed,L1_D1,L1_D2,L1_D3,L1_total,L2_D1,L2_D2,L2_D3,L2_wired,L2_total,min_cut\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& in = instances[i];
      const auto& [l1, l2] = rows[i];
      out << in.n << "," << in.finite.m << "," << in.finite.l << "," << num(in.finite.r_bs) << "," << num(p.alpha)
          << "," << in.seed << "," << num(l1.wireless.d1) << "," << num(l1.wireless.d2) << ","
          << num(l1.wireless.d3) << "," << num(l1.total) << "," << num(l2.wireless.d1) << ","
          << num(l2.wireless.d2) << "," << num(l2.wireless.d3) << "," << num(l2.wired) << "," << num(l2.total)
          << "," << num(std::min(l1.total, l2.total)) << "\n";
    }
  } else {
    json j;
    j["config"] = c;
    j["warnings"] = warnings;
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& in = instances[i];
      j["rows"].push_back({{"n", in.n},
                           {"m", in.finite.m},
                           {"l", in.finite.l},
                           {"R_BS", number_to_json(in.finite.r_bs)},
                           {"alpha", p.alpha},
                           {"seed", in.seed},
                           {"L1", to_json(rows[i].l1)},
                           {"L2", to_json(rows[i].l2)},
                           {"min_cut", number_to_json(std::min(rows[i].l1.total, rows[i].l2.total))}});
    }
    out << j.dump(2) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- entry

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity scaling analyzer and simulator for hybrid networks with rate-limited backhaul", "hybridcap"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output_path;
  unsigned threads = default_threads();
  app.add_option("-o,--output", output_path, "write the result to this file instead of stdout");
  app.add_option("--threads", threads, "worker threads for seed-parallel commands (output does not depend on it)")
      ->check(CLI::PositiveNumber);

  struct Bound {
    const Command* cmd;
    CLI::App* sub;
    std::string config_path;
    std::map<std::string, std::string> values;
  };
  std::vector<Bound> bound;
  bound.reserve(commands().size());
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.description);
    if (!cmd.footer.empty()) sub->footer(cmd.footer);
    bound.push_back({&cmd, sub, {}, {}});
    Bound& b = bound.back();
    sub->add_option("--config", b.config_path, "JSON config, or a CSV previously written by this command");
    for (const auto& p : cmd.params) b.values[p.name];
    for (const auto& p : cmd.params)
      sub->add_option(flag_of(p.name), b.values[p.name], p.help + " (default " + p.fallback.dump() + ")");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }

  for (auto& b : bound) {
    if (!b.sub->parsed()) continue;
    std::ostringstream buffer;
    int code = kOk;
    try {
      std::optional<json> file;
      if (!b.config_path.empty()) file = load_config_file(b.config_path);
      std::map<std::string, std::string> flags;
      for (const auto& p : b.cmd->params)
        if (b.sub->get_option(flag_of(p.name))->count() > 0) flags[p.name] = b.values[p.name];
      const json c = resolve_config(*b.cmd, file, flags);
      try {
        if (b.cmd->name == "exponent") code = cmd_exponent(c, buffer);
        else if (b.cmd->name == "regime-map") code = cmd_regime_map(c, buffer);
        else if (b.cmd->name == "min-backhaul") code = cmd_min_backhaul(c, buffer);
        else if (b.cmd->name == "simulate") code = cmd_simulate(c, buffer, threads);
        else code = cmd_bound(c, buffer, threads);
      } catch (const json::type_error& e) {
        throw ConfigError(std::string("config value has the wrong type: ") + e.what());
      }
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << "\n";
      return kInvalidConfig;
    } catch (const DominanceViolation& e) {
      err << "error: " << e.what() << "\n";
      code = kInvariantViolation;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kRuntimeError;
    }

    if (output_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(output_path, std::ios::binary);
      if (!f) {
        err << "error: cannot write '" << output_path << "'\n";
        return kRuntimeError;
      }
      f << buffer.str();
    }
    return code;
  }
  return kInvalidConfig;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace hybridcap::cli
