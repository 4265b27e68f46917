#pragma once

// Scenario files: declarative experiment descriptions, validated in full
// before anything runs, and the dispatcher that executes them.
//
//   {
//     "network":      {"n": 3, "edges": [[1,2],[1,3],[2,3]]},
//     "inputs":       [0.1, 0.2, 0.15]  |  {"bound": q, "raw": [...]},
//     "inputs_prime": [...]                      (indistinguishability, leakage)
//     "adversaries":  [3],
//     "backend":      "exact|sync|gossip", "epsilon": 1e-8, "max_rounds": 1000000,
//     "trials":       10000, "seed": 42, "scheduler_seed": 7,
//     "mode":         "run|mask-uniformity|effective-uniformity|indistinguishability|leakage|funcext",
//     "function":     {"h": "square-scaled", "params": {...}, "g": "identity"},
//     "fixed_shares": [[1,2,0.1], ...]           (r_ij values instead of random draws)
//   }
//
// Input numbers are read as the decimal they are written as ("0.1" is 1/10),
// so that equal decimal sums give equal lattice sums up to rounding slack.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pac/audit.hpp"
#include "pac/consensus.hpp"
#include "pac/funcext.hpp"
#include "pac/network.hpp"
#include "pac/protocol.hpp"
#include "pac/serialize.hpp"

namespace pac {

inline constexpr const char* kVersion = "1.0.0";

enum class Mode { Run, MaskUniformity, EffectiveUniformity, Indistinguishability, Leakage, FuncExt };

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::Run: return "run";
    case Mode::MaskUniformity: return "mask-uniformity";
    case Mode::EffectiveUniformity: return "effective-uniformity";
    case Mode::Indistinguishability: return "indistinguishability";
    case Mode::Leakage: return "leakage";
    case Mode::FuncExt: return "funcext";
  }
  return "?";
}

inline bool is_audit(Mode m) {
  return m == Mode::MaskUniformity || m == Mode::EffectiveUniformity || m == Mode::Indistinguishability ||
         m == Mode::Leakage;
}

// A validation failure, naming the offending field.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct InputVector {
  std::vector<double> real;
  std::vector<UFrac> lattice;
};

struct FunctionConfig {
  std::string h = "identity";
  std::string g = "identity";
  std::map<std::string, double> params;

  FunctionSpec spec(std::size_t n) const { return FunctionSpec{{catalog_h(h, params, n)}, catalog_g(g, params)}; }
};

struct Scenario {
  json source;  // as loaded, after command-line overrides
  Network network;
  InputVector inputs;
  std::optional<InputVector> inputs_prime;
  std::vector<AgentId> adversaries;
  ConsensusBackend backend;
  std::size_t trials = 10'000;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> scheduler_seed;
  Mode mode = Mode::Run;
  std::optional<FunctionConfig> function;
  std::vector<ShareRecord> fixed_shares;
  std::uint64_t snapped_quanta = 0;  // adjustment applied to inputs_prime

  std::uint64_t effective_scheduler_seed() const {
    return scheduler_seed ? *scheduler_seed : derive_seed(seed, Stream::Scheduler);
  }

  ScenarioPair pair() const {
    return ScenarioPair{network, adversaries, inputs.lattice, inputs_prime->lattice, trials, seed};
  }
};

inline Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::Run, Mode::MaskUniformity, Mode::EffectiveUniformity, Mode::Indistinguishability,
                 Mode::Leakage, Mode::FuncExt}) {
    if (s == to_string(m)) return m;
  }
  throw ScenarioError("mode", "unknown mode '" + s + "'");
}

// Shortest decimal that round-trips the double, e.g. 0.1 -> "0.1".
inline std::string shortest_decimal(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::pair<double, UFrac> parse_real(const json& v, const std::string& where) {
  if (v.is_number()) {
    double x = v.get<double>();
    if (!std::isfinite(x)) throw ScenarioError(where, "not a finite number");
    return {x, UFrac::from_decimal(shortest_decimal(x))};
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    try {
      UFrac q = UFrac::from_decimal(s);
      return {std::stod(s), q};
    } catch (const std::exception&) {
      throw ScenarioError(where, "malformed decimal '" + s + "'");
    }
  }
  throw ScenarioError(where, "expected a number or decimal string");
}

// check_range: enforce [0, 1/n) on both the real and the lattice value.
inline InputVector parse_inputs(const json& j, std::size_t n, const std::string& field, bool check_range) {
  InputVector out;
  if (j.is_object()) {
    if (!j.contains("bound") || !j.contains("raw")) throw ScenarioError(field, "expected {\"bound\": q, \"raw\": [...]}");
    if (!j["bound"].is_number()) throw ScenarioError(field + ".bound", "expected a number");
    if (!j["raw"].is_array()) throw ScenarioError(field + ".raw", "expected an array");
    std::vector<double> raw;
    for (std::size_t k = 0; k < j["raw"].size(); ++k)
      raw.push_back(parse_real(j["raw"][k], field + ".raw[" + std::to_string(k) + "]").first);
    if (raw.size() != n) {
      throw ScenarioError(field + ".raw", "expected " + std::to_string(n) + " values, got " + std::to_string(raw.size()));
    }
    try {
      out.real = prescale(raw, j["bound"].get<double>());
    } catch (const InputRangeError& e) {
      throw ScenarioError(field + ".raw[" + std::to_string(e.agent()) + "]", e.what());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(field + ".bound", e.what());
    }
    for (double x : out.real) out.lattice.push_back(UFrac::from_real(x));
  } else if (j.is_array()) {
    if (j.size() != n) {
      throw ScenarioError(field, "expected " + std::to_string(n) + " values, got " + std::to_string(j.size()));
    }
    for (std::size_t k = 0; k < j.size(); ++k) {
      auto [x, q] = parse_real(j[k], field + "[" + std::to_string(k) + "]");
      out.real.push_back(x);
      out.lattice.push_back(q);
    }
  } else {
    throw ScenarioError(field, "expected an array or {\"bound\", \"raw\"} object");
  }
  if (check_range) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!(out.real[k] >= 0.0) || !(out.real[k] < 1.0) || !below_inverse(out.lattice[k], n)) {
        throw ScenarioError(field + "[" + std::to_string(k) + "]",
                            "input of agent " + std::to_string(k + 1) + " is not in [0, 1/" + std::to_string(n) + ")");
      }
    }
  }
  return out;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw ScenarioError(key, "wrong type");
  }
}

}  // namespace detail

inline Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw ScenarioError("scenario", "expected a JSON object");
  Scenario sc;
  sc.source = j;

  if (!j.contains("network")) throw ScenarioError("network", "missing");
  try {
    sc.network = network_from_json(j["network"]);
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    auto colon = msg.find(':');
    throw ScenarioError(colon == std::string::npos ? "network" : msg.substr(0, colon),
                        colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  const std::size_t n = sc.network.size();
  if (!is_connected(sc.network)) throw ScenarioError("network", "graph is not connected");

  if (j.contains("mode")) {
    if (!j["mode"].is_string()) throw ScenarioError("mode", "expected a string");
    sc.mode = parse_mode(j["mode"].get<std::string>());
  }

  const bool funcext = sc.mode == Mode::FuncExt;
  if (j.contains("inputs")) {
    sc.inputs = detail::parse_inputs(j["inputs"], n, "inputs", !funcext);
  } else if (sc.mode == Mode::MaskUniformity) {
    sc.inputs.real.assign(n, 0.0);
    sc.inputs.lattice.assign(n, UFrac{});
  } else {
    throw ScenarioError("inputs", "missing");
  }

  if (j.contains("adversaries")) {
    const auto& a = j["adversaries"];
    if (!a.is_array()) throw ScenarioError("adversaries", "expected an array of agent ids");
    std::vector<bool> seen(n, false);
    for (const auto& v : a) {
      if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > static_cast<long long>(n)) {
        throw ScenarioError("adversaries", "ids must be integers in 1.." + std::to_string(n));
      }
      auto id = static_cast<AgentId>(v.get<long long>() - 1);
      if (seen[id]) throw ScenarioError("adversaries", "duplicate id " + std::to_string(id + 1));
      seen[id] = true;
      sc.adversaries.push_back(id);
    }
    std::sort(sc.adversaries.begin(), sc.adversaries.end());
    if (sc.adversaries.size() == n) throw ScenarioError("adversaries", "at least one agent must be honest");
  }

  if (j.contains("backend")) {
    if (!j["backend"].is_string()) throw ScenarioError("backend", "expected a string");
    try {
      sc.backend.kind = parse_backend(j["backend"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("backend", e.what());
    }
  }
  sc.backend.epsilon = detail::get_or<double>(j, "epsilon", sc.backend.epsilon);
  if (!(sc.backend.epsilon > 0.0)) throw ScenarioError("epsilon", "must be positive");
  auto rounds = detail::get_or<long long>(j, "max_rounds", static_cast<long long>(sc.backend.max_rounds));
  if (rounds < 1) throw ScenarioError("max_rounds", "must be positive");
  sc.backend.max_rounds = static_cast<std::size_t>(rounds);

  auto trials = detail::get_or<long long>(j, "trials", static_cast<long long>(sc.trials));
  if (trials < 1) throw ScenarioError("trials", "must be positive");
  sc.trials = static_cast<std::size_t>(trials);
  auto non_negative = [](const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
  };
  if (j.contains("seed") && !non_negative(j["seed"])) throw ScenarioError("seed", "expected an unsigned integer");
  sc.seed = detail::get_or<std::uint64_t>(j, "seed", 0);
  if (j.contains("scheduler_seed")) {
    if (!non_negative(j["scheduler_seed"])) throw ScenarioError("scheduler_seed", "expected an unsigned integer");
    sc.scheduler_seed = j["scheduler_seed"].get<std::uint64_t>();
  }

  if (j.contains("fixed_shares")) {
    const auto& fs = j["fixed_shares"];
    if (!fs.is_array()) throw ScenarioError("fixed_shares", "expected an array of [i, j, r]");
    for (std::size_t k = 0; k < fs.size(); ++k) {
      std::string where = "fixed_shares[" + std::to_string(k) + "]";
      const auto& e = fs[k];
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw ScenarioError(where, "expected [i, j, r]");
      }
      auto a = e[0].get<long long>(), b = e[1].get<long long>();
      if (a < 1 || b < 1 || a > static_cast<long long>(n) || b > static_cast<long long>(n) ||
          !sc.network.has_edge(static_cast<AgentId>(a - 1), static_cast<AgentId>(b - 1))) {
        throw ScenarioError(where, "(" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
      }
      auto [x, q] = detail::parse_real(e[2], where);
      if (!(x >= 0.0 && x < 1.0)) throw ScenarioError(where, "share must lie in [0,1)");
      sc.fixed_shares.push_back({static_cast<AgentId>(a - 1), static_cast<AgentId>(b - 1), q});
    }
    std::sort(sc.fixed_shares.begin(), sc.fixed_shares.end(),
              [](const ShareRecord& x, const ShareRecord& y) { return std::pair{x.from, x.to} < std::pair{y.from, y.to}; });
    for (std::size_t k = 1; k < sc.fixed_shares.size(); ++k) {
      if (sc.fixed_shares[k].from == sc.fixed_shares[k - 1].from && sc.fixed_shares[k].to == sc.fixed_shares[k - 1].to) {
        throw ScenarioError("fixed_shares", "duplicate entry for " + std::to_string(sc.fixed_shares[k].from + 1) +
                                                "->" + std::to_string(sc.fixed_shares[k].to + 1));
      }
    }
    if (sc.fixed_shares.size() != 2 * sc.network.edge_count()) {
      throw ScenarioError("fixed_shares", "need one value per direction of every edge (" +
                                              std::to_string(2 * sc.network.edge_count()) + ")");
    }
  }

  if (funcext) {
    if (!j.contains("function") || !j["function"].is_object()) throw ScenarioError("function", "missing");
    const auto& f = j["function"];
    FunctionConfig fc;
    fc.h = detail::get_or<std::string>(f, "h", fc.h);
    fc.g = detail::get_or<std::string>(f, "g", fc.g);
    if (f.contains("params")) {
      if (!f["params"].is_object()) throw ScenarioError("function.params", "expected an object");
      for (auto it = f["params"].begin(); it != f["params"].end(); ++it) {
        if (!it.value().is_number()) throw ScenarioError("function.params." + it.key(), "expected a number");
        fc.params[it.key()] = it.value().get<double>();
      }
    }
    try {
      evaluate_h(fc.spec(n), sc.inputs.real);
    } catch (const InputRangeError& e) {
      throw ScenarioError("inputs[" + std::to_string(e.agent()) + "]", e.what());
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("function", e.what());
    }
    sc.function = fc;
  }

  const bool pair_mode = sc.mode == Mode::Indistinguishability || sc.mode == Mode::Leakage;
  if (pair_mode) {
    if (!j.contains("inputs_prime")) throw ScenarioError("inputs_prime", "missing (required by mode " + std::string(to_string(sc.mode)) + ")");
    sc.inputs_prime = detail::parse_inputs(j["inputs_prime"], n, "inputs_prime", true);
    ScenarioPair p = sc.pair();
    sc.snapped_quanta = p.snap(n - sc.adversaries.size());
    sc.inputs_prime->lattice = p.s_prime;
    try {
      p.validate();
    } catch (const PairConstraintError& e) {
      std::string msg = e.what();
      throw ScenarioError("inputs_prime", msg.substr(msg.find(':') + 2));
    } catch (const InputRangeError& e) {
      throw ScenarioError("inputs_prime[" + std::to_string(e.agent()) + "]", e.what());
    }
    bool cut = is_vertex_cut(sc.network, sc.adversaries);
    if (sc.mode == Mode::Indistinguishability && cut) {
      throw ScenarioError("adversaries", "set is a vertex cut; use mode \"leakage\"");
    }
    if (sc.mode == Mode::Leakage && !cut) {
      throw ScenarioError("adversaries", "set is not a vertex cut; use mode \"indistinguishability\"");
    }
  }
  return sc;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario", "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario", std::string("parse error: ") + e.what());
  }
}

inline Scenario load_scenario(const std::string& path) { return scenario_from_json(read_json_file(path)); }

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string scenario_hash(const Scenario& sc) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(sc.source.dump())));
  return buf;
}

struct RunOptions {
  bool emit_transcript = false;
  std::size_t max_log_events = std::numeric_limits<std::size_t>::max();
  AuditConfig audit;
  bool timestamp = true;
};

struct RunOutput {
  Mode mode = Mode::Run;
  std::vector<double> outputs;
  std::vector<double> raw_estimates;
  std::optional<UFrac> exact_sum;
  bool converged = true;
  bool near_boundary = false;
  std::optional<Transcript> transcript;
  std::optional<AuditReport> audit;
  json provenance;
};

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kDistinguishable = 3, kUnconverged = 4 };

inline int exit_code(const RunOutput& out) {
  if (out.audit && out.audit->verdict == Verdict::Distinguishable) return kDistinguishable;
  if (out.audit && out.audit->verdict == Verdict::ConstraintViolated) return kFailure;
  if (!out.converged) return kUnconverged;
  return kOk;
}

inline Phase1Options phase1_options(const Scenario& sc, const RunOptions& opt) {
  Phase1Options p;
  p.seed = sc.seed;
  p.scheduler_seed = sc.effective_scheduler_seed();
  p.record_log = opt.emit_transcript;
  p.max_log_events = opt.max_log_events;
  if (!sc.fixed_shares.empty()) p.shares = fixed_shares(sc.fixed_shares);
  return p;
}

inline RunOutput run(const Scenario& sc, const RunOptions& opt = {}) {
  RunOutput out;
  out.mode = sc.mode;
  out.provenance = json{{"tool", "pac"},
                        {"version", kVersion},
                        {"seed", sc.seed},
                        {"scheduler_seed", sc.effective_scheduler_seed()},
                        {"scenario_hash", scenario_hash(sc)}};
  if (sc.snapped_quanta) out.provenance["inputs_prime_snapped_quanta"] = sc.snapped_quanta;
  if (opt.timestamp) {
    auto now = std::chrono::system_clock::now();
    out.provenance["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  }

  switch (sc.mode) {
    case Mode::Run: {
      auto p1 = phase1_options(sc, opt);
      Transcript t = run_phase1(sc.network, sc.inputs.lattice, p1);
      t.inputs_real = sc.inputs.real;
      auto p2 = run_phase2(t, sc.backend, sc.seed, opt.emit_transcript, opt.max_log_events);
      out.outputs = p2.assembly.outputs;
      out.raw_estimates = p2.assembly.raw_estimates;
      out.converged = p2.assembly.converged;
      out.near_boundary = p2.assembly.near_boundary;
      if (p2.exact) out.exact_sum = p2.exact->sums.front();
      out.transcript = std::move(t);
      break;
    }
    case Mode::FuncExt: {
      auto p1 = phase1_options(sc, opt);
      auto res = run_private_function(sc.network, sc.inputs.real, sc.function->spec(sc.network.size()),
                                      sc.backend, p1);
      out.outputs = res.values;
      out.raw_estimates = res.assembly.raw_estimates;
      out.converged = res.assembly.converged;
      out.near_boundary = res.assembly.near_boundary;
      out.transcript = std::move(res.transcript);
      break;
    }
    case Mode::MaskUniformity:
      out.audit = test_mask_uniformity(sc.network, sc.trials, sc.seed, opt.audit);
      break;
    case Mode::EffectiveUniformity: {
      std::vector<AgentId> cond;
      if (!sc.adversaries.empty() && !is_vertex_cut(sc.network, sc.adversaries)) cond = sc.adversaries;
      out.audit = test_effective_uniformity(sc.network, sc.inputs.lattice, sc.trials, sc.seed, opt.audit, cond);
      if (!sc.adversaries.empty() && cond.empty())
        out.audit->notes.push_back("adversary set is a vertex cut; conditional tests skipped");
      break;
    }
    case Mode::Indistinguishability:
      out.audit = test_view_indistinguishability(sc.pair(), opt.audit);
      break;
    case Mode::Leakage:
      out.audit = test_leakage(sc.pair(), opt.audit);
      break;
  }
  return out;
}

inline json to_json(const RunOutput& out, const RunOptions& opt = {}) {
  json j{{"mode", to_string(out.mode)}, {"provenance", out.provenance}};
  if (out.mode == Mode::Run || out.mode == Mode::FuncExt) {
    j["outputs"] = out.outputs;
    j["raw_estimates"] = out.raw_estimates;
    j["converged"] = out.converged;
    j["near_boundary"] = out.near_boundary;
    if (out.exact_sum) j["exact_sum"] = to_json(*out.exact_sum);
    if (out.transcript) {
      j["effective_inputs"] = to_json(out.transcript->effective);
      if (opt.emit_transcript) j["transcript"] = to_json(*out.transcript, opt.max_log_events);
    }
  }
  if (out.audit) j["audit"] = to_json(*out.audit);
  return j;
}

inline std::string to_csv(const RunOutput& out) {
  if (out.audit) return to_csv(*out.audit);
  std::ostringstream s;
  s << "agent,output,raw_estimate\n";
  for (std::size_t i = 0; i < out.outputs.size(); ++i)
    s << i + 1 << ',' << format_real(out.outputs[i]) << ',' << format_real(out.raw_estimates[i]) << '\n';
  return s.str();
}

// Human-readable walkthrough of one execution: shares, edge noises, masks,
// effective inputs, sums and outputs.
inline std::string explain(const Scenario& sc) {
  Scenario base = sc;
  if (base.mode != Mode::Run) base.mode = Mode::Run;
  RunOptions opt;
  opt.timestamp = false;
  auto out = run(base, opt);
  const Transcript& t = *out.transcript;
  std::ostringstream s;
  auto val = [](UFrac v) { return format_real(v.to_real()) + "  [raw " + std::to_string(v.raw()) + "]"; };
  const std::size_t n = t.network.size();
  s << "network: " << n << " agents, " << t.network.edge_count() << " edges\n";
  s << "inputs:\n";
  for (AgentId i = 0; i < n; ++i) s << "  s" << i + 1 << " = " << val(t.inputs[i]) << '\n';
  s << "shares r_ij:\n";
  for (const auto& r : t.shares) s << "  r" << r.from + 1 << r.to + 1 << " = " << val(r.value) << '\n';
  s << "edge noise b_e = r_ji - r_ij (i<j):\n";
  for (const auto& b : t.edge_noise) s << "  b{" << b.edge.u + 1 << "," << b.edge.v + 1 << "} = " << val(b.noise) << '\n';
  s << "masks a_i = sum_j (r_ji - r_ij):\n";
  for (AgentId i = 0; i < n; ++i) s << "  a" << i + 1 << " = " << val(t.masks[i]) << '\n';
  s << "  sum of masks = " << val(sum_frac(t.masks)) << '\n';
  s << "effective inputs s~_i = s_i + a_i:\n";
  for (AgentId i = 0; i < n; ++i) s << "  s~" << i + 1 << " = " << val(t.effective[i]) << '\n';
  s << "  sum of effective inputs = " << val(sum_frac(t.effective)) << '\n';
  s << "  sum of inputs           = " << val(sum_frac(t.inputs)) << '\n';
  s << "phase 2 (" << to_string(sc.backend.kind) << "):\n";
  for (AgentId i = 0; i < n; ++i)
    s << "  agent " << i + 1 << " output = " << format_real(out.outputs[i]) << '\n';
  if (!sc.adversaries.empty()) {
    auto v = extract_view(t, sc.adversaries);
    auto split = honest_subgraph(t.network, sc.adversaries);
    s << "adversary view (C = {";
    for (std::size_t k = 0; k < v.adversaries.size(); ++k) s << (k ? "," : "") << v.adversaries[k] + 1;
    s << "}):\n";
    for (std::size_t k = 0; k < v.edges.size(); ++k)
      s << "  b{" << v.edges[k].u + 1 << "," << v.edges[k].v + 1 << "} = " << val(v.edge_noise[k]) << '\n';
    for (std::size_t k = 0; k < v.honest.size(); ++k)
      s << "  s~" << v.honest[k] + 1 << " = " << val(v.honest_effective[k]) << '\n';
    s << "  C is " << (is_vertex_cut(t.network, sc.adversaries) ? "" : "not ") << "a vertex cut; honest components: "
      << split.components().size() << '\n';
  }
  return s.str();
}

}  // namespace pac
