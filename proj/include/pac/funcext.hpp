#pragma once

// Private evaluation of h(s_1..s_n) = g(sum_i h_i(s_i)): the protocol is run
// on the per-agent values h_i(s_i) instead of the raw inputs. Injectivity of
// each h_i is the caller's declaration and is not checked; the range
// [0, 1/n) is checked on every evaluation.

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pac/consensus.hpp"
#include "pac/protocol.hpp"

namespace pac {

using RealMap = std::function<double(double)>;

struct FunctionSpec {
  // One map per agent, or a single map shared by every agent.
  std::vector<RealMap> h;
  RealMap g;

  const RealMap& h_for(AgentId i) const { return h.size() == 1 ? h.front() : h.at(i); }
};

// Catalog of named maps for scenario files. `n` is the agent count.
//   h: identity; affine {scale, offset}; square-scaled {scale} -> scale * x^2 / n
//   g: identity; scale {factor}; affine {g_scale, g_offset}
inline RealMap catalog_h(const std::string& name, const std::map<std::string, double>& params, std::size_t n) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "identity") return [](double x) { return x; };
  if (name == "affine") {
    double a = get("scale", 1.0), b = get("offset", 0.0);
    return [a, b](double x) { return a * x + b; };
  }
  if (name == "square-scaled") {
    double a = get("scale", 1.0);
    double dn = static_cast<double>(n);
    return [a, dn](double x) { return a * x * x / dn; };
  }
  throw std::invalid_argument("function.h: unknown catalog entry '" + name + "'");
}

inline RealMap catalog_g(const std::string& name, const std::map<std::string, double>& params) {
  auto get = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (name == "identity") return [](double y) { return y; };
  if (name == "scale") {
    double k = get("factor", 1.0);
    return [k](double y) { return k * y; };
  }
  if (name == "affine") {
    double a = get("g_scale", 1.0), b = get("g_offset", 0.0);
    return [a, b](double y) { return a * y + b; };
  }
  throw std::invalid_argument("function.g: unknown catalog entry '" + name + "'");
}

// h_i(s_i) for every agent, rejecting values outside [0, 1/n).
inline std::vector<double> evaluate_h(const FunctionSpec& spec, std::span<const double> inputs) {
  if (spec.h.empty() || (spec.h.size() != 1 && spec.h.size() != inputs.size())) {
    throw std::invalid_argument("function spec needs one h shared or one per agent");
  }
  const std::size_t n = inputs.size();
  std::vector<double> values;
  values.reserve(n);
  for (AgentId i = 0; i < n; ++i) {
    double v = spec.h_for(i)(inputs[i]);
    if (!std::isfinite(v) || v < 0.0 || v * static_cast<double>(n) >= 1.0 ||
        !below_inverse(UFrac::from_real(v), n)) {
      throw InputRangeError(i, "h_" + std::to_string(i + 1) + "(s_" + std::to_string(i + 1) + ") = " +
                                   format_real(v) + " is not in [0, 1/" + std::to_string(n) + ")");
    }
    values.push_back(v);
  }
  return values;
}

struct FunctionResult {
  std::vector<double> values;  // per agent, g(frac(sum of masked h values))
  Transcript transcript;       // phase 1 over h_i(s_i); effective inputs are the masked h~_i
  OutputAssembly assembly;
};

inline FunctionResult run_private_function(const Network& net, std::span<const double> inputs,
                                           const FunctionSpec& spec, const ConsensusBackend& backend,
                                           const Phase1Options& opt) {
  if (!spec.g) throw std::invalid_argument("function spec has no outer map g");
  if (inputs.size() != net.size()) {
    throw std::invalid_argument("expected " + std::to_string(net.size()) + " inputs, got " +
                                std::to_string(inputs.size()));
  }
  auto hv = evaluate_h(spec, inputs);
  FunctionResult res;
  res.transcript = run_phase1(net, std::span<const double>(hv), opt);
  auto p2 = run_phase2(res.transcript, backend, opt.seed);
  res.assembly = p2.assembly;
  // Raw estimates approximate sum_i h~_i; g applies to their fractional part.
  for (double est : res.assembly.raw_estimates) {
    double f = frac_real(est);
    if (f >= 1.0) f = 0.0;
    res.values.push_back(spec.g(f));
  }
  return res;
}

}  // namespace pac
