#pragma once

// Phase 2: any correct average consensus protocol run on the values n * s~_i.
// Their average is sum_i s~_i, whose fractional part is sum_i s_i.
//
// Three backends are provided. ExactFloodSum is the worst case for privacy
// (every agent learns every effective input) and is exact on the lattice.
// SyncLinear and RandomGossip run in double precision.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pac/network.hpp"
#include "pac/protocol.hpp"
#include "pac/rng.hpp"
#include "pac/ufrac.hpp"

namespace pac {

enum class BackendKind { ExactFloodSum, SyncLinear, RandomGossip };

inline const char* to_string(BackendKind k) {
  switch (k) {
    case BackendKind::ExactFloodSum: return "exact";
    case BackendKind::SyncLinear: return "sync";
    case BackendKind::RandomGossip: return "gossip";
  }
  return "?";
}

inline BackendKind parse_backend(const std::string& name) {
  if (name == "exact") return BackendKind::ExactFloodSum;
  if (name == "sync") return BackendKind::SyncLinear;
  if (name == "gossip") return BackendKind::RandomGossip;
  throw std::invalid_argument("unknown backend '" + name + "' (expected exact|sync|gossip)");
}

struct ConsensusBackend {
  BackendKind kind = BackendKind::ExactFloodSum;
  double epsilon = 1e-8;
  std::size_t max_rounds = 1'000'000;

  // Declared accuracy of the per-agent estimate of the average.
  double tolerance() const { return kind == BackendKind::ExactFloodSum ? 0.0 : epsilon; }
};

struct ConsensusResult {
  std::vector<double> estimates;
  std::size_t rounds = 0;
  bool converged = false;
  std::size_t messages = 0;
};

inline double spread(std::span<const double> v) {
  if (v.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

// Appends consensus traffic to a transcript's message log, if one is given.
struct MessageRecorder {
  Transcript* transcript = nullptr;
  std::size_t limit = std::numeric_limits<std::size_t>::max();
  Ticks base = 0;

  void operator()(AgentId src, AgentId dst, Payload payload, Ticks step) const {
    if (!transcript) return;
    transcript->record(MessageEvent{src, dst, MessageKind::ConsensusMsg, std::move(payload),
                                    base + step, base + step + 1},
                       limit);
  }
};

struct NoObserver {
  void operator()(std::span<const double>) const {}
};

inline void require_connected(const Network& net, std::size_t values) {
  if (values != net.size()) throw std::invalid_argument("consensus: one value per agent required");
  if (!is_connected(net)) throw std::invalid_argument("consensus: network is not connected");
}

struct ExactSumResult {
  std::vector<UFrac> sums;  // per agent
  std::size_t rounds = 0;
  std::size_t messages = 0;
};

// Synchronous flooding of (originator, value) pairs until every agent holds
// every value, then a local exact sum.
inline ExactSumResult exact_flood_sum(const Network& net, std::span<const UFrac> values,
                                      const MessageRecorder& record = {}) {
  require_connected(net, values.size());
  const std::size_t n = net.size();
  std::vector<std::vector<std::optional<UFrac>>> known(n, std::vector<std::optional<UFrac>>(n));
  std::vector<std::vector<AgentId>> fresh(n);
  for (AgentId i = 0; i < n; ++i) {
    known[i][i] = values[i];
    fresh[i].push_back(i);
  }
  ExactSumResult res;
  bool any = true;
  while (any) {
    any = false;
    std::vector<std::vector<AgentId>> next(n);
    for (AgentId i = 0; i < n; ++i) {
      for (AgentId origin : fresh[i]) {
        for (AgentId nb : net.neighbors(i)) {
          ++res.messages;
          record(i, nb, *known[i][origin], res.rounds);
          if (!known[nb][origin]) {
            known[nb][origin] = known[i][origin];
            next[nb].push_back(origin);
            any = true;
          }
        }
      }
    }
    fresh = std::move(next);
    ++res.rounds;
  }
  for (AgentId i = 0; i < n; ++i) {
    UFrac s;
    for (const auto& v : known[i]) s += v.value();
    res.sums.push_back(s);
  }
  return res;
}

// x_i <- x_i + sum_j w_ij (x_j - x_i), Metropolis weights
// w_ij = 1 / (1 + max(d_i, d_j)). The weight matrix is doubly stochastic, so
// the average is preserved.
template <class Observer = NoObserver>
ConsensusResult sync_linear_consensus(const Network& net, std::span<const double> values,
                                      double epsilon, std::size_t max_rounds,
                                      Observer&& observe = {}, const MessageRecorder& record = {}) {
  require_connected(net, values.size());
  if (!(epsilon > 0.0)) throw std::invalid_argument("consensus: epsilon must be positive");
  const std::size_t n = net.size();
  std::vector<double> x(values.begin(), values.end());
  std::vector<double> next(n);
  ConsensusResult res;
  while (spread(x) > epsilon && res.rounds < max_rounds) {
    for (AgentId i = 0; i < n; ++i) {
      double acc = x[i];
      for (AgentId j : net.neighbors(i)) {
        double w = 1.0 / (1.0 + static_cast<double>(std::max(net.degree(i), net.degree(j))));
        acc += w * (x[j] - x[i]);
        ++res.messages;
        record(j, i, x[j], res.rounds);
      }
      next[i] = acc;
    }
    x.swap(next);
    ++res.rounds;
    observe(std::span<const double>(x));
  }
  res.converged = spread(x) <= epsilon;
  res.estimates = std::move(x);
  return res;
}

// Randomized pairwise gossip: a uniformly random edge's endpoints both
// replace their values by the midpoint.
template <class Observer = NoObserver>
ConsensusResult random_gossip(const Network& net, std::span<const double> values, double epsilon,
                              std::size_t max_iters, std::uint64_t seed, Observer&& observe = {},
                              const MessageRecorder& record = {}) {
  require_connected(net, values.size());
  if (!(epsilon > 0.0)) throw std::invalid_argument("consensus: epsilon must be positive");
  std::vector<double> x(values.begin(), values.end());
  ConsensusResult res;
  Engine rng(seed);
  const auto& edges = net.edges();
  while (spread(x) > epsilon && res.rounds < max_iters) {
    const Edge& e = edges[uniform_below(rng, edges.size())];
    record(e.u, e.v, x[e.u], res.rounds);
    record(e.v, e.u, x[e.v], res.rounds);
    res.messages += 2;
    double mid = 0.5 * (x[e.u] + x[e.v]);
    x[e.u] = mid;
    x[e.v] = mid;
    ++res.rounds;
    observe(std::span<const double>(x));
  }
  res.converged = spread(x) <= epsilon;
  res.estimates = std::move(x);
  return res;
}

struct OutputAssembly {
  std::vector<double> outputs;        // per agent, estimate of (1/n) sum_i s_i
  std::vector<double> raw_estimates;  // per agent, estimate of sum_i s~_i
  bool converged = true;
  // Some estimate lies within the backend tolerance of an integer, where the
  // fractional part is discontinuous.
  bool near_boundary = false;
};

inline double frac_real(double x) { return x - std::floor(x); }

inline OutputAssembly assemble_output(const ConsensusResult& result, std::size_t n,
                                      double tolerance) {
  OutputAssembly out;
  out.converged = result.converged;
  out.raw_estimates = result.estimates;
  for (double est : result.estimates) {
    double f = frac_real(est);
    if (f >= 1.0) f = 0.0;
    if (std::min(f, 1.0 - f) <= tolerance) out.near_boundary = true;
    out.outputs.push_back(f / static_cast<double>(n));
  }
  return out;
}

inline OutputAssembly assemble_output(const ExactSumResult& result, std::size_t n) {
  OutputAssembly out;
  for (UFrac s : result.sums) {
    out.raw_estimates.push_back(s.to_real());
    out.outputs.push_back(s.to_real() / static_cast<double>(n));
  }
  return out;
}

// n * s~_i in double precision: the phase-2 inputs of the real backends.
inline std::vector<double> scaled_effective(std::span<const UFrac> effective) {
  std::vector<double> v;
  v.reserve(effective.size());
  const double n = static_cast<double>(effective.size());
  for (UFrac s : effective) v.push_back(n * s.to_real());
  return v;
}

struct Phase2Result {
  OutputAssembly assembly;
  std::optional<ExactSumResult> exact;
  std::optional<ConsensusResult> approximate;
};

// Runs phase 2 on a completed phase-1 transcript and stores the per-agent
// outputs in it. `seed` drives the gossip edge choices only.
inline Phase2Result run_phase2(Transcript& t, const ConsensusBackend& backend, std::uint64_t seed,
                               bool record_log = false,
                               std::size_t max_log_events = std::numeric_limits<std::size_t>::max()) {
  const std::size_t n = t.network.size();
  Ticks base = 0;
  for (auto d : t.done_at) base = std::max(base, d);
  MessageRecorder record{record_log ? &t : nullptr, max_log_events, base};
  Phase2Result res;
  switch (backend.kind) {
    case BackendKind::ExactFloodSum: {
      res.exact = exact_flood_sum(t.network, t.effective, record);
      res.assembly = assemble_output(*res.exact, n);
      t.effective_inputs_public = true;
      break;
    }
    case BackendKind::SyncLinear: {
      auto values = scaled_effective(t.effective);
      res.approximate =
          sync_linear_consensus(t.network, values, backend.epsilon, backend.max_rounds, NoObserver{}, record);
      res.assembly = assemble_output(*res.approximate, n, backend.epsilon);
      break;
    }
    case BackendKind::RandomGossip: {
      auto values = scaled_effective(t.effective);
      res.approximate = random_gossip(t.network, values, backend.epsilon, backend.max_rounds,
                                      derive_seed(seed, Stream::Gossip), NoObserver{}, record);
      res.assembly = assemble_output(*res.approximate, n, backend.epsilon);
      break;
    }
  }
  t.outputs = res.assembly.outputs;
  return res;
}

}  // namespace pac
