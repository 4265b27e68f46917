#pragma once

// Phase 1 of the private average consensus protocol: every agent sends an
// independent uniform share r_ij to each neighbour, derives its mask
// a_i = sum_j (r_ji - r_ij) mod 1 and effective input s~_i = s_i + a_i mod 1,
// then floods a completion announcement. An agent is Done once it has heard
// all n announcements (n is known to every agent).
//
// Agents are message-driven state machines. They never touch each other's
// state; the engine below only moves their outgoing messages through a
// deterministic event queue.

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pac/network.hpp"
#include "pac/rng.hpp"
#include "pac/scheduler.hpp"
#include "pac/ufrac.hpp"

namespace pac {

enum class Phase { Exchanging, Flooding, Done };

enum class MessageKind { RandomShare, CompletionFlood, ConsensusMsg };

inline const char* to_string(MessageKind k) {
  switch (k) {
    case MessageKind::RandomShare: return "random_share";
    case MessageKind::CompletionFlood: return "completion_flood";
    case MessageKind::ConsensusMsg: return "consensus";
  }
  return "?";
}

inline const char* to_string(Phase p) {
  switch (p) {
    case Phase::Exchanging: return "exchanging";
    case Phase::Flooding: return "flooding";
    case Phase::Done: return "done";
  }
  return "?";
}

// Share value, flood originator, or a real consensus value.
using Payload = std::variant<UFrac, AgentId, double>;

struct MessageEvent {
  AgentId src = 0;
  AgentId dst = 0;
  MessageKind kind = MessageKind::RandomShare;
  Payload payload;
  Ticks sent = 0;
  Ticks delivered = 0;

  bool operator==(const MessageEvent&) const = default;
};

struct ShareRecord {
  AgentId from = 0;
  AgentId to = 0;
  UFrac value;
  bool operator==(const ShareRecord&) const = default;
};

// b_e = r_ji - r_ij mod 1 for e = {i,j}, i < j.
struct EdgeNoise {
  Edge edge;
  UFrac noise;
  bool operator==(const EdgeNoise&) const = default;
};

// Mask from the shares an agent sent and received, pairwise by neighbour.
inline UFrac mask_of(std::span<const UFrac> sent, std::span<const UFrac> received) {
  if (sent.size() != received.size()) throw std::invalid_argument("mask_of: share count mismatch");
  UFrac mask;
  for (std::size_t k = 0; k < sent.size(); ++k) mask += received[k] - sent[k];
  return mask;
}

class InputRangeError : public std::invalid_argument {
 public:
  InputRangeError(AgentId agent, const std::string& what)
      : std::invalid_argument(what), agent_(agent) {}
  AgentId agent() const { return agent_; }

 private:
  AgentId agent_;
};

// Chooses r_ij. The default draws from the sending agent's own stream.
using ShareSource = std::function<UFrac(AgentId from, AgentId to, Engine& agent_rng)>;

inline ShareSource fixed_shares(std::vector<ShareRecord> table) {
  return [table = std::move(table)](AgentId from, AgentId to, Engine&) {
    for (const auto& r : table)
      if (r.from == from && r.to == to) return r.value;
    throw std::invalid_argument("fixed share table has no entry for " + std::to_string(from + 1) +
                                "->" + std::to_string(to + 1));
  };
}

struct Outgoing {
  AgentId dst;
  MessageKind kind;
  Payload payload;
};

class Agent {
 public:
  Agent(AgentId id, UFrac input, std::span<const AgentId> neighbors, std::size_t agent_count,
        Engine rng)
      : id_(id),
        input_(input),
        neighbors_(neighbors.begin(), neighbors.end()),
        agent_count_(agent_count),
        rng_(rng),
        sent_(neighbors.size()),
        received_(neighbors.size()),
        heard_(agent_count, false) {}

  AgentId id() const { return id_; }
  UFrac input() const { return input_; }
  Phase phase() const { return phase_; }
  std::span<const AgentId> neighbors() const { return neighbors_; }
  std::span<const UFrac> sent() const { return sent_; }
  const std::vector<std::optional<UFrac>>& received() const { return received_; }
  std::optional<UFrac> mask() const { return mask_; }
  std::optional<UFrac> effective() const { return effective_; }
  std::size_t announcements_heard() const { return heard_count_; }

  // Sends every share immediately, without waiting for the neighbour's.
  void start(const ShareSource& source, std::vector<Outgoing>& out) {
    for (std::size_t k = 0; k < neighbors_.size(); ++k) {
      sent_[k] = source ? source(id_, neighbors_[k], rng_) : UFrac::uniform(rng_);
      out.push_back({neighbors_[k], MessageKind::RandomShare, sent_[k]});
    }
    started_ = true;
    try_complete(out);
  }

  void on_message(AgentId from, MessageKind kind, const Payload& payload,
                  std::vector<Outgoing>& out) {
    switch (kind) {
      case MessageKind::RandomShare: {
        auto k = slot(from);
        if (received_[k]) throw std::logic_error("duplicate share");
        received_[k] = std::get<UFrac>(payload);
        ++received_count_;
        try_complete(out);
        break;
      }
      case MessageKind::CompletionFlood: {
        AgentId origin = std::get<AgentId>(payload);
        if (!heard_.at(origin)) {
          heard_[origin] = true;
          ++heard_count_;
          for (AgentId nb : neighbors_)
            if (nb != from) out.push_back({nb, MessageKind::CompletionFlood, origin});
        }
        maybe_done();
        break;
      }
      case MessageKind::ConsensusMsg:
        throw std::logic_error("consensus message during phase 1");
    }
  }

 private:
  std::size_t slot(AgentId nb) const {
    auto it = std::lower_bound(neighbors_.begin(), neighbors_.end(), nb);
    if (it == neighbors_.end() || *it != nb) throw std::logic_error("message from non-neighbour");
    return static_cast<std::size_t>(it - neighbors_.begin());
  }

  void try_complete(std::vector<Outgoing>& out) {
    if (phase_ != Phase::Exchanging || !started_ || received_count_ != neighbors_.size()) return;
    std::vector<UFrac> got(neighbors_.size());
    for (std::size_t k = 0; k < got.size(); ++k) got[k] = *received_[k];
    mask_ = mask_of(sent_, got);
    effective_ = input_ + *mask_;
    phase_ = Phase::Flooding;
    if (!heard_[id_]) {
      heard_[id_] = true;
      ++heard_count_;
    }
    for (AgentId nb : neighbors_) out.push_back({nb, MessageKind::CompletionFlood, id_});
    maybe_done();
  }

  void maybe_done() {
    if (phase_ == Phase::Flooding && heard_count_ == agent_count_) phase_ = Phase::Done;
  }

  AgentId id_;
  UFrac input_;
  std::vector<AgentId> neighbors_;
  std::size_t agent_count_;
  Engine rng_;
  bool started_ = false;
  std::vector<UFrac> sent_;
  std::vector<std::optional<UFrac>> received_;
  std::size_t received_count_ = 0;
  std::optional<UFrac> mask_;
  std::optional<UFrac> effective_;
  Phase phase_ = Phase::Exchanging;
  std::vector<bool> heard_;
  std::size_t heard_count_ = 0;
};

// Full record of one execution.
struct Transcript {
  Network network;
  std::vector<double> inputs_real;
  std::vector<UFrac> inputs;
  std::vector<ShareRecord> shares;   // sorted by (from, to)
  std::vector<EdgeNoise> edge_noise; // network edge order
  std::vector<UFrac> masks;
  std::vector<UFrac> effective;
  std::vector<MessageEvent> log;
  std::size_t log_dropped = 0;
  std::vector<Ticks> done_at;

  // Phase 2; filled by the consensus layer.
  std::vector<double> outputs;
  bool effective_inputs_public = false;

  UFrac share(AgentId from, AgentId to) const {
    auto it = std::lower_bound(shares.begin(), shares.end(), std::pair{from, to},
                               [](const ShareRecord& r, const std::pair<AgentId, AgentId>& key) {
                                 return std::pair{r.from, r.to} < key;
                               });
    if (it == shares.end() || it->from != from || it->to != to) throw std::out_of_range("no such share");
    return it->value;
  }

  void record(MessageEvent ev, std::size_t limit) {
    if (log.size() < limit) {
      log.push_back(std::move(ev));
    } else {
      ++log_dropped;
    }
  }

  bool operator==(const Transcript&) const = default;
};

struct Phase1Options {
  std::uint64_t seed = 0;            // per-agent share streams derive from this
  std::uint64_t scheduler_seed = 0;  // message latencies only
  LatencyModel latency = LatencyModel::Random;
  bool record_log = true;
  std::size_t max_log_events = std::numeric_limits<std::size_t>::max();
  ShareSource shares;  // empty: uniform draws from the agent streams
};

inline void validate_phase1(const Network& net, std::span<const UFrac> inputs) {
  const std::size_t n = net.size();
  if (n == 0) throw std::invalid_argument("network has no agents");
  if (inputs.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " inputs, got " +
                                std::to_string(inputs.size()));
  }
  if (!is_connected(net)) throw std::invalid_argument("network is not connected");
  for (AgentId i = 0; i < n; ++i) {
    if (!below_inverse(inputs[i], n)) {
      throw InputRangeError(i, "input of agent " + std::to_string(i + 1) + " is not in [0, 1/" +
                                   std::to_string(n) + ")");
    }
  }
}

inline Transcript run_phase1(const Network& net, std::span<const UFrac> inputs,
                             const Phase1Options& opt = {}) {
  validate_phase1(net, inputs);
  const std::size_t n = net.size();

  std::vector<Agent> agents;
  agents.reserve(n);
  for (AgentId i = 0; i < n; ++i)
    agents.emplace_back(i, inputs[i], net.neighbors(i), n, make_engine(opt.seed, Stream::Agent, i));

  struct Pending {
    bool start;
    AgentId src;
    AgentId dst;
    MessageKind kind;
    Payload payload;
    Ticks sent;
  };
  EventQueue<Pending> queue(opt.latency, opt.scheduler_seed);
  for (AgentId i = 0; i < n; ++i) queue.push(0, Pending{true, i, i, MessageKind::RandomShare, UFrac{}, 0});

  Transcript t;
  t.network = net;
  t.inputs.assign(inputs.begin(), inputs.end());
  for (auto v : inputs) t.inputs_real.push_back(v.to_real());
  t.done_at.assign(n, 0);

  std::vector<Outgoing> out;
  while (!queue.empty()) {
    auto entry = queue.pop();
    const Pending& ev = entry.event;
    Agent& agent = agents[ev.dst];
    out.clear();
    if (ev.start) {
      agent.start(opt.shares, out);
    } else {
      if (opt.record_log)
        t.record(MessageEvent{ev.src, ev.dst, ev.kind, ev.payload, ev.sent, entry.time},
                 opt.max_log_events);
      Phase before = agent.phase();
      agent.on_message(ev.src, ev.kind, ev.payload, out);
      if (before != Phase::Done && agent.phase() == Phase::Done) t.done_at[ev.dst] = entry.time;
    }
    if (ev.start && agent.phase() == Phase::Done) t.done_at[ev.dst] = entry.time;
    for (auto& o : out)
      queue.send(Pending{false, ev.dst, o.dst, o.kind, std::move(o.payload), queue.now()});
  }

  for (const auto& a : agents) {
    if (a.phase() != Phase::Done) throw std::logic_error("phase 1 ended with an agent not Done");
    t.masks.push_back(*a.mask());
    t.effective.push_back(*a.effective());
    for (std::size_t k = 0; k < a.neighbors().size(); ++k)
      t.shares.push_back(ShareRecord{a.id(), a.neighbors()[k], a.sent()[k]});
  }
  // Agents are visited in id order and neighbours are sorted, so shares are
  // already sorted by (from, to).
  for (const auto& e : net.edges()) t.edge_noise.push_back({e, t.share(e.v, e.u) - t.share(e.u, e.v)});
  return t;
}

// Range-checked quantization of real inputs; each must lie in [0, 1/n).
inline std::vector<UFrac> quantize_inputs(std::span<const double> inputs) {
  const std::size_t n = inputs.size();
  std::vector<UFrac> q;
  q.reserve(n);
  for (AgentId i = 0; i < n; ++i) {
    double x = inputs[i];
    if (!std::isfinite(x) || x < 0.0 || x >= 1.0) {
      throw InputRangeError(i, "input of agent " + std::to_string(i + 1) + " is not in [0, 1/" +
                                   std::to_string(n) + ")");
    }
    q.push_back(UFrac::from_real(x));
  }
  return q;
}

inline Transcript run_phase1(const Network& net, std::span<const double> inputs,
                             const Phase1Options& opt = {}) {
  if (inputs.size() != net.size()) {
    throw std::invalid_argument("expected " + std::to_string(net.size()) + " inputs, got " +
                                std::to_string(inputs.size()));
  }
  auto q = quantize_inputs(inputs);
  Transcript t = run_phase1(net, std::span<const UFrac>(q), opt);
  t.inputs_real.assign(inputs.begin(), inputs.end());
  return t;
}

// x in [0, bound) -> x / (n * bound) in [0, 1/n).
inline std::vector<double> prescale(std::span<const double> raw, double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) throw std::invalid_argument("prescale: bound must be positive");
  const double n = static_cast<double>(raw.size());
  std::vector<double> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i] >= 0.0) || !(raw[i] < bound)) {
      throw InputRangeError(i, "raw input of agent " + std::to_string(i + 1) + " is not in [0, bound)");
    }
    out.push_back(raw[i] / (n * bound));
  }
  return out;
}

}  // namespace pac
