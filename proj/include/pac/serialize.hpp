#pragma once

// JSON and CSV renderings. Agent ids are 1-based in every external format.
// Lattice values carry both the decimal rendering and the raw 64-bit word so
// that downstream tools can re-check identities exactly.

#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pac/audit.hpp"
#include "pac/consensus.hpp"
#include "pac/network.hpp"
#include "pac/protocol.hpp"
#include "pac/ufrac.hpp"

namespace pac {

using nlohmann::json;

inline json to_json(UFrac v) { return json{{"value", v.to_real()}, {"raw", v.raw()}}; }

inline json to_json(const std::vector<UFrac>& values) {
  json arr = json::array();
  for (auto v : values) arr.push_back(to_json(v));
  return arr;
}

inline json edge_json(const Edge& e) { return json::array({e.u + 1, e.v + 1}); }

inline json to_json(const Network& g) {
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(edge_json(e));
  return json{{"n", g.size()}, {"edges", edges}};
}

// {"n": int, "edges": [[i,j],...]} with 1-based ids.
inline Network network_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("network: expected an object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw std::invalid_argument("network.n: expected a positive integer");
  }
  const auto n = j["n"].get<std::size_t>();
  std::vector<std::pair<AgentId, AgentId>> pairs;
  if (j.contains("edges")) {
    const auto& edges = j["edges"];
    if (!edges.is_array()) throw std::invalid_argument("network.edges: expected an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      std::string where = "network.edges[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw std::invalid_argument(where + ": expected a pair of integer ids");
      }
      auto a = e[0].get<long long>(), b = e[1].get<long long>();
      if (a < 1 || b < 1 || a > static_cast<long long>(n) || b > static_cast<long long>(n)) {
        throw std::invalid_argument(where + ": ids must lie in 1.." + std::to_string(n));
      }
      pairs.emplace_back(static_cast<AgentId>(a - 1), static_cast<AgentId>(b - 1));
    }
  }
  try {
    return Network(n, pairs);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("network.edges: ") + e.what());
  }
}

inline json to_json(const MessageEvent& ev) {
  json j{{"src", ev.src + 1}, {"dst", ev.dst + 1}, {"kind", to_string(ev.kind)},
         {"sent", ev.sent}, {"delivered", ev.delivered}};
  if (const auto* u = std::get_if<UFrac>(&ev.payload)) {
    j["payload"] = to_json(*u);
  } else if (const auto* a = std::get_if<AgentId>(&ev.payload)) {
    j["payload"] = json{{"originator", *a + 1}};
  } else {
    j["payload"] = json{{"value", std::get<double>(ev.payload)}};
  }
  return j;
}

inline json to_json(const Transcript& t, std::size_t max_log_events = std::numeric_limits<std::size_t>::max()) {
  json shares = json::array();
  for (const auto& s : t.shares)
    shares.push_back(json{{"from", s.from + 1}, {"to", s.to + 1}, {"r", to_json(s.value)}});
  json noise = json::array();
  for (const auto& b : t.edge_noise) noise.push_back(json{{"edge", edge_json(b.edge)}, {"b", to_json(b.noise)}});
  json inputs = json::array();
  for (std::size_t i = 0; i < t.inputs.size(); ++i)
    inputs.push_back(json{{"real", t.inputs_real[i]}, {"quantized", to_json(t.inputs[i])}});
  json log = json::array();
  std::size_t dropped = t.log_dropped;
  for (std::size_t k = 0; k < t.log.size(); ++k) {
    if (k < max_log_events) {
      log.push_back(to_json(t.log[k]));
    } else {
      ++dropped;
    }
  }
  return json{{"network", to_json(t.network)},
              {"inputs", inputs},
              {"shares", shares},
              {"edge_noise", noise},
              {"masks", to_json(t.masks)},
              {"effective_inputs", to_json(t.effective)},
              {"mask_sum", to_json(sum_frac(t.masks))},
              {"effective_sum", to_json(sum_frac(t.effective))},
              {"outputs", t.outputs},
              {"effective_inputs_public", t.effective_inputs_public},
              {"log", log},
              {"log_truncated", dropped}};
}

inline json to_json(const AuditReport& r) {
  json tests = json::array();
  for (const auto& t : r.tests) {
    tests.push_back(json{{"name", t.name},
                         {"statistic", t.statistic},
                         {"p_value", t.p_value},
                         {"p_adjusted", t.p_adjusted},
                         {"rejected", t.rejected}});
  }
  json j{{"kind", r.kind},
         {"trials", r.trials},
         {"alpha", r.alpha},
         {"tests", tests},
         {"constraint_checks", json{{"passed", r.constraint_passes}, {"failed", r.constraint_failures}}},
         {"verdict", to_string(r.verdict)},
         {"notes", r.notes}};
  if (r.tv) {
    j["total_variation"] = json{{"statistic", r.tv->statistic},
                                {"estimate", r.tv->estimate},
                                {"ci_low", r.tv->ci_low},
                                {"ci_high", r.tv->ci_high},
                                {"null_q95", r.tv->null_q95}};
  } else {
    j["total_variation"] = nullptr;
  }
  return j;
}

// test_name,statistic,p_value,verdict; the last row is the overall verdict.
inline std::string to_csv(const AuditReport& r) {
  std::ostringstream out;
  out << "test_name,statistic,p_value,verdict\n";
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  };
  for (const auto& t : r.tests) {
    out << quote(r.kind + "/" + t.name) << ',' << format_real(t.statistic) << ','
        << format_real(t.p_adjusted) << ',' << (t.rejected ? "reject" : "accept") << '\n';
  }
  out << quote(r.kind + "/constraints") << ',' << r.constraint_failures << ','
      << (r.constraint_failures ? "0" : "1") << ',' << (r.constraint_failures ? "reject" : "accept") << '\n';
  out << quote(r.kind + "/overall") << ',' << (r.tv ? format_real(r.tv->estimate) : std::string("")) << ','
      << format_real(r.min_adjusted_p()) << ',' << to_string(r.verdict) << '\n';
  return out.str();
}

}  // namespace pac
