#pragma once

// Simple undirected communication graphs and the structural analyses the
// privacy guarantees depend on: incidence matrix and its rank, connected
// components, vertex cuts, vertex connectivity, honest/adversary edge split.
//
// Agent ids are 0-based internally. External formats are 1-based and are
// normalized by the serialization layer.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pac {

using AgentId = std::size_t;

struct Edge {
  AgentId u = 0;  // u < v
  AgentId v = 0;

  constexpr auto operator<=>(const Edge&) const = default;
  constexpr bool touches(AgentId x) const { return u == x || v == x; }
};

class Network {
 public:
  Network() = default;

  // Throws std::invalid_argument on out-of-range ids, self-loops or
  // duplicate edges. Endpoint order within a pair is irrelevant.
  Network(std::size_t n, std::span<const std::pair<AgentId, AgentId>> pairs) : n_(n), adj_(n) {
    edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) {
        throw std::invalid_argument("edge {" + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                    "} references an agent outside 1.." + std::to_string(n));
      }
      if (a == b) throw std::invalid_argument("self-loop on agent " + std::to_string(a + 1));
      edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end()) {
      throw std::invalid_argument("duplicate edge {" + std::to_string(dup->u + 1) + "," +
                                  std::to_string(dup->v + 1) + "}");
    }
    for (const auto& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  Network(std::size_t n, std::initializer_list<std::pair<AgentId, AgentId>> pairs)
      : Network(n, std::span<const std::pair<AgentId, AgentId>>(pairs.begin(), pairs.size())) {}

  Network(std::size_t n, const std::vector<std::pair<AgentId, AgentId>>& pairs)
      : Network(n, std::span<const std::pair<AgentId, AgentId>>(pairs)) {}

  std::size_t size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  // Sorted lexicographically; this is the column order of the incidence matrix.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const AgentId> neighbors(AgentId i) const { return adj_.at(i); }
  std::size_t degree(AgentId i) const { return adj_.at(i).size(); }

  bool has_edge(AgentId a, AgentId b) const {
    if (a >= n_ || b >= n_) return false;
    return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
  }

  // Column index of edge {a,b}; throws if absent.
  std::size_t edge_index(AgentId a, AgentId b) const {
    Edge key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) throw std::out_of_range("no such edge");
    return static_cast<std::size_t>(it - edges_.begin());
  }

  bool operator==(const Network& o) const { return n_ == o.n_ && edges_ == o.edges_; }

  static Network complete(std::size_t n) {
    std::vector<std::pair<AgentId, AgentId>> p;
    for (AgentId i = 0; i < n; ++i)
      for (AgentId j = i + 1; j < n; ++j) p.emplace_back(i, j);
    return Network(n, p);
  }
  static Network path(std::size_t n) {
    std::vector<std::pair<AgentId, AgentId>> p;
    for (AgentId i = 0; i + 1 < n; ++i) p.emplace_back(i, i + 1);
    return Network(n, p);
  }
  static Network cycle(std::size_t n) {
    std::vector<std::pair<AgentId, AgentId>> p;
    for (AgentId i = 0; i + 1 < n; ++i) p.emplace_back(i, i + 1);
    if (n > 2) p.emplace_back(n - 1, 0);
    return Network(n, p);
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<AgentId>> adj_;
};

// |V| x |E| matrix over {-1,0,1}. Column e = {i,j}, i<j has +1 at row i and
// -1 at row j.
class IncidenceMatrix {
 public:
  explicit IncidenceMatrix(const Network& g)
      : rows_(g.size()), cols_(g.edge_count()), data_(rows_ * cols_, 0) {
    for (std::size_t e = 0; e < cols_; ++e) {
      const auto& edge = g.edges()[e];
      data_[edge.u * cols_ + e] = 1;
      data_[edge.v * cols_ + e] = -1;
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int at(std::size_t row, std::size_t col) const { return data_.at(row * cols_ + col); }

  // 1^T * M, which is identically zero for an incidence matrix.
  std::vector<int> column_sums() const {
    std::vector<int> out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[c] += at(r, c);
    return out;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int8_t> data_;
};

// Rank over the rationals by fraction-free (Bareiss) elimination. Incidence
// matrices are totally unimodular, so intermediate values stay in {-1,0,1}
// up to sign; int64 is ample.
inline std::size_t integer_rank(std::vector<std::vector<std::int64_t>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  std::int64_t prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

inline std::size_t incidence_rank(const Network& g) {
  IncidenceMatrix inc(g);
  std::vector<std::vector<std::int64_t>> m(inc.rows(), std::vector<std::int64_t>(inc.cols()));
  for (std::size_t r = 0; r < inc.rows(); ++r)
    for (std::size_t c = 0; c < inc.cols(); ++c) m[r][c] = inc.at(r, c);
  return integer_rank(std::move(m));
}

// Components of the subgraph induced by the vertices with removed[v] false.
// Each component is sorted; components are ordered by smallest member.
inline std::vector<std::vector<AgentId>> components_without(const Network& g,
                                                            const std::vector<bool>& removed) {
  const std::size_t n = g.size();
  std::vector<std::vector<AgentId>> out;
  std::vector<bool> seen(n, false);
  std::vector<AgentId> stack;
  for (AgentId s = 0; s < n; ++s) {
    if (removed[s] || seen[s]) continue;
    std::vector<AgentId> comp;
    stack.push_back(s);
    seen[s] = true;
    while (!stack.empty()) {
      AgentId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (AgentId w : g.neighbors(v)) {
        if (!removed[w] && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline std::vector<std::vector<AgentId>> connected_components(const Network& g) {
  return components_without(g, std::vector<bool>(g.size(), false));
}

inline bool is_connected(const Network& g) { return connected_components(g).size() <= 1; }

inline std::vector<bool> membership(std::size_t n, std::span<const AgentId> ids) {
  std::vector<bool> in(n, false);
  for (AgentId id : ids) {
    if (id >= n) throw std::invalid_argument("agent id " + std::to_string(id + 1) + " out of range");
    in[id] = true;
  }
  return in;
}

// True iff removing `cut` leaves at least two components. A single
// remaining vertex counts as connected.
inline bool is_vertex_cut(const Network& g, std::span<const AgentId> cut) {
  auto removed = membership(g.size(), cut);
  if (std::count(removed.begin(), removed.end(), true) == static_cast<long>(g.size())) {
    throw std::invalid_argument("is_vertex_cut: the cut may not contain every vertex");
  }
  return components_without(g, removed).size() >= 2;
}

inline bool is_vertex_cut(const Network& g, std::initializer_list<AgentId> cut) {
  return is_vertex_cut(g, std::span<const AgentId>(cut.begin(), cut.size()));
}

inline constexpr std::size_t kMaxConnectivityAgents = 20;

// Size of the smallest vertex cut, by exhaustive enumeration of subsets in
// increasing size (exponential; n <= 20). Complete graphs have no vertex cut
// and report n-1. Unconnected graphs report 0.
inline std::size_t connectivity(const Network& g) {
  const std::size_t n = g.size();
  if (n < 2) throw std::invalid_argument("connectivity: need at least two agents");
  if (n > kMaxConnectivityAgents) {
    throw std::invalid_argument("connectivity: exhaustive search limited to " +
                                std::to_string(kMaxConnectivityAgents) + " agents");
  }
  if (!is_connected(g)) return 0;
  const std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::size_t k = 1; k + 2 <= n; ++k) {
    // Gosper's hack over all k-subsets.
    std::uint32_t set = (std::uint32_t{1} << k) - 1;
    while (set <= full) {
      std::vector<bool> removed(n);
      for (std::size_t b = 0; b < n; ++b) removed[b] = (set >> b) & 1U;
      if (components_without(g, removed).size() >= 2) return k;
      std::uint32_t c = set & (0 - set);
      std::uint32_t r = set + c;
      set = (((r ^ set) >> 2) / c) | r;
    }
  }
  return n - 1;
}

// The graph left to the honest agents once the adversaries and every edge
// incident to them are removed.
struct HonestSplit {
  Network graph;                 // over local ids 0..|H|-1
  std::vector<AgentId> honest;   // local id -> global id, ascending
  std::vector<AgentId> adversaries;  // ascending
  std::vector<Edge> honest_edges;    // E_H, global ids
  std::vector<Edge> adversary_edges; // E_C, global ids

  // Components of the honest graph, in global ids.
  std::vector<std::vector<AgentId>> components() const {
    auto local = connected_components(graph);
    for (auto& comp : local)
      for (auto& v : comp) v = honest[v];
    return local;
  }
};

inline HonestSplit honest_subgraph(const Network& g, std::span<const AgentId> adversaries) {
  auto adv = membership(g.size(), adversaries);
  HonestSplit out;
  std::vector<std::size_t> local(g.size(), 0);
  for (AgentId v = 0; v < g.size(); ++v) {
    if (adv[v]) {
      out.adversaries.push_back(v);
    } else {
      local[v] = out.honest.size();
      out.honest.push_back(v);
    }
  }
  if (out.honest.empty()) throw std::invalid_argument("honest_subgraph: no honest agents remain");
  std::vector<std::pair<AgentId, AgentId>> local_edges;
  for (const auto& e : g.edges()) {
    if (adv[e.u] || adv[e.v]) {
      out.adversary_edges.push_back(e);
    } else {
      out.honest_edges.push_back(e);
      local_edges.emplace_back(local[e.u], local[e.v]);
    }
  }
  out.graph = Network(out.honest.size(), local_edges);
  return out;
}

inline HonestSplit honest_subgraph(const Network& g, std::initializer_list<AgentId> adversaries) {
  return honest_subgraph(g, std::span<const AgentId>(adversaries.begin(), adversaries.size()));
}

}  // namespace pac
