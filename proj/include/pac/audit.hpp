#pragma once

// Adversary views and the statistical audit of the privacy claims.
//
// The guarantees are statements about distributions: masks are uniform
// subject to summing to zero mod 1, effective inputs are uniform subject to
// summing to the input total, and when the colluding set C is not a vertex
// cut the view of C depends on honest inputs only through their sum. None of
// this can be proven by sampling, so each check here is a battery of
// falsifiable consequences at a declared significance level, Bonferroni
// corrected, alongside exact lattice identities checked in every trial.

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pac/network.hpp"
#include "pac/parallel.hpp"
#include "pac/protocol.hpp"
#include "pac/rng.hpp"
#include "pac/stats.hpp"
#include "pac/ufrac.hpp"

namespace pac {

// What a colluding set C sees, assuming phase 2 reveals every effective
// input: its own inputs, the edge noises on edges touching C, and the honest
// effective inputs.
struct AdversaryView {
  std::vector<AgentId> adversaries;
  std::vector<UFrac> adversary_inputs;
  std::vector<Edge> edges;  // E_C, network edge order
  std::vector<UFrac> edge_noise;
  std::vector<AgentId> honest;
  std::vector<UFrac> honest_effective;

  // a_i for i in C from the visible edge noises alone.
  std::vector<UFrac> adversary_masks() const {
    std::vector<UFrac> out;
    for (AgentId c : adversaries) {
      UFrac m;
      for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].u == c) m += edge_noise[k];
        if (edges[k].v == c) m -= edge_noise[k];
      }
      out.push_back(m);
    }
    return out;
  }

  std::vector<UFrac> adversary_effective() const {
    auto masks = adversary_masks();
    for (std::size_t k = 0; k < masks.size(); ++k) masks[k] += adversary_inputs[k];
    return masks;
  }

  // Sum of masks over a set of honest agents, computed from the view: edges
  // inside the set cancel, so only edges into C contribute.
  UFrac mask_sum(std::span<const AgentId> group) const {
    UFrac m;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (std::find(group.begin(), group.end(), edges[k].u) != group.end()) m += edge_noise[k];
      if (std::find(group.begin(), group.end(), edges[k].v) != group.end()) m -= edge_noise[k];
    }
    return m;
  }

  // Scalar coordinates: honest effective inputs, then edge noises.
  std::vector<UFrac> coordinates() const {
    std::vector<UFrac> c = honest_effective;
    c.insert(c.end(), edge_noise.begin(), edge_noise.end());
    return c;
  }

  std::vector<std::string> coordinate_names() const {
    std::vector<std::string> names;
    for (AgentId h : honest) names.push_back("s~" + std::to_string(h + 1));
    for (const auto& e : edges) names.push_back("b{" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) + "}");
    return names;
  }
};

inline AdversaryView extract_view(const Transcript& t, std::span<const AgentId> adversaries) {
  const std::size_t n = t.network.size();
  auto in_c = membership(n, adversaries);
  if (static_cast<std::size_t>(std::count(in_c.begin(), in_c.end(), true)) == n) {
    throw std::invalid_argument("extract_view: adversary set may not contain every agent");
  }
  AdversaryView v;
  for (AgentId i = 0; i < n; ++i) {
    if (in_c[i]) {
      v.adversaries.push_back(i);
      v.adversary_inputs.push_back(t.inputs[i]);
    } else {
      v.honest.push_back(i);
      v.honest_effective.push_back(t.effective[i]);
    }
  }
  for (const auto& en : t.edge_noise) {
    if (in_c[en.edge.u] || in_c[en.edge.v]) {
      v.edges.push_back(en.edge);
      v.edge_noise.push_back(en.noise);
    }
  }
  return v;
}

inline AdversaryView extract_view(const Transcript& t, std::initializer_list<AgentId> adversaries) {
  return extract_view(t, std::span<const AgentId>(adversaries.begin(), adversaries.size()));
}

enum class Verdict { ConsistentWithPrivate, Distinguishable, Inconclusive, ConstraintViolated };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ConsistentWithPrivate: return "consistent-with-private";
    case Verdict::Distinguishable: return "distinguishable";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::ConstraintViolated: return "constraint-violated";
  }
  return "?";
}

struct TestOutcome {
  std::string name;
  double statistic = 0.0;
  double p_value = 1.0;
  double p_adjusted = 1.0;  // Bonferroni over every test in the report
  bool rejected = false;
};

struct TvEstimate {
  std::string statistic;  // the binned statistic with the largest TV
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  // 95th percentile of the largest binned TV under random relabelling of
  // the pooled samples, i.e. what sampling noise alone produces.
  double null_q95 = 0.0;
};

struct AuditReport {
  std::string kind;
  std::size_t trials = 0;
  double alpha = 0.01;
  std::vector<TestOutcome> tests;
  std::size_t constraint_passes = 0;
  std::size_t constraint_failures = 0;
  std::optional<TvEstimate> tv;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> notes;

  bool any_rejected() const {
    return std::any_of(tests.begin(), tests.end(), [](const TestOutcome& t) { return t.rejected; });
  }
  double min_adjusted_p() const {
    double p = 1.0;
    for (const auto& t : tests) p = std::min(p, t.p_adjusted);
    return p;
  }
};

struct AuditConfig {
  double alpha = 0.01;
  std::size_t bins = 8;             // per dimension
  std::size_t max_joint_dims = 3;   // dimensions in the binned joint test
  std::size_t max_projections = 64; // integer 1-D projections beyond the marginals
  std::size_t bootstrap = 200;
  std::size_t permutations = 200;
};

class VertexCutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PairConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Rows are trials, columns are coordinates.
using Samples = std::vector<std::vector<UFrac>>;

inline std::size_t bin_of(UFrac x, std::size_t bins) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(x.raw()) * bins) >> 64);
}

struct Projection {
  std::vector<int> coeff;
  std::string name;
};

inline std::string projection_name(const std::vector<int>& c, const std::vector<std::string>& names) {
  std::string s = "proj[";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    s += c[k] > 0 ? "+" : "-";
    s += names[k];
  }
  return s + "]";
}

// Nonzero vectors in {-1,0,1}^d with first nonzero entry +1 and at least two
// nonzero entries. All of them when few enough, otherwise a seeded sample.
inline std::vector<Projection> projections(const std::vector<std::string>& names, std::size_t limit,
                                           std::uint64_t seed) {
  const std::size_t d = names.size();
  std::vector<Projection> out;
  if (d < 2 || limit == 0) return out;
  auto canonical = [](std::vector<int>& c) {
    for (int& x : c) {
      if (x == 0) continue;
      if (x < 0)
        for (int& y : c) y = -y;
      return;
    }
  };
  auto support = [](const std::vector<int>& c) {
    return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](int x) { return x != 0; }));
  };
  double total = (std::pow(3.0, static_cast<double>(d)) - 1.0) / 2.0 - static_cast<double>(d);
  if (total <= static_cast<double>(limit)) {
    std::vector<int> c(d, -1);
    std::set<std::vector<int>> seen;
    for (;;) {
      std::vector<int> cc = c;
      canonical(cc);
      if (support(cc) >= 2 && seen.insert(cc).second) out.push_back({cc, projection_name(cc, names)});
      std::size_t k = 0;
      while (k < d && c[k] == 1) c[k++] = -1;
      if (k == d) break;
      ++c[k];
    }
    return out;
  }
  Engine rng = make_engine(seed, Stream::Projection);
  std::set<std::vector<int>> seen;
  while (out.size() < limit) {
    std::vector<int> c(d);
    for (auto& x : c) x = static_cast<int>(uniform_below(rng, 3)) - 1;
    canonical(c);
    if (support(c) >= 2 && seen.insert(c).second) out.push_back({c, projection_name(c, names)});
  }
  return out;
}

inline UFrac project(const std::vector<UFrac>& row, const std::vector<int>& c) {
  UFrac acc;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] > 0) acc += row[k];
    if (c[k] < 0) acc -= row[k];
  }
  return acc;
}

inline std::vector<double> column(const Samples& s, std::size_t k) {
  std::vector<double> v;
  v.reserve(s.size());
  for (const auto& row : s) v.push_back(row[k].to_real());
  return v;
}

inline std::vector<double> projected(const Samples& s, const std::vector<int>& c) {
  std::vector<double> v;
  v.reserve(s.size());
  for (const auto& row : s) v.push_back(project(row, c).to_real());
  return v;
}

inline std::size_t joint_label(const std::vector<UFrac>& row, std::size_t dims, std::size_t bins) {
  std::size_t label = 0;
  for (std::size_t k = dims; k-- > 0;) label = label * bins + bin_of(row[k], bins);
  return label;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

inline std::string joint_name(const std::vector<std::string>& names, std::size_t dims) {
  std::string s = "joint[";
  for (std::size_t k = 0; k < dims; ++k) s += (k ? "," : "") + names[k];
  return s + "]";
}

inline void finalize_tests(AuditReport& r) {
  for (auto& t : r.tests) {
    t.p_adjusted = stats::bonferroni(t.p_value, r.tests.size());
    t.rejected = t.p_adjusted < r.alpha;
  }
}

// Uniformity of the rows of `s` on [0,1)^d.
inline void one_sample_battery(AuditReport& r, const Samples& s, const std::vector<std::string>& names,
                               const AuditConfig& cfg, std::uint64_t seed, const std::string& prefix = "") {
  const std::size_t d = names.size();
  if (d == 0 || s.empty()) return;
  for (std::size_t k = 0; k < d; ++k) {
    auto st = stats::ks_uniform(column(s, k));
    r.tests.push_back({prefix + "ks:" + names[k], st.statistic, st.p_value});
  }
  for (const auto& p : projections(names, cfg.max_projections, seed)) {
    auto st = stats::ks_uniform(projected(s, p.coeff));
    r.tests.push_back({prefix + "ks:" + p.name, st.statistic, st.p_value});
  }
  const std::size_t dims = std::min(d, cfg.max_joint_dims);
  std::vector<std::uint64_t> counts(ipow(cfg.bins, dims), 0);
  for (const auto& row : s) ++counts[joint_label(row, dims, cfg.bins)];
  auto st = stats::chi_squared_uniform(counts);
  r.tests.push_back({prefix + "chi2:" + joint_name(names, dims), st.statistic, st.p_value});
}

struct BinnedStatistic {
  std::string name;
  std::size_t cells;
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
};

inline std::vector<std::uint64_t> histogram(std::span<const std::uint32_t> labels, std::size_t cells) {
  std::vector<std::uint64_t> h(cells, 0);
  for (auto l : labels) ++h[l];
  return h;
}

inline double binned_tv(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b, std::size_t cells) {
  auto ha = histogram(a, cells);
  auto hb = histogram(b, cells);
  return stats::total_variation(ha, hb);
}

// Largest binned TV with a bootstrap interval and a permutation null.
inline TvEstimate estimate_tv(const std::vector<BinnedStatistic>& stats_list, const AuditConfig& cfg,
                              std::uint64_t seed) {
  TvEstimate tv;
  std::size_t best = 0;
  for (std::size_t k = 0; k < stats_list.size(); ++k) {
    double v = binned_tv(stats_list[k].a, stats_list[k].b, stats_list[k].cells);
    if (k == 0 || v > tv.estimate) {
      tv.estimate = v;
      best = k;
    }
  }
  const auto& top = stats_list[best];
  tv.statistic = top.name;

  Engine rng = make_engine(seed, Stream::Resample);
  std::vector<double> boot;
  std::vector<std::uint32_t> ra(top.a.size()), rb(top.b.size());
  for (std::size_t rep = 0; rep < cfg.bootstrap; ++rep) {
    for (auto& x : ra) x = top.a[uniform_below(rng, top.a.size())];
    for (auto& x : rb) x = top.b[uniform_below(rng, top.b.size())];
    boot.push_back(binned_tv(ra, rb, top.cells));
  }
  if (!boot.empty()) {
    tv.ci_low = stats::quantile(boot, 0.025);
    tv.ci_high = stats::quantile(boot, 0.975);
  } else {
    tv.ci_low = tv.ci_high = tv.estimate;
  }

  // Permutation null: shuffle trial membership (the same permutation for
  // every statistic, so dependence between statistics is preserved).
  const std::size_t na = top.a.size();
  const std::size_t total = na + top.b.size();
  std::vector<std::size_t> perm(total);
  std::vector<double> null_max;
  for (std::size_t rep = 0; rep < cfg.permutations; ++rep) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = total; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
    double mx = 0.0;
    for (const auto& st : stats_list) {
      std::vector<std::uint64_t> ha(st.cells, 0), hb(st.cells, 0);
      for (std::size_t i = 0; i < total; ++i) {
        std::size_t src = perm[i];
        std::uint32_t label = src < na ? st.a[src] : st.b[src - na];
        ++(i < na ? ha : hb)[label];
      }
      mx = std::max(mx, stats::total_variation(ha, hb));
    }
    null_max.push_back(mx);
  }
  tv.null_q95 = null_max.empty() ? 0.0 : stats::quantile(null_max, 0.95);
  return tv;
}

// Same-distribution test between the rows of `a` and `b`.
inline void two_sample_battery(AuditReport& r, const Samples& a, const Samples& b,
                               const std::vector<std::string>& names, const AuditConfig& cfg,
                               std::uint64_t seed) {
  const std::size_t d = names.size();
  if (d == 0) return;
  std::vector<BinnedStatistic> binned;
  auto labels = [&](const Samples& s, auto&& fn) {
    std::vector<std::uint32_t> out;
    out.reserve(s.size());
    for (const auto& row : s) out.push_back(static_cast<std::uint32_t>(fn(row)));
    return out;
  };
  for (std::size_t k = 0; k < d; ++k) {
    auto st = stats::ks_two_sample(column(a, k), column(b, k));
    r.tests.push_back({"ks2:" + names[k], st.statistic, st.p_value});
    auto f = [&](const std::vector<UFrac>& row) { return bin_of(row[k], cfg.bins); };
    binned.push_back({names[k], cfg.bins, labels(a, f), labels(b, f)});
  }
  for (const auto& p : projections(names, cfg.max_projections, seed)) {
    auto st = stats::ks_two_sample(projected(a, p.coeff), projected(b, p.coeff));
    r.tests.push_back({"ks2:" + p.name, st.statistic, st.p_value});
    auto f = [&](const std::vector<UFrac>& row) { return bin_of(project(row, p.coeff), cfg.bins); };
    binned.push_back({p.name, cfg.bins, labels(a, f), labels(b, f)});
  }
  const std::size_t dims = std::min(d, cfg.max_joint_dims);
  const std::size_t cells = ipow(cfg.bins, dims);
  auto f = [&](const std::vector<UFrac>& row) { return joint_label(row, dims, cfg.bins); };
  BinnedStatistic joint{joint_name(names, dims), cells, labels(a, f), labels(b, f)};
  auto st = stats::chi_squared_homogeneity(histogram(joint.a, cells), histogram(joint.b, cells));
  r.tests.push_back({"chi2:" + joint.name, st.statistic, st.p_value});
  binned.insert(binned.begin(), std::move(joint));

  finalize_tests(r);
  if (r.any_rejected()) {
    r.tv = estimate_tv(binned, cfg, seed);
  } else {
    // Point estimate only; the interval is not needed for a non-rejection.
    AuditConfig quick = cfg;
    quick.bootstrap = 0;
    quick.permutations = 0;
    r.tv = estimate_tv(binned, quick, seed);
  }
}

inline void decide(AuditReport& r) {
  finalize_tests(r);
  if (r.constraint_failures > 0) {
    r.verdict = Verdict::ConstraintViolated;
  } else if (!r.any_rejected()) {
    r.verdict = Verdict::ConsistentWithPrivate;
  } else if (r.tv && r.tv->ci_low > r.tv->null_q95) {
    r.verdict = Verdict::Distinguishable;
  } else {
    r.verdict = Verdict::Inconclusive;
  }
}

inline void check(AuditReport& r, bool ok) { ok ? ++r.constraint_passes : ++r.constraint_failures; }

}  // namespace detail

// T independent phase-1 executions; trial k's streams derive from
// (master seed, k) only.
inline std::vector<Transcript> simulate_trials(const Network& net, std::span<const UFrac> inputs,
                                               std::size_t trials, std::uint64_t seed) {
  validate_phase1(net, inputs);
  std::vector<Transcript> out(trials);
  parallel_for(trials, [&](std::size_t k) {
    Phase1Options opt;
    opt.seed = derive_seed(seed, Stream::Trial, k);
    opt.scheduler_seed = derive_seed(opt.seed, Stream::Scheduler);
    opt.record_log = false;
    out[k] = run_phase1(net, inputs, opt);
  });
  return out;
}

inline AuditReport test_mask_uniformity(const Network& net, std::size_t trials, std::uint64_t seed,
                                        const AuditConfig& cfg = {}) {
  if (!is_connected(net)) throw std::invalid_argument("mask uniformity needs a connected network");
  const std::size_t n = net.size();
  std::vector<UFrac> zeros(n);
  auto runs = simulate_trials(net, zeros, trials, seed);
  AuditReport r;
  r.kind = "mask-uniformity";
  r.trials = trials;
  r.alpha = cfg.alpha;
  detail::Samples s;
  std::vector<std::string> names;
  for (AgentId i = 0; i + 1 < n; ++i) names.push_back("a" + std::to_string(i + 1));
  for (const auto& t : runs) {
    detail::check(r, sum_frac(t.masks) == UFrac{});
    if (n == 1) detail::check(r, t.masks[0] == UFrac{});
    s.emplace_back(t.masks.begin(), t.masks.end() - 1);
  }
  detail::one_sample_battery(r, s, names, cfg, seed);
  detail::decide(r);
  return r;
}

inline AuditReport test_effective_uniformity(const Network& net, std::span<const UFrac> inputs,
                                             std::size_t trials, std::uint64_t seed,
                                             const AuditConfig& cfg = {},
                                             std::span<const AgentId> adversaries = {}) {
  const std::size_t n = net.size();
  auto runs = simulate_trials(net, inputs, trials, seed);
  const UFrac total = sum_frac(inputs);
  AuditReport r;
  r.kind = "effective-uniformity";
  r.trials = trials;
  r.alpha = cfg.alpha;

  detail::Samples s;
  std::vector<std::string> names;
  for (AgentId i = 0; i + 1 < n; ++i) names.push_back("s~" + std::to_string(i + 1));
  for (const auto& t : runs) {
    detail::check(r, sum_frac(t.effective) == total);
    if (n == 1) detail::check(r, t.effective[0] == inputs[0]);
    s.emplace_back(t.effective.begin(), t.effective.end() - 1);
  }
  detail::one_sample_battery(r, s, names, cfg, seed);

  if (!adversaries.empty()) {
    // Conditional form: with C not a vertex cut, all but one honest effective
    // input are uniform and independent of what C sees, and the honest total
    // is pinned by the input total and C's own effective inputs.
    if (is_vertex_cut(net, adversaries)) {
      throw VertexCutError("conditional uniformity requires an adversary set that is not a vertex cut");
    }
    detail::Samples cs;
    std::vector<std::string> cnames;
    for (const auto& t : runs) {
      auto v = extract_view(t, adversaries);
      UFrac honest_sum = sum_frac(v.honest_effective);
      detail::check(r, honest_sum == total - sum_frac(v.adversary_effective()));
      std::vector<UFrac> row(v.honest_effective.begin(), v.honest_effective.end() - 1);
      row.insert(row.end(), v.edge_noise.begin(), v.edge_noise.end());
      cs.push_back(std::move(row));
      if (cnames.empty()) {
        auto all = v.coordinate_names();
        cnames.assign(all.begin(), all.begin() + static_cast<long>(v.honest.size() - 1));
        cnames.insert(cnames.end(), all.begin() + static_cast<long>(v.honest.size()), all.end());
      }
    }
    detail::one_sample_battery(r, cs, cnames, cfg, derive_seed(seed, Stream::Projection, 1), "cond:");
  }
  detail::decide(r);
  return r;
}

inline AuditReport test_effective_uniformity(const Network& net, std::span<const UFrac> inputs,
                                             std::size_t trials, std::uint64_t seed,
                                             const AuditConfig& cfg,
                                             std::initializer_list<AgentId> adversaries) {
  return test_effective_uniformity(net, inputs, trials, seed, cfg,
                                   std::span<const AgentId>(adversaries.begin(), adversaries.size()));
}

// Two input vectors that agree on C and on the honest total.
struct ScenarioPair {
  Network network;
  std::vector<AgentId> adversaries;
  std::vector<UFrac> s;
  std::vector<UFrac> s_prime;
  std::size_t trials = 10'000;
  std::uint64_t seed = 0;

  std::vector<AgentId> honest() const {
    auto in_c = membership(network.size(), adversaries);
    std::vector<AgentId> h;
    for (AgentId i = 0; i < network.size(); ++i)
      if (!in_c[i]) h.push_back(i);
    return h;
  }

  UFrac honest_sum(const std::vector<UFrac>& v) const {
    UFrac acc;
    for (AgentId h : honest()) acc += v[h];
    return acc;
  }

  // Throws PairConstraintError unless s_C = s'_C and the honest sums agree
  // exactly on the lattice.
  void validate() const {
    validate_phase1(network, s);
    validate_phase1(network, s_prime);
    auto h = honest();
    if (h.empty()) throw PairConstraintError("adversary set contains every agent");
    for (AgentId c : adversaries) {
      if (s[c] != s_prime[c]) {
        throw PairConstraintError("inputs_prime: adversary agent " + std::to_string(c + 1) +
                                  " must have the same input in both vectors");
      }
    }
    if (honest_sum(s) != honest_sum(s_prime)) {
      throw PairConstraintError("inputs_prime: honest input sums differ");
    }
  }

  // Moves the last honest entry of s' so the honest sums agree exactly, when
  // they already agree to within `slack` quanta (decimal inputs quantize
  // independently, so equal decimal sums can differ by a few quanta).
  // Returns the adjustment in quanta.
  std::uint64_t snap(std::uint64_t slack) {
    auto h = honest();
    if (h.empty()) return 0;
    UFrac diff = honest_sum(s) - honest_sum(s_prime);
    std::uint64_t dist = lattice_distance(honest_sum(s), honest_sum(s_prime));
    if (dist == 0 || dist > slack) return 0;
    s_prime[h.back()] += diff;
    return dist;
  }
};

namespace detail {

struct PairSamples {
  Samples a;
  Samples b;
  std::vector<std::string> names;
  std::vector<Transcript> runs_a;
  std::vector<Transcript> runs_b;
};

inline PairSamples sample_pair(const ScenarioPair& pair) {
  PairSamples ps;
  ps.runs_a = simulate_trials(pair.network, pair.s, pair.trials, derive_seed(pair.seed, Stream::BatchA));
  ps.runs_b = simulate_trials(pair.network, pair.s_prime, pair.trials, derive_seed(pair.seed, Stream::BatchB));
  for (const auto& t : ps.runs_a) ps.a.push_back(extract_view(t, pair.adversaries).coordinates());
  for (const auto& t : ps.runs_b) ps.b.push_back(extract_view(t, pair.adversaries).coordinates());
  if (!ps.runs_a.empty()) ps.names = extract_view(ps.runs_a.front(), pair.adversaries).coordinate_names();
  return ps;
}

// a_C recomputed from the view must match the transcript.
inline void check_view_reconstruction(AuditReport& r, const Transcript& t, const AdversaryView& v) {
  auto masks = v.adversary_masks();
  bool ok = true;
  for (std::size_t k = 0; k < masks.size(); ++k) ok &= masks[k] == t.masks[v.adversaries[k]];
  check(r, ok);
}

}  // namespace detail

inline AuditReport test_view_indistinguishability(const ScenarioPair& pair, const AuditConfig& cfg = {}) {
  pair.validate();
  if (is_vertex_cut(pair.network, pair.adversaries)) {
    throw VertexCutError("adversary set is a vertex cut; use the leakage test instead");
  }
  auto ps = detail::sample_pair(pair);
  AuditReport r;
  r.kind = "indistinguishability";
  r.trials = pair.trials;
  r.alpha = cfg.alpha;
  for (const auto* runs : {&ps.runs_a, &ps.runs_b}) {
    for (const auto& t : *runs) {
      auto v = extract_view(t, pair.adversaries);
      detail::check_view_reconstruction(r, t, v);
      UFrac all_inputs = sum_frac(t.inputs);
      detail::check(r, sum_frac(v.honest_effective) == all_inputs - sum_frac(v.adversary_effective()));
    }
  }
  detail::two_sample_battery(r, ps.a, ps.b, ps.names, cfg, pair.seed);
  detail::decide(r);
  return r;
}

// When C is a vertex cut, each honest component's input sum is an exact
// function of the view: sum_{i in H_k} s~_i minus the component's mask sum
// (computable from the visible edge noises). Pairs that differ in some
// component sum should therefore be told apart; pairs that agree on every
// component sum should not.
inline AuditReport test_leakage(const ScenarioPair& pair, const AuditConfig& cfg = {}) {
  pair.validate();
  if (!is_vertex_cut(pair.network, pair.adversaries)) {
    throw VertexCutError("adversary set is not a vertex cut; use the indistinguishability test instead");
  }
  auto components = honest_subgraph(pair.network, pair.adversaries).components();
  AuditReport r;
  r.kind = "leakage";
  r.trials = pair.trials;
  r.alpha = cfg.alpha;
  for (const auto& comp : components) {
    UFrac sa, sb;
    for (AgentId i : comp) {
      sa += pair.s[i];
      sb += pair.s_prime[i];
    }
    std::string label = "{";
    for (AgentId i : comp) label += (label.size() > 1 ? "," : "") + std::to_string(i + 1);
    label += "}";
    r.notes.push_back("component " + label + (sa == sb ? ": input sums equal" : ": input sums differ"));
  }

  auto ps = detail::sample_pair(pair);
  for (const auto* runs : {&ps.runs_a, &ps.runs_b}) {
    for (const auto& t : *runs) {
      auto v = extract_view(t, pair.adversaries);
      detail::check_view_reconstruction(r, t, v);
      for (const auto& comp : components) {
        UFrac eff, in, masks;
        for (AgentId i : comp) {
          eff += t.effective[i];
          in += t.inputs[i];
          masks += t.masks[i];
        }
        UFrac visible = v.mask_sum(comp);
        detail::check(r, masks == visible && eff - visible == in);
      }
    }
  }
  detail::two_sample_battery(r, ps.a, ps.b, ps.names, cfg, pair.seed);
  detail::decide(r);
  return r;
}

// Fraction of repetitions in which the indistinguishability battery rejects
// when both input vectors are identical. Should be at most alpha.
inline double calibration_rejection_rate(const Network& net, std::span<const AgentId> adversaries,
                                         std::span<const UFrac> inputs, std::size_t trials,
                                         std::size_t repetitions, std::uint64_t seed,
                                         const AuditConfig& cfg = {}) {
  std::size_t rejected = 0;
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    ScenarioPair pair{net, {adversaries.begin(), adversaries.end()}, {inputs.begin(), inputs.end()},
                      {inputs.begin(), inputs.end()}, trials, derive_seed(seed, Stream::Trial, rep)};
    if (test_view_indistinguishability(pair, cfg).any_rejected()) ++rejected;
  }
  return repetitions ? static_cast<double>(rejected) / static_cast<double>(repetitions) : 0.0;
}

}  // namespace pac
