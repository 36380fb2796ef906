#include "tigress/error_analysis.hpp"

#include "tigress/errors.hpp"
#include "tsv.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

namespace tigress {

GoldGraph::GoldGraph(const GoldStandard& gold) {
  ids_.assign(gold.gene_universe.begin(), gold.gene_universe.end());
  for (const auto& [tf, tg] : gold.positives) {
    // Positives normally lie inside the universe; tolerate hand-built inputs.
    for (const auto* id : {&tf, &tg})
      if (!gold.gene_universe.contains(*id)) ids_.push_back(*id);
  }
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);

  parents_.resize(ids_.size());
  children_.resize(ids_.size());
  neighbors_.resize(ids_.size());
  for (const auto& [tf, tg] : gold.positives) {
    const auto from = index_.at(tf);
    const auto to = index_.at(tg);
    children_[from].push_back(to);
    parents_[to].push_back(from);
    neighbors_[from].push_back(to);
    neighbors_[to].push_back(from);
  }
  for (auto* lists : {&parents_, &children_, &neighbors_}) {
    for (auto& l : *lists) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }
}

std::optional<std::size_t> GoldGraph::find(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GoldGraph::at(const std::string& id) const {
  const auto node = find(id);
  if (!node) throw ResolutionError("gene '" + id + "' is not in the gold network");
  return *node;
}

bool GoldGraph::has_edge(std::size_t from, std::size_t to) const {
  const auto& c = children_[from];
  return std::binary_search(c.begin(), c.end(), to);
}

std::vector<int> GoldGraph::distances_from(std::size_t source) const {
  std::vector<int> dist(ids_.size(), -1);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : neighbors_[u]) {
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::optional<int> shortest_distance(const GoldGraph& graph, const std::string& a, const std::string& b) {
  const auto from = graph.at(a);
  const auto to = graph.at(b);
  const int d = graph.distances_from(from)[to];
  if (d < 0) return std::nullopt;
  return d;
}

Distance2Motifs classify_distance2(const GoldGraph& graph, const std::string& a, const std::string& b) {
  const auto d = shortest_distance(graph, a, b);
  if (d != 2) throw ContractError("classify_distance2: " + a + " and " + b + " are not at distance 2");
  const auto u = graph.at(a);
  const auto v = graph.at(b);
  Distance2Motifs m;
  for (auto mid : graph.neighbors(u)) {
    if (mid == v) continue;
    const bool u_to_mid = graph.has_edge(u, mid);
    const bool mid_to_u = graph.has_edge(mid, u);
    const bool v_to_mid = graph.has_edge(v, mid);
    const bool mid_to_v = graph.has_edge(mid, v);
    m.sibling |= mid_to_u && mid_to_v;
    m.couple |= u_to_mid && v_to_mid;
    m.grandparent_forward |= u_to_mid && mid_to_v;
    m.grandparent_backward |= v_to_mid && mid_to_u;
  }
  return m;
}

std::int64_t hypergeom_quantile(std::int64_t population, std::int64_t successes, std::int64_t draws,
                                double prob) {
  if (population < 0 || successes < 0 || successes > population || draws < 0 || draws > population)
    throw ParameterError("hypergeometric parameters out of range");
  if (!(prob >= 0.0 && prob <= 1.0)) throw ParameterError("quantile order must lie in [0,1]");
  const auto lo = std::max<std::int64_t>(0, draws - (population - successes));
  const auto hi = std::min(draws, successes);
  if (lo == hi) return lo;

  auto log_choose = [](std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
  };
  std::vector<double> pmf(static_cast<std::size_t>(hi - lo + 1));
  double peak = -std::numeric_limits<double>::infinity();
  for (auto k = lo; k <= hi; ++k) {
    const double lp = log_choose(successes, k) + log_choose(population - successes, draws - k);
    pmf[k - lo] = lp;
    peak = std::max(peak, lp);
  }
  double total = 0.0;
  for (auto& p : pmf) total += (p = std::exp(p - peak));

  // Relative slack absorbs rounding when the CDF hits the order exactly.
  const double target = prob * (1.0 - 1e-12) * total;
  double cdf = 0.0;
  for (auto k = lo; k <= hi; ++k) {
    cdf += pmf[k - lo];
    if (cdf >= target) return k;
  }
  return hi;
}

std::pair<double, double> hypergeom_ci(std::int64_t n_spurious, double p_x, std::int64_t r, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level must lie in (0,1)");
  if (!(p_x >= 0.0 && p_x <= 1.0)) throw ParameterError("class proportion must lie in [0,1]");
  if (n_spurious < 0 || r < 0 || r > n_spurious) throw ParameterError("need 0 <= r <= N_S");
  if (r == 0) return {0.0, 1.0};
  const auto successes = static_cast<std::int64_t>(std::llround(p_x * static_cast<double>(n_spurious)));
  const double tail = (1.0 - level) / 2.0;
  const double rr = static_cast<double>(r);
  return {static_cast<double>(hypergeom_quantile(n_spurious, successes, r, tail)) / rr,
          static_cast<double>(hypergeom_quantile(n_spurious, successes, r, 1.0 - tail)) / rr};
}

DistanceClass classify_distance(std::optional<int> distance) {
  if (!distance) return DistanceClass::disconnected;
  switch (*distance) {
    case 1: return DistanceClass::one;
    case 2: return DistanceClass::two;
    case 3: return DistanceClass::three;
    case 4: return DistanceClass::four;
    default: break;
  }
  if (*distance < 1) throw ContractError("distance of a candidate pair must be positive");
  return DistanceClass::beyond_four;
}

DistanceReport fp_distance_profile(const EdgeList& predictions, const GoldStandard& gold,
                                   std::size_t max_rank,
                                   const std::optional<CandidateUniverse>& universe, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level must lie in (0,1)");
  const GoldGraph graph(gold);
  const auto ranking = label_predictions(predictions, gold, universe);

  std::map<std::size_t, std::vector<int>> bfs_cache;
  auto distance = [&](const EdgeKey& pair) -> std::optional<int> {
    const auto a = graph.find(pair.first);
    const auto b = graph.find(pair.second);
    if (!a || !b) return std::nullopt;
    auto it = bfs_cache.find(*a);
    if (it == bfs_cache.end()) it = bfs_cache.emplace(*a, graph.distances_from(*a)).first;
    const int d = it->second[*b];
    if (d < 0) return std::nullopt;
    return d;
  };

  DistanceReport report;
  report.level = level;
  std::array<std::int64_t, kDistanceClasses> base{};
  for (std::size_t i = 0; i < ranking.pairs.size(); ++i) {
    if (ranking.labels[i]) continue;
    ++base[static_cast<std::size_t>(classify_distance(distance(ranking.pairs[i])))];
    ++report.n_spurious;
  }
  report.baseline_counts = base;
  for (std::size_t c = 0; c < kDistanceClasses; ++c)
    report.baseline[c] = report.n_spurious ? static_cast<double>(base[c]) / static_cast<double>(report.n_spurious) : 0.0;

  DistanceRow row;
  MotifRow motif;
  const auto limit = std::min(max_rank, ranking.n_ranked);
  for (std::size_t i = 0; i < limit; ++i) {
    if (ranking.labels[i]) continue;
    const auto& pair = ranking.pairs[i];
    const auto d = distance(pair);
    const auto cls = classify_distance(d);
    row.prediction_rank = motif.prediction_rank = i + 1;
    ++row.fp_count;
    ++row.counts[static_cast<std::size_t>(cls)];
    for (std::size_t c = 0; c < kDistanceClasses; ++c) {
      row.proportions[c] = static_cast<double>(row.counts[c]) / static_cast<double>(row.fp_count);
      std::tie(row.ci_lo[c], row.ci_hi[c]) = hypergeom_ci(report.n_spurious, report.baseline[c], row.fp_count, level);
    }
    report.rows.push_back(row);

    motif.fp_count = row.fp_count;
    if (cls == DistanceClass::two) {
      const auto m = classify_distance2(graph, pair.first, pair.second);
      ++motif.distance2;
      motif.siblings += m.sibling;
      motif.couples += m.couple;
      motif.grandparents += m.grandparent();
    }
    report.motifs.push_back(motif);
  }
  return report;
}

void write_distance_report(const DistanceReport& report, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "rank\tfp_count";
  for (auto name : kDistanceClassNames) out << "\tp_" << name;
  for (auto name : kDistanceClassNames) out << "\tlo_" << name << "\thi_" << name;
  out << '\n';
  for (const auto& row : report.rows) {
    out << row.prediction_rank << '\t' << row.fp_count;
    for (double p : row.proportions) out << '\t' << format_double(p);
    for (std::size_t c = 0; c < kDistanceClasses; ++c)
      out << '\t' << format_double(row.ci_lo[c]) << '\t' << format_double(row.ci_hi[c]);
    out << '\n';
  }
  detail::check_written(out, path);
}

void write_motif_counts(const DistanceReport& report, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "rank\tfp_count\tdistance2\tsibling\tcouple\tgrandparent\n";
  for (const auto& m : report.motifs)
    out << m.prediction_rank << '\t' << m.fp_count << '\t' << m.distance2 << '\t' << m.siblings << '\t'
        << m.couples << '\t' << m.grandparents << '\n';
  detail::check_written(out, path);
}

void write_distance_baseline(const DistanceReport& report, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "class\tp_hat\tcount\n";
  for (std::size_t c = 0; c < kDistanceClasses; ++c)
    out << kDistanceClassNames[c] << '\t' << format_double(report.baseline[c]) << '\t'
        << report.baseline_counts[c] << '\n';
  out << "all\t1\t" << report.n_spurious << '\n';
  detail::check_written(out, path);
}

}  // namespace tigress
