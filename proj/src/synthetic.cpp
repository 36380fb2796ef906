#include "tigress/synthetic.hpp"

#include "tigress/errors.hpp"
#include "tigress/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace tigress {
namespace {

constexpr std::uint64_t kEdgeTag = 1;
constexpr std::uint64_t kWeightTag = 2;
constexpr std::uint64_t kSampleTag = 3;

std::int64_t available_edges(int genes, int tfs) {
  std::int64_t total = 0;
  for (int i = 0; i < tfs; ++i) total += genes - 1 - i;
  return total;
}

}  // namespace

void SyntheticSpec::validate() const {
  if (genes < 2) throw ParameterError("need at least 2 genes");
  if (tfs < 1 || tfs > genes) throw ParameterError("TF count must lie in [1, genes]");
  if (samples < 2) throw ParameterError("need at least 2 samples");
  if (edges < 0) throw ParameterError("edge count must be non-negative");
  if (edges > available_edges(genes, tfs))
    throw ParameterError("cannot place " + std::to_string(edges) + " edges; the DAG admits at most " +
                         std::to_string(available_edges(genes, tfs)));
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) throw ParameterError("noise sd must be >= 0");
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const auto p = spec.genes;
  const auto n = spec.samples;

  SyntheticData data;
  auto& expr = data.expr;
  for (int j = 0; j < p; ++j) expr.gene_ids.push_back("G" + std::to_string(j + 1));
  for (int i = 0; i < n; ++i) expr.sample_ids.push_back("S" + std::to_string(i + 1));
  data.tf_ids.assign(expr.gene_ids.begin(), expr.gene_ids.begin() + spec.tfs);
  data.gold.gene_universe.insert(expr.gene_ids.begin(), expr.gene_ids.end());

  std::vector<std::pair<int, int>> slots;
  for (int t = 0; t < spec.tfs; ++t)
    for (int g = t + 1; g < p; ++g) slots.emplace_back(t, g);
  rng::Engine edge_engine(rng::derive(spec.seed, kEdgeTag));
  rng::shuffle(slots.begin(), slots.end(), edge_engine);
  slots.resize(static_cast<std::size_t>(spec.edges));

  std::vector<std::vector<std::pair<int, double>>> parents(static_cast<std::size_t>(p));
  rng::Engine weight_engine(rng::derive(spec.seed, kWeightTag));
  std::sort(slots.begin(), slots.end());
  for (auto [t, g] : slots) {
    const double magnitude = 0.5 + 0.5 * rng::to_unit(weight_engine());
    const double sign = (weight_engine() & 1U) ? 1.0 : -1.0;
    parents[g].emplace_back(t, sign * magnitude);
    data.gold.positives.insert({expr.gene_ids[t], expr.gene_ids[g]});
  }

  expr.values.resize(n, p);
  rng::Engine sample_engine(rng::derive(spec.seed, kSampleTag));
  for (int g = 0; g < p; ++g) {
    auto col = expr.values.col(g);
    if (parents[g].empty()) {
      for (int i = 0; i < n; ++i) col[i] = rng::normal(sample_engine);
      continue;
    }
    col.setZero();
    for (auto [t, beta] : parents[g]) col += beta * expr.values.col(t);
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / (n - 1));
    if (sd > 0.0) col /= sd;
    for (int i = 0; i < n; ++i) col[i] += spec.noise_sd * rng::normal(sample_engine);
  }
  return data;
}

}  // namespace tigress
