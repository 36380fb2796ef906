#include "tigress/stability.hpp"

#include "tigress/errors.hpp"
#include "tigress/lars.hpp"
#include "tigress/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tigress {
namespace {

// Stream tags keep the split and weight derivations disjoint.
constexpr std::uint64_t kSplitTag = 0x53504c4954ULL;
constexpr std::uint64_t kWeightTag = 0x574549474854ULL;

void check_steps(const FrequencyTable& table, int steps) {
  if (steps < 1 || steps > table.steps())
    throw ParameterError("score: L=" + std::to_string(steps) + " outside table width " +
                         std::to_string(table.steps()));
  if (table.runs <= 0) throw ParameterError("score: table holds no runs");
}

}  // namespace

std::string_view to_string(Scoring scoring) noexcept {
  return scoring == Scoring::area ? "area" : "original";
}

Scoring parse_scoring(std::string_view name) {
  if (name == "area") return Scoring::area;
  if (name == "original") return Scoring::original;
  throw ParameterError("unknown scoring '" + std::string(name) + "' (expected area or original)");
}

void StabilityParams::validate() const {
  if (runs < 2 || runs % 2 != 0)
    throw ParameterError("runs R must be a positive even integer, got " + std::to_string(runs));
  if (steps < 1) throw ParameterError("steps L must be positive, got " + std::to_string(steps));
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ParameterError("alpha must lie in [0,1], got " + std::to_string(alpha));
}

FrequencyTable::FrequencyTable(Eigen::Index target, std::vector<Eigen::Index> candidates, int steps)
    : target(target),
      candidates(std::move(candidates)),
      counts(Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(this->candidates.size()), steps)) {}

void FrequencyTable::add_run(std::span<const Eigen::Index> entered) {
  const auto width = std::min<Eigen::Index>(static_cast<Eigen::Index>(entered.size()), counts.cols());
  for (Eigen::Index rank = 0; rank < width; ++rank)
    counts.row(entered[rank]).tail(counts.cols() - rank).array() += 1;
  ++runs;
}

void FrequencyTable::merge(const FrequencyTable& other) {
  if (other.target != target || other.candidates != candidates || other.counts.cols() != counts.cols())
    throw ParameterError("merge: frequency tables are not compatible");
  counts += other.counts;
  runs += other.runs;
}

FrequencyTable run_stability(const ExpressionMatrix& expr, std::span<const Eigen::Index> candidates,
                             Eigen::Index target, const StabilityParams& params) {
  params.validate();
  if (candidates.empty()) throw ParameterError("run_stability: no candidate regulators");
  if (target < 0 || target >= expr.n_genes()) throw ParameterError("run_stability: bad target index");
  if (std::find(candidates.begin(), candidates.end(), target) != candidates.end())
    throw ParameterError("run_stability: target is among its own candidates");
  const auto n = expr.n_samples();
  if (n / 2 < 2)
    throw ParameterError("run_stability: half-sample of " + std::to_string(n / 2) +
                         " experiments is smaller than 2");

  const auto k = static_cast<Eigen::Index>(candidates.size());
  FrequencyTable table(target, {candidates.begin(), candidates.end()}, params.steps);

  const auto target_key = rng::hash_id(expr.gene_ids[target]);
  std::vector<std::uint64_t> candidate_keys(candidates.size());
  for (Eigen::Index c = 0; c < k; ++c) candidate_keys[c] = rng::hash_id(expr.gene_ids[candidates[c]]);

  const Eigen::Index sizes[2] = {(n + 1) / 2, n / 2};
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd weights(k);

  for (int pair = 0; pair < params.runs / 2; ++pair) {
    rng::Engine split_engine(rng::derive(params.seed, kSplitTag, target_key, static_cast<std::uint64_t>(pair)));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    rng::shuffle(order.begin(), order.end(), split_engine);
    std::sort(order.begin(), order.begin() + sizes[0]);
    std::sort(order.begin() + sizes[0], order.end());

    for (int half = 0; half < 2; ++half) {
      const auto run = static_cast<std::uint64_t>(2 * pair + half);
      for (Eigen::Index c = 0; c < k; ++c) {
        const double u = rng::to_unit(rng::derive(params.seed, kWeightTag, target_key, run, candidate_keys[c]));
        weights[c] = params.alpha + (1.0 - params.alpha) * u;
      }
      const auto offset = half == 0 ? Eigen::Index{0} : sizes[0];
      const auto m = sizes[half];
      x.resize(m, k);
      y.resize(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        const auto row = order[offset + i];
        y[i] = expr.values(row, target);
        for (Eigen::Index c = 0; c < k; ++c) x(i, c) = expr.values(row, candidates[c]) * weights[c];
      }
      y.array() -= y.mean();
      x.rowwise() -= x.colwise().mean();

      const auto path = lars_path(x, y, params.steps);
      table.add_run(path.entry_order);
    }
  }
  return table;
}

ScoreVector score_original(const FrequencyTable& table, int steps) {
  check_steps(table, steps);
  ScoreVector out{Eigen::VectorXd(table.counts.rows()), table.target, Scoring::original};
  const double runs = table.runs;
  for (Eigen::Index t = 0; t < table.counts.rows(); ++t) out.scores[t] = table.counts(t, steps - 1) / runs;
  return out;
}

ScoreVector score_area(const FrequencyTable& table, int steps) {
  check_steps(table, steps);
  ScoreVector out{Eigen::VectorXd(table.counts.rows()), table.target, Scoring::area};
  const double runs = table.runs;
  for (Eigen::Index t = 0; t < table.counts.rows(); ++t) {
    double sum = 0.0;
    for (int l = 0; l < steps; ++l) sum += table.counts(t, l) / runs;
    out.scores[t] = sum / steps;
  }
  return out;
}

ScoreVector score(const FrequencyTable& table, Scoring scoring, int steps) {
  return scoring == Scoring::area ? score_area(table, steps) : score_original(table, steps);
}

}  // namespace tigress
