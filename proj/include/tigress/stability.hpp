#pragma once

#include "tigress/data.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace tigress {

enum class Scoring { original, area };

std::string_view to_string(Scoring scoring) noexcept;
/// Accepts "original" or "area"; throws ParameterError otherwise.
Scoring parse_scoring(std::string_view name);

struct StabilityParams {
  int runs = 8000;        ///< total LARS runs R, even
  int steps = 2;          ///< LARS steps L
  double alpha = 0.4;     ///< lower bound of the column reweighting
  Scoring scoring = Scoring::area;
  std::uint64_t seed = 0;

  /// Throws ParameterError when any field is out of range.
  void validate() const;
};

/// counts(t, l): number of runs in which candidate t entered among the first
/// l + 1 LARS steps for the target gene.
struct FrequencyTable {
  Eigen::Index target = -1;
  std::vector<Eigen::Index> candidates;
  Eigen::MatrixXi counts;
  int runs = 0;

  FrequencyTable() = default;
  FrequencyTable(Eigen::Index target, std::vector<Eigen::Index> candidates, int steps);

  [[nodiscard]] int steps() const noexcept { return static_cast<int>(counts.cols()); }

  /// Records one run; `entered` holds candidate positions (rows) in entry
  /// order, truncated to the table width.
  void add_run(std::span<const Eigen::Index> entered);

  /// Adds another table over the same target and candidates.
  void merge(const FrequencyTable& other);
};

struct ScoreVector {
  Eigen::VectorXd scores;  ///< aligned with FrequencyTable::candidates
  Eigen::Index target = -1;
  Scoring scoring = Scoring::area;
};

/// Stability selection for one target: R/2 random half-splits of the
/// experiments, each half a separate LARS run on candidate columns scaled by
/// independent Uniform[alpha, 1] weights. Half-samples are re-centered but
/// not rescaled, so the weights survive.
///
/// Every random draw is derived from (seed, target id, run) and, for the
/// weights, the candidate id, so the table does not depend on execution
/// order or on the column layout of `expr`.
FrequencyTable run_stability(const ExpressionMatrix& expr, std::span<const Eigen::Index> candidates,
                             Eigen::Index target, const StabilityParams& params);

/// counts(t, L-1) / R.
ScoreVector score_original(const FrequencyTable& table, int steps);

/// (1/L) sum_{l<=L} counts(t, l-1) / R, the normalized area under the
/// selection-frequency curve.
ScoreVector score_area(const FrequencyTable& table, int steps);

ScoreVector score(const FrequencyTable& table, Scoring scoring, int steps);

}  // namespace tigress
