#pragma once

#include "tigress/data.hpp"
#include "tigress/network.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tigress {

/// Candidate pairs E = {(t, g) : t in tfs, g in genes, t != g} used when the
/// gold standard lists positives only.
struct CandidateUniverse {
  std::vector<std::string> tfs;
  std::vector<std::string> genes;
};

struct CurvePoint {
  std::size_t rank = 0;  ///< cutoff K, 1-based
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0, recall = 0.0, fallout = 0.0;
};

struct EvaluationReport {
  std::vector<CurvePoint> curve;
  double auroc = 0.0;
  double aupr = 0.0;
  std::int64_t n_positives = 0;
  std::int64_t n_negatives = 0;
  /// Evaluable pairs that appeared in the submitted list; the remainder of
  /// the curve is the lexicographically ordered tail of unranked pairs.
  std::size_t n_ranked = 0;
};

/// Labels of the evaluable pairs in evaluation order (ranked prefix, then
/// the unranked tail) together with the ranked prefix length.
struct LabeledRanking {
  std::vector<char> labels;
  std::vector<EdgeKey> pairs;
  std::size_t n_ranked = 0;
};

/// Restricts predictions to evaluable pairs. With explicit negatives in the
/// gold standard only labeled pairs are evaluable; otherwise every candidate
/// pair in the universe is, and unlisted pairs are negatives. Without a
/// universe, TFs are the sources seen in the gold positives and predictions
/// and genes are the gold universe plus every predicted id.
LabeledRanking label_predictions(const EdgeList& predictions, const GoldStandard& gold,
                                 const std::optional<CandidateUniverse>& universe = std::nullopt);

/// Trapezoidal area under (fallout, recall) over all cutoffs.
double auroc_of(const std::vector<char>& labels);

/// Mean over all positives of the precision at their rank; positives past
/// `n_ranked` contribute zero.
double aupr_of(const std::vector<char>& labels, std::size_t n_ranked);

EvaluationReport evaluate(const EdgeList& predictions, const GoldStandard& gold,
                          const std::optional<CandidateUniverse>& universe = std::nullopt);

/// -1/2 log10(p_aupr * p_auroc); both p-values in (0, 1].
double overall_score(double p_aupr, double p_auroc);

struct PValues {
  double p_aupr = 1.0;
  double p_auroc = 1.0;
};

/// Empirical p-values against uniformly random rankings of the evaluable
/// pairs: (1 + #{null >= observed}) / (draws + 1).
PValues permutation_pvalues(const EdgeList& predictions, const GoldStandard& gold, int n_draws,
                            std::uint64_t seed,
                            const std::optional<CandidateUniverse>& universe = std::nullopt);

/// rank, TP, FP, FN, TN, precision, recall, fallout.
void write_curve(const EvaluationReport& report, const std::filesystem::path& path);

/// key<TAB>value summary; p-values and overall score when supplied.
void write_summary(const EvaluationReport& report, const std::optional<PValues>& pvalues,
                   const std::filesystem::path& path);

}  // namespace tigress
