#include "tigress/eval.hpp"

#include "tigress/errors.hpp"
#include "tigress/rng.hpp"
#include "tsv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tigress {

LabeledRanking label_predictions(const EdgeList& predictions, const GoldStandard& gold,
                                 const std::optional<CandidateUniverse>& universe) {
  LabeledRanking out;
  std::set<EdgeKey> ranked;

  if (gold.has_explicit_negatives()) {
    for (const auto& e : predictions.edges) {
      EdgeKey key{e.tf, e.tg};
      const bool pos = gold.positives.contains(key);
      if (!pos && !gold.negatives.contains(key)) continue;
      if (!ranked.insert(key).second) continue;
      out.labels.push_back(pos);
      out.pairs.push_back(std::move(key));
    }
    out.n_ranked = out.labels.size();
    // Positives and negatives are disjoint ordered sets; merge them to walk
    // the unranked tail in lexicographic order.
    std::map<EdgeKey, char> tail;
    for (const auto& k : gold.positives)
      if (!ranked.contains(k)) tail.emplace(k, 1);
    for (const auto& k : gold.negatives)
      if (!ranked.contains(k)) tail.emplace(k, 0);
    for (auto& [k, label] : tail) {
      out.labels.push_back(label);
      out.pairs.push_back(k);
    }
    return out;
  }

  std::set<std::string> tfs;
  std::set<std::string> genes;
  if (universe) {
    tfs.insert(universe->tfs.begin(), universe->tfs.end());
    genes.insert(universe->genes.begin(), universe->genes.end());
  } else {
    for (const auto& [tf, tg] : gold.positives) tfs.insert(tf);
    genes = gold.gene_universe;
    for (const auto& e : predictions.edges) {
      tfs.insert(e.tf);
      genes.insert(e.tf);
      genes.insert(e.tg);
    }
  }
  genes.insert(tfs.begin(), tfs.end());

  for (const auto& e : predictions.edges) {
    if (e.tf == e.tg || !tfs.contains(e.tf) || !genes.contains(e.tg)) continue;
    EdgeKey key{e.tf, e.tg};
    if (!ranked.insert(key).second) continue;
    out.labels.push_back(gold.positives.contains(key));
    out.pairs.push_back(std::move(key));
  }
  out.n_ranked = out.labels.size();
  for (const auto& tf : tfs) {
    for (const auto& tg : genes) {
      if (tf == tg) continue;
      EdgeKey key{tf, tg};
      if (ranked.contains(key)) continue;
      out.labels.push_back(gold.positives.contains(key));
      out.pairs.push_back(std::move(key));
    }
  }
  return out;
}

double auroc_of(const std::vector<char>& labels) {
  const auto n_pos = std::count(labels.begin(), labels.end(), char{1});
  const auto n_neg = static_cast<std::int64_t>(labels.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0) throw EvaluationError("AUROC needs at least one positive and one negative");
  double area = 0.0;
  std::int64_t tp = 0, fp = 0;
  double prev_x = 0.0, prev_y = 0.0;
  for (char label : labels) {
    label ? ++tp : ++fp;
    const double x = static_cast<double>(fp) / n_neg;
    const double y = static_cast<double>(tp) / n_pos;
    area += (x - prev_x) * (y + prev_y) / 2.0;
    prev_x = x;
    prev_y = y;
  }
  return area;
}

double aupr_of(const std::vector<char>& labels, std::size_t n_ranked) {
  const auto n_pos = std::count(labels.begin(), labels.end(), char{1});
  if (n_pos == 0) throw EvaluationError("AUPR needs at least one positive");
  double sum = 0.0;
  std::int64_t tp = 0;
  const auto limit = std::min(n_ranked, labels.size());
  for (std::size_t k = 0; k < limit; ++k) {
    if (!labels[k]) continue;
    ++tp;
    sum += static_cast<double>(tp) / static_cast<double>(k + 1);
  }
  return sum / static_cast<double>(n_pos);
}

EvaluationReport evaluate(const EdgeList& predictions, const GoldStandard& gold,
                          const std::optional<CandidateUniverse>& universe) {
  if (predictions.empty()) throw EvaluationError("prediction list is empty");
  const auto ranking = label_predictions(predictions, gold, universe);
  const auto& labels = ranking.labels;

  EvaluationReport report;
  report.n_positives = std::count(labels.begin(), labels.end(), char{1});
  report.n_negatives = static_cast<std::int64_t>(labels.size()) - report.n_positives;
  report.n_ranked = ranking.n_ranked;
  if (report.n_positives == 0) throw EvaluationError("no evaluable positives");
  if (report.n_negatives == 0) throw EvaluationError("no evaluable negatives");
  if (report.n_ranked == 0) throw EvaluationError("no prediction is an evaluable pair");

  report.curve.reserve(labels.size());
  std::int64_t tp = 0, fp = 0;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    labels[k] ? ++tp : ++fp;
    CurvePoint p;
    p.rank = k + 1;
    p.tp = tp;
    p.fp = fp;
    p.fn = report.n_positives - tp;
    p.tn = report.n_negatives - fp;
    p.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    p.recall = static_cast<double>(tp) / static_cast<double>(report.n_positives);
    p.fallout = static_cast<double>(fp) / static_cast<double>(report.n_negatives);
    report.curve.push_back(p);
  }
  report.auroc = auroc_of(labels);
  report.aupr = aupr_of(labels, ranking.n_ranked);
  return report;
}

double overall_score(double p_aupr, double p_auroc) {
  if (!(p_aupr > 0.0 && p_aupr <= 1.0) || !(p_auroc > 0.0 && p_auroc <= 1.0))
    throw ParameterError("overall_score: p-values must lie in (0, 1]");
  return -0.5 * (std::log10(p_aupr) + std::log10(p_auroc));
}

PValues permutation_pvalues(const EdgeList& predictions, const GoldStandard& gold, int n_draws,
                            std::uint64_t seed, const std::optional<CandidateUniverse>& universe) {
  if (n_draws < 100) throw ParameterError("permutation_pvalues: need at least 100 draws");
  const auto observed = evaluate(predictions, gold, universe);
  const auto ranking = label_predictions(predictions, gold, universe);

  // Tolerate rounding noise when a random ranking reproduces the observed
  // one exactly.
  constexpr double kSlack = 1e-12;
  std::int64_t beat_pr = 0, beat_roc = 0;
  std::vector<char> labels = ranking.labels;
  for (int d = 0; d < n_draws; ++d) {
    labels = ranking.labels;
    rng::Engine engine(rng::derive(seed, static_cast<std::uint64_t>(d)));
    rng::shuffle(labels.begin(), labels.end(), engine);
    if (aupr_of(labels, ranking.n_ranked) >= observed.aupr - kSlack) ++beat_pr;
    if (auroc_of(labels) >= observed.auroc - kSlack) ++beat_roc;
  }
  const double denom = static_cast<double>(n_draws) + 1.0;
  return {(1.0 + static_cast<double>(beat_pr)) / denom, (1.0 + static_cast<double>(beat_roc)) / denom};
}

void write_curve(const EvaluationReport& report, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "rank\tTP\tFP\tFN\tTN\tprecision\trecall\tfallout\n";
  for (const auto& p : report.curve) {
    out << p.rank << '\t' << p.tp << '\t' << p.fp << '\t' << p.fn << '\t' << p.tn << '\t'
        << format_double(p.precision) << '\t' << format_double(p.recall) << '\t'
        << format_double(p.fallout) << '\n';
  }
  detail::check_written(out, path);
}

void write_summary(const EvaluationReport& report, const std::optional<PValues>& pvalues,
                   const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "auroc\t" << format_double(report.auroc) << '\n';
  out << "aupr\t" << format_double(report.aupr) << '\n';
  out << "n_positives\t" << report.n_positives << '\n';
  out << "n_negatives\t" << report.n_negatives << '\n';
  out << "n_ranked\t" << report.n_ranked << '\n';
  if (pvalues) {
    out << "p_auroc\t" << format_double(pvalues->p_auroc) << '\n';
    out << "p_aupr\t" << format_double(pvalues->p_aupr) << '\n';
    out << "overall_score\t" << format_double(overall_score(pvalues->p_aupr, pvalues->p_auroc)) << '\n';
  }
  detail::check_written(out, path);
}

}  // namespace tigress
