#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tigress {

/// Directed regulation (tf_id, tg_id).
using EdgeKey = std::pair<std::string, std::string>;

/// n_samples x n_genes expression levels. Column j holds gene gene_ids[j],
/// row i holds experiment sample_ids[i].
struct ExpressionMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> gene_ids;
  std::vector<std::string> sample_ids;

  [[nodiscard]] Eigen::Index n_samples() const noexcept { return values.rows(); }
  [[nodiscard]] Eigen::Index n_genes() const noexcept { return values.cols(); }

  /// Column index of a gene id, or -1.
  [[nodiscard]] Eigen::Index gene_index(const std::string& id) const;

  /// Throws FormatError when ids are duplicated or dimensions disagree.
  void validate() const;
};

/// Candidate regulators as sorted, unique column indices.
struct RegulatorSet {
  std::vector<Eigen::Index> tf_indices;

  [[nodiscard]] bool contains(Eigen::Index gene) const;
};

struct GoldStandard {
  std::set<EdgeKey> positives;
  std::set<EdgeKey> negatives;
  std::set<std::string> gene_universe;

  [[nodiscard]] bool has_explicit_negatives() const noexcept { return !negatives.empty(); }
  [[nodiscard]] bool is_positive(const EdgeKey& e) const { return positives.contains(e); }
};

struct StandardizeResult {
  ExpressionMatrix matrix;
  /// Column indices that had zero variance and were mapped to all-zero.
  std::vector<Eigen::Index> zero_variance;
};

/// Reads a tab-separated expression file: header of gene ids, then one row
/// per experiment. A row with one more field than the header carries a
/// leading sample id.
ExpressionMatrix load_expression(const std::filesystem::path& path);

/// Writes values with shortest round-trip precision.
void save_expression(const ExpressionMatrix& expr, const std::filesystem::path& path);

RegulatorSet load_tf_list(const std::filesystem::path& path, const ExpressionMatrix& expr);

/// Resolves TF ids against expr.gene_ids. Throws ResolutionError listing
/// every unknown id, ParameterError when `ids` is empty.
RegulatorSet resolve_regulators(const std::vector<std::string>& ids, const ExpressionMatrix& expr);

/// Reads "TF<TAB>TG[<TAB>label]" lines; a missing label means 1.
GoldStandard load_gold_standard(const std::filesystem::path& path);

/// Reads one identifier per line, skipping blanks.
std::vector<std::string> load_id_list(const std::filesystem::path& path);

/// Mean-centers each column and scales it to unit sample variance (n-1
/// denominator). Zero-variance columns become all-zero and are reported.
StandardizeResult standardize(const ExpressionMatrix& expr);

/// Locale-independent shortest round-trip formatting of a double.
std::string format_double(double value);

}  // namespace tigress
