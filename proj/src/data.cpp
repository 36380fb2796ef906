#include "tigress/data.hpp"

#include "tigress/errors.hpp"
#include "tsv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace tigress {

using detail::is_blank;
using detail::split_tabs;
using detail::strip_cr;

Eigen::Index ExpressionMatrix::gene_index(const std::string& id) const {
  const auto it = std::find(gene_ids.begin(), gene_ids.end(), id);
  return it == gene_ids.end() ? -1 : static_cast<Eigen::Index>(it - gene_ids.begin());
}

void ExpressionMatrix::validate() const {
  if (static_cast<Eigen::Index>(gene_ids.size()) != values.cols())
    throw FormatError("gene id count does not match matrix columns");
  if (static_cast<Eigen::Index>(sample_ids.size()) != values.rows())
    throw FormatError("sample id count does not match matrix rows");
  std::unordered_set<std::string> seen;
  for (const auto& g : gene_ids)
    if (!seen.insert(g).second) throw FormatError("duplicate gene id '" + g + "'");
  seen.clear();
  for (const auto& s : sample_ids)
    if (!seen.insert(s).second) throw FormatError("duplicate sample id '" + s + "'");
}

bool RegulatorSet::contains(Eigen::Index gene) const {
  return std::binary_search(tf_indices.begin(), tf_indices.end(), gene);
}

ExpressionMatrix load_expression(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  const std::string where = path.string();

  std::string line;
  std::size_t line_no = 0;
  ExpressionMatrix expr;
  bool have_header = false;
  std::vector<double> cells;
  std::size_t n_rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (is_blank(view)) continue;
    auto fields = split_tabs(view);
    if (!have_header) {
      for (auto f : fields) {
        if (f.empty()) throw FormatError(where + ": empty gene id in header");
        expr.gene_ids.emplace_back(f);
      }
      have_header = true;
      continue;
    }
    const auto n_genes = expr.gene_ids.size();
    std::string sample_id;
    if (fields.size() == n_genes + 1) {
      sample_id = std::string(fields.front());
      fields.erase(fields.begin());
    } else if (fields.size() != n_genes) {
      throw FormatError(where + ": row at line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(n_genes));
    } else {
      sample_id = "S" + std::to_string(n_rows + 1);
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      const auto v = detail::parse_double(fields[j]);
      if (!v || !std::isfinite(*v))
        throw FormatError(where + ": non-numeric value '" + std::string(fields[j]) +
                          "' at line " + std::to_string(line_no) + ", column " +
                          std::to_string(j + 1));
      cells.push_back(*v);
    }
    expr.sample_ids.push_back(std::move(sample_id));
    ++n_rows;
  }
  if (!have_header) throw FormatError(where + ": empty expression file");

  const auto n_genes = static_cast<Eigen::Index>(expr.gene_ids.size());
  expr.values.resize(static_cast<Eigen::Index>(n_rows), n_genes);
  for (std::size_t i = 0; i < n_rows; ++i)
    for (Eigen::Index j = 0; j < n_genes; ++j)
      expr.values(static_cast<Eigen::Index>(i), j) = cells[i * n_genes + j];

  try {
    expr.validate();
  } catch (const FormatError& e) {
    throw FormatError(where + ": " + e.what());
  }
  return expr;
}

void save_expression(const ExpressionMatrix& expr, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  for (std::size_t j = 0; j < expr.gene_ids.size(); ++j) {
    if (j) out << '\t';
    out << expr.gene_ids[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < expr.n_samples(); ++i) {
    for (Eigen::Index j = 0; j < expr.n_genes(); ++j) {
      if (j) out << '\t';
      out << format_double(expr.values(i, j));
    }
    out << '\n';
  }
  detail::check_written(out, path);
}

std::vector<std::string> load_id_list(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    auto view = strip_cr(line);
    if (is_blank(view)) continue;
    // Tolerate trailing columns; the first field is the id.
    view = split_tabs(view).front();
    ids.emplace_back(view);
  }
  return ids;
}

RegulatorSet resolve_regulators(const std::vector<std::string>& ids, const ExpressionMatrix& expr) {
  if (ids.empty()) throw ParameterError("TF list is empty");
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t j = 0; j < expr.gene_ids.size(); ++j)
    index.emplace(expr.gene_ids[j], static_cast<Eigen::Index>(j));

  RegulatorSet set;
  std::vector<std::string> unknown;
  for (const auto& id : ids) {
    const auto it = index.find(id);
    if (it == index.end())
      unknown.push_back(id);
    else
      set.tf_indices.push_back(it->second);
  }
  if (!unknown.empty()) {
    std::string msg = "TF ids not present in the expression matrix:";
    for (const auto& u : unknown) msg += " " + u;
    throw ResolutionError(msg);
  }
  std::sort(set.tf_indices.begin(), set.tf_indices.end());
  set.tf_indices.erase(std::unique(set.tf_indices.begin(), set.tf_indices.end()),
                       set.tf_indices.end());
  return set;
}

RegulatorSet load_tf_list(const std::filesystem::path& path, const ExpressionMatrix& expr) {
  const auto ids = load_id_list(path);
  if (ids.empty()) throw FormatError(path.string() + ": TF list is empty");
  return resolve_regulators(ids, expr);
}

GoldStandard load_gold_standard(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  const std::string where = path.string();
  std::map<EdgeKey, bool> labels;
  GoldStandard gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (is_blank(view)) continue;
    const auto fields = split_tabs(view);
    const auto at = where + ": line " + std::to_string(line_no);
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty())
      throw FormatError(at + ": expected TF<TAB>TG[<TAB>label]");
    bool label = true;
    if (fields.size() == 3) {
      if (fields[2] == "1")
        label = true;
      else if (fields[2] == "0")
        label = false;
      else
        throw FormatError(at + ": label must be 0 or 1, got '" + std::string(fields[2]) + "'");
    }
    EdgeKey key{std::string(fields[0]), std::string(fields[1])};
    if (label && key.first == key.second)
      throw FormatError(at + ": self-regulation '" + key.first + "' in gold standard");
    gold.gene_universe.insert(key.first);
    gold.gene_universe.insert(key.second);
    const auto [it, inserted] = labels.emplace(key, label);
    if (!inserted && it->second != label)
      throw FormatError(at + ": conflicting labels for " + key.first + " -> " + key.second);
  }
  for (const auto& [key, label] : labels) (label ? gold.positives : gold.negatives).insert(key);
  return gold;
}

StandardizeResult standardize(const ExpressionMatrix& expr) {
  const auto n = expr.n_samples();
  if (n < 2) throw ParameterError("standardize needs at least 2 samples");
  StandardizeResult result{expr, {}};
  auto& values = result.matrix.values;
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    auto col = values.col(j);
    const double mean = col.mean();
    col.array() -= mean;
    const double var = col.squaredNorm() / static_cast<double>(n - 1);
    // Columns whose spread is at rounding level relative to their magnitude
    // are treated as constant.
    const double scale = std::max(std::abs(mean), expr.values.col(j).cwiseAbs().maxCoeff());
    if (!(var > 0.0) || std::sqrt(var) <= 1e-13 * std::max(scale, 1e-300)) {
      col.setZero();
      result.zero_variance.push_back(j);
      continue;
    }
    col /= std::sqrt(var);
  }
  return result;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw NumericError("cannot format value");
  return std::string(buf, ptr);
}

}  // namespace tigress
