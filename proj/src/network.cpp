#include "tigress/network.hpp"

#include "tigress/errors.hpp"
#include "tsv.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace tigress {

void EdgeList::sort() {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.tf != b.tf) return a.tf < b.tf;
    return a.tg < b.tg;
  });
}

std::vector<FrequencyTable> infer_frequency_tables(const ExpressionMatrix& expr, const RegulatorSet& tfs,
                                                   const StabilityParams& params, int threads) {
  params.validate();
  if (tfs.tf_indices.empty()) throw ParameterError("infer_network: empty TF set");
  for (auto t : tfs.tf_indices)
    if (t < 0 || t >= expr.n_genes()) throw ParameterError("infer_network: TF index out of range");

  const auto standardized = standardize(expr);
  const auto& matrix = standardized.matrix;
  std::vector<char> flat(static_cast<std::size_t>(expr.n_genes()), 0);
  for (auto j : standardized.zero_variance) flat[j] = 1;

  const auto n_genes = expr.n_genes();
  std::vector<std::optional<FrequencyTable>> per_target(static_cast<std::size_t>(n_genes));
  std::atomic<Eigen::Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    std::vector<Eigen::Index> candidates;
    for (auto g = next++; g < n_genes; g = next++) {
      if (flat[g]) continue;
      candidates.clear();
      for (auto t : tfs.tf_indices)
        if (t != g) candidates.push_back(t);
      if (candidates.empty()) continue;
      try {
        per_target[g] = run_stability(matrix, candidates, g, params);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n_genes;
      }
    }
  };

  const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(n_genes)));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<FrequencyTable> tables;
  for (auto& t : per_target)
    if (t) tables.push_back(std::move(*t));
  return tables;
}

EdgeList edges_from_tables(const std::vector<FrequencyTable>& tables, const std::vector<std::string>& gene_ids,
                           Scoring scoring, int steps) {
  EdgeList result;
  for (const auto& table : tables) {
    const auto scores = score(table, scoring, steps);
    for (std::size_t c = 0; c < table.candidates.size(); ++c)
      result.edges.push_back({gene_ids[table.candidates[c]], gene_ids[table.target], scores.scores[c]});
  }
  result.sort();
  return result;
}

EdgeList infer_network(const ExpressionMatrix& expr, const RegulatorSet& tfs,
                       const StabilityParams& params, int threads) {
  return edges_from_tables(infer_frequency_tables(expr, tfs, params, threads), expr.gene_ids, params.scoring,
                           params.steps);
}

void write_edge_list(const EdgeList& edges, const std::filesystem::path& path,
                     std::optional<std::size_t> max_edges) {
  auto out = detail::open_output(path);
  const auto count = std::min(edges.size(), max_edges.value_or(edges.size()));
  for (std::size_t i = 0; i < count; ++i) {
    const auto& e = edges.edges[i];
    out << e.tf << '\t' << e.tg << '\t' << format_double(e.score) << '\n';
  }
  detail::check_written(out, path);
}

EdgeList load_edge_list(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  const std::string where = path.string();
  struct Row {
    std::string tf, tg;
    std::optional<double> score;
  };
  std::vector<Row> rows;
  std::set<EdgeKey> seen;
  std::string line;
  std::size_t line_no = 0;
  bool any_missing = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = detail::strip_cr(line);
    if (detail::is_blank(view)) continue;
    const auto fields = detail::split_tabs(view);
    const auto at = where + ": line " + std::to_string(line_no);
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty())
      throw FormatError(at + ": expected TF<TAB>TG[<TAB>score]");
    Row row{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (fields.size() == 3) {
      row.score = detail::parse_double(fields[2]);
      if (!row.score || std::isnan(*row.score))
        throw FormatError(at + ": invalid score '" + std::string(fields[2]) + "'");
    } else {
      any_missing = true;
    }
    if (!seen.insert({row.tf, row.tg}).second) continue;
    rows.push_back(std::move(row));
  }
  EdgeList list;
  list.edges.reserve(rows.size());
  const auto n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    const double s = any_missing ? static_cast<double>(n - i) : *r.score;
    list.edges.push_back({std::move(r.tf), std::move(r.tg), s});
  }
  return list;
}

}  // namespace tigress
