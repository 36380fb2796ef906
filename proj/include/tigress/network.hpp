#pragma once

#include "tigress/data.hpp"
#include "tigress/stability.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tigress {

struct Edge {
  std::string tf;
  std::string tg;
  double score = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Ranked candidate regulations, best first.
struct EdgeList {
  std::vector<Edge> edges;

  [[nodiscard]] std::size_t size() const noexcept { return edges.size(); }
  [[nodiscard]] bool empty() const noexcept { return edges.empty(); }

  /// Orders by descending score, then lexicographically by (tf, tg).
  void sort();
};

/// Scores every candidate pair (t, g) with t in tfs and t != g by stability
/// selection on target g. The matrix is standardized first; zero-variance
/// genes are skipped as targets. Targets are distributed over `threads`
/// workers; the result does not depend on the thread count.
EdgeList infer_network(const ExpressionMatrix& expr, const RegulatorSet& tfs,
                       const StabilityParams& params, int threads = 1);

/// Per-target frequency tables behind infer_network, in target order. A
/// table of width L also yields every score for L' < L, since LARS paths
/// and random draws do not depend on the requested width.
std::vector<FrequencyTable> infer_frequency_tables(const ExpressionMatrix& expr, const RegulatorSet& tfs,
                                                   const StabilityParams& params, int threads = 1);

/// Scores the tables with `scoring` at width `steps` and ranks the edges.
EdgeList edges_from_tables(const std::vector<FrequencyTable>& tables, const std::vector<std::string>& gene_ids,
                           Scoring scoring, int steps);

/// Writes "TF<TAB>TG<TAB>score" lines in list order.
void write_edge_list(const EdgeList& edges, const std::filesystem::path& path,
                     std::optional<std::size_t> max_edges = std::nullopt);

/// Reads "TF<TAB>TG[<TAB>score]" lines keeping file order as the ranking.
/// Rows without a score get descending placeholder scores. Duplicate pairs
/// keep their first (best-ranked) occurrence.
EdgeList load_edge_list(const std::filesystem::path& path);

}  // namespace tigress
