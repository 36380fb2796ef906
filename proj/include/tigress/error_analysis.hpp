#pragma once

#include "tigress/data.hpp"
#include "tigress/eval.hpp"
#include "tigress/network.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tigress {

/// Directed gold network plus its undirected closure.
class GoldGraph {
 public:
  explicit GoldGraph(const GoldStandard& gold);

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] const std::string& id(std::size_t node) const { return ids_[node]; }
  /// Node index or nullopt when the id is not in the gene universe.
  [[nodiscard]] std::optional<std::size_t> find(const std::string& id) const;
  /// Throws ResolutionError for unknown ids.
  [[nodiscard]] std::size_t at(const std::string& id) const;

  [[nodiscard]] const std::vector<std::size_t>& parents(std::size_t node) const { return parents_[node]; }
  [[nodiscard]] const std::vector<std::size_t>& children(std::size_t node) const { return children_[node]; }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t node) const { return neighbors_[node]; }
  [[nodiscard]] bool has_edge(std::size_t from, std::size_t to) const;

  /// Undirected BFS distances from `source`; -1 marks unreachable nodes.
  [[nodiscard]] std::vector<int> distances_from(std::size_t source) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> parents_, children_, neighbors_;
};

/// Undirected shortest-path length; nullopt when a and b are disconnected.
std::optional<int> shortest_distance(const GoldGraph& graph, const std::string& a, const std::string& b);

/// Directed patterns realizing a distance-2 pair (a, b).
struct Distance2Motifs {
  bool sibling = false;               ///< common parent
  bool couple = false;                ///< common child
  bool grandparent_forward = false;   ///< a -> m -> b
  bool grandparent_backward = false;  ///< b -> m -> a

  [[nodiscard]] bool grandparent() const noexcept { return grandparent_forward || grandparent_backward; }
  [[nodiscard]] bool any() const noexcept { return sibling || couple || grandparent(); }
  friend bool operator==(const Distance2Motifs&, const Distance2Motifs&) = default;
};

/// Throws ContractError unless a and b are exactly at distance 2.
Distance2Motifs classify_distance2(const GoldGraph& graph, const std::string& a, const std::string& b);

/// Smallest k with P(X <= k) >= prob for X ~ Hypergeometric(population,
/// successes, draws).
std::int64_t hypergeom_quantile(std::int64_t population, std::int64_t successes, std::int64_t draws,
                                double prob);

/// Central `level` interval of the proportion of class members among r draws
/// without replacement from N_S items of which round(p_x N_S) are members:
/// [q_{(1-level)/2} / r, q_{(1+level)/2} / r]. r == 0 gives (0, 1).
std::pair<double, double> hypergeom_ci(std::int64_t n_spurious, double p_x, std::int64_t r, double level);

enum class DistanceClass : std::size_t { one, two, three, four, beyond_four, disconnected };
inline constexpr std::size_t kDistanceClasses = 6;
inline constexpr std::array<const char*, kDistanceClasses> kDistanceClassNames = {
    "1", "2", "3", "4", ">4", "disconnected"};

DistanceClass classify_distance(std::optional<int> distance);

struct DistanceRow {
  std::size_t prediction_rank = 0;  ///< rank among evaluable predictions
  std::int64_t fp_count = 0;        ///< r, false positives so far
  std::array<std::int64_t, kDistanceClasses> counts{};
  std::array<double, kDistanceClasses> proportions{};
  std::array<double, kDistanceClasses> ci_lo{};
  std::array<double, kDistanceClasses> ci_hi{};
};

struct MotifRow {
  std::size_t prediction_rank = 0;
  std::int64_t fp_count = 0;
  std::int64_t distance2 = 0;
  std::int64_t siblings = 0;
  std::int64_t couples = 0;
  std::int64_t grandparents = 0;
};

struct DistanceReport {
  /// p_hat per class over every spurious candidate pair.
  std::array<double, kDistanceClasses> baseline{};
  std::array<std::int64_t, kDistanceClasses> baseline_counts{};
  std::int64_t n_spurious = 0;  ///< N_S
  double level = 0.95;
  /// One row per false positive, cumulative over the ranking.
  std::vector<DistanceRow> rows;
  std::vector<MotifRow> motifs;
};

/// Walks the first `max_rank` evaluable predictions, classifying each false
/// positive by its distance on the gold network, and reports cumulative
/// proportions with hypergeometric bands around the spurious-pair baseline.
DistanceReport fp_distance_profile(const EdgeList& predictions, const GoldStandard& gold,
                                   std::size_t max_rank,
                                   const std::optional<CandidateUniverse>& universe = std::nullopt,
                                   double level = 0.95);

void write_distance_report(const DistanceReport& report, const std::filesystem::path& path);
void write_motif_counts(const DistanceReport& report, const std::filesystem::path& path);
void write_distance_baseline(const DistanceReport& report, const std::filesystem::path& path);

}  // namespace tigress
