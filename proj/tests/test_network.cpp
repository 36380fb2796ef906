#include "tigress/errors.hpp"
#include "tigress/network.hpp"
#include "tigress/synthetic.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace tigress {
namespace {

using testing::TempDir;

ExpressionMatrix make_expr(Eigen::MatrixXd values) {
  ExpressionMatrix expr;
  expr.values = std::move(values);
  for (Eigen::Index j = 0; j < expr.values.cols(); ++j) expr.gene_ids.push_back("G" + std::to_string(j));
  for (Eigen::Index i = 0; i < expr.values.rows(); ++i) expr.sample_ids.push_back("S" + std::to_string(i));
  return expr;
}

RegulatorSet first_k(Eigen::Index k) {
  RegulatorSet tfs;
  tfs.tf_indices.resize(static_cast<std::size_t>(k));
  std::iota(tfs.tf_indices.begin(), tfs.tf_indices.end(), Eigen::Index{0});
  return tfs;
}

StabilityParams small_params() {
  StabilityParams p;
  p.runs = 60;
  p.steps = 2;
  p.seed = 5;
  return p;
}

using Triple = std::tuple<std::string, std::string, double>;

std::set<Triple> triples(const EdgeList& list) {
  std::set<Triple> out;
  for (const auto& e : list.edges) out.emplace(e.tf, e.tg, e.score);
  return out;
}

TEST(InferNetwork, TwoMutualTfs) {
  std::mt19937_64 gen(1);
  const auto expr = make_expr(testing::random_matrix(20, 2, gen));
  const auto edges = infer_network(expr, first_k(2), small_params());
  ASSERT_EQ(edges.size(), 2U);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : edges.edges) pairs.emplace(e.tf, e.tg);
  EXPECT_EQ(pairs, (std::set<std::pair<std::string, std::string>>{{"G0", "G1"}, {"G1", "G0"}}));
}

TEST(InferNetwork, CandidateCountMatchesEnumeration) {
  std::mt19937_64 gen(2);
  for (auto [genes, n_tfs] : {std::pair{5, 1}, {5, 5}, {7, 3}, {10, 4}}) {
    const auto expr = make_expr(testing::random_matrix(12, genes, gen));
    const auto tfs = first_k(n_tfs);
    std::size_t enumerated = 0;
    for (int t = 0; t < n_tfs; ++t)
      for (int g = 0; g < genes; ++g) enumerated += (t != g);
    const auto edges = infer_network(expr, tfs, small_params());
    EXPECT_EQ(edges.size(), enumerated);
    EXPECT_EQ(edges.size(), static_cast<std::size_t>(n_tfs * genes - n_tfs));
    for (const auto& e : edges.edges) EXPECT_NE(e.tf, e.tg);
  }
}

TEST(InferNetwork, ExactDriverRanksFirst) {
  std::mt19937_64 gen(3);
  Eigen::MatrixXd v = testing::random_matrix(50, 8, gen);
  v.col(6) = v.col(2);  // G6 is exactly G2
  const auto edges = infer_network(make_expr(v), first_k(5), small_params());
  EXPECT_EQ(edges.edges.front().tf, "G2");
  EXPECT_EQ(edges.edges.front().tg, "G6");
  EXPECT_EQ(edges.edges.front().score, 1.0);
}

TEST(InferNetwork, SortedWithLexicographicTieBreak) {
  std::mt19937_64 gen(4);
  const auto edges = infer_network(make_expr(testing::random_matrix(30, 6, gen)), first_k(3), small_params());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    const auto& a = edges.edges[i - 1];
    const auto& b = edges.edges[i];
    ASSERT_GE(a.score, b.score);
    if (a.score == b.score) EXPECT_LT(std::tie(a.tf, a.tg), std::tie(b.tf, b.tg));
  }
}

TEST(InferNetwork, GeneOrderInvariance) {
  SyntheticSpec spec;
  spec.genes = 15;
  spec.tfs = 4;
  spec.samples = 40;
  spec.edges = 15;
  spec.seed = 11;
  const auto data = generate_synthetic(spec);
  RegulatorSet tfs = first_k(4);
  const auto base = infer_network(data.expr, tfs, small_params());

  std::vector<Eigen::Index> perm(15);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 gen(6);
  std::shuffle(perm.begin(), perm.end(), gen);
  ExpressionMatrix shuffled = data.expr;
  RegulatorSet shuffled_tfs;
  for (Eigen::Index j = 0; j < 15; ++j) {
    shuffled.values.col(j) = data.expr.values.col(perm[j]);
    shuffled.gene_ids[j] = data.expr.gene_ids[perm[j]];
    if (perm[j] < 4) shuffled_tfs.tf_indices.push_back(j);
  }
  const auto moved = infer_network(shuffled, shuffled_tfs, small_params());
  EXPECT_EQ(triples(moved), triples(base));
  EXPECT_EQ(moved.edges, base.edges);
}

TEST(InferNetwork, UnrelatedGeneEditLeavesScoresUnchanged) {
  std::mt19937_64 gen(7);
  Eigen::MatrixXd v = testing::random_matrix(30, 7, gen);
  const auto base = infer_network(make_expr(v), first_k(3), small_params());
  v.col(5) = testing::random_matrix(30, 1, gen).col(0) * 4.0;
  const auto edited = infer_network(make_expr(v), first_k(3), small_params());
  std::map<std::pair<std::string, std::string>, double> before, after;
  for (const auto& e : base.edges) before[{e.tf, e.tg}] = e.score;
  for (const auto& e : edited.edges) after[{e.tf, e.tg}] = e.score;
  for (const auto& [key, score] : before)
    if (key.second != "G5") EXPECT_EQ(after.at(key), score) << key.first << "->" << key.second;
}

TEST(InferNetwork, ThreadCountInvariance) {
  SyntheticSpec spec;
  spec.genes = 20;
  spec.tfs = 5;
  spec.samples = 30;
  spec.edges = 20;
  const auto data = generate_synthetic(spec);
  const auto one = infer_network(data.expr, first_k(5), small_params(), 1);
  for (int threads : {2, 4, 8}) EXPECT_EQ(infer_network(data.expr, first_k(5), small_params(), threads).edges, one.edges);
}

TEST(InferNetwork, ZeroVarianceTargetIsSkipped) {
  std::mt19937_64 gen(8);
  Eigen::MatrixXd v = testing::random_matrix(20, 4, gen);
  v.col(3).setConstant(2.5);
  const auto edges = infer_network(make_expr(v), first_k(2), small_params());
  EXPECT_EQ(edges.size(), 2U + 2U);  // G0<->G1 plus targets G2 only
  for (const auto& e : edges.edges) EXPECT_NE(e.tg, "G3");
}

TEST(InferNetwork, RejectsEmptyTfSet) {
  std::mt19937_64 gen(9);
  EXPECT_THROW(infer_network(make_expr(testing::random_matrix(10, 3, gen)), RegulatorSet{}, small_params()),
               ParameterError);
}

TEST(EdgeListIo, WriteReloadPreservesRanking) {
  TempDir dir;
  EdgeList list;
  list.edges = {{"A", "B", 0.9}, {"A", "C", 0.3}, {"B", "C", 1.0 / 3.0}};
  list.sort();
  write_edge_list(list, dir / "p.tsv");
  const auto back = load_edge_list(dir / "p.tsv");
  EXPECT_EQ(back.edges, list.edges);
  EXPECT_EQ(testing::read_file(dir / "p.tsv").substr(0, 10), "A\tB\t0.9\nB\t");
}

TEST(EdgeListIo, MaxEdgesTruncates) {
  TempDir dir;
  EdgeList list;
  for (int i = 0; i < 50; ++i) list.edges.push_back({"T", "G" + std::to_string(i), 1.0 - i / 100.0});
  write_edge_list(list, dir / "p.tsv", 20);
  EXPECT_EQ(load_edge_list(dir / "p.tsv").size(), 20U);
  write_edge_list(list, dir / "q.tsv", 500);
  EXPECT_EQ(load_edge_list(dir / "q.tsv").size(), 50U);
}

TEST(EdgeListIo, MissingScoresKeepFileOrderAndDuplicatesCollapse) {
  TempDir dir;
  testing::write_file(dir / "p.tsv", "A\tB\nC\tD\nA\tB\nE\tF\n");
  const auto list = load_edge_list(dir / "p.tsv");
  ASSERT_EQ(list.size(), 3U);
  EXPECT_EQ(list.edges[0].tf, "A");
  EXPECT_EQ(list.edges[2].tf, "E");
  EXPECT_GT(list.edges[0].score, list.edges[1].score);
  EXPECT_GT(list.edges[1].score, list.edges[2].score);
}

TEST(EdgeListIo, Errors) {
  TempDir dir;
  EXPECT_THROW(load_edge_list(dir / "missing.tsv"), IoError);
  testing::write_file(dir / "bad.tsv", "A\tB\tnot-a-number\n");
  EXPECT_THROW(load_edge_list(dir / "bad.tsv"), FormatError);
  EXPECT_THROW(write_edge_list(EdgeList{}, dir / "no" / "such" / "dir.tsv"), IoError);
}

}  // namespace
}  // namespace tigress

namespace tigress {
namespace {

TEST(InferFrequencyTables, WideTableReproducesNarrowerRuns) {
  SyntheticSpec spec;
  spec.genes = 12;
  spec.tfs = 4;
  spec.samples = 30;
  spec.edges = 12;
  spec.seed = 3;
  const auto data = generate_synthetic(spec);
  const auto tfs = first_k(4);
  auto params = small_params();
  params.steps = 4;
  const auto tables = infer_frequency_tables(data.expr, tfs, params);
  EXPECT_EQ(tables.size(), 12U);
  for (int l : {1, 2, 3}) {
    for (auto scoring : {Scoring::area, Scoring::original}) {
      auto narrow = params;
      narrow.steps = l;
      narrow.scoring = scoring;
      EXPECT_EQ(edges_from_tables(tables, data.expr.gene_ids, scoring, l).edges,
                infer_network(data.expr, tfs, narrow).edges);
    }
  }
}

}  // namespace
}  // namespace tigress
