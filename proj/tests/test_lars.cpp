#include "tigress/errors.hpp"
#include "tigress/lars.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

namespace tigress {
namespace {

using testing::centered;
using testing::random_matrix;

Eigen::MatrixXd orthonormal_centered(Eigen::Index n, Eigen::Index k, std::mt19937_64& gen) {
  const Eigen::MatrixXd a = centered(random_matrix(n, k, gen));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
}

Eigen::VectorXd centered_vector(Eigen::Index n, std::mt19937_64& gen) {
  Eigen::VectorXd y = random_matrix(n, 1, gen).col(0);
  return y.array() - y.mean();
}

// Reference LARS that re-solves the full active Gram system every step and
// scans all candidates for the next crossing time.
std::vector<Eigen::Index> reference_order(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, int steps) {
  const auto k = x.cols();
  std::vector<Eigen::Index> active;
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(x.rows());
  Eigen::VectorXd c = x.transpose() * y;
  Eigen::Index first = 0;
  c.cwiseAbs().maxCoeff(&first);
  active.push_back(first);
  while (static_cast<int>(active.size()) < std::min<int>(steps, k)) {
    c = x.transpose() * (y - mu);
    const auto m = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd xa(x.rows(), m);
    Eigen::VectorXd s(m);
    double big = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      s[i] = c[active[i]] >= 0 ? 1.0 : -1.0;
      xa.col(i) = s[i] * x.col(active[i]);
      big = std::max(big, std::abs(c[active[i]]));
    }
    const Eigen::MatrixXd gram = xa.transpose() * xa;
    const Eigen::VectorXd ginv1 = gram.ldlt().solve(Eigen::VectorXd::Ones(m));
    const double aa = 1.0 / std::sqrt(ginv1.sum());
    const Eigen::VectorXd u = xa * (aa * ginv1);
    const Eigen::VectorXd a = x.transpose() * u;
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index next = -1;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (std::find(active.begin(), active.end(), j) != active.end()) continue;
      for (double g : {(big - c[j]) / (aa - a[j]), (big + c[j]) / (aa + a[j])}) {
        if (g > 1e-14 && g < best) {
          best = g;
          next = j;
        }
      }
    }
    if (next < 0) break;
    mu += best * u;
    active.push_back(next);
  }
  return active;
}

TEST(LarsPath, OrthonormalDesignFollowsCorrelationOrder) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 30, k = 6;
    const auto x = orthonormal_centered(n, k, gen);
    const auto y = centered_vector(n, gen);
    const Eigen::VectorXd corr = x.transpose() * y;
    std::vector<Eigen::Index> expected(k);
    std::iota(expected.begin(), expected.end(), 0);
    std::stable_sort(expected.begin(), expected.end(),
                     [&](auto a, auto b) { return std::abs(corr[a]) > std::abs(corr[b]); });
    const auto path = lars_path(x, y, static_cast<int>(k));
    EXPECT_EQ(path.entry_order, expected);
  }
}

TEST(LarsPath, SingleCandidate) {
  std::mt19937_64 gen(3);
  const auto x = centered(random_matrix(10, 1, gen));
  const auto y = centered_vector(10, gen);
  const auto path = lars_path(x, y, 3);
  EXPECT_EQ(path.entry_order, (std::vector<Eigen::Index>{0}));
  EXPECT_EQ(path.n_steps_completed(), 1);
}

TEST(LarsPath, FullPathReachesLeastSquares) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 20, k = 5;
    const auto x = centered(random_matrix(n, k, gen));
    const auto y = centered_vector(n, gen);
    const auto path = lars_path(x, y, static_cast<int>(k));
    ASSERT_EQ(path.n_steps_completed(), k);
    const Eigen::VectorXd ols = (x.transpose() * x).ldlt().solve(x.transpose() * y);
    const double r_lars = (y - x * path.coefficients).norm();
    const double r_ols = (y - x * ols).norm();
    EXPECT_NEAR(r_lars, r_ols, 1e-6);
    EXPECT_LE((path.coefficients - ols).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(LarsPath, FirstEntryIsMaximalAbsoluteCorrelation) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = centered(random_matrix(15, 8, gen));
    const auto y = centered_vector(15, gen);
    Eigen::Index best = 0;
    (x.transpose() * y).cwiseAbs().maxCoeff(&best);
    EXPECT_EQ(lars_path(x, y, 1).entry_order.front(), best);
  }
}

TEST(LarsPath, MatchesReferenceImplementation) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 25, k = 8;
    const auto x = centered(random_matrix(n, k, gen));
    const auto y = centered_vector(n, gen);
    EXPECT_EQ(lars_path(x, y, 6).entry_order, reference_order(x, y, 6));
  }
}

TEST(LarsPath, TiesGoToLowestIndex) {
  // Columns 1 and 2 are orthogonal with identical correlation to y.
  Eigen::MatrixXd x(4, 3);
  x << 1, 1, 0,  //
      -1, -1, 0,  //
      0, 0, 1,  //
      0, 0, -1;
  x.col(0) *= 0.5;
  Eigen::VectorXd y(4);
  y << 1, -1, 1, -1;
  const auto path = lars_path(x, y, 1);
  EXPECT_EQ(path.entry_order.front(), 1);
}

TEST(LarsPath, ZeroResponseGivesEmptyPath) {
  std::mt19937_64 gen(1);
  const auto x = centered(random_matrix(8, 3, gen));
  const auto path = lars_path(x, Eigen::VectorXd::Zero(8), 3);
  EXPECT_TRUE(path.entry_order.empty());
  EXPECT_TRUE(path.coefficients.isZero(0.0));
}

TEST(LarsPath, RankDeficientDesignStopsEarly) {
  std::mt19937_64 gen(4);
  Eigen::MatrixXd x = centered(random_matrix(12, 3, gen));
  Eigen::MatrixXd dup(12, 4);
  dup << x, x.col(0) * 2.0;
  const auto y = centered_vector(12, gen);
  const auto path = lars_path(dup, y, 4);
  EXPECT_LE(path.n_steps_completed(), 3);
  std::vector<Eigen::Index> sorted = path.entry_order;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
}

TEST(LarsPath, MoreColumnsThanRowsIsBoundedByRank) {
  std::mt19937_64 gen(8);
  const auto x = centered(random_matrix(6, 10, gen));
  const auto y = centered_vector(6, gen);
  const auto path = lars_path(x, y, 10);
  // Centering leaves rank n - 1.
  EXPECT_LE(path.n_steps_completed(), 5);
  EXPECT_GE(path.n_steps_completed(), 1);
}

TEST(LarsPath, ZeroColumnNeverEnters) {
  std::mt19937_64 gen(12);
  Eigen::MatrixXd x = centered(random_matrix(10, 3, gen));
  x.col(1).setZero();
  const auto y = centered_vector(10, gen);
  const auto path = lars_path(x, y, 3);
  EXPECT_EQ(std::count(path.entry_order.begin(), path.entry_order.end(), 1), 0);
  EXPECT_EQ(path.n_steps_completed(), 2);
}

TEST(LarsPath, RejectsBadInput) {
  std::mt19937_64 gen(2);
  const auto x = centered(random_matrix(6, 2, gen));
  const auto y = centered_vector(6, gen);
  Eigen::MatrixXd shifted = x;
  shifted.col(1).array() += 1.0;
  EXPECT_THROW(lars_path(shifted, y, 2), ContractError);
  EXPECT_THROW(lars_path(x, Eigen::VectorXd(y.array() + 1.0), 2), ContractError);
  Eigen::MatrixXd bad = x;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(lars_path(bad, y, 2), NumericError);
  EXPECT_THROW(lars_path(x, y, 0), ParameterError);
  EXPECT_THROW(lars_path(x.topRows(1), y.head(1), 1), ParameterError);
}

TEST(LarsPathProperties, InvariancesOnRandomInstances) {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> cols(2, 9);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index k = cols(gen), n = 30;
    const auto x = centered(random_matrix(n, k, gen));
    const auto y = centered_vector(n, gen);
    const int steps = static_cast<int>(k);
    const auto base = lars_path(x, y, steps).entry_order;

    const Eigen::VectorXd scaled = y * scale(gen);
    EXPECT_EQ(lars_path(x, scaled, steps).entry_order, base);

    Eigen::MatrixXd flipped = x;
    const auto j = static_cast<Eigen::Index>(gen() % k);
    flipped.col(j) *= -1.0;
    EXPECT_EQ(lars_path(flipped, y, steps).entry_order, base);

    std::vector<Eigen::Index> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Eigen::MatrixXd permuted(n, k);
    for (Eigen::Index c = 0; c < k; ++c) permuted.col(c) = x.col(perm[c]);
    std::vector<Eigen::Index> mapped;
    for (auto e : lars_path(permuted, y, steps).entry_order) mapped.push_back(perm[e]);
    EXPECT_EQ(mapped, base);

    for (int l = 1; l < steps; ++l) {
      const auto shorter = lars_path(x, y, l).entry_order;
      ASSERT_EQ(static_cast<int>(shorter.size()), l);
      EXPECT_TRUE(std::equal(shorter.begin(), shorter.end(), base.begin()));
    }
  }
}

}  // namespace
}  // namespace tigress
