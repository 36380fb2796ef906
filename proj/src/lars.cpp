#include "tigress/lars.hpp"

#include "tigress/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tigress {
namespace {

constexpr double kCenterTolerance = 1e-8;
// Squared sine of the angle between a joining column and the span of the
// active set below which the design is treated as rank-deficient.
constexpr double kRankTolerance = 1e-12;

void check_centered(const Eigen::Ref<const Eigen::VectorXd>& v, const char* what, Eigen::Index j) {
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  if (std::abs(v.mean()) > kCenterTolerance * scale) {
    std::string msg = std::string(what);
    if (j >= 0) msg += " column " + std::to_string(j);
    throw ContractError(msg + " is not centered");
  }
}

// Incrementally maintained upper-triangular factor R with R^T R equal to the
// Gram matrix of the active columns, in entry order.
class ActiveCholesky {
 public:
  explicit ActiveCholesky(Eigen::Index capacity) : r_(capacity, capacity) {}

  [[nodiscard]] Eigen::Index size() const noexcept { return size_; }

  // Returns false when x_new is numerically in the span of the active set.
  bool append(const Eigen::VectorXd& cross, double self) {
    const auto m = size_;
    Eigen::VectorXd z = cross;
    if (m > 0) r_.topLeftCorner(m, m).triangularView<Eigen::Upper>().transpose().solveInPlace(z);
    const double d2 = self - (m > 0 ? z.squaredNorm() : 0.0);
    if (!(d2 > kRankTolerance * self) || !std::isfinite(d2)) return false;
    if (m > 0) r_.col(m).head(m) = z;
    r_.row(m).head(m).setZero();
    r_(m, m) = std::sqrt(d2);
    ++size_;
    return true;
  }

  // Solves (R^T R) x = b.
  [[nodiscard]] Eigen::VectorXd solve(Eigen::VectorXd b) const {
    const auto tri = r_.topLeftCorner(size_, size_).triangularView<Eigen::Upper>();
    tri.transpose().solveInPlace(b);
    tri.solveInPlace(b);
    return b;
  }

 private:
  Eigen::MatrixXd r_;
  Eigen::Index size_ = 0;
};

// Index of the maximal |c_j| over inactive j; ties within the relative
// tolerance go to the lowest index. Returns -1 when all are active.
Eigen::Index argmax_abs(const Eigen::VectorXd& c, const std::vector<char>& active) {
  double best = -1.0;
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (!active[j]) best = std::max(best, std::abs(c[j]));
  if (best < 0.0) return -1;
  const double cutoff = best * (1.0 - kLarsTolerance);
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (!active[j] && std::abs(c[j]) >= cutoff) return j;
  return -1;
}

}  // namespace

LarsPath lars_path(const Eigen::Ref<const Eigen::MatrixXd>& X,
                   const Eigen::Ref<const Eigen::VectorXd>& y, int max_steps) {
  const auto n = X.rows();
  const auto k = X.cols();
  if (n < 2) throw ParameterError("lars_path: need at least 2 observations");
  if (k < 1) throw ParameterError("lars_path: need at least 1 predictor");
  if (max_steps < 1) throw ParameterError("lars_path: steps must be positive");
  if (y.size() != n) throw ParameterError("lars_path: response length differs from row count");
  if (!X.allFinite() || !y.allFinite()) throw NumericError("lars_path: non-finite input");
  check_centered(y, "response", -1);
  for (Eigen::Index j = 0; j < k; ++j) check_centered(X.col(j), "predictor", j);

  LarsPath path;
  path.coefficients = Eigen::VectorXd::Zero(k);

  Eigen::VectorXd residual = y;
  Eigen::VectorXd corr = X.transpose() * residual;
  const double c0 = corr.cwiseAbs().maxCoeff();
  if (!(c0 > 0.0)) return path;

  const auto limit = std::min<Eigen::Index>(max_steps, k);
  std::vector<char> active(static_cast<std::size_t>(k), 0);
  std::vector<Eigen::Index> order;
  ActiveCholesky chol(limit);

  Eigen::Index joining = argmax_abs(corr, active);
  while (joining >= 0) {
    const auto m = chol.size();
    Eigen::VectorXd cross(m);
    for (Eigen::Index i = 0; i < m; ++i) cross[i] = X.col(order[i]).dot(X.col(joining));
    if (!chol.append(cross, X.col(joining).squaredNorm())) break;
    active[joining] = 1;
    order.push_back(joining);
    path.entry_order.push_back(joining);

    // Equiangular direction for the active set, in unsigned coefficients.
    Eigen::VectorXd signs(m + 1);
    double big_c = 0.0;
    for (Eigen::Index i = 0; i <= m; ++i) {
      const double ci = corr[order[i]];
      signs[i] = ci >= 0.0 ? 1.0 : -1.0;
      big_c = std::max(big_c, std::abs(ci));
    }
    const Eigen::VectorXd q = chol.solve(signs);
    const double norm2 = signs.dot(q);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) break;
    const double equi = 1.0 / std::sqrt(norm2);
    const Eigen::VectorXd delta = equi * q;
    Eigen::VectorXd direction = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i <= m; ++i) direction += delta[i] * X.col(order[i]);

    const double full_step = big_c / equi;
    double gamma = full_step;
    Eigen::Index next = -1;
    const bool last = static_cast<Eigen::Index>(order.size()) >= limit;
    if (static_cast<Eigen::Index>(order.size()) < k) {
      const Eigen::VectorXd a = X.transpose() * direction;
      const double denom_floor = kLarsTolerance * equi;
      Eigen::VectorXd candidate = Eigen::VectorXd::Constant(k, std::numeric_limits<double>::infinity());
      for (Eigen::Index j = 0; j < k; ++j) {
        if (active[j]) continue;
        // C - |c_j| >= 0, so only the denominators decide admissibility.
        const double d1 = equi - a[j];
        const double d2 = equi + a[j];
        if (d1 > denom_floor) candidate[j] = std::min(candidate[j], std::max(big_c - corr[j], 0.0) / d1);
        if (d2 > denom_floor) candidate[j] = std::min(candidate[j], std::max(big_c + corr[j], 0.0) / d2);
      }
      const double best = candidate.minCoeff();
      if (std::isfinite(best) && best < full_step * (1.0 - kLarsTolerance)) {
        const double cutoff = best * (1.0 + kLarsTolerance) + std::numeric_limits<double>::min();
        for (Eigen::Index j = 0; j < k; ++j) {
          if (!active[j] && candidate[j] <= cutoff) {
            next = j;
            break;
          }
        }
        gamma = best;
      }
    }
    if (!std::isfinite(gamma) || gamma < 0.0) break;

    for (Eigen::Index i = 0; i <= m; ++i) path.coefficients[order[i]] += gamma * delta[i];
    residual -= gamma * direction;
    if (last || next < 0) break;
    corr = X.transpose() * residual;
    double remaining = 0.0;
    for (auto j : order) remaining = std::max(remaining, std::abs(corr[j]));
    if (remaining <= kLarsTolerance * c0) break;
    joining = next;
  }
  return path;
}

}  // namespace tigress
