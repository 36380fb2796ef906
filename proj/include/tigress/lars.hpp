#pragma once

#include <Eigen/Dense>

#include <vector>

namespace tigress {

/// Variables in the order they joined the LARS active set.
struct LarsPath {
  std::vector<Eigen::Index> entry_order;
  /// Coefficients of the fit reached at the end of the last completed step.
  /// After as many steps as there are columns of a full-rank design this is
  /// the least-squares solution.
  Eigen::VectorXd coefficients;

  [[nodiscard]] Eigen::Index n_steps_completed() const noexcept {
    return static_cast<Eigen::Index>(entry_order.size());
  }
};

/// Relative tolerance for equal correlations, step lengths and the
/// "residual correlation has vanished" test.
inline constexpr double kLarsTolerance = 1e-12;

/// Runs up to `max_steps` steps of plain least angle regression (no lasso
/// drops) of y on the columns of X. Both X and y must be column-centered.
///
/// Step l adds one variable and then moves along the equiangular direction
/// until another variable ties in absolute correlation, or to the
/// least-squares fit of the active set when no further variable can join.
/// Correlation ties go to the lowest column index. The path stops early on
/// a rank-deficient active set, a degenerate step, or a vanishing residual
/// correlation; y == 0 gives an empty path.
///
/// Throws ParameterError on empty/undersized input, NumericError on
/// non-finite values and ContractError on non-centered input.
LarsPath lars_path(const Eigen::Ref<const Eigen::MatrixXd>& X,
                   const Eigen::Ref<const Eigen::VectorXd>& y, int max_steps);

}  // namespace tigress
