#pragma once

#include <cstddef>
#include <string>

#include <Eigen/Core>
#include <Eigen/QR>

#include "qrbpn/estimation.hpp"

namespace qrbpn {

/// Range of h_in treated as the linear operating region.
class FitWindow {
 public:
  static constexpr double kMembershipTolerance = 1e-12;

  constexpr FitWindow() = default;
  FitWindow(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool contains(double h) const noexcept {
    return h >= lo_ - kMembershipTolerance && h <= hi_ + kMembershipTolerance;
  }

 private:
  double lo_ = -0.1;
  double hi_ = 0.1;
};

enum class FitWeighting { unweighted, inverse_variance };

struct LinearFit {
  double response = 0.0;  // slope
  double bias = 0.0;      // intercept
  double rms_residual = 0.0;
  double response_std_error = 0.0;  // propagated from per-point std_error
  std::size_t points = 0;
};

/// Weighted least-squares line y ~ intercept + slope * x. Returns
/// (intercept, slope). `weights` must be positive.
template <typename DerivedX, typename DerivedY, typename DerivedW>
Eigen::Vector2d affine_least_squares(const Eigen::MatrixBase<DerivedX>& x,
                                     const Eigen::MatrixBase<DerivedY>& y,
                                     const Eigen::MatrixBase<DerivedW>& weights) {
  // Centering x keeps the design well conditioned for narrow windows.
  const double x_mean = x.mean();
  const Eigen::VectorXd sqrt_w = weights.cwiseSqrt();
  Eigen::MatrixXd design(x.size(), 2);
  design.col(0) = sqrt_w;
  design.col(1) = sqrt_w.cwiseProduct((x.array() - x_mean).matrix());
  const Eigen::VectorXd rhs = sqrt_w.cwiseProduct(y);
  const Eigen::Vector2d centered = design.colPivHouseholderQr().solve(rhs);
  return {centered[0] - centered[1] * x_mean, centered[1]};
}

/// OLS of h_eff on h_in over the points inside `window`. Throws
/// InsufficientDataError when fewer than 2 points fall inside.
LinearFit fit_response_bias(const ResponseCurve& curve, const FitWindow& window = {},
                            FitWeighting weighting = FitWeighting::unweighted);

struct Saturations {
  double negative;  // minimum observed h_eff
  double positive;  // maximum observed h_eff
};

Saturations saturations(const ResponseCurve& curve);

struct QubitMetrics {
  std::string chip_id;
  std::string qubit_id;
  double response = 0.0;
  double bias = 0.0;
  double neg_saturation = 0.0;
  double pos_saturation = 0.0;
  std::size_t fit_points = 0;
  double fit_rms_residual = 0.0;
  std::size_t clamped_points = 0;
};

QubitMetrics metrics_for_qubit(const ResponseCurve& curve, const FitWindow& window = {},
                               std::string chip_id = {}, std::string qubit_id = {},
                               FitWeighting weighting = FitWeighting::unweighted);

}  // namespace qrbpn
