#include "qrbpn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>


#include "qrbpn/errors.hpp"

namespace qrbpn {

FitWindow::FitWindow(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw std::invalid_argument("fit window requires finite lo < hi");
}

LinearFit fit_response_bias(const ResponseCurve& curve, const FitWindow& window,
                            FitWeighting weighting) {
  std::vector<Eigen::Index> inside;
  const auto& pts = curve.points();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (window.contains(pts[i].h_in.value())) inside.push_back(Eigen::Index(i));

  if (inside.size() < 2) {
    std::ostringstream msg;
    msg << "fit window [" << window.lo() << ", " << window.hi() << "] holds " << inside.size()
        << " curve point(s); at least 2 are required";
    throw InsufficientDataError(msg.str());
  }

  const Eigen::Index n = Eigen::Index(inside.size());
  const Eigen::VectorXd x = curve.inputs()(inside);
  const Eigen::VectorXd y = curve.values()(inside);
  const Eigen::VectorXd sigma = curve.std_errors()(inside);

  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  if (weighting == FitWeighting::inverse_variance) {
    if ((sigma.array() <= 0.0).any())
      throw std::invalid_argument("inverse-variance fit needs positive std_error at every point");
    w = sigma.array().square().inverse().matrix();
  }

  const Eigen::Vector2d coef = affine_least_squares(x, y, w);
  const Eigen::VectorXd resid = y - (coef[0] + coef[1] * x.array()).matrix();

  // slope = sum_i c_i y_i; its variance under independent per-point errors.
  const double x_mean_w = x.dot(w) / w.sum();
  const Eigen::VectorXd dx = (x.array() - x_mean_w).matrix();
  const double sxx = dx.cwiseProduct(w).dot(dx);
  const Eigen::VectorXd c = w.cwiseProduct(dx) / sxx;

  LinearFit fit;
  fit.bias = coef[0];
  fit.response = coef[1];
  fit.rms_residual = std::sqrt(resid.squaredNorm() / double(n));
  fit.response_std_error = std::sqrt(c.cwiseProduct(sigma).squaredNorm());
  fit.points = inside.size();
  return fit;
}

Saturations saturations(const ResponseCurve& curve) {
  const Eigen::VectorXd v = curve.values();
  return {v.minCoeff(), v.maxCoeff()};
}

QubitMetrics metrics_for_qubit(const ResponseCurve& curve, const FitWindow& window,
                               std::string chip_id, std::string qubit_id,
                               FitWeighting weighting) {
  const LinearFit fit = fit_response_bias(curve, window, weighting);
  const Saturations sat = saturations(curve);
  QubitMetrics m;
  m.chip_id = std::move(chip_id);
  m.qubit_id = std::move(qubit_id);
  m.response = fit.response;
  m.bias = fit.bias;
  m.neg_saturation = sat.negative;
  m.pos_saturation = sat.positive;
  m.fit_points = fit.points;
  m.fit_rms_residual = fit.rms_residual;
  m.clamped_points = std::size_t(std::count_if(curve.points().begin(), curve.points().end(),
                                               [](const CurvePoint& p) { return p.estimate.clamped; }));
  return m;
}

}  // namespace qrbpn
