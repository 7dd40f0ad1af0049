#include "qrbpn/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qrbpn {

double clamp_bound(std::uint64_t shots) {
  if (shots < 2) throw std::invalid_argument("clamp bound needs at least 2 shots");
  return 0.5 * std::log(2.0 * double(shots) - 1.0);
}

EffectiveFieldEstimate heff_from_counts(const ShotCounts& counts) {
  const std::uint64_t shots = counts.total();
  if (shots < 2) throw std::invalid_argument("h_eff estimation needs at least 2 shots");

  const bool unanimous = counts.n_plus() == 0 || counts.n_minus() == 0;
  double n_plus = double(counts.n_plus());
  double n_minus = double(counts.n_minus());
  if (unanimous) {
    n_plus = n_plus == 0.0 ? 0.5 : n_plus - 0.5;
    n_minus = n_minus == 0.0 ? 0.5 : n_minus - 0.5;
  }

  const double m_total = double(shots);
  EffectiveFieldEstimate est;
  est.shots = shots;
  est.clamped = unanimous;
  // atanh(m) with m = (n+ - n-)/M, written as a log ratio; exactly odd under swapping.
  est.value = 0.5 * (std::log(n_plus) - std::log(n_minus));
  // 1/sqrt(M (1 - m^2)) with 1 - m^2 = 4 n+ n- / M^2.
  est.std_error = std::sqrt(m_total) / (2.0 * std::sqrt(n_plus * n_minus));
  est.ci_lo = est.value - kConfidenceSigmas * est.std_error;
  est.ci_hi = est.value + kConfidenceSigmas * est.std_error;

  if (std::min(n_plus, n_minus) < kBoundaryMinorityCount) {
    const double bound = clamp_bound(shots);
    if (n_plus > n_minus)
      est.ci_hi = std::max(est.ci_hi, bound);
    else
      est.ci_lo = std::min(est.ci_lo, -bound);
  }
  return est;
}

EffectiveFieldEstimate heff_from_exact(const OutcomeProbabilities& outcome, std::uint64_t shots) {
  if (!(outcome.plus > 0.0) || !(outcome.minus > 0.0))
    throw std::invalid_argument("exact h_eff requires both outcome probabilities > 0");
  EffectiveFieldEstimate est;
  est.value = 0.5 * (std::log(outcome.plus) - std::log(outcome.minus));
  est.ci_lo = est.ci_hi = est.value;
  est.shots = shots;
  return est;
}

ResponseCurve::ResponseCurve(std::vector<CurvePoint> points, CurveMetadata metadata)
    : points_(std::move(points)), metadata_(std::move(metadata)) {
  if (points_.empty()) throw std::invalid_argument("response curve must be nonempty");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1].h_in < points_[i].h_in))
      throw std::invalid_argument("response curve h_in must be strictly increasing");
}

Eigen::VectorXd ResponseCurve::inputs() const {
  Eigen::VectorXd v(Eigen::Index(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) v[Eigen::Index(i)] = points_[i].h_in.value();
  return v;
}

Eigen::VectorXd ResponseCurve::values() const {
  Eigen::VectorXd v(Eigen::Index(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i) v[Eigen::Index(i)] = points_[i].estimate.value;
  return v;
}

Eigen::VectorXd ResponseCurve::std_errors() const {
  Eigen::VectorXd v(Eigen::Index(points_.size()));
  for (std::size_t i = 0; i < points_.size(); ++i)
    v[Eigen::Index(i)] = points_[i].estimate.std_error;
  return v;
}

ResponseCurve curve_from_estimates(std::vector<CurvePoint> points, CurveMetadata metadata) {
  std::sort(points.begin(), points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.h_in < b.h_in; });
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i - 1].h_in == points[i].h_in)
      throw std::invalid_argument("duplicate h_in value " + std::to_string(points[i].h_in.value()));
  return ResponseCurve(std::move(points), std::move(metadata));
}

ResponseCurve curve_from_cells(std::span<const std::pair<InputField, ShotCounts>> cells,
                               CurveMetadata metadata) {
  std::vector<CurvePoint> points;
  points.reserve(cells.size());
  for (const auto& [h, counts] : cells) points.push_back({h, heff_from_counts(counts)});
  return curve_from_estimates(std::move(points), std::move(metadata));
}

}  // namespace qrbpn
