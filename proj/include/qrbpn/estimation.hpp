#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qrbpn/backends.hpp"
#include "qrbpn/protocol.hpp"

namespace qrbpn {

/// Width of reported confidence intervals, in standard errors (99.7%).
inline constexpr double kConfidenceSigmas = 3.0;

/// Minority-count threshold below which the delta-method interval is
/// widened out to the clamp bound.
inline constexpr double kBoundaryMinorityCount = 5.0;

struct EffectiveFieldEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool clamped = false;  // counts were unanimous
  std::uint64_t shots = 0;
};

/// Largest |h_eff| representable with `shots` samples: ln(2M - 1) / 2, the
/// value produced by unanimous counts under the half-count rule.
double clamp_bound(std::uint64_t shots);

/// h_eff = atanh of the empirical mean spin, with a delta-method standard
/// error. Unanimous counts are replaced by (M - 1/2, 1/2) and flagged.
EffectiveFieldEstimate heff_from_counts(const ShotCounts& counts);

/// Estimate from closed-form outcome probabilities: zero-width interval.
EffectiveFieldEstimate heff_from_exact(const OutcomeProbabilities& outcome, std::uint64_t shots = 0);

struct CurvePoint {
  InputField h_in;
  EffectiveFieldEstimate estimate;
};

struct CurveMetadata {
  std::string backend_id;
  double beta = Beta::kDefault;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// h_eff as a function of h_in, strictly increasing in h_in.
class ResponseCurve {
 public:
  ResponseCurve(std::vector<CurvePoint> points, CurveMetadata metadata = {});

  const std::vector<CurvePoint>& points() const noexcept { return points_; }
  const CurveMetadata& metadata() const noexcept { return metadata_; }
  std::size_t size() const noexcept { return points_.size(); }

  Eigen::VectorXd inputs() const;
  Eigen::VectorXd values() const;
  Eigen::VectorXd std_errors() const;

 private:
  std::vector<CurvePoint> points_;
  CurveMetadata metadata_;
};

/// Sorts by h_in; duplicate h_in values are rejected.
ResponseCurve curve_from_cells(std::span<const std::pair<InputField, ShotCounts>> cells,
                               CurveMetadata metadata = {});
ResponseCurve curve_from_estimates(std::vector<CurvePoint> points, CurveMetadata metadata = {});

}  // namespace qrbpn
