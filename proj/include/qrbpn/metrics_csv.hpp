#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrbpn/metrics.hpp"
#include "qrbpn/reporting.hpp"
#include "qrbpn/sweep_file.hpp"

namespace qrbpn {

/// One line of a metrics CSV: either metrics or a per-qubit error.
struct MetricsRow {
  QubitMetrics metrics;
  std::optional<std::string> error;
};

struct FitOptions {
  std::optional<FitWindow> window;  // falls back to the sweep's configured window
  FitWeighting weighting = FitWeighting::unweighted;
};

/// Fits every qubit in the sweep. Qubits whose window holds too few points
/// become error rows instead of aborting the run.
std::vector<MetricsRow> fit_sweep(const SweepFile& file, const FitOptions& options = {});

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

/// qubit,h_in,h_eff,ci_lo,ci_hi,std_error,clamped
void write_curve_csv(std::ostream& out, const SweepFile& file);

/// bin_center,count followed by comment lines with outlier tallies.
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace qrbpn
