#include "qrbpn/metrics_csv.hpp"

#include <istream>
#include <ostream>

#include "qrbpn/csv.hpp"
#include "qrbpn/errors.hpp"

namespace qrbpn {

namespace {

const std::vector<std::string> kMetricsHeader = {
    "chip",       "qubit",      "response",         "bias",           "neg_saturation",
    "pos_saturation", "fit_points", "fit_rms_residual", "clamped_points", "error"};

}  // namespace

std::vector<MetricsRow> fit_sweep(const SweepFile& file, const FitOptions& options) {
  const FitWindow window = options.window.value_or(file.config.window);
  std::vector<MetricsRow> rows;
  for (const auto& [qubit, curve] : curves_from_sweep(file)) {
    MetricsRow row;
    row.metrics.chip_id = file.config.chip_id;
    row.metrics.qubit_id = std::to_string(qubit);
    try {
      row.metrics = metrics_for_qubit(curve, window, file.config.chip_id, std::to_string(qubit),
                                      options.weighting);
    } catch (const InsufficientDataError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
  out << csv::join(kMetricsHeader) << '\n';
  for (const auto& r : rows) {
    const auto& m = r.metrics;
    if (r.error) {
      out << csv::join({m.chip_id, m.qubit_id, "", "", "", "", "", "", "", *r.error}) << '\n';
      continue;
    }
    out << csv::join({m.chip_id, m.qubit_id, format_exact(m.response), format_exact(m.bias),
                      format_exact(m.neg_saturation), format_exact(m.pos_saturation),
                      std::to_string(m.fit_points), format_exact(m.fit_rms_residual),
                      std::to_string(m.clamped_points), ""})
        << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || csv::split(line) != kMetricsHeader)
    throw SchemaError("metrics CSV header mismatch");
  std::vector<MetricsRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != kMetricsHeader.size())
      throw SchemaError("metrics CSV line " + std::to_string(line_no) + " has wrong arity");
    MetricsRow r;
    r.metrics.chip_id = f[0];
    r.metrics.qubit_id = f[1];
    if (!f[9].empty()) {
      r.error = f[9];
    } else {
      try {
        r.metrics.response = parse_exact(f[2]);
        r.metrics.bias = parse_exact(f[3]);
        r.metrics.neg_saturation = parse_exact(f[4]);
        r.metrics.pos_saturation = parse_exact(f[5]);
        r.metrics.fit_points = std::stoull(f[6]);
        r.metrics.fit_rms_residual = parse_exact(f[7]);
        r.metrics.clamped_points = std::stoull(f[8]);
      } catch (const std::logic_error&) {
        throw SchemaError("metrics CSV line " + std::to_string(line_no) + " is malformed");
      }
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_curve_csv(std::ostream& out, const SweepFile& file) {
  out << "qubit,h_in,h_eff,ci_lo,ci_hi,std_error,clamped\n";
  for (const auto& [qubit, curve] : curves_from_sweep(file)) {
    for (const auto& p : curve.points()) {
      const auto& e = p.estimate;
      out << qubit << ',' << format_exact(p.h_in.value()) << ',' << format_exact(e.value) << ','
          << format_exact(e.ci_lo) << ',' << format_exact(e.ci_hi) << ','
          << format_exact(e.std_error) << ',' << (e.clamped ? "true" : "false") << '\n';
    }
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_center,count\n";
  for (const auto& b : h.bins) out << format_exact(b.center) << ',' << b.count << '\n';
  out << "# outliers_below=" << h.outliers_below << '\n';
  out << "# outliers_above=" << h.outliers_above << '\n';
  out << "# outliers_nonfinite=" << h.outliers_nonfinite << '\n';
}

}  // namespace qrbpn
