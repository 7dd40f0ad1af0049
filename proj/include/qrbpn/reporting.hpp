#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qrbpn/metrics.hpp"

namespace qrbpn {

/// Mean and population (divide-by-n) standard deviation.
struct MetricStat {
  double mean = 0.0;
  double std = 0.0;

  friend bool operator==(const MetricStat&, const MetricStat&) = default;
};

MetricStat population_stat(std::span<const double> values);

struct ChipSummary {
  std::string chip_id;
  std::size_t qubit_count = 0;
  MetricStat response;
  MetricStat bias;
  MetricStat neg_saturation;
  MetricStat pos_saturation;

  friend bool operator==(const ChipSummary&, const ChipSummary&) = default;
};

/// All rows must share one chip_id.
ChipSummary summarize_chip(std::span<const QubitMetrics> metrics);

/// One row over every qubit regardless of chip, labelled `label`.
ChipSummary summarize_pooled(std::span<const QubitMetrics> metrics, std::string label);

/// One summary per distinct chip_id.
std::vector<ChipSummary> summarize_fleet(std::span<const QubitMetrics> metrics);

enum class Metric { response, bias, neg_saturation, pos_saturation };

Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric metric);
double metric_value(const QubitMetrics& m, Metric metric);

struct HistogramSpec {
  Metric metric = Metric::response;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t bins = 10;

  void validate() const;
};

struct HistogramBin {
  double center;
  std::size_t count;
};

/// Bins are half-open [edge_i, edge_{i+1}) except the last, which includes
/// `hi`. Values outside [lo, hi] (and NaN) are tallied as outliers.
struct Histogram {
  std::vector<HistogramBin> bins;
  std::size_t outliers_below = 0;
  std::size_t outliers_above = 0;
  std::size_t outliers_nonfinite = 0;

  std::size_t outliers() const noexcept { return outliers_below + outliers_above + outliers_nonfinite; }
  std::size_t in_range() const noexcept;
};

Histogram histogram(std::span<const double> values, const HistogramSpec& spec);
Histogram histogram(std::span<const QubitMetrics> metrics, const HistogramSpec& spec);

enum class Format { text, csv, json };

/// Throws ConfigError for unknown names.
Format parse_format(std::string_view name);

/// Rows are ordered by descending qubit count, then chip id. Text output
/// rounds to two decimals; CSV and JSON keep full round-trip precision.
std::string render(std::span<const ChipSummary> rows, Format format);

std::vector<ChipSummary> parse_summary_csv(std::string_view text);
std::vector<ChipSummary> parse_summary_json(std::string_view text);

/// "mean ± std" at two decimals, with a typographic minus for negatives.
std::string format_stat(const MetricStat& stat);

/// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);
double parse_exact(std::string_view text);

}  // namespace qrbpn
