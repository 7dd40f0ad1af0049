#include "qrbpn/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "qrbpn/csv.hpp"
#include "qrbpn/errors.hpp"

namespace qrbpn {

namespace {

constexpr std::string_view kMinus = "−";

const std::vector<std::string> kSummaryCsvHeader = {
    "chip",          "qubits",          "response_mean",       "response_std",
    "bias_mean",     "bias_std",        "neg_saturation_mean", "neg_saturation_std",
    "pos_saturation_mean", "pos_saturation_std"};

ChipSummary summarize(std::span<const QubitMetrics> metrics, std::string label) {
  if (metrics.empty()) throw std::invalid_argument("cannot summarize an empty metrics list");
  const auto column = [&](Metric which) {
    std::vector<double> v;
    v.reserve(metrics.size());
    for (const auto& m : metrics) v.push_back(metric_value(m, which));
    return population_stat(v);
  };
  ChipSummary s;
  s.chip_id = std::move(label);
  s.qubit_count = metrics.size();
  s.response = column(Metric::response);
  s.bias = column(Metric::bias);
  s.neg_saturation = column(Metric::neg_saturation);
  s.pos_saturation = column(Metric::pos_saturation);
  return s;
}

std::vector<ChipSummary> ordered(std::span<const ChipSummary> rows) {
  std::vector<ChipSummary> out(rows.begin(), rows.end());
  std::stable_sort(out.begin(), out.end(), [](const ChipSummary& a, const ChipSummary& b) {
    if (a.qubit_count != b.qubit_count) return a.qubit_count > b.qubit_count;
    return a.chip_id < b.chip_id;
  });
  return out;
}

std::size_t display_width(std::string_view s) {
  // UTF-8 continuation bytes do not start a code point.
  return std::size_t(std::count_if(s.begin(), s.end(),
                                   [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(std::string_view s, std::size_t width, bool right_align) {
  const std::size_t w = display_width(s);
  const std::string fill(width > w ? width - w : 0, ' ');
  return right_align ? fill + std::string(s) : std::string(s) + fill;
}

std::string render_text(const std::vector<ChipSummary>& rows) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Chip", "Qubits", "Response", "Bias", "Negative S.", "Positive S."});
  for (const auto& r : rows)
    table.push_back({r.chip_id, std::to_string(r.qubit_count), format_stat(r.response),
                     format_stat(r.bias), format_stat(r.neg_saturation),
                     format_stat(r.pos_saturation)});

  std::vector<std::size_t> widths(table.front().size(), 0);
  for (const auto& row : table)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], display_width(row[c]));

  std::ostringstream out;
  const auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += " | ";
      line += pad(row[c], widths[c], c == 1);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit(table.front());
  std::string rule;
  for (std::size_t c = 0; c < widths.size(); ++c) {
    if (c > 0) rule += "-+-";
    rule += std::string(widths[c], '-');
  }
  out << rule << '\n';
  for (std::size_t i = 1; i < table.size(); ++i) emit(table[i]);
  return out.str();
}

std::string render_csv(const std::vector<ChipSummary>& rows) {
  std::string out = csv::join(kSummaryCsvHeader) + '\n';
  for (const auto& r : rows) {
    out += csv::join({r.chip_id, std::to_string(r.qubit_count), format_exact(r.response.mean),
                      format_exact(r.response.std), format_exact(r.bias.mean),
                      format_exact(r.bias.std), format_exact(r.neg_saturation.mean),
                      format_exact(r.neg_saturation.std), format_exact(r.pos_saturation.mean),
                      format_exact(r.pos_saturation.std)});
    out += '\n';
  }
  return out;
}

nlohmann::json stat_json(const MetricStat& s) { return {{"mean", s.mean}, {"std", s.std}}; }
MetricStat stat_from_json(const nlohmann::json& j) {
  return {j.at("mean").get<double>(), j.at("std").get<double>()};
}

std::string render_json(const std::vector<ChipSummary>& rows) {
  nlohmann::json j = {{"schema", "qrbpn.summary"}, {"version", "1.0"}, {"rows", nlohmann::json::array()}};
  for (const auto& r : rows)
    j["rows"].push_back({{"chip", r.chip_id},
                         {"qubits", r.qubit_count},
                         {"response", stat_json(r.response)},
                         {"bias", stat_json(r.bias)},
                         {"neg_saturation", stat_json(r.neg_saturation)},
                         {"pos_saturation", stat_json(r.pos_saturation)}});
  return j.dump(2) + '\n';
}

}  // namespace

MetricStat population_stat(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("statistic of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / double(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / double(values.size()))};
}

ChipSummary summarize_chip(std::span<const QubitMetrics> metrics) {
  if (metrics.empty()) throw std::invalid_argument("cannot summarize an empty metrics list");
  const std::string& chip = metrics.front().chip_id;
  for (const auto& m : metrics)
    if (m.chip_id != chip)
      throw std::invalid_argument("summarize_chip: mixed chip ids '" + chip + "' and '" +
                                  m.chip_id + "'");
  return summarize(metrics, chip);
}

ChipSummary summarize_pooled(std::span<const QubitMetrics> metrics, std::string label) {
  return summarize(metrics, std::move(label));
}

std::vector<ChipSummary> summarize_fleet(std::span<const QubitMetrics> metrics) {
  std::map<std::string, std::vector<QubitMetrics>> by_chip;
  for (const auto& m : metrics) by_chip[m.chip_id].push_back(m);
  std::vector<ChipSummary> out;
  for (const auto& [chip, rows] : by_chip) out.push_back(summarize_chip(rows));
  return ordered(out);
}

Metric parse_metric(std::string_view name) {
  if (name == "response") return Metric::response;
  if (name == "bias") return Metric::bias;
  if (name == "neg_saturation" || name == "negative") return Metric::neg_saturation;
  if (name == "pos_saturation" || name == "positive") return Metric::pos_saturation;
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

std::string_view metric_name(Metric metric) {
  switch (metric) {
    case Metric::response: return "response";
    case Metric::bias: return "bias";
    case Metric::neg_saturation: return "neg_saturation";
    case Metric::pos_saturation: return "pos_saturation";
  }
  return "";
}

double metric_value(const QubitMetrics& m, Metric metric) {
  switch (metric) {
    case Metric::response: return m.response;
    case Metric::bias: return m.bias;
    case Metric::neg_saturation: return m.neg_saturation;
    case Metric::pos_saturation: return m.pos_saturation;
  }
  return 0.0;
}

void HistogramSpec::validate() const {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw std::invalid_argument("histogram range requires finite lo < hi");
}

std::size_t Histogram::in_range() const noexcept {
  std::size_t n = 0;
  for (const auto& b : bins) n += b.count;
  return n;
}

Histogram histogram(std::span<const double> values, const HistogramSpec& spec) {
  spec.validate();
  const double width = (spec.hi - spec.lo) / double(spec.bins);
  Histogram h;
  h.bins.resize(spec.bins);
  for (std::size_t i = 0; i < spec.bins; ++i) h.bins[i] = {spec.lo + (double(i) + 0.5) * width, 0};
  for (double v : values) {
    if (!std::isfinite(v)) {
      ++h.outliers_nonfinite;
    } else if (v < spec.lo) {
      ++h.outliers_below;
    } else if (v > spec.hi) {
      ++h.outliers_above;
    } else {
      auto idx = std::size_t((v - spec.lo) / width);
      ++h.bins[std::min(idx, spec.bins - 1)].count;
    }
  }
  return h;
}

Histogram histogram(std::span<const QubitMetrics> metrics, const HistogramSpec& spec) {
  std::vector<double> values;
  values.reserve(metrics.size());
  for (const auto& m : metrics) values.push_back(metric_value(m, spec.metric));
  return histogram(values, spec);
}

Format parse_format(std::string_view name) {
  if (name == "text" || name == "table") return Format::text;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("unknown output format '" + std::string(name) + "' (expected text, csv or json)");
}

std::string render(std::span<const ChipSummary> rows, Format format) {
  const auto sorted = ordered(rows);
  switch (format) {
    case Format::text: return render_text(sorted);
    case Format::csv: return render_csv(sorted);
    case Format::json: return render_json(sorted);
  }
  throw ConfigError("unknown output format");
}

std::vector<ChipSummary> parse_summary_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || csv::split(line) != kSummaryCsvHeader)
    throw SchemaError("summary CSV header mismatch");
  std::vector<ChipSummary> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != kSummaryCsvHeader.size()) throw SchemaError("summary CSV row has wrong arity");
    ChipSummary s;
    s.chip_id = f[0];
    s.qubit_count = std::stoull(f[1]);
    s.response = {parse_exact(f[2]), parse_exact(f[3])};
    s.bias = {parse_exact(f[4]), parse_exact(f[5])};
    s.neg_saturation = {parse_exact(f[6]), parse_exact(f[7])};
    s.pos_saturation = {parse_exact(f[8]), parse_exact(f[9])};
    rows.push_back(std::move(s));
  }
  return rows;
}

std::vector<ChipSummary> parse_summary_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("schema", "") != "qrbpn.summary") throw SchemaError("not a summary document");
  std::vector<ChipSummary> rows;
  for (const auto& r : j.at("rows")) {
    ChipSummary s;
    s.chip_id = r.at("chip").get<std::string>();
    s.qubit_count = r.at("qubits").get<std::size_t>();
    s.response = stat_from_json(r.at("response"));
    s.bias = stat_from_json(r.at("bias"));
    s.neg_saturation = stat_from_json(r.at("neg_saturation"));
    s.pos_saturation = stat_from_json(r.at("pos_saturation"));
    rows.push_back(std::move(s));
  }
  return rows;
}

std::string format_stat(const MetricStat& stat) {
  const auto two = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    if (!s.empty() && s.front() == '-') s = std::string(kMinus) + s.substr(1);
    return s;
  };
  return two(stat.mean) + " ± " + two(stat.std);
}

std::string format_exact(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("failed to format number");
  return std::string(buf, end);
}

double parse_exact(std::string_view text) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw SchemaError("malformed number '" + std::string(text) + "'");
  return value;
}

}  // namespace qrbpn
