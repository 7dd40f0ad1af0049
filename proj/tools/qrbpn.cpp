// qrbpn: single-qubit response/bias/saturation characterization.
//
//   qrbpn simulate       --backend qc-sim --qubits 0-4 --out sweep.jsonl
//   qrbpn fit            sweep.jsonl --out metrics.csv
//   qrbpn report         metrics.csv ... --format text
//   qrbpn export-jobs    --backend qa-sim --out jobs.json
//   qrbpn run-jobs       jobs.json --out results.json
//   qrbpn import-results --jobs jobs.json results.json --out sweep.jsonl
//   qrbpn plot-data      sweep.jsonl | metrics.csv --metric bias --bins -0.3:0.3:30

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrbpn/config.hpp"
#include "qrbpn/errors.hpp"
#include "qrbpn/jobs.hpp"
#include "qrbpn/metrics_csv.hpp"
#include "qrbpn/reporting.hpp"
#include "qrbpn/simulation.hpp"
#include "qrbpn/sweep_file.hpp"

namespace {

using namespace qrbpn;

enum ExitCode : int { kOk = 0, kFailure = 1, kConfig = 2, kSchema = 3, kIntegrity = 4 };

struct ConfigFlags {
  std::string config_file;
  std::string backend;
  double beta = 0.0;
  std::size_t points = 0;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t batch_size = 0;
  std::string qubits;
  std::string noise_file;
  std::string window;
  std::string chip;
  double phi = 0.0;
  bool exact = false;
  std::size_t threads = 1;

  CLI::Option* o_backend = nullptr;
  CLI::Option* o_beta = nullptr;
  CLI::Option* o_points = nullptr;
  CLI::Option* o_shots = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_batch = nullptr;
  CLI::Option* o_qubits = nullptr;
  CLI::Option* o_window = nullptr;
  CLI::Option* o_chip = nullptr;
  CLI::Option* o_phi = nullptr;
  CLI::Option* o_exact = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--config", config_file, "JSON config file (keys mirror the flags)");
    o_backend = app->add_option("--backend", backend, "qc-sim (gate model) or qa-sim (anneal model)");
    o_beta = app->add_option("--beta", beta, "inverse effective temperature (default 10)");
    o_points = app->add_option("--points", points, "sweep points over [-1, 1] (900 gate / 81 anneal)");
    o_shots = app->add_option("--shots", shots, "shots per cell (8192 gate / 5e6 anneal)");
    o_seed = app->add_option("--seed", seed, "RNG seed; QRBPN_SEED overrides");
    o_batch = app->add_option("--batch-size", batch_size, "shots per programming cycle (anneal: 10000)");
    o_qubits = app->add_option("--qubits", qubits, "qubit ids, e.g. 0-4,7");
    app->add_option("--noise-file", noise_file, "JSON noise description");
    o_window = app->add_option("--window", window, "fit window lo:hi (default -0.1:0.1)");
    o_chip = app->add_option("--chip", chip, "chip identifier");
    o_phi = app->add_option("--phi", phi, "measurement-plane angle for gate programs");
    o_exact = app->add_flag("--exact", exact, "closed-form probabilities instead of sampling");
    app->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  }

  RunConfig build() const {
    nlohmann::json j = nlohmann::json::object();
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ConfigError("cannot read config file '" + config_file + "'");
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file: " + std::string(e.what()));
      }
    }
    if (*o_backend) j["backend"] = backend;
    const Model model = parse_backend(j.value("backend", std::string("qc-sim")));
    RunConfig c = config_from_json(j, default_config(model));

    if (!noise_file.empty()) {
      std::ifstream in(noise_file);
      if (!in) throw ConfigError("cannot read noise file '" + noise_file + "'");
      try {
        apply_noise_json(c, nlohmann::json::parse(in));
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("noise file: " + std::string(e.what()));
      }
    }
    if (*o_beta) c.beta = beta;
    if (*o_points) c.points = points;
    if (*o_shots) c.shots = shots;
    if (*o_seed) c.seed = seed;
    if (*o_batch) c.batch_size = batch_size;
    if (*o_qubits) c.qubits = parse_qubit_list(qubits);
    if (*o_window) c.window = parse_window(window);
    if (*o_chip) c.chip_id = chip;
    if (*o_phi) c.phi = phi;
    if (*o_exact) c.exact = exact;
    if (const char* env = std::getenv("QRBPN_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        c.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
      } catch (const std::exception&) {
        throw ConfigError("QRBPN_SEED is not an unsigned integer");
      }
    }
    c.threads = threads;
    c.validate();
    return c;
  }
};

/// Writes to `path`, or stdout for "" / "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  return in;
}

nlohmann::json read_json(const std::string& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string sweep_text(const SweepFile& f) {
  std::ostringstream out;
  write_sweep(out, f);
  return out.str();
}

bool looks_like_sweep(const std::string& path) {
  auto in = open_input(path);
  std::string first;
  std::getline(in, first);
  return !first.empty() && first.front() == '{';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit response, bias and saturation characterization"};
  app.require_subcommand(1);

  ConfigFlags sim_flags;
  std::string sim_out;
  bool timestamp = false;
  auto* simulate = app.add_subcommand("simulate", "sample a sweep on the built-in simulators");
  sim_flags.attach(simulate);
  simulate->add_option("--out", sim_out, "sweep file (JSON lines); default stdout");
  simulate->add_flag("--timestamp", timestamp, "record the creation time in the header");

  std::string fit_in, fit_out, fit_window;
  bool weighted = false;
  auto* fit = app.add_subcommand("fit", "extract per-qubit metrics from a sweep file");
  fit->add_option("sweep", fit_in, "sweep file")->required();
  fit->add_option("--window", fit_window, "fit window lo:hi (default: the sweep's window)");
  fit->add_flag("--weighted", weighted, "inverse-variance weighted regression");
  fit->add_option("--out", fit_out, "metrics CSV; default stdout");

  std::vector<std::string> report_in;
  std::string report_format = "text", report_out, pool_label;
  auto* report = app.add_subcommand("report", "per-chip summary table");
  report->add_option("metrics", report_in, "metrics CSV files")->required();
  report->add_option("--format", report_format, "text, csv or json");
  report->add_option("--pool", pool_label, "add a row pooling every qubit under this label");
  report->add_option("--out", report_out, "output file; default stdout");

  ConfigFlags export_flags;
  std::string export_out;
  auto* export_jobs_cmd = app.add_subcommand("export-jobs", "write a hardware job bundle");
  export_flags.attach(export_jobs_cmd);
  export_jobs_cmd->add_option("--out", export_out, "job bundle JSON; default stdout");

  std::string run_in, run_out;
  auto* run_jobs_cmd = app.add_subcommand("run-jobs", "execute a job bundle on the local simulator");
  run_jobs_cmd->add_option("jobs", run_in, "job bundle")->required();
  run_jobs_cmd->add_option("--out", run_out, "result bundle JSON; default stdout");

  std::string import_jobs, import_results_in, import_out;
  auto* import_cmd = app.add_subcommand("import-results", "validate hardware results into a sweep file");
  import_cmd->add_option("--jobs", import_jobs, "job bundle the results answer")->required();
  import_cmd->add_option("results", import_results_in, "result bundle")->required();
  import_cmd->add_option("--out", import_out, "sweep file; default stdout");

  std::string plot_in, plot_out, plot_metric = "response", plot_bins = "7:13:30";
  auto* plot = app.add_subcommand("plot-data", "plot-ready CSV: curve points or metric histogram");
  plot->add_option("input", plot_in, "sweep file or metrics CSV")->required();
  plot->add_option("--metric", plot_metric, "histogram metric: response, bias, neg_saturation, pos_saturation");
  plot->add_option("--bins", plot_bins, "histogram lo:hi:count");
  plot->add_option("--out", plot_out, "output CSV; default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*simulate) {
      const RunConfig config = sim_flags.build();
      SweepFile file = run_simulation(config);
      if (timestamp) file.created = utc_now();
      emit(sim_out, sweep_text(file));
      return kOk;
    }

    if (*fit) {
      auto in = open_input(fit_in);
      const SweepFile file = read_sweep(in);
      FitOptions options;
      if (!fit_window.empty()) options.window = parse_window(fit_window);
      options.weighting = weighted ? FitWeighting::inverse_variance : FitWeighting::unweighted;
      const auto rows = fit_sweep(file, options);
      std::ostringstream out;
      write_metrics_csv(out, rows);
      emit(fit_out, out.str());
      int rc = kOk;
      for (const auto& r : rows) {
        if (r.error) {
          std::cerr << "qrbpn: qubit " << r.metrics.qubit_id << ": " << *r.error << '\n';
          rc = kFailure;
        }
      }
      return rc;
    }

    if (*report) {
      const Format format = parse_format(report_format);
      std::vector<QubitMetrics> all;
      for (const auto& path : report_in) {
        auto in = open_input(path);
        for (auto& r : read_metrics_csv(in))
          if (!r.error) all.push_back(std::move(r.metrics));
      }
      std::vector<ChipSummary> rows = all.empty() ? std::vector<ChipSummary>{} : summarize_fleet(all);
      if (!pool_label.empty() && !all.empty()) rows.push_back(summarize_pooled(all, pool_label));
      emit(report_out, render(rows, format));
      return kOk;
    }

    if (*export_jobs_cmd) {
      const RunConfig config = export_flags.build();
      emit(export_out, export_jobs(config).dump(1) + '\n');
      return kOk;
    }

    if (*run_jobs_cmd) {
      emit(run_out, run_jobs(read_json(run_in)).dump(1) + '\n');
      return kOk;
    }

    if (*import_cmd) {
      const SweepFile file = import_results(read_json(import_jobs), read_json(import_results_in));
      emit(import_out, sweep_text(file));
      return kOk;
    }

    if (*plot) {
      std::ostringstream out;
      if (looks_like_sweep(plot_in)) {
        auto in = open_input(plot_in);
        write_curve_csv(out, read_sweep(in));
      } else {
        auto in = open_input(plot_in);
        std::vector<QubitMetrics> metrics;
        for (auto& r : read_metrics_csv(in))
          if (!r.error) metrics.push_back(std::move(r.metrics));
        HistogramSpec spec;
        spec.metric = parse_metric(plot_metric);
        const auto first = plot_bins.find(':', 1);
        const auto second = first == std::string::npos ? first : plot_bins.find(':', first + 2);
        if (second == std::string::npos) throw ConfigError("--bins must be lo:hi:count");
        try {
          spec.lo = std::stod(plot_bins.substr(0, first));
          spec.hi = std::stod(plot_bins.substr(first + 1, second - first - 1));
          spec.bins = std::stoul(plot_bins.substr(second + 1));
          spec.validate();
        } catch (const std::logic_error& e) {
          throw ConfigError("--bins: " + std::string(e.what()));
        }
        write_histogram_csv(out, histogram(metrics, spec));
      }
      emit(plot_out, out.str());
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "qrbpn: " << e.what() << '\n';
    return kConfig;
  } catch (const SchemaError& e) {
    std::cerr << "qrbpn: schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const DataIntegrityError& e) {
    std::cerr << "qrbpn: " << e.what() << '\n';
    for (const auto& c : e.cells()) std::cerr << "  " << c << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "qrbpn: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
