#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qrbpn/backends.hpp"
#include "qrbpn/metrics.hpp"
#include "qrbpn/protocol.hpp"

namespace qrbpn {

inline constexpr std::uint64_t kGateShots = 8192;
inline constexpr std::uint64_t kAnnealShots = 5'000'000;
inline constexpr std::uint64_t kAnnealNumReads = 10'000;
inline constexpr double kAnnealingTimeMicros = 1.0;

/// Everything needed to reproduce one chip's sweep.
struct RunConfig {
  Model model = Model::gate;
  bool exact = false;
  double beta = Beta::kDefault;
  double h_lo = -1.0;
  double h_hi = 1.0;
  std::size_t points = kGateGridPoints;
  std::uint64_t shots = kGateShots;
  std::uint64_t batch_size = 0;  // 0: one batch per cell
  std::uint64_t seed = 0;
  std::uint64_t stream_variant = 0;
  std::vector<std::uint64_t> qubits{0};
  FitWindow window{};
  double phi = 0.0;
  std::string chip_id = "sim";
  double annealing_time_us = kAnnealingTimeMicros;

  QCNoiseModel qc_noise{};
  QANoiseModel qa_noise{};
  bool qa_beta_dev_set = false;  // otherwise the device runs at `beta`
  std::map<std::uint64_t, QCNoiseModel> qc_overrides;
  std::map<std::uint64_t, QANoiseModel> qa_overrides;

  std::size_t threads = 1;  // not part of the echoed config

  SweepGrid grid() const;
  QCNoiseModel qc_noise_for(std::uint64_t qubit) const;
  QANoiseModel qa_noise_for(std::uint64_t qubit) const;

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

RunConfig default_config(Model model);

std::string_view backend_name(Model model);
/// Accepts qc-sim / gate and qa-sim / anneal.
Model parse_backend(std::string_view name);

/// "lo:hi" -> FitWindow.
FitWindow parse_window(std::string_view text);
/// "0,1,5" or "0-4" or a mix such as "0-2,7".
std::vector<std::uint64_t> parse_qubit_list(std::string_view text);

/// Config echo stored in sweep files and job bundles.
nlohmann::json config_to_json(const RunConfig& config);

/// Applies the keys present in `j` on top of `base`. Keys mirror the CLI
/// flags: backend, exact, beta, h_lo, h_hi, points, shots, batch_size, seed,
/// stream_variant, qubits, window, phi, chip, annealing_time_us, noise,
/// qubit_noise.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base);

/// Noise file: {"default": {...}, "qubits": {"<id>": {...}}}. Fields are the
/// QC or QA noise fields of the configured model.
void apply_noise_json(RunConfig& config, const nlohmann::json& j);

}  // namespace qrbpn
