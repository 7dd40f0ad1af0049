#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <variant>

#include "qrbpn/protocol.hpp"

namespace qrbpn {

/// Tally of +1 / -1 observations for one (qubit, h_in) cell.
class ShotCounts {
 public:
  ShotCounts(std::uint64_t n_plus, std::uint64_t n_minus);

  std::uint64_t n_plus() const noexcept { return n_plus_; }
  std::uint64_t n_minus() const noexcept { return n_minus_; }
  std::uint64_t total() const noexcept { return n_plus_ + n_minus_; }

  ShotCounts& operator+=(const ShotCounts& other) noexcept {
    n_plus_ += other.n_plus_;
    n_minus_ += other.n_minus_;
    return *this;
  }
  friend bool operator==(const ShotCounts&, const ShotCounts&) = default;

 private:
  std::uint64_t n_plus_;
  std::uint64_t n_minus_;
};

/// P(sigma = +1) and P(sigma = -1), each evaluated directly so that neither
/// is formed as 1 minus the other.
struct OutcomeProbabilities {
  double plus;
  double minus;

  double mean() const noexcept { return plus - minus; }
};

/// Gate-model imperfections: rotation miscalibration plus asymmetric readout
/// flips (SPAM).
struct QCNoiseModel {
  double angle_scale = 1.0;
  double angle_offset = 0.0;
  double flip_from_plus = 0.0;   // report -1 given true +1
  double flip_from_minus = 0.0;  // report +1 given true -1

  void validate() const;
};

/// Annealer imperfections: device temperature, field scale/offset, per-shot
/// field jitter, symmetric readout flips (ICE).
struct QANoiseModel {
  Beta beta_dev{};
  double field_scale = 1.0;
  double field_offset = 0.0;
  double field_noise_std = 0.0;
  double flip = 0.0;

  void validate() const;
};

OutcomeProbabilities qc_outcome(const QubitProgram& program, const QCNoiseModel& noise);
OutcomeProbabilities qa_outcome(double field, const QANoiseModel& noise, double jitter = 0.0);

inline double qc_outcome_probability(const QubitProgram& program, const QCNoiseModel& noise) {
  return qc_outcome(program, noise).plus;
}
inline double qa_outcome_probability(double field, const QANoiseModel& noise, double jitter = 0.0) {
  return qa_outcome(field, noise, jitter).plus;
}

/// Identifies an independent random stream. `batch` separates repeated
/// programming cycles of one cell; `variant` separates otherwise identical
/// runs (e.g. different measurement planes).
struct StreamKey {
  std::uint64_t qubit = 0;
  std::uint64_t point = 0;
  std::uint64_t batch = 0;
  std::uint64_t variant = 0;
};

/// Generator for (seed, key). Depends on nothing else.
std::mt19937_64 make_stream(std::uint64_t seed, const StreamKey& key);

struct SampleRequest {
  QubitProgram program;
  std::uint64_t shots;
  std::uint64_t seed;
  StreamKey key;
};

class GateSimulator {
 public:
  explicit GateSimulator(QCNoiseModel noise = {});

  std::string_view id() const noexcept { return "qc-sim"; }
  const QCNoiseModel& noise() const noexcept { return noise_; }

  OutcomeProbabilities exact_outcome(const QubitProgram& program) const;
  double exact_mean(const QubitProgram& program) const { return exact_outcome(program).mean(); }
  ShotCounts sample(const SampleRequest& request) const;

 private:
  QCNoiseModel noise_;
};

class AnnealSimulator {
 public:
  explicit AnnealSimulator(QANoiseModel noise = {});

  std::string_view id() const noexcept { return "qa-sim"; }
  const QANoiseModel& noise() const noexcept { return noise_; }

  /// Throws std::invalid_argument when field jitter is enabled.
  OutcomeProbabilities exact_outcome(const QubitProgram& program) const;
  double exact_mean(const QubitProgram& program) const { return exact_outcome(program).mean(); }
  ShotCounts sample(const SampleRequest& request) const;

 private:
  QANoiseModel noise_;
};

using Backend = std::variant<GateSimulator, AnnealSimulator>;

Model backend_model(const Backend& backend);
std::string_view backend_id(const Backend& backend);
OutcomeProbabilities exact_outcome(const Backend& backend, const QubitProgram& program);
double exact_mean(const Backend& backend, const QubitProgram& program);
ShotCounts sample(const Backend& backend, const SampleRequest& request);

/// Draws `total_shots` as consecutive batches of at most `batch_size` shots,
/// each from its own stream (batch index folded into the key). A batch size
/// of 0 means a single batch.
ShotCounts sample_batched(const Backend& backend, const QubitProgram& program,
                          std::uint64_t total_shots, std::uint64_t batch_size,
                          std::uint64_t seed, StreamKey key);

}  // namespace qrbpn
