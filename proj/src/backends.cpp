#include "qrbpn/backends.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qrbpn {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_probability(double q, const char* name) {
  if (!std::isfinite(q) || q < 0.0 || q >= 0.5)
    throw std::invalid_argument(std::string(name) + " must lie in [0, 0.5)");
}

OutcomeProbabilities apply_readout(double p_plus, double p_minus, double q_plus, double q_minus) {
  return {(1.0 - q_plus) * p_plus + q_minus * p_minus, q_plus * p_plus + (1.0 - q_minus) * p_minus};
}

std::uint64_t draw_binomial(std::mt19937_64& rng, std::uint64_t shots, double p_plus) {
  if (p_plus <= 0.0) return 0;
  if (p_plus >= 1.0) return shots;
  std::binomial_distribution<std::uint64_t> dist(shots, p_plus);
  return dist(rng);
}

void check_shots(std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("sample request needs at least one shot");
}

}  // namespace

ShotCounts::ShotCounts(std::uint64_t n_plus, std::uint64_t n_minus)
    : n_plus_(n_plus), n_minus_(n_minus) {
  if (n_plus + n_minus == 0) throw std::invalid_argument("shot counts must total at least 1");
}

void QCNoiseModel::validate() const {
  if (!std::isfinite(angle_scale) || angle_scale <= 0.0)
    throw std::invalid_argument("angle_scale must be > 0");
  if (!std::isfinite(angle_offset)) throw std::invalid_argument("angle_offset must be finite");
  check_probability(flip_from_plus, "flip_from_plus");
  check_probability(flip_from_minus, "flip_from_minus");
}

void QANoiseModel::validate() const {
  if (!std::isfinite(field_scale)) throw std::invalid_argument("field_scale must be finite");
  if (!std::isfinite(field_offset)) throw std::invalid_argument("field_offset must be finite");
  if (!std::isfinite(field_noise_std) || field_noise_std < 0.0)
    throw std::invalid_argument("field_noise_std must be >= 0");
  check_probability(flip, "flip");
}

OutcomeProbabilities qc_outcome(const QubitProgram& program, const QCNoiseModel& noise) {
  const long double theta = noise.angle_scale * program.theta_extended() + noise.angle_offset;
  // Rz(phi) is diagonal, so phi never reaches the Z-basis Born probabilities.
  const long double c = std::cos(theta / 2.0L);
  const long double s = std::sin(theta / 2.0L);
  return apply_readout(double(c * c), double(s * s), noise.flip_from_plus, noise.flip_from_minus);
}

OutcomeProbabilities qa_outcome(double field, const QANoiseModel& noise, double jitter) {
  const double h = noise.field_scale * field + noise.field_offset + jitter;
  const double x = 2.0 * noise.beta_dev.value() * h;
  const double p_plus = 1.0 / (1.0 + std::exp(-x));
  const double p_minus = 1.0 / (1.0 + std::exp(x));
  return apply_readout(p_plus, p_minus, noise.flip, noise.flip);
}

std::mt19937_64 make_stream(std::uint64_t seed, const StreamKey& key) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ key.qubit);
  h = splitmix64(h ^ key.point);
  h = splitmix64(h ^ key.batch);
  h = splitmix64(h ^ key.variant);
  return std::mt19937_64(h);
}

GateSimulator::GateSimulator(QCNoiseModel noise) : noise_(noise) { noise_.validate(); }

OutcomeProbabilities GateSimulator::exact_outcome(const QubitProgram& program) const {
  if (program.model() != Model::gate)
    throw std::invalid_argument("gate simulator requires a gate-model program");
  return qc_outcome(program, noise_);
}

ShotCounts GateSimulator::sample(const SampleRequest& request) const {
  check_shots(request.shots);
  const double p = exact_outcome(request.program).plus;
  auto rng = make_stream(request.seed, request.key);
  const std::uint64_t n_plus = draw_binomial(rng, request.shots, p);
  return {n_plus, request.shots - n_plus};
}

AnnealSimulator::AnnealSimulator(QANoiseModel noise) : noise_(noise) { noise_.validate(); }

OutcomeProbabilities AnnealSimulator::exact_outcome(const QubitProgram& program) const {
  if (program.model() != Model::anneal)
    throw std::invalid_argument("anneal simulator requires an anneal-model program");
  if (noise_.field_noise_std > 0.0)
    throw std::invalid_argument("exact outcome is unavailable with per-shot field jitter");
  return qa_outcome(program.field().value(), noise_);
}

ShotCounts AnnealSimulator::sample(const SampleRequest& request) const {
  check_shots(request.shots);
  if (request.program.model() != Model::anneal)
    throw std::invalid_argument("anneal simulator requires an anneal-model program");
  const double field = request.program.field().value();
  auto rng = make_stream(request.seed, request.key);

  if (noise_.field_noise_std == 0.0) {
    const std::uint64_t n_plus = draw_binomial(rng, request.shots, qa_outcome(field, noise_).plus);
    return {n_plus, request.shots - n_plus};
  }

  std::normal_distribution<double> jitter(0.0, noise_.field_noise_std);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uint64_t n_plus = 0;
  for (std::uint64_t i = 0; i < request.shots; ++i) {
    const double p = qa_outcome(field, noise_, jitter(rng)).plus;
    if (unit(rng) < p) ++n_plus;
  }
  return {n_plus, request.shots - n_plus};
}

Model backend_model(const Backend& backend) {
  return std::holds_alternative<GateSimulator>(backend) ? Model::gate : Model::anneal;
}

std::string_view backend_id(const Backend& backend) {
  return std::visit([](const auto& b) { return b.id(); }, backend);
}

OutcomeProbabilities exact_outcome(const Backend& backend, const QubitProgram& program) {
  return std::visit([&](const auto& b) { return b.exact_outcome(program); }, backend);
}

double exact_mean(const Backend& backend, const QubitProgram& program) {
  return exact_outcome(backend, program).mean();
}

ShotCounts sample(const Backend& backend, const SampleRequest& request) {
  return std::visit([&](const auto& b) { return b.sample(request); }, backend);
}

ShotCounts sample_batched(const Backend& backend, const QubitProgram& program,
                          std::uint64_t total_shots, std::uint64_t batch_size,
                          std::uint64_t seed, StreamKey key) {
  check_shots(total_shots);
  if (batch_size == 0 || batch_size >= total_shots) {
    key.batch = 0;
    return sample(backend, {program, total_shots, seed, key});
  }
  std::uint64_t n_plus = 0;
  std::uint64_t remaining = total_shots;
  for (std::uint64_t batch = 0; remaining > 0; ++batch) {
    const std::uint64_t shots = remaining < batch_size ? remaining : batch_size;
    key.batch = batch;
    n_plus += sample(backend, {program, shots, seed, key}).n_plus();
    remaining -= shots;
  }
  return {n_plus, total_shots - n_plus};
}

}  // namespace qrbpn
