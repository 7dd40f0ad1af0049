#include "qrbpn/protocol.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qrbpn/errors.hpp"
#include "qrbpn/gates.hpp"

namespace qrbpn {

namespace {

// Maps an angle to (-pi, pi]. Rz(a + 2pi) = -Rz(a), so this only moves the
// global phase.
double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(a, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

}  // namespace

Beta::Beta(double value) : value_(value) {
  if (!std::isfinite(value) || value <= 0.0)
    throw std::invalid_argument("beta must be finite and > 0, got " + std::to_string(value));
}

InputField::InputField(double value) : value_(value) {
  if (!std::isfinite(value) || value < -1.0 || value > 1.0)
    throw std::invalid_argument("input field must lie in [-1, 1], got " + std::to_string(value));
}

SweepGrid::SweepGrid(InputField lo, InputField hi, std::size_t count)
    : lo_(lo), hi_(hi), count_(count) {
  if (count < 2) throw std::invalid_argument("sweep grid needs at least 2 points");
  if (!(lo < hi)) throw std::invalid_argument("sweep grid requires lo < hi");
}

SweepGrid default_grid(Model model) {
  return SweepGrid(InputField(-1.0), InputField(1.0),
                   model == Model::gate ? kGateGridPoints : kAnnealGridPoints);
}

QubitProgram QubitProgram::gate(long double theta, double phi) {
  if (!std::isfinite(theta) || theta < 0.0L || theta > std::numbers::pi_v<long double>)
    throw std::invalid_argument("gate program theta must lie in [0, pi]");
  if (!std::isfinite(phi)) throw std::invalid_argument("gate program phi must be finite");
  QubitProgram p;
  p.model_ = Model::gate;
  p.theta_ = theta;
  p.phi_ = phi;
  return p;
}

QubitProgram QubitProgram::anneal(InputField field) {
  QubitProgram p;
  p.model_ = Model::anneal;
  p.field_ = field;
  return p;
}

double QubitProgram::theta() const { return double(theta_extended()); }

long double QubitProgram::theta_extended() const {
  if (model_ != Model::gate) throw std::invalid_argument("anneal program has no theta");
  return theta_;
}

double QubitProgram::phi() const {
  if (model_ != Model::gate) throw std::invalid_argument("anneal program has no phi");
  return phi_;
}

InputField QubitProgram::field() const {
  if (model_ != Model::anneal) throw std::invalid_argument("gate program has no input field");
  return *field_;
}

long double theta_from_hin_extended(double h, Beta beta) {
  if (!std::isfinite(h)) throw std::invalid_argument("theta_from_hin: non-finite input field");
  // arccos(tanh(x)) == 2 atan(exp(-x)); the right side does not cancel near x = +-inf.
  return 2.0L * std::atan(std::exp(-static_cast<long double>(beta.value()) * h));
}

std::vector<InputField> build_sweep(const SweepGrid& grid) {
  const double lo = grid.lo().value();
  const double hi = grid.hi().value();
  const std::size_t n = grid.count();
  std::vector<InputField> points;
  points.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    points.emplace_back(lo + (hi - lo) * double(i) / double(n - 1));
  points.push_back(grid.hi());
  return points;
}

QubitProgram build_gate_program(InputField h, Beta beta, double phi) {
  return QubitProgram::gate(theta_from_hin_extended(h.value(), beta), phi);
}

QubitProgram build_anneal_program(InputField h) { return QubitProgram::anneal(h); }

std::vector<double> phi_sweep(std::size_t count) {
  if (count < 2) throw std::invalid_argument("phi sweep needs at least 2 values");
  std::vector<double> phis(count);
  for (std::size_t i = 0; i < count; ++i)
    phis[i] = 2.0 * std::numbers::pi * double(i) / double(count - 1);
  return phis;
}

NativeGateSequence normalize_to_native(const QubitProgram& program) {
  if (program.model() != Model::gate)
    throw std::invalid_argument("normalize_to_native: not a gate-model program");
  const double theta = program.theta();
  const double phi = program.phi();

  // Rz(phi) Ry(theta) ~ Rz(phi + pi) SX Rz(theta + pi) SX Rz(0)
  const NativeGateSequence seq{{{
      {GateKind::rz, 0.0},
      {GateKind::sx, 0.0},
      {GateKind::rz, wrap_angle(theta + std::numbers::pi)},
      {GateKind::sx, 0.0},
      {GateKind::rz, wrap_angle(phi + std::numbers::pi)},
  }}};

  const double residual = phase_distance(sequence_unitary(seq), program_unitary(theta, phi));
  if (!(residual <= kNativeTolerance))
    throw ConsistencyError("native decomposition residual " + std::to_string(residual) +
                           " exceeds tolerance");
  return seq;
}

}  // namespace qrbpn
