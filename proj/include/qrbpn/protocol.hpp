#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace qrbpn {

/// Inverse effective temperature. Links h_in to the target h_eff = beta * h_in.
class Beta {
 public:
  static constexpr double kDefault = 10.0;

  constexpr Beta() = default;
  explicit Beta(double value);

  constexpr double value() const noexcept { return value_; }

 private:
  double value_ = kDefault;
};

/// Programmed input field, restricted to [-1, 1].
class InputField {
 public:
  constexpr InputField() = default;
  explicit InputField(double value);

  constexpr double value() const noexcept { return value_; }

  friend constexpr auto operator<=>(InputField, InputField) = default;

 private:
  double value_ = 0.0;
};

/// Evenly spaced, endpoint-inclusive sweep over h_in.
class SweepGrid {
 public:
  SweepGrid(InputField lo, InputField hi, std::size_t count);

  InputField lo() const noexcept { return lo_; }
  InputField hi() const noexcept { return hi_; }
  std::size_t count() const noexcept { return count_; }
  double spacing() const noexcept { return (hi_.value() - lo_.value()) / double(count_ - 1); }

 private:
  InputField lo_;
  InputField hi_;
  std::size_t count_;
};

enum class Model { gate, anneal };

inline constexpr std::size_t kGateGridPoints = 900;
inline constexpr std::size_t kAnnealGridPoints = 81;

/// Full [-1, 1] sweep with the default point count for the model.
SweepGrid default_grid(Model model);

/// A single-qubit program for either computational model.
///
/// Gate programs prepare Rz(phi) Ry(theta) |0> and measure Z. Anneal programs
/// carry the input field that biases the single spin.
class QubitProgram {
 public:
  static QubitProgram gate(long double theta, double phi = 0.0);
  static QubitProgram anneal(InputField field);

  Model model() const noexcept { return model_; }
  double theta() const;
  /// Theta at the precision it was constructed with. Near theta = pi a double
  /// cannot resolve cos(theta / 2) to better than a few parts in 1e12.
  long double theta_extended() const;
  double phi() const;
  InputField field() const;

 private:
  QubitProgram() = default;

  Model model_ = Model::gate;
  long double theta_ = 0.0L;
  double phi_ = 0.0;
  std::optional<InputField> field_;
};

/// Rotation angle realizing <Z> = tanh(beta * h). Equals arccos(tanh(beta * h)),
/// evaluated in a form that keeps full relative precision as theta -> 0.
long double theta_from_hin_extended(double h, Beta beta);
inline double theta_from_hin(double h, Beta beta) { return double(theta_from_hin_extended(h, beta)); }
inline double theta_from_hin(InputField h, Beta beta) { return theta_from_hin(h.value(), beta); }

std::vector<InputField> build_sweep(const SweepGrid& grid);

QubitProgram build_gate_program(InputField h, Beta beta, double phi = 0.0);
QubitProgram build_anneal_program(InputField h);

/// `count` evenly spaced measurement-plane angles over [0, 2*pi].
std::vector<double> phi_sweep(std::size_t count = 10);

enum class GateKind { rz, sx };

struct NativeGate {
  GateKind kind;
  double angle = 0.0;  // radians, Rz only

  friend bool operator==(const NativeGate&, const NativeGate&) = default;
};

/// Fixed-shape [Rz, SX, Rz, SX, Rz] program, listed in execution order.
struct NativeGateSequence {
  std::array<NativeGate, 5> gates;

  static constexpr std::size_t size() noexcept { return 5; }
  friend bool operator==(const NativeGateSequence&, const NativeGateSequence&) = default;
};

/// Compiles a gate-model program to the 5-gate native form. All five gates are
/// always emitted, including for targets that would reduce to a single Rz.
/// Throws ConsistencyError if the composite misses the target by more than
/// kNativeTolerance (max entry, up to global phase).
NativeGateSequence normalize_to_native(const QubitProgram& program);

inline constexpr double kNativeTolerance = 1e-10;

}  // namespace qrbpn
