#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "qrbpn/protocol.hpp"

namespace qrbpn {

template <typename Scalar>
using Unitary2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
Unitary2<Scalar> rz(Scalar angle) {
  using C = std::complex<Scalar>;
  const Scalar half = angle / Scalar(2);
  Unitary2<Scalar> u;
  u << std::polar(Scalar(1), -half), C(0), C(0), std::polar(Scalar(1), half);
  return u;
}

template <typename Scalar>
Unitary2<Scalar> ry(Scalar angle) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(angle / Scalar(2));
  const Scalar s = sin(angle / Scalar(2));
  Unitary2<Scalar> u;
  u << c, -s, s, c;
  return u;
}

/// Square root of X.
template <typename Scalar>
Unitary2<Scalar> sx() {
  using C = std::complex<Scalar>;
  const Scalar h = Scalar(0.5);
  Unitary2<Scalar> u;
  u << C(h, h), C(h, -h), C(h, -h), C(h, h);
  return u;
}

/// Unitary prepared by a gate-model program: Rz(phi) * Ry(theta).
template <typename Scalar>
Unitary2<Scalar> program_unitary(Scalar theta, Scalar phi) {
  return rz(phi) * ry(theta);
}

template <typename Scalar = double>
Unitary2<Scalar> gate_unitary(const NativeGate& gate) {
  return gate.kind == GateKind::sx ? sx<Scalar>() : rz(Scalar(gate.angle));
}

/// Product of the sequence; later gates multiply on the left.
template <typename Scalar = double>
Unitary2<Scalar> sequence_unitary(const NativeGateSequence& seq) {
  Unitary2<Scalar> u = Unitary2<Scalar>::Identity();
  for (const auto& g : seq.gates) u = gate_unitary<Scalar>(g) * u;
  return u;
}

/// Max-entry distance between two unitaries after aligning the global phase
/// of `b` to `a`.
template <typename DerivedA, typename DerivedB>
typename DerivedA::RealScalar phase_distance(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  using Real = typename DerivedA::RealScalar;
  using C = std::complex<Real>;
  const C overlap = (b.adjoint() * a).trace();
  const C phase = std::abs(overlap) > Real(0) ? overlap / std::abs(overlap) : C(1);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qrbpn
