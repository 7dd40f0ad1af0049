#pragma once

#include <cstdint>

#include "qrbpn/backends.hpp"
#include "qrbpn/config.hpp"
#include "qrbpn/estimation.hpp"
#include "qrbpn/sweep_file.hpp"

namespace qrbpn {

Backend make_backend(const RunConfig& config, std::uint64_t qubit);
QubitProgram make_program(const RunConfig& config, InputField h);

/// One cell; counts are drawn from the stream (seed, qubit, point, batch,
/// stream_variant).
SweepCell simulate_cell(const RunConfig& config, const Backend& backend, std::uint64_t qubit,
                        std::uint64_t point, InputField h);

/// Runs every (qubit, point) cell of `config` on `config.threads` workers.
/// The result does not depend on the worker count.
SweepFile run_simulation(const RunConfig& config);

/// Convenience for single-qubit studies: simulate and estimate one curve.
ResponseCurve simulate_curve(const RunConfig& config, std::uint64_t qubit);

}  // namespace qrbpn
