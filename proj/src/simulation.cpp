#include "qrbpn/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qrbpn {

Backend make_backend(const RunConfig& config, std::uint64_t qubit) {
  if (config.model == Model::gate) return GateSimulator(config.qc_noise_for(qubit));
  return AnnealSimulator(config.qa_noise_for(qubit));
}

QubitProgram make_program(const RunConfig& config, InputField h) {
  if (config.model == Model::gate) return build_gate_program(h, Beta(config.beta), config.phi);
  return build_anneal_program(h);
}

SweepCell simulate_cell(const RunConfig& config, const Backend& backend, std::uint64_t qubit,
                        std::uint64_t point, InputField h) {
  SweepCell cell;
  cell.qubit = qubit;
  cell.point = point;
  cell.h_in = h.value();
  const QubitProgram program = make_program(config, h);
  if (config.exact) {
    cell.exact = exact_outcome(backend, program);
  } else {
    const StreamKey key{qubit, point, 0, config.stream_variant};
    cell.counts = sample_batched(backend, program, config.shots, config.batch_size, config.seed, key);
  }
  return cell;
}

SweepFile run_simulation(const RunConfig& config) {
  config.validate();
  const auto sweep = build_sweep(config.grid());
  std::vector<Backend> backends;
  backends.reserve(config.qubits.size());
  for (std::uint64_t q : config.qubits) backends.push_back(make_backend(config, q));

  const std::size_t per_qubit = sweep.size();
  const std::size_t total = per_qubit * config.qubits.size();
  SweepFile file;
  file.config = config;
  file.cells.resize(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    try {
      for (std::size_t i = next++; i < total; i = next++) {
        const std::size_t qi = i / per_qubit;
        const std::size_t pi = i % per_qubit;
        file.cells[i] = simulate_cell(config, backends[qi], config.qubits[qi], pi, sweep[pi]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = total;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(total, 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return file;
}

ResponseCurve simulate_curve(const RunConfig& config, std::uint64_t qubit) {
  RunConfig single = config;
  single.qubits = {qubit};
  const SweepFile file = run_simulation(single);
  return std::move(curves_from_sweep(file).front().second);
}

}  // namespace qrbpn
