// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qrbpn/backends.hpp"
#include "qrbpn/estimation.hpp"
#include "qrbpn/gates.hpp"
#include "qrbpn/metrics.hpp"
#include "qrbpn/metrics_csv.hpp"
#include "qrbpn/protocol.hpp"
#include "qrbpn/reporting.hpp"
#include "qrbpn/simulation.hpp"

using namespace qrbpn;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

RunConfig gate_config(std::size_t points, bool exact) {
  RunConfig c = default_config(Model::gate);
  c.points = points;
  c.exact = exact;
  c.seed = 20211005;
  return c;
}

RunConfig anneal_config(std::size_t points, bool exact) {
  RunConfig c = default_config(Model::anneal);
  c.points = points;
  c.exact = exact;
  c.seed = 20211005;
  return c;
}

Outcome ideal_linearity() {
  const auto t0 = Clock::now();
  const auto fit = fit_response_bias(simulate_curve(gate_config(101, true), 0));
  const double dt = seconds_since(t0);
  const bool pass = std::abs(fit.response - 10.0) <= 1e-9 && std::abs(fit.bias) <= 1e-12 && dt < 1.0;
  return {pass, fmt("response=%.15f |d|<=1e-9, bias=%.3e |b|<=1e-12, %.3fs<1s", fit.response,
                    fit.bias, dt)};
}

Outcome model_equivalence() {
  const auto qc = simulate_curve(gate_config(101, true), 0);
  const auto qa = simulate_curve(anneal_config(101, true), 0);
  const double worst = (qc.values() - qa.values()).cwiseAbs().maxCoeff();
  const bool same_grid = qc.inputs() == qa.inputs();
  return {same_grid && worst <= 1e-12, fmt("max |h_eff(QC) - h_eff(QA)| = %.3e <= 1e-12 over 101 points", worst)};
}

Outcome sampled_recovery() {
  const auto t0 = Clock::now();
  RunConfig c = gate_config(900, false);
  c.threads = 1;
  const auto fit = fit_response_bias(simulate_curve(c, 0));
  const double dt = seconds_since(t0);
  const bool pass = std::abs(fit.response - 10.0) <= 0.3 && std::abs(fit.bias) <= 0.05 && dt < 30.0;
  return {pass, fmt("response=%.4f in 10+-0.3, bias=%.4f in +-0.05, M=8192, %.2fs<30s", fit.response,
                    fit.bias, dt)};
}

Outcome ibm_like() {
  RunConfig c = gate_config(900, true);
  c.qc_noise.flip_from_plus = 0.0094;
  c.qc_noise.flip_from_minus = 0.0356;
  const auto m = metrics_for_qubit(simulate_curve(c, 0));

  // Closed-form oracle from the backend outcome probabilities.
  const GateSimulator backend{c.qc_noise};
  const auto edge = [&](double h) {
    return std::atanh(backend.exact_mean(build_gate_program(InputField(h), Beta(10))));
  };
  const double e0 = c.qc_noise.flip_from_minus - c.qc_noise.flip_from_plus;
  const double tangent = (1 - c.qc_noise.flip_from_plus - c.qc_noise.flip_from_minus) * 10.0 / (1 - e0 * e0);

  const bool sat_ok = std::abs(m.pos_saturation - 2.33) <= 0.01 && std::abs(m.neg_saturation + 1.65) <= 0.01 &&
                      std::abs(m.pos_saturation - edge(1.0)) <= 1e-9 &&
                      std::abs(m.neg_saturation - edge(-1.0)) <= 1e-9;
  const bool resp_ok = std::abs(m.response - 9.56) <= 0.02;
  return {sat_ok && resp_ok,
          fmt("pos=%.4f (2.33+-0.01) neg=%.4f (-1.65+-0.01) %s; response=%.4f vs 9.56+-0.02 %s "
              "[tangent slope at h=0 = %.4f]",
              m.pos_saturation, m.neg_saturation, sat_ok ? "ok" : "FAIL", m.response,
              resp_ok ? "ok" : "FAIL", tangent)};
}

Outcome dwave_like() {
  RunConfig c = anneal_config(81, true);
  c.qa_noise.flip = 5.55e-5;
  const auto m = metrics_for_qubit(simulate_curve(c, 0));
  const bool pass = std::abs(m.pos_saturation - 4.90) <= 0.01 && std::abs(m.neg_saturation + 4.90) <= 0.01 &&
                    std::abs(m.response - 10.0) <= 0.01;
  return {pass, fmt("pos=%.4f neg=%.4f (+-4.90+-0.01), response=%.4f (10.00+-0.01)", m.pos_saturation,
                    m.neg_saturation, m.response)};
}

Outcome clamp_bound_check() {
  const GateSimulator backend;
  const auto program = build_gate_program(InputField(1.0), Beta(10));
  int unanimous = 0;
  double worst = 0.0;
  constexpr int kSeeds = 200;
  for (int s = 0; s < kSeeds; ++s) {
    const auto counts = backend.sample({program, 8192, std::uint64_t(s), {0, 0, 0, 0}});
    const auto est = heff_from_counts(counts);
    if (est.clamped) ++unanimous;
    worst = std::max(worst, std::abs(est.value - 4.852));
  }
  return {unanimous == kSeeds && worst <= 1e-3,
          fmt("%d/%d seeds unanimous, max |h_eff - 4.852| = %.2e <= 1e-3", unanimous, kSeeds, worst)};
}

Outcome phi_invariance() {
  const auto phis = phi_sweep(10);
  RunConfig exact = gate_config(901, true);
  std::vector<Eigen::VectorXd> exact_values;
  for (double phi : phis) {
    exact.phi = phi;
    exact_values.push_back(simulate_curve(exact, 0).values());
  }
  bool bitwise = true;
  for (const auto& v : exact_values) bitwise = bitwise && (v.array() == exact_values.front().array()).all();

  RunConfig sampled = gate_config(900, false);
  std::vector<LinearFit> fits;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    sampled.phi = phis[i];
    sampled.stream_variant = i;
    fits.push_back(fit_response_bias(simulate_curve(sampled, 0)));
  }
  // Same stream for two planes: counts must coincide exactly.
  RunConfig a = sampled, b = sampled;
  a.phi = phis[1];
  b.phi = phis[7];
  a.stream_variant = b.stream_variant = 3;
  const bool same_stream_identical = simulate_curve(a, 0).values() == simulate_curve(b, 0).values();

  double worst_z = 0.0;
  for (std::size_t i = 0; i < fits.size(); ++i)
    for (std::size_t j = i + 1; j < fits.size(); ++j) {
      const double sigma = std::hypot(fits[i].response_std_error, fits[j].response_std_error);
      worst_z = std::max(worst_z, std::abs(fits[i].response - fits[j].response) / sigma);
    }
  return {bitwise && same_stream_identical && worst_z <= 3.0,
          fmt("exact curves bitwise identical: %s; shared-stream counts identical: %s; "
              "max pairwise |dr|/sigma = %.2f <= 3",
              bitwise ? "yes" : "no", same_stream_identical ? "yes" : "no", worst_z)};
}

Outcome five_gate_consistency() {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t(0.0, std::numbers::pi), p(0.0, 2 * std::numbers::pi);
  int ok = 0;
  long double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = t(rng), phi = p(rng);
    const auto seq = normalize_to_native(QubitProgram::gate(theta, phi));
    const bool shape = seq.gates.size() == 5 && seq.gates[0].kind == GateKind::rz &&
                       seq.gates[1].kind == GateKind::sx && seq.gates[2].kind == GateKind::rz &&
                       seq.gates[3].kind == GateKind::sx && seq.gates[4].kind == GateKind::rz;
    // Extended-precision oracle.
    const long double d = phase_distance(sequence_unitary<long double>(seq),
                                         program_unitary<long double>(theta, phi));
    worst = std::max(worst, d);
    if (shape && d <= 1e-10L) ++ok;
  }
  return {ok == 1000, fmt("%d/1000 five-gate sequences within 1e-10 (max residual %.2e)", ok, double(worst))};
}

Outcome reporting_golden() {
  const std::string dir = QRBPN_TEST_DATA;
  std::vector<QubitMetrics> metrics;
  for (const char* name : {"/dwave_metrics.csv", "/armonk_metrics.csv"}) {
    std::ifstream in(dir + name);
    for (auto& r : read_metrics_csv(in)) metrics.push_back(r.metrics);
  }
  const std::string text = render(summarize_fleet(metrics), Format::text);
  std::ifstream golden_in(dir + "/report_golden.txt", std::ios::binary);
  std::ostringstream golden;
  golden << golden_in.rdbuf();

  const auto row = text.substr(std::min(text.size(), text.find("DW_2000Q_LANL")));
  const auto p1 = row.find("10.03 ± 0.26"), p2 = row.find("−4.92 ± 0.15"), p3 = row.find("4.90 ± 0.16");
  const bool dw = p1 != std::string::npos && p2 != std::string::npos && p3 != std::string::npos && p1 < p2 &&
                  p2 < p3 && row.find('\n') > p3;
  const bool armonk = text.find("8.23 ± 0.00") != std::string::npos;
  const bool exact = text == golden.str();
  return {dw && armonk && exact, fmt("DW row: %s, single-qubit row: %s, golden file byte-exact: %s",
                                     dw ? "ok" : "missing", armonk ? "ok" : "missing", exact ? "yes" : "no")};
}

Outcome ci_coverage() {
  const GateSimulator backend;
  std::string detail;
  bool pass = true;
  for (double p : {0.5, 0.7, 0.9}) {
    // cos^2(theta/2) = p
    const auto program = QubitProgram::gate(2.0 * std::acos(std::sqrt(p)));
    const double truth = std::atanh(2 * p - 1);
    int covered = 0;
    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
      const auto est = heff_from_counts(backend.sample({program, 10'000, 99, {0, trial, 0, 0}}));
      if (est.ci_lo <= truth && truth <= est.ci_hi) ++covered;
    }
    pass = pass && covered >= 990;
    detail += fmt("p=%.1f: %d/1000  ", p, covered);
  }
  return {pass, detail + "(>= 990 each)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 ideal linearity", ideal_linearity},
      {"2 model equivalence", model_equivalence},
      {"3 sampled recovery", sampled_recovery},
      {"4 IBM-like fixture", ibm_like},
      {"5 D-Wave-like fixture", dwave_like},
      {"6 clamp bound", clamp_bound_check},
      {"7 phi invariance", phi_invariance},
      {"8 5-gate consistency", five_gate_consistency},
      {"9 reporting golden", reporting_golden},
      {"10 CI coverage", ci_coverage},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %-22s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
