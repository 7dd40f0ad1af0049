#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qrbpn/backends.hpp"
#include "qrbpn/estimation.hpp"

using namespace qrbpn;
using std::numbers::pi;

namespace {

QubitProgram gate_at(double h, double beta = 10.0) { return build_gate_program(InputField(h), Beta(beta)); }
QubitProgram anneal_at(double h) { return build_anneal_program(InputField(h)); }

}  // namespace

TEST_CASE("qc outcome probability closed form") {
  const QCNoiseModel ideal;
  CHECK(qc_outcome_probability(QubitProgram::gate(pi / 2), ideal) == doctest::Approx(0.5));
  CHECK(qc_outcome_probability(QubitProgram::gate(0.0), ideal) == 1.0);

  QCNoiseModel spam;
  spam.flip_from_plus = spam.flip_from_minus = 0.04;
  CHECK(qc_outcome_probability(QubitProgram::gate(0.0), spam) == doctest::Approx(0.96));
  CHECK(qc_outcome(QubitProgram::gate(0.0), spam).mean() == doctest::Approx(0.92));

  // Rotation miscalibration enters through cos^2(theta'/2).
  QCNoiseModel tilt;
  tilt.angle_scale = 1.1;
  tilt.angle_offset = 0.02;
  const double tp = 1.1 * 1.0 + 0.02;
  CHECK(qc_outcome_probability(QubitProgram::gate(1.0), tilt) ==
        doctest::Approx(std::cos(tp / 2) * std::cos(tp / 2)).epsilon(1e-15));

  // Phi never reaches a Z measurement.
  CHECK(qc_outcome_probability(QubitProgram::gate(1.0, 2.0), ideal) ==
        qc_outcome_probability(QubitProgram::gate(1.0, 0.0), ideal));
}

TEST_CASE("qa outcome probability closed form") {
  QANoiseModel ideal;
  CHECK(qa_outcome_probability(0.0, ideal) == 0.5);
  // Frozen: 1/(1+e^-1) from tests/oracles/closed_forms.py.
  CHECK(qa_outcome_probability(0.05, ideal) == doctest::Approx(0.73105857863000487925).epsilon(1e-15));
  // h_eff = 5: one misaligned spin in ~22026 observations.
  CHECK(qa_outcome(0.5, ideal).minus == doctest::Approx(4.5397868702434394505e-5).epsilon(1e-14));
  CHECK(1.0 / qa_outcome(0.5, ideal).minus == doctest::Approx(22027.47).epsilon(1e-5));

  ideal.field_offset = 0.01;
  CHECK(qa_outcome_probability(0.04, ideal) == doctest::Approx(0.73105857863000487925).epsilon(1e-14));
  // Jitter argument shifts the field the same way.
  QANoiseModel plain;
  CHECK(qa_outcome_probability(0.04, plain, 0.01) == doctest::Approx(0.73105857863000487925).epsilon(1e-14));
}

TEST_CASE("exact_mean matches closed forms") {
  const Backend qc = GateSimulator{};
  CHECK(exact_mean(qc, gate_at(0.1)) == doctest::Approx(0.76159415595576488812).epsilon(1e-15));

  QCNoiseModel ibm;
  ibm.flip_from_plus = 0.0094;
  ibm.flip_from_minus = 0.0356;
  const Backend noisy = GateSimulator{ibm};
  CHECK(exact_mean(noisy, QubitProgram::gate(0.0)) == doctest::Approx(0.9812).epsilon(1e-15));

  const Backend qa = AnnealSimulator{};
  for (double h : {0.01, 0.2, 0.7, 1.0}) CHECK(exact_mean(qa, anneal_at(-h)) == -exact_mean(qa, anneal_at(h)));
}

TEST_CASE("ideal gate and anneal backends agree on exact mean") {
  const GateSimulator qc;
  const AnnealSimulator qa;
  for (int i = -100; i <= 100; ++i) {
    const double h = i / 100.0;
    CHECK(qc.exact_mean(gate_at(h)) == doctest::Approx(std::tanh(10 * h)).epsilon(1e-14));
    CHECK(qa.exact_mean(anneal_at(h)) == doctest::Approx(std::tanh(10 * h)).epsilon(1e-14));
  }
}

TEST_CASE("log-odds agree at the saturated ends where theta approaches pi") {
  const GateSimulator qc;
  const AnnealSimulator qa;
  for (double h : {-1.0, -0.98, -0.92, 0.92, 1.0}) {
    const double a = heff_from_exact(qc.exact_outcome(gate_at(h))).value;
    const double b = heff_from_exact(qa.exact_outcome(anneal_at(h))).value;
    CHECK(std::abs(a - b) <= 1e-13);
    CHECK(std::abs(a - 10 * h) <= 1e-13);
  }
}

TEST_CASE("exact_mean is odd for symmetric noise") {
  QCNoiseModel qcn;
  qcn.angle_scale = 0.97;
  qcn.flip_from_plus = qcn.flip_from_minus = 0.02;
  QANoiseModel qan;
  qan.beta_dev = Beta(8.5);
  qan.field_scale = 1.05;
  qan.flip = 0.01;
  const AnnealSimulator qa{qan};
  for (int i = 1; i <= 50; ++i) {
    const double h = i / 50.0;
    CHECK(qa.exact_mean(anneal_at(-h)) == doctest::Approx(-qa.exact_mean(anneal_at(h))).epsilon(1e-14));
  }
  // angle_scale != 1 breaks theta -> pi - theta, so the gate check is unscaled.
  qcn.angle_scale = 1.0;
  const GateSimulator qc1{qcn};
  for (int i = 1; i <= 50; ++i) {
    const double h = i / 50.0;
    CHECK(qc1.exact_mean(gate_at(-h)) == doctest::Approx(-qc1.exact_mean(gate_at(h))).epsilon(1e-13));
  }
}

TEST_CASE("noise models validate their invariants") {
  QCNoiseModel bad;
  bad.flip_from_plus = 0.5;
  CHECK_THROWS_AS(GateSimulator{bad}, std::invalid_argument);
  bad = {};
  bad.angle_scale = 0.0;
  CHECK_THROWS_AS(GateSimulator{bad}, std::invalid_argument);
  QANoiseModel qbad;
  qbad.field_noise_std = -0.1;
  CHECK_THROWS_AS(AnnealSimulator{qbad}, std::invalid_argument);
  qbad = {};
  qbad.flip = -0.01;
  CHECK_THROWS_AS(AnnealSimulator{qbad}, std::invalid_argument);
}

TEST_CASE("backends reject programs of the other model") {
  CHECK_THROWS_AS(GateSimulator{}.exact_mean(anneal_at(0.1)), std::invalid_argument);
  CHECK_THROWS_AS(AnnealSimulator{}.exact_mean(gate_at(0.1)), std::invalid_argument);
  QANoiseModel jitter;
  jitter.field_noise_std = 0.01;
  CHECK_THROWS_AS(AnnealSimulator{jitter}.exact_mean(anneal_at(0.1)), std::invalid_argument);
}

TEST_CASE("sampling edge cases and determinism") {
  const Backend qc = GateSimulator{};
  // theta = 0 gives p = 1 exactly.
  const auto all_plus = sample(qc, {QubitProgram::gate(0.0), 100, 1, {}});
  CHECK(all_plus == ShotCounts(100, 0));
  CHECK_THROWS_AS(sample(qc, {QubitProgram::gate(0.0), 0, 1, {}}), std::invalid_argument);

  const SampleRequest req{gate_at(0.03), 8192, 42, {3, 17, 0, 0}};
  CHECK(sample(qc, req) == sample(qc, req));
  SampleRequest other = req;
  other.key.point = 18;
  CHECK_FALSE(sample(qc, req) == sample(qc, other));

  // p = 0.5, M = 1e6 within the binomial 3-sigma band.
  const auto half = sample(qc, {QubitProgram::gate(pi / 2), 1'000'000, 5, {}});
  CHECK(std::abs(double(half.n_plus()) - 5e5) <= 3.0 * std::sqrt(0.25e6));
  CHECK(half.total() == 1'000'000);
}

TEST_CASE("stream keys are independent of call order") {
  const Backend qa = AnnealSimulator{};
  const SampleRequest a{anneal_at(0.02), 1000, 9, {0, 1, 0, 0}};
  const SampleRequest b{anneal_at(0.02), 1000, 9, {1, 0, 0, 0}};
  const auto a1 = sample(qa, a);
  const auto b1 = sample(qa, b);
  const auto b2 = sample(qa, b);
  const auto a2 = sample(qa, a);
  CHECK(a1 == a2);
  CHECK(b1 == b2);
  // Key fields are not interchangeable.
  CHECK_FALSE(make_stream(9, {0, 1, 0, 0})() == make_stream(9, {1, 0, 0, 0})());
  CHECK_FALSE(make_stream(9, {0, 0, 1, 0})() == make_stream(9, {0, 0, 0, 1})());
}

TEST_CASE("binomial sampling is unbiased against the outcome probability") {
  // 200 fixed-seed draws at M = 1e4; the mean of n_plus/M lies within 4 sigma.
  const QANoiseModel n;
  const AnnealSimulator qa{n};
  const GateSimulator qc;
  for (double h : {-0.05, 0.0, 0.03, 0.08}) {
    for (const bool gate : {true, false}) {
      const QubitProgram prog = gate ? gate_at(h) : anneal_at(h);
      const double p = gate ? qc.exact_outcome(prog).plus : qa.exact_outcome(prog).plus;
      double sum = 0.0;
      for (std::uint64_t i = 0; i < 200; ++i) {
        const SampleRequest r{prog, 10'000, 77, {0, i, 0, 0}};
        sum += double((gate ? qc.sample(r) : qa.sample(r)).n_plus()) / 1e4;
      }
      const double mean = sum / 200.0;
      const double sigma = std::sqrt(p * (1 - p) / (1e4 * 200.0));
      CHECK(std::abs(mean - p) <= 4.0 * sigma);
    }
  }
}

TEST_CASE("per-shot jitter lowers the mean response") {
  QANoiseModel jitter;
  jitter.field_noise_std = 0.05;
  const AnnealSimulator noisy{jitter};
  const AnnealSimulator clean{};
  const auto c1 = noisy.sample({anneal_at(0.1), 20'000, 3, {}});
  const auto c2 = noisy.sample({anneal_at(0.1), 20'000, 3, {}});
  CHECK(c1 == c2);
  // E[tanh(beta (h + xi))] < tanh(beta h) for h > 0 by concavity.
  const double m = (double(c1.n_plus()) - double(c1.n_minus())) / 20'000.0;
  CHECK(m < clean.exact_mean(anneal_at(0.1)));
  CHECK(m > 0.5);
}

TEST_CASE("batched sampling sums independent batches") {
  const Backend qa = AnnealSimulator{};
  const auto prog = anneal_at(0.02);
  const auto total = sample_batched(qa, prog, 25'000, 10'000, 8, {2, 3, 0, 0});
  CHECK(total.total() == 25'000);
  std::uint64_t manual = 0;
  for (std::uint64_t b = 0; b < 3; ++b)
    manual += sample(qa, {prog, b < 2 ? 10'000u : 5'000u, 8, {2, 3, b, 0}}).n_plus();
  CHECK(total.n_plus() == manual);
  // batch_size 0 is one batch with key.batch = 0.
  CHECK(sample_batched(qa, prog, 5000, 0, 8, {2, 3, 0, 0}) == sample(qa, {prog, 5000, 8, {2, 3, 0, 0}}));
}
