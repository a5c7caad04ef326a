#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "pulsejitter/errors.hpp"
#include "pulsejitter/jitter.hpp"
#include "pulsejitter/propagator.hpp"
#include "pulsejitter/units.hpp"

using namespace pulsejitter;
using std::numbers::pi;

namespace {

constexpr double kKappa = 4.5e-10;  // ps/m, close to the tapered fiber

// Exact linear solution of i A_z = (beta/2) A_tt for a launched Gaussian:
// A = a0 T0 / sqrt(Q) exp(-t^2 / 2Q), Q = T0^2 - i beta z.
Complex dispersed_gaussian(double t, double z, double t0, double n, double beta) {
  const Complex q(t0 * t0, -beta * z);
  const double a0 = std::sqrt(n / (std::sqrt(pi) * t0));
  return a0 * t0 / std::sqrt(q) * std::exp(-t * t / (2.0 * q));
}

double relative_l2(std::span<const Complex> a, const std::vector<Complex>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("linear dispersion reproduces the dispersed Gaussian") {
  const TimeGrid g = TimeGrid::from_window(4096, 64.0);
  const double beta = -4.25e-3, t0 = 1.0, n = 1e6;
  const double z = 0.5 * soliton_period(beta, t0);
  const FiberSegment seg{z, 0.0, 0.0, ConstantDispersion{beta}};

  Envelope e = make_gaussian(g, t0, n);
  SplitStepPropagator p(g);
  const int steps = 40;
  for (int k = 0; k < steps; ++k) p.step(e, seg, k * z / steps, z / steps);

  std::vector<Complex> ref(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) ref[k] = dispersed_gaussian(g.time(k), z, t0, n, beta);
  CHECK(relative_l2(e.samples(), ref) < 1e-8);
}

TEST_CASE("pure self-phase modulation rotates the phase by kappa |A|^2 z") {
  const TimeGrid g = TimeGrid::from_window(1024, 64.0);
  const Envelope e0 = make_sech_soliton(g, 1.0, 1e7);
  const double z = 100.0;
  const FiberSegment seg{z, 0.0, kKappa, ConstantDispersion{0.0}};
  const Envelope e = step(e0, seg, 0.0, z);
  double err = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Complex a = e0.samples()[k];
    const Complex expect = a * std::polar(1.0, kKappa * std::norm(a) * z);
    err = std::max(err, std::abs(e.samples()[k] - expect));
    peak = std::max(peak, std::abs(a));
  }
  CHECK(err / peak < 1e-12);
}

TEST_CASE("fundamental soliton keeps its shape over two periods") {
  const TimeGrid g = TimeGrid::from_window(4096, 64.0);
  const double beta = -4.25e-3, tau = 1.0;
  const double n = 2.0 * std::abs(beta) / (kKappa * tau);
  const double length = 2.0 * soliton_period(beta, tau);
  const FiberSegment seg{length, 0.0, kKappa, ConstantDispersion{beta}};

  const Envelope e0 = make_sech_soliton(g, tau, n);
  Envelope e = e0;
  SplitStepPropagator p(g);
  const int steps = 8000;
  const double dz = length / steps;
  for (int k = 0; k < steps; ++k) p.step(e, seg, k * dz, dz);

  double err = 0.0, peak = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    err = std::max(err, std::abs(std::abs(e.samples()[k]) - std::abs(e0.samples()[k])));
    peak = std::max(peak, std::abs(e0.samples()[k]));
  }
  CHECK(err / peak < 1e-6);
}

TEST_CASE("photon number decays exactly with loss") {
  const TimeGrid g = TimeGrid::from_window(2048, 64.0);
  const double alpha = units::alpha_from_db_per_km(0.4);
  const FiberLink link({FiberSegment{700.0, alpha, kKappa, IncreasingDispersion{-12.75e-3, 700.0, 300.0}},
                        FiberSegment{30.0, 2.0 * alpha, kKappa, ConstantDispersion{127.5e-3}}});
  const Envelope e0 = make_sech_soliton(g, 1.0, 1.5e7);
  StepControl c;
  c.dz = 0.5;
  c.record_every = 10.0;
  const auto res = propagate(e0, link, c, coherent_jitter_init(measure(e0)));
  for (const auto& r : res.records) {
    const double attenuation = r.z <= 700.0 ? alpha * r.z : alpha * 700.0 + 2.0 * alpha * (r.z - 700.0);
    CHECK(std::abs(r.moments.n_photons / (1.5e7 * std::exp(-attenuation)) - 1.0) < 1e-12);
  }
}

TEST_CASE("records are ordered and land on segment ends") {
  const TimeGrid g = TimeGrid::from_window(1024, 64.0);
  const FiberLink link({FiberSegment{103.0, 0.0, kKappa, ConstantDispersion{-4e-3}},
                        FiberSegment{7.3, 0.0, 0.0, ConstantDispersion{50e-3}}});
  StepControl c;
  c.dz = 0.5;
  c.record_every = 10.0;
  std::size_t observed = 0;
  const auto res = propagate(make_sech_soliton(g, 1.0, 1e7), link, c, {},
                             [&](const PropagationRecord&, const Envelope&) { ++observed; });
  REQUIRE(!res.records.empty());
  CHECK(observed == res.records.size());
  CHECK(res.records.front().z == 0.0);
  for (std::size_t i = 1; i < res.records.size(); ++i) CHECK(res.records[i].z > res.records[i - 1].z);
  auto has = [&](double z) {
    for (const auto& r : res.records)
      if (std::abs(r.z - z) < 1e-9) return true;
    return false;
  };
  CHECK(has(103.0));
  CHECK(has(110.3));
  CHECK(res.records.back().z == doctest::Approx(110.3));
  CHECK(res.records.back().segment == 1);
  REQUIRE(res.stepping.size() == 2);
  CHECK(res.stepping[0].steps * res.stepping[0].step == doctest::Approx(103.0));
  // moments handed to the jitter engine come from the same extractor
  const PulseMoments m = measure(res.final_envelope);
  CHECK(m.dt_rms == res.records.back().moments.dt_rms);
  CHECK(m.chirp == res.records.back().moments.chirp);
}

TEST_CASE("zero net dispersion without loss conserves <T^2>") {
  const TimeGrid g = TimeGrid::from_window(2048, 64.0);
  const FiberSegment first{400.0, 0.0, kKappa, IncreasingDispersion{-12.75e-3, 400.0, 200.0}};
  const double lp = compensating_length(FiberLink({first}), 127.5e-3);
  const FiberLink link({first, FiberSegment{lp, 0.0, 2.0 * kKappa, ConstantDispersion{127.5e-3}}});
  const Envelope e0 = make_sech_soliton(g, 1.0, 2.0 * 4.25e-3 / kKappa);
  const JitterState init = coherent_jitter_init(measure(e0));
  StepControl c;
  c.dz = 0.5;
  c.record_every = 50.0;
  const auto res = propagate(e0, link, c, init);
  CHECK(std::abs(res.records.back().jitter.d_net) < 1e-9);
  CHECK(std::abs(total_t2(res.records.back().jitter) / total_t2(init) - 1.0) < 1e-6);
}

TEST_CASE("step cap follows the shortest soliton period") {
  PulseMoments m;
  m.domega_rms = 1.0 / std::sqrt(3.0);  // tau = 1 ps
  const FiberSegment dcf{110.0, 0.0, 0.0, ConstantDispersion{127.5e-3}};
  StepControl c;
  const auto plan = plan_segment(dcf, m, c);
  const double cap = soliton_period(127.5e-3, 1.0) / 200.0;
  CHECK(plan.step <= cap);
  CHECK(plan.steps * plan.step == doctest::Approx(110.0));
  CHECK(plan.steps == static_cast<std::size_t>(std::ceil(110.0 / cap)));

  const FiberSegment slow{100.0, 0.0, 0.0, ConstantDispersion{-1e-3}};
  const auto plain = plan_segment(slow, m, c);
  CHECK(plain.steps == 400);
  CHECK(plain.step == 0.25);
}

TEST_CASE("step preconditions and failures") {
  const TimeGrid g(64, 0.5);
  const FiberSegment seg{10.0, 0.0, 0.0, ConstantDispersion{-1e-3}};
  SplitStepPropagator p(g);
  Envelope e = make_gaussian(g, 1.0, 1.0);
  CHECK_THROWS_AS(p.step(e, seg, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(p.step(e, seg, 9.0, 2.0), DomainError);
  Envelope other = make_gaussian(TimeGrid(64, 0.25), 1.0, 1.0);
  CHECK_THROWS_AS(p.step(other, seg, 0.0, 1.0), ConfigError);

  e.samples()[10] = std::numeric_limits<double>::quiet_NaN();
  try {
    p.step(e, seg, 3.0, 1.0);
    FAIL("expected a numerical failure");
  } catch (const NumericalFailure& f) {
    CHECK(f.z_m() == doctest::Approx(4.0));
  }

  StepControl bad;
  bad.dz = 2.0;
  bad.record_every = 1.0;
  CHECK_THROWS_AS(propagate(make_gaussian(g, 1.0, 1.0), FiberLink({seg}), bad, {}), ConfigError);
}
