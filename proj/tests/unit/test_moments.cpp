#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pulsejitter/errors.hpp"
#include "pulsejitter/moments.hpp"

using namespace pulsejitter;
using std::numbers::pi;

namespace {

// C = -(2/N) Im \int (t - tbar) A* dA/dt, with a fourth-order central difference.
double chirp_by_differences(const Envelope& e) {
  const auto a = e.samples();
  const auto& g = e.grid();
  double n = 0.0, t1 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    n += std::norm(a[k]) * g.dt();
    t1 += g.time(k) * std::norm(a[k]) * g.dt();
  }
  const double tbar = t1 / n;
  double im = 0.0;
  for (std::size_t k = 2; k + 2 < a.size(); ++k) {
    const Complex d = (-a[k + 2] + 8.0 * a[k + 1] - 8.0 * a[k - 1] + a[k - 2]) / (12.0 * g.dt());
    im += (g.time(k) - tbar) * (std::conj(a[k]) * d).imag() * g.dt();
  }
  return -2.0 / n * im;
}

Envelope times_phase(Envelope e, double phase) {
  for (auto& v : e.samples()) v *= std::polar(1.0, phase);
  return e;
}

}  // namespace

TEST_CASE("sech moments") {
  const TimeGrid g = TimeGrid::from_window(8192, 64.0);
  const PulseMoments m = measure(make_sech_soliton(g, 1.0, 1.87e7));
  CHECK(m.n_photons == doctest::Approx(1.87e7).epsilon(1e-9));
  CHECK(m.dt_rms == doctest::Approx(pi / (2.0 * std::sqrt(3.0))).epsilon(1e-6));
  CHECK(m.domega_rms == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(std::abs(m.chirp) < 1e-10);
  CHECK(std::abs(m.centroid) < 1e-12);
  CHECK(std::abs(m.mean_omega) < 1e-12);
}

TEST_CASE("chirp of a quadratic-phase Gaussian") {
  const TimeGrid g = TimeGrid::from_window(8192, 64.0);
  for (double q : {-0.3, 0.05, 0.4}) {
    const double t0 = 1.2;
    const Envelope e = make_gaussian(g, t0, 1e6, q);
    const PulseMoments m = measure(e);
    CHECK(m.chirp == doctest::Approx(chirp_by_differences(e)).epsilon(1e-8));
    CHECK(m.chirp == doctest::Approx(-2.0 * q * t0 * t0).epsilon(1e-10));
    CHECK(m.dt_rms == doctest::Approx(t0 / std::sqrt(2.0)).epsilon(1e-10));
    // chirped Gaussian: dw^2 = (1 + 4 q^2 T0^4) / (2 T0^2)
    CHECK(m.domega_rms * m.domega_rms ==
          doctest::Approx((1.0 + 4.0 * q * q * std::pow(t0, 4)) / (2.0 * t0 * t0)).epsilon(1e-10));
  }
}

TEST_CASE("moments are gauge invariant") {
  const TimeGrid g = TimeGrid::from_window(2048, 64.0);
  const Envelope e = make_gaussian(g, 1.0, 3e5, 0.2, 0.7);
  const PulseMoments a = measure(e);
  const PulseMoments b = measure(times_phase(e, 1.234));
  CHECK(b.n_photons == doctest::Approx(a.n_photons).epsilon(1e-14));
  CHECK(b.dt_rms == doctest::Approx(a.dt_rms).epsilon(1e-13));
  CHECK(b.chirp == doctest::Approx(a.chirp).epsilon(1e-12));
  CHECK(b.domega_rms == doctest::Approx(a.domega_rms).epsilon(1e-13));
}

TEST_CASE("moments are taken about the centroid and mean frequency") {
  const TimeGrid g = TimeGrid::from_window(4096, 64.0);
  const Envelope base = make_gaussian(g, 1.0, 1e6, 0.1);
  Envelope moved = make_gaussian(g, 1.0, 1e6, 0.1, 3.0);
  const double w0 = 8 * g.domega();
  for (std::size_t k = 0; k < g.size(); ++k) moved.samples()[k] *= std::polar(1.0, -w0 * g.time(k));
  const PulseMoments a = measure(base);
  const PulseMoments b = measure(moved);
  CHECK(b.centroid == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(b.mean_omega == doctest::Approx(w0).epsilon(1e-10));
  CHECK(b.dt_rms == doctest::Approx(a.dt_rms).epsilon(1e-10));
  CHECK(b.domega_rms == doctest::Approx(a.domega_rms).epsilon(1e-10));
  CHECK(b.chirp == doctest::Approx(a.chirp).epsilon(1e-9));
}

TEST_CASE("dispersed Gaussian follows the linear closed forms") {
  // Exact dispersed Gaussian; dt^2 = dt0^2 + C0 D + dw^2 D^2, C = C0 + 2 dw^2 D.
  const TimeGrid g = TimeGrid::from_window(8192, 64.0);
  const double t0 = 1.0;
  const PulseMoments m0 = measure(make_gaussian(g, t0, 1.0));
  for (double d : {-3.0, 0.5, 4.0}) {
    Envelope e(g);
    const Complex q(t0 * t0, -d);
    for (std::size_t k = 0; k < g.size(); ++k)
      e.samples()[k] = t0 / std::sqrt(q) * std::exp(-g.time(k) * g.time(k) / (2.0 * q));
    const PulseMoments m = measure(e);
    const double dw2 = m0.domega_rms * m0.domega_rms;
    CHECK(m.dt_rms * m.dt_rms == doctest::Approx(m0.dt_rms * m0.dt_rms + m0.chirp * d + dw2 * d * d).epsilon(1e-8));
    CHECK(m.chirp == doctest::Approx(m0.chirp + 2.0 * dw2 * d).epsilon(1e-8));
    CHECK(m.domega_rms == doctest::Approx(m0.domega_rms).epsilon(1e-8));
  }
}

TEST_CASE("zero field is rejected") {
  CHECK_THROWS_AS(measure(Envelope(TimeGrid(64, 0.1))), DomainError);
}

TEST_CASE("coherent initial statistics") {
  const TimeGrid g = TimeGrid::from_window(8192, 64.0);
  const double n = 1.87e7;
  const PulseMoments m = measure(make_sech_soliton(g, 1.0, n));
  const JitterState s = coherent_jitter_init(m);
  CHECK(s.t2_init == doctest::Approx(pi * pi / 12.0 / n).epsilon(1e-6));
  CHECK(s.t2_init == doctest::Approx(4.40e-8).epsilon(2e-3));
  CHECK(std::abs(s.sym_init) < 1e-16);
  CHECK(s.omega2_init == doctest::Approx(1.0 / (3.0 * n)).epsilon(1e-6));
  CHECK(s.t2_init * s.omega2_init == doctest::Approx(pi * pi / 36.0 / (n * n)).epsilon(1e-6));
  CHECK(s.t2_init * s.omega2_init >= 1.0 / (4.0 * n * n));
  CHECK(s.d_net == 0.0);
  CHECK(s.t2_diff == 0.0);
  CHECK(s.t2_gh == 0.0);

  PulseMoments chirped = m;
  chirped.chirp = 0.3;
  CHECK(coherent_jitter_init(chirped).sym_init == doctest::Approx(0.3 / n));

  const JitterState j = jitter_init(2.0, -0.5, 3.0);
  CHECK(j.t2_init == 2.0);
  CHECK(j.sym_init == -0.5);
  CHECK(j.omega2_init == 3.0);
}
