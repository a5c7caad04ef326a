#include "pulsejitter/jitter.hpp"

#include <cmath>

namespace pulsejitter {

namespace {

struct Drive {
  double diffusive;  // alpha dt^2 / N
  double chirp;      // alpha C / N
  double spectral;   // alpha dw^2 / N
};

Drive drive(double alpha, const PulseMoments& m) {
  const double w = alpha / m.n_photons;
  return {w * m.dt_rms * m.dt_rms, w * m.chirp, w * m.domega_rms * m.domega_rms};
}

}  // namespace

JitterState advance(const JitterState& state, double dz, double beta, double alpha, const PulseMoments& start,
                    const PulseMoments& end) {
  const Drive a = drive(alpha, start);
  const Drive b = drive(alpha, end);

  JitterState s = state;
  s.d_net += beta * dz;
  s.t2_diff += 0.5 * (a.diffusive + b.diffusive) * dz;

  const double c1 = s.c1 + 0.5 * (a.chirp + b.chirp) * dz;
  s.t2_chirp += beta * 0.5 * (s.c1 + c1) * dz;
  s.c1 = c1;

  const double g1 = s.g1 + 0.5 * (a.spectral + b.spectral) * dz;
  const double g2 = s.g2 + beta * 0.5 * (s.g1 + g1) * dz;
  s.t2_gh += 2.0 * beta * 0.5 * (s.g2 + g2) * dz;
  s.g1 = g1;
  s.g2 = g2;
  return s;
}

JitterState advance(const JitterState& state, double dz, double beta, double alpha, const PulseMoments& moments) {
  return advance(state, dz, beta, alpha, moments, moments);
}

double dispersive_t2(const JitterState& s) {
  return s.t2_init + s.sym_init * s.d_net + s.omega2_init * s.d_net * s.d_net;
}

double total_t2(const JitterState& s) { return dispersive_t2(s) + s.t2_diff + s.t2_chirp + s.t2_gh; }

double total_omega2(const JitterState& s) { return s.omega2_init + s.g1; }

JitterReport report(const JitterState& state, const PulseMoments& m) {
  JitterReport r;
  r.components = {dispersive_t2(state), state.t2_diff, state.t2_chirp, state.t2_gh};
  r.t2_total = total_t2(state);
  r.omega2_total = total_omega2(state);
  const double dw2 = m.domega_rms * m.domega_rms;
  r.sql_t2 = 1.0 / (4.0 * m.n_photons * dw2);
  r.heisenberg_t2 = r.sql_t2 / m.n_photons;
  r.squeezing_ratio = r.t2_total * 4.0 * m.n_photons * dw2;
  r.squeezing_db = 10.0 * std::log10(r.squeezing_ratio);
  return r;
}

MomentumReport momentum_report(const JitterState& state, const PulseMoments& m) {
  MomentumReport r;
  r.omega2_total = total_omega2(state);
  const double dt2 = m.dt_rms * m.dt_rms;
  r.sql_omega2 = 1.0 / (4.0 * m.n_photons * dt2);
  r.heisenberg_omega2 = r.sql_omega2 / m.n_photons;
  r.ratio = r.omega2_total / r.sql_omega2;
  return r;
}

}  // namespace pulsejitter
