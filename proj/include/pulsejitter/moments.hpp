#pragma once

#include "pulsejitter/grid.hpp"
#include "pulsejitter/jitter_state.hpp"

namespace pulsejitter {

// Classical moments of an envelope.  Widths and chirp are taken about the
// instantaneous intensity centroid and mean frequency.
struct PulseMoments {
  double n_photons = 0.0;   // N
  double dt_rms = 0.0;      // ps
  double chirp = 0.0;       // C, dimensionless
  double domega_rms = 0.0;  // 1/ps
  double centroid = 0.0;    // ps, diagnostic
  double mean_omega = 0.0;  // 1/ps, diagnostic
};

/// N = \int |A|^2,  dt^2 = <(t - t̄)^2>,  dw^2 = <(w - w̄)^2>,
/// C = -(2/N) Im \int (t - t̄) A* dA/dt, with dA/dt taken spectrally.
/// Throws DomainError for a field with zero photon number.
PulseMoments measure(const Envelope& envelope);

/// Coherent-field statistics: <T^2> = dt^2/N, <Omega^2> = dw^2/N,
/// <TΩ+ΩT> = C/N, accumulators zero.
JitterState coherent_jitter_init(const PulseMoments& moments);

/// Arbitrary initial second moments, accumulators zero.
JitterState jitter_init(double t2_ps2, double sym_ps, double omega2_per_ps2);

}  // namespace pulsejitter
