#include "pulsejitter/moments.hpp"

#include <cmath>
#include <vector>

#include "fft.hpp"
#include "pulsejitter/errors.hpp"

namespace pulsejitter {

PulseMoments measure(const Envelope& envelope) {
  const auto& grid = envelope.grid();
  const auto a = envelope.samples();
  const std::size_t n = grid.size();
  const double dt = grid.dt();

  double n_sum = 0.0;
  double t_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = std::norm(a[k]);
    n_sum += p;
    t_sum += grid.time(k) * p;
  }
  if (!(n_sum > 0.0)) throw DomainError("cannot measure moments of a zero field");
  const double n_photons = n_sum * dt;
  const double centroid = t_sum / n_sum;

  double t2_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dtk = grid.time(k) - centroid;
    t2_sum += dtk * dtk * std::norm(a[k]);
  }

  std::vector<Complex> spec(n);
  detail::dft_plus(a, spec);
  const double dw = grid.domega();
  double p_sum = 0.0;
  double w_sum = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double p = std::norm(spec[m]);
    p_sum += p;
    w_sum += detail::bin_omega(m, n, dw) * p;
  }
  const double mean_omega = w_sum / p_sum;
  double w2_sum = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double dwm = detail::bin_omega(m, n, dw) - mean_omega;
    w2_sum += dwm * dwm * std::norm(spec[m]);
  }

  // dA/dt: each e^{-i w t} component picks up -i w.  The Nyquist bin has no
  // consistent sign and is dropped.
  for (std::size_t m = 0; m < n; ++m) {
    spec[m] *= (m == n / 2) ? Complex{} : Complex{0.0, -detail::bin_omega(m, n, dw) / static_cast<double>(n)};
  }
  std::vector<Complex> deriv(n);
  detail::dft_minus(spec, deriv);
  double im_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) im_sum += (grid.time(k) - centroid) * std::imag(std::conj(a[k]) * deriv[k]);

  PulseMoments out;
  out.n_photons = n_photons;
  out.centroid = centroid;
  out.dt_rms = std::sqrt(t2_sum / n_sum);
  out.mean_omega = mean_omega;
  out.domega_rms = std::sqrt(w2_sum / p_sum);
  out.chirp = -2.0 * im_sum * dt / n_photons;
  return out;
}

JitterState coherent_jitter_init(const PulseMoments& m) {
  return jitter_init(m.dt_rms * m.dt_rms / m.n_photons, m.chirp / m.n_photons,
                     m.domega_rms * m.domega_rms / m.n_photons);
}

JitterState jitter_init(double t2_ps2, double sym_ps, double omega2_per_ps2) {
  JitterState s;
  s.t2_init = t2_ps2;
  s.sym_init = sym_ps;
  s.omega2_init = omega2_per_ps2;
  return s;
}

}  // namespace pulsejitter
