#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pulsejitter {

using Complex = std::complex<double>;

// Uniform retarded-time grid and its conjugate envelope-frequency grid.
//
// Sample k sits at t_k = t_center + (k - n/2) dt.  Frequency samples are
// stored in ascending order, w_j = (j - n/2) dw with dw = 2 pi / (n dt), so
// index n/2 is w = 0 and index 0 is the (negative) Nyquist frequency.  The
// carrier never appears: w is the offset from w_0.
class TimeGrid {
 public:
  TimeGrid(std::size_t n_points, double dt_ps, double t_center_ps = 0.0);

  static TimeGrid from_window(std::size_t n_points, double window_ps, double t_center_ps = 0.0);

  std::size_t size() const noexcept { return n_; }
  double dt() const noexcept { return dt_; }
  double t_center() const noexcept { return t_center_; }
  double window() const noexcept { return dt_ * static_cast<double>(n_); }
  double domega() const noexcept;

  double time(std::size_t k) const noexcept { return t_center_ + (static_cast<double>(k) - half()) * dt_; }
  double omega(std::size_t j) const noexcept { return (static_cast<double>(j) - half()) * domega(); }

  std::vector<double> times() const;
  std::vector<double> omegas() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double half() const noexcept { return static_cast<double>(n_ / 2); }

  std::size_t n_;
  double dt_;
  double t_center_;
};

// Complex envelope A(t) sampled on a TimeGrid, in (photons/ps)^(1/2).
class Envelope {
 public:
  explicit Envelope(TimeGrid grid);
  Envelope(TimeGrid grid, std::vector<Complex> samples);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> samples() const noexcept { return samples_; }
  std::span<Complex> samples() noexcept { return samples_; }

  /// N = sum |A_k|^2 dt
  double photon_number() const;

 private:
  TimeGrid grid_;
  std::vector<Complex> samples_;
};

// Spectrum a(w) on the ascending frequency grid of `grid`, in (photons ps)^(1/2).
struct Spectrum {
  TimeGrid grid;
  std::vector<Complex> samples;

  /// N = sum |a_j|^2 dw
  double photon_number() const;
};

/// a(w) = (2 pi)^(-1/2) \int dt A(t) e^{+i w t}, the inverse of
/// A(t) = (2 pi)^(-1/2) \int dw a(w) e^{-i w t}.  Unitary on the grid.
Spectrum to_spectrum(const Envelope& envelope);
Envelope from_spectrum(const Spectrum& spectrum);

/// sqrt(N / 2 tau) sech(t / tau), centred on the window.  The window must
/// span at least 30 tau or a ConfigError is thrown.
Envelope make_sech_soliton(const TimeGrid& grid, double tau_ps, double n_photons);

/// Gaussian sqrt(N / (sqrt(pi) T0)) exp(-t^2 / 2 T0^2 + i q t^2), optionally
/// delayed by t_offset.  Used for the linear reference problems.
Envelope make_gaussian(const TimeGrid& grid, double t0_ps, double n_photons, double quadratic_phase_per_ps2 = 0.0,
                       double t_offset_ps = 0.0);

}  // namespace pulsejitter
