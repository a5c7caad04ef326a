#include "pulsejitter/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "pulsejitter/errors.hpp"

namespace pulsejitter {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInvSqrtTwoPi = 1.0 / std::sqrt(kTwoPi);

// Natural-order DFT bin holding ascending-order frequency sample j.
std::size_t bin_of(std::size_t j, std::size_t n) { return (j + n - n / 2) % n; }

}  // namespace

TimeGrid::TimeGrid(std::size_t n_points, double dt_ps, double t_center_ps)
    : n_(n_points), dt_(dt_ps), t_center_(t_center_ps) {
  if (n_points < 2 || !std::has_single_bit(n_points))
    throw ConfigError("grid size must be a power of two >= 2, got " + std::to_string(n_points));
  if (!(dt_ps > 0.0) || !std::isfinite(dt_ps)) throw ConfigError("grid spacing must be positive");
  if (!std::isfinite(t_center_ps)) throw ConfigError("grid centre must be finite");
}

TimeGrid TimeGrid::from_window(std::size_t n_points, double window_ps, double t_center_ps) {
  if (n_points == 0) throw ConfigError("grid size must be a power of two >= 2, got 0");
  return TimeGrid(n_points, window_ps / static_cast<double>(n_points), t_center_ps);
}

double TimeGrid::domega() const noexcept { return kTwoPi / (static_cast<double>(n_) * dt_); }

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(n_);
  for (std::size_t k = 0; k < n_; ++k) t[k] = time(k);
  return t;
}

std::vector<double> TimeGrid::omegas() const {
  std::vector<double> w(n_);
  for (std::size_t j = 0; j < n_; ++j) w[j] = omega(j);
  return w;
}

Envelope::Envelope(TimeGrid grid) : grid_(grid), samples_(grid.size()) {}

Envelope::Envelope(TimeGrid grid, std::vector<Complex> samples) : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw ConfigError("envelope sample count does not match grid");
}

double Envelope::photon_number() const {
  double sum = 0.0;
  for (const auto& a : samples_) sum += std::norm(a);
  return sum * grid_.dt();
}

double Spectrum::photon_number() const {
  double sum = 0.0;
  for (const auto& a : samples) sum += std::norm(a);
  return sum * grid.domega();
}

Spectrum to_spectrum(const Envelope& envelope) {
  const auto& grid = envelope.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> bins(n);
  detail::dft_plus(envelope.samples(), bins);

  const double t0 = grid.time(0);
  const double scale = grid.dt() * kInvSqrtTwoPi;
  Spectrum out{grid, std::vector<Complex>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double w = grid.omega(j);
    out.samples[j] = scale * std::polar(1.0, w * t0) * bins[bin_of(j, n)];
  }
  return out;
}

Envelope from_spectrum(const Spectrum& spectrum) {
  const auto& grid = spectrum.grid;
  const std::size_t n = grid.size();
  if (spectrum.samples.size() != n) throw ConfigError("spectrum sample count does not match grid");

  const double t0 = grid.time(0);
  std::vector<Complex> bins(n);
  for (std::size_t j = 0; j < n; ++j) bins[bin_of(j, n)] = spectrum.samples[j] * std::polar(1.0, -grid.omega(j) * t0);

  std::vector<Complex> field(n);
  detail::dft_minus(bins, field);
  const double scale = grid.domega() * kInvSqrtTwoPi;
  for (auto& a : field) a *= scale;
  return Envelope(grid, std::move(field));
}

Envelope make_sech_soliton(const TimeGrid& grid, double tau_ps, double n_photons) {
  if (!(tau_ps > 0.0)) throw DomainError("soliton width must be positive");
  if (!(n_photons >= 0.0)) throw DomainError("photon number must be non-negative");
  if (grid.window() < 30.0 * tau_ps)
    throw ConfigError("time window " + std::to_string(grid.window()) + " ps is narrower than 30 tau (" +
                      std::to_string(30.0 * tau_ps) + " ps)");

  const double peak = std::sqrt(n_photons / (2.0 * tau_ps));
  std::vector<Complex> a(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = std::abs((grid.time(k) - grid.t_center()) / tau_ps);
    // sech(x) = 2 e^{-x} / (1 + e^{-2x}); stable for large x
    const double e = std::exp(-x);
    a[k] = peak * 2.0 * e / (1.0 + e * e);
  }
  return Envelope(grid, std::move(a));
}

Envelope make_gaussian(const TimeGrid& grid, double t0_ps, double n_photons, double quadratic_phase_per_ps2,
                       double t_offset_ps) {
  if (!(t0_ps > 0.0)) throw DomainError("gaussian width must be positive");
  if (!(n_photons >= 0.0)) throw DomainError("photon number must be non-negative");

  const double peak = std::sqrt(n_photons / (std::sqrt(std::numbers::pi) * t0_ps));
  std::vector<Complex> a(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid.time(k) - grid.t_center() - t_offset_ps;
    a[k] = peak * std::exp(-t * t / (2.0 * t0_ps * t0_ps)) * std::polar(1.0, quadratic_phase_per_ps2 * t * t);
  }
  return Envelope(grid, std::move(a));
}

}  // namespace pulsejitter
