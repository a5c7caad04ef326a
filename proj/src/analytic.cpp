#include "pulsejitter/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "pulsejitter/errors.hpp"

namespace pulsejitter::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::sqrt(3.0);

void require_non_negative_loss(double alpha) {
  if (!(alpha >= 0.0)) throw DomainError("loss must be non-negative");
}

// (e^x - 1 - x - x^2/2) / x^2, accurate for small x.
double gh_kernel(double x) {
  if (std::abs(x) < 1e-2) return x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x * (1.0 / 720 + x / 5040))));
  return (std::expm1(x) - x - 0.5 * x * x) / (x * x);
}

}  // namespace

AdiabaticSolitonPath::AdiabaticSolitonPath(FiberSegment segment, double n0) : segment_(std::move(segment)), n0_(n0) {
  if (!(n0 > 0.0)) throw DomainError("photon number must be positive");
  if (!(segment_.kappa > 0.0)) throw DomainError("adiabatic soliton needs a Kerr nonlinearity");
  require_non_negative_loss(segment_.alpha);
  if (!(beta_at(segment_.dispersion, 0.0) < 0.0) || !(beta_at(segment_.dispersion, segment_.length) < 0.0))
    throw DomainError("adiabatic soliton needs anomalous (negative) dispersion throughout");
}

double AdiabaticSolitonPath::n_photons(double z) const { return n0_ * std::exp(-segment_.alpha * z); }

double AdiabaticSolitonPath::tau(double z) const {
  return 2.0 * std::abs(beta_at(segment_.dispersion, z)) / (segment_.kappa * n_photons(z));
}

double AdiabaticSolitonPath::amplitude(double z) const { return std::sqrt(n_photons(z) / (2.0 * tau(z))); }

double AdiabaticSolitonPath::dt_rms(double z) const { return kPi / (2.0 * kSqrt3) * tau(z); }

double AdiabaticSolitonPath::domega_rms(double z) const { return 1.0 / (kSqrt3 * tau(z)); }

double AdiabaticSolitonPath::soliton_period(double z) const {
  return pulsejitter::soliton_period(beta_at(segment_.dispersion, z), tau(z));
}

AdiabaticSolitonPath adiabatic_ideal(const FiberSegment& segment, double n0) { return {segment, n0}; }

double ideal_squeezing_ratio(double beta0, double beta_end) {
  if (beta0 == 0.0 || beta_end == 0.0) throw DomainError("dispersion must be non-zero");
  return kPi2 / 9.0 * (beta0 * beta0) / (beta_end * beta_end);
}

double linear_nondispersive_t2(double t2_0, double dt0, double n0, double alpha, double z) {
  require_non_negative_loss(alpha);
  // dt0^2 / N(z) * (1 - e^{-alpha z}) = dt0^2 / N0 * (e^{alpha z} - 1)
  return t2_0 + dt0 * dt0 / n0 * std::expm1(alpha * z);
}

double linear_nondispersive_R(double r0, double tbp0, double alpha, double z) {
  require_non_negative_loss(alpha);
  const double keep = std::exp(-alpha * z);
  return r0 * keep - tbp0 * std::expm1(-alpha * z);
}

LinearDispersiveState linear_dispersive(const JitterState& init, const PulseMoments& m0, double net_dispersion,
                                        double alpha, double z) {
  require_non_negative_loss(alpha);
  const double d = net_dispersion;
  const double dw2 = m0.domega_rms * m0.domega_rms;
  LinearDispersiveState s;
  s.dt2 = m0.dt_rms * m0.dt_rms + m0.chirp * d + dw2 * d * d;
  s.chirp = m0.chirp + 2.0 * dw2 * d;
  s.domega2 = dw2;
  s.n_photons = m0.n_photons * std::exp(-alpha * z);
  s.t2 = init.t2_init + init.sym_init * d + init.omega2_init * d * d + s.dt2 / m0.n_photons * std::expm1(alpha * z);
  return s;
}

double normalized_distance(double domega0, double net_dispersion) { return domega0 * domega0 * net_dispersion; }

double linear_dispersive_R(double r0, double tbp0, double zeta, double alpha, double z) {
  require_non_negative_loss(alpha);
  const double keep = std::exp(-alpha * z);
  const double lost = -std::expm1(-alpha * z);
  return (r0 + 4.0 * zeta * zeta / r0) * keep + (tbp0 + 4.0 * zeta * zeta) * lost;
}

double soliton_constant_disp_t2(double t2_0, double omega2_0, double dt0, double domega0, double n0, double beta,
                                double alpha, double z) {
  require_non_negative_loss(alpha);
  const double quantum_dispersion = omega2_0 * beta * beta * z * z;
  const double diffusive = dt0 * dt0 / n0 * std::expm1(alpha * z);
  // (e^{az} - 1)/a^2 - z/a - z^2/2 = z^2 * gh_kernel(az), finite as a -> 0
  const double gordon_haus = 2.0 * beta * beta * domega0 * domega0 / n0 * z * z * gh_kernel(alpha * z);
  return t2_0 + quantum_dispersion + diffusive + gordon_haus;
}

double soliton_constant_disp_R(double t2_0, double omega2_0, double dt0, double domega0, double n0, double beta,
                               double alpha, double z) {
  const double n_z = n0 * std::exp(-alpha * z);
  return soliton_constant_disp_t2(t2_0, omega2_0, dt0, domega0, n0, beta, alpha, z) * 4.0 * n_z * domega0 *
         domega0;
}

double soliton_normalized_R(double r0, double lambda, double alpha, double z) {
  require_non_negative_loss(alpha);
  const double keep = std::exp(-alpha * z);
  const double zl = z / lambda;
  return r0 * keep + kPi2 * kPi2 / 81.0 / r0 * zl * zl * keep - kPi2 / 9.0 * std::expm1(-alpha * z) +
         2.0 * kPi2 / 9.0 * keep * zl * zl * gh_kernel(alpha * z);
}

double soliton_low_loss_R(double r0, double lambda, double alpha, double z) {
  require_non_negative_loss(alpha);
  const double zl = z / lambda;
  return r0 + kPi2 * kPi2 / 81.0 / r0 * zl * zl + kPi2 / 9.0 * (alpha * z) + kPi2 / 27.0 * zl * zl * (alpha * z);
}

GordonHausEstimates gh_estimates(double length, double dcf_length, double beta, double alpha, double domega0,
                                 double n0, double lambda, double squeezing_ratio) {
  require_non_negative_loss(alpha);
  if (!(length > 0.0) || !(lambda > 0.0) || !(n0 > 0.0)) throw DomainError("lengths and photon number must be positive");
  GordonHausEstimates e;
  const double prefactor = alpha * domega0 * domega0 * beta * beta / (6.0 * n0);
  e.managed_t2 = prefactor * length * length * (length + dcf_length);
  e.managed_t2_short_dcf = prefactor * length * length * length;
  const double ll = length / lambda;
  e.rough_ratio = ll * ll * (alpha * length);
  e.normalized_managed = kPi2 / 54.0 * e.rough_ratio;
  e.normalized_unmanaged = kPi2 / 27.0 * e.rough_ratio;
  e.length_cubed_bound = alpha > 0.0 ? 54.0 / kPi2 * lambda * lambda / alpha * squeezing_ratio : kInf;
  return e;
}

GaussianStateMoments gaussian_state_moments(const JointlyGaussianState& state) {
  if (state.n_photons < 1) throw DomainError("jointly Gaussian state needs at least one photon");
  if (!(state.big_b > 0.0)) throw DomainError("B must be positive");
  if (!(state.small_b >= 0.0)) throw DomainError("b must be non-negative");
  const double n = state.n_photons;
  const double bb2 = state.big_b * state.big_b;
  const double sb2 = state.small_b * state.small_b;
  const double rel = 1.0 - 1.0 / n;

  GaussianStateMoments m;
  m.omega2 = bb2;
  m.t2 = 1.0 / (4.0 * n * n * bb2);
  m.domega2 = bb2 + rel * sb2;
  // a single photon has no relative coordinate, so b drops out entirely
  m.dt2 = m.t2 + (rel == 0.0 ? 0.0 : (sb2 > 0.0 ? rel / (4.0 * sb2) : kInf));
  m.tbp = 4.0 * m.dt2 * m.domega2;
  m.squeezing_ratio = m.domega2 / (n * bb2);
  return m;
}

double time_bandwidth_product(double squeezing_ratio, double n_photons) {
  if (!(n_photons >= 1.0)) throw DomainError("photon number must be at least one");
  const double r = squeezing_ratio;
  const double inv_n = 1.0 / n_photons;
  const double rel = 1.0 - inv_n;
  if (rel == 0.0) return r * inv_n;
  const double denom = 1.0 - inv_n / r;
  if (!(denom > 0.0)) return kInf;
  // rel * (rel / denom) keeps R = 1 exactly at tbp = 1
  return r * inv_n + rel * (rel / denom);
}

double gaussian_lossy_R(const JointlyGaussianState& state, double alpha, double z) {
  require_non_negative_loss(alpha);
  const auto m = gaussian_state_moments(state);
  if (alpha * z == 0.0) return m.squeezing_ratio;
  const double tbp0 = time_bandwidth_product(m.squeezing_ratio, state.n_photons);
  if (std::isinf(tbp0)) return kInf;
  return linear_nondispersive_R(m.squeezing_ratio, tbp0, alpha, z);
}

double fock_inverse_square_number(double n_photons) {
  if (!(n_photons >= 1.0)) throw DomainError("Fock state needs at least one photon");
  return 1.0 / (n_photons * n_photons);
}

double exact_heisenberg_t2(double n_photons, double domega_prime) {
  return fock_inverse_square_number(n_photons) / (4.0 * domega_prime * domega_prime);
}

double heisenberg_t2(double n_photons, double domega) { return 1.0 / (4.0 * n_photons * n_photons * domega * domega); }

double sql_t2(double n_photons, double domega) { return 1.0 / (4.0 * n_photons * domega * domega); }

}  // namespace pulsejitter::analytic
