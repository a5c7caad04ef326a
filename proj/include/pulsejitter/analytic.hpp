#pragma once

// Closed-form results used as references for the numerical pipeline:
// ideal adiabatic soliton compression, jitter growth in linear and
// soliton-like transmission, rough Gordon-Haus estimates, and the
// moments of the jointly Gaussian N-photon state.
//
// Divergent quantities (R -> 1/N, b -> 0) come back as +infinity rather
// than throwing so that parameter sweeps can plot the asymptote.

#include "pulsejitter/fiber.hpp"
#include "pulsejitter/jitter_state.hpp"
#include "pulsejitter/moments.hpp"

namespace pulsejitter::analytic {

// Fundamental soliton that follows beta(z) and N(z) = N0 e^{-alpha z}
// adiabatically, tau(z) = 2 |beta(z)| / (kappa N(z)).
class AdiabaticSolitonPath {
 public:
  /// Requires beta < 0 over the whole segment and kappa > 0.
  AdiabaticSolitonPath(FiberSegment segment, double n0);

  double n_photons(double z) const;
  double tau(double z) const;
  double amplitude(double z) const;  // A0 = sqrt(N / 2 tau)
  double dt_rms(double z) const;     // (pi / 2 sqrt 3) tau
  double domega_rms(double z) const; // 1 / (sqrt 3 tau)
  double soliton_period(double z) const;

  const FiberSegment& segment() const noexcept { return segment_; }

 private:
  FiberSegment segment_;
  double n0_;
};

AdiabaticSolitonPath adiabatic_ideal(const FiberSegment& segment, double n0);

/// Lossless adiabatic squeezing ratio (pi^2/9) beta(0)^2 / beta(L)^2.
double ideal_squeezing_ratio(double beta0, double beta_end);

// Linear, non-dispersive transmission with uniform loss.
double linear_nondispersive_t2(double t2_0, double dt0, double n0, double alpha, double z);
/// R(z) = R(0) e^{-alpha z} + tbp0 (1 - e^{-alpha z}), tbp0 = 4 dt0^2 dw0^2.
double linear_nondispersive_R(double r0, double tbp0, double alpha, double z);

// Linear, dispersive transmission with uniform loss.  `net_dispersion` is
// \int_0^z beta; any profile is allowed.
struct LinearDispersiveState {
  double dt2 = 0.0;        // ps^2
  double chirp = 0.0;
  double domega2 = 0.0;    // 1/ps^2
  double n_photons = 0.0;
  double t2 = 0.0;         // ps^2, <T^2>(z)
};

LinearDispersiveState linear_dispersive(const JitterState& init, const PulseMoments& m0, double net_dispersion,
                                        double alpha, double z);

/// zeta = dw0^2 \int beta
double normalized_distance(double domega0, double net_dispersion);

/// Jointly Gaussian input: R(z) = [R0 + 4 zeta^2 / R0] e^{-alpha z} + [tbp0 + 4 zeta^2] (1 - e^{-alpha z}).
double linear_dispersive_R(double r0, double tbp0, double zeta, double alpha, double z);

// Soliton in constant dispersion with frozen dt, dw and zero chirp,
// N(z) = N0 e^{-alpha z}, and <TΩ+ΩT>(0) = 0.
double soliton_constant_disp_t2(double t2_0, double omega2_0, double dt0, double domega0, double n0, double beta,
                                double alpha, double z);
/// <T^2>(z) / SQL(z) for the same assumptions.
double soliton_constant_disp_R(double t2_0, double omega2_0, double dt0, double domega0, double n0, double beta,
                               double alpha, double z);
/// Sech special case with 4 <T^2(0)><Omega^2(0)> = (pi^2/9) / N0^2, in
/// terms of R(0), the soliton period and z.
double soliton_normalized_R(double r0, double lambda, double alpha, double z);
/// Low-loss expansion (alpha Lambda << 1, alpha z << 1) of the above.
double soliton_low_loss_R(double r0, double lambda, double alpha, double z);

struct GordonHausEstimates {
  double managed_t2 = 0.0;             // ps^2, alpha dw^2 beta^2 L^2 (L + L') / (6 N0)
  double managed_t2_short_dcf = 0.0;   // ps^2, L' neglected
  double normalized_managed = 0.0;     // (pi^2/54) (L/Lambda)^2 (alpha L)
  double normalized_unmanaged = 0.0;   // (pi^2/27) (L/Lambda)^2 (alpha L), end of first fiber
  double rough_ratio = 0.0;            // (L/Lambda)^2 (alpha L)
  double length_cubed_bound = 0.0;     // m^3, (54/pi^2) (Lambda^2 / alpha) R; want L^3 << this
};

GordonHausEstimates gh_estimates(double length, double dcf_length, double beta, double alpha, double domega0,
                                 double n0, double lambda, double squeezing_ratio = 1.0);

// N-photon state with jointly Gaussian spectral amplitude; B sets the
// centre-of-mass bandwidth and b the relative bandwidth.
struct JointlyGaussianState {
  int n_photons = 1;
  double big_b = 0.0;    // 1/ps, > 0
  double small_b = 0.0;  // 1/ps, >= 0
};

struct GaussianStateMoments {
  double omega2 = 0.0;   // <Omega^2> = B^2
  double t2 = 0.0;       // <T^2> = 1 / (4 N^2 B^2)
  double domega2 = 0.0;  // B^2 + (1 - 1/N) b^2
  double dt2 = 0.0;      // 1/(4 N^2 B^2) + (1 - 1/N) / (4 b^2); infinite at b = 0
  double tbp = 0.0;      // 4 dt^2 dw^2
  double squeezing_ratio = 0.0;  // dw^2 / (N B^2)
};

GaussianStateMoments gaussian_state_moments(const JointlyGaussianState& state);

/// 4 dt^2 dw^2 = R/N + (1 - 1/N)^2 / (1 - 1/(N R)); infinite for R <= 1/N.
double time_bandwidth_product(double squeezing_ratio, double n_photons);

/// R(z) for a lossy linear channel fed with a jointly Gaussian state.
double gaussian_lossy_R(const JointlyGaussianState& state, double alpha, double z);

/// <N^-2> for a Fock state, 1/N^2.
double fock_inverse_square_number(double n_photons);
/// Heisenberg limit with the inverse number operator, <N^-2> / (4 dw'^2), Fock statistics.
double exact_heisenberg_t2(double n_photons, double domega_prime);
/// 1 / (4 N^2 dw^2)
double heisenberg_t2(double n_photons, double domega);
/// 1 / (4 N dw^2)
double sql_t2(double n_photons, double domega);

}  // namespace pulsejitter::analytic
