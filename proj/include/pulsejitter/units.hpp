#pragma once

// Canonical units used throughout the library:
//   time      ps          length    m
//   beta      ps^2/m      alpha     1/m (power, natural log)
//   kappa     ps/m        |A|^2     photons/ps
//   energy    J
// Datasheet quantities (dB/km, ps^2/km, n2 in m^2/W, A_eff in um^2) are
// converted here and nowhere else.

#include <numbers>

namespace pulsejitter::units {

struct PhysicalConstants {
  static constexpr double c_light = 299792458.0;        // m/s
  static constexpr double hbar = 1.054571817e-34;       // J s
  static constexpr double pi = std::numbers::pi;
  static constexpr double planck = 2.0 * pi * hbar;     // J s
};

inline constexpr double kPsPerSecond = 1e12;
inline constexpr double kMetersPerKm = 1e3;

/// Power loss in dB/km to the natural-log coefficient alpha in 1/m.
double alpha_from_db_per_km(double a_db_per_km);
double db_per_km_from_alpha(double alpha_per_m);

/// ps^2/km -> ps^2/m
constexpr double beta_from_ps2_per_km(double beta_ps2_per_km) { return beta_ps2_per_km / kMetersPerKm; }

/// omega_0 = 2 pi c / lambda_0, in rad/s.
double carrier_angular_frequency(double lambda0_m);
double photon_energy(double lambda0_m);

/// Kerr coefficient kappa = hbar w0 * w0 n2 / (c A_eff), returned in ps/m so
/// that kappa * |A|^2 (photons/ps) is a rate per metre.
double kappa_from_fiber(double n2_m2_per_w, double a_eff_m2, double lambda0_m);

double photon_number_from_energy(double energy_j, double lambda0_m);
double energy_from_photon_number(double n_photons, double lambda0_m);

}  // namespace pulsejitter::units
