#include "pulsejitter/units.hpp"

#include <cmath>
#include <numbers>

#include "pulsejitter/errors.hpp"

namespace pulsejitter::units {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive and finite");
}

}  // namespace

double alpha_from_db_per_km(double a_db_per_km) {
  if (!(a_db_per_km >= 0.0)) throw DomainError("loss must be non-negative (gain is not modeled)");
  return a_db_per_km * std::numbers::ln10 / 10.0 / kMetersPerKm;
}

double db_per_km_from_alpha(double alpha_per_m) {
  if (!(alpha_per_m >= 0.0)) throw DomainError("loss must be non-negative (gain is not modeled)");
  return alpha_per_m * kMetersPerKm * 10.0 / std::numbers::ln10;
}

double carrier_angular_frequency(double lambda0_m) {
  require_positive(lambda0_m, "wavelength");
  return 2.0 * PhysicalConstants::pi * PhysicalConstants::c_light / lambda0_m;
}

double photon_energy(double lambda0_m) { return PhysicalConstants::hbar * carrier_angular_frequency(lambda0_m); }

double kappa_from_fiber(double n2_m2_per_w, double a_eff_m2, double lambda0_m) {
  require_positive(n2_m2_per_w, "n2");
  require_positive(a_eff_m2, "effective area");
  const double w0 = carrier_angular_frequency(lambda0_m);
  const double kappa_s_per_m =
      PhysicalConstants::hbar * w0 * (w0 * n2_m2_per_w / (PhysicalConstants::c_light * a_eff_m2));
  return kappa_s_per_m * kPsPerSecond;
}

double photon_number_from_energy(double energy_j, double lambda0_m) {
  if (!(energy_j >= 0.0)) throw DomainError("pulse energy must be non-negative");
  return energy_j / photon_energy(lambda0_m);
}

double energy_from_photon_number(double n_photons, double lambda0_m) {
  if (!(n_photons >= 0.0)) throw DomainError("photon number must be non-negative");
  return n_photons * photon_energy(lambda0_m);
}

}  // namespace pulsejitter::units
