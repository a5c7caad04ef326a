#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace pulsejitter {

/// beta(s) = beta for the whole segment.
struct ConstantDispersion {
  double beta = 0.0;  // ps^2/m
};

/// Dispersion-increasing taper, beta(s) = beta_end / (1 + (length - s) / ramp_length)
/// for segment-local s in [0, length].
struct IncreasingDispersion {
  double beta_end = 0.0;     // ps^2/m, value reached at s = length
  double length = 0.0;       // m
  double ramp_length = 0.0;  // m, must be > 0
};

using DispersionProfile = std::variant<ConstantDispersion, IncreasingDispersion>;

double beta_at(const DispersionProfile& profile, double s_m);
double beta_derivative_at(const DispersionProfile& profile, double s_m);
/// \int_0^s beta(s') ds', exact antiderivative.
double integrated_beta(const DispersionProfile& profile, double s_m);
/// Largest |beta| attained on [0, length].
double max_abs_beta(const DispersionProfile& profile, double length_m);

struct FiberSegment {
  double length = 0.0;  // m
  double alpha = 0.0;   // 1/m
  double kappa = 0.0;   // ps/m
  DispersionProfile dispersion = ConstantDispersion{};
};

// Ordered concatenation of segments in a global coordinate z.  A junction
// z belongs to the segment that starts there; the far end of the link
// belongs to the last segment.
class FiberLink {
 public:
  explicit FiberLink(std::vector<FiberSegment> segments);

  struct Location {
    std::size_t index;
    double local_z;
  };

  const std::vector<FiberSegment>& segments() const noexcept { return segments_; }
  double total_length() const noexcept { return starts_.back(); }
  double segment_start(std::size_t index) const { return starts_.at(index); }

  Location locate(double z_m) const;

 private:
  std::vector<FiberSegment> segments_;
  std::vector<double> starts_;  // size segments + 1
};

double beta_at(const FiberLink& link, double z_m);
double alpha_at(const FiberLink& link, double z_m);
/// \int_0^z beta, summed segment by segment from exact antiderivatives.
double net_dispersion(const FiberLink& link, double z_m);

/// Length of a constant-dispersion segment with coefficient `beta` that
/// brings the net dispersion of `preceding` back to zero.
double compensating_length(const FiberLink& preceding, double beta);

/// Lambda = (pi/2) tau^2 / |beta|
double soliton_period(double beta, double tau_ps);
/// FOM = (2/pi) |beta| / (alpha tau^2) = 1 / (alpha Lambda)
double figure_of_merit(double alpha, double beta, double tau_ps);

// Adiabaticity diagnostics: compared against the soliton period, never enforced.
/// |beta / (d beta / dz)|; infinite for constant dispersion.
double dispersion_scale_length(const FiberLink& link, double z_m);
/// 1 / alpha; infinite for a lossless segment.
double loss_scale_length(const FiberLink& link, double z_m);

}  // namespace pulsejitter
