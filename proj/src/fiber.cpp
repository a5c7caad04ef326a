#include "pulsejitter/fiber.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pulsejitter/errors.hpp"

namespace pulsejitter {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance-to-pole of the taper, ramp_length + length - s.
double taper_scale(const IncreasingDispersion& p, double s) { return p.ramp_length + p.length - s; }

}  // namespace

double beta_at(const DispersionProfile& profile, double s_m) {
  return std::visit(overloaded{
                        [](const ConstantDispersion& p) { return p.beta; },
                        [s_m](const IncreasingDispersion& p) { return p.beta_end * p.ramp_length / taper_scale(p, s_m); },
                    },
                    profile);
}

double beta_derivative_at(const DispersionProfile& profile, double s_m) {
  return std::visit(overloaded{
                        [](const ConstantDispersion&) { return 0.0; },
                        [s_m](const IncreasingDispersion& p) {
                          const double d = taper_scale(p, s_m);
                          return p.beta_end * p.ramp_length / (d * d);
                        },
                    },
                    profile);
}

double integrated_beta(const DispersionProfile& profile, double s_m) {
  return std::visit(overloaded{
                        [s_m](const ConstantDispersion& p) { return p.beta * s_m; },
                        [s_m](const IncreasingDispersion& p) {
                          return p.beta_end * p.ramp_length * std::log(taper_scale(p, 0.0) / taper_scale(p, s_m));
                        },
                    },
                    profile);
}

double max_abs_beta(const DispersionProfile& profile, double length_m) {
  return std::max(std::abs(beta_at(profile, 0.0)), std::abs(beta_at(profile, length_m)));
}

FiberLink::FiberLink(std::vector<FiberSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw ConfigError("fiber link needs at least one segment");
  starts_.reserve(segments_.size() + 1);
  starts_.push_back(0.0);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& seg = segments_[i];
    const std::string tag = "segment " + std::to_string(i + 1) + ": ";
    if (!(seg.length > 0.0) || !std::isfinite(seg.length)) throw ConfigError(tag + "length must be positive");
    if (!(seg.alpha >= 0.0)) throw ConfigError(tag + "loss must be non-negative");
    if (!(seg.kappa >= 0.0)) throw ConfigError(tag + "kerr coefficient must be non-negative");
    if (const auto* taper = std::get_if<IncreasingDispersion>(&seg.dispersion)) {
      if (!(taper->ramp_length > 0.0)) throw ConfigError(tag + "ramp length must be positive");
      if (std::abs(taper->length - seg.length) > 1e-9 * seg.length)
        throw ConfigError(tag + "taper length does not match segment length");
    }
    starts_.push_back(starts_.back() + seg.length);
  }
}

FiberLink::Location FiberLink::locate(double z_m) const {
  const double total = total_length();
  if (!(z_m >= 0.0) || z_m > total) throw DomainError("z = " + std::to_string(z_m) + " m outside link [0, " +
                                                      std::to_string(total) + "]");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (z_m < starts_[i + 1]) return {i, z_m - starts_[i]};
  }
  const std::size_t last = segments_.size() - 1;
  return {last, std::min(z_m - starts_[last], segments_[last].length)};
}

double beta_at(const FiberLink& link, double z_m) {
  const auto loc = link.locate(z_m);
  return beta_at(link.segments()[loc.index].dispersion, loc.local_z);
}

double alpha_at(const FiberLink& link, double z_m) { return link.segments()[link.locate(z_m).index].alpha; }

double net_dispersion(const FiberLink& link, double z_m) {
  const auto loc = link.locate(z_m);
  double total = 0.0;
  for (std::size_t i = 0; i < loc.index; ++i) {
    const auto& seg = link.segments()[i];
    total += integrated_beta(seg.dispersion, seg.length);
  }
  return total + integrated_beta(link.segments()[loc.index].dispersion, loc.local_z);
}

double compensating_length(const FiberLink& preceding, double beta) {
  if (beta == 0.0) throw DomainError("compensating fiber needs non-zero dispersion");
  const double length = -net_dispersion(preceding, preceding.total_length()) / beta;
  if (!(length > 0.0)) throw DomainError("compensating fiber dispersion has the wrong sign");
  return length;
}

double soliton_period(double beta, double tau_ps) {
  if (beta == 0.0) throw DomainError("soliton period undefined for zero dispersion");
  if (!(tau_ps > 0.0)) throw DomainError("pulse width must be positive");
  return 0.5 * std::numbers::pi * tau_ps * tau_ps / std::abs(beta);
}

double figure_of_merit(double alpha, double beta, double tau_ps) {
  if (!(alpha > 0.0)) throw DomainError("figure of merit needs positive loss");
  return 1.0 / (alpha * soliton_period(beta, tau_ps));
}

double dispersion_scale_length(const FiberLink& link, double z_m) {
  const auto loc = link.locate(z_m);
  const auto& profile = link.segments()[loc.index].dispersion;
  const double slope = beta_derivative_at(profile, loc.local_z);
  if (slope == 0.0) return kInf;
  return std::abs(beta_at(profile, loc.local_z) / slope);
}

double loss_scale_length(const FiberLink& link, double z_m) {
  const double alpha = alpha_at(link, z_m);
  return alpha > 0.0 ? 1.0 / alpha : kInf;
}

}  // namespace pulsejitter
