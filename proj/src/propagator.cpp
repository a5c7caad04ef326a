#include "pulsejitter/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "fft.hpp"
#include "pulsejitter/errors.hpp"
#include "pulsejitter/jitter.hpp"

namespace pulsejitter {

namespace {

long double photon_sum(std::span<const Complex> v) {
  long double acc = 0.0L;
  for (const auto& x : v) acc += std::norm(x);
  return acc;
}

// Mean of beta over [s, s + dz] from the exact antiderivative; agrees with
// the midpoint value to second order and keeps \int beta exact.
double step_beta(const FiberSegment& segment, double s, double dz) {
  if (std::holds_alternative<ConstantDispersion>(segment.dispersion)) return beta_at(segment.dispersion, s);
  return (integrated_beta(segment.dispersion, s + dz) - integrated_beta(segment.dispersion, s)) / dz;
}

}  // namespace

SplitStepPropagator::SplitStepPropagator(const TimeGrid& grid)
    : grid_(grid), omega2_(grid.size()), field_(grid.size()), spectrum_(grid.size()) {
  for (std::size_t m = 0; m < grid.size(); ++m) {
    const double w = detail::bin_omega(m, grid.size(), grid.domega());
    omega2_[m] = w * w;
  }
}

void SplitStepPropagator::linear_half(const FiberSegment& segment, double beta, double dz) {
  // spectrum_ holds the field spectrum on entry; leaves the updated field in field_.
  const double inv_n = 1.0 / static_cast<double>(grid_.size());
  const double decay = std::exp(-0.25 * segment.alpha * dz) * inv_n;
  for (std::size_t m = 0; m < omega2_.size(); ++m)
    spectrum_[m] *= std::polar(decay, 0.25 * beta * omega2_[m] * dz);
  detail::dft_minus(spectrum_, field_);
}

void SplitStepPropagator::step(Envelope& envelope, const FiberSegment& segment, double s, double dz) {
  if (!(dz > 0.0)) throw DomainError("step length must be positive");
  if (s + dz > segment.length * (1.0 + 1e-12)) throw DomainError("step runs past the end of the segment");
  if (!(envelope.grid() == grid_)) throw ConfigError("envelope grid does not match propagator grid");

  const double beta = step_beta(segment, s, dz);
  auto a = envelope.samples();
  const long double entry = photon_sum(a);
  const long double base = entry == produced_sum_ ? produced_target_ : entry;
  const long double target = base * std::exp(-static_cast<long double>(segment.alpha) * dz);

  detail::dft_plus(a, spectrum_);
  linear_half(segment, beta, dz);

  const double kdz = segment.kappa * dz;
  for (auto& v : field_) v *= std::polar(1.0, kdz * std::norm(v));

  detail::dft_plus(field_, spectrum_);
  linear_half(segment, beta, dz);

  // Every operator above is unitary up to the analytic loss, so the norm is
  // reset to its exact value.  Chained steps continue from the exact target
  // rather than the rounded field, which keeps N(z) on its exponential.
  const long double reached = photon_sum(field_);
  const double renorm = reached > 0.0L ? static_cast<double>(std::sqrt(target / reached)) : 1.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    field_[k] *= renorm;
    if (!std::isfinite(field_[k].real()) || !std::isfinite(field_[k].imag()))
      throw NumericalFailure("non-finite field sample", s + dz);
    a[k] = field_[k];
  }
  produced_sum_ = photon_sum(a);
  produced_target_ = target;
}

Envelope step(Envelope envelope, const FiberSegment& segment, double s, double dz) {
  SplitStepPropagator(envelope.grid()).step(envelope, segment, s, dz);
  return envelope;
}

SegmentStepping plan_segment(const FiberSegment& segment, const PulseMoments& entry, const StepControl& control) {
  double h = control.dz;
  const double beta_max = max_abs_beta(segment.dispersion, segment.length);
  if (beta_max > 0.0 && entry.domega_rms > 0.0) {
    const double period = std::numbers::pi / (6.0 * beta_max * entry.domega_rms * entry.domega_rms);
    h = std::min(h, period * control.max_step_fraction);
  }
  SegmentStepping plan;
  plan.steps = static_cast<std::size_t>(std::max(1.0, std::ceil(segment.length / h - 1e-9)));
  plan.step = segment.length / static_cast<double>(plan.steps);
  return plan;
}

PropagationResult propagate(Envelope envelope, const FiberLink& link, const StepControl& control,
                            const JitterState& initial, const RecordObserver& observer) {
  if (!(control.dz > 0.0)) throw ConfigError("step length must be positive");
  if (!(control.record_every >= control.dz)) throw ConfigError("record spacing must be at least the step length");
  if (!(control.max_step_fraction > 0.0)) throw ConfigError("step fraction must be positive");

  SplitStepPropagator stepper(envelope.grid());
  PropagationResult out{{}, {}, envelope};

  PulseMoments previous = measure(envelope);
  JitterState state = initial;

  auto emit = [&](double z, std::size_t segment) {
    out.records.push_back({z, segment, previous, state});
    if (observer) observer(out.records.back(), envelope);
  };
  emit(0.0, 0);

  double next_record = control.record_every;
  for (std::size_t i = 0; i < link.segments().size(); ++i) {
    const auto& seg = link.segments()[i];
    const double start = link.segment_start(i);
    const auto plan = plan_segment(seg, previous, control);
    out.stepping.push_back(plan);

    for (std::size_t k = 0; k < plan.steps; ++k) {
      const double s = static_cast<double>(k) * plan.step;
      const double beta = step_beta(seg, s, plan.step);
      try {
        stepper.step(envelope, seg, s, plan.step);
      } catch (const NumericalFailure&) {
        throw NumericalFailure("non-finite field sample", start + s + plan.step);
      }
      const PulseMoments current = measure(envelope);
      if (!std::isfinite(current.dt_rms) || !std::isfinite(current.domega_rms) || !std::isfinite(current.chirp))
        throw NumericalFailure("non-finite pulse moments", start + s + plan.step);
      state = advance(state, plan.step, beta, seg.alpha, previous, current);
      previous = current;

      const bool segment_end = k + 1 == plan.steps;
      const double z = segment_end ? start + seg.length : start + static_cast<double>(k + 1) * plan.step;
      if (segment_end || z >= next_record * (1.0 - 1e-12)) {
        emit(z, i);
        while (next_record <= z * (1.0 + 1e-12)) next_record += control.record_every;
      }
    }
  }
  out.final_envelope = std::move(envelope);
  return out;
}

}  // namespace pulsejitter
