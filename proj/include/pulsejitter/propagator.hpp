#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "pulsejitter/fiber.hpp"
#include "pulsejitter/grid.hpp"
#include "pulsejitter/jitter_state.hpp"
#include "pulsejitter/moments.hpp"

namespace pulsejitter {

struct StepControl {
  double dz = 0.25;            // m, requested step
  double record_every = 5.0;   // m, record cadence; dz <= record_every
  // Steps are capped at this fraction of the shortest soliton period a
  // segment can produce, pi / (6 max|beta| dw^2) with dw measured at entry.
  double max_step_fraction = 1.0 / 200.0;
};

struct PropagationRecord {
  double z = 0.0;            // m, global coordinate
  std::size_t segment = 0;   // index of the segment that produced this record
  PulseMoments moments;
  JitterState jitter;
};

struct SegmentStepping {
  std::size_t steps = 0;
  double step = 0.0;  // m, uniform within the segment
};

struct PropagationResult {
  std::vector<PropagationRecord> records;   // strictly increasing in z, first at z = 0
  std::vector<SegmentStepping> stepping;    // one per segment
  Envelope final_envelope;
};

using RecordObserver = std::function<void(const PropagationRecord&, const Envelope&)>;

// Symmetric split-step integrator for
//   i dA/dz = (beta/2) d^2A/dt^2 - kappa |A|^2 A - (i alpha/2) A.
// Loss lives in the linear operator, so N decays exactly as e^{-\int alpha}.
class SplitStepPropagator {
 public:
  explicit SplitStepPropagator(const TimeGrid& grid);

  /// Half linear step, full Kerr step, half linear step; beta is the exact
  /// average of the profile over [s, s + dz].  Throws NumericalFailure on a non-finite field.
  void step(Envelope& envelope, const FiberSegment& segment, double s, double dz);

 private:
  void linear_half(const FiberSegment& segment, double beta, double dz);

  TimeGrid grid_;
  std::vector<double> omega2_;  // natural DFT order
  std::vector<Complex> field_;
  std::vector<Complex> spectrum_;
  long double produced_sum_ = -1.0L;
  long double produced_target_ = 0.0L;
};

/// One step on a copy of `envelope`.
Envelope step(Envelope envelope, const FiberSegment& segment, double s, double dz);

/// Step used inside `segment` for a requested dz, after the soliton-period cap.
SegmentStepping plan_segment(const FiberSegment& segment, const PulseMoments& entry, const StepControl& control);

/// Walks every segment of `link`, measuring the pulse after each step and
/// feeding consecutive moments to the jitter engine.  Records are taken at
/// z = 0, every `record_every` metres and at each segment end.
PropagationResult propagate(Envelope envelope, const FiberLink& link, const StepControl& control,
                            const JitterState& initial, const RecordObserver& observer = {});

}  // namespace pulsejitter
