#pragma once

#include "pulsejitter/jitter_state.hpp"
#include "pulsejitter/moments.hpp"

namespace pulsejitter {

/// Advances the jitter accumulators across a step of length dz with
/// dispersion `beta` (ps^2/m) and loss `alpha` (1/m).  The loss-driven
/// noise terms are integrated with the trapezoid rule between the moments
/// at the start and end of the step; each nested integral is advanced with
/// the trapezoid rule on its inner accumulator.
JitterState advance(const JitterState& state, double dz, double beta, double alpha, const PulseMoments& start,
                    const PulseMoments& end);

/// Same, with the drive terms frozen at `moments` over the step.
JitterState advance(const JitterState& state, double dz, double beta, double alpha, const PulseMoments& moments);

/// Initial fluctuation plus quantum-dispersion terms (first three terms of <T^2>).
double dispersive_t2(const JitterState& state);
double total_t2(const JitterState& state);
double total_omega2(const JitterState& state);

struct JitterComponents {
  double initial_dispersive = 0.0;  // ps^2
  double diffusive = 0.0;           // ps^2
  double chirp_induced = 0.0;       // ps^2
  double gordon_haus = 0.0;         // ps^2
};

struct JitterReport {
  double t2_total = 0.0;        // ps^2
  JitterComponents components;  // sums to t2_total
  double omega2_total = 0.0;    // 1/ps^2
  double sql_t2 = 0.0;          // 1/(4 N dw^2)
  double heisenberg_t2 = 0.0;   // 1/(4 N^2 dw^2)
  double squeezing_ratio = 0.0; // t2_total / sql_t2
  double squeezing_db = 0.0;    // 10 log10 R
};

/// Position jitter normalized against the limits at the same N and dw.
/// `moments` must describe the pulse at the same z as `state`.
JitterReport report(const JitterState& state, const PulseMoments& moments);

struct MomentumReport {
  double omega2_total = 0.0;   // 1/ps^2
  double sql_omega2 = 0.0;     // 1/(4 N dt^2)
  double heisenberg_omega2 = 0.0;  // 1/(4 N^2 dt^2)
  double ratio = 0.0;          // omega2_total / sql_omega2
};

MomentumReport momentum_report(const JitterState& state, const PulseMoments& moments);

}  // namespace pulsejitter
