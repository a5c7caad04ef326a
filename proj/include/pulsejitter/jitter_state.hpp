#pragma once

namespace pulsejitter {

// Second moments of the pulse position T and momentum Omega, carried as
// the initial values plus running accumulators of the noise integrals.
//
//   D_net  = \int beta                    t2_diff  = \int alpha dt^2 / N
//   c1     = \int alpha C / N             t2_chirp = \int beta c1
//   g1     = \int alpha dw^2 / N          g2       = \int beta g1
//   t2_gh  = 2 \int beta g2
//
// <T^2>(z) = t2_init + sym_init D_net + omega2_init D_net^2
//            + t2_diff + t2_chirp + t2_gh
// <Omega^2>(z) = omega2_init + g1
struct JitterState {
  double t2_init = 0.0;      // ps^2, <T^2(0)>
  double sym_init = 0.0;     // ps,   <T(0)Omega(0) + Omega(0)T(0)>
  double omega2_init = 0.0;  // 1/ps^2, <Omega^2(0)>
  double d_net = 0.0;        // ps^2
  double g1 = 0.0;           // 1/ps^2
  double g2 = 0.0;           // 1/ps
  double t2_gh = 0.0;        // ps^2
  double c1 = 0.0;           // 1/ps
  double t2_chirp = 0.0;     // ps^2
  double t2_diff = 0.0;      // ps^2
};

}  // namespace pulsejitter
