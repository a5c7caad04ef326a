#pragma once

#include <span>

#include "pulsejitter/grid.hpp"

namespace pulsejitter::detail {

// Unnormalized out-of-place DFTs in natural (unshifted) index order.
//   forward_plus:  X_m = sum_k x_k e^{+2 pi i m k / n}
//   forward_minus: X_m = sum_k x_k e^{-2 pi i m k / n}
// With A(t) built from e^{-i w t} components, forward_plus maps the field to
// its spectrum and forward_minus (divided by n) maps it back.
void dft_plus(std::span<const Complex> in, std::span<Complex> out);
void dft_minus(std::span<const Complex> in, std::span<Complex> out);

/// Signed angular frequency of natural-order bin m.
inline double bin_omega(std::size_t m, std::size_t n, double domega) {
  const auto sm = static_cast<double>(m);
  return (m < n / 2 ? sm : sm - static_cast<double>(n)) * domega;
}

}  // namespace pulsejitter::detail
