// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mamimo/rng.hpp"

namespace mamimo {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

// i.i.d. circularly-symmetric complex Gaussian vector, mean zero, with
// `variance_per_element` per element (real/imag parts variance/2 each).
ComplexVector sample_circular_gaussian(RngStream& rng, Eigen::Index length,
                                       double variance_per_element);

// Hermitian inner product a^H b = sum_i conj(a_i) b_i.
Complex inner_product(const Eigen::Ref<const ComplexVector>& a,
                      const Eigen::Ref<const ComplexVector>& b);

// All eigenvalues of a Hermitian matrix of order 2..8, sorted descending.
// Inputs farther than 1e-12 (relative) from Hermitian are rejected; the
// decomposition is verified against a 1e-9 reconstruction residual.
RealVector eigenvalues_hermitian(const Eigen::Ref<const ComplexMatrix>& m);

// N-PSK constellation: unit-modulus symbols at phases 2*pi*k/N, k = 0..N-1.
class PskAlphabet {
 public:
  explicit PskAlphabet(int order);

  int order() const { return order_; }
  double phase(int k) const;
  Complex symbol(int k) const;
  Complex random_symbol(RngStream& rng) const;

 private:
  int order_;
};

// Wrapped angular distance from `phase` (radians, any value) to the nearest
// alphabet grid phase. Result in [0, pi/N].
double nearest_psk_phase_distance(double phase, const PskAlphabet& alphabet);

}  // namespace mamimo
