// SPDX-License-Identifier: Apache-2.0
#include "mamimo/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mamimo {

ComplexVector sample_circular_gaussian(RngStream& rng, Eigen::Index length,
                                       double variance_per_element) {
  if (length < 1) {
    throw std::invalid_argument("sample_circular_gaussian: length must be >= 1");
  }
  if (!(variance_per_element > 0.0) || !std::isfinite(variance_per_element)) {
    throw std::invalid_argument(
        "sample_circular_gaussian: variance must be positive and finite");
  }
  ComplexVector v(length);
  for (Eigen::Index i = 0; i < length; ++i) {
    v[i] = rng.circular_gaussian(variance_per_element);
  }
  return v;
}

Complex inner_product(const Eigen::Ref<const ComplexVector>& a,
                      const Eigen::Ref<const ComplexVector>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("inner_product: length mismatch");
  }
  return a.dot(b);  // Eigen's dot conjugates the first argument
}

RealVector eigenvalues_hermitian(const Eigen::Ref<const ComplexMatrix>& m) {
  const Eigen::Index order = m.rows();
  if (order != m.cols() || order < 2 || order > 8) {
    throw std::invalid_argument("eigenvalues_hermitian: order must be in [2, 8]");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("eigenvalues_hermitian: input is not Hermitian");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalues_hermitian: decomposition failed");
  }
  const ComplexMatrix recon = solver.eigenvectors() *
                              solver.eigenvalues().asDiagonal() *
                              solver.eigenvectors().adjoint();
  if ((sym - recon).norm() > 1e-9 * std::max(sym.norm(), 1e-300)) {
    throw std::runtime_error("eigenvalues_hermitian: reconstruction residual too large");
  }
  return solver.eigenvalues().reverse();  // Eigen sorts ascending
}

PskAlphabet::PskAlphabet(int order) : order_(order) {
  if (order < 2) {
    throw std::invalid_argument("PskAlphabet: order must be >= 2");
  }
}

double PskAlphabet::phase(int k) const {
  if (k < 0 || k >= order_) {
    throw std::invalid_argument("PskAlphabet::phase: index out of range");
  }
  return 2.0 * std::numbers::pi * static_cast<double>(k) /
         static_cast<double>(order_);
}

Complex PskAlphabet::symbol(int k) const { return std::polar(1.0, phase(k)); }

Complex PskAlphabet::random_symbol(RngStream& rng) const {
  return symbol(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(order_))));
}

double nearest_psk_phase_distance(double phase, const PskAlphabet& alphabet) {
  const double step = 2.0 * std::numbers::pi / static_cast<double>(alphabet.order());
  return std::abs(std::remainder(phase, step));
}

}  // namespace mamimo
