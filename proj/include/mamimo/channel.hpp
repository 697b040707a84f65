// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "mamimo/numerics.hpp"

namespace mamimo {

// Physical parameters of one BS/LU/ED uplink scenario. All powers linear.
struct LinkParams {
  double beta_lu = 1.0;   // LU large-scale fading (mean channel power per antenna)
  double beta_ed = 1.0;   // ED large-scale fading
  double p_lu = 1.0;      // LU pilot power
  double p_ed = 0.0;      // ED pilot power
  double n0 = 1.0;        // noise power per BS antenna
  Eigen::Index m = 1;     // BS antenna count
  double rho = 0.0;       // correlation of g_ed with g_lu, in [0, 1]

  void validate() const;
};

// One received uplink training slot: y is the length-M signal at the BS,
// p the LU pilot symbol, q the ED pilot symbol (absent while the ED is silent).
struct TrainingSlot {
  ComplexVector y;
  Complex p{1.0, 0.0};
  std::optional<Complex> q;
};

struct LinkRealization {
  ComplexVector g_lu;
  ComplexVector g_ed;
};

// Draw a channel realization: g_lu ~ CN(0, beta_lu I); g_ed has per-element
// variance beta_ed and correlation coefficient rho with g_lu (rho = 0 gives
// independent channels, rho = 1 with equal betas gives g_ed = g_lu).
LinkRealization sample_links(const LinkParams& params, RngStream& rng);

// y = sqrt(p_lu) p g_lu + sqrt(p_ed) q g_ed (term present iff q is) + noise,
// noise ~ CN(0, n0 I). Pilot symbols must be unit modulus.
TrainingSlot receive_training(const Eigen::Ref<const ComplexVector>& g_lu,
                              const Eigen::Ref<const ComplexVector>& g_ed,
                              const LinkParams& params, Complex p,
                              std::optional<Complex> q, RngStream& rng);

}  // namespace mamimo
