// SPDX-License-Identifier: Apache-2.0
#include "mamimo/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mamimo {

void LinkParams::validate() const {
  const bool finite = std::isfinite(beta_lu) && std::isfinite(beta_ed) &&
                      std::isfinite(p_lu) && std::isfinite(p_ed) &&
                      std::isfinite(n0) && std::isfinite(rho);
  if (!finite) {
    throw std::invalid_argument("LinkParams: non-finite parameter");
  }
  if (!(beta_lu > 0.0) || !(beta_ed > 0.0)) {
    throw std::invalid_argument("LinkParams: betas must be positive");
  }
  if (p_lu < 0.0 || p_ed < 0.0 || n0 < 0.0) {
    throw std::invalid_argument("LinkParams: powers must be nonnegative");
  }
  if (m < 1) {
    throw std::invalid_argument("LinkParams: m must be >= 1");
  }
  if (rho < 0.0 || rho > 1.0) {
    throw std::invalid_argument("LinkParams: rho must be in [0, 1]");
  }
}

namespace {
void require_unit_modulus(Complex s, const char* what) {
  if (std::abs(std::abs(s) - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(what) + ": pilot symbol must be unit modulus");
  }
}
}  // namespace

LinkRealization sample_links(const LinkParams& params, RngStream& rng) {
  params.validate();
  LinkRealization links;
  links.g_lu = sample_circular_gaussian(rng, params.m, params.beta_lu);
  // Always drawn so the rho = 0 and rho > 0 paths consume the same samples.
  const ComplexVector w = sample_circular_gaussian(rng, params.m, params.beta_ed);
  const double scale = params.rho * std::sqrt(params.beta_ed / params.beta_lu);
  const double resid = std::sqrt(1.0 - params.rho * params.rho);
  links.g_ed = scale * links.g_lu + resid * w;
  return links;
}

TrainingSlot receive_training(const Eigen::Ref<const ComplexVector>& g_lu,
                              const Eigen::Ref<const ComplexVector>& g_ed,
                              const LinkParams& params, Complex p,
                              std::optional<Complex> q, RngStream& rng) {
  params.validate();
  require_unit_modulus(p, "receive_training(p)");
  if (g_lu.size() != params.m || g_ed.size() != params.m) {
    throw std::invalid_argument("receive_training: channel length != m");
  }
  TrainingSlot slot;
  slot.p = p;
  slot.q = q;
  slot.y = (std::sqrt(params.p_lu) * p) * g_lu;
  if (q.has_value()) {
    require_unit_modulus(*q, "receive_training(q)");
    slot.y += (std::sqrt(params.p_ed) * (*q)) * g_ed;
  }
  if (params.n0 > 0.0) {
    for (Eigen::Index i = 0; i < params.m; ++i) {
      slot.y[i] += rng.circular_gaussian(params.n0);
    }
  }
  return slot;
}

}  // namespace mamimo
