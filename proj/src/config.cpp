#include "omffm/config.hpp"

#include <stdexcept>

namespace omffm {

SolverConfig SolverConfig::resolved(int n) const {
  if (n < 1) throw std::invalid_argument("problem dimension must be positive");
  SolverConfig out = *this;
  if (out.kappa == 0.0) out.kappa = 1e-4 * std::sqrt(static_cast<double>(n));
  if (out.beta_U == 0.0) out.beta_U = out.epsilon;
  out.validate_resolved();
  return out;
}

void SolverConfig::validate_resolved() const {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(mu_ini > 0.0 && mu_ini < 1.0)) throw std::invalid_argument("mu_ini must be in (0, 1)");
  if (!(mu_hat > 0.0 && mu_hat < 1.0)) throw std::invalid_argument("mu_hat must be in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (!(beta_U > 0.0)) throw std::invalid_argument("beta_U must be positive");
  if (l < 1) throw std::invalid_argument("l must be >= 1");
  if (max_global_rounds < 1) throw std::invalid_argument("max_global_rounds must be >= 1");
  if (max_local_iters < 0) throw std::invalid_argument("max_local_iters must be >= 0");
  if (eval_budget < 0) throw std::invalid_argument("eval_budget must be >= 0");
  if (trial_count_factor < 1) throw std::invalid_argument("trial_count_factor must be >= 1");
}

}  // namespace omffm
