#pragma once

#include <limits>
#include <utility>

#include "ardtw/affine.hpp"

namespace ardtw::detail {

// Alternates align(params) -> path and fit(path) -> params from (1, 0).
// Stops once the objective drops by less than d_stop, returning the
// iterate that triggered the test, or after max_iters iterations.
template <class AlignStep, class FitStep, class Objective>
EmResult run_hard_em(AlignStep&& align, FitStep&& fit, Objective&& objective, const EmConfig& em) {
  em.validate();
  EmResult result;
  AffineParams params{1.0, 0.0};
  double previous = std::numeric_limits<double>::infinity();
  for (int v = 1; v <= em.max_iters; ++v) {
    AlignmentPath path = align(params);
    const AffineParams next = fit(path);
    const double value = objective(path, next);
    result.objective_history.push_back(value);
    result.path = std::move(path);
    result.params = next;
    result.measure = value;
    result.iterations = v;
    if (previous - value < em.d_stop) {
      result.converged = true;
      break;
    }
    previous = value;
    params = next;
  }
  return result;
}

}  // namespace ardtw::detail
