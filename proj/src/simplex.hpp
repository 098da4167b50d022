#pragma once

#include <functional>
#include <vector>

namespace plinar::detail {

struct SimplexResult {
  std::vector<double> x;
  double value;
  int iterations;
  bool converged;
};

/// Nelder-Mead (GSL nmsimplex2) from `start` with a uniform initial step.
/// Converges when the simplex size drops below `tolerance`; one restart
/// from the reported optimum guards against a collapsed simplex.
SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& start, double step, double tolerance,
                               int max_iterations);

}  // namespace plinar::detail
