#include "simplex.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>

namespace plinar::detail {

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

double trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  const double value = f(x);
  return std::isfinite(value) ? value : std::numeric_limits<double>::max();
}

SimplexResult run_once(const Objective& f, const std::vector<double>& start, double step,
                       double tolerance, int max_iterations) {
  const std::size_t dim = start.size();
  gsl_multimin_function fn{&trampoline, dim, const_cast<Objective*>(&f)};
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* steps = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, start[i]);
  gsl_vector_set_all(steps, step);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(s, &fn, x, steps);

  int iter = 0;
  int status = GSL_CONTINUE;
  while (status == GSL_CONTINUE && iter < max_iterations) {
    ++iter;
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), tolerance);
  }
  SimplexResult out{std::vector<double>(dim), s->fval, iter, status == GSL_SUCCESS};
  for (std::size_t i = 0; i < dim; ++i) out.x[i] = gsl_vector_get(s->x, i);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(steps);
  gsl_vector_free(x);
  return out;
}

}  // namespace

SimplexResult minimize_simplex(const Objective& f, const std::vector<double>& start, double step,
                               double tolerance, int max_iterations) {
  gsl_set_error_handler_off();
  SimplexResult first = run_once(f, start, step, tolerance, max_iterations);
  SimplexResult second = run_once(f, first.x, step * 0.1, tolerance, max_iterations);
  second.iterations += first.iterations;
  second.converged = second.converged && first.converged;
  if (first.value < second.value) {
    first.iterations = second.iterations;
    first.converged = second.converged;
    return first;
  }
  return second;
}

}  // namespace plinar::detail
