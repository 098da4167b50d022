#include <exception>

#include "plinar/distances.hpp"

namespace plinar {

std::vector<DistanceRecord> evaluate_points(std::span<const GridPoint> points, int k, double tail,
                                            Execution exec) {
  std::vector<DistanceRecord> out(points.size());
  const auto n = static_cast<long>(points.size());
  if (exec == Execution::serial) {
    for (long i = 0; i < n; ++i) {
      const GridPoint& g = points[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = distance_record(g.alpha, g.theta, g.x_n, k, tail);
    }
    return out;
  }
  // Exceptions cannot leave an OpenMP region; keep the first and rethrow.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < n; ++i) {
    try {
      const GridPoint& g = points[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(i)] = distance_record(g.alpha, g.theta, g.x_n, k, tail);
    } catch (...) {
#pragma omp critical(plinar_sweep_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace plinar
