#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tsflow {

struct NelderMeadOptions {
  std::size_t max_iterations = 2000;
  // Converged when the simplex's function values agree to this relative
  // tolerance, or its vertices to this absolute tolerance.
  double tolerance = 1e-8;
  // Per-coordinate initial simplex offsets; empty means 0.1 everywhere.
  std::vector<double> steps;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  // Best vertex value after each iteration. Non-increasing by construction.
  std::vector<double> best_trace;
};

using Objective = std::function<double(std::span<const double>)>;

// Downhill simplex minimization. Infinite objective values act as a hard
// feasibility barrier; the start point itself must be finite.
NelderMeadResult nelder_mead(const Objective &f, std::vector<double> start,
                             const NelderMeadOptions &options = {});

} // namespace tsflow
