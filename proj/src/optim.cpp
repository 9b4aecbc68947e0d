#include "tsflow/optim.hpp"

#include "tsflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsflow {

namespace {

using Point = std::vector<double>;

Point affine(const Point &a, const Point &b, double t) {
  // a + t (b - a)
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

} // namespace

NelderMeadResult nelder_mead(const Objective &f, std::vector<double> start,
                             const NelderMeadOptions &options) {
  const std::size_t dim = start.size();
  NelderMeadResult res;
  const double f0 = f(start);
  if (!std::isfinite(f0)) {
    throw Error(Errc::InvalidArgument, "Nelder-Mead start point is infeasible");
  }
  if (dim == 0) {
    res.x = std::move(start);
    res.value = f0;
    res.converged = true;
    return res;
  }

  std::vector<Point> simplex{start};
  std::vector<double> values{f0};
  for (std::size_t i = 0; i < dim; ++i) {
    Point p = start;
    const double step = i < options.steps.size() ? options.steps[i] : 0.1;
    p[i] += step;
    double v = f(p);
    if (!std::isfinite(v)) {
      // Step the other way before giving up on this direction.
      p[i] = start[i] - step;
      v = f(p);
    }
    simplex.push_back(std::move(p));
    values.push_back(v);
  }

  std::vector<std::size_t> order(dim + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Point> s;
    std::vector<double> v;
    for (auto i : order) {
      s.push_back(std::move(simplex[i]));
      v.push_back(values[i]);
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  auto converged = [&] {
    const double spread = values.back() - values.front();
    if (std::isfinite(spread) &&
        spread <= options.tolerance * (std::abs(values.front()) + options.tolerance)) {
      return true;
    }
    double size = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        size = std::max(size, std::abs(simplex[i][j] - simplex[0][j]));
      }
    }
    return size <= options.tolerance;
  };

  sort_simplex();
  while (res.iterations < options.max_iterations) {
    if (converged()) {
      res.converged = true;
      break;
    }
    ++res.iterations;

    Point centroid(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[i][j];
    }
    for (auto &c : centroid) c /= static_cast<double>(dim);

    const Point &worst = simplex[dim];
    const Point reflected = affine(centroid, worst, -1.0);
    const double fr = f(reflected);

    if (fr < values[0]) {
      const Point expanded = affine(centroid, worst, -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[dim] = expanded;
        values[dim] = fe;
      } else {
        simplex[dim] = reflected;
        values[dim] = fr;
      }
    } else if (fr < values[dim - 1]) {
      simplex[dim] = reflected;
      values[dim] = fr;
    } else {
      const bool outside = fr < values[dim];
      const Point contracted = outside ? affine(centroid, worst, -0.5) : affine(centroid, worst, 0.5);
      const double fc = f(contracted);
      if (fc < (outside ? fr : values[dim])) {
        simplex[dim] = contracted;
        values[dim] = fc;
      } else {
        for (std::size_t i = 1; i <= dim; ++i) {
          simplex[i] = affine(simplex[0], simplex[i], 0.5);
          values[i] = f(simplex[i]);
        }
      }
    }
    sort_simplex();
    res.best_trace.push_back(values[0]);
  }
  if (!res.converged && converged()) {
    res.converged = true;
  }
  res.x = simplex[0];
  res.value = values[0];
  return res;
}

} // namespace tsflow
