// Deterministic derivative-free optimizers and a small parallel-map helper.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace spincorr::opt {

using Objective = std::function<double(const std::vector<double>&)>;

struct NelderMeadOptions {
  int max_iterations = 200;
  double f_tolerance = 1e-8;  // stop when the simplex value spread drops below this
  double x_tolerance = 1e-10;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  double residual = 0.0;  // final simplex value spread
};

/// Nelder-Mead with a fixed axis-aligned initial simplex of size `step`.
MinimizeResult nelder_mead(const Objective& f, std::vector<double> x0, double step,
                           const NelderMeadOptions& options = {});

/// Golden-section search for a minimum of f on [lo, hi]; returns the abscissa.
double golden_section(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Worker count: SPINCORR_THREADS if set (>= 1), otherwise hardware concurrency.
unsigned worker_count();

/// out[i] = fn(i) for i in [0, n), evaluated across worker threads.
/// Results are stored by index, so any reduction over `out` is order-deterministic.
std::vector<double> parallel_map(std::size_t n, const std::function<double(std::size_t)>& fn);

/// Runs fn(i) for i in [0, n) across worker threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Radical-inverse (van der Corput) value of `index` in `base`; Halton coordinates use prime bases.
double radical_inverse(std::size_t index, unsigned base);

}  // namespace spincorr::opt
