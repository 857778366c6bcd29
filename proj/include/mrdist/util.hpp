#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace mrdist {

// Number of worker threads: MRDIST_THREADS if set (>=1), else hardware count.
int thread_count();

// Deterministic parallel loop: body(i) for i in [0, n).  Each index writes
// only its own slot, so results are identical regardless of thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

struct LinFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Least-squares line through (xs[i], ys[i]).  Requires xs.size() >= 2.
LinFit linfit(const std::vector<double>& xs, const std::vector<double>& ys);

// Median of a (copied) vector.  Requires non-empty input.
double median(std::vector<double> v);

// Locale-independent "%.12g" rendering used for all numeric text output.
std::string fmt_g12(double v);

// Inclusive linear grid with n >= 2 points.
std::vector<double> linspace(double lo, double hi, int n);

// Inclusive logarithmic grid with n >= 2 points; lo, hi > 0.
std::vector<double> geomspace(double lo, double hi, int n);

} // namespace mrdist
