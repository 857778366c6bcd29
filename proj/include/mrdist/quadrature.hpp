#pragma once

#include <functional>
#include <vector>

namespace mrdist {

struct QuadOpts {
    double rel_tol = 1e-9;
    long budget = 1 << 20;   // maximum additional integrand evaluations
    int max_depth = 48;
};

// Adaptive Simpson on [a, b] (a <= b not required; orientation handled).
// The budget inside opts is consumed across calls sharing the object.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          QuadOpts& opts);

// Adaptive integration with geometric grading toward each listed singular
// point (where f may blow up integrably or lose smoothness).  Singular
// nodes themselves are never evaluated.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        const std::vector<double>& singular, QuadOpts& opts);

// Trapezoid rule over sorted, deduplicated nodes (non-uniform allowed).
double trapezoid_nodes(const std::vector<double>& xs, const std::vector<double>& fs);

} // namespace mrdist
