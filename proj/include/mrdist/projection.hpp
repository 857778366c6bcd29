#pragma once

#include "mrdist/genfun.hpp"
#include "mrdist/kernel.hpp"

#include <complex>
#include <vector>

namespace mrdist {

enum class ProjectPath {
    aligned,  // quadrature on the kernel's dyadic lattice (default)
    rescaled, // routed through pair_scaled with a kernel-slice test function
};

// Value of the scale-lambda projection of f at point x with phase z:
// integral of f against 2^lambda q0(2^lambda x + z, 2^lambda y + z).
std::complex<double> project_at(const GeneralizedFunction& f, const ReproducingKernel& K,
                                double lambda, double z, double x,
                                ProjectPath path = ProjectPath::aligned, QuadOpts quad = {});

struct ProjectionSequence {
    double x0 = 0.0;
    double z = 0.0;
    std::vector<double> lambdas;
    std::vector<std::complex<double>> values;
    std::vector<double> abs_delta; // |v_k - v_{k-1}|, 0 for the first entry
};

ProjectionSequence expansion_sequence(const GeneralizedFunction& f, const ReproducingKernel& K,
                                      double x0, double z, const std::vector<double>& lambdas,
                                      QuadOpts quad = {});

// Resamples the projection at scale lambda on a grid, re-projects the
// sampled function, and returns the max deviation over xs.  When
// lambda_coarse >= 0, checks q_{lambda_coarse} q_lambda = q_{lambda_coarse}
// (nesting) instead of idempotence at equal scales.
double idempotence_check(const GeneralizedFunction& f, const ReproducingKernel& K, double lambda,
                         const std::vector<double>& xs, double lambda_coarse = -1.0,
                         QuadOpts quad = {});

struct PoissonOpts {
    int m_window = 8192;    // one-sided width of the partial periodization
    int bins_per_2pi = 64;  // frequency resolution: dv = 2*pi / bins_per_2pi
    int margin_bins = 16384; // outer integration margin beyond 2*pi*m_window
};

struct PoissonResult {
    double side_a = 0.0; // lattice sum 2^j sum_m phi(m)^2
    double side_b = 0.0; // frequency-side integral against the periodization
    double rel_deviation = 0.0;
};

// Frequency-domain identity behind the delta-comb expansion: compares the
// lattice autocorrelation sum with the integral of the interpolated
// spectrum against its partial periodization.
PoissonResult delta_expansion_poisson_check(const ReproducingKernel& K, int j,
                                            PoissonOpts opts = {});

} // namespace mrdist
