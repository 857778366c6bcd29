#pragma once

#include "mrdist/genfun.hpp"
#include "mrdist/kernel.hpp"
#include "mrdist/projection.hpp"

#include <complex>
#include <string>
#include <vector>

namespace mrdist {

// Slowly varying comparison function L(eps).
struct SlowlyVarying {
    enum class Kind { constant, log_power };
    Kind kind = Kind::constant;
    double beta = 0.0; // |log eps|^beta for log_power

    double operator()(double eps) const;
    std::string describe() const;
};

struct QuasiOpts {
    bool strict = true;        // throw InconsistentDegree on slope spread
    double slope_tol = 0.05;   // allowed spread across the battery
    double degen_rel = 1e-8;   // relative floor below which a pairing is degenerate
    QuadOpts quad;
};

struct QuasiFit {
    double x0 = 0.0;
    double alpha_hat = 0.0;
    SlowlyVarying L;
    std::vector<std::string> names;  // battery member names
    std::vector<double> slopes;      // per member (NaN when degenerate)
    std::vector<bool> used;
    double spread = 0.0;
    bool consistent = false;
    std::vector<double> eps;
    std::vector<std::vector<std::complex<double>>> pairings; // [eps][member]
    std::vector<std::complex<double>> g_samples;             // per used member, finest eps
    double homogeneity_max_dev = 0.0;
};

// Fit the quasiasymptotic degree alpha at x0 by log-log regression of
// |<f(x0+eps.), psi>| / L(eps) over the battery, with degenerate pairings
// dropped and the median slope reported.
QuasiFit quasi_fit(const GeneralizedFunction& f, double x0, const std::vector<double>& eps,
                   const std::vector<TestFunction>& battery, SlowlyVarying L = {},
                   QuasiOpts opts = {});

struct Qbth2Report {
    std::vector<double> lambdas;
    std::vector<double> proj_f;      // (q_lambda f)(x0)
    std::vector<double> proj_g;      // (q_lambda g)(x0) for the comparison profile
    std::vector<double> e_lambda;    // normalized deviations
    double c_limit = 0.0;            // 2^{alpha lambda_max} (q_lambda f)(x0) at the top scale
    double c_quadrature = 0.0;       // independent kernel moment when available
    bool decreasing_tail = false;    // |e| monotone decreasing over the last 4 scales
};

// Pointwise-convergence profile comparison: the projections of f at x0 are
// compared against the homogeneous comparison profile g of degree alpha,
//   e_lambda = [(q_l f)(x0) - L(2^-l)(q_l g)(x0)] / (2^{-alpha l} L(2^-l)).
Qbth2Report qbth2_check(const GeneralizedFunction& f, const GeneralizedFunction& g, double x0,
                        const ReproducingKernel& K, const std::vector<double>& lambdas,
                        double alpha, SlowlyVarying L = {}, double abs_moment_power = -10.0,
                        QuadOpts quad = {});

struct Qbth3Report {
    std::vector<double> eps;
    std::vector<std::string> names;
    std::vector<std::vector<std::complex<double>>> direct;    // [eps][member]
    std::vector<std::vector<std::complex<double>>> projected; // [eps][member]
    std::vector<std::vector<double>> rel_dev;                 // -1 where degenerate
    double max_rel_dev = 0.0;
    double o_bound = 0.0; // sup of |direct| / (eps^alpha L(eps))
    int compared = 0;
};

// Exchange identity between rescaled pairings and kernel projections:
// <(q_{1/eps} f)(x0 + eps .), psi> = <f(x0 + eps .), J_eps psi>, tested by
// comparing both sides of the expansion/pairing route per battery member.
Qbth3Report qbth3_equivalence(const GeneralizedFunction& f, double x0,
                              const ReproducingKernel& K, const std::vector<double>& eps,
                              const std::vector<TestFunction>& battery, double alpha,
                              SlowlyVarying L = {}, QuadOpts quad = {});

// Surface-measure normalizer omega_alpha; the default convention uses
// pi^{a/2} / Gamma(a/2 + 1), the alternate one pi^{a/2} Gamma(a + 1/2).
double omega_alpha(double alpha, bool alternate = false);
// omega_n for integer dimension n under the same convention switch.
double omega_dim(int n, bool alternate = false);

struct DensityReport {
    double alpha = 0.0;
    double theta_hat = 0.0;    // ratio at the finest scale
    double trend = 0.0;        // |last ratio / previous ratio - 1|
    std::string convention;    // "standard" or "alternate"
    std::vector<double> eps;
    std::vector<double> mass;
    std::vector<double> ratios;
};

// alpha-density of a nonnegative measure at x0:
//   theta = lim mass(B(x0,eps)) / (omega_alpha eps^alpha L(eps)).
// Throws NegativeMeasure when the input is not a nonnegative measure.
DensityReport alpha_density(const GeneralizedFunction& mu, double x0, double alpha,
                            SlowlyVarying L, const std::vector<double>& eps,
                            bool alternate = false, QuadOpts quad = {});

struct Qbc2Report {
    double alpha = 0.0;
    double mass_slope = 0.0;
    double ell_hat = 0.0;       // fitted limit-profile coefficient
    double limit_spread = 0.0;  // consistency of ell across the battery
    double theta_hat = 0.0;     // measured density ratio
    double theta_formula = 0.0; // omega_n ell / (alpha omega_alpha)
    DensityReport density;
};

// Structure-theorem pipeline for a nonnegative measure: verifies the
// small-ball growth bound (clause "mass_growth_bound"), extracts the limit
// profile coefficient via projected pairings (clause "projected_limit"),
// and compares the measured alpha-density ratio with the closed form.
Qbc2Report qbc2_pipeline(const GeneralizedFunction& mu, double x0, double alpha,
                         const ReproducingKernel& K, const std::vector<double>& eps,
                         const std::vector<TestFunction>& battery, bool alternate = false,
                         QuadOpts quad = {});

// The smoothing companion J_eps psi of a test function under the kernel at
// scale 1/eps, returned as an order-0 test function; identity when the
// kernel window collapses below resolution.
TestFunction smoothing_companion(const ReproducingKernel& K, double eps, double x0,
                                 const TestFunction& psi);

} // namespace mrdist
