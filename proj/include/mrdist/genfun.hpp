#pragma once

#include "mrdist/growth.hpp"
#include "mrdist/quadrature.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace mrdist {

// Oscillation descriptor for densities of the form |y-c|^a * sin(1/(y-c)):
// lets quadratures pick resolution and apply the alternating-tail cutoff.
struct OscSpec {
    double center = 0.0;
    double amp_pow = 1.0; // envelope exponent a
};

// Growth certificate |g(x)| <= C (1+|x|)^k (or C e^{k|x|} when exponential).
struct GrowthDesc {
    double C = 1.0;
    double k = 0.0;
    bool exponential = false;
};

struct DensityFn {
    std::function<double(double)> g;
    GrowthDesc growth;
    std::vector<double> singular_points;
    std::optional<OscSpec> osc;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

struct Atom {
    double location = 0.0;
    std::complex<double> weight{1.0, 0.0};
};

enum class BaseKind { density, atomic, singular_cdf };

// One term: weight * d^alpha/dx^alpha (base measure).
struct MeasureTerm {
    BaseKind kind = BaseKind::density;
    int alpha = 0;
    std::complex<double> weight{1.0, 0.0};
    DensityFn density;                    // kind == density
    std::vector<Atom> atoms;              // kind == atomic
    std::function<double(double)> cdf;    // kind == singular_cdf, defined on [cdf_lo, cdf_hi]
    double cdf_lo = 0.0;
    double cdf_hi = 1.0;
};

// gamma * 1 + sum of derivative-of-measure terms.
struct GeneralizedFunction {
    std::string name;
    std::complex<double> gamma{0.0, 0.0};
    std::vector<MeasureTerm> terms;
    int dimension = 1;

    int order() const; // max derivative order across terms
};

struct PairOpts {
    QuadOpts quad;
};

// <f, psi>.  Throws OrderTooHigh when a term needs derivatives psi lacks,
// GrowthMismatch when psi decays too slowly for a term's growth.
std::complex<double> pair(const GeneralizedFunction& f, const TestFunction& psi,
                          PairOpts opts = {});

// <f(x0 + eps .), psi> = eps^{-n} <f, psi((. - x0)/eps)> per term, with the
// change of variables performed analytically (stable for small eps).
std::complex<double> pair_scaled(const GeneralizedFunction& f, double x0, double eps,
                                 const TestFunction& psi, PairOpts opts = {});

// Total-variation mass of one term's base measure on [x0-eps, x0+eps],
// for each scale in eps_list.
std::vector<double> small_ball_mass(const MeasureTerm& term, double x0,
                                    const std::vector<double>& eps_list, QuadOpts quad = {});

// Signed base-measure mass of an interval (derivative order ignored).
double signed_interval_measure(const MeasureTerm& term, double lo, double hi, QuadOpts& quad);

struct PointValueCertificate {
    double x0 = 0.0;
    std::complex<double> gamma{0.0, 0.0};
    int order = 0;
    // Per term: fitted small-ball exponent sigma (slope of log mass vs log eps).
    std::vector<double> sigma;
    std::vector<bool> term_pass;
    double slack = 0.1;
    bool pass = false;
};

// Point-value certificate at x0: every term's small-ball mass must vanish
// at rate at least n + alpha + slack.
PointValueCertificate certify_point_value(const GeneralizedFunction& f, double x0,
                                          const std::vector<double>& eps_list,
                                          double slack = 0.1, QuadOpts quad = {});

struct FamilySpec {
    enum class Kind { balls, hyperrectangles };
    Kind kind = Kind::balls;
    double a = 0.5;      // aspect floor: side lengths >= a * (2 eps)
    int samples = 32;    // random rectangles per scale
    std::uint64_t seed = 12345;
};

struct DensityPointReport {
    std::vector<double> scales;
    std::vector<std::vector<double>> ratios; // [scale][sample]
    double gamma_hat = 0.0;                  // mean ratio at the finest scale
    double dispersion = 0.0;                 // max over scales of (max-min)
    double max_abs_ratio = 0.0;
};

// Ratios mu(E)/|E| over shrinking families centered/anchored at x0.
DensityPointReport density_point_check(const MeasureTerm& term, double x0,
                                       const std::vector<double>& scales, FamilySpec family,
                                       QuadOpts quad = {});

} // namespace mrdist
