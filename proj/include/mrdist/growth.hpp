#pragma once

#include <functional>
#include <string>
#include <vector>

namespace mrdist {

// Weight t -> t^p used inside the exponential factor exp(M(l|x|)).
struct GrowthWeight {
    double p = 1.0;
    double M(double t) const;
};

// Checks subadditivity-type sanity of the weight on [0, tmax]:
// returns the largest violation of M(s+t) <= M(2 max(s,t)) monotone growth
// and M(0) == 0; 0 means clean.
double weight_axiom_check(const GrowthWeight& w, double tmax = 10.0, int n = 64);

struct GridSpec {
    double lo = -12.0;
    double hi = 12.0;
    int n = 4801;
};

enum class DecayClass { compact_support, gaussian, rational_decay };

// A smooth test function with derivative evaluators up to max_order.
struct TestFunction {
    std::string name;
    int max_order = 2;
    DecayClass decay = DecayClass::gaussian;
    double center = 0.0;
    double radius = 0.0;   // compact_support: support is [center-r, center+r]
    double power = 0.0;    // rational_decay: |f| <~ (1+|x|)^-power
    std::function<double(double, int)> f;

    double operator()(double x, int order = 0) const; // throws OrderTooHigh
    // Window outside which the function is negligible for quadrature.
    double window_lo() const;
    double window_hi() const;
};

// True when sampled values respect the declared decay envelope.
bool decay_envelope_ok(const TestFunction& tf, const GridSpec& grid = {});

struct SeminormReport {
    int r = 0;
    int l = 0;
    double value = 0.0;
};

// sup over |alpha| <= r, x in grid of exp(M(l|x|)) |f^(alpha)(x)|.
// Throws DivergentSeminorm when the weighted samples keep growing toward
// the grid ends instead of settling.
SeminormReport nu_seminorm(const TestFunction& tf, const GrowthWeight& w, int r, int l,
                           const GridSpec& grid = {});

// sup over |alpha| <= r, x in grid of (1+|x|)^l |f^(alpha)(x)|.
SeminormReport rho_seminorm(const TestFunction& tf, int r, int l, const GridSpec& grid = {});

// Max of rho-type seminorm over a family; finite iff every member is.
double bounded_family_sweep(const std::vector<TestFunction>& family, int r, int l,
                            const GridSpec& grid = {});

} // namespace mrdist
