#include "mrdist/growth.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mrdist {

double GrowthWeight::M(double t) const {
    if (t <= 0.0) return 0.0;
    return std::pow(t, p);
}

double weight_axiom_check(const GrowthWeight& w, double tmax, int n) {
    double worst = std::abs(w.M(0.0));
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        double t = tmax * static_cast<double>(i) / n;
        double v = w.M(t);
        if (!(std::isfinite(v))) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, std::max(0.0, prev - v)); // must be nondecreasing
        prev = v;
        // Doubling control: M(2t) >= M(t), M(s+t) <= M(2 max(s,t)).
        worst = std::max(worst, std::max(0.0, v - w.M(2.0 * t)));
    }
    return worst;
}

double TestFunction::operator()(double x, int order) const {
    if (order < 0 || order > max_order)
        throw OrderTooHigh("test function '" + name + "' supports derivatives up to order " +
                           std::to_string(max_order));
    if (decay == DecayClass::compact_support &&
        (x <= center - radius || x >= center + radius))
        return 0.0;
    return f(x, order);
}

double TestFunction::window_lo() const {
    switch (decay) {
    case DecayClass::compact_support: return center - radius;
    case DecayClass::gaussian: return center - 12.0;
    case DecayClass::rational_decay: return -1e5;
    }
    return -1e5;
}

double TestFunction::window_hi() const {
    switch (decay) {
    case DecayClass::compact_support: return center + radius;
    case DecayClass::gaussian: return center + 12.0;
    case DecayClass::rational_decay: return 1e5;
    }
    return 1e5;
}

bool decay_envelope_ok(const TestFunction& tf, const GridSpec& grid) {
    std::vector<double> xs = linspace(grid.lo, grid.hi, grid.n);
    double sup = 0.0;
    for (double x : xs) sup = std::max(sup, std::abs(tf(x, 0)));
    if (!std::isfinite(sup)) return false;
    for (double x : xs) {
        double v = std::abs(tf(x, 0));
        double env;
        switch (tf.decay) {
        case DecayClass::compact_support:
            if (x <= tf.center - tf.radius || x >= tf.center + tf.radius) {
                if (v != 0.0) return false;
            }
            continue;
        case DecayClass::gaussian: {
            double t = x - tf.center;
            env = 8.0 * (sup + 1e-300) * std::exp(-0.25 * t * t);
            break;
        }
        case DecayClass::rational_decay:
            env = 8.0 * (sup + 1e-300) * std::pow(1.0 + std::abs(x - tf.center), -tf.power);
            break;
        default:
            return false;
        }
        if (v > env) return false;
    }
    return true;
}

namespace {

// Shared sup loop with divergence detection: the grid is cut into 16 rings
// by |x|; if the ring maxima keep increasing through the outer half, the
// quantity is treated as divergent.
double weighted_sup(const TestFunction& tf, int r, const std::function<double(double)>& weight,
                    const GridSpec& grid, const std::string& label) {
    if (r < 0) throw ConfigError("seminorm order must be >= 0");
    if (r > tf.max_order)
        throw OrderTooHigh("seminorm order " + std::to_string(r) + " exceeds max_order of '" +
                           tf.name + "'");
    std::vector<double> xs = linspace(grid.lo, grid.hi, grid.n);
    double absmax = std::max(std::abs(grid.lo), std::abs(grid.hi));
    const int nrings = 16;
    std::vector<double> ringmax(nrings, 0.0);
    double sup = 0.0;
    for (double x : xs) {
        double wx = weight(x);
        double local = 0.0;
        for (int a = 0; a <= r; ++a) local = std::max(local, std::abs(tf(x, a)));
        double v = wx * local;
        if (!std::isfinite(v))
            throw DivergentSeminorm(label + " of '" + tf.name + "' is infinite at x=" + fmt_g12(x));
        sup = std::max(sup, v);
        int ring = std::min(nrings - 1,
                            static_cast<int>(std::abs(x) / (absmax + 1e-300) * nrings));
        ringmax[static_cast<std::size_t>(ring)] =
            std::max(ringmax[static_cast<std::size_t>(ring)], v);
    }
    // Strictly increasing ring maxima across the outer half, ending well
    // above the inner level, signals divergence of the underlying sup.
    bool increasing = true;
    for (int k = nrings / 2; k + 1 < nrings; ++k)
        if (!(ringmax[static_cast<std::size_t>(k + 1)] > ringmax[static_cast<std::size_t>(k)]))
            increasing = false;
    double inner = 0.0;
    for (int k = 0; k < nrings / 2; ++k) inner = std::max(inner, ringmax[static_cast<std::size_t>(k)]);
    if (increasing && ringmax[nrings - 1] > 4.0 * (inner + 1e-300))
        throw DivergentSeminorm(label + " of '" + tf.name +
                                "' keeps growing toward the grid boundary (last ring " +
                                fmt_g12(ringmax[nrings - 1]) + ")");
    return sup;
}

} // namespace

SeminormReport nu_seminorm(const TestFunction& tf, const GrowthWeight& w, int r, int l,
                           const GridSpec& grid) {
    if (l < 0) throw ConfigError("nu_seminorm: l must be >= 0");
    SeminormReport rep;
    rep.r = r;
    rep.l = l;
    rep.value = weighted_sup(
        tf, r, [&](double x) { return std::exp(w.M(static_cast<double>(l) * std::abs(x))); },
        grid, "nu-seminorm");
    return rep;
}

SeminormReport rho_seminorm(const TestFunction& tf, int r, int l, const GridSpec& grid) {
    if (l < 0) throw ConfigError("rho_seminorm: l must be >= 0");
    SeminormReport rep;
    rep.r = r;
    rep.l = l;
    rep.value = weighted_sup(
        tf, r, [&](double x) { return std::pow(1.0 + std::abs(x), static_cast<double>(l)); },
        grid, "rho-seminorm");
    return rep;
}

double bounded_family_sweep(const std::vector<TestFunction>& family, int r, int l,
                            const GridSpec& grid) {
    double worst = 0.0;
    for (const TestFunction& tf : family)
        worst = std::max(worst, rho_seminorm(tf, r, l, grid).value);
    return worst;
}

} // namespace mrdist
