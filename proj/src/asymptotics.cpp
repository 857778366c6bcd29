#include "mrdist/asymptotics.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mrdist {

namespace {
constexpr double kTiny = 1e-300;

double finest_index(const std::vector<double>& eps, std::size_t& idx) {
    idx = 0;
    for (std::size_t i = 1; i < eps.size(); ++i)
        if (eps[i] < eps[idx]) idx = i;
    return eps[idx];
}
} // namespace

double SlowlyVarying::operator()(double eps) const {
    if (kind == Kind::constant) return 1.0;
    double l = std::abs(std::log(eps));
    return std::pow(l, beta);
}

std::string SlowlyVarying::describe() const {
    if (kind == Kind::constant) return "1";
    return "|log eps|^" + fmt_g12(beta);
}

QuasiFit quasi_fit(const GeneralizedFunction& f, double x0, const std::vector<double>& eps,
                   const std::vector<TestFunction>& battery, SlowlyVarying L, QuasiOpts opts) {
    if (eps.size() < 4)
        throw InsufficientScales("quasi_fit: need at least 4 scales, got " +
                                 std::to_string(eps.size()));
    for (double e : eps)
        if (!(e > 0.0)) throw EpsilonNonpositive("quasi_fit: scale " + fmt_g12(e));
    if (battery.empty()) throw ConfigError("quasi_fit: empty battery");

    QuasiFit fit;
    fit.x0 = x0;
    fit.L = L;
    fit.eps = eps;
    for (const TestFunction& tf : battery) fit.names.push_back(tf.name);

    // All pairings up front (deterministic parallel fill).
    fit.pairings.assign(eps.size(), std::vector<std::complex<double>>(battery.size()));
    std::size_t total = eps.size() * battery.size();
    PairOpts po;
    po.quad = opts.quad;
    parallel_for(total, [&](std::size_t k) {
        std::size_t e = k / battery.size();
        std::size_t i = k % battery.size();
        fit.pairings[e][i] = pair_scaled(f, x0, eps[e], battery[i], po);
    });

    double global_max = 0.0;
    std::vector<double> member_max(battery.size(), 0.0);
    for (std::size_t e = 0; e < eps.size(); ++e)
        for (std::size_t i = 0; i < battery.size(); ++i) {
            double a = std::abs(fit.pairings[e][i]);
            member_max[i] = std::max(member_max[i], a);
            global_max = std::max(global_max, a);
        }
    if (global_max <= kTiny)
        throw AllPairingsVanish("quasi_fit: every pairing vanished at x0=" + fmt_g12(x0));

    fit.slopes.assign(battery.size(), std::numeric_limits<double>::quiet_NaN());
    fit.used.assign(battery.size(), false);
    std::vector<double> used_slopes;
    for (std::size_t i = 0; i < battery.size(); ++i) {
        if (member_max[i] < opts.degen_rel * global_max) continue; // degenerate pairing
        std::vector<double> lx, ly;
        for (std::size_t e = 0; e < eps.size(); ++e) {
            double a = std::abs(fit.pairings[e][i]);
            if (a <= kTiny) continue;
            lx.push_back(std::log(eps[e]));
            ly.push_back(std::log(a) - std::log(L(eps[e])));
        }
        if (lx.size() < 2) continue;
        fit.slopes[i] = linfit(lx, ly).slope;
        fit.used[i] = true;
        used_slopes.push_back(fit.slopes[i]);
    }
    if (used_slopes.empty())
        throw AllPairingsVanish("quasi_fit: no non-degenerate pairings survive at x0=" +
                                fmt_g12(x0));

    fit.alpha_hat = median(used_slopes);
    double mn = used_slopes[0], mx = used_slopes[0];
    for (double s : used_slopes) {
        mn = std::min(mn, s);
        mx = std::max(mx, s);
    }
    fit.spread = mx - mn;
    fit.consistent = fit.spread <= opts.slope_tol;
    if (opts.strict && !fit.consistent)
        throw InconsistentDegree("quasi_fit: battery slope spread " + fmt_g12(fit.spread) +
                                 " exceeds tolerance " + fmt_g12(opts.slope_tol));

    std::size_t fidx;
    double ef = finest_index(eps, fidx);
    double norm_f = std::pow(ef, fit.alpha_hat) * L(ef);
    for (std::size_t i = 0; i < battery.size(); ++i)
        if (fit.used[i]) fit.g_samples.push_back(fit.pairings[fidx][i] / norm_f);

    // Homogeneity cross-check: rescaling the finest scale by a must move the
    // normalized pairings along the fitted degree.
    double dev = 0.0;
    for (double a : {0.5, 2.0}) {
        double ea = a * ef;
        double norm_a = std::pow(ea, fit.alpha_hat) * L(ea);
        std::size_t gi = 0;
        for (std::size_t i = 0; i < battery.size(); ++i) {
            if (!fit.used[i]) continue;
            std::complex<double> pa = pair_scaled(f, x0, ea, battery[i], po);
            std::complex<double> g = fit.g_samples[gi++];
            double d = std::abs(pa / norm_a - g) / (std::abs(g) + kTiny);
            dev = std::max(dev, d);
        }
    }
    fit.homogeneity_max_dev = dev;
    return fit;
}

Qbth2Report qbth2_check(const GeneralizedFunction& f, const GeneralizedFunction& g, double x0,
                        const ReproducingKernel& K, const std::vector<double>& lambdas,
                        double alpha, SlowlyVarying L, double abs_moment_power, QuadOpts quad) {
    if (lambdas.size() < 2) throw InsufficientScales("qbth2_check: need at least 2 scales");
    Qbth2Report rep;
    rep.lambdas = lambdas;
    rep.proj_f.assign(lambdas.size(), 0.0);
    rep.proj_g.assign(lambdas.size(), 0.0);
    parallel_for(lambdas.size(), [&](std::size_t i) {
        rep.proj_f[i] =
            project_at(f, K, lambdas[i], 0.0, x0, ProjectPath::aligned, quad).real();
        rep.proj_g[i] =
            project_at(g, K, lambdas[i], 0.0, x0, ProjectPath::aligned, quad).real();
    });
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        double e2 = std::exp2(-lambdas[i]);
        double lv = L(e2);
        double e = (rep.proj_f[i] - lv * rep.proj_g[i]) / (std::pow(e2, alpha) * lv);
        rep.e_lambda.push_back(e);
    }
    double lam_top = lambdas.back();
    rep.c_limit = rep.proj_f.back() * std::exp2(alpha * lam_top) / L(std::exp2(-lam_top));
    if (abs_moment_power > -1.0 && x0 == 0.0)
        rep.c_quadrature = kernel_abs_moment(K, abs_moment_power, 0.0);
    if (lambdas.size() >= 4) {
        bool dec = true;
        std::size_t n = lambdas.size();
        for (std::size_t i = n - 4; i + 1 < n; ++i)
            if (!(std::abs(rep.e_lambda[i]) > std::abs(rep.e_lambda[i + 1]))) dec = false;
        rep.decreasing_tail = dec;
    }
    return rep;
}

TestFunction smoothing_companion(const ReproducingKernel& K, double eps, double x0,
                                 const TestFunction& psi) {
    if (!(eps > 0.0))
        throw EpsilonNonpositive("smoothing_companion: eps = " + fmt_g12(eps));
    const ScalingFunction& sf = K.sf();
    double send = sf.support_end();
    double h = sf.step();
    double lam = 1.0 / eps;
    double log2_sigma = lam + std::log2(eps);
    double width_log2 = std::log2(send) - log2_sigma;

    TestFunction out;
    out.name = psi.name + "~smoothed";
    out.max_order = 0;
    out.decay = psi.decay;
    out.center = psi.center;
    out.power = psi.power;

    if (width_log2 < std::log2(1e-6)) {
        // The kernel window is far below resolution; the companion is the
        // identity to double precision.
        out.radius = psi.radius;
        TestFunction base = psi;
        out.f = [base](double y, int) { return base(y, 0); };
        return out;
    }

    double sigma = std::exp2(log2_sigma);
    double anchor = std::exp2(lam) * x0;
    double width = send / sigma;
    out.radius = psi.radius + width;
    TestFunction base = psi;
    int nphi = static_cast<int>(sf.filter.h.size());
    out.f = [K, base, sigma, anchor, h, send, nphi](double y, int order) -> double {
        if (order != 0)
            throw OrderTooHigh("smoothed companion provides order 0 only");
        const ScalingFunction& s = K.sf();
        double u = sigma * y + anchor;
        double fl = std::floor(u);
        double fr = u - fl; // in [0,1); kernel is invariant under the shift
        double frh = std::fmod(u, h);
        if (frh < 0.0) frh += h;
        // phi(fr - m) is nonzero only for m in {-(N-2), ..., 0}.
        std::vector<double> c(static_cast<std::size_t>(nphi - 1));
        for (int m = -(nphi - 2); m <= 0; ++m)
            c[static_cast<std::size_t>(m + nphi - 2)] = s.eval(fr - static_cast<double>(m));
        long k0 = static_cast<long>(std::ceil((-send + frh) / h));
        long k1 = static_cast<long>(std::floor((send + frh) / h));
        double acc = 0.0;
        for (long k = k0; k <= k1; ++k) {
            double t = static_cast<double>(k) * h - frh;
            double v = fr + t;
            double q = 0.0;
            for (int m = -(nphi - 2); m <= 0; ++m) {
                double cm = c[static_cast<std::size_t>(m + nphi - 2)];
                if (cm != 0.0) q += cm * s.eval(v - static_cast<double>(m));
            }
            if (q != 0.0) acc += q * base(y + t / sigma, 0);
        }
        return acc * h;
    };
    return out;
}

namespace {

// Quadrature nodes for the rescaled pairings: a uniform mesh plus geometric
// clusters toward each mapped singular point.
std::vector<double> pairing_grid(double wlo, double whi, const std::vector<double>& cuts) {
    std::vector<double> nodes;
    int nbase = static_cast<int>(std::ceil((whi - wlo) * 64.0)) + 1;
    nbase = std::max(nbase, 9);
    for (int i = 0; i < nbase; ++i)
        nodes.push_back(wlo + (whi - wlo) * static_cast<double>(i) / (nbase - 1));
    double W = whi - wlo;
    for (double c : cuts) {
        if (c <= wlo || c >= whi) continue;
        for (int k = 4; k <= 180; ++k) {
            double d = W * std::exp2(-static_cast<double>(k) / 4.0);
            if (c + d < whi) nodes.push_back(c + d);
            if (c - d > wlo) nodes.push_back(c - d);
        }
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                nodes.end());
    return nodes;
}

// <f(x0 + eps .), Phi> with Phi given by point values on a fixed grid;
// derivative-of-measure terms are not supported on this route.
std::complex<double> pair_scaled_on_grid(const GeneralizedFunction& f, double x0, double eps,
                                         const std::vector<double>& nodes,
                                         const std::vector<double>& phi_vals) {
    std::complex<double> total{0.0, 0.0};
    if (f.gamma != std::complex<double>(0.0, 0.0))
        total += f.gamma * trapezoid_nodes(nodes, phi_vals);
    for (const MeasureTerm& t : f.terms) {
        if (t.alpha != 0)
            throw OrderTooHigh("grid pairing supports order-0 terms only");
        switch (t.kind) {
        case BaseKind::density: {
            std::vector<double> vals(nodes.size(), 0.0);
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                double x = x0 + eps * nodes[i];
                if (x < t.density.lo || x > t.density.hi) continue;
                double g = t.density.g(x);
                vals[i] = std::isfinite(g) ? g * phi_vals[i] : 0.0;
            }
            total += t.weight * trapezoid_nodes(nodes, vals);
            break;
        }
        case BaseKind::atomic: {
            // Atom values of Phi come from the same tabulated grid by
            // linear interpolation (the grid clusters make this tight).
            std::complex<double> s{0.0, 0.0};
            for (const Atom& a : t.atoms) {
                double u = (a.location - x0) / eps;
                auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
                if (it == nodes.begin() || it == nodes.end()) continue;
                std::size_t i = static_cast<std::size_t>(it - nodes.begin());
                double x1 = nodes[i - 1], x2 = nodes[i];
                double frac = (u - x1) / (x2 - x1);
                s += a.weight * (phi_vals[i - 1] * (1.0 - frac) + phi_vals[i] * frac);
            }
            total += t.weight / eps * s;
            break;
        }
        case BaseKind::singular_cdf: {
            auto cdf_at = [&](double x) {
                return t.cdf(std::min(std::max(x, t.cdf_lo), t.cdf_hi));
            };
            double phi_lo = x0 + eps * nodes.front();
            double phi_hi = x0 + eps * nodes.back();
            double lo = std::max(phi_lo, t.cdf_lo);
            double hi = std::min(phi_hi, t.cdf_hi);
            if (!(hi > lo)) break;
            const int cells = 1 << 12;
            double acc = 0.0;
            double fprev = cdf_at(lo);
            for (int i = 1; i <= cells; ++i) {
                double b = lo + (hi - lo) * static_cast<double>(i) / cells;
                double fb = cdf_at(b);
                double dm = fb - fprev;
                if (dm != 0.0) {
                    double a = lo + (hi - lo) * static_cast<double>(i - 1) / cells;
                    double u = (0.5 * (a + b) - x0) / eps;
                    auto it = std::lower_bound(nodes.begin(), nodes.end(), u);
                    if (it != nodes.begin() && it != nodes.end()) {
                        std::size_t ii = static_cast<std::size_t>(it - nodes.begin());
                        double x1 = nodes[ii - 1], x2 = nodes[ii];
                        double frac = (u - x1) / (x2 - x1);
                        acc += dm * (phi_vals[ii - 1] * (1.0 - frac) + phi_vals[ii] * frac);
                    }
                }
                fprev = fb;
            }
            total += t.weight / eps * acc;
            break;
        }
        }
    }
    return total;
}

} // namespace

Qbth3Report qbth3_equivalence(const GeneralizedFunction& f, double x0,
                              const ReproducingKernel& K, const std::vector<double>& eps,
                              const std::vector<TestFunction>& battery, double alpha,
                              SlowlyVarying L, QuadOpts quad) {
    (void)quad;
    if (eps.empty()) throw InsufficientScales("qbth3_equivalence: empty scale list");
    for (double e : eps)
        if (!(e > 0.0)) throw EpsilonNonpositive("qbth3_equivalence: scale " + fmt_g12(e));
    if (battery.empty()) throw ConfigError("qbth3_equivalence: empty battery");

    Qbth3Report rep;
    rep.eps = eps;
    for (const TestFunction& tf : battery) rep.names.push_back(tf.name);
    rep.direct.assign(eps.size(), std::vector<std::complex<double>>(battery.size()));
    rep.projected.assign(eps.size(), std::vector<std::complex<double>>(battery.size()));
    rep.rel_dev.assign(eps.size(), std::vector<double>(battery.size(), -1.0));

    for (std::size_t e = 0; e < eps.size(); ++e) {
        double ee = eps[e];
        for (std::size_t i = 0; i < battery.size(); ++i) {
            const TestFunction& psi = battery[i];
            TestFunction jpsi = smoothing_companion(K, ee, x0, psi);
            // Shared node set so quadrature error cancels in the comparison.
            std::vector<double> cuts;
            for (const MeasureTerm& t : f.terms) {
                if (t.kind != BaseKind::density) continue;
                for (double s : t.density.singular_points) cuts.push_back((s - x0) / ee);
                if (std::isfinite(t.density.lo)) cuts.push_back((t.density.lo - x0) / ee);
                if (std::isfinite(t.density.hi)) cuts.push_back((t.density.hi - x0) / ee);
            }
            double wlo = std::min(psi.window_lo(), jpsi.window_lo());
            double whi = std::max(psi.window_hi(), jpsi.window_hi());
            std::vector<double> nodes = pairing_grid(wlo, whi, cuts);
            std::vector<double> pv(nodes.size()), jv(nodes.size());
            parallel_for(nodes.size(), [&](std::size_t k) {
                pv[k] = psi(nodes[k], 0);
                jv[k] = jpsi(nodes[k], 0);
            });
            rep.direct[e][i] = pair_scaled_on_grid(f, x0, ee, nodes, pv);
            rep.projected[e][i] = pair_scaled_on_grid(f, x0, ee, nodes, jv);
        }
    }

    for (std::size_t e = 0; e < eps.size(); ++e) {
        double row_max = 0.0;
        for (std::size_t i = 0; i < battery.size(); ++i)
            row_max = std::max(row_max, std::abs(rep.direct[e][i]));
        double norm = std::pow(eps[e], alpha) * L(eps[e]);
        rep.o_bound = std::max(rep.o_bound, row_max / norm);
        for (std::size_t i = 0; i < battery.size(); ++i) {
            double d = std::abs(rep.direct[e][i]);
            if (d < 1e-6 * row_max || d <= kTiny) continue; // degenerate pairing
            double rd = std::abs(rep.projected[e][i] - rep.direct[e][i]) / d;
            rep.rel_dev[e][i] = rd;
            rep.max_rel_dev = std::max(rep.max_rel_dev, rd);
            ++rep.compared;
        }
    }
    return rep;
}

double omega_alpha(double alpha, bool alternate) {
    if (alternate) return std::pow(std::numbers::pi, 0.5 * alpha) * std::tgamma(alpha + 0.5);
    return std::pow(std::numbers::pi, 0.5 * alpha) / std::tgamma(0.5 * alpha + 1.0);
}

double omega_dim(int n, bool alternate) {
    return omega_alpha(static_cast<double>(n), alternate);
}

namespace {

void validate_nonnegative(const GeneralizedFunction& mu, double x0, double span) {
    if (mu.order() != 0)
        throw ConfigError("alpha-density needs an order-0 measure, got order " +
                          std::to_string(mu.order()));
    if (mu.gamma.imag() != 0.0 || mu.gamma.real() < 0.0)
        throw NegativeMeasure("constant part of '" + mu.name + "' is not nonnegative");
    for (const MeasureTerm& t : mu.terms) {
        if (t.weight.imag() != 0.0 || t.weight.real() < 0.0)
            throw NegativeMeasure("term weight of '" + mu.name + "' is not nonnegative");
        switch (t.kind) {
        case BaseKind::density: {
            double lo = std::max(x0 - span, t.density.lo);
            double hi = std::min(x0 + span, t.density.hi);
            if (!(hi > lo)) break;
            for (int i = 0; i < 129; ++i) {
                double x = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / 129.0;
                double g = t.density.g(x);
                if (std::isfinite(g) && g < -1e-12)
                    throw NegativeMeasure("density of '" + mu.name + "' is negative at x=" +
                                          fmt_g12(x));
            }
            break;
        }
        case BaseKind::atomic:
            for (const Atom& a : t.atoms)
                if (a.weight.imag() != 0.0 || a.weight.real() < 0.0)
                    throw NegativeMeasure("atom of '" + mu.name + "' is not nonnegative");
            break;
        case BaseKind::singular_cdf: {
            double prev = t.cdf(t.cdf_lo);
            for (int i = 1; i < 65; ++i) {
                double x = t.cdf_lo + (t.cdf_hi - t.cdf_lo) * static_cast<double>(i) / 64.0;
                double v = t.cdf(x);
                if (v < prev - 1e-12)
                    throw NegativeMeasure("distribution function of '" + mu.name +
                                          "' decreases at x=" + fmt_g12(x));
                prev = v;
            }
            break;
        }
        }
    }
}

} // namespace

DensityReport alpha_density(const GeneralizedFunction& mu, double x0, double alpha,
                            SlowlyVarying L, const std::vector<double>& eps, bool alternate,
                            QuadOpts quad) {
    if (eps.size() < 2) throw InsufficientScales("alpha_density: need at least 2 scales");
    double span = 0.0;
    for (double e : eps) {
        if (!(e > 0.0)) throw EpsilonNonpositive("alpha_density: scale " + fmt_g12(e));
        span = std::max(span, e);
    }
    validate_nonnegative(mu, x0, span);

    DensityReport rep;
    rep.alpha = alpha;
    rep.convention = alternate ? "alternate" : "standard";
    rep.eps = eps;
    rep.mass.assign(eps.size(), 0.0);
    for (const MeasureTerm& t : mu.terms) {
        std::vector<double> m = small_ball_mass(t, x0, eps, quad);
        for (std::size_t i = 0; i < eps.size(); ++i)
            rep.mass[i] += std::abs(t.weight) * m[i];
    }
    if (mu.gamma.real() > 0.0)
        for (std::size_t i = 0; i < eps.size(); ++i) rep.mass[i] += mu.gamma.real() * 2.0 * eps[i];

    double omega = omega_alpha(alpha, alternate);
    for (std::size_t i = 0; i < eps.size(); ++i)
        rep.ratios.push_back(rep.mass[i] / (omega * std::pow(eps[i], alpha) * L(eps[i])));

    // Finest and second-finest scales for the reported limit and its trend.
    std::vector<std::size_t> order(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return eps[a] < eps[b]; });
    rep.theta_hat = rep.ratios[order[0]];
    double prev = rep.ratios[order[1]];
    rep.trend = std::abs(rep.theta_hat / (prev + kTiny) - 1.0);
    return rep;
}

Qbc2Report qbc2_pipeline(const GeneralizedFunction& mu, double x0, double alpha,
                         const ReproducingKernel& K, const std::vector<double>& eps,
                         const std::vector<TestFunction>& battery, bool alternate,
                         QuadOpts quad) {
    if (!(alpha > 0.0)) throw ConfigError("qbc2_pipeline: alpha must be positive");
    SlowlyVarying L; // constant comparison function in this pipeline
    Qbc2Report rep;
    rep.alpha = alpha;
    rep.density = alpha_density(mu, x0, alpha, L, eps, alternate, quad);

    // Clause 1: small-ball masses must obey mass(eps) = O(eps^alpha).
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (rep.density.mass[i] > kTiny) {
            lx.push_back(std::log(eps[i]));
            ly.push_back(std::log(rep.density.mass[i]));
        }
    }
    rep.mass_slope = (lx.size() >= 2) ? linfit(lx, ly).slope
                                      : std::numeric_limits<double>::infinity();
    if (rep.mass_slope < alpha - 0.05)
        throw HypothesisFailed("mass_growth_bound",
                               "small-ball mass grows like eps^" + fmt_g12(rep.mass_slope) +
                                   ", violating the required O(eps^" + fmt_g12(alpha) + ")");

    // Clause 2: the projected rescalings must approach the homogeneous
    // limit profile ell * |x|^{alpha - 1} consistently across the battery.
    std::size_t fidx;
    double ec = finest_index(eps, fidx);
    PairOpts po;
    po.quad = quad;
    std::vector<double> ells;
    double max_target = 0.0;
    std::vector<double> targets(battery.size(), 0.0);
    std::vector<std::complex<double>> proj(battery.size());
    for (std::size_t i = 0; i < battery.size(); ++i) {
        QuadOpts q = quad;
        targets[i] = integrate_graded(
            [&](double t) { return std::pow(std::abs(t), alpha - 1.0) * battery[i](t, 0); },
            battery[i].window_lo(), battery[i].window_hi(), {0.0}, q);
        max_target = std::max(max_target, std::abs(targets[i]));
        TestFunction jpsi = smoothing_companion(K, ec, x0, battery[i]);
        proj[i] = pair_scaled(mu, x0, ec, jpsi, po);
    }
    double norm = std::pow(ec, alpha - 1.0) * L(ec);
    for (std::size_t i = 0; i < battery.size(); ++i) {
        if (std::abs(targets[i]) < 1e-8 * max_target) continue; // degenerate profile pairing
        ells.push_back(proj[i].real() / norm / targets[i]);
    }
    if (ells.empty())
        throw HypothesisFailed("projected_limit",
                               "no battery member pairs nontrivially with the limit profile");
    rep.ell_hat = median(ells);
    double spread = 0.0;
    for (double l : ells)
        spread = std::max(spread, std::abs(l - rep.ell_hat) / (std::abs(rep.ell_hat) + kTiny));
    rep.limit_spread = spread;
    if (spread > 0.05)
        throw HypothesisFailed("projected_limit",
                               "projected rescalings disagree about the limit profile by " +
                                   fmt_g12(spread));

    rep.theta_hat = rep.density.theta_hat;
    rep.theta_formula =
        omega_dim(1, alternate) * rep.ell_hat / (alpha * omega_alpha(alpha, alternate));
    return rep;
}

} // namespace mrdist
