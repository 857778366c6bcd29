#include "mrdist/genfun.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/util.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mrdist {

namespace {

constexpr double kTiny = 1e-300;

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Clamped CDF evaluation: 0 below the domain, 1-level above.
double cdf_eval(const MeasureTerm& t, double x) {
    return t.cdf(clampd(x, t.cdf_lo, t.cdf_hi));
}

void check_scale(double eps) {
    if (!(eps > 0.0))
        throw EpsilonNonpositive("scale parameter must be positive, got " + fmt_g12(eps));
}

void check_growth_compat(const GeneralizedFunction& f, const TestFunction& psi) {
    auto fail = [&](const std::string& why) {
        throw GrowthMismatch("pairing of '" + f.name + "' with '" + psi.name + "': " + why);
    };
    if (psi.decay == DecayClass::compact_support) return;
    bool rational = (psi.decay == DecayClass::rational_decay);
    if (rational && psi.power < 1.1 && (f.gamma != std::complex<double>(0.0, 0.0)))
        fail("constant term against slowly decaying test function");
    for (const MeasureTerm& t : f.terms) {
        if (t.kind != BaseKind::density) continue;
        const GrowthDesc& g = t.density.growth;
        bool bounded_support = std::isfinite(t.density.lo) && std::isfinite(t.density.hi);
        if (bounded_support) continue;
        if (g.exponential) {
            if (rational) fail("exponentially growing density against rational decay");
            if (g.k >= 2.0) fail("exponential growth rate too large for gaussian decay");
        } else if (rational && psi.power < g.k + 1.1) {
            fail("density growth (1+|x|)^" + fmt_g12(g.k) + " not integrable against decay power " +
                 fmt_g12(psi.power));
        }
    }
}

void check_orders(const GeneralizedFunction& f, const TestFunction& psi) {
    for (const MeasureTerm& t : f.terms)
        if (t.alpha > psi.max_order)
            throw OrderTooHigh("term of order " + std::to_string(t.alpha) +
                               " needs more derivatives than '" + psi.name + "' provides");
}

double parity(int alpha) { return (alpha % 2 == 0) ? 1.0 : -1.0; }

// Stieltjes sum of integrand against dF over [lo, hi].
double stieltjes(const MeasureTerm& t, double lo, double hi,
                 const std::function<double(double)>& integrand) {
    lo = std::max(lo, t.cdf_lo);
    hi = std::min(hi, t.cdf_hi);
    if (!(hi > lo)) return 0.0;
    const int cells = 1 << 15;
    double total = 0.0;
    double fprev = cdf_eval(t, lo);
    for (int i = 1; i <= cells; ++i) {
        double b = lo + (hi - lo) * static_cast<double>(i) / cells;
        double fb = cdf_eval(t, b);
        double dm = fb - fprev;
        if (dm != 0.0) {
            double a = lo + (hi - lo) * static_cast<double>(i - 1) / cells;
            total += dm * integrand(0.5 * (a + b));
        }
        fprev = fb;
    }
    return total;
}

} // namespace

int GeneralizedFunction::order() const {
    int r = 0;
    for (const MeasureTerm& t : terms) r = std::max(r, t.alpha);
    return r;
}

std::complex<double> pair(const GeneralizedFunction& f, const TestFunction& psi, PairOpts opts) {
    check_orders(f, psi);
    check_growth_compat(f, psi);
    std::complex<double> total{0.0, 0.0};

    if (f.gamma != std::complex<double>(0.0, 0.0)) {
        QuadOpts q = opts.quad;
        double v = integrate_graded([&](double x) { return psi(x, 0); }, psi.window_lo(),
                                    psi.window_hi(), {}, q);
        total += f.gamma * v;
    }

    for (const MeasureTerm& t : f.terms) {
        double sign = parity(t.alpha);
        switch (t.kind) {
        case BaseKind::density: {
            double lo = std::max(psi.window_lo(), t.density.lo);
            double hi = std::min(psi.window_hi(), t.density.hi);
            if (!(hi > lo)) break;
            std::vector<double> sing = t.density.singular_points;
            if (std::isfinite(t.density.lo)) sing.push_back(t.density.lo);
            if (std::isfinite(t.density.hi)) sing.push_back(t.density.hi);
            QuadOpts q = opts.quad;
            double v = integrate_graded(
                [&](double x) { return t.density.g(x) * psi(x, t.alpha); }, lo, hi, sing, q);
            total += t.weight * sign * v;
            break;
        }
        case BaseKind::atomic: {
            std::complex<double> s{0.0, 0.0};
            for (const Atom& a : t.atoms) s += a.weight * psi(a.location, t.alpha);
            total += t.weight * sign * s;
            break;
        }
        case BaseKind::singular_cdf: {
            double v = stieltjes(t, psi.window_lo(), psi.window_hi(),
                                 [&](double x) { return psi(x, t.alpha); });
            total += t.weight * sign * v;
            break;
        }
        }
    }
    return total;
}

std::complex<double> pair_scaled(const GeneralizedFunction& f, double x0, double eps,
                                 const TestFunction& psi, PairOpts opts) {
    check_scale(eps);
    check_orders(f, psi);
    check_growth_compat(f, psi);
    std::complex<double> total{0.0, 0.0};
    double tlo = psi.window_lo();
    double thi = psi.window_hi();

    if (f.gamma != std::complex<double>(0.0, 0.0)) {
        QuadOpts q = opts.quad;
        double v = integrate_graded([&](double t) { return psi(t, 0); }, tlo, thi, {}, q);
        total += f.gamma * v;
    }

    for (const MeasureTerm& t : f.terms) {
        double sign = parity(t.alpha);
        double escale = std::pow(eps, -static_cast<double>(t.alpha));
        switch (t.kind) {
        case BaseKind::density: {
            double lo = std::max(tlo, (t.density.lo - x0) / eps);
            double hi = std::min(thi, (t.density.hi - x0) / eps);
            if (!(hi > lo)) break;
            std::vector<double> sing;
            for (double s : t.density.singular_points) sing.push_back((s - x0) / eps);
            if (std::isfinite(t.density.lo)) sing.push_back((t.density.lo - x0) / eps);
            if (std::isfinite(t.density.hi)) sing.push_back((t.density.hi - x0) / eps);
            QuadOpts q = opts.quad;
            double v = integrate_graded(
                [&](double u) { return t.density.g(x0 + eps * u) * psi(u, t.alpha); }, lo, hi,
                sing, q);
            total += t.weight * sign * escale * v;
            break;
        }
        case BaseKind::atomic: {
            std::complex<double> s{0.0, 0.0};
            for (const Atom& a : t.atoms) {
                double u = (a.location - x0) / eps;
                if (u < tlo || u > thi) continue;
                s += a.weight * psi(u, t.alpha);
            }
            total += t.weight * sign * escale / eps * s;
            break;
        }
        case BaseKind::singular_cdf: {
            double v = stieltjes(t, x0 + eps * tlo, x0 + eps * thi,
                                 [&](double x) { return psi((x - x0) / eps, t.alpha); });
            total += t.weight * sign * escale / eps * v;
            break;
        }
        }
    }
    return total;
}

double signed_interval_measure(const MeasureTerm& term, double lo, double hi, QuadOpts& quad) {
    if (!(hi >= lo)) std::swap(lo, hi);
    switch (term.kind) {
    case BaseKind::density: {
        double a = std::max(lo, term.density.lo);
        double b = std::min(hi, term.density.hi);
        if (!(b > a)) return 0.0;
        return integrate_graded(term.density.g, a, b, term.density.singular_points, quad);
    }
    case BaseKind::atomic: {
        double s = 0.0;
        for (const Atom& at : term.atoms)
            if (at.location >= lo && at.location <= hi) s += at.weight.real();
        return s;
    }
    case BaseKind::singular_cdf:
        return cdf_eval(term, hi) - cdf_eval(term, lo);
    }
    return 0.0;
}

std::vector<double> small_ball_mass(const MeasureTerm& term, double x0,
                                    const std::vector<double>& eps_list, QuadOpts quad) {
    std::vector<double> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        check_scale(eps);
        switch (term.kind) {
        case BaseKind::density: {
            double a = std::max(x0 - eps, term.density.lo);
            double b = std::min(x0 + eps, term.density.hi);
            if (!(b > a)) {
                out.push_back(0.0);
                break;
            }
            QuadOpts q = quad;
            double v = integrate_graded([&](double x) { return std::abs(term.density.g(x)); }, a,
                                        b, term.density.singular_points, q);
            out.push_back(std::abs(term.weight) * v);
            break;
        }
        case BaseKind::atomic: {
            double s = 0.0;
            for (const Atom& at : term.atoms)
                if (std::abs(at.location - x0) <= eps) s += std::abs(at.weight);
            out.push_back(std::abs(term.weight) * s);
            break;
        }
        case BaseKind::singular_cdf: {
            double v = cdf_eval(term, x0 + eps) - cdf_eval(term, x0 - eps);
            out.push_back(std::abs(term.weight) * v);
            break;
        }
        }
    }
    return out;
}

PointValueCertificate certify_point_value(const GeneralizedFunction& f, double x0,
                                          const std::vector<double>& eps_list, double slack,
                                          QuadOpts quad) {
    if (eps_list.size() < 4)
        throw InsufficientScales("certify_point_value: need at least 4 scales, got " +
                                 std::to_string(eps_list.size()));
    for (double e : eps_list) check_scale(e);

    PointValueCertificate cert;
    cert.x0 = x0;
    cert.gamma = f.gamma;
    cert.order = f.order();
    cert.slack = slack;
    cert.pass = true;
    double n = static_cast<double>(f.dimension);

    for (const MeasureTerm& t : f.terms) {
        std::vector<double> mass = small_ball_mass(t, x0, eps_list, quad);
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < mass.size(); ++i) {
            if (mass[i] > kTiny) {
                lx.push_back(std::log(eps_list[i]));
                ly.push_back(std::log(mass[i]));
            }
        }
        double sigma;
        if (lx.size() < 2) {
            sigma = std::numeric_limits<double>::infinity(); // mass vanishes outright
        } else {
            sigma = linfit(lx, ly).slope;
        }
        bool ok = sigma >= n + static_cast<double>(t.alpha) + slack - 1e-9;
        cert.sigma.push_back(sigma);
        cert.term_pass.push_back(ok);
        cert.pass = cert.pass && ok;
    }
    return cert;
}

DensityPointReport density_point_check(const MeasureTerm& term, double x0,
                                       const std::vector<double>& scales, FamilySpec family,
                                       QuadOpts quad) {
    DensityPointReport rep;
    rep.scales = scales;
    std::mt19937_64 rng(family.seed);
    auto unit = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53; // uniform in [0,1)
    };
    for (double eps : scales) {
        check_scale(eps);
        std::vector<double> row;
        if (family.kind == FamilySpec::Kind::balls) {
            QuadOpts q = quad;
            double mu = signed_interval_measure(term, x0 - eps, x0 + eps, q);
            row.push_back(mu / (2.0 * eps));
        } else {
            for (int s = 0; s < family.samples; ++s) {
                double u1 = unit();
                double u2 = unit();
                double len = 2.0 * eps * (family.a + (1.0 - family.a) * u1);
                double lo_u = std::max(x0 - eps, x0 - len);
                double hi_u = std::min(x0, x0 + eps - len);
                double u = lo_u + (hi_u - lo_u) * u2;
                QuadOpts q = quad;
                double mu = signed_interval_measure(term, u, u + len, q);
                row.push_back(mu / len);
            }
        }
        rep.ratios.push_back(std::move(row));
    }
    double finest = scales.front();
    std::size_t fidx = 0;
    for (std::size_t i = 0; i < scales.size(); ++i)
        if (scales[i] < finest) {
            finest = scales[i];
            fidx = i;
        }
    const std::vector<double>& frow = rep.ratios[fidx];
    double mean = 0.0;
    for (double r : frow) mean += r;
    rep.gamma_hat = mean / static_cast<double>(frow.size());
    for (const auto& row : rep.ratios) {
        double mn = row.front(), mx = row.front();
        for (double r : row) {
            mn = std::min(mn, r);
            mx = std::max(mx, r);
            rep.max_abs_ratio = std::max(rep.max_abs_ratio, std::abs(r));
        }
        rep.dispersion = std::max(rep.dispersion, mx - mn);
    }
    return rep;
}

} // namespace mrdist
