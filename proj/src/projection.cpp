#include "mrdist/projection.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/util.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mrdist {

namespace {

double parity(int alpha) { return (alpha % 2 == 0) ? 1.0 : -1.0; }

// Piecewise evaluation helpers for one density term against the kernel row
// q0(w, .) on the scale-lambda lattice.  All quadrature happens in the
// kernel coordinate u = 2^lambda y + z, where the kernel row is piecewise
// linear between lattice nodes.
struct AlignedDensityIntegrator {
    const ReproducingKernel& K;
    const DensityFn& den;
    double w;        // kernel row anchor
    double s;        // 2^lambda
    double z;
    int alpha;       // kernel-side derivative order

    double kernel_at(double u) const {
        return alpha == 0 ? K.q0(w, u) : K.q0_deriv(w, u, 0, alpha);
    }

    double osc_cut() const { return den.osc ? 1e-3 / s : 0.0; }

    double g_at(double u) const {
        double y = (u - z) / s;
        if (y < den.lo || y > den.hi) return 0.0;
        if (den.osc && std::abs(y - den.osc->center) < osc_cut()) return 0.0;
        double v = den.g(y);
        // A singular point can land exactly on a lattice node; that node
        // carries zero quadrature weight, so suppress the blow-up.
        return std::isfinite(v) ? v : 0.0;
    }

    double integrand(double u) const { return kernel_at(u) * g_at(u); }

    // Composite Simpson with nsub subintervals (nsub even).
    double simpson_cell(double a, double b, int nsub) const {
        double acc = integrand(a) + integrand(b);
        double step = (b - a) / nsub;
        for (int i = 1; i < nsub; ++i)
            acc += integrand(a + step * i) * ((i % 2) ? 4.0 : 2.0);
        return acc * step / 3.0;
    }

    // Trapezoid on nodes approaching u_s geometrically from both sides;
    // the singular node itself is never evaluated.
    double graded_cell(double a, double b, double u_s) const {
        double total = 0.0;
        const double ratio = std::sqrt(0.5);
        if (u_s > a) {
            double hi = u_s - (u_s - a) * 1e-14;
            double prev = a, fprev = integrand(a);
            double width = u_s - a;
            for (int k = 1; k <= 96; ++k) {
                double nu = u_s - width * std::pow(ratio, k);
                if (nu <= prev || nu >= hi) break;
                double fn = integrand(nu);
                total += 0.5 * (fprev + fn) * (nu - prev);
                prev = nu;
                fprev = fn;
            }
        }
        if (u_s < b) {
            double lo = u_s + (b - u_s) * 1e-14;
            double prev = b, fprev = integrand(b);
            double width = b - u_s;
            for (int k = 1; k <= 96; ++k) {
                double nu = u_s + width * std::pow(ratio, k);
                if (nu >= prev || nu <= lo) break;
                double fn = integrand(nu);
                total += 0.5 * (fprev + fn) * (prev - nu);
                prev = nu;
                fprev = fn;
            }
        }
        return total;
    }

    double run() const {
        const ScalingFunction& sf = K.sf();
        double h = sf.step();
        double send = sf.support_end();
        long i_lo = static_cast<long>(std::ceil((w - send) / h));
        long i_hi = static_cast<long>(std::floor((w + send) / h));
        if (i_hi <= i_lo) return 0.0;

        // Clip to the density support in u.
        if (std::isfinite(den.lo)) {
            long c = static_cast<long>(std::floor((den.lo * s + z) / h));
            i_lo = std::max(i_lo, c);
        }
        if (std::isfinite(den.hi)) {
            long c = static_cast<long>(std::ceil((den.hi * s + z) / h)) ;
            i_hi = std::min(i_hi, c);
        }
        if (i_hi <= i_lo) return 0.0;

        std::vector<double> cuts; // u-positions needing graded treatment
        for (double sp : den.singular_points) cuts.push_back(sp * s + z);
        if (std::isfinite(den.lo)) cuts.push_back(den.lo * s + z);
        if (std::isfinite(den.hi)) cuts.push_back(den.hi * s + z);
        if (den.osc) cuts.push_back(den.osc->center * s + z);

        std::size_t ncells = static_cast<std::size_t>(i_hi - i_lo);
        std::vector<double> cellvals(ncells, 0.0);
        double cut = osc_cut();
        parallel_for(ncells, [&](std::size_t ci) {
            double a = static_cast<double>(i_lo + static_cast<long>(ci)) * h;
            double b = a + h;
            // Singular / boundary cut inside the cell wins over everything
            // (a cut exactly on the left edge grades the right-hand side).
            for (double c : cuts) {
                if (c >= a && c < b) {
                    cellvals[ci] = graded_cell(a, b, c);
                    return;
                }
            }
            if (den.osc) {
                double c = den.osc->center;
                double ya = std::abs((a - z) / s - c);
                double yb = std::abs((b - z) / s - c);
                double yr = std::max(cut, std::min(ya, yb));
                double period_u = 2.0 * std::numbers::pi * yr * yr * s;
                long nsub = 4 * static_cast<long>(std::ceil(3.0 * h / period_u));
                nsub = std::clamp<long>(nsub, 4, 8192);
                if (nsub > 4) {
                    cellvals[ci] = simpson_cell(a, b, static_cast<int>(nsub));
                    return;
                }
            }
            cellvals[ci] = 0.5 * (integrand(a) + integrand(b)) * h;
        });
        double total = 0.0;
        for (double v : cellvals) total += v;
        return total;
    }
};

// Stieltjes pass for a singular-CDF term against the kernel row.
double aligned_stieltjes(const ReproducingKernel& K, const MeasureTerm& t, double w, double s,
                         double z) {
    const ScalingFunction& sf = K.sf();
    double send = sf.support_end();
    double y_lo = std::max(((w - send) - z) / s, t.cdf_lo);
    double y_hi = std::min(((w + send) - z) / s, t.cdf_hi);
    if (!(y_hi > y_lo)) return 0.0;
    auto cdf_at = [&](double x) { return t.cdf(std::min(std::max(x, t.cdf_lo), t.cdf_hi)); };
    const int cells = 1 << 15;
    double total = 0.0;
    double fprev = cdf_at(y_lo);
    for (int i = 1; i <= cells; ++i) {
        double b = y_lo + (y_hi - y_lo) * static_cast<double>(i) / cells;
        double fb = cdf_at(b);
        double dm = fb - fprev;
        if (dm != 0.0) {
            double a = y_lo + (y_hi - y_lo) * static_cast<double>(i - 1) / cells;
            double um = 0.5 * (a + b) * s + z;
            total += dm * (t.alpha == 0 ? K.q0(w, um) : K.q0_deriv(w, um, 0, t.alpha));
        }
        fprev = fb;
    }
    return total;
}

// Lattice trapezoid of q0(w, .) — the kernel's action on the constant 1.
double kernel_row_mass(const ReproducingKernel& K, double w) {
    const ScalingFunction& sf = K.sf();
    double h = sf.step();
    double send = sf.support_end();
    long i_lo = static_cast<long>(std::ceil((w - send) / h));
    long i_hi = static_cast<long>(std::floor((w + send) / h));
    double acc = 0.0;
    double prev = K.q0(w, static_cast<double>(i_lo) * h);
    for (long i = i_lo + 1; i <= i_hi; ++i) {
        double cur = K.q0(w, static_cast<double>(i) * h);
        acc += 0.5 * (prev + cur) * h;
        prev = cur;
    }
    return acc;
}

} // namespace

std::complex<double> project_at(const GeneralizedFunction& f, const ReproducingKernel& K,
                                double lambda, double z, double x, ProjectPath path,
                                QuadOpts quad) {
    if (f.dimension != 1 || K.dimension() != 1)
        throw ConfigError("project_at handles dimension-1 inputs");
    if (path == ProjectPath::rescaled) {
        TestFunction slice = kernel_slice_testfn(K, lambda, z, x);
        PairOpts po;
        po.quad = quad;
        return pair_scaled(f, x, std::exp2(-lambda), slice, po);
    }

    const ScalingFunction& sf = K.sf();
    double s = std::exp2(lambda);
    double w = s * x + z;
    std::complex<double> total{0.0, 0.0};

    if (f.gamma != std::complex<double>(0.0, 0.0))
        total += f.gamma * kernel_row_mass(K, w);

    for (const MeasureTerm& t : f.terms) {
        if (t.alpha > sf.regularity)
            throw OrderTooHigh("projection of an order-" + std::to_string(t.alpha) +
                               " term needs kernel regularity >= " + std::to_string(t.alpha) +
                               ", filter '" + sf.filter.name + "' has " +
                               std::to_string(sf.regularity));
        double dfac = parity(t.alpha) * std::pow(s, static_cast<double>(t.alpha));
        switch (t.kind) {
        case BaseKind::density: {
            AlignedDensityIntegrator integ{K, t.density, w, s, z, t.alpha};
            total += t.weight * dfac * integ.run();
            break;
        }
        case BaseKind::atomic: {
            std::complex<double> acc{0.0, 0.0};
            for (const Atom& a : t.atoms) {
                double u = s * a.location + z;
                acc += a.weight * (t.alpha == 0 ? K.q0(w, u) : K.q0_deriv(w, u, 0, t.alpha));
            }
            total += t.weight * dfac * s * acc;
            break;
        }
        case BaseKind::singular_cdf: {
            total += t.weight * dfac * s * aligned_stieltjes(K, t, w, s, z);
            break;
        }
        }
    }
    return total;
}

ProjectionSequence expansion_sequence(const GeneralizedFunction& f, const ReproducingKernel& K,
                                      double x0, double z, const std::vector<double>& lambdas,
                                      QuadOpts quad) {
    ProjectionSequence seq;
    seq.x0 = x0;
    seq.z = z;
    seq.lambdas = lambdas;
    seq.values.assign(lambdas.size(), {0.0, 0.0});
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        seq.values[i] = project_at(f, K, lambdas[i], z, x0, ProjectPath::aligned, quad);
    seq.abs_delta.assign(lambdas.size(), 0.0);
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        seq.abs_delta[i] = std::abs(seq.values[i] - seq.values[i - 1]);
    return seq;
}

double idempotence_check(const GeneralizedFunction& f, const ReproducingKernel& K, double lambda,
                         const std::vector<double>& xs, double lambda_coarse, QuadOpts quad) {
    if (xs.empty()) throw ConfigError("idempotence_check: empty sample set");
    double lref = (lambda_coarse >= 0.0) ? lambda_coarse : lambda;
    const ScalingFunction& sf = K.sf();
    double send = sf.support_end();

    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double pad = send * std::exp2(-lref) + send * std::exp2(-lambda);
    double glo = xmin - pad, ghi = xmax + pad;
    double hstep = sf.step() * std::exp2(-lambda);
    std::size_t n = static_cast<std::size_t>(std::ceil((ghi - glo) / hstep)) + 1;

    // Sample the scale-lambda projection on the aligned grid ...
    std::vector<double> grid(n), vals(n);
    parallel_for(n, [&](std::size_t i) {
        grid[i] = glo + static_cast<double>(i) * hstep;
        vals[i] = project_at(f, K, lambda, 0.0, grid[i], ProjectPath::aligned, quad).real();
    });

    // ... wrap it as a density (piecewise linear, compact) ...
    GeneralizedFunction f2;
    f2.name = "resampled";
    MeasureTerm t;
    t.kind = BaseKind::density;
    t.density.lo = glo;
    t.density.hi = grid.back();
    t.density.g = [grid, vals, glo, hstep](double y) {
        double tpos = (y - glo) / hstep;
        if (tpos <= 0.0 || tpos >= static_cast<double>(grid.size() - 1)) return 0.0;
        std::size_t i = static_cast<std::size_t>(tpos);
        double fr = tpos - static_cast<double>(i);
        return vals[i] * (1.0 - fr) + vals[i + 1] * fr;
    };
    f2.terms.push_back(std::move(t));

    // ... and compare the re-projection against the direct one.
    std::vector<double> dev(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) {
        double ref = project_at(f, K, lref, 0.0, xs[i], ProjectPath::aligned, quad).real();
        double re = project_at(f2, K, lref, 0.0, xs[i], ProjectPath::aligned, quad).real();
        dev[i] = std::abs(re - ref);
    });
    double worst = 0.0;
    for (double d : dev) worst = std::max(worst, d);
    return worst;
}

PoissonResult delta_expansion_poisson_check(const ReproducingKernel& K, int j, PoissonOpts opts) {
    const ScalingFunction& sf = K.sf();
    const double pi = std::numbers::pi;
    double h = sf.step();
    long L = static_cast<long>(opts.bins_per_2pi) << sf.J;
    long n = static_cast<long>(sf.values.size());

    // Spectrum of the zero-padded node table (period 2*pi/h in frequency).
    std::vector<std::complex<double>> buf_in(static_cast<std::size_t>(L), {0.0, 0.0});
    std::vector<std::complex<double>> buf_out(static_cast<std::size_t>(L));
    for (long i = 0; i < n - 1; ++i)
        buf_in[static_cast<std::size_t>(i)] = sf.values[static_cast<std::size_t>(i)];
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(L),
                                      reinterpret_cast<fftw_complex*>(buf_in.data()),
                                      reinterpret_cast<fftw_complex*>(buf_out.data()),
                                      FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    const long M = opts.m_window;
    const long Kb = opts.bins_per_2pi;
    const long G_core = M * Kb + opts.margin_bins;
    const long Gmax = G_core + M * Kb;
    const double dv = 2.0 * pi / static_cast<double>(Kb);

    // Interpolated spectrum phat(v) = h sinc^2(v h / 2) S(v) on the bin grid.
    std::size_t total_bins = static_cast<std::size_t>(2 * Gmax + 1);
    std::vector<std::complex<double>> ph(total_bins);
    parallel_for(total_bins, [&](std::size_t idx) {
        long g = static_cast<long>(idx) - Gmax;
        double v = static_cast<double>(g) * dv;
        double arg = 0.5 * v * h;
        double sc = (arg == 0.0) ? 1.0 : std::sin(arg) / arg;
        long gm = ((g % L) + L) % L;
        ph[idx] = (h * sc * sc) * buf_out[static_cast<std::size_t>(gm)];
    });

    // sum_{|g| <= G_core} phat(g) conj(P_M(g)), with the partial
    // periodization P_M(g) = sum_{|m| <= M} phat(g - m Kb) accumulated by
    // prefix sums along each residue class mod Kb.
    std::vector<double> partial(static_cast<std::size_t>(Kb), 0.0);
    parallel_for(static_cast<std::size_t>(Kb), [&](std::size_t r) {
        std::vector<std::complex<double>> ps;
        long T = (static_cast<long>(total_bins) - static_cast<long>(r) + Kb - 1) / Kb;
        ps.assign(static_cast<std::size_t>(T + 1), {0.0, 0.0});
        for (long tt = 0; tt < T; ++tt)
            ps[static_cast<std::size_t>(tt + 1)] =
                ps[static_cast<std::size_t>(tt)] +
                ph[static_cast<std::size_t>(static_cast<long>(r) + tt * Kb)];
        double acc = 0.0;
        for (long tt = 0; tt < T; ++tt) {
            long g = static_cast<long>(r) + tt * Kb - Gmax;
            if (g < -G_core || g > G_core) continue;
            if (tt < M || tt + M >= T) continue;
            std::complex<double> window =
                ps[static_cast<std::size_t>(tt + M + 1)] - ps[static_cast<std::size_t>(tt - M)];
            std::complex<double> term =
                ph[static_cast<std::size_t>(static_cast<long>(r) + tt * Kb)] * std::conj(window);
            acc += term.real();
        }
        partial[r] = acc;
    });
    double B = 0.0;
    for (double p : partial) B += p;
    B *= dv / (2.0 * pi);

    PoissonResult res;
    double scale = std::exp2(static_cast<double>(j));
    res.side_a = scale * K.q0(0.0, 0.0);
    res.side_b = scale * B;
    res.rel_deviation = std::abs(res.side_b - res.side_a) / std::abs(res.side_a);
    return res;
}

} // namespace mrdist
