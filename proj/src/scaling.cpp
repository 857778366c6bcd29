#include "mrdist/scaling.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace mrdist {

namespace {

// One cascade step on the level-J node grid: out[i] = sqrt(2) * sum_k h_k in[2i - k*2^J].
// Indices outside the table contribute zero (the function vanishes there).
std::vector<double> cascade_step(const std::vector<double>& in, const std::vector<double>& h,
                                 std::int64_t scale) {
    std::int64_t n = static_cast<std::int64_t>(in.size());
    std::vector<double> out(in.size(), 0.0);
    const double s2 = std::sqrt(2.0);
    parallel_for(in.size(), [&](std::size_t ui) {
        std::int64_t i = static_cast<std::int64_t>(ui);
        double acc = 0.0;
        for (std::size_t k = 0; k < h.size(); ++k) {
            std::int64_t j = 2 * i - static_cast<std::int64_t>(k) * scale;
            if (j >= 0 && j < n) acc += h[k] * in[static_cast<std::size_t>(j)];
        }
        out[ui] = s2 * acc;
    });
    return out;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

int regularity_for(const FilterBank& f) {
    // One derivative table for the longer builtin filters; none for the
    // short ones (whose functions are not differentiable).
    if (f.name == "d6" || f.name == "d8") return 1;
    return 0;
}

std::vector<double> centered_fd(const std::vector<double>& v, double h) {
    std::size_t n = v.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) return d;
    d[0] = (v[1] - v[0]) / h;
    d[n - 1] = (v[n - 1] - v[n - 2]) / h;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    return d;
}

double interp_table(const std::vector<double>& tab, double h, double send, double x) {
    if (!(x >= 0.0) || x >= send) return 0.0;
    double t = x / h;
    std::size_t i = static_cast<std::size_t>(t);
    if (i + 1 >= tab.size()) i = tab.size() - 2;
    double fr = t - static_cast<double>(i);
    return tab[i] * (1.0 - fr) + tab[i + 1] * fr;
}

// Exact dyadic subdivision: node values at level J_from + extra derived from
// the level-J_from table through the two-scale relation with the given
// prefactor (sqrt(2) for phi, 2 sqrt(2) for phi').  New level-(j+1) index i
// reads the level-j table at i - k*2^j; no interpolation is involved.
std::vector<double> refine_with_factor(std::vector<double> cur, const FilterBank& filter,
                                       int J_from, int extra, double factor) {
    std::int64_t scale = std::int64_t(1) << J_from;
    for (int lvl = 0; lvl < extra; ++lvl) {
        std::int64_t n_old = static_cast<std::int64_t>(cur.size());
        std::int64_t n_new = 2 * (n_old - 1) + 1;
        std::vector<double> next(static_cast<std::size_t>(n_new), 0.0);
        parallel_for(static_cast<std::size_t>(n_new), [&](std::size_t ui) {
            std::int64_t i = static_cast<std::int64_t>(ui);
            double acc = 0.0;
            for (std::size_t k = 0; k < filter.h.size(); ++k) {
                std::int64_t j = i - static_cast<std::int64_t>(k) * scale;
                if (j >= 0 && j < n_old) acc += filter.h[k] * cur[static_cast<std::size_t>(j)];
            }
            next[ui] = factor * acc;
        });
        cur.swap(next);
        scale *= 2;
    }
    return cur;
}

// phi' at the integer nodes.  The derivative two-scale relation restricted
// to integers, phi'(m) = 2 sqrt(2) sum_k h_k phi'(2m - k), is an
// eigenproblem on m = 1..N-2 (phi' vanishes at 0 and N-1).  Eigenvalue 1 is
// simple (the matrix spectrum is 2, 1, 1/2, ...), and the eigenvector is
// normalized by sum_m m phi'(m) = -1, obtained by differentiating the
// degree-1 reproduction identity sum_m m phi(x - m) = x - const.
std::vector<double> deriv_integer_values(const FilterBank& filter) {
    const std::size_t N = filter.h.size();
    const std::size_t dim = N - 2;
    const double c = 2.0 * std::sqrt(2.0);
    std::vector<std::vector<double>> A(dim, std::vector<double>(dim, 0.0));
    for (std::size_t m = 1; m + 1 < N; ++m)
        for (std::size_t l = 1; l + 1 < N; ++l) {
            std::int64_t k = 2 * static_cast<std::int64_t>(m) - static_cast<std::int64_t>(l);
            if (k >= 0 && k < static_cast<std::int64_t>(N))
                A[m - 1][l - 1] = c * filter.h[static_cast<std::size_t>(k)];
        }
    for (std::size_t i = 0; i < dim; ++i) A[i][i] -= 1.0;

    // Null vector of (M - I) by elimination with partial pivoting; the rank
    // deficiency is exactly one, so the last back-substitution slot is free.
    for (std::size_t col = 0; col + 1 < dim; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < dim; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        std::swap(A[col], A[piv]);
        if (std::abs(A[col][col]) < 1e-14) continue;
        for (std::size_t r = col + 1; r < dim; ++r) {
            double f = A[r][col] / A[col][col];
            for (std::size_t cc = col; cc < dim; ++cc) A[r][cc] -= f * A[col][cc];
        }
    }
    std::vector<double> v(dim, 0.0);
    v[dim - 1] = 1.0;
    for (std::size_t ri = dim - 1; ri-- > 0;) {
        double acc = 0.0;
        for (std::size_t cc = ri + 1; cc < dim; ++cc) acc += A[ri][cc] * v[cc];
        if (std::abs(A[ri][ri]) < 1e-12)
            throw NonConvergent("derivative eigenproblem for '" + filter.name +
                                "' is numerically singular");
        v[ri] = -acc / A[ri][ri];
    }
    double s = 0.0;
    for (std::size_t l = 0; l < dim; ++l) s += static_cast<double>(l + 1) * v[l];
    if (std::abs(s) < 1e-12)
        throw NonConvergent("derivative normalization for '" + filter.name + "' is degenerate");
    for (double& x : v) x *= -1.0 / s;
    return v;
}

} // namespace

double ScalingFunction::step() const { return std::ldexp(1.0, -J); }

double ScalingFunction::support_end() const { return filter.support_end(); }

double ScalingFunction::eval(double x) const {
    return interp_table(values, step(), support_end(), x);
}

double ScalingFunction::eval_deriv(double x, int order) const {
    if (order == 0) return eval(x);
    if (order < 0 || order > regularity)
        throw OrderTooHigh("derivative order " + std::to_string(order) +
                           " exceeds regularity " + std::to_string(regularity) +
                           " of filter " + filter.name);
    return interp_table(deriv1, step(), support_end(), x);
}

double ScalingFunction::eval2(double x, double y) const {
    if (dimension != 2)
        throw ConfigError("eval2 requires a dimension-2 instance");
    return eval(x) * eval(y);
}

ScalingFunction cascade_build(const FilterBank& filter, int J, int iterations,
                              double tol_cascade, bool enforce_invariants) {
    if (filter.h.size() < 2) throw InvalidFilter("filter needs at least two taps");
    if (J < 4) throw ConfigError("cascade_build: J must be >= 4");
    if (iterations < 1) throw ConfigError("cascade_build: iterations must be >= 1");
    if (enforce_invariants) {
        double viol = filter.max_invariant_violation();
        if (viol > 1e-12)
            throw InvalidFilter("filter '" + filter.name + "' violates two-scale identities by " +
                                fmt_g12(viol));
    }

    ScalingFunction sf;
    sf.filter = filter;
    sf.J = J;
    std::int64_t scale = std::int64_t(1) << J;
    std::size_t n = static_cast<std::size_t>((filter.h.size() - 1) * static_cast<std::size_t>(scale) + 1);

    // Box start: indicator of [0,1) sampled at the nodes.
    std::vector<double> cur(n, 0.0);
    for (std::int64_t i = 0; i < scale; ++i) cur[static_cast<std::size_t>(i)] = 1.0;

    double d = 0.0;
    int used = 0;
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> next = cascade_step(cur, filter.h, scale);
        d = sup_diff(next, cur);
        cur.swap(next);
        ++used;
        if (d < 1e-16) break;
    }
    sf.iterations_used = used;
    sf.last_iter_delta = d;
    if (d > tol_cascade)
        throw NonConvergent("cascade for '" + filter.name + "' still moving by " + fmt_g12(d) +
                            " after " + std::to_string(used) + " iterations (tol " +
                            fmt_g12(tol_cascade) + ")");
    sf.values = std::move(cur);

    sf.regularity = regularity_for(filter);
    if (sf.regularity >= 1) {
        // Derivative table: the derivative two-scale relation is solved
        // exactly (integer-node eigenproblem, then one exact subdivision
        // pass per level with prefactor 2 sqrt(2)).  The table is accepted
        // only when it is resolved at grid scale -- adjacent nodes moving by
        // a small fraction of the sup -- since a derivative that is rougher
        // than the grid cannot be represented by linear interpolation; in
        // that case the centered finite-difference table of phi is used and
        // flagged approximate.
        bool exact_ok = false;
        if (filter.h.size() >= 4) {
            std::vector<double> ints = deriv_integer_values(filter);
            std::vector<double> level0(filter.h.size(), 0.0);
            for (std::size_t l = 0; l < ints.size(); ++l) level0[l + 1] = ints[l];
            std::vector<double> dv = refine_with_factor(std::move(level0), filter, 0, J,
                                                        2.0 * std::sqrt(2.0));
            double mx = 0.0, dmax = 0.0;
            for (std::size_t i = 0; i < dv.size(); ++i) {
                mx = std::max(mx, std::abs(dv[i]));
                if (i + 1 < dv.size()) dmax = std::max(dmax, std::abs(dv[i + 1] - dv[i]));
            }
            if (mx > 0.0 && dmax <= 0.1 * mx) {
                sf.deriv1 = std::move(dv);
                sf.deriv_approximate = false;
                exact_ok = true;
            }
        }
        if (!exact_ok) {
            sf.deriv1 = centered_fd(sf.values, sf.step());
            sf.deriv_approximate = true;
        }
    }
    return sf;
}

std::vector<double> refine_table(const std::vector<double>& tab, const FilterBank& filter,
                                 int J_from, int extra) {
    if (extra < 0) throw ConfigError("refine_table: extra must be >= 0");
    return refine_with_factor(tab, filter, J_from, extra, std::sqrt(2.0));
}

double two_scale_residual(const ScalingFunction& sf) {
    std::int64_t scale = std::int64_t(1) << sf.J;
    std::int64_t n = static_cast<std::int64_t>(sf.values.size());
    const double s2 = std::sqrt(2.0);
    double worst = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < sf.filter.h.size(); ++k) {
            std::int64_t j = 2 * i - static_cast<std::int64_t>(k) * scale;
            if (j >= 0 && j < n) acc += sf.filter.h[k] * sf.values[static_cast<std::size_t>(j)];
        }
        worst = std::max(worst, std::abs(sf.values[static_cast<std::size_t>(i)] - s2 * acc));
    }
    return worst;
}

double orthonormality_check(const ScalingFunction& sf) {
    // Two extra subdivision levels tighten the Riemann sums enough for the
    // 1e-6 gate without re-running the cascade.
    const int extra = 2;
    std::vector<double> tab = refine_table(sf.values, sf.filter, sf.J, extra);
    int Jr = sf.J + extra;
    double h = std::ldexp(1.0, -Jr);
    std::int64_t per = std::int64_t(1) << Jr;
    std::int64_t n = static_cast<std::int64_t>(tab.size());
    std::size_t nshift = sf.filter.h.size() - 1;

    double worst = 0.0;
    for (std::size_t m = 0; m < nshift; ++m) {
        std::int64_t off = static_cast<std::int64_t>(m) * per;
        double dot = 0.0;
        for (std::int64_t i = 0; i + off < n - 1; ++i)
            dot += tab[static_cast<std::size_t>(i)] * tab[static_cast<std::size_t>(i + off)];
        dot *= h;
        double target = (m == 0) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(dot - target));
    }
    return worst;
}

double partition_of_unity_deviation(const ScalingFunction& sf) {
    std::int64_t per = std::int64_t(1) << sf.J;
    std::size_t nshift = sf.filter.h.size() - 1;
    double worst = 0.0;
    for (std::int64_t i = 0; i < per; ++i) {
        double s = 0.0;
        for (std::size_t m = 0; m < nshift; ++m)
            s += sf.values[static_cast<std::size_t>(i + static_cast<std::int64_t>(m) * per)];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

double table_integral(const std::vector<double>& tab, double h) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < tab.size(); ++i) s += tab[i];
    return s * h;
}

ScalingFunction tensorize(const ScalingFunction& sf) {
    if (sf.dimension != 1) throw ConfigError("tensorize: input must be dimension 1");
    ScalingFunction out = sf;
    out.dimension = 2;
    return out;
}

} // namespace mrdist
