#include "mrdist/quadrature.hpp"

#include "mrdist/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mrdist {

namespace {

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, QuadOpts& opts, int depth) {
    if (opts.budget <= 0 || depth >= opts.max_depth) return whole;
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    opts.budget -= 2;
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, opts, depth + 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, opts, depth + 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          QuadOpts& opts) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    // Pre-partition wide intervals so the initial samples cannot all land in
    // negligible regions, and derive the tolerance from an L1 scale of the
    // panel estimates.  A tolerance tied to the raw total collapses when the
    // total nearly cancels, which drives the refinement depth-first into one
    // subtree until the budget is exhausted and leaves the rest of the
    // interval at its crudest estimate.
    int panels = static_cast<int>(std::min(64.0, std::max(1.0, std::ceil((b - a) / 1.5))));
    std::vector<double> xs(panels + 1), fxs(panels + 1), mid(panels), fmid(panels);
    for (int i = 0; i <= panels; ++i) {
        xs[i] = a + (b - a) * static_cast<double>(i) / panels;
        fxs[i] = f(xs[i]);
    }
    xs[panels] = b;
    double total_est = 0.0, scale = 0.0;
    std::vector<double> whole(panels);
    for (int i = 0; i < panels; ++i) {
        mid[i] = 0.5 * (xs[i] + xs[i + 1]);
        fmid[i] = f(mid[i]);
        whole[i] = (xs[i + 1] - xs[i]) / 6.0 * (fxs[i] + 4.0 * fmid[i] + fxs[i + 1]);
        total_est += whole[i];
        scale += std::abs(whole[i]);
    }
    opts.budget -= 2 * panels + 1;
    double tol =
        std::max(opts.rel_tol * std::max(std::abs(total_est), scale), 1e-300) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i)
        total += adapt(f, xs[i], xs[i + 1], fxs[i], fmid[i], fxs[i + 1], whole[i], tol, opts, 0);
    return sign * total;
}

namespace {

// Integrate [p, q] when p is a singular endpoint: geometric cells shrinking
// toward p, never evaluating at p itself.
double graded_from_left(const std::function<double(double)>& f, double p, double q,
                        QuadOpts& opts) {
    double total = 0.0;
    double width = q - p;
    double hi = q;
    for (int k = 1; k <= 52; ++k) {
        double lo = p + width * std::ldexp(1.0, -k);
        if (lo >= hi) break;
        total += integrate_adaptive(f, lo, hi, opts);
        hi = lo;
        if (hi - p <= 1e-300 || (hi - p) <= 4e-16 * std::abs(p) + 1e-300) break;
        if (opts.budget <= 0) break;
    }
    return total;
}

double graded_from_right(const std::function<double(double)>& f, double p, double q,
                         QuadOpts& opts) {
    double total = 0.0;
    double width = q - p;
    double lo = p;
    for (int k = 1; k <= 52; ++k) {
        double hi = q - width * std::ldexp(1.0, -k);
        if (hi <= lo) break;
        total += integrate_adaptive(f, lo, hi, opts);
        lo = hi;
        if (q - lo <= 1e-300 || (q - lo) <= 4e-16 * std::abs(q) + 1e-300) break;
        if (opts.budget <= 0) break;
    }
    return total;
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a) + std::abs(b)); }

} // namespace

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        const std::vector<double>& singular, QuadOpts& opts) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::vector<double> cuts;
    bool a_sing = false, b_sing = false;
    for (double s : singular) {
        if (near(s, a)) a_sing = true;
        else if (near(s, b)) b_sing = true;
        else if (s > a && s < b) cuts.push_back(s);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> pts;
    pts.push_back(a);
    for (double c : cuts) pts.push_back(c);
    pts.push_back(b);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        double p = pts[i], q = pts[i + 1];
        bool ps = (i > 0) || a_sing;                 // interior cuts are singular
        bool qs = (i + 2 < pts.size()) || b_sing;
        if (!ps && !qs) {
            total += integrate_adaptive(f, p, q, opts);
        } else if (ps && !qs) {
            total += graded_from_left(f, p, q, opts);
        } else if (!ps && qs) {
            total += graded_from_right(f, p, q, opts);
        } else {
            double m = 0.5 * (p + q);
            total += graded_from_left(f, p, m, opts);
            total += graded_from_right(f, m, q, opts);
        }
    }
    return sign * total;
}

double trapezoid_nodes(const std::vector<double>& xs, const std::vector<double>& fs) {
    if (xs.size() != fs.size()) throw ConfigError("trapezoid_nodes: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        s += 0.5 * (fs[i] + fs[i + 1]) * (xs[i + 1] - xs[i]);
    return s;
}

} // namespace mrdist
