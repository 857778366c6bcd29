#include "mrdist/kernel.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace mrdist {

ReproducingKernel::ReproducingKernel(std::shared_ptr<const ScalingFunction> sf)
    : sf_(std::move(sf)) {
    if (!sf_) throw ConfigError("ReproducingKernel: null scaling function");
}

double ReproducingKernel::q0(double x, double y) const {
    double send = sf_->support_end();
    if (std::abs(x - y) >= send) return 0.0;
    // phi(x-m) needs m in (x-send, x]; same for y.  Intersect.
    long m_lo = static_cast<long>(std::ceil(std::max(x, y) - send));
    long m_hi = static_cast<long>(std::floor(std::min(x, y)));
    double acc = 0.0;
    for (long m = m_lo; m <= m_hi; ++m) {
        double md = static_cast<double>(m);
        acc += sf_->eval(x - md) * sf_->eval(y - md);
    }
    return acc;
}

double ReproducingKernel::q0_deriv(double x, double y, int ax, int by) const {
    if (ax < 0 || by < 0 || ax > sf_->regularity || by > sf_->regularity)
        throw OrderTooHigh("kernel derivative order (" + std::to_string(ax) + "," +
                           std::to_string(by) + ") exceeds regularity " +
                           std::to_string(sf_->regularity));
    double send = sf_->support_end();
    if (std::abs(x - y) >= send) return 0.0;
    long m_lo = static_cast<long>(std::ceil(std::max(x, y) - send));
    long m_hi = static_cast<long>(std::floor(std::min(x, y)));
    double acc = 0.0;
    for (long m = m_lo; m <= m_hi; ++m) {
        double md = static_cast<double>(m);
        acc += sf_->eval_deriv(x - md, ax) * sf_->eval_deriv(y - md, by);
    }
    return acc;
}

double ReproducingKernel::q_lambda_z(double lambda, double z, double x, double y) const {
    double s = std::exp2(lambda);
    return s * q0(s * x + z, s * y + z);
}

double ReproducingKernel::q0_2d(double x1, double x2, double y1, double y2) const {
    return q0(x1, y1) * q0(x2, y2);
}

double decay_envelope_bound(const ReproducingKernel& K, bool exponential, int l,
                            const std::vector<std::pair<double, double>>& samples) {
    double worst = 0.0;
    for (const auto& [x, y] : samples) {
        double d = std::abs(x - y);
        double w = exponential ? std::exp(static_cast<double>(l) * d)
                               : std::pow(1.0 + d, static_cast<double>(l));
        worst = std::max(worst, w * std::abs(K.q0(x, y)));
    }
    return worst;
}

double polynomial_reproduction_residual(const ReproducingKernel& K, int degree,
                                        const std::vector<double>& xs) {
    const ScalingFunction& sf = K.sf();
    double h = sf.step();
    double send = sf.support_end();
    double worst = 0.0;
    for (double x : xs) {
        // Precompute phi(x - m) over the m-range once per x.
        long m_lo = static_cast<long>(std::ceil(x - send));
        long m_hi = static_cast<long>(std::floor(x));
        std::vector<double> fx;
        fx.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
        for (long m = m_lo; m <= m_hi; ++m)
            fx.push_back(sf.eval(x - static_cast<double>(m)));

        auto q0x = [&](double y) {
            long lo = std::max(m_lo, static_cast<long>(std::ceil(y - send)));
            long hi = std::min(m_hi, static_cast<long>(std::floor(y)));
            double acc = 0.0;
            for (long m = lo; m <= hi; ++m)
                acc += fx[static_cast<std::size_t>(m - m_lo)] * sf.eval(y - static_cast<double>(m));
            return acc;
        };

        // Trapezoid on the dyadic lattice; q0(x, .) is piecewise linear
        // between lattice nodes, so this is exact up to the kink at y = x.
        long i_lo = static_cast<long>(std::ceil((x - send) / h));
        long i_hi = static_cast<long>(std::floor((x + send) / h));
        double acc = 0.0;
        double prev_y = static_cast<double>(i_lo) * h;
        double prev_f = q0x(prev_y) * std::pow(prev_y, degree);
        for (long i = i_lo + 1; i <= i_hi; ++i) {
            double y = static_cast<double>(i) * h;
            double fy = q0x(y) * std::pow(y, degree);
            acc += 0.5 * (prev_f + fy) * h;
            prev_y = y;
            prev_f = fy;
        }
        worst = std::max(worst, std::abs(acc - std::pow(x, degree)));
    }
    return worst;
}

TestFunction kernel_slice_testfn(const ReproducingKernel& K, double lambda, double z, double x0) {
    double w = std::exp2(lambda) * x0 + z;
    double send = K.sf().support_end();
    TestFunction tf;
    tf.name = "kernel_slice";
    tf.max_order = K.sf().regularity;
    tf.decay = DecayClass::compact_support;
    tf.center = 0.0;
    tf.radius = send;
    tf.f = [K, w](double t, int order) {
        if (order == 0) return K.q0(w, w + t);
        return K.q0_deriv(w, w + t, 0, order);
    };
    return tf;
}

double kernel_abs_moment(const ReproducingKernel& K, double a, double x0) {
    if (a <= -1.0) throw ConfigError("kernel_abs_moment: need a > -1");
    double send = K.sf().support_end();
    QuadOpts opts;
    opts.rel_tol = 1e-10;
    opts.budget = 1 << 21;
    auto f = [&](double u) { return std::pow(std::abs(u), a) * K.q0(x0, u); };
    return integrate_graded(f, x0 - send, x0 + send, {0.0}, opts);
}

} // namespace mrdist
