#include "mrdist/catalog.hpp"

#include "mrdist/errors.hpp"
#include "mrdist/filters.hpp"
#include "mrdist/kernel.hpp"
#include "mrdist/scaling.hpp"
#include "mrdist/util.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <memory>

namespace mrdist {

namespace {

// Split "name(a,b,...)" into name and argument strings.
struct Callable {
    std::string name;
    std::vector<std::string> args;
};

Callable parse_callable(const std::string& spec) {
    Callable c;
    std::size_t open = spec.find('(');
    if (open == std::string::npos) {
        c.name = spec;
        return c;
    }
    if (spec.back() != ')')
        throw ConfigError("malformed spec '" + spec + "': missing closing parenthesis");
    c.name = spec.substr(0, open);
    std::string inner = spec.substr(open + 1, spec.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= inner.size() && !inner.empty()) {
        std::size_t comma = inner.find(',', pos);
        std::string tok = (comma == std::string::npos) ? inner.substr(pos)
                                                       : inner.substr(pos, comma - pos);
        std::size_t b = tok.find_first_not_of(" \t");
        std::size_t e = tok.find_last_not_of(" \t");
        c.args.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return c;
}

double arg_num(const Callable& c, std::size_t i, double fallback,
               bool required = false) {
    if (i >= c.args.size()) {
        if (required)
            throw ConfigError("spec '" + c.name + "' needs argument " + std::to_string(i + 1));
        return fallback;
    }
    char* end = nullptr;
    double v = std::strtod(c.args[i].c_str(), &end);
    if (end == c.args[i].c_str() || *end != '\0')
        throw ConfigError("spec '" + c.name + "': bad numeric argument '" + c.args[i] + "'");
    return v;
}

TestFunction gauss_fn() {
    TestFunction tf;
    tf.name = "gauss";
    tf.max_order = 2;
    tf.decay = DecayClass::gaussian;
    tf.f = [](double x, int o) {
        double e = std::exp(-x * x);
        if (o == 0) return e;
        if (o == 1) return -2.0 * x * e;
        return (4.0 * x * x - 2.0) * e;
    };
    return tf;
}

TestFunction xgauss_fn() {
    TestFunction tf;
    tf.name = "xgauss";
    tf.max_order = 2;
    tf.decay = DecayClass::gaussian;
    tf.f = [](double x, int o) {
        double e = std::exp(-x * x);
        if (o == 0) return x * e;
        if (o == 1) return (1.0 - 2.0 * x * x) * e;
        return (4.0 * x * x * x - 6.0 * x) * e;
    };
    return tf;
}

TestFunction bump_fn(const std::string& name, double center, double radius) {
    TestFunction tf;
    tf.name = name;
    tf.max_order = 2;
    tf.decay = DecayClass::compact_support;
    tf.center = center;
    tf.radius = radius;
    tf.f = [center, radius](double x, int o) {
        double t = (x - center) / radius;
        double s = 1.0 - t * t;
        if (s <= 0.0) return 0.0;
        double b = std::exp(-1.0 / s);
        if (o == 0) return b;
        double g = -2.0 * t / (s * s);
        if (o == 1) return b * g / radius;
        double gp = -2.0 / (s * s) - 8.0 * t * t / (s * s * s);
        return b * (g * g + gp) / (radius * radius);
    };
    return tf;
}

TestFunction rational_fn(double k) {
    TestFunction tf;
    tf.name = "rational";
    tf.max_order = 2;
    tf.decay = DecayClass::rational_decay;
    tf.power = 2.0 * k;
    tf.f = [k](double x, int o) {
        double base = 1.0 + x * x;
        if (o == 0) return std::pow(base, -k);
        if (o == 1) return -2.0 * k * x * std::pow(base, -k - 1.0);
        return (-2.0 * k * std::pow(base, -k - 1.0) +
                4.0 * k * (k + 1.0) * x * x * std::pow(base, -k - 2.0));
    };
    return tf;
}

double cantor_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double F = 0.0;
    double scale = 0.5;
    for (int i = 0; i < 64; ++i) {
        x *= 3.0;
        if (x < 1.0) {
            scale *= 0.5;
        } else if (x < 2.0) {
            return F + scale; // landed in a removed middle third: plateau
        } else {
            F += scale;
            x -= 2.0;
            scale *= 0.5;
        }
        if (scale == 0.0) break;
    }
    return F;
}

} // namespace

TestFunction make_test_function(const std::string& spec) {
    Callable c = parse_callable(spec);
    if (c.name == "gauss") return gauss_fn();
    if (c.name == "xgauss") return xgauss_fn();
    if (c.name == "bump") {
        double center = arg_num(c, 0, 0.0);
        double radius = arg_num(c, 1, 1.0);
        if (!(radius > 0.0)) throw ConfigError("bump: radius must be positive");
        std::string nm = c.args.empty() ? "bump" : spec;
        return bump_fn(nm, center, radius);
    }
    if (c.name == "bump13") return bump_fn("bump13", 2.0, 1.0);
    if (c.name == "rational") return rational_fn(arg_num(c, 0, 1.0));
    throw ConfigError("unknown test function: " + spec);
}

std::vector<TestFunction> make_battery(const std::string& spec) {
    if (spec == "default4")
        return {make_test_function("gauss"), make_test_function("xgauss"),
                make_test_function("bump"), make_test_function("bump13")};
    // Comma list of member names.
    std::vector<TestFunction> out;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string tok = (comma == std::string::npos) ? spec.substr(pos)
                                                       : spec.substr(pos, comma - pos);
        std::size_t b = tok.find_first_not_of(" \t");
        std::size_t e = tok.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(make_test_function(tok.substr(b, e - b + 1)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw ConfigError("empty battery spec: " + spec);
    return out;
}

GeneralizedFunction make_distribution(const std::string& spec) {
    Callable c = parse_callable(spec);
    GeneralizedFunction f;
    f.name = spec;

    auto density_term = [](std::function<double(double)> g, double growth_k,
                           std::vector<double> sing = {}) {
        MeasureTerm t;
        t.kind = BaseKind::density;
        t.density.g = std::move(g);
        t.density.growth.k = growth_k;
        t.density.singular_points = std::move(sing);
        return t;
    };

    if (c.name == "const") {
        f.gamma = {arg_num(c, 0, 1.0), 0.0};
        return f;
    }
    if (c.name == "delta") {
        MeasureTerm t;
        t.kind = BaseKind::atomic;
        t.atoms.push_back({arg_num(c, 0, 0.0), {1.0, 0.0}});
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "delta_prime") {
        MeasureTerm t;
        t.kind = BaseKind::atomic;
        t.alpha = 1;
        t.atoms.push_back({arg_num(c, 0, 0.0), {1.0, 0.0}});
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "heaviside") {
        MeasureTerm t = density_term([](double x) { return x >= 0.0 ? 1.0 : 0.0; }, 0.0, {0.0});
        t.density.lo = 0.0;
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "sgn") {
        f.terms.push_back(density_term(
            [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }, 0.0, {0.0}));
        return f;
    }
    if (c.name == "abs_pow") {
        double a = arg_num(c, 0, 0.5, true);
        if (a <= -1.0) throw ConfigError("abs_pow: exponent must be > -1 for local integrability");
        f.terms.push_back(density_term(
            [a](double x) { return std::pow(std::abs(x), a); }, std::max(a, 0.0), {0.0}));
        return f;
    }
    if (c.name == "abs_pow_1px2") {
        double a = arg_num(c, 0, 0.5, true);
        if (a <= -1.0) throw ConfigError("abs_pow_1px2: exponent must be > -1");
        f.terms.push_back(density_term(
            [a](double x) { return std::pow(std::abs(x), a) * (1.0 + x * x); }, a + 2.0, {0.0}));
        return f;
    }
    if (c.name == "xsin_inv") {
        MeasureTerm t = density_term(
            [](double x) { return x == 0.0 ? 0.0 : x * std::sin(1.0 / x); }, 1.0, {0.0});
        t.density.osc = OscSpec{0.0, 1.0};
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "cos2p") {
        f.terms.push_back(density_term([](double x) { return 2.0 + std::cos(x); }, 0.0));
        return f;
    }
    if (c.name == "gauss_density") {
        MeasureTerm t = density_term([](double x) { return std::exp(-x * x); }, 0.0);
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "bump_density") {
        double center = arg_num(c, 0, 0.0);
        TestFunction b = make_test_function("bump(" + fmt_g12(center) + ",1)");
        MeasureTerm t;
        t.kind = BaseKind::density;
        t.density.g = [b](double x) { return b(x, 0); };
        t.density.lo = center - 1.0;
        t.density.hi = center + 1.0;
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "cantor") {
        MeasureTerm t;
        t.kind = BaseKind::singular_cdf;
        t.cdf = cantor_cdf;
        t.cdf_lo = 0.0;
        t.cdf_hi = 1.0;
        f.terms.push_back(std::move(t));
        return f;
    }
    if (c.name == "qdelta") {
        std::string filt = c.args.empty() ? "d4" : c.args[0];
        int J = static_cast<int>(arg_num(c, 1, 10.0));
        auto sf = std::make_shared<ScalingFunction>(cascade_build(builtin_filter(filt), J));
        ReproducingKernel kern(sf);
        double send = sf->support_end();
        MeasureTerm t;
        t.kind = BaseKind::density;
        t.density.g = [kern](double x) { return kern.q0(x, 0.0); };
        t.density.lo = -send;
        t.density.hi = send;
        f.terms.push_back(std::move(t));
        return f;
    }
    throw ConfigError("unknown distribution: " + spec);
}

SlowlyVarying parse_slowly_varying(const std::string& spec) {
    SlowlyVarying L;
    if (spec.empty() || spec == "1" || spec == "const" || spec == "constant") {
        L.kind = SlowlyVarying::Kind::constant;
        return L;
    }
    Callable c = parse_callable(spec);
    if (c.name == "logpow") {
        L.kind = SlowlyVarying::Kind::log_power;
        L.beta = arg_num(c, 0, 1.0);
        return L;
    }
    throw ConfigError("unknown slowly varying model: " + spec);
}

std::vector<std::string> catalog_distributions() {
    return {"const",       "delta",      "delta_prime",  "heaviside", "sgn",
            "abs_pow(a)",  "abs_pow_1px2(a)", "xsin_inv", "cos2p",    "gauss_density",
            "bump_density(c)", "cantor",  "qdelta(filter)"};
}

std::vector<std::string> catalog_batteries() { return {"default4"}; }

} // namespace mrdist
