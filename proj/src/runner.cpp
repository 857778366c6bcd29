#include "mrdist/runner.hpp"

#include "mrdist/asymptotics.hpp"
#include "mrdist/catalog.hpp"
#include "mrdist/errors.hpp"
#include "mrdist/filters.hpp"
#include "mrdist/genfun.hpp"
#include "mrdist/kernel.hpp"
#include "mrdist/projection.hpp"
#include "mrdist/scaling.hpp"
#include "mrdist/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace mrdist {

namespace {

struct Check {
    std::string name;
    double value = 0.0;
    std::string op; // "<=" or ">="
    double threshold = 0.0;
    bool pass = false;
};

void check_le(std::vector<Check>& cs, const std::string& name, double value, double thr) {
    cs.push_back({name, value, "<=", thr, value <= thr});
}

void check_ge(std::vector<Check>& cs, const std::string& name, double value, double thr) {
    cs.push_back({name, value, ">=", thr, value >= thr});
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + p.string());
    out << content;
    if (!out) throw ConfigError("write failed: " + p.string());
}

json cplx(const std::complex<double>& v) { return json::array({v.real(), v.imag()}); }

QuadOpts quad_from(const Config& cfg) {
    QuadOpts q;
    q.rel_tol = cfg.get_double("quad", "rel_tol", q.rel_tol);
    q.budget = static_cast<std::size_t>(cfg.get_int("quad", "budget", static_cast<int>(q.budget)));
    q.max_depth = cfg.get_int("quad", "max_depth", q.max_depth);
    return q;
}

std::shared_ptr<const ScalingFunction> scaling_from(const Config& cfg) {
    FilterBank fb = resolve_filter(cfg.get("mra", "filter", "d4"));
    int J = cfg.get_int("mra", "j", 10);
    int iters = cfg.get_int("mra", "iterations", 60);
    double tol = cfg.get_double("mra", "tol", 1e-8);
    bool enforce = cfg.get_bool("mra", "enforce", true);
    return std::make_shared<const ScalingFunction>(cascade_build(fb, J, iters, tol, enforce));
}

ReproducingKernel kernel_from(const Config& cfg) { return ReproducingKernel(scaling_from(cfg)); }

GeneralizedFunction distribution_from(const Config& cfg) {
    return make_distribution(cfg.require("distribution", "name"));
}

// Pointwise value of an order-0 density distribution (plus constant part),
// used for convergence targets without baking numbers into configs.
std::complex<double> density_value_at(const GeneralizedFunction& f, double x0) {
    std::complex<double> v = f.gamma;
    for (const auto& term : f.terms) {
        if (term.kind != BaseKind::density || term.alpha != 0)
            throw ConfigError("target=density needs an order-0 density distribution, got '" +
                              f.name + "'");
        double g = term.density.g(x0);
        if (!std::isfinite(g))
            throw ConfigError("target=density: density of '" + f.name +
                              "' is singular at the requested point");
        v += term.weight * g;
    }
    return v;
}

ProjectPath path_from(const Config& cfg, const std::string& section) {
    std::string p = cfg.get(section, "path", "aligned");
    if (p == "aligned") return ProjectPath::aligned;
    if (p == "rescaled") return ProjectPath::rescaled;
    throw ConfigError("[" + section + "] path: expected 'aligned' or 'rescaled', got '" + p + "'");
}

// ---------------------------------------------------------------- pipelines

void run_info(const Config& cfg, const fs::path& out, json& summary, std::vector<Check>& checks) {
    auto sf = scaling_from(cfg);
    double invariant = sf->filter.max_invariant_violation();
    double two_scale = two_scale_residual(*sf);
    double ortho = orthonormality_check(*sf);
    double pou = partition_of_unity_deviation(*sf);
    double integral = table_integral(sf->values, sf->step());

    json data;
    data["filter"] = sf->filter.name;
    data["filter_length"] = sf->filter.h.size();
    data["j"] = sf->J;
    data["iterations_used"] = sf->iterations_used;
    data["last_iter_delta"] = sf->last_iter_delta;
    data["regularity"] = sf->regularity;
    data["deriv_approximate"] = sf->deriv_approximate;
    data["invariant_violation"] = invariant;
    data["two_scale_residual"] = two_scale;
    data["orthonormality"] = ortho;
    data["partition_of_unity"] = pou;
    data["table_integral"] = integral;

    check_le(checks, "filter_invariant_max", invariant,
             cfg.get_double("checks", "filter_invariant_max", 1e-12));
    check_le(checks, "last_iter_delta", sf->last_iter_delta,
             cfg.get_double("mra", "tol", 1e-8));
    check_le(checks, "two_scale_residual_max", two_scale,
             cfg.get_double("checks", "two_scale_residual_max", 1e-6));
    check_le(checks, "orthonormality_max", ortho,
             cfg.get_double("checks", "orthonormality_max", 1e-6));
    check_le(checks, "partition_of_unity_max", pou,
             cfg.get_double("checks", "partition_of_unity_max", 1e-6));
    check_le(checks, "table_integral_dev", std::abs(integral - 1.0),
             cfg.get_double("checks", "table_integral_dev_max", 1e-6));

    if (cfg.has_section("polyrep")) {
        ReproducingKernel K(sf);
        int degree = cfg.get_int("polyrep", "degree", 1);
        std::vector<double> xs;
        if (cfg.has("polyrep", "grid") || cfg.has("polyrep", "from"))
            xs = cfg.grid("polyrep");
        else
            xs = linspace(-0.75, sf->support_end() + 0.75, 41);
        json residuals = json::array();
        double worst = 0.0;
        for (int d = 0; d <= degree; ++d) {
            double r = polynomial_reproduction_residual(K, d, xs);
            residuals.push_back(r);
            worst = std::max(worst, r);
        }
        data["polyrep_degree"] = degree;
        data["polyrep_residuals"] = residuals;
        check_le(checks, "polynomial_reproduction_max", worst,
                 cfg.get_double("checks", "polynomial_reproduction_max", 1e-6));
        int witness = cfg.get_int("polyrep", "witness_degree", -1);
        if (witness >= 0) {
            double wr = polynomial_reproduction_residual(K, witness, xs);
            data["polyrep_witness_degree"] = witness;
            data["polyrep_witness_residual"] = wr;
            check_ge(checks, "polyrep_witness", wr,
                     cfg.get_double("checks", "witness_min", 1e-2));
        }
    }

    std::ostringstream csv;
    csv << "x,phi" << (sf->regularity >= 1 ? ",dphi" : "") << "\n";
    double h = sf->step();
    for (std::size_t i = 0; i < sf->nodes(); ++i) {
        csv << fmt_g12(static_cast<double>(i) * h) << "," << fmt_g12(sf->values[i]);
        if (sf->regularity >= 1) csv << "," << fmt_g12(sf->deriv1[i]);
        csv << "\n";
    }
    write_file(out / "table.csv", csv.str());
    summary["data"] = data;
}

void run_project(const Config& cfg, const fs::path& out, json& summary,
                 std::vector<Check>& checks) {
    ReproducingKernel K = kernel_from(cfg);
    GeneralizedFunction f = distribution_from(cfg);
    double lambda = cfg.require_double("project", "lambda");
    double z = cfg.get_double("project", "z", 0.0);
    ProjectPath path = path_from(cfg, "project");
    QuadOpts quad = quad_from(cfg);
    std::vector<double> xs = cfg.grid("points");

    std::vector<std::complex<double>> vals(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        vals[i] = project_at(f, K, lambda, z, xs[i], path, quad);

    double max_abs = 0.0;
    std::ostringstream csv;
    csv << "x,re,im\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        csv << fmt_g12(xs[i]) << "," << fmt_g12(vals[i].real()) << ","
            << fmt_g12(vals[i].imag()) << "\n";
        max_abs = std::max(max_abs, std::abs(vals[i]));
    }
    write_file(out / "values.csv", csv.str());

    json data;
    data["distribution"] = f.name;
    data["lambda"] = lambda;
    data["z"] = z;
    data["count"] = xs.size();
    data["max_abs"] = max_abs;
    summary["data"] = data;

    if (cfg.has("checks", "max_abs_max"))
        check_le(checks, "max_abs", max_abs, cfg.require_double("checks", "max_abs_max"));
}

void run_converge(const Config& cfg, const fs::path& out, json& summary,
                  std::vector<Check>& checks) {
    ReproducingKernel K = kernel_from(cfg);
    GeneralizedFunction f = distribution_from(cfg);
    double x0 = cfg.get_double("converge", "x0", 0.0);
    double z = cfg.get_double("converge", "z", 0.0);
    ProjectPath path = path_from(cfg, "converge");
    QuadOpts quad = quad_from(cfg);
    std::vector<double> lambdas = cfg.grid("lambda");
    if (lambdas.empty()) throw ConfigError("[lambda]: empty grid");

    std::vector<std::complex<double>> vals(lambdas.size());
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        vals[i] = project_at(f, K, lambdas[i], z, x0, path, quad);

    std::ostringstream csv;
    csv << "lambda,re,im,abs_delta\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        double d = i == 0 ? 0.0 : std::abs(vals[i] - vals[i - 1]);
        csv << fmt_g12(lambdas[i]) << "," << fmt_g12(vals[i].real()) << ","
            << fmt_g12(vals[i].imag()) << "," << fmt_g12(d) << "\n";
    }
    write_file(out / "converge.csv", csv.str());

    json data;
    data["distribution"] = f.name;
    data["x0"] = x0;
    data["z"] = z;
    data["lambdas"] = lambdas;
    json jv = json::array();
    for (const auto& v : vals) jv.push_back(cplx(v));
    data["values"] = jv;

    std::string target_spec = cfg.get("checks", "target", "");
    if (!target_spec.empty()) {
        std::complex<double> target =
            target_spec == "density" ? density_value_at(f, x0)
                                     : std::complex<double>(cfg.require_double("checks", "target"), 0.0);
        data["target"] = cplx(target);
        std::vector<double> devs(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) devs[i] = std::abs(vals[i] - target);
        data["final_deviation"] = devs.back();
        data["deviations"] = devs;
        check_le(checks, "final_deviation", devs.back(),
                 cfg.get_double("checks", "final_dev_max", 1e-3));
        if (cfg.has("checks", "contraction_max")) {
            double ratio = devs.back() / std::max(devs.front(), 1e-300);
            check_le(checks, "tail_contraction", ratio,
                     cfg.require_double("checks", "contraction_max"));
        }
        if (cfg.get_bool("checks", "require_monotone", false)) {
            // Deviations below the floor sit at the quadrature noise level,
            // where ordering is not meaningful.
            double floor = cfg.get_double("checks", "monotone_floor", 0.0);
            bool mono = true;
            for (std::size_t i = 1; i < devs.size(); ++i)
                mono = mono && devs[i] <= std::max(devs[i - 1] * (1.0 + 1e-12), floor);
            check_ge(checks, "monotone_decreasing", mono ? 1.0 : 0.0, 1.0);
        }
    }

    if (cfg.has_section("qbth2")) {
        double alpha = cfg.require_double("qbth2", "alpha");
        GeneralizedFunction g = make_distribution(cfg.require("qbth2", "comparison"));
        SlowlyVarying L = parse_slowly_varying(cfg.get("qbth2", "L", "const"));
        double amp = cfg.get_double("qbth2", "abs_moment_power", -10.0);
        Qbth2Report rep = qbth2_check(f, g, x0, K, lambdas, alpha, L, amp, quad);

        std::ostringstream q2;
        q2 << "lambda,proj_f,proj_g,e_lambda\n";
        for (std::size_t i = 0; i < rep.lambdas.size(); ++i)
            q2 << fmt_g12(rep.lambdas[i]) << "," << fmt_g12(rep.proj_f[i]) << ","
               << fmt_g12(rep.proj_g[i]) << "," << fmt_g12(rep.e_lambda[i]) << "\n";
        write_file(out / "qbth2.csv", q2.str());

        json jq;
        jq["alpha"] = alpha;
        jq["comparison"] = g.name;
        jq["L"] = L.describe();
        jq["c_limit"] = rep.c_limit;
        jq["c_quadrature"] = rep.c_quadrature;
        jq["e_final"] = rep.e_lambda.back();
        jq["decreasing_tail"] = rep.decreasing_tail;
        data["qbth2"] = jq;

        if (rep.c_quadrature != 0.0)
            check_le(checks, "qbth2_c_rel_dev",
                     std::abs(rep.c_limit - rep.c_quadrature) / std::abs(rep.c_quadrature),
                     cfg.get_double("checks", "c_rel_max", 1e-3));
        if (cfg.get_bool("checks", "require_decreasing", true))
            check_ge(checks, "qbth2_tail_decreasing", rep.decreasing_tail ? 1.0 : 0.0, 1.0);
        if (cfg.has("checks", "e_final_max"))
            check_le(checks, "qbth2_e_final", std::abs(rep.e_lambda.back()),
                     cfg.require_double("checks", "e_final_max"));
    }

    summary["data"] = data;
}

void run_quasi(const Config& cfg, const fs::path& out, json& summary,
               std::vector<Check>& checks) {
    GeneralizedFunction f = distribution_from(cfg);
    double x0 = cfg.get_double("quasi", "x0", 0.0);
    auto battery = make_battery(cfg.get("quasi", "battery", "default4"));
    SlowlyVarying L = parse_slowly_varying(cfg.get("quasi", "L", "const"));
    QuasiOpts opts;
    opts.strict = cfg.get_bool("quasi", "strict", true);
    opts.slope_tol = cfg.get_double("quasi", "slope_tol", opts.slope_tol);
    opts.quad = quad_from(cfg);
    std::vector<double> eps = cfg.grid("eps");

    QuasiFit fit = quasi_fit(f, x0, eps, battery, L, opts);

    std::ostringstream csv;
    csv << "eps,member,re,im,abs\n";
    for (std::size_t i = 0; i < fit.eps.size(); ++i)
        for (std::size_t m = 0; m < fit.names.size(); ++m) {
            const auto& v = fit.pairings[i][m];
            csv << fmt_g12(fit.eps[i]) << "," << fit.names[m] << "," << fmt_g12(v.real())
                << "," << fmt_g12(v.imag()) << "," << fmt_g12(std::abs(v)) << "\n";
        }
    write_file(out / "pairings.csv", csv.str());

    std::ostringstream sl;
    sl << "member,slope,used\n";
    for (std::size_t m = 0; m < fit.names.size(); ++m)
        sl << fit.names[m] << "," << fmt_g12(fit.slopes[m]) << ","
           << (fit.used[m] ? 1 : 0) << "\n";
    write_file(out / "slopes.csv", sl.str());

    json data;
    data["distribution"] = f.name;
    data["x0"] = x0;
    data["L"] = L.describe();
    data["alpha_hat"] = fit.alpha_hat;
    data["spread"] = fit.spread;
    data["consistent"] = fit.consistent;
    data["homogeneity_max_dev"] = fit.homogeneity_max_dev;
    data["names"] = fit.names;
    data["slopes"] = fit.slopes;
    json used = json::array();
    for (bool u : fit.used) used.push_back(u);
    data["used"] = used;
    summary["data"] = data;

    if (cfg.has("checks", "alpha_expected"))
        check_le(checks, "alpha_dev",
                 std::abs(fit.alpha_hat - cfg.require_double("checks", "alpha_expected")),
                 cfg.get_double("checks", "alpha_tol", 0.05));
    if (cfg.has("checks", "alpha_far_from"))
        check_ge(checks, "alpha_separation",
                 std::abs(fit.alpha_hat - cfg.require_double("checks", "alpha_far_from")),
                 cfg.get_double("checks", "alpha_far_min", 0.5));
    if (cfg.get_bool("checks", "require_consistent", false))
        check_ge(checks, "consistent", fit.consistent ? 1.0 : 0.0, 1.0);
    if (cfg.has("checks", "spread_max"))
        check_le(checks, "spread", fit.spread, cfg.require_double("checks", "spread_max"));
    if (cfg.has("checks", "homogeneity_max"))
        check_le(checks, "homogeneity_dev", fit.homogeneity_max_dev,
                 cfg.require_double("checks", "homogeneity_max"));
}

void run_qbth3(const Config& cfg, const fs::path& out, json& summary,
               std::vector<Check>& checks) {
    ReproducingKernel K = kernel_from(cfg);
    GeneralizedFunction f = distribution_from(cfg);
    double x0 = cfg.get_double("qbth3", "x0", 0.0);
    double alpha = cfg.require_double("qbth3", "alpha");
    auto battery = make_battery(cfg.get("qbth3", "battery", "default4"));
    SlowlyVarying L = parse_slowly_varying(cfg.get("qbth3", "L", "const"));
    QuadOpts quad = quad_from(cfg);
    std::vector<double> eps = cfg.grid("eps");

    Qbth3Report rep = qbth3_equivalence(f, x0, K, eps, battery, alpha, L, quad);

    std::ostringstream csv;
    csv << "eps,member,direct_re,direct_im,projected_re,projected_im,rel_dev\n";
    for (std::size_t i = 0; i < rep.eps.size(); ++i)
        for (std::size_t m = 0; m < rep.names.size(); ++m)
            csv << fmt_g12(rep.eps[i]) << "," << rep.names[m] << ","
                << fmt_g12(rep.direct[i][m].real()) << "," << fmt_g12(rep.direct[i][m].imag())
                << "," << fmt_g12(rep.projected[i][m].real()) << ","
                << fmt_g12(rep.projected[i][m].imag()) << "," << fmt_g12(rep.rel_dev[i][m])
                << "\n";
    write_file(out / "qbth3.csv", csv.str());

    json data;
    data["distribution"] = f.name;
    data["x0"] = x0;
    data["alpha"] = alpha;
    data["L"] = L.describe();
    data["max_rel_dev"] = rep.max_rel_dev;
    data["o_bound"] = rep.o_bound;
    data["compared"] = rep.compared;
    summary["data"] = data;

    check_le(checks, "max_rel_dev", rep.max_rel_dev,
             cfg.get_double("checks", "rel_dev_max", 1e-2));
    check_ge(checks, "compared_count", static_cast<double>(rep.compared),
             static_cast<double>(cfg.get_int("checks", "min_compared", 1)));
    check_ge(checks, "o_bound_finite", std::isfinite(rep.o_bound) ? 1.0 : 0.0, 1.0);
    if (cfg.has("checks", "o_bound_max"))
        check_le(checks, "o_bound", rep.o_bound, cfg.require_double("checks", "o_bound_max"));
}

void density_report_csv(const DensityReport& rep, const fs::path& file) {
    std::ostringstream csv;
    csv << "eps,mass,ratio\n";
    for (std::size_t i = 0; i < rep.eps.size(); ++i)
        csv << fmt_g12(rep.eps[i]) << "," << fmt_g12(rep.mass[i]) << ","
            << fmt_g12(rep.ratios[i]) << "\n";
    write_file(file, csv.str());
}

json density_report_json(const DensityReport& rep) {
    json d;
    d["alpha"] = rep.alpha;
    d["theta_hat"] = rep.theta_hat;
    d["trend"] = rep.trend;
    d["convention"] = rep.convention;
    d["eps"] = rep.eps;
    d["mass"] = rep.mass;
    d["ratios"] = rep.ratios;
    return d;
}

void run_density(const Config& cfg, const fs::path& out, json& summary,
                 std::vector<Check>& checks) {
    std::string mode = cfg.get("density", "mode", "ratio");
    GeneralizedFunction mu = distribution_from(cfg);
    double x0 = cfg.get_double("density", "x0", 0.0);
    QuadOpts quad = quad_from(cfg);
    bool alternate = [&] {
        std::string c = cfg.get("density", "convention", "standard");
        if (c == "standard") return false;
        if (c == "alternate") return true;
        throw ConfigError("[density] convention: expected 'standard' or 'alternate'");
    }();

    if (mode == "ratio" || mode == "qbc2") {
        double alpha = cfg.require_double("density", "alpha");
        SlowlyVarying L = parse_slowly_varying(cfg.get("density", "L", "const"));
        std::vector<double> eps = cfg.grid("eps");
        if (mode == "ratio") {
            DensityReport rep = alpha_density(mu, x0, alpha, L, eps, alternate, quad);
            density_report_csv(rep, out / "density.csv");
            json data = density_report_json(rep);
            data["distribution"] = mu.name;
            data["x0"] = x0;
            summary["data"] = data;
            if (cfg.has("checks", "trend_max"))
                check_le(checks, "trend", rep.trend, cfg.require_double("checks", "trend_max"));
            if (cfg.has("checks", "theta_expected"))
                check_le(checks, "theta_dev",
                         std::abs(rep.theta_hat - cfg.require_double("checks", "theta_expected")),
                         cfg.get_double("checks", "theta_tol", 0.05));
        } else {
            ReproducingKernel K = kernel_from(cfg);
            auto battery = make_battery(cfg.get("density", "battery", "default4"));
            Qbc2Report rep = qbc2_pipeline(mu, x0, alpha, K, eps, battery, alternate, quad);
            density_report_csv(rep.density, out / "density.csv");
            json data;
            data["distribution"] = mu.name;
            data["x0"] = x0;
            data["alpha"] = rep.alpha;
            data["mass_slope"] = rep.mass_slope;
            data["ell_hat"] = rep.ell_hat;
            data["limit_spread"] = rep.limit_spread;
            data["theta_hat"] = rep.theta_hat;
            data["theta_formula"] = rep.theta_formula;
            data["density"] = density_report_json(rep.density);
            summary["data"] = data;
            check_le(checks, "limit_spread", rep.limit_spread,
                     cfg.get_double("checks", "spread_max", 0.05));
            check_le(checks, "theta_rel_dev",
                     std::abs(rep.theta_hat - rep.theta_formula) /
                         std::max(std::abs(rep.theta_formula), 1e-300),
                     cfg.get_double("checks", "theta_rel_max", 0.1));
        }
        return;
    }

    if (mode == "density_point") {
        if (mu.gamma != std::complex<double>(0.0, 0.0) || mu.terms.size() != 1)
            throw ConfigError("density_point needs a single-term measure without constant part");
        FamilySpec family;
        std::string kind = cfg.get("density", "family", "balls");
        if (kind == "balls")
            family.kind = FamilySpec::Kind::balls;
        else if (kind == "hyperrectangles")
            family.kind = FamilySpec::Kind::hyperrectangles;
        else
            throw ConfigError("[density] family: expected 'balls' or 'hyperrectangles'");
        family.a = cfg.get_double("density", "a", family.a);
        family.samples = cfg.get_int("density", "samples", family.samples);
        family.seed = static_cast<std::uint64_t>(
            cfg.get_int("density", "seed", static_cast<int>(family.seed)));
        std::vector<double> scales = cfg.grid("scales");

        DensityPointReport rep = density_point_check(mu.terms[0], x0, scales, family, quad);

        std::ostringstream csv;
        csv << "scale,sample,ratio\n";
        for (std::size_t i = 0; i < rep.scales.size(); ++i)
            for (std::size_t s = 0; s < rep.ratios[i].size(); ++s)
                csv << fmt_g12(rep.scales[i]) << "," << s << "," << fmt_g12(rep.ratios[i][s])
                    << "\n";
        write_file(out / "density_point.csv", csv.str());

        json data;
        data["distribution"] = mu.name;
        data["x0"] = x0;
        data["family"] = kind;
        data["samples"] = family.samples;
        data["seed"] = family.seed;
        data["gamma_hat"] = rep.gamma_hat;
        data["dispersion"] = rep.dispersion;
        data["max_abs_ratio"] = rep.max_abs_ratio;
        summary["data"] = data;

        if (cfg.has("checks", "max_abs_ratio_max"))
            check_le(checks, "max_abs_ratio", rep.max_abs_ratio,
                     cfg.require_double("checks", "max_abs_ratio_max"));
        if (cfg.has("checks", "dispersion_min"))
            check_ge(checks, "dispersion", rep.dispersion,
                     cfg.require_double("checks", "dispersion_min"));
        if (cfg.has("checks", "gamma_expected"))
            check_le(checks, "gamma_dev",
                     std::abs(rep.gamma_hat - cfg.require_double("checks", "gamma_expected")),
                     cfg.get_double("checks", "gamma_tol", 0.05));
        return;
    }

    throw ConfigError("[density] mode: expected 'ratio', 'qbc2', or 'density_point', got '" +
                      mode + "'");
}

void run_poisson(const Config& cfg, const fs::path& out, json& summary,
                 std::vector<Check>& checks) {
    ReproducingKernel K = kernel_from(cfg);
    std::vector<int> js;
    for (double v : cfg.get_list("poisson", "j")) js.push_back(static_cast<int>(v));
    if (js.empty()) js.push_back(0);
    PoissonOpts opts;
    opts.m_window = cfg.get_int("poisson", "m_window", opts.m_window);
    opts.bins_per_2pi = cfg.get_int("poisson", "bins_per_2pi", opts.bins_per_2pi);
    opts.margin_bins = cfg.get_int("poisson", "margin_bins", opts.margin_bins);

    std::ostringstream csv;
    csv << "j,side_a,side_b,rel_deviation\n";
    json rows = json::array();
    double worst = 0.0;
    for (int j : js) {
        PoissonResult res = delta_expansion_poisson_check(K, j, opts);
        csv << j << "," << fmt_g12(res.side_a) << "," << fmt_g12(res.side_b) << ","
            << fmt_g12(res.rel_deviation) << "\n";
        json row;
        row["j"] = j;
        row["side_a"] = res.side_a;
        row["side_b"] = res.side_b;
        row["rel_deviation"] = res.rel_deviation;
        rows.push_back(row);
        worst = std::max(worst, std::abs(res.rel_deviation));
    }
    write_file(out / "poisson.csv", csv.str());

    json data;
    data["filter"] = K.sf().filter.name;
    data["m_window"] = opts.m_window;
    data["bins_per_2pi"] = opts.bins_per_2pi;
    data["margin_bins"] = opts.margin_bins;
    data["results"] = rows;
    data["rel_deviation_max"] = worst;
    summary["data"] = data;

    check_le(checks, "rel_deviation_max", worst,
             cfg.get_double("checks", "rel_dev_max", 2e-2));
}

} // namespace

std::vector<std::string> pipeline_names() {
    return {"info", "project", "converge", "quasi", "qbth3", "density", "delta-poisson"};
}

int run_pipeline(const Config& cfg, const std::string& out_dir) {
    std::string pipe = cfg.require("run", "pipeline");
    {
        auto names = pipeline_names();
        if (std::find(names.begin(), names.end(), pipe) == names.end())
            throw ConfigError("unknown pipeline: " + pipe);
    }
    fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory: " + out_dir);

    json summary;
    summary["schema_version"] = 1;
    summary["pipeline"] = pipe;
    summary["config"] = cfg.origin();

    std::vector<Check> checks;
    bool aborted = false;
    try {
        if (pipe == "info")
            run_info(cfg, out, summary, checks);
        else if (pipe == "project")
            run_project(cfg, out, summary, checks);
        else if (pipe == "converge")
            run_converge(cfg, out, summary, checks);
        else if (pipe == "quasi")
            run_quasi(cfg, out, summary, checks);
        else if (pipe == "qbth3")
            run_qbth3(cfg, out, summary, checks);
        else if (pipe == "density")
            run_density(cfg, out, summary, checks);
        else if (pipe == "delta-poisson")
            run_poisson(cfg, out, summary, checks);
    } catch (const ConfigError&) {
        throw; // configuration problems surface before result files exist
    } catch (const HypothesisFailed& e) {
        aborted = true;
        summary["failing_clause"] = e.clause();
        summary["error"] = e.what();
    } catch (const Error& e) {
        aborted = true;
        summary["error"] = e.what();
    }

    json jchecks = json::array();
    bool all_pass = !aborted;
    for (const auto& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["value"] = c.value;
        jc["op"] = c.op;
        jc["threshold"] = c.threshold;
        jc["pass"] = c.pass;
        jchecks.push_back(jc);
        all_pass = all_pass && c.pass;
    }
    summary["checks"] = jchecks;
    summary["verdict"] = all_pass ? "pass" : "fail";

    write_file(out / "summary.json", summary.dump(2) + "\n");
    return all_pass ? 0 : 2;
}

int run_list(const std::string& what) {
    bool all = what == "all" || what.empty();
    bool known = all;
    if (all || what == "pipelines") {
        known = true;
        std::cout << "pipelines:\n";
        for (const auto& p : pipeline_names()) std::cout << "  " << p << "\n";
    }
    if (all || what == "filters") {
        known = true;
        std::cout << "filters:\n";
        for (const auto& f : builtin_filter_names()) std::cout << "  " << f << "\n";
        std::cout << "  file:<path>\n";
    }
    if (all || what == "distributions") {
        known = true;
        std::cout << "distributions:\n";
        for (const auto& d : catalog_distributions()) std::cout << "  " << d << "\n";
    }
    if (all || what == "batteries") {
        known = true;
        std::cout << "batteries:\n";
        for (const auto& b : catalog_batteries()) std::cout << "  " << b << "\n";
    }
    if (!known)
        throw ConfigError("unknown catalog '" + what +
                          "': expected pipelines|filters|distributions|batteries|all");
    return 0;
}

} // namespace mrdist
