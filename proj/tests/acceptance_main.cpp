// Acceptance gate: runs every acceptance config through the CLI binary,
// checks exit codes and recorded verdicts, and prints one line per
// criterion.  Criterion 11 re-runs everything and requires byte-identical
// outputs.
#include <json.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outcome {
    int exit_code = -1;
    bool have_summary = false;
    json summary;
};

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

Outcome run_config(const std::string& mrdist, const fs::path& cfg, const fs::path& out_dir) {
    Outcome o;
    std::string cmd = quoted(mrdist) + " run -c " + quoted(cfg.string()) + " -o " +
                      quoted(out_dir.string()) + " > " + quoted((out_dir.string() + ".log")) +
                      " 2>&1";
    fs::create_directories(out_dir.parent_path());
    int st = std::system(cmd.c_str());
    if (st == -1)
        o.exit_code = -1;
    else if (WIFEXITED(st))
        o.exit_code = WEXITSTATUS(st);
    else
        o.exit_code = -2;
    std::ifstream in(out_dir / "summary.json");
    if (in) {
        try {
            in >> o.summary;
            o.have_summary = true;
        } catch (...) {
            o.have_summary = false;
        }
    }
    return o;
}

bool verdict_pass(const Outcome& o) {
    return o.exit_code == 0 && o.have_summary && o.summary.value("verdict", "") == "pass";
}

double jnum(const json& j, const std::vector<std::string>& path, double fallback = 0.0) {
    const json* cur = &j;
    for (const auto& k : path) {
        if (!cur->contains(k)) return fallback;
        cur = &(*cur)[k];
    }
    return cur->is_number() ? cur->get<double>() : fallback;
}

std::map<std::string, std::string> collect_tree(const fs::path& root) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files[fs::relative(e.path(), root).string()] = ss.str();
    }
    return files;
}

struct Gate {
    int total = 0;
    int passed = 0;
    void report(int n, bool ok, const std::string& detail) {
        ++total;
        if (ok) ++passed;
        std::cout << "CRITERION " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << detail
                  << "\n";
    }
};

} // namespace

int main(int argc, char** argv) {
    std::string mrdist, configs_dir, out_root;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string k = argv[i];
        if (k == "--mrdist")
            mrdist = argv[i + 1];
        else if (k == "--configs")
            configs_dir = argv[i + 1];
        else if (k == "--out")
            out_root = argv[i + 1];
    }
    if (mrdist.empty() || configs_dir.empty() || out_root.empty()) {
        std::cerr << "usage: mrdist_acceptance --mrdist <bin> --configs <dir> --out <dir>\n";
        return 1;
    }

    const std::vector<std::string> all_stems = {
        "c01_mra_haar",        "c01_mra_d4",
        "c01_mra_d6",          "c01_mra_d8",
        "c02_polyrep_d4",      "c03_pointvalue_xsininv_d6",
        "c04_density_cos_d6",  "c05_poisson_haar",
        "c05_poisson_d4",      "c05_quasi_qdelta_haar",
        "c05_quasi_qdelta_d4", "c06_quasi_delta",
        "c06_quasi_heaviside", "c06_quasi_sqrt",
        "c07_qbth2_d6",        "c08_qbth3_delta_haar",
        "c08_qbth3_heaviside_d4", "c08_qbth3_sqrt_d6",
        "c09_qbc2_sqrt_d4",    "c09_qbc2_delta",
        "c10_point_balls",     "c10_point_hyperrect"};

    fs::path cfgs(configs_dir), run1 = fs::path(out_root) / "run1",
             run2 = fs::path(out_root) / "run2";
    std::map<std::string, Outcome> res;
    for (const auto& stem : all_stems)
        res[stem] = run_config(mrdist, cfgs / (stem + ".ini"), run1 / stem);

    auto pass_all = [&](const std::vector<std::string>& stems, std::string& why) {
        bool ok = true;
        for (const auto& s : stems)
            if (!verdict_pass(res[s])) {
                ok = false;
                why += (why.empty() ? "" : ", ") + s + " (exit " +
                       std::to_string(res[s].exit_code) + ")";
            }
        return ok;
    };

    Gate gate;
    char buf[256];

    { // 1: MRA validity for every built-in filter
        std::string why;
        bool ok = pass_all({"c01_mra_haar", "c01_mra_d4", "c01_mra_d6", "c01_mra_d8"}, why);
        double worst = 0.0;
        for (const auto& s : {"c01_mra_haar", "c01_mra_d4", "c01_mra_d6", "c01_mra_d8"})
            worst = std::max(worst, jnum(res[s].summary, {"data", "orthonormality"}, 1.0));
        std::snprintf(buf, sizeof buf,
                      "orthonormality/two-scale/partition checks on 4 filters (worst "
                      "orthonormality %.2e)",
                      worst);
        gate.report(1, ok, ok ? buf : "failed: " + why);
    }
    { // 2: polynomial reproduction with degree-limit witness
        const auto& o = res["c02_polyrep_d4"];
        bool ok = verdict_pass(o);
        double max_resid = 0.0;
        if (o.have_summary && o.summary.contains("data") &&
            o.summary["data"].contains("polyrep_residuals"))
            for (const auto& r : o.summary["data"]["polyrep_residuals"])
                max_resid = std::max(max_resid, r.get<double>());
        std::snprintf(buf, sizeof buf,
                      "degrees 0-1 reproduced (max residual %.2e), degree-3 witness %.2f",
                      max_resid, jnum(o.summary, {"data", "polyrep_witness_residual"}));
        gate.report(2, ok, ok ? buf : "polyrep run failed (exit " +
                                          std::to_string(o.exit_code) + ")");
    }
    { // 3: pointwise convergence for the oscillating density
        const auto& o = res["c03_pointvalue_xsininv_d6"];
        bool ok = verdict_pass(o);
        std::snprintf(buf, sizeof buf, "|projection| at top scale %.2e, decreasing over grid",
                      jnum(o.summary, {"data", "final_deviation"}, 1.0));
        gate.report(3, ok, ok ? buf : "convergence run failed (exit " +
                                          std::to_string(o.exit_code) + ")");
    }
    { // 4: convergence to the density value
        const auto& o = res["c04_density_cos_d6"];
        bool ok = verdict_pass(o);
        std::snprintf(buf, sizeof buf, "deviation from density value %.2e",
                      jnum(o.summary, {"data", "final_deviation"}, 1.0));
        gate.report(4, ok, ok ? buf : "density convergence failed (exit " +
                                          std::to_string(o.exit_code) + ")");
    }
    { // 5: frequency-side identity + bounded-projection counterexample
        std::string why;
        bool ok = pass_all({"c05_poisson_haar", "c05_poisson_d4", "c05_quasi_qdelta_haar",
                            "c05_quasi_qdelta_d4"},
                           why);
        std::snprintf(buf, sizeof buf,
                      "poisson rel dev haar %.2e / d4 %.2e; qdelta degree haar %.3f / d4 %.3f",
                      jnum(res["c05_poisson_haar"].summary, {"data", "rel_deviation_max"}, 1.0),
                      jnum(res["c05_poisson_d4"].summary, {"data", "rel_deviation_max"}, 1.0),
                      jnum(res["c05_quasi_qdelta_haar"].summary, {"data", "alpha_hat"}, 9.0),
                      jnum(res["c05_quasi_qdelta_d4"].summary, {"data", "alpha_hat"}, 9.0));
        gate.report(5, ok, ok ? buf : "failed: " + why);
    }
    { // 6: quasiasymptotic degree recovery
        std::string why;
        bool ok = pass_all({"c06_quasi_delta", "c06_quasi_heaviside", "c06_quasi_sqrt"}, why);
        std::snprintf(buf, sizeof buf, "fitted degrees %.3f / %.3f / %.3f for delta, step, sqrt",
                      jnum(res["c06_quasi_delta"].summary, {"data", "alpha_hat"}, 9.0),
                      jnum(res["c06_quasi_heaviside"].summary, {"data", "alpha_hat"}, 9.0),
                      jnum(res["c06_quasi_sqrt"].summary, {"data", "alpha_hat"}, 9.0));
        gate.report(6, ok, ok ? buf : "failed: " + why);
    }
    { // 7: normalized residual decay and limit constant
        const auto& o = res["c07_qbth2_d6"];
        bool ok = verdict_pass(o);
        double cl = jnum(o.summary, {"data", "qbth2", "c_limit"});
        double cq = jnum(o.summary, {"data", "qbth2", "c_quadrature"}, 1.0);
        std::snprintf(buf, sizeof buf,
                      "limit constant %.6f vs kernel moment %.6f, final residual %.2e", cl, cq,
                      jnum(o.summary, {"data", "qbth2", "e_final"}, 1.0));
        gate.report(7, ok, ok ? buf : "scale-normalized comparison failed (exit " +
                                          std::to_string(o.exit_code) + ")");
    }
    { // 8: exchange identity between pairing routes
        std::string why;
        bool ok = pass_all(
            {"c08_qbth3_delta_haar", "c08_qbth3_heaviside_d4", "c08_qbth3_sqrt_d6"}, why);
        double worst = 0.0;
        for (const auto& s :
             {"c08_qbth3_delta_haar", "c08_qbth3_heaviside_d4", "c08_qbth3_sqrt_d6"})
            worst = std::max(worst, jnum(res[s].summary, {"data", "max_rel_dev"}, 1.0));
        std::snprintf(buf, sizeof buf, "three distributions, worst relative deviation %.2e",
                      worst);
        gate.report(8, ok, ok ? buf : "failed: " + why);
    }
    { // 9: alpha-density ratio + hypothesis-failure clause
        const auto& good = res["c09_qbc2_sqrt_d4"];
        const auto& bad = res["c09_qbc2_delta"];
        bool ok_good = verdict_pass(good);
        std::string clause =
            bad.have_summary ? bad.summary.value("failing_clause", "") : "";
        bool ok_bad = bad.exit_code == 2 && clause == "mass_growth_bound" &&
                      bad.have_summary && bad.summary.value("verdict", "") == "fail";
        std::snprintf(buf, sizeof buf,
                      "theta %.5f vs formula %.5f; point mass rejected with clause '%s'",
                      jnum(good.summary, {"data", "theta_hat"}),
                      jnum(good.summary, {"data", "theta_formula"}), clause.c_str());
        gate.report(9, ok_good && ok_bad,
                    ok_good && ok_bad
                        ? buf
                        : std::string("failed: ") +
                              (!ok_good ? "measured-ratio run" : "") +
                              (!ok_good && !ok_bad ? " and " : "") +
                              (!ok_bad ? "failure-clause run (exit " +
                                             std::to_string(bad.exit_code) + ", clause '" +
                                             clause + "')"
                                       : ""));
    }
    { // 10: balls pass, anchored rectangles disperse
        std::string why;
        bool ok = pass_all({"c10_point_balls", "c10_point_hyperrect"}, why);
        std::snprintf(buf, sizeof buf, "ball ratios %.1e, rectangle dispersion %.2f",
                      jnum(res["c10_point_balls"].summary, {"data", "max_abs_ratio"}, 1.0),
                      jnum(res["c10_point_hyperrect"].summary, {"data", "dispersion"}));
        gate.report(10, ok, ok ? buf : "failed: " + why);
    }
    { // 11: determinism -- byte-identical outputs on re-run
        for (const auto& stem : all_stems)
            run_config(mrdist, cfgs / (stem + ".ini"), run2 / stem);
        auto a = collect_tree(run1), b = collect_tree(run2);
        std::size_t differing = 0, missing = 0;
        for (const auto& [rel, content] : a) {
            auto it = b.find(rel);
            if (it == b.end())
                ++missing;
            else if (it->second != content)
                ++differing;
        }
        for (const auto& [rel, content] : b)
            if (!a.count(rel)) ++missing;
        // The per-run .log files live next to the run directories, not in
        // them, so every compared file is a result artifact.
        bool ok = differing == 0 && missing == 0 && !a.empty();
        std::snprintf(buf, sizeof buf, "%zu files byte-identical across re-runs", a.size());
        gate.report(11, ok,
                    ok ? buf
                       : std::to_string(differing) + " files differ, " +
                             std::to_string(missing) + " unmatched");
    }

    std::cout << "ACCEPTANCE: " << gate.passed << "/" << gate.total
              << (gate.passed == gate.total ? " PASS" : " FAIL") << "\n";
    return gate.passed == gate.total ? 0 : 1;
}
