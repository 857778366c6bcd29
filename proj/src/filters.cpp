#include "mrdist/filters.hpp"

#include "mrdist/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace mrdist {

double FilterBank::max_invariant_violation() const {
    if (h.empty()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    double s = 0.0;
    for (double c : h) s += c;
    worst = std::abs(s - std::sqrt(2.0));
    std::size_t n = h.size();
    for (std::size_t m = 0; 2 * m < n; ++m) {
        double dot = 0.0;
        for (std::size_t k = 0; k + 2 * m < n; ++k) dot += h[k] * h[k + 2 * m];
        double target = (m == 0) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(dot - target));
    }
    return worst;
}

FilterBank builtin_filter(const std::string& name) {
    FilterBank fb;
    fb.name = name;
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    if (name == "haar") {
        fb.h = {1.0 / s2, 1.0 / s2};
    } else if (name == "d4") {
        fb.h = {(1.0 + s3) / (4.0 * s2), (3.0 + s3) / (4.0 * s2),
                (3.0 - s3) / (4.0 * s2), (1.0 - s3) / (4.0 * s2)};
    } else if (name == "d6") {
        fb.h = {0.33267055295008262,   0.80689150931109258,
                0.45987750211849157,   -0.13501102001025459,
                -0.085441273882026662, 0.035226291885709537};
    } else if (name == "d8") {
        fb.h = {0.23037781330889650,   0.71484657055291565,
                0.63088076792985891,   -0.027983769416859854,
                -0.18703481171909308,  0.030841381835560764,
                0.032883011666885200,  -0.010597401785069032};
    } else {
        throw ConfigError("unknown filter name: " + name);
    }
    return fb;
}

std::vector<std::string> builtin_filter_names() { return {"haar", "d4", "d6", "d8"}; }

FilterBank load_filter_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open filter file: " + path);
    FilterBank fb;
    std::string line;
    bool have_name = false;
    while (std::getline(in, line)) {
        // trim whitespace
        std::size_t b = line.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r\n");
        std::string tok = line.substr(b, e - b + 1);
        if (tok.empty() || tok[0] == '#') continue;
        if (!have_name) {
            fb.name = tok;
            have_name = true;
            continue;
        }
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ConfigError("filter file " + path + ": bad coefficient line '" + tok + "'");
        fb.h.push_back(v);
    }
    if (!have_name || fb.h.size() < 2)
        throw ConfigError("filter file " + path + ": need a name line and at least two coefficients");
    return fb;
}

FilterBank resolve_filter(const std::string& spec) {
    if (spec.rfind("file:", 0) == 0) return load_filter_file(spec.substr(5));
    return builtin_filter(spec);
}

} // namespace mrdist
