#include "mrdist/config.hpp"
#include "mrdist/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mrdist {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(const std::string& raw, const std::string& where) {
    const std::string v = trim(raw);
    if (v.empty()) throw ConfigError("empty numeric value for " + where);
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("malformed numeric value '" + v + "' for " + where);
    return d;
}

} // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header '" + t + "'");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        cfg.entries_.push_back({section, key, value});
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

bool Config::has(const std::string& section, const std::string& key) const {
    for (const auto& e : entries_)
        if (e.section == section && e.key == key) return true;
    return false;
}

bool Config::has_section(const std::string& section) const {
    for (const auto& e : entries_)
        if (e.section == section) return true;
    return false;
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->section == section && it->key == key) return it->value;
    return fallback;
}

std::string Config::require(const std::string& section, const std::string& key) const {
    if (!has(section, key))
        throw ConfigError(origin_ + ": missing required key [" + section + "] " + key);
    return get(section, key, "");
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    if (!has(section, key)) return fallback;
    return parse_double(get(section, key, ""), "[" + section + "] " + key);
}

double Config::require_double(const std::string& section, const std::string& key) const {
    return parse_double(require(section, key), "[" + section + "] " + key);
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) const {
    if (!has(section, key)) return fallback;
    double d = parse_double(get(section, key, ""), "[" + section + "] " + key);
    double r = std::round(d);
    if (std::abs(d - r) > 1e-9)
        throw ConfigError("[" + section + "] " + key + " must be an integer, got " +
                          get(section, key, ""));
    return static_cast<int>(r);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = lower(get(section, key, ""));
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError("[" + section + "] " + key + ": expected boolean, got '" + v + "'");
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key) const {
    std::vector<double> out;
    std::string v = get(section, key, "");
    if (v.empty()) return out;
    std::istringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(item, "[" + section + "] " + key));
    return out;
}

std::vector<double> Config::grid(const std::string& section) const {
    if (has(section, "grid")) {
        auto g = get_list(section, "grid");
        if (g.empty()) throw ConfigError("[" + section + "] grid: empty list");
        return g;
    }
    if (!has(section, "from") || !has(section, "to"))
        throw ConfigError("[" + section + "]: need either 'grid' or 'from'/'to'");
    double from = require_double(section, "from");
    double to = require_double(section, "to");
    if (has(section, "step")) {
        double step = require_double(section, "step");
        if (step == 0.0) throw ConfigError("[" + section + "] step must be nonzero");
        std::vector<double> out;
        const double dir = step > 0 ? 1.0 : -1.0;
        // Tolerant endpoint: include `to` when it lands within half a step.
        for (double v = from; dir * (v - to) <= 1e-9 * std::abs(step); v += step)
            out.push_back(v);
        if (out.empty()) throw ConfigError("[" + section + "]: empty grid from/to/step");
        return out;
    }
    int points = get_int(section, "points", 0);
    if (points < 2) throw ConfigError("[" + section + "]: need 'step' or 'points' >= 2");
    std::string spacing = lower(get(section, "spacing", "linear"));
    std::vector<double> out(static_cast<size_t>(points));
    if (spacing == "log") {
        if (from <= 0 || to <= 0)
            throw ConfigError("[" + section + "]: log spacing requires positive endpoints");
        double la = std::log(from), lb = std::log(to);
        for (int i = 0; i < points; ++i)
            out[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (points - 1));
    } else if (spacing == "linear") {
        for (int i = 0; i < points; ++i)
            out[static_cast<size_t>(i)] = from + (to - from) * i / (points - 1);
    } else {
        throw ConfigError("[" + section + "] spacing: expected 'linear' or 'log'");
    }
    return out;
}

} // namespace mrdist
