#pragma once

#include <string>
#include <vector>

namespace mrdist {

// Minimal INI-style configuration: [section] headers, key = value lines,
// comments starting with '#' or ';'.  Keys keep insertion order.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    bool has_section(const std::string& section) const;

    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    std::string require(const std::string& section, const std::string& key) const;

    double get_double(const std::string& section, const std::string& key, double fallback) const;
    double require_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key, int fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& section, const std::string& key) const;

    // Grid from a section: either "grid = v1,v2,..." or "from/to/step"
    // (arithmetic) or "from/to/points" with spacing = linear|log.
    std::vector<double> grid(const std::string& section) const;

    const std::string& origin() const { return origin_; }

private:
    struct Entry {
        std::string section, key, value;
    };
    std::vector<Entry> entries_;
    std::string origin_;
};

} // namespace mrdist
