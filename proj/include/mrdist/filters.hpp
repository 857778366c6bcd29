#pragma once

#include <string>
#include <vector>

namespace mrdist {

// A finite real two-scale coefficient sequence h_0..h_{N-1}.
struct FilterBank {
    std::string name;
    std::vector<double> h;

    std::size_t size() const { return h.size(); }
    // Right end of the associated scaling-function support [0, N-1].
    double support_end() const { return static_cast<double>(h.size()) - 1.0; }

    // Largest violation among the defining identities:
    //   sum h_k = sqrt(2),  sum h_k h_{k+2m} = delta_{m,0}.
    double max_invariant_violation() const;
};

// Built-in catalog: "haar", "d4", "d6", "d8".
FilterBank builtin_filter(const std::string& name);
std::vector<std::string> builtin_filter_names();

// Text format: first line is the name, then one coefficient per line.
// Blank lines and lines starting with '#' are ignored.
FilterBank load_filter_file(const std::string& path);

// Resolve a config-level spec: a builtin name, or "file:<path>".
FilterBank resolve_filter(const std::string& spec);

} // namespace mrdist
