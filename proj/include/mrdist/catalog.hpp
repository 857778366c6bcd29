#pragma once

#include "mrdist/asymptotics.hpp"
#include "mrdist/genfun.hpp"
#include "mrdist/growth.hpp"

#include <string>
#include <vector>

namespace mrdist {

// Named smooth test functions: "gauss", "xgauss", "bump", "bump13",
// "bump(center,radius)", "rational(k)".
TestFunction make_test_function(const std::string& spec);

// Named batteries; "default4" = {gauss, xgauss, bump, bump13}.
std::vector<TestFunction> make_battery(const std::string& spec);

// Named generalized functions; specs may carry parameters in parentheses,
// e.g. "abs_pow(0.5)", "delta(0.25)", "qdelta(d4)".
GeneralizedFunction make_distribution(const std::string& spec);

// Parse "1" / "const" or "logpow(beta)".
SlowlyVarying parse_slowly_varying(const std::string& spec);

std::vector<std::string> catalog_distributions();
std::vector<std::string> catalog_batteries();

} // namespace mrdist
