#pragma once

#include <stdexcept>
#include <string>

namespace mrdist {

// Base class for every library error.  Catching mrdist::Error catches all
// failures the library can raise deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A malformed request: unknown name, bad grid, invalid option combination.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

// Cascade iteration did not settle below its tolerance.
class NonConvergent : public Error {
public:
    explicit NonConvergent(const std::string& what) : Error(what) {}
};

// A filter violates the required sum / orthogonality identities.
class InvalidFilter : public Error {
public:
    explicit InvalidFilter(const std::string& what) : Error(what) {}
};

// A derivative of higher order than the object supports was requested.
class OrderTooHigh : public Error {
public:
    explicit OrderTooHigh(const std::string& what) : Error(what) {}
};

// A seminorm grew without bound along the sampling grid.
class DivergentSeminorm : public Error {
public:
    explicit DivergentSeminorm(const std::string& what) : Error(what) {}
};

// A pairing was requested between objects with incompatible growth/decay.
class GrowthMismatch : public Error {
public:
    explicit GrowthMismatch(const std::string& what) : Error(what) {}
};

// A scale parameter that must be positive was not.
class EpsilonNonpositive : public Error {
public:
    explicit EpsilonNonpositive(const std::string& what) : Error(what) {}
};

// Too few scales were supplied for a fit to be meaningful.
class InsufficientScales : public Error {
public:
    explicit InsufficientScales(const std::string& what) : Error(what) {}
};

// Test functions disagree about the fitted degree beyond tolerance.
class InconsistentDegree : public Error {
public:
    explicit InconsistentDegree(const std::string& what) : Error(what) {}
};

// Every pairing in a battery vanished; no degree can be fitted.
class AllPairingsVanish : public Error {
public:
    explicit AllPairingsVanish(const std::string& what) : Error(what) {}
};

// A measure that must be nonnegative has negative mass somewhere.
class NegativeMeasure : public Error {
public:
    explicit NegativeMeasure(const std::string& what) : Error(what) {}
};

// A structure-theorem hypothesis failed; carries the failing clause name.
class HypothesisFailed : public Error {
public:
    HypothesisFailed(const std::string& clause, const std::string& what)
        : Error(what), clause_(clause) {}
    const std::string& clause() const { return clause_; }

private:
    std::string clause_;
};

} // namespace mrdist
