#pragma once

#include "mrdist/filters.hpp"

#include <vector>

namespace mrdist {

// A compactly supported scaling function tabulated on the dyadic grid
// i * 2^-J, i = 0 .. (N-1)*2^J, where N is the filter length.  Values are
// exactly zero outside [0, N-1]; evaluation between nodes is linear.
struct ScalingFunction {
    FilterBank filter;
    int dimension = 1;
    int J = 10;
    int regularity = 0;          // highest derivative order with a table
    int iterations_used = 0;
    double last_iter_delta = 0.0; // sup-difference of the final cascade step
    bool deriv_approximate = false; // derivative table from finite differences
    std::vector<double> values;  // length (N-1)*2^J + 1
    std::vector<double> deriv1;  // same layout; empty when regularity == 0

    double step() const;                       // 2^-J
    double support_end() const;                // N - 1
    std::size_t nodes() const { return values.size(); }

    // Linear interpolation of the node table; exactly 0 for x < 0 or
    // x >= N-1.  order selects the derivative table (0 or 1).
    double eval(double x) const;
    double eval_deriv(double x, int order) const; // throws OrderTooHigh
    // Tensor-product evaluation for dimension-2 instances.
    double eval2(double x, double y) const;
};

// Build by cascade iteration from a box start.  Throws InvalidFilter when
// enforce_invariants is set and the filter identities fail; throws
// NonConvergent when the final sup-step exceeds tol_cascade; ConfigError
// for J < 4.
ScalingFunction cascade_build(const FilterBank& filter, int J = 10, int iterations = 60,
                              double tol_cascade = 1e-8, bool enforce_invariants = true);

// One exact two-scale subdivision pass per extra level: node values at
// level J+extra derived from the level-J table with no interpolation.
std::vector<double> refine_table(const std::vector<double>& tab, const FilterBank& filter,
                                 int J_from, int extra);

// Max-norm residual of phi(x) - sqrt(2) sum_k h_k phi(2x - k) on the grid.
double two_scale_residual(const ScalingFunction& sf);

// Max over translates m != 0 of |<phi, phi(.-m)>| and |<phi,phi> - 1|,
// computed on a twice-refined grid (left Riemann sums).
double orthonormality_check(const ScalingFunction& sf);

// Max over one period of |sum_m phi(x - m) - 1| at grid nodes.
double partition_of_unity_deviation(const ScalingFunction& sf);

// Left-Riemann integral of a node table with spacing h.
double table_integral(const std::vector<double>& tab, double h);

// Dimension-2 tensor product of a 1-D instance.
ScalingFunction tensorize(const ScalingFunction& sf);

} // namespace mrdist
