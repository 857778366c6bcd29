#pragma once

#include "mrdist/growth.hpp"
#include "mrdist/scaling.hpp"

#include <memory>
#include <vector>

namespace mrdist {

// Reproducing kernel of the multiresolution subspace at unit scale:
//   q0(x, y) = sum_m phi(x - m) phi(y - m),
// with dilated/translated versions q_{lambda,z}.  Compactly supported in
// |x - y| and 1-periodic along the diagonal.
class ReproducingKernel {
public:
    explicit ReproducingKernel(std::shared_ptr<const ScalingFunction> sf);

    const ScalingFunction& sf() const { return *sf_; }
    std::shared_ptr<const ScalingFunction> sf_ptr() const { return sf_; }
    int dimension() const { return sf_->dimension; }
    // q0(x, y) == 0 whenever |x - y| >= this.
    double truncation_radius() const { return sf_->support_end(); }

    double q0(double x, double y) const;
    // Mixed partial derivative of order (ax, by); each factor order must be
    // within the scaling function's regularity.
    double q0_deriv(double x, double y, int ax, int by) const;
    // 2^lambda q0(2^lambda x + z, 2^lambda y + z); lambda need not be integer.
    double q_lambda_z(double lambda, double z, double x, double y) const;
    // Tensor-product kernel for dimension-2 instances.
    double q0_2d(double x1, double x2, double y1, double y2) const;

private:
    std::shared_ptr<const ScalingFunction> sf_;
};

// sup over the sample pairs of (1+|x-y|)^l |q0(x,y)| — the polynomial
// off-diagonal bound; exponential=true uses exp(l|x-y|) instead (finite for
// compact kernels on any bounded sample set).
double decay_envelope_bound(const ReproducingKernel& K, bool exponential, int l,
                            const std::vector<std::pair<double, double>>& samples);

// Max over xs of |integral q0(x, y) y^deg dy  -  x^deg|.
double polynomial_reproduction_residual(const ReproducingKernel& K, int degree,
                                        const std::vector<double>& xs);

// The slice t -> q0(w, w + t) at w = 2^lambda x0 + z, wrapped as a
// compactly supported TestFunction (derivatives up to kernel regularity).
TestFunction kernel_slice_testfn(const ReproducingKernel& K, double lambda, double z, double x0);

// integral of |u|^a q0(x0, u) du with grading at u = 0 (a > -1).
double kernel_abs_moment(const ReproducingKernel& K, double a, double x0);

} // namespace mrdist
