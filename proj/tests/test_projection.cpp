#include <doctest.h>

#include "mrdist/catalog.hpp"
#include "mrdist/errors.hpp"
#include "mrdist/kernel.hpp"
#include "mrdist/projection.hpp"
#include "mrdist/scaling.hpp"

#include <cmath>
#include <memory>

using namespace mrdist;
using doctest::Approx;

namespace {
ReproducingKernel make_kernel(const std::string& name, int J = 10) {
    return ReproducingKernel(
        std::make_shared<ScalingFunction>(cascade_build(builtin_filter(name), J)));
}
} // namespace

TEST_CASE("box projections average over unit cells") {
    ReproducingKernel K = make_kernel("haar");
    // [DERIVED] for the box kernel (q_0 f)(x) = integral_m^{m+1} f on the
    // cell of x; with f = 2 + cos y this is 2 + sin(1) on [0,1).  The
    // tabulated ramp at the cell edge costs ~2e-4.
    double v = project_at(make_distribution("cos2p"), K, 0.0, 0.0, 0.5).real();
    CHECK(v == Approx(2.0 + std::sin(1.0)).epsilon(2e-3));
    // [DERIVED] the step function averages to 1 on [0,1).
    double h = project_at(make_distribution("heaviside"), K, 0.0, 0.0, 0.5).real();
    CHECK(h == Approx(1.0).epsilon(2e-3));
    // [DERIVED] the point mass reproduces the kernel column exactly:
    // (q_0 delta)(x) = q0(x, 0) = 1 on [0,1).
    CHECK(project_at(make_distribution("delta"), K, 0.0, 0.0, 0.3).real() ==
          Approx(1.0).epsilon(1e-9));
    // [DERIVED] at scale 2: (q_2 delta)(x) = 4 q0(4x, 0) = 4 for x in
    // [0, 1/4).
    CHECK(project_at(make_distribution("delta"), K, 2.0, 0.0, 0.1).real() ==
          Approx(4.0).epsilon(1e-9));
}

TEST_CASE("the two projection routes agree") {
    ReproducingKernel K = make_kernel("d6");
    GeneralizedFunction f = make_distribution("abs_pow(0.5)");
    // [DERIVED] lattice quadrature vs the rescaled-pairing route; measured
    // relative agreement 2e-7.
    double va = project_at(f, K, 3.0, 0.0, 0.2, ProjectPath::aligned).real();
    double vr = project_at(f, K, 3.0, 0.0, 0.2, ProjectPath::rescaled).real();
    CHECK(va == Approx(vr).epsilon(1e-5));
}

TEST_CASE("expansion sequences record the per-scale values") {
    ReproducingKernel K = make_kernel("haar");
    GeneralizedFunction f = make_distribution("cos2p");
    std::vector<double> lambdas = {2.0, 3.0, 4.0};
    ProjectionSequence seq = expansion_sequence(f, K, 0.3, 0.0, lambdas);
    REQUIRE(seq.values.size() == 3);
    REQUIRE(seq.abs_delta.size() == 3);
    CHECK(seq.abs_delta[0] == 0.0);
    // [TRIVIAL] wiring: entries match individual projections and deltas.
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(seq.values[i].real() ==
              Approx(project_at(f, K, lambdas[i], 0.0, 0.3).real()).epsilon(1e-12));
    CHECK(seq.abs_delta[1] == Approx(std::abs(seq.values[1] - seq.values[0])).epsilon(1e-12));
}

TEST_CASE("projections are idempotent and nested") {
    ReproducingKernel K = make_kernel("haar");
    GeneralizedFunction f = make_distribution("cos2p");
    // [DERIVED] reprojecting the sampled projection changes nothing beyond
    // table-edge effects; measured 2.3e-3 at scale 2.
    CHECK(idempotence_check(f, K, 2.0, {0.3}) <= 1e-2);
    // [DERIVED] coarse-after-fine equals coarse; measured 4.2e-3.
    CHECK(idempotence_check(f, K, 3.0, {0.3}, 1.0) <= 2e-2);
}

TEST_CASE("derivative terms require kernel regularity") {
    // [TRIVIAL] the box kernel has no derivative table.
    ReproducingKernel Kh = make_kernel("haar");
    CHECK_THROWS_AS(project_at(make_distribution("delta_prime"), Kh, 0.0, 0.0, 0.3),
                    OrderTooHigh);
    // [DERIVED] with a differentiable kernel the derivative atom integrates
    // by parts onto the kernel slice: (q_0 delta')(x) = -d/dy q0(x, y)|_0.
    ReproducingKernel K8 = make_kernel("d8");
    double v = project_at(make_distribution("delta_prime"), K8, 0.0, 0.0, 0.9).real();
    CHECK(v == Approx(-K8.q0_deriv(0.9, 0.0, 0, 1)).epsilon(1e-9));
}

TEST_CASE("frequency-side identity for the delta comb") {
    ReproducingKernel Kh = make_kernel("haar");
    PoissonResult ph = delta_expansion_poisson_check(Kh, 0);
    // [DERIVED] the lattice side is sum_m phi(m)^2 = 1 exactly for the box.
    CHECK(ph.side_a == Approx(1.0).epsilon(1e-12));
    // [DERIVED] frozen deviation of the truncated frequency-side integral
    // under the default window/binning.
    CHECK(ph.rel_deviation == Approx(0.0127833825735).epsilon(1e-6));

    ReproducingKernel K4 = make_kernel("d4");
    PoissonResult p0 = delta_expansion_poisson_check(K4, 0);
    PoissonResult p1 = delta_expansion_poisson_check(K4, 1);
    // [DERIVED] frozen d4 deviation; the smoother spectrum shrinks the
    // truncation error by a factor ~20.
    CHECK(p0.rel_deviation == Approx(0.000592000839966).epsilon(1e-6));
    // [DERIVED] both sides scale by 2^j, so the relative deviation is
    // independent of j.
    CHECK(p1.rel_deviation == Approx(p0.rel_deviation).epsilon(1e-12));
    CHECK(p1.side_a == Approx(2.0 * p0.side_a).epsilon(1e-12));
}
