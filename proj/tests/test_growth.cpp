#include <doctest.h>

#include "mrdist/catalog.hpp"
#include "mrdist/errors.hpp"
#include "mrdist/growth.hpp"

#include <cmath>

using namespace mrdist;
using doctest::Approx;

TEST_CASE("growth weights evaluate and satisfy the axioms") {
    // [TRIVIAL] M(t) = t^p by definition.
    GrowthWeight w2{2.0};
    CHECK(w2.M(0.0) == 0.0);
    CHECK(w2.M(3.0) == Approx(9.0).epsilon(1e-15));
    CHECK(weight_axiom_check(GrowthWeight{0.5}) == 0.0);
    CHECK(weight_axiom_check(GrowthWeight{1.0}) == 0.0);
    CHECK(weight_axiom_check(GrowthWeight{2.0}) == 0.0);
}

TEST_CASE("catalog test functions match their closed forms") {
    TestFunction g = make_test_function("gauss");
    // [TRIVIAL] gauss is exp(-x^2) with analytic derivatives.
    CHECK(g(0.0, 0) == Approx(1.0).epsilon(1e-15));
    CHECK(g(1.0, 0) == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(g(0.5, 1) == Approx(-std::exp(-0.25)).epsilon(1e-15));
    CHECK(g(0.0, 2) == Approx(-2.0).epsilon(1e-15));
    CHECK_THROWS_AS(g(0.0, 3), OrderTooHigh);
    CHECK_THROWS_AS(g(0.0, -1), OrderTooHigh);

    TestFunction b = make_test_function("bump");
    // [DERIVED] bump(x) = exp(-1/(1-x^2)) on (-1,1), zero outside.
    CHECK(b(0.0, 0) == Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(b(1.0, 0) == 0.0);
    CHECK(b(-3.0, 0) == 0.0);
    CHECK(b.decay == DecayClass::compact_support);

    TestFunction b13 = make_test_function("bump13");
    CHECK(b13.center == Approx(2.0));
    CHECK(b13(2.0, 0) == Approx(std::exp(-1.0)).epsilon(1e-15));

    TestFunction r = make_test_function("rational(2)");
    CHECK(r.power == Approx(4.0));
    CHECK(r(1.0, 0) == Approx(0.25).epsilon(1e-15));

    CHECK_THROWS_AS(make_test_function("wiggle"), ConfigError);
    CHECK_THROWS_AS(make_test_function("bump(0,-1)"), ConfigError);
    CHECK(make_battery("default4").size() == 4);
}

TEST_CASE("decay envelopes are verified against samples") {
    CHECK(decay_envelope_ok(make_test_function("gauss")));
    CHECK(decay_envelope_ok(make_test_function("bump")));
    CHECK(decay_envelope_ok(make_test_function("rational(2)")));
    // [DERIVED] a function decaying like (1+|x|)^-1 cannot satisfy a claimed
    // (1+|x|)^-5 envelope.
    TestFunction liar = make_test_function("rational(0.5)");
    liar.power = 5.0;
    CHECK_FALSE(decay_envelope_ok(liar));
}

TEST_CASE("exponentially weighted seminorms") {
    TestFunction g = make_test_function("gauss");
    GrowthWeight w1{1.0};
    // [DERIVED] sup exp(|x|) exp(-x^2) = exp(1/4), attained at |x| = 1/2,
    // which lies on the default sampling grid.
    SeminormReport r0 = nu_seminorm(g, w1, 0, 1);
    CHECK(r0.value == Approx(std::exp(0.25)).epsilon(1e-12));
    CHECK(r0.r == 0);
    CHECK(r0.l == 1);
    // [DERIVED] including two derivatives raises the sup; frozen from an
    // independent evaluation of the analytic derivatives on the grid.
    SeminormReport r2 = nu_seminorm(g, w1, 2, 1);
    CHECK(r2.value == Approx(3.3412785878064).epsilon(1e-9));
    CHECK(r2.value >= r0.value);

    // [TRIVIAL] a rational-decay function cannot carry an exponential
    // weight.
    CHECK_THROWS_AS(nu_seminorm(make_test_function("rational(1.5)"), w1, 0, 1),
                    DivergentSeminorm);
    // [TRIVIAL] seminorm order above max_order is rejected.
    CHECK_THROWS_AS(nu_seminorm(g, w1, 3, 1), OrderTooHigh);
}

TEST_CASE("polynomially weighted seminorms") {
    TestFunction g = make_test_function("gauss");
    // [DERIVED] sup (1+|x|)^2 exp(-x^2) = 1.7868659 at x = (sqrt5-1)/2; the
    // default grid samples just beside the optimum, frozen at 1.78684644.
    SeminormReport r = rho_seminorm(g, 0, 2);
    CHECK(r.value == Approx(1.78684643594885).epsilon(1e-9));
    double xs = (std::sqrt(5.0) - 1.0) / 2.0;
    double true_sup = (1.0 + xs) * (1.0 + xs) * std::exp(-xs * xs);
    CHECK(std::abs(r.value - true_sup) <= 2e-4);

    // [TRIVIAL] the family sweep is the max of the member seminorms.
    std::vector<TestFunction> fam = {make_test_function("gauss"), make_test_function("bump")};
    double sweep = bounded_family_sweep(fam, 0, 2);
    double m0 = rho_seminorm(fam[0], 0, 2).value;
    double m1 = rho_seminorm(fam[1], 0, 2).value;
    CHECK(sweep == Approx(std::max(m0, m1)).epsilon(1e-12));
}
