#include <catch2/catch_amalgamated.hpp>

#include "smpath/quadrature.hpp"

#include <cmath>

using namespace smpath;

TEST_CASE("adaptive quadrature on smooth oracles", "[quadrature]") {
    REQUIRE(adaptive_quadrature([](double x) { return std::sin(x); }, 0.0, M_PI) ==
            Catch::Approx(2.0).margin(1e-10));
    REQUIRE(adaptive_quadrature([](double x) { return x * x; }, 0.0, 1.0) ==
            Catch::Approx(1.0 / 3.0).margin(1e-12));
    REQUIRE(adaptive_quadrature([](double x) { return std::exp(x); }, 0.0, 1.0) ==
            Catch::Approx(std::exp(1.0) - 1.0).margin(1e-10));
    // oscillatory
    REQUIRE(adaptive_quadrature([](double x) { return std::sin(37.0 * x); }, 0.0, 2.0 * M_PI) ==
            Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("empty interval integrates to zero", "[quadrature]") {
    REQUIRE(adaptive_quadrature([](double) { return 1e9; }, 0.5, 0.5) == 0.0);
    REQUIRE(singular_weight_quadrature([](double) { return 1e9; }, 0.5, 0.3, 0.3) == 0.0);
}

TEST_CASE("jump discontinuities are resolved adaptively", "[quadrature]") {
    auto step = [](double x) { return (x > 0.0 && x <= 0.5) ? 1.0 : 0.0; };
    quad_config cfg;
    cfg.abs_tol = 1e-9;
    REQUIRE(adaptive_quadrature(step, 0.0, 1.0, cfg) == Catch::Approx(0.5).margin(1e-8));
}

TEST_CASE("singular weight substitution removes the endpoint blow-up", "[quadrature]") {
    // f == 1: the antiderivative x^c/c gives exactly 1/c over (0,1].
    for (double c : {1.0, 0.5, 0.25, 1.0 / 3.0}) {
        REQUIRE(singular_weight_quadrature([](double) { return 1.0; }, c, 0.0, 1.0) ==
                Catch::Approx(1.0 / c).margin(1e-10));
    }
    // f(x) = x, c = 0.5: int x^{0.5} dx = 1/(c+1) = 2/3.
    REQUIRE(singular_weight_quadrature([](double x) { return x; }, 0.5, 0.0, 1.0) ==
            Catch::Approx(2.0 / 3.0).margin(1e-10));
    // c = 1 is a plain integral: length of (0.25, 0.75].
    REQUIRE(singular_weight_quadrature([](double) { return 1.0; }, 1.0, 0.25, 0.75) ==
            Catch::Approx(0.5).margin(1e-12));
    // general monomial against the weight: int_0^1 x^2 x^{c-1} dx = 1/(c+2).
    REQUIRE(singular_weight_quadrature([](double x) { return x * x; }, 0.2, 0.0, 1.0) ==
            Catch::Approx(1.0 / 2.2).margin(1e-10));
}

TEST_CASE("singular weight rejects bad parameters", "[quadrature]") {
    auto one = [](double) { return 1.0; };
    REQUIRE_THROWS_AS(singular_weight_quadrature(one, 0.0, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(singular_weight_quadrature(one, 1.5, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(singular_weight_quadrature(one, 0.5, 0.6, 0.4), std::domain_error);
    REQUIRE_THROWS_AS(singular_weight_quadrature(one, 0.5, 0.0, 1.2), std::domain_error);
}

TEST_CASE("exhausted subdivision budget raises an accuracy error", "[quadrature]") {
    quad_config cfg;
    cfg.abs_tol = 1e-14;
    cfg.max_subdivisions = 16;
    try {
        adaptive_quadrature([](double x) { return std::sin(500.0 * x); }, 0.0, 10.0, cfg);
        FAIL("expected accuracy_error");
    } catch (const accuracy_error& e) {
        REQUIRE(e.achieved > cfg.abs_tol);
    }
}
