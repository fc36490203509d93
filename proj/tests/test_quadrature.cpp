#include "doctest.h"

#include <cmath>
#include <vector>

#include "fibercav/errors.hpp"
#include "fibercav/quadrature.hpp"

using namespace fibercav;

TEST_CASE("rule nodes are symmetric, distinct, and weights sum to 2") {
    for (int n : {2, 8, 64, 512}) {
        const GaussRule& rule = gauss_legendre(n);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            wsum += rule.weights[i];
            CHECK(rule.weights[i] > 0.0);
            CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[n - 1 - i]).epsilon(1e-14));
        }
        for (int i = 1; i < n; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        CHECK(rule.nodes.front() > -1.0);
        CHECK(rule.nodes.back() < 1.0);
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("n points integrate degree 2n-1 exactly but not 2n") {
    // single 8-point panel: x^15 on [0,1] is exact, x^16 is not
    auto p15 = [](double x) { return std::pow(x, 15); };
    auto p16 = [](double x) { return std::pow(x, 16); };
    const double i15 = integrate_panels(p15, 0.0, 1.0, 1, 8);
    const double i16 = integrate_panels(p16, 0.0, 1.0, 1, 8);
    CHECK(std::abs(i15 - 1.0 / 16.0) <= 1e-15);
    CHECK(std::abs(i16 - 1.0 / 17.0) > 1e-10);
}

TEST_CASE("adaptive integration converges on smooth integrands") {
    auto f = [](double x) { return std::exp(x); };
    const double exact = std::exp(2.0) - 1.0;
    CHECK(integrate_adaptive(f, 0.0, 2.0, 1e-12) == doctest::Approx(exact).epsilon(1e-13));

    auto osc = [](double x) { return std::cos(40.0 * x); };
    const double exact_osc = std::sin(40.0 * 3.0) / 40.0;
    CHECK(integrate_adaptive(osc, 0.0, 3.0, 1e-10, 0.0, 16) ==
          doctest::Approx(exact_osc).epsilon(1e-9));
}

TEST_CASE("absolute floor accepts integrals below it immediately") {
    auto tiny = [](double x) { return 1e-18 * x; };
    // rel_tol alone could never stabilize the noise-level value; abs_tol does
    const double v = integrate_adaptive(tiny, 0.0, 1.0, 1e-14, 1e-12);
    CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("panel cap failure throws instead of returning junk") {
    // needle three decades narrower than the panel budget can resolve
    auto needle = [](double x) {
        const double d = x - 0.318309886;
        return 1.0 / (1e-14 + d * d);
    };
    CHECK_THROWS_AS(integrate_adaptive(needle, 0.0, 1.0, 1e-10, 0.0, 4, 8), SolverError);
}

TEST_CASE("panel doubling refines toward the exact value") {
    auto f = [](double x) { return 1.0 / (1.0 + x * x); };
    const double exact = std::atan(5.0);
    double prev_err = 1e9;
    for (int panels : {1, 2, 4, 8}) {
        const double err = std::abs(integrate_panels(f, 0.0, 5.0, panels, 4) - exact);
        CHECK(err <= prev_err * 1.0001);
        prev_err = err;
    }
}

TEST_CASE("order bounds are enforced") {
    CHECK_THROWS_AS(gauss_legendre(1), SolverError);
    CHECK_THROWS_AS(gauss_legendre(513), SolverError);
}
