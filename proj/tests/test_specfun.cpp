#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fibercav/constants.hpp"
#include "fibercav/specfun.hpp"

using namespace fibercav;

namespace {

double re_val(CylKind k, int m, double x) { return eval_cyl(k, m, x).value.real(); }
double re_der(CylKind k, int m, double x) { return eval_cyl(k, m, x).derivative.real(); }

}  // namespace

TEST_CASE("J/Y Wronskian equals 2/(pi x)") {
    // J_m Y'_m - J'_m Y_m = 2/(pi x) holds exactly; the numerical defect
    // measures the backend plus the derivative recurrences together
    for (int m : {0, 1, 5, 20, 64}) {
        for (double x : {0.3, 1.0, 7.5, 40.0, 90.0}) {
            const double w = re_val(CylKind::J, m, x) * re_der(CylKind::Y, m, x) -
                             re_der(CylKind::J, m, x) * re_val(CylKind::Y, m, x);
            const double expected = 2.0 / (pi * x);
            CHECK(std::abs(w - expected) <= 1e-10 * std::abs(expected));
        }
    }
}

TEST_CASE("I/K Wronskian equals -1/x") {
    for (int m : {0, 1, 5, 20}) {
        for (double x : {0.5, 3.0, 18.0}) {
            const double w = re_val(CylKind::I, m, x) * re_der(CylKind::K, m, x) -
                             re_der(CylKind::I, m, x) * re_val(CylKind::K, m, x);
            const double expected = -1.0 / x;
            CHECK(std::abs(w - expected) <= 1e-10 * std::abs(expected));
        }
    }
}

TEST_CASE("order-zero derivatives reduce to the first order") {
    for (double x : {0.4, 2.0, 11.0}) {
        CHECK(re_der(CylKind::J, 0, x) == doctest::Approx(-re_val(CylKind::J, 1, x)).epsilon(1e-14));
        CHECK(re_der(CylKind::Y, 0, x) == doctest::Approx(-re_val(CylKind::Y, 1, x)).epsilon(1e-14));
        CHECK(re_der(CylKind::I, 0, x) == doctest::Approx(re_val(CylKind::I, 1, x)).epsilon(1e-14));
        CHECK(re_der(CylKind::K, 0, x) == doctest::Approx(-re_val(CylKind::K, 1, x)).epsilon(1e-14));
    }
}

TEST_CASE("Hankel kinds combine J and Y") {
    const CylValue j = eval_cyl(CylKind::J, 3, 5.5);
    const CylValue y = eval_cyl(CylKind::Y, 3, 5.5);
    const CylValue h1 = eval_cyl(CylKind::H1, 3, 5.5);
    const CylValue h2 = eval_cyl(CylKind::H2, 3, 5.5);
    CHECK(h1.value.real() == j.value.real());
    CHECK(h1.value.imag() == y.value.real());
    CHECK(h2.value.imag() == -y.value.real());
    CHECK(h1.derivative.imag() == y.derivative.real());
}

TEST_CASE("domain and order guards") {
    CHECK_THROWS_AS(eval_cyl(CylKind::J, 1, 0.0), std::domain_error);
    CHECK_THROWS_AS(eval_cyl(CylKind::J, 1, -2.0), std::domain_error);
    CHECK_THROWS_AS(eval_cyl(CylKind::K, 1, std::nan("")), std::domain_error);
    CHECK_THROWS_AS(eval_cyl(CylKind::J, -1, 1.0), std::out_of_range);
    CHECK_THROWS_AS(eval_cyl(CylKind::J, 129, 1.0), std::out_of_range);
    CHECK_THROWS_AS(eval_jy_ld(129, 1.0L), std::out_of_range);
    CHECK_THROWS_AS(eval_jy_ld(0, -1.0L), std::domain_error);
}

TEST_CASE("extended-precision J/Y agrees with the double path") {
    for (int m : {0, 1, 7}) {
        for (double x : {0.2, 4.0, 33.0}) {
            const CylJYLd ld = eval_jy_ld(m, static_cast<long double>(x));
            CHECK(static_cast<double>(ld.j) ==
                  doctest::Approx(re_val(CylKind::J, m, x)).epsilon(1e-13));
            CHECK(static_cast<double>(ld.y) ==
                  doctest::Approx(re_val(CylKind::Y, m, x)).epsilon(1e-13));
            CHECK(static_cast<double>(ld.jp) ==
                  doctest::Approx(re_der(CylKind::J, m, x)).epsilon(1e-13));
        }
    }
}

TEST_CASE("extended-precision Wronskian sits below the double noise floor") {
    for (int m : {1, 10, 40}) {
        for (long double x : {0.7L, 6.0L, 25.0L}) {
            const CylJYLd p = eval_jy_ld(m, x);
            const long double w = p.j * p.yp - p.jp * p.y;
            const long double expected = 2.0L / (static_cast<long double>(pi) * x);
            CHECK(static_cast<double>(std::abs(w - expected) / expected) <= 1e-13);
        }
    }
}
