#include "doctest.h"

#include <cmath>
#include <complex>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/fiber_modes.hpp"
#include "fibercav/quadrature.hpp"
#include "fibercav/specfun.hpp"

using namespace fibercav;

namespace {

const FiberSpec kFiber{200.0, 1.45, 1.0};
const double kLambda = 852.0;

// independent residual of the fundamental-mode dispersion relation, written
// directly from the boundary-matched two-sided field ansatz rather than
// through the solver's own helper
double dispersion_residual(const FiberSpec& fiber, double lambda_nm, double beta) {
    const double k = 2.0 * pi / (lambda_nm * 1e-9);
    const double a = fiber.a_nm * 1e-9;
    const double h = std::sqrt(fiber.n1 * fiber.n1 * k * k - beta * beta);
    const double q = std::sqrt(beta * beta - fiber.n2 * fiber.n2 * k * k);
    const CylValue j = eval_cyl(CylKind::J, 1, h * a);
    const CylValue kk = eval_cyl(CylKind::K, 1, q * a);
    const double Jt = j.derivative.real() / (h * a * j.value.real());
    const double Kt = kk.derivative.real() / (q * a * kk.value.real());
    const double n12 = fiber.n2 * fiber.n2 / (fiber.n1 * fiber.n1);
    const double lhs = (Jt + Kt) * (Jt + n12 * Kt);
    const double inv2 = 1.0 / (h * h * a * a) + 1.0 / (q * q * a * a);
    const double rhs = std::pow(beta / (fiber.n1 * k), 2) * inv2 * inv2;
    return (lhs - rhs) / (std::abs(lhs) + std::abs(rhs));
}

}  // namespace

TEST_CASE("fundamental solution matches the frozen reference point") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, kLambda);
    const double k = mode.omega / c_light;
    // frozen from an independently validated solve of the same equation
    CHECK(mode.beta / k == doctest::Approx(1.0678871160905).epsilon(1e-11));
    CHECK(mode.v_g == doctest::Approx(221412314.0).epsilon(1e-8));
    CHECK(mode.omega == doctest::Approx(2.0 * pi * c_light / 852e-9).epsilon(1e-14));
}

TEST_CASE("propagation constant sits strictly inside the guided band") {
    for (double a_nm : {150.0, 200.0, 300.0, 400.0}) {
        const FiberSpec fiber{a_nm, 1.45, 1.0};
        const GuidedModeSolution mode = solve_fundamental(fiber, kLambda);
        const double k = mode.omega / c_light;
        CHECK(mode.beta > fiber.n2 * k);
        CHECK(mode.beta < fiber.n1 * k);
        // transverse wavenumbers are consistent with their defining relations
        CHECK(mode.h == doctest::Approx(std::sqrt(fiber.n1 * fiber.n1 * k * k -
                                                  mode.beta * mode.beta))
                            .epsilon(1e-12));
        CHECK(mode.q_out == doctest::Approx(std::sqrt(mode.beta * mode.beta -
                                                      fiber.n2 * fiber.n2 * k * k))
                                .epsilon(1e-12));
    }
}

TEST_CASE("solved root satisfies an independently written dispersion relation") {
    for (double a_nm : {150.0, 200.0, 350.0}) {
        const FiberSpec fiber{a_nm, 1.45, 1.0};
        const GuidedModeSolution mode = solve_fundamental(fiber, kLambda);
        CHECK(std::abs(dispersion_residual(fiber, kLambda, mode.beta)) <= 1e-10);
    }
}

TEST_CASE("profile normalization integrates to one") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, kLambda);
    const double a = kFiber.a_nm * 1e-9;
    const double r_max = a + 12.0 / mode.q_out;
    auto density = [&](double n_sq) {
        return [&, n_sq](double r) {
            const EVec e = guided_profile(mode, kFiber, 1, 1, r * 1e9);
            const double mag2 =
                std::norm(e.e_r) + std::norm(e.e_phi) + std::norm(e.e_z);
            return n_sq * mag2 * r;
        };
    };
    const double inner =
        integrate_adaptive(density(kFiber.n1 * kFiber.n1), 0.0, a, 1e-9);
    const double outer =
        integrate_adaptive(density(kFiber.n2 * kFiber.n2), a, r_max, 1e-9);
    CHECK(std::abs(2.0 * pi * (inner + outer) - 1.0) <= 1e-6);
}

TEST_CASE("tangential components are continuous across the surface") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, kLambda);
    const double a_nm = kFiber.a_nm;
    const EVec in = guided_profile(mode, kFiber, 1, 1, a_nm * (1.0 - 1e-9));
    const EVec out = guided_profile(mode, kFiber, 1, 1, a_nm * (1.0 + 1e-9));
    CHECK(std::abs(in.e_phi - out.e_phi) <= 1e-8 * std::abs(in.e_phi));
    CHECK(std::abs(in.e_z - out.e_z) <= 1e-8 * std::abs(in.e_z));
    // the normal component jumps by the permittivity ratio
    const double ratio = std::abs(out.e_r) / std::abs(in.e_r);
    CHECK(ratio == doctest::Approx(kFiber.n1 * kFiber.n1 / (kFiber.n2 * kFiber.n2))
                       .epsilon(1e-6));
}

TEST_CASE("effective area and radius match the frozen reference") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, kLambda);
    const auto [A_eff_um2, r_eff_nm] = effective_area(mode, kFiber);
    CHECK(A_eff_um2 == doctest::Approx(0.652889615).epsilon(1e-7));
    CHECK(r_eff_nm == doctest::Approx(455.874126).epsilon(1e-7));
    CHECK(r_eff_nm == doctest::Approx(std::sqrt(A_eff_um2 * 1e6 / pi)).epsilon(1e-12));
}

TEST_CASE("group velocity stays inside the physical window") {
    for (double a_nm : {120.0, 200.0, 400.0}) {
        const FiberSpec fiber{a_nm, 1.45, 1.0};
        const double vg = group_velocity(fiber, kLambda);
        CHECK(vg > 0.0);
        CHECK(vg < c_light);
    }
}

TEST_CASE("spec validation rejects nonsensical fibers") {
    CHECK_THROWS_AS(validate(FiberSpec{0.0, 1.45, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(FiberSpec{-5.0, 1.45, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(FiberSpec{200.0, 1.0, 1.0}), ConfigError);
    CHECK_THROWS_AS(validate(FiberSpec{200.0, 1.45, 1.6}), ConfigError);
    CHECK_THROWS_AS(validate(FiberSpec{200.0, 1.45, 0.5}), ConfigError);
    CHECK_THROWS_AS(solve_fundamental(FiberSpec{200.0, 1.0, 1.45}, kLambda), ConfigError);
}

TEST_CASE("profile direction and rotation arguments are checked") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, kLambda);
    CHECK_THROWS_AS(guided_profile(mode, kFiber, 2, 1, 100.0), ConfigError);
    CHECK_THROWS_AS(guided_profile(mode, kFiber, 1, 0, 100.0), ConfigError);
}
