#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/fiber_modes.hpp"
#include "fibercav/radiation_modes.hpp"

using namespace fibercav;

namespace {

const FiberSpec kFiber{200.0, 1.45, 1.0};
const double kOmega = 2.0 * pi * c_light / 852e-9;

// |e . d|^2 summed over l for a circular dipole of rotation sign sigma, the
// combination the decay integrand uses; rebuilt here to probe its symmetries
// independently
double circular_coupling(double beta, int m, double r_nm, int sigma = 1) {
    long double total = 0.0L;
    for (int l : {-1, 1}) {
        const RadModeCoeffs cf = rad_coeffs(kFiber, kOmega, beta, m, l);
        const EVecLd e = radiation_profile_ld(kFiber, cf, kOmega, beta, m, r_nm);
        const std::complex<long double> rot =
            (e.e_r + std::complex<long double>(0.0L, static_cast<long double>(sigma)) * e.e_phi) /
            std::sqrt(2.0L);
        total += std::norm(rot);
    }
    return static_cast<double>(total);
}

}  // namespace

TEST_CASE("outside coefficients come in conjugate pairs") {
    const double k = kOmega / c_light;
    for (int m : {0, 1, 2, 5}) {
        for (double frac : {0.1, 0.5, 0.9}) {
            const RadModeCoeffs cf = rad_coeffs(kFiber, kOmega, frac * k, m, 1);
            CHECK(std::abs(cf.C2 - std::conj(cf.C1)) <= 1e-9 * (std::abs(cf.C1) + 1e-30));
            CHECK(std::abs(cf.D2 + std::conj(cf.D1)) <= 1e-9 * (std::abs(cf.D1) + 1e-30));
        }
    }
}

TEST_CASE("normalization constant is fixed to one") {
    const double k = kOmega / c_light;
    for (int m : {0, 1, 3}) {
        for (int l : {-1, 1}) {
            const RadModeCoeffs cf = rad_coeffs(kFiber, kOmega, 0.4 * k, m, l);
            CHECK(cf.N == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("requests outside the radiation band are rejected") {
    const double k = kOmega / c_light;
    CHECK_THROWS_AS(rad_coeffs(kFiber, kOmega, k * kFiber.n2, 1, 1), SolverError);
    CHECK_THROWS_AS(rad_coeffs(kFiber, kOmega, 1.2 * k, 1, 1), SolverError);
    CHECK_THROWS_AS(rad_coeffs(kFiber, kOmega, -1.2 * k, 1, 1), SolverError);
    // inside the band but too close to its edge for stable synthesis
    const double q_tiny = 0.5e-6 / (kFiber.a_nm * 1e-9);
    const double beta_edge = std::sqrt(k * k - q_tiny * q_tiny);
    CHECK_THROWS_AS(rad_coeffs(kFiber, kOmega, beta_edge, 1, 1), SolverError);
}

TEST_CASE("tangential continuity holds across the fiber surface") {
    const double k = kOmega / c_light;
    for (int m : {0, 1, 2}) {
        for (double frac : {0.2, 0.7}) {
            const double beta = frac * k;
            const RadModeCoeffs cf = rad_coeffs(kFiber, kOmega, beta, m, 1);
            const EVec in = radiation_profile(kFiber, cf, kOmega, beta, m,
                                              kFiber.a_nm * (1.0 - 1e-9));
            const EVec out = radiation_profile(kFiber, cf, kOmega, beta, m,
                                               kFiber.a_nm * (1.0 + 1e-9));
            const double scale = std::abs(in.e_phi) + std::abs(in.e_z);
            CHECK(std::abs(in.e_phi - out.e_phi) <= 1e-8 * scale);
            CHECK(std::abs(in.e_z - out.e_z) <= 1e-8 * scale);
            // the normal component jumps by the permittivity ratio
            const double ratio = std::abs(out.e_r) / std::abs(in.e_r);
            CHECK(ratio == doctest::Approx(kFiber.n1 * kFiber.n1 /
                                           (kFiber.n2 * kFiber.n2))
                               .epsilon(1e-6));
        }
    }
}

TEST_CASE("double and extended profiles agree away from the band edge") {
    const double k = kOmega / c_light;
    const double beta = 0.5 * k;
    for (int m : {0, 1, 4}) {
        const RadModeCoeffs cf = rad_coeffs(kFiber, kOmega, beta, m, 1);
        for (double r_nm : {120.0, 200.0, 450.0}) {
            const EVec d = radiation_profile(kFiber, cf, kOmega, beta, m, r_nm);
            const EVecLd x = radiation_profile_ld(kFiber, cf, kOmega, beta, m, r_nm);
            const double scale = std::abs(d.e_r) + std::abs(d.e_phi) + std::abs(d.e_z);
            CHECK(std::abs(d.e_r - std::complex<double>(static_cast<double>(x.e_r.real()),
                                                        static_cast<double>(x.e_r.imag()))) <=
                  1e-9 * scale);
            CHECK(std::abs(d.e_z - std::complex<double>(static_cast<double>(x.e_z.real()),
                                                        static_cast<double>(x.e_z.imag()))) <=
                  1e-9 * scale);
        }
    }
}

TEST_CASE("summed circular coupling is even in the axial wavenumber") {
    const double k = kOmega / c_light;
    for (int m : {-2, 0, 1, 3}) {
        for (double frac : {0.15, 0.45, 0.8}) {
            for (double r_nm : {200.0, 320.0}) {
                const double fwd = circular_coupling(frac * k, m, r_nm);
                const double bwd = circular_coupling(-frac * k, m, r_nm);
                CHECK(std::abs(fwd - bwd) <= 1e-9 * (std::abs(fwd) + 1e-30));
            }
        }
    }
}

TEST_CASE("negative orders reproduce the parity-mapped positive orders") {
    const double k = kOmega / c_light;
    const double beta = 0.35 * k;
    for (int m : {1, 2, 3}) {
        // reflecting the azimuth flips both the order and the dipole rotation
        const double pos = circular_coupling(beta, m, 250.0, 1);
        const double neg = circular_coupling(beta, -m, 250.0, -1);
        CHECK(pos == doctest::Approx(neg).epsilon(1e-9));
    }
}
