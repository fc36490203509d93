#pragma once

#include <complex>

#include "fibercav/fiber_modes.hpp"

namespace fibercav {

// Coefficient set for one unbound mode (omega, beta, m, l), normalized so
// the mode-density constant N equals 1. The ld mirror repeats the values at
// extended precision: the outside-field synthesis cancels severely near the
// band edges, and rounding the coefficients to double before synthesis would
// reintroduce the noise the extended-precision assembly just removed.
struct RadModeCoeffs {
    std::complex<double> A, B;
    std::complex<double> C1, C2, D1, D2;
    double eta;
    double N;
    std::complex<double> V1, V2, M1, M2, L1c, L2c;
    struct Extended {
        std::complex<long double> A, B, C1, C2, D1, D2;
    } ld;
};

// Builds the coefficients per the boundary-matching relations, any integer m
// (negative orders resolved through the Bessel parity rules), l = +-1.
// Throws SolverError outside the radiation band |beta| < k*n2, or when
// q*a < 1e-6 (too close to the band edge for stable Hankel evaluation).
RadModeCoeffs rad_coeffs(const FiberSpec& fiber, double omega, double beta, int m, int l);

// Electric profile components at radius r_nm, phi = 0 plane.
EVec radiation_profile(const FiberSpec& fiber, const RadModeCoeffs& coeffs, double omega,
                       double beta, int m, double r_nm);

// Extended-precision variant for the rate integrals: the spherical
// contraction downstream cancels the leading order of e_r against e_phi, so
// the components must stay at long-double precision until after that step.
struct EVecLd {
    std::complex<long double> e_r;
    std::complex<long double> e_phi;
    std::complex<long double> e_z;
};

EVecLd radiation_profile_ld(const FiberSpec& fiber, const RadModeCoeffs& coeffs, double omega,
                            double beta, int m, double r_nm);

}  // namespace fibercav
