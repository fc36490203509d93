#pragma once

#include <complex>
#include <utility>

namespace fibercav {

struct FiberSpec {
    double a_nm;  // core radius
    double n1;    // core index
    double n2;    // clad index (vacuum = 1)
};

// Throws ConfigError when a <= 0 or the index ordering n1 > n2 >= 1 fails.
void validate(const FiberSpec& fiber);

// Everything the fundamental-mode eigenproblem produces at one frequency.
// beta, h, q_out are in rad/m; norm_C (1/m) scales the profile triples so the
// cross-section energy integral is 1.
struct GuidedModeSolution {
    double omega;
    double beta;
    double h;
    double q_out;
    double s;
    double norm_C;
    double v_g;
};

struct EVec {
    std::complex<double> e_r;
    std::complex<double> e_phi;
    std::complex<double> e_z;
};

// Solves the fundamental-mode dispersion relation at the given wavelength.
// The bracket scan walks 512 points across the guided band and keeps the
// rightmost sign change whose bisected root actually satisfies the equation
// (residual < 1e-10); sign flips at Bessel poles fail that test and are
// skipped. Throws SolverError when no such root exists.
GuidedModeSolution solve_fundamental(const FiberSpec& fiber, double lambda_nm);

// Normalized electric profile at radius r_nm for propagation direction
// f = +-1 and polarization rotation l = +-1.
EVec guided_profile(const GuidedModeSolution& mode, const FiberSpec& fiber, int f, int l,
                    double r_nm);

// d(omega)/d(beta) by centered difference with relative frequency step 1e-6.
double group_velocity(const FiberSpec& fiber, double lambda_nm);

// (A_eff in um^2, r_eff in nm). The ratio of integrals is independent of the
// profile normalization.
std::pair<double, double> effective_area(const GuidedModeSolution& mode, const FiberSpec& fiber);

}  // namespace fibercav
