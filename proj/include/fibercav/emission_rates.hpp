#pragma once

#include "fibercav/fiber_modes.hpp"

namespace fibercav {

struct AtomSpec {
    double r_nm;              // radial position
    double phi = 0.0;         // azimuth (rates are phi-independent)
    double z_nm = 0.0;        // axial position, cavity-centered
    int q = 1;                // dipole spherical index: -1, 0, +1
    double lambda0_nm = 852;  // transition wavelength
    double gamma0_phys = 0.0; // free-space rate in rad/s; 0 means unset
};

void validate(const AtomSpec& atom);

// All rates in units of the free-space rate; the dipole magnitude cancels.
struct RateReport {
    double gamma_gyd;
    double gamma_rad;
    double gamma_total_free;
};

// Emission rate into the guided mode at the atom position; r on the surface
// evaluates the outside (evanescent) field branch.
double gamma_guided(const FiberSpec& fiber, const GuidedModeSolution& mode, const AtomSpec& atom);

// Emission rate into the radiation continuum: sum over azimuthal shells of a
// beta-band integral of the dipole-projected mode intensity. Shells stop when
// two consecutive ones fall below 1e-8 of the running total.
double gamma_rad(const FiberSpec& fiber, const AtomSpec& atom);

// Contribution of the azimuthal order m alone, in units of gamma_0. rel_tol
// controls the band quadrature; abs_floor (same units) lets the caller skip
// resolving shells already known to be negligible. gamma_rad sums these.
double radiation_shell(const FiberSpec& fiber, const AtomSpec& atom, int m,
                       double rel_tol = 1e-6, double abs_floor = 0.0);

RateReport rate_report(const FiberSpec& fiber, const GuidedModeSolution& mode,
                       const AtomSpec& atom);

// Nonradiative (surface-loss) rate over the free-space rate in the
// small-distance limit, for a surface of permittivity eps = eps_real +
// i*eps_imag. Returns +infinity when the atom sits exactly on the surface.
double gamma_nonrad_ratio(const FiberSpec& fiber, const AtomSpec& atom, double eps_real,
                          double eps_imag);

}  // namespace fibercav
