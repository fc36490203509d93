#pragma once

#include <complex>

#include "fibercav/emission_rates.hpp"
#include "fibercav/fiber_modes.hpp"

namespace fibercav {

// A section of nanofiber of length L_m enclosed by two Bragg mirrors that
// reflect only the guided mode.  R_mag is the magnitude of the amplitude
// reflection coefficient of one mirror, phi_R its phase.  alpha_per_cm is
// the intensity absorption coefficient of the guide material; it matters
// only for cavities long enough that the accumulated loss per crossing is
// non-negligible.
struct CavitySpec {
    double L_m = 0.2;
    double R_mag = 0.0;
    double phi_R = 0.0;
    double alpha_per_cm = 0.0;
};

// Throws ConfigError when L <= 0, R_mag is outside [0, 1), or the loss
// coefficient is negative.
void validate(const CavitySpec& cavity);

// summary of the weak-coupling (rate-equation) picture at one atom position
struct CavityReport {
    double Phi0 = 0.0;          // round-one phase at the atomic frequency, radians
    double G0 = 0.0;            // resonant enhancement/inhibition factor
    double gamma_cavgyd = 0.0;  // guided emission rate with mirrors, units of gamma_0
    double Gamma_total = 0.0;   // gamma_cavgyd + gamma_rad, units of gamma_0
    double eta = 0.0;           // channeling efficiency gamma_cavgyd / Gamma_total
    double finesse = 0.0;       // pi |R| / (1 - |R|^2)
};

// Phase accumulated by the parallel-to-dipole field component over one cavity
// crossing plus one reflection, evaluated at angular frequency omega.  The
// dispersion of beta is linearized around the mode's solution frequency.
// Absorption adds a positive imaginary part alpha*L/2 (amplitude loss per
// crossing); with alpha_per_cm == 0 the result is purely real.
std::complex<double> phase_per_crossing(const GuidedModeSolution& mode,
                                        const CavitySpec& cavity, int q,
                                        double omega);

// Closed-form enhancement/inhibition factor for guided emission at phase Phi
// and atom position beta*z along the axis.  R_mag in [0, 1).
double impact_factor(double Phi, double R_mag, double beta_z);

// Truncated multiple-reflection expansion of the impact factor, keeping
// reflection orders up to |R|^(2*n_terms+1).  Converges to impact_factor as
// n_terms grows; exposed so the expansion itself can be validated.
double impact_series(double Phi, double R_mag, double beta_z, int n_terms);

// Rate-equation summary for an atom at the given position: resonant phase,
// impact factor, modified guided rate, total rate, and channeling efficiency.
// rates must come from rate_report() for the same fiber/atom pair.
CavityReport overdamped_report(const GuidedModeSolution& mode,
                               const AtomSpec& atom, const CavitySpec& cavity,
                               const RateReport& rates);

// Smallest adjustment of the cavity length such that the round-one phase at
// the atomic frequency becomes an integer multiple of pi with the requested
// parity (even = antinode of the parallel-to-dipole component at the center,
// odd = node).  Returns the adjusted length in meters.
enum class TuneParity { even, odd };
double tune_length(const GuidedModeSolution& mode, const CavitySpec& cavity,
                   int q, TuneParity parity);

}  // namespace fibercav
