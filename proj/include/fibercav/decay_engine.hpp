#pragma once

#include <complex>
#include <vector>

#include "fibercav/cavity_response.hpp"
#include "fibercav/emission_rates.hpp"
#include "fibercav/fiber_modes.hpp"

namespace fibercav {

// Inputs for the multiple-reflection decay equation, already reduced to
// dimensionless form: rates are in units of the free-space rate gamma_0 and
// delays in units of 1/gamma_0.  Phi0 and beta0_z acquire a positive
// imaginary part when guide absorption is enabled; that is the only place
// absorption enters.
struct DelayParams {
    double gamma_gyd = 0.0;
    double gamma_rad = 0.0;
    double tau_L = 0.0;     // one cavity crossing
    double tau_plus = 0.0;  // crossing lengthened by the atom's offset
    double tau_minus = 0.0; // crossing shortened by the atom's offset
    double R_mag = 0.0;
    std::complex<double> Phi0{0.0, 0.0};
    std::complex<double> beta0_z{0.0, 0.0};
};

// Throws ConfigError on negative rates, non-positive delays, delays that do
// not satisfy tau_plus + tau_minus == 2 tau_L, R_mag outside [0, 1), or
// imaginary phase parts that would amplify instead of attenuate.
void validate(const DelayParams& params);

// Reduces physical inputs to DelayParams.  atom.gamma0_phys (rad/s) sets the
// time scale and must be positive.  The atom must sit between the mirrors,
// |z| < L/2.
DelayParams make_delay_params(const GuidedModeSolution& mode,
                              const AtomSpec& atom, const CavitySpec& cavity,
                              const RateReport& rates);

// Upper-state amplitude and population on a uniform time grid,
// times in 1/gamma_0
struct DecayTrace {
    std::vector<double> t;
    std::vector<std::complex<double>> amplitude;
    std::vector<double> population;
    double step = 0.0;
};

// Integrates the retarded decay equation from amplitude 1 at t = 0 up to
// t_max.  With h_override <= 0 the step is chosen automatically; either way
// it is snapped so an integer number of steps spans the shortest delay, and
// an explicit step coarser than a quarter of that delay is rejected.  When
// every reflection arrives after t_max the exact exponential is returned
// without integration.
DecayTrace simulate_decay(const DelayParams& params, double t_max,
                          double h_override = 0.0);

// Closed-form amplitude for an atom at the cavity center (tau_plus ==
// tau_minus), summing reflection orders with partition-number coefficients.
// Throws SolverError when more than 48 reflection orders would be needed.
std::complex<double> analytic_center_amplitude(const DelayParams& params,
                                               double t);

// Least-squares exponential rate of the population over [t_lo, t_hi]:
// returns Gamma such that P ~ exp(-Gamma t) best fits the window.
double fit_decay_rate(const DecayTrace& trace, double t_lo, double t_hi);

struct OscillationReport {
    int minima_count = 0;
    double first_minimum_t = 0.0;
    double period = 0.0;  // mean spacing of population minima
    bool resolved = false;
};

// Counts strict local minima of the population above the given floor; the
// trailing part of the trace where the population has fallen below the floor
// is ignored.  resolved is false when fewer than two minima were found or
// the inferred period is too close to the grid spacing to trust.
OscillationReport detect_oscillations(const DecayTrace& trace, double floor);

}  // namespace fibercav
