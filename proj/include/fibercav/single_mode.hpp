#pragma once

#include <complex>

#include "fibercav/cavity_response.hpp"
#include "fibercav/decay_engine.hpp"
#include "fibercav/emission_rates.hpp"
#include "fibercav/fiber_modes.hpp"

namespace fibercav {

enum class Regime { strong_coupling, overdamped_cavity, free_decay, intermediate };

const char* regime_name(Regime r);

// Classification together with the ratios it was based on, so callers can see
// how decisively a regime was selected.
struct RegimeReport {
    Regime regime = Regime::intermediate;
    double ratio_strong = 0.0;      // 2 Omega / max(kappa, gamma)
    double ratio_overdamped = 0.0;  // kappa / max(2 Omega, gamma)
    double ratio_free = 0.0;        // gamma / max(2 Omega, kappa)
};

// dominance threshold: a regime is assigned when its rate exceeds both
// competitors by this factor
RegimeReport classify_regime(double Omega, double kappa, double gamma,
                             double threshold = 10.0);

// Parameters of the cavity mode nearest the atomic line, in units of gamma_0
// (times gamma_0 for rates; Delta included).  m_index is the mode number,
// Lambda the damping discriminant of the resonant solution.
struct SingleModeReport {
    long m_index = 0;
    double Delta = 0.0;
    double kappa = 0.0;
    double Omega = 0.0;
    double gamma = 0.0;
    std::complex<double> Lambda{0.0, 0.0};
    double finesse = 0.0;  // pi / (2 |ln R|)
    RegimeReport regime;
};

SingleModeReport single_mode_params(const GuidedModeSolution& mode,
                                    const AtomSpec& atom,
                                    const CavitySpec& cavity,
                                    const RateReport& rates);

// Amplitude of the resonant two-rate solution at time t (units 1/gamma_0),
// starting from 1.  Valid when the mode nearest the line is exactly resonant.
std::complex<double> resonant_amplitude(double Omega, double kappa,
                                        double gamma, double t);

// impact factor in the near-unit-reflectivity limit
struct SingleModeImpact {
    double G0 = 0.0;
    double G_max = 0.0;
    double G_min = 0.0;
};

SingleModeImpact overdamped_impact(double R_mag, double beta0_z, long m_index);

// Critical cavity lengths in meters for an atom tuned so that the
// parallel-to-dipole field has an antinode-like factor cos^2(beta0 z + m pi/2)
// with even m: strong coupling needs L between L1 and L2, the overdamped
// regime needs L well below L1 and L3.  At a node L2 is zero and L1 infinite.
struct CriticalLengths {
    double L1 = 0.0;
    double L2 = 0.0;
    double L3 = 0.0;
};

CriticalLengths critical_lengths(const GuidedModeSolution& mode,
                                 const AtomSpec& atom, const RateReport& rates,
                                 double R_mag);

// Side-by-side check of the reduced description against a full delay trace:
// predicted Rabi period vs the spacing of population minima, the worst
// pointwise population difference, and whether the observed character
// (oscillating or not) matches the classified regime.
struct DdeComparison {
    double period_predicted = 0.0;  // 2 pi / Omega
    double period_measured = 0.0;   // 0 when no oscillations resolved
    double period_rel_error = 0.0;
    double max_population_error = 0.0;
    bool oscillations_resolved = false;
    bool regime_match = false;
};

DdeComparison compare_with_dde(const SingleModeReport& report,
                               const DecayTrace& trace, double osc_floor);

}  // namespace fibercav
