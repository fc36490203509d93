#include "fibercav/cavity_response.hpp"

#include <cmath>
#include <complex>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"

namespace fibercav {

void validate(const CavitySpec& cavity) {
    if (!(cavity.L_m > 0.0))
        throw ConfigError("cavity length must be positive");
    if (!(cavity.R_mag >= 0.0) || cavity.R_mag >= 1.0)
        throw ConfigError("mirror reflection magnitude must lie in [0, 1)");
    if (!std::isfinite(cavity.phi_R))
        throw ConfigError("mirror phase must be finite");
    if (!(cavity.alpha_per_cm >= 0.0))
        throw ConfigError("absorption coefficient must be non-negative");
}

std::complex<double> phase_per_crossing(const GuidedModeSolution& mode,
                                        const CavitySpec& cavity, int q,
                                        double omega) {
    validate(cavity);
    if (q != -1 && q != 0 && q != 1)
        throw ConfigError("dipole polarization index must be -1, 0, or +1");
    // beta(omega) linearized around the solved frequency; group velocity
    // dispersion is neglected
    const double beta = mode.beta + (omega - mode.omega) / mode.v_g;
    const double alpha_m = cavity.alpha_per_cm * 100.0;  // 1/cm -> 1/m
    const double real_part =
        beta * cavity.L_m + cavity.phi_R + (1 + q) * pi;
    // intensity loss e^{-alpha L} per crossing means amplitude loss
    // e^{-alpha L / 2}, carried as a positive imaginary phase part
    return {real_part, 0.5 * alpha_m * cavity.L_m};
}

double impact_factor(double Phi, double R_mag, double beta_z) {
    if (!(R_mag >= 0.0) || R_mag >= 1.0)
        throw ConfigError("mirror reflection magnitude must lie in [0, 1)");
    const double R2 = R_mag * R_mag;
    const double s = std::sin(Phi);
    const double num =
        1.0 + R2 + 2.0 * R_mag * std::cos(Phi) * std::cos(2.0 * beta_z);
    const double den = 1.0 - R2 + 4.0 * R2 / (1.0 - R2) * s * s;
    return num / den;
}

double impact_series(double Phi, double R_mag, double beta_z, int n_terms) {
    if (!(R_mag >= 0.0) || R_mag >= 1.0)
        throw ConfigError("mirror reflection magnitude must lie in [0, 1)");
    if (n_terms < 0) throw ConfigError("series order must be non-negative");
    // even reflection orders: 2 sum_n |R|^{2n} cos(2 n Phi) / (1 + delta_n0)
    double g = 1.0;  // n = 0 term
    double R2n = 1.0;
    const double R2 = R_mag * R_mag;
    for (int n = 1; n <= n_terms; ++n) {
        R2n *= R2;
        g += 2.0 * R2n * std::cos(2.0 * n * Phi);
    }
    // odd reflection orders carry the position-dependent phase 2 beta z
    double R_odd = R_mag;
    for (int n = 0; n <= n_terms; ++n) {
        const double arg = (2.0 * n + 1.0) * Phi;
        g += R_odd *
             (std::cos(arg + 2.0 * beta_z) + std::cos(arg - 2.0 * beta_z));
        R_odd *= R2;
    }
    return g;
}

CavityReport overdamped_report(const GuidedModeSolution& mode,
                               const AtomSpec& atom, const CavitySpec& cavity,
                               const RateReport& rates) {
    validate(cavity);
    const std::complex<double> Phi =
        phase_per_crossing(mode, cavity, atom.q, mode.omega);
    const double beta_z = mode.beta * atom.z_nm * 1e-9;

    CavityReport rep;
    rep.Phi0 = Phi.real();
    rep.G0 = impact_factor(rep.Phi0, cavity.R_mag, beta_z);
    rep.gamma_cavgyd = rates.gamma_gyd * rep.G0;
    rep.Gamma_total = rep.gamma_cavgyd + rates.gamma_rad;
    rep.eta = rep.gamma_cavgyd / rep.Gamma_total;
    rep.finesse = pi * cavity.R_mag /
                  (1.0 - cavity.R_mag * cavity.R_mag);
    return rep;
}

double tune_length(const GuidedModeSolution& mode, const CavitySpec& cavity,
                   int q, TuneParity parity) {
    const double Phi0 =
        phase_per_crossing(mode, cavity, q, mode.omega).real();
    // candidate multiples of pi bracketing the current phase, stepped by 2 so
    // the parity of m is preserved
    const double m_real = Phi0 / pi;
    long m = std::lround(m_real);
    const bool want_even = (parity == TuneParity::even);
    if ((m % 2 == 0) != want_even) {
        // move to the nearer neighbor of the right parity
        m += (m_real > static_cast<double>(m)) ? 1 : -1;
    }
    double best = 0.0;
    double best_dist = -1.0;
    for (long cand = m - 2; cand <= m + 2; cand += 2) {
        const double L = cavity.L_m +
                         (cand * pi - Phi0) / mode.beta;
        if (L <= 0.0) continue;
        const double dist = std::abs(L - cavity.L_m);
        if (best_dist < 0.0 || dist < best_dist) {
            best = L;
            best_dist = dist;
        }
    }
    if (best_dist < 0.0)
        throw SolverError("no positive cavity length satisfies the parity request");
    return best;
}

}  // namespace fibercav
