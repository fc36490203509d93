#include "fibercav/emission_rates.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/quadrature.hpp"
#include "fibercav/radiation_modes.hpp"

namespace fibercav {

namespace {

using cld = std::complex<long double>;

// |e_q|^2 for one radiation mode at the atom radius, phi = 0. The spherical
// contraction cancels the leading order of e_r against e_phi, so it stays in
// long double until the squared magnitude.
long double mode_intensity(const FiberSpec& fiber, double omega, double beta, int m, int l,
                           double r_nm, int q_dip) {
    const RadModeCoeffs coeffs = rad_coeffs(fiber, omega, beta, m, l);
    const EVecLd e = radiation_profile_ld(fiber, coeffs, omega, beta, m, r_nm);
    const long double rt2 = std::sqrt(2.0L);
    cld eq;
    if (q_dip == 0) {
        eq = e.e_z;
    } else if (q_dip == 1) {
        eq = -(e.e_r + cld(0.0L, 1.0L) * e.e_phi) / rt2;
    } else {
        eq = (e.e_r - cld(0.0L, 1.0L) * e.e_phi) / rt2;
    }
    return std::norm(eq);
}

// One azimuthal shell: the band integral of the (+-m, +-l) mode intensities.
// Near the band edges the integrand at the atom decays as (q*r)^(2m-2) while
// the coefficient assembly loses precision, so shells with m >= 5 clip an
// edge collar q*r < 0.1*(m-4); the clipped true mass is orders of magnitude
// below the shell convergence floor. When the collar covers the whole band
// (vanishing radius) the shell's true value is negligible and it reports
// zero.
double shell_integral(const FiberSpec& fiber, double omega, double r_nm, int q_dip, int m,
                      double rel_tol, double abs_floor) {
    const double k = omega / c_light;
    const double r_atom = std::max(r_nm, fiber.a_nm) * 1e-9;
    double blim = k * fiber.n2 * (1.0 - 1e-9);
    if (m >= 5) {
        const double q_guard = 0.1 * (m - 4) / r_atom;
        if (q_guard >= k * fiber.n2) return 0.0;
        const double b_guard = std::sqrt(k * k * fiber.n2 * fiber.n2 - q_guard * q_guard);
        blim = std::min(blim, b_guard);
    }
    auto f = [&](double beta) {
        long double sum = 0.0L;
        if (m == 0) {
            sum += mode_intensity(fiber, omega, beta, 0, 1, r_nm, q_dip);
            sum += mode_intensity(fiber, omega, beta, 0, -1, r_nm, q_dip);
        } else {
            for (int mm : {m, -m})
                for (int l : {1, -1}) sum += mode_intensity(fiber, omega, beta, mm, l, r_nm, q_dip);
        }
        return static_cast<double>(sum);
    };
    return integrate_adaptive(f, -blim, blim, rel_tol, abs_floor, 64, 1024);
}

// rate prefactor shared by gamma_rad and radiation_shell
double rad_prefactor(const AtomSpec& atom) {
    const double omega0 = 2.0 * pi * c_light / (atom.lambda0_nm * 1e-9);
    return 3.0 * pi * std::pow(c_light, 3) / (2.0 * omega0 * omega0);
}

}  // namespace

void validate(const AtomSpec& atom) {
    if (atom.q != -1 && atom.q != 0 && atom.q != 1)
        throw ConfigError("atom.q must be -1, 0, or +1");
    if (!(atom.lambda0_nm > 0.0)) throw ConfigError("atom.lambda0_nm must be > 0");
    if (!(atom.r_nm >= 0.0)) throw ConfigError("atom.r_nm must be >= 0");
}

double gamma_guided(const FiberSpec& fiber, const GuidedModeSolution& mode,
                    const AtomSpec& atom) {
    validate(atom);
    const EVec e = guided_profile(mode, fiber, 1, 1, atom.r_nm);
    const double er = std::abs(e.e_r);
    const double ep = std::abs(e.e_phi);
    const double ez = std::abs(e.e_z);
    // spherical dipole components: e_0 = e_z, |e_{+-1}| = (|e_r| -+ |e_phi|)/sqrt(2)
    double comp;
    if (atom.q == 0) {
        comp = 2.0 * ez * ez;
    } else {
        const double plus = (er - ep) / std::sqrt(2.0);
        const double minus = (er + ep) / std::sqrt(2.0);
        comp = plus * plus + minus * minus;
    }
    return 3.0 * pi * std::pow(c_light, 3) / (mode.omega * mode.omega * mode.v_g) * comp;
}

double gamma_rad(const FiberSpec& fiber, const AtomSpec& atom) {
    double total = 0.0;
    int small_run = 0;
    // shells carry mass up to m ~ k0 * r, where the Bessel turning point
    // passes the atom; beyond that they fall off exponentially
    const double k0r =
        2.0 * pi * fiber.n2 * atom.r_nm / atom.lambda0_nm;
    const int m_cap = 40 + static_cast<int>(std::ceil(k0r));
    for (int m = 0; m <= m_cap; ++m) {
        const double floor_val = (total > 0.0) ? 1e-10 * total : 0.0;
        const double sh = radiation_shell(fiber, atom, m, 1e-6, floor_val);
        total += sh;
        if (m >= 1) {
            small_run = (sh < 1e-8 * total) ? small_run + 1 : 0;
            if (small_run >= 2) return total;
        }
    }
    throw SolverError("gamma_rad: azimuthal shell sum did not converge");
}

double radiation_shell(const FiberSpec& fiber, const AtomSpec& atom, int m,
                       double rel_tol, double abs_floor) {
    validate(fiber);
    validate(atom);
    if (atom.r_nm < fiber.a_nm)
        throw ConfigError("radiation_shell: atom must satisfy r >= a");
    if (m < 0) throw ConfigError("radiation_shell: azimuthal order must be >= 0");
    if (!(rel_tol > 0.0)) throw ConfigError("radiation_shell: rel_tol must be > 0");
    const double omega0 = 2.0 * pi * c_light / (atom.lambda0_nm * 1e-9);
    const double pref = rad_prefactor(atom);
    return pref * shell_integral(fiber, omega0, atom.r_nm, atom.q, m, rel_tol,
                                 abs_floor / pref);
}

RateReport rate_report(const FiberSpec& fiber, const GuidedModeSolution& mode,
                       const AtomSpec& atom) {
    RateReport rep;
    rep.gamma_gyd = gamma_guided(fiber, mode, atom);
    rep.gamma_rad = gamma_rad(fiber, atom);
    rep.gamma_total_free = rep.gamma_gyd + rep.gamma_rad;
    return rep;
}

double gamma_nonrad_ratio(const FiberSpec& fiber, const AtomSpec& atom, double eps_real,
                          double eps_imag) {
    validate(fiber);
    validate(atom);
    if (atom.r_nm < fiber.a_nm)
        throw ConfigError("gamma_nonrad_ratio: atom must sit outside the fiber");
    if (atom.r_nm == fiber.a_nm) return std::numeric_limits<double>::infinity();
    const double k0 = 2.0 * pi / (atom.lambda0_nm * 1e-9);
    const double d = (atom.r_nm - fiber.a_nm) * 1e-9;
    const std::complex<double> eps(eps_real, eps_imag);
    return eps_imag / (2.0 * std::norm(eps + 1.0) * std::pow(k0, 3) * std::pow(d, 3));
}

}  // namespace fibercav
