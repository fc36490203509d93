#include "fibercav/fiber_modes.hpp"

#include <cmath>
#include <vector>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/quadrature.hpp"
#include "fibercav/specfun.hpp"

namespace fibercav {

namespace {

double J(int m, double x) { return eval_cyl(CylKind::J, m, x).value.real(); }
double K(int m, double x) { return eval_cyl(CylKind::K, m, x).value.real(); }

// Dispersion-relation residual in dimensionless form. The transcendental
// equation has one true root in the guided band for a single-mode fiber,
// plus spurious sign flips wherever J1(ha) crosses zero; callers separate
// the two by checking the residual magnitude at the bisected point.
double eigen_residual(double beta, double k, double a, double n1, double n2) {
    const double h = std::sqrt(n1 * n1 * k * k - beta * beta);
    const double q = std::sqrt(beta * beta - n2 * n2 * k * k);
    const double ha = h * a;
    const double qa = q * a;
    const CylValue j1 = eval_cyl(CylKind::J, 1, ha);
    const CylValue k1 = eval_cyl(CylKind::K, 1, qa);
    const double k1q = k1.derivative.real() / (qa * k1.value.real());
    const double lhs = J(0, ha) / (ha * j1.value.real());
    const double n1sq = n1 * n1;
    const double n2sq = n2 * n2;
    const double inv_ha2 = 1.0 / (ha * ha);
    const double inv_qa2 = 1.0 / (qa * qa);
    const double under = std::pow((n1sq - n2sq) / (2.0 * n1sq) * k1q, 2) +
                         beta * beta / (n1sq * k * k) * std::pow(inv_qa2 + inv_ha2, 2);
    const double rhs = -(n1sq + n2sq) / (2.0 * n1sq) * k1q + inv_ha2 - std::sqrt(under);
    return lhs - rhs;
}

struct BetaSolution {
    double beta;
    double h;
    double q;
    double s;
};

BetaSolution solve_beta(const FiberSpec& fiber, double k) {
    const double a = fiber.a_nm * 1e-9;
    const double n1 = fiber.n1;
    const double n2 = fiber.n2;
    const double lo = n2 * k * (1.0 + 1e-9);
    const double hi = n1 * k * (1.0 - 1e-9);

    const int scan = 512;
    std::vector<double> bs(scan), fs(scan);
    for (int i = 0; i < scan; ++i) {
        bs[i] = lo + (hi - lo) * i / (scan - 1);
        fs[i] = eigen_residual(bs[i], k, a, n1, n2);
    }

    // Walk brackets from the largest beta downward: the fundamental mode is
    // the root with the largest propagation constant.
    for (int i = scan - 2; i >= 0; --i) {
        if (!std::isfinite(fs[i]) || !std::isfinite(fs[i + 1])) continue;
        if (fs[i] * fs[i + 1] > 0.0) continue;
        double bl = bs[i], bh = bs[i + 1];
        double fl = fs[i];
        while (bh - bl > 1e-13 * k) {
            const double mid = 0.5 * (bl + bh);
            const double fm = eigen_residual(mid, k, a, n1, n2);
            if (fl * fm <= 0.0) {
                bh = mid;
            } else {
                bl = mid;
                fl = fm;
            }
        }
        const double beta = 0.5 * (bl + bh);
        if (std::abs(eigen_residual(beta, k, a, n1, n2)) >= 1e-10) continue;  // pole, not a root

        BetaSolution sol;
        sol.beta = beta;
        sol.h = std::sqrt(n1 * n1 * k * k - beta * beta);
        sol.q = std::sqrt(beta * beta - n2 * n2 * k * k);
        const double ha = sol.h * a;
        const double qa = sol.q * a;
        const CylValue j1 = eval_cyl(CylKind::J, 1, ha);
        const CylValue k1 = eval_cyl(CylKind::K, 1, qa);
        const double j1q = j1.derivative.real() / (ha * j1.value.real());
        const double k1q = k1.derivative.real() / (qa * k1.value.real());
        sol.s = (1.0 / (qa * qa) + 1.0 / (ha * ha)) / (j1q + k1q);
        return sol;
    }
    throw SolverError("solve_fundamental: no guided-mode root in (n2*k, n1*k)");
}

// Profile triples without the normalization amplitude; the i / -l / f phase
// factors are applied by guided_profile.
struct ProfileTriple {
    double rr;
    double rp;
    double rz;
};

ProfileTriple profile_triple(const BetaSolution& sol, double a, double r) {
    ProfileTriple t;
    if (r < a) {
        const double pref = sol.q * K(1, sol.q * a) / (sol.h * J(1, sol.h * a));
        const double j0 = J(0, sol.h * r);
        const double j2 = J(2, sol.h * r);
        t.rr = pref * ((1.0 - sol.s) * j0 - (1.0 + sol.s) * j2);
        t.rp = pref * ((1.0 - sol.s) * j0 + (1.0 + sol.s) * j2);
        t.rz = 2.0 * sol.q * K(1, sol.q * a) / (sol.beta * J(1, sol.h * a)) * J(1, sol.h * r);
    } else {
        const double k0v = K(0, sol.q * r);
        const double k2v = K(2, sol.q * r);
        t.rr = (1.0 - sol.s) * k0v + (1.0 + sol.s) * k2v;
        t.rp = (1.0 - sol.s) * k0v - (1.0 + sol.s) * k2v;
        t.rz = 2.0 * sol.q / sol.beta * K(1, sol.q * r);
    }
    return t;
}

double norm_amplitude(const BetaSolution& sol, const FiberSpec& fiber) {
    const double a = fiber.a_nm * 1e-9;
    auto density = [&](double r) {
        const ProfileTriple t = profile_triple(sol, a, r);
        return (t.rr * t.rr + t.rp * t.rp + t.rz * t.rz) * r;
    };
    // The evanescent tail decays like exp(-2 q r); 12/q covers it to ~1e-10.
    const double r_max = a + 12.0 / sol.q;
    const double inner = integrate_adaptive(density, 0.0, a, 1e-8);
    const double outer = integrate_adaptive(density, a, r_max, 1e-8);
    const double total = 2.0 * pi * (fiber.n1 * fiber.n1 * inner + fiber.n2 * fiber.n2 * outer);
    return 1.0 / std::sqrt(total);
}

}  // namespace

void validate(const FiberSpec& fiber) {
    if (!(fiber.a_nm > 0.0)) throw ConfigError("fiber.radius_nm must be > 0");
    if (!(fiber.n2 >= 1.0)) throw ConfigError("fiber.n2 must be >= 1");
    if (!(fiber.n1 > fiber.n2)) throw ConfigError("fiber.n1 must exceed fiber.n2");
}

GuidedModeSolution solve_fundamental(const FiberSpec& fiber, double lambda_nm) {
    validate(fiber);
    const double lambda = lambda_nm * 1e-9;
    const double k = 2.0 * pi / lambda;
    const BetaSolution sol = solve_beta(fiber, k);

    GuidedModeSolution mode;
    mode.omega = c_light * k;
    mode.beta = sol.beta;
    mode.h = sol.h;
    mode.q_out = sol.q;
    mode.s = sol.s;
    mode.norm_C = norm_amplitude(sol, fiber);
    mode.v_g = group_velocity(fiber, lambda_nm);
    return mode;
}

EVec guided_profile(const GuidedModeSolution& mode, const FiberSpec& fiber, int f, int l,
                    double r_nm) {
    if (!(mode.norm_C > 0.0)) throw SolverError("guided_profile: mode lacks a normalization");
    if (f != 1 && f != -1) throw ConfigError("guided_profile: f must be +1 or -1");
    if (l != 1 && l != -1) throw ConfigError("guided_profile: l must be +1 or -1");
    const double a = fiber.a_nm * 1e-9;
    const double r = r_nm * 1e-9;
    BetaSolution sol{mode.beta, mode.h, mode.q_out, mode.s};
    const ProfileTriple t = profile_triple(sol, a, r);
    EVec e;
    e.e_r = std::complex<double>(0.0, mode.norm_C * t.rr);
    e.e_phi = std::complex<double>(-l * mode.norm_C * t.rp, 0.0);
    e.e_z = std::complex<double>(f * mode.norm_C * t.rz, 0.0);
    return e;
}

double group_velocity(const FiberSpec& fiber, double lambda_nm) {
    validate(fiber);
    const double lambda = lambda_nm * 1e-9;
    const double k = 2.0 * pi / lambda;
    const double delta = 1e-6;
    const double b_hi = solve_beta(fiber, k * (1.0 + delta)).beta;
    const double b_lo = solve_beta(fiber, k * (1.0 - delta)).beta;
    const double vg = 2.0 * delta * k * c_light / (b_hi - b_lo);
    // tight confinement pushes the group index above n1, so the plausibility
    // window is wider than (c/n1, c); n1^2 covers the strongest slow-down
    if (!(vg > c_light / (fiber.n1 * fiber.n1) && vg < c_light))
        throw SolverError("group_velocity: result outside (c/n1^2, c)");
    return vg;
}

std::pair<double, double> effective_area(const GuidedModeSolution& mode, const FiberSpec& fiber) {
    if (!(mode.norm_C > 0.0)) throw SolverError("effective_area: mode lacks a normalization");
    const double a = fiber.a_nm * 1e-9;
    BetaSolution sol{mode.beta, mode.h, mode.q_out, mode.s};
    auto intensity = [&](double r) {
        const ProfileTriple t = profile_triple(sol, a, r);
        return t.rr * t.rr + t.rp * t.rp + t.rz * t.rz;
    };
    const double r_max = a + 12.0 / mode.q_out;
    auto i2 = [&](double r) { return intensity(r) * r; };
    auto i4 = [&](double r) {
        const double v = intensity(r);
        return v * v * r;
    };
    const double m2 = integrate_adaptive(i2, 0.0, a, 1e-8) + integrate_adaptive(i2, a, r_max, 1e-8);
    const double m4 = integrate_adaptive(i4, 0.0, a, 1e-8) + integrate_adaptive(i4, a, r_max, 1e-8);
    const double a_eff = 2.0 * pi * m2 * m2 / m4;  // m^2
    const double r_eff = std::sqrt(a_eff / pi);    // m
    return {a_eff * 1e12, r_eff * 1e9};
}

}  // namespace fibercav
