#include "fibercav/radiation_modes.hpp"

#include <cmath>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/specfun.hpp"

namespace fibercav {

namespace {

using cld = std::complex<long double>;

// J and Y at signed integer order: f_{-m} = (-1)^m f_m, same for derivatives.
struct SignedJY {
    long double j, jp, y, yp;
};

SignedJY signed_jy(int m, long double x) {
    const int mm = std::abs(m);
    CylJYLd v = eval_jy_ld(mm, x);
    SignedJY out{v.j, v.jp, v.y, v.yp};
    if (m < 0 && (mm & 1)) {
        out.j = -out.j;
        out.jp = -out.jp;
        out.y = -out.y;
        out.yp = -out.yp;
    }
    return out;
}

struct Assembly {
    cld A, B, C[2], D[2];
    cld V[2], M[2], L[2];
    long double eta;
    long double N;
};

// Full boundary-matching assembly at extended precision. j = 0 is the
// Hankel-1 channel, j = 1 the Hankel-2 channel; conjugated Hankel values
// enter the matching auxiliaries, plain ones the field synthesis.
Assembly assemble(const FiberSpec& fiber, double omega_d, double beta_d, int m, int l) {
    const long double a = static_cast<long double>(fiber.a_nm) * 1e-9L;
    const long double n1 = fiber.n1;
    const long double n2 = fiber.n2;
    const long double omega = omega_d;
    const long double beta = beta_d;
    const long double k = omega / static_cast<long double>(c_light);
    const long double h = std::sqrt(k * k * n1 * n1 - beta * beta);
    const long double q = std::sqrt(k * k * n2 * n2 - beta * beta);
    const long double mu0l = static_cast<long double>(mu0);
    const long double eps0l = static_cast<long double>(eps0);
    const long double cl = static_cast<long double>(c_light);

    const SignedJY ja = signed_jy(m, h * a);
    const SignedJY ha_q = signed_jy(m, q * a);

    Assembly as;
    for (int j = 0; j < 2; ++j) {
        const long double sgn = (j == 0) ? 1.0L : -1.0L;  // H^(1) = J + iY, H^(2) = J - iY
        const cld Hc(ha_q.j, -sgn * ha_q.y);              // conjugated value
        const cld Hcp(ha_q.jp, -sgn * ha_q.yp);
        as.V[j] = static_cast<long double>(m) * k * beta / (a * h * h * q * q) *
                  (n2 * n2 - n1 * n1) * ja.j * Hc;
        as.M[j] = ja.jp / h * Hc - ja.j / q * Hcp;
        as.L[j] = n1 * n1 * ja.jp / h * Hc - n2 * n2 * ja.j / q * Hcp;
    }

    const long double v2 = std::norm(as.V[0]);
    const long double m2 = std::norm(as.M[0]);
    const long double l2 = std::norm(as.L[0]);
    as.eta = eps0l * cl * std::sqrt((n2 * n2 * v2 + l2) / (v2 + n2 * n2 * m2));

    as.A = cld(1.0L, 0.0L);
    as.B = cld(0.0L, (l > 0) ? as.eta : -as.eta) * as.A;

    for (int j = 0; j < 2; ++j) {
        const long double pj = (j == 0) ? -1.0L : 1.0L;   // (-1)^j for j = 1, 2
        const cld ic(0.0L, 1.0L);
        as.C[j] = pj * ic * (static_cast<long double>(pi) * q * q * a / (4.0L * n2 * n2)) *
                  (as.A * as.L[j] + ic * mu0l * cl * as.B * as.V[j]);
        as.D[j] = -pj * ic * (static_cast<long double>(pi) * q * q * a / 4.0L) *
                  (ic * eps0l * cl * as.A * as.V[j] - as.B * as.M[j]);
    }

    // Mode-density normalization; the two Hankel channels must agree on it.
    auto density = [&](int j) {
        return 8.0L * static_cast<long double>(pi) * omega / (q * q) *
               (n2 * n2 * std::norm(as.C[j]) + (mu0l / eps0l) * std::norm(as.D[j]));
    };
    const long double N1 = density(0);
    const long double N2 = density(1);
    if (std::abs(static_cast<double>((N1 - N2) / N1)) > 1e-9)
        throw SolverError("rad_coeffs: Hankel channels disagree on the normalization");

    const long double scale = 1.0L / std::sqrt(N1);
    as.A *= scale;
    as.B *= scale;
    for (int j = 0; j < 2; ++j) {
        as.C[j] *= scale;
        as.D[j] *= scale;
    }
    as.N = density(0);
    return as;
}

std::complex<double> to_d(const cld& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

RadModeCoeffs rad_coeffs(const FiberSpec& fiber, double omega, double beta, int m, int l) {
    validate(fiber);
    if (l != 1 && l != -1) throw ConfigError("rad_coeffs: l must be +1 or -1");
    const double k = omega / c_light;
    if (!(std::abs(beta) < k * fiber.n2))
        throw SolverError("rad_coeffs: beta outside the radiation band");
    const double a = fiber.a_nm * 1e-9;
    const double q = std::sqrt(k * k * fiber.n2 * fiber.n2 - beta * beta);
    if (!(q * a > 1e-6)) throw SolverError("rad_coeffs: too close to the band edge (q*a <= 1e-6)");

    const Assembly as = assemble(fiber, omega, beta, m, l);
    RadModeCoeffs out;
    out.A = to_d(as.A);
    out.B = to_d(as.B);
    out.C1 = to_d(as.C[0]);
    out.C2 = to_d(as.C[1]);
    out.D1 = to_d(as.D[0]);
    out.D2 = to_d(as.D[1]);
    out.eta = static_cast<double>(as.eta);
    out.N = static_cast<double>(as.N);
    out.V1 = to_d(as.V[0]);
    out.V2 = to_d(as.V[1]);
    out.M1 = to_d(as.M[0]);
    out.M2 = to_d(as.M[1]);
    out.L1c = to_d(as.L[0]);
    out.L2c = to_d(as.L[1]);
    out.ld.A = as.A;
    out.ld.B = as.B;
    out.ld.C1 = as.C[0];
    out.ld.C2 = as.C[1];
    out.ld.D1 = as.D[0];
    out.ld.D2 = as.D[1];
    return out;
}

EVecLd radiation_profile_ld(const FiberSpec& fiber, const RadModeCoeffs& coeffs, double omega,
                            double beta_d, int m, double r_nm) {
    const long double a = static_cast<long double>(fiber.a_nm) * 1e-9L;
    const long double r = static_cast<long double>(r_nm) * 1e-9L;
    if (!(r > 0.0L)) throw ConfigError("radiation_profile: r must be > 0");
    const long double beta = beta_d;
    const long double k = static_cast<long double>(omega) / c_light;
    const long double mu0l = static_cast<long double>(mu0);
    const long double om = omega;
    const cld ml(static_cast<long double>(m), 0.0L);
    const cld ic(0.0L, 1.0L);

    EVecLd e;
    if (r < a) {
        const long double h = std::sqrt(k * k * static_cast<long double>(fiber.n1) *
                                            static_cast<long double>(fiber.n1) -
                                        beta * beta);
        const SignedJY jr = signed_jy(m, h * r);
        const cld A = coeffs.ld.A;
        const cld B = coeffs.ld.B;
        e.e_r = ic / (h * h) * (beta * h * A * jr.jp + ic * ml * (om * mu0l / r) * B * jr.j);
        e.e_phi = ic / (h * h) * (ic * ml * (beta / r) * A * jr.j - h * om * mu0l * B * jr.jp);
        e.e_z = A * jr.j;
    } else {
        const long double q = std::sqrt(k * k * static_cast<long double>(fiber.n2) *
                                            static_cast<long double>(fiber.n2) -
                                        beta * beta);
        const SignedJY hr = signed_jy(m, q * r);
        const cld C[2] = {coeffs.ld.C1, coeffs.ld.C2};
        const cld D[2] = {coeffs.ld.D1, coeffs.ld.D2};
        e.e_r = e.e_phi = e.e_z = cld(0.0L, 0.0L);
        for (int j = 0; j < 2; ++j) {
            const long double sgn = (j == 0) ? 1.0L : -1.0L;
            const cld H(hr.j, sgn * hr.y);
            const cld Hp(hr.jp, sgn * hr.yp);
            e.e_r += ic / (q * q) * (beta * q * C[j] * Hp + ic * ml * (om * mu0l / r) * D[j] * H);
            e.e_phi += ic / (q * q) * (ic * ml * (beta / r) * C[j] * H - q * om * mu0l * D[j] * Hp);
            e.e_z += C[j] * H;
        }
    }
    return e;
}

EVec radiation_profile(const FiberSpec& fiber, const RadModeCoeffs& coeffs, double omega,
                       double beta_d, int m, double r_nm) {
    const EVecLd v = radiation_profile_ld(fiber, coeffs, omega, beta_d, m, r_nm);
    EVec e;
    e.e_r = to_d(v.e_r);
    e.e_phi = to_d(v.e_phi);
    e.e_z = to_d(v.e_z);
    return e;
}

}  // namespace fibercav
