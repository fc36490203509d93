#include "fibercav/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <stdexcept>

namespace fibercav {

namespace {

constexpr int kMaxOrder = 128;

void check_args(int order, double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("eval_cyl: argument must be finite and > 0");
    if (order < 0 || order > kMaxOrder)
        throw std::out_of_range("eval_cyl: order must lie in [0, 128]");
}

// value and derivative of one real kind via the neighbor-order recurrences
struct RealPair {
    double v;
    double d;
};

RealPair eval_j(int m, double x) {
    const double jm = boost::math::cyl_bessel_j(m, x);
    const double jp1 = boost::math::cyl_bessel_j(m + 1, x);
    if (m == 0) return {jm, -jp1};
    const double jm1 = boost::math::cyl_bessel_j(m - 1, x);
    return {jm, 0.5 * (jm1 - jp1)};
}

RealPair eval_y(int m, double x) {
    const double ym = boost::math::cyl_neumann(m, x);
    const double yp1 = boost::math::cyl_neumann(m + 1, x);
    if (m == 0) return {ym, -yp1};
    const double ym1 = boost::math::cyl_neumann(m - 1, x);
    return {ym, 0.5 * (ym1 - yp1)};
}

RealPair eval_i(int m, double x) {
    const double im = boost::math::cyl_bessel_i(m, x);
    const double ip1 = boost::math::cyl_bessel_i(m + 1, x);
    if (m == 0) return {im, ip1};
    const double im1 = boost::math::cyl_bessel_i(m - 1, x);
    return {im, 0.5 * (im1 + ip1)};
}

RealPair eval_k(int m, double x) {
    const double km = boost::math::cyl_bessel_k(m, x);
    const double kp1 = boost::math::cyl_bessel_k(m + 1, x);
    if (m == 0) return {km, -kp1};
    const double km1 = boost::math::cyl_bessel_k(m - 1, x);
    return {km, -0.5 * (km1 + kp1)};
}

}  // namespace

CylValue eval_cyl(CylKind kind, int order, double x) {
    check_args(order, x);
    switch (kind) {
        case CylKind::J: {
            const RealPair p = eval_j(order, x);
            return {{p.v, 0.0}, {p.d, 0.0}};
        }
        case CylKind::Y: {
            const RealPair p = eval_y(order, x);
            return {{p.v, 0.0}, {p.d, 0.0}};
        }
        case CylKind::I: {
            const RealPair p = eval_i(order, x);
            return {{p.v, 0.0}, {p.d, 0.0}};
        }
        case CylKind::K: {
            const RealPair p = eval_k(order, x);
            return {{p.v, 0.0}, {p.d, 0.0}};
        }
        case CylKind::H1: {
            const RealPair j = eval_j(order, x);
            const RealPair y = eval_y(order, x);
            return {{j.v, y.v}, {j.d, y.d}};
        }
        case CylKind::H2: {
            const RealPair j = eval_j(order, x);
            const RealPair y = eval_y(order, x);
            return {{j.v, -y.v}, {j.d, -y.d}};
        }
    }
    throw std::domain_error("eval_cyl: unknown kind");
}

CylJYLd eval_jy_ld(int order, long double x) {
    if (!std::isfinite(static_cast<double>(x)) || x <= 0.0L)
        throw std::domain_error("eval_jy_ld: argument must be finite and > 0");
    if (order < 0 || order > kMaxOrder)
        throw std::out_of_range("eval_jy_ld: order must lie in [0, 128]");
    const long double jm = boost::math::cyl_bessel_j(static_cast<long double>(order), x);
    const long double jp1 = boost::math::cyl_bessel_j(static_cast<long double>(order + 1), x);
    const long double ym = boost::math::cyl_neumann(static_cast<long double>(order), x);
    const long double yp1 = boost::math::cyl_neumann(static_cast<long double>(order + 1), x);
    CylJYLd out;
    out.j = jm;
    out.y = ym;
    if (order == 0) {
        out.jp = -jp1;
        out.yp = -yp1;
    } else {
        const long double jm1 = boost::math::cyl_bessel_j(static_cast<long double>(order - 1), x);
        const long double ym1 = boost::math::cyl_neumann(static_cast<long double>(order - 1), x);
        out.jp = 0.5L * (jm1 - jp1);
        out.yp = 0.5L * (ym1 - yp1);
    }
    return out;
}

}  // namespace fibercav
