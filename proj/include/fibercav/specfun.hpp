#pragma once

#include <complex>

namespace fibercav {

enum class CylKind { J, Y, I, K, H1, H2 };

// Function value and first derivative with respect to the argument.
// J/Y/I/K are real-valued; the imaginary parts are zero for them.
// H1 = J + iY, H2 = J - iY.
struct CylValue {
    std::complex<double> value;
    std::complex<double> derivative;
};

// Cylinder functions of integer order m in [0, 128] at x > 0.
// Derivatives come from the two-term recurrences, e.g. J'_m = (J_{m-1} - J_{m+1})/2,
// so they inherit the backend's accuracy instead of a finite-difference error.
// Throws std::domain_error for x <= 0 or non-finite x,
// std::out_of_range for an order outside [0, 128].
// Negative orders are the caller's job (J_{-m} = (-1)^m J_m and friends).
CylValue eval_cyl(CylKind kind, int order, double x);

// Long-double J and Y pair used by the radiation-mode assembly, where the
// outside-field synthesis cancels catastrophically near the band edges and
// the extra mantissa bits push the noise floor down by ~7 decades.
struct CylJYLd {
    long double j;
    long double jp;
    long double y;
    long double yp;
};

CylJYLd eval_jy_ld(int order, long double x);

}  // namespace fibercav
