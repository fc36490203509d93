#pragma once

namespace fibercav {

// SI values. eps0 is derived from c and mu0 so that c^2*eps0*mu0 == 1 holds
// to machine precision instead of merely to the precision of a rounded table
// entry.
inline constexpr double c_light = 299792458.0;          // m/s
inline constexpr double mu0 = 1.25663706212e-6;          // N/A^2
inline constexpr double eps0 = 1.0 / (mu0 * c_light * c_light);
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace fibercav
