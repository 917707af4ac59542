#ifndef SUPERATOM_UNITS_HPP
#define SUPERATOM_UNITS_HPP

#include <complex>

// All frequencies and rates are stored internally as angular frequencies
// (rad/s).  Configuration files and emitted data use GHz for frequencies
// and MHz for rates/detunings, i.e. the quantities usually quoted as
// omega/2pi; conversion happens only at the I/O boundary.

namespace superatom {

using cdouble = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr double ghz_to_rad(double f_ghz) { return f_ghz * two_pi * 1e9; }
inline constexpr double mhz_to_rad(double f_mhz) { return f_mhz * two_pi * 1e6; }
inline constexpr double rad_to_ghz(double w) { return w / (two_pi * 1e9); }
inline constexpr double rad_to_mhz(double w) { return w / (two_pi * 1e6); }

inline constexpr double mm_to_m(double x_mm) { return x_mm * 1e-3; }
inline constexpr double m_to_mm(double x_m) { return x_m * 1e3; }

// Light velocity in the coplanar waveguide, m/s.
inline constexpr double default_waveguide_velocity = 1.2e8;

} // namespace superatom

#endif
