#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include <string>

namespace machin {

/// 50 significant decimal digits.
using Real = boost::multiprecision::cpp_bin_float_50;

inline Real pi_real() { return boost::math::constants::pi<Real>(); }

inline Real to_real(const mpz_class& n) { return Real(n.get_str()); }

/// Fixed notation with `decimals` digits after the point, locale independent.
inline std::string to_fixed(const Real& v, int decimals) {
  return v.str(decimals, std::ios_base::fixed);
}

/// Scientific notation with `significant` digits.
inline std::string to_sci(const Real& v, int significant) {
  return v.str(significant, std::ios_base::scientific);
}

}  // namespace machin
