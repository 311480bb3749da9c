#pragma once

// Fixed-point decimal evaluation of arctan(1/x) and pi from verified relations.

#include <gmpxx.h>

#include <cstddef>
#include <string>

#include "machin/relation.hpp"

namespace machin {

/// mantissa * 10^-scale, within error_ulps units of 10^-scale of the true value.
struct FixedDecimal {
  mpz_class mantissa;
  std::size_t scale = 0;
  mpz_class error_ulps;

  /// "3.1415..." with exactly `scale` digits after the point.
  std::string str() const;
};

/// Number of leading decimals on which a and b agree: the largest d <= scale with
/// |a - b| < 10^-d. Both must share a scale.
std::size_t agreement_digits(const FixedDecimal& a, const FixedDecimal& b);

/// Rounds to fewer digits, adding the rounding error to error_ulps.
FixedDecimal round_to(const FixedDecimal& v, std::size_t digits);

/// arctan(1/x) to `digits` decimals, error at most 1 ulp. Binary-splitting sum
/// of the alternating series. Throws std::invalid_argument for x < 2 or digits = 0.
FixedDecimal arctan_recip(const mpz_class& x, std::size_t digits);

/// pi = (4/r) sum y_i atan(1/x_i). RelationNotVerified unless the relation verifies with r != 0.
FixedDecimal pi_from_relation(const ArctanRelation& rel, std::size_t digits);

/// |sum y_i atan(1/x_i) - r pi/4| < 10^(5 - digits), with pi from Machin's formula
/// (Gauss's when rel is Machin's). Throws std::invalid_argument for digits < 20.
bool numeric_check(const ArctanRelation& rel, std::size_t digits);

/// Digits after the point in blocks of 10, five blocks per line, then an error line.
std::string format_blocks(const FixedDecimal& v);

}  // namespace machin
