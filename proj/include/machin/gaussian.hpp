#pragma once

// Exact arithmetic in Z[i].

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace machin {

class GInt {
 public:
  GInt() = default;
  GInt(mpz_class re, mpz_class im) : re_(std::move(re)), im_(std::move(im)) {}
  GInt(long re, long im) : re_(re), im_(im) {}
  explicit GInt(const mpz_class& re) : re_(re), im_(0) {}

  const mpz_class& re() const noexcept { return re_; }
  const mpz_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_unit() const;

  GInt conj() const { return {re_, -im_}; }
  /// Multiply by i.
  GInt rotate() const { return {-im_, re_}; }

  friend GInt operator+(const GInt& a, const GInt& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend GInt operator-(const GInt& a, const GInt& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend GInt operator-(const GInt& a) { return {-a.re_, -a.im_}; }
  friend GInt operator*(const GInt& a, const GInt& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend bool operator==(const GInt& a, const GInt& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  std::string str() const;

 private:
  mpz_class re_ = 0;
  mpz_class im_ = 0;
};

mpz_class norm(const GInt& z);

GInt pow(GInt base, unsigned long exp);

/// q with a = q*b, or nullopt when b does not divide a. Throws DivisionByZero when b = 0.
std::optional<GInt> exact_divide(const GInt& a, const GInt& b);

/// Euclidean division rounding the quotient to the nearest lattice point,
/// so norm(remainder) <= norm(b)/2.
GInt nearest_quotient(const GInt& a, const GInt& b);

/// A greatest common divisor, normalized to re > 0, im >= 0 (zero if both are zero).
GInt gcd(GInt a, GInt b);

/// Canonical associate: re > 0, im >= 0. Zero maps to zero.
GInt first_quadrant(const GInt& z);

/// The associate with -pi/4 < arg < pi/4. Throws OnDiagonal when |re| = |im|
/// and std::invalid_argument for zero.
GInt primary_associate(const GInt& z);

/// True when a = u*b for a unit u.
bool are_associates(const GInt& a, const GInt& b);

struct PrimePower {
  mpz_class p;
  unsigned e = 0;
};

/// Trial-division factorization of n > 0, primes ascending.
std::vector<PrimePower> factor_trial(const mpz_class& n);

/// s with s^2 = -1 (mod p), the smaller of the two roots. p prime, p = 1 (mod 4).
mpz_class sqrt_minus_one(const mpz_class& p);

/// eta with norm(eta) = m. For prime m the result has re > im > 0; for composite m it
/// is the primary associate of the product of the canonical prime splits.
/// Throws NotSplittable if m <= 1, m is even, or a prime factor is 3 mod 4.
GInt split_sum_two_squares(const mpz_class& m);
GInt split_sum_two_squares(const std::vector<PrimePower>& factorization);

/// h((x+i)/(x-i)) = log(x^2+1)/2 for x > 1.
double height_of_quotient(const mpz_class& x);

/// Natural log of a positive big integer without overflow.
double log_mpz(const mpz_class& n);

/// num/den in lowest terms with den normalized by first_quadrant.
class GRational {
 public:
  GRational(const GInt& num, const GInt& den);
  explicit GRational(const GInt& num) : GRational(num, GInt(1, 0)) {}

  const GInt& num() const noexcept { return num_; }
  const GInt& den() const noexcept { return den_; }

  GRational conj() const { return {num_.conj(), den_.conj()}; }
  bool is_unit_modulus() const { return norm(num_) == norm(den_); }
  /// True when the value is 1, -1, i or -i.
  bool is_unit() const;

  friend GRational operator*(const GRational& a, const GRational& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend GRational operator/(const GRational& a, const GRational& b);
  friend bool operator==(const GRational& a, const GRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  GInt num_;
  GInt den_;
};

GRational pow(const GRational& base, long exp);

/// (x+i)/(x-i).
GRational arctan_quotient(const mpz_class& x);

}  // namespace machin
