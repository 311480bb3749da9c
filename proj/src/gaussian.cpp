#include "machin/gaussian.hpp"

#include <cmath>
#include <stdexcept>

#include "machin/errors.hpp"

namespace machin {

bool GInt::is_unit() const {
  return (abs(re_) == 1 && sgn(im_) == 0) || (sgn(re_) == 0 && abs(im_) == 1);
}

std::string GInt::str() const {
  std::string s = "(" + re_.get_str() + ", " + im_.get_str() + ")";
  return s;
}

mpz_class norm(const GInt& z) { return z.re() * z.re() + z.im() * z.im(); }

GInt pow(GInt base, unsigned long exp) {
  GInt result(1, 0);
  while (exp != 0) {
    if (exp & 1UL) result = result * base;
    exp >>= 1;
    if (exp != 0) base = base * base;
  }
  return result;
}

std::optional<GInt> exact_divide(const GInt& a, const GInt& b) {
  if (b.is_zero()) throw DivisionByZero("exact_divide: divisor is zero");
  const mpz_class n = norm(b);
  const GInt t = a * b.conj();
  if (!mpz_divisible_p(t.re().get_mpz_t(), n.get_mpz_t()) ||
      !mpz_divisible_p(t.im().get_mpz_t(), n.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class re, im;
  mpz_divexact(re.get_mpz_t(), t.re().get_mpz_t(), n.get_mpz_t());
  mpz_divexact(im.get_mpz_t(), t.im().get_mpz_t(), n.get_mpz_t());
  return GInt(std::move(re), std::move(im));
}

namespace {

// round(n/d) for d > 0, halves rounded up.
mpz_class round_div(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_class num = 2 * n + d;
  mpz_class den = 2 * d;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

GInt nearest_quotient(const GInt& a, const GInt& b) {
  if (b.is_zero()) throw DivisionByZero("nearest_quotient: divisor is zero");
  const mpz_class n = norm(b);
  const GInt t = a * b.conj();
  return {round_div(t.re(), n), round_div(t.im(), n)};
}

GInt gcd(GInt a, GInt b) {
  while (!b.is_zero()) {
    GInt r = a - nearest_quotient(a, b) * b;
    a = std::move(b);
    b = std::move(r);
  }
  return first_quadrant(a);
}

GInt first_quadrant(const GInt& z) {
  if (z.is_zero()) return z;
  GInt w = z;
  for (int k = 0; k < 4; ++k) {
    if (sgn(w.re()) > 0 && sgn(w.im()) >= 0) return w;
    w = w.rotate();
  }
  throw std::logic_error("first_quadrant: unreachable");
}

GInt primary_associate(const GInt& z) {
  if (z.is_zero()) throw std::invalid_argument("primary_associate: zero has no primary associate");
  if (abs(z.re()) == abs(z.im())) {
    throw OnDiagonal("primary_associate: " + z.str() + " lies on a diagonal (|re| = |im|)");
  }
  GInt w = z;
  for (int k = 0; k < 4; ++k) {
    if (sgn(w.re()) > 0 && abs(w.im()) < w.re()) return w;
    w = w.rotate();
  }
  throw std::logic_error("primary_associate: unreachable");
}

bool are_associates(const GInt& a, const GInt& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return first_quadrant(a) == first_quadrant(b);
}

std::vector<PrimePower> factor_trial(const mpz_class& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("factor_trial: n must be positive");
  std::vector<PrimePower> out;
  mpz_class rest = n;
  auto take = [&](const mpz_class& p) {
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e != 0) out.push_back({p, e});
  };
  take(2);
  take(3);
  // 6k +- 1 wheel
  for (mpz_class d = 5; d * d <= rest; d += 6) {
    take(d);
    mpz_class d2 = d + 2;
    take(d2);
  }
  if (rest > 1) out.push_back({rest, 1});
  return out;
}

mpz_class sqrt_minus_one(const mpz_class& p) {
  if (p % 4 != 1) throw NotSplittable("sqrt_minus_one: " + p.get_str() + " is not 1 mod 4");
  const mpz_class exponent = (p - 1) / 4;
  const mpz_class minus_one = p - 1;
  for (mpz_class c = 2; c < p; ++c) {
    mpz_class t;
    mpz_powm(t.get_mpz_t(), c.get_mpz_t(), exponent.get_mpz_t(), p.get_mpz_t());
    mpz_class sq = (t * t) % p;
    if (sq == minus_one) {
      mpz_class other = p - t;
      return t < other ? t : other;
    }
  }
  throw NotSplittable("sqrt_minus_one: no root found; " + p.get_str() + " is not prime");
}

namespace {

GInt split_prime(const mpz_class& p) {
  const mpz_class s = sqrt_minus_one(p);
  const GInt g = gcd(GInt(p, 0), GInt(s, 1));
  mpz_class a = abs(g.re());
  mpz_class b = abs(g.im());
  if (a < b) swap(a, b);
  GInt eta(a, b);
  if (norm(eta) != p) throw NotSplittable("split: " + p.get_str() + " is not prime");
  return eta;
}

}  // namespace

GInt split_sum_two_squares(const std::vector<PrimePower>& factorization) {
  if (factorization.empty()) throw NotSplittable("split: modulus must exceed 1");
  GInt eta(1, 0);
  for (const auto& [p, e] : factorization) {
    if (p == 2) throw NotSplittable("split: modulus is even");
    if (p % 4 != 1) throw NotSplittable("split: prime factor " + p.get_str() + " is 3 mod 4");
    eta = eta * pow(split_prime(p), e);
  }
  if (factorization.size() == 1 && factorization.front().e == 1) return eta;
  return primary_associate(eta);
}

GInt split_sum_two_squares(const mpz_class& m) {
  if (m <= 1) throw NotSplittable("split: modulus must exceed 1");
  if (m % 2 == 0) throw NotSplittable("split: " + m.get_str() + " is even");
  return split_sum_two_squares(factor_trial(m));
}

double log_mpz(const mpz_class& n) {
  if (sgn(n) <= 0) throw std::domain_error("log_mpz: argument must be positive");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double height_of_quotient(const mpz_class& x) {
  if (x <= 1) throw DomainError("height_of_quotient: x must exceed 1");
  return 0.5 * log_mpz(x * x + 1);
}

GRational::GRational(const GInt& num, const GInt& den) {
  if (den.is_zero()) throw DivisionByZero("GRational: zero denominator");
  const GInt g = gcd(num, den);
  GInt n = *exact_divide(num, g);
  GInt d = *exact_divide(den, g);
  for (int k = 0; k < 4 && !(sgn(d.re()) > 0 && sgn(d.im()) >= 0); ++k) {
    n = n.rotate();
    d = d.rotate();
  }
  num_ = std::move(n);
  den_ = std::move(d);
}

bool GRational::is_unit() const { return den_ == GInt(1, 0) && num_.is_unit(); }

GRational operator/(const GRational& a, const GRational& b) {
  if (b.num_.is_zero()) throw DivisionByZero("GRational: division by zero");
  return {a.num_ * b.den_, a.den_ * b.num_};
}

GRational pow(const GRational& base, long exp) {
  const unsigned long k = exp < 0 ? static_cast<unsigned long>(-exp) : static_cast<unsigned long>(exp);
  GRational p(pow(base.num(), k), pow(base.den(), k));
  if (exp < 0) return GRational(p.den(), p.num());
  return p;
}

GRational arctan_quotient(const mpz_class& x) { return {GInt(x, 1), GInt(x, -1)}; }

}  // namespace machin
