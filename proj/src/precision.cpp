#include "machin/precision.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

#include "machin/corpus.hpp"
#include "machin/errors.hpp"

namespace machin {

namespace {

mpz_class pow10(std::size_t n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, n);
  return p;
}

mpz_class cdiv(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

mpz_class fdiv(const mpz_class& n, const mpz_class& d) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

// Partial sums of sum_k (-1)^k / ((2k+1) x^(2k+1)) over [n1, n2), kept as
// S = T / (B Q) with P the running sign-and-power product.
struct Split {
  mpz_class P, Q, B, T;
};

Split split(const mpz_class& x, const mpz_class& x2, unsigned long n1, unsigned long n2) {
  if (n2 - n1 == 1) {
    Split s;
    s.P = n1 == 0 ? mpz_class(1) : mpz_class(-1);
    s.Q = n1 == 0 ? x : x2;
    s.B = 2 * n1 + 1;
    s.T = s.P;
    return s;
  }
  const unsigned long mid = n1 + (n2 - n1) / 2;
  Split l = split(x, x2, n1, mid);
  Split r = split(x, x2, mid, n2);
  Split s;
  s.T = r.B * r.Q * l.T + l.B * l.P * r.T;
  s.P = l.P * r.P;
  s.Q = l.Q * r.Q;
  s.B = l.B * r.B;
  return s;
}

// floor(10^W * partial sum), within 1.1 units of 10^-W of arctan(1/x).
mpz_class arctan_scaled(const mpz_class& x, std::size_t W) {
  // the first omitted term 1/((2N+1) x^(2N+1)) must fall below 10^(-W-1)
  const mpz_class limit = pow10(W + 1);
  const double log10x = log_mpz(x) / std::log(10.0);
  unsigned long n = std::max(1UL, static_cast<unsigned long>(static_cast<double>(W + 1) / (2 * log10x)));
  for (;;) {
    mpz_class xp;
    mpz_pow_ui(xp.get_mpz_t(), x.get_mpz_t(), 2 * n + 1);
    if ((2 * n + 1) * xp > limit) break;
    ++n;
  }
  const Split s = split(x, x * x, 0, n);
  return fdiv(s.T * pow10(W), s.B * s.Q);
}

std::size_t decimal_width(const mpz_class& v) {
  std::size_t n = mpz_sizeinbase(v.get_mpz_t(), 10);
  if (n > 1 && v < pow10(n - 1)) --n;
  return n;
}

std::vector<mpz_class> arctan_terms(const ArctanRelation& rel, std::size_t W) {
  std::vector<std::future<mpz_class>> parts;
  for (const auto& t : rel.terms) {
    parts.push_back(std::async(std::launch::async, [x = t.x, W] { return arctan_scaled(x, W); }));
  }
  std::vector<mpz_class> out;
  for (auto& f : parts) out.push_back(f.get());
  return out;
}

mpz_class abs_coefficients(const ArctanRelation& rel) {
  mpz_class s = 0;
  for (const auto& t : rel.terms) s += static_cast<long>(std::llabs(t.y));
  return s;
}

mpz_class weighted_sum(const ArctanRelation& rel, const std::vector<mpz_class>& values) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < values.size(); ++i) s += mpz_class(static_cast<long>(rel.terms[i].y)) * values[i];
  return s;
}

}  // namespace

std::string FixedDecimal::str() const {
  const mpz_class a = abs(mantissa);
  const mpz_class p = pow10(scale);
  const mpz_class ip = fdiv(a, p);
  std::string frac = mpz_class(a - ip * p).get_str();
  frac.insert(0, scale - frac.size(), '0');
  std::string out = (sgn(mantissa) < 0 ? "-" : "") + ip.get_str();
  if (scale > 0) out += "." + frac;
  return out;
}

std::size_t agreement_digits(const FixedDecimal& a, const FixedDecimal& b) {
  if (a.scale != b.scale) throw std::invalid_argument("agreement_digits: scales differ");
  const mpz_class diff = abs(a.mantissa - b.mantissa);
  if (diff == 0) return a.scale;
  const std::size_t n = decimal_width(diff);
  return n >= a.scale ? 0 : a.scale - n;
}

FixedDecimal round_to(const FixedDecimal& v, std::size_t digits) {
  FixedDecimal out;
  out.scale = digits;
  if (digits >= v.scale) {
    const mpz_class p = pow10(digits - v.scale);
    out.mantissa = v.mantissa * p;
    out.error_ulps = v.error_ulps * p;
    return out;
  }
  const mpz_class p = pow10(v.scale - digits);
  const mpz_class half = p / 2;
  out.mantissa = fdiv(v.mantissa + half, p);
  out.error_ulps = cdiv(v.error_ulps + half, p);
  return out;
}

FixedDecimal arctan_recip(const mpz_class& x, std::size_t digits) {
  if (x < 2) throw std::invalid_argument("arctan_recip: x must be at least 2");
  if (digits == 0) throw std::invalid_argument("arctan_recip: digits must be positive");
  constexpr std::size_t kGuard = 10;
  FixedDecimal wide;
  wide.scale = digits + kGuard;
  wide.mantissa = arctan_scaled(x, wide.scale);
  wide.error_ulps = 2;  // 1.1 rounded up
  return round_to(wide, digits);
}

FixedDecimal pi_from_relation(const ArctanRelation& rel, std::size_t digits) {
  if (digits == 0) throw std::invalid_argument("pi_from_relation: digits must be positive");
  if (rel.r == 0) throw RelationNotVerified("pi_from_relation: r = 0 gives no value of pi");
  const VerifyResult v = verify(rel);
  if (!v) throw RelationNotVerified("pi_from_relation: relation does not verify: " + format_relation(rel));

  const mpz_class ysum = abs_coefficients(rel);
  const std::size_t guard = 10 + decimal_width(4 * ysum);
  FixedDecimal wide;
  wide.scale = digits + guard;
  const auto values = arctan_terms(rel, wide.scale);
  const mpz_class r(static_cast<long>(rel.r));
  wide.mantissa = fdiv(4 * weighted_sum(rel, values), r);
  // 1.1 ulp per arctan, scaled by 4|y|/|r|, plus one for the floor
  wide.error_ulps = cdiv(44 * ysum, 10 * abs(r)) + 1;
  return round_to(wide, digits);
}

bool numeric_check(const ArctanRelation& rel, std::size_t digits) {
  if (digits < 20) throw std::invalid_argument("numeric_check: digits must be at least 20");
  check_well_formed(rel);
  const std::size_t W = digits + 10;
  const ArctanRelation& machin = formula("machin");
  const ArctanRelation& other = canonicalize(rel) == canonicalize(machin) ? formula("gauss") : machin;
  const FixedDecimal pi = pi_from_relation(other, W);
  const auto values = arctan_terms(rel, W);
  // compare 4 * sum with r * pi at scale W
  const mpz_class diff = abs(4 * weighted_sum(rel, values) - mpz_class(static_cast<long>(rel.r)) * pi.mantissa);
  return diff < 4 * pow10(W - digits + 5);
}

std::string format_blocks(const FixedDecimal& v) {
  const std::string s = v.str();
  const auto dot = s.find('.');
  std::string out = s.substr(0, dot == std::string::npos ? s.size() : dot + 1) + "\n";
  if (dot != std::string::npos) {
    const std::string frac = s.substr(dot + 1);
    for (std::size_t i = 0; i < frac.size(); i += 10) {
      out += frac.substr(i, 10);
      const bool line_end = (i / 10) % 5 == 4 || i + 10 >= frac.size();
      out += line_end ? "\n" : " ";
    }
  }
  out += "error <= " + v.error_ulps.get_str() + " ulp (1e-" + std::to_string(v.scale) + ")\n";
  return out;
}

}  // namespace machin
