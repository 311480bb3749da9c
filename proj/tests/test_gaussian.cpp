#include <doctest.h>

#include <cmath>
#include <random>

#include "machin/errors.hpp"
#include "machin/gaussian.hpp"
#include "oracles.hpp"

using namespace machin;

TEST_SUITE("gaussian") {

TEST_CASE("norm of small values") {
  CHECK(norm(GInt(2, 1)) == 5);
  CHECK(norm(GInt(3, 2)) == 13);
  CHECK(norm(GInt(0, 0)) == 0);
  CHECK(norm(GInt(-7, 4)) == 65);
}

TEST_CASE("norm is multiplicative") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    GInt a(d(rng), d(rng)), b(d(rng), d(rng));
    CHECK(norm(a * b) == norm(a) * norm(b));
    CHECK(a.conj().conj() == a);
  }
}

TEST_CASE("split of primes and composites") {
  CHECK(split_sum_two_squares(mpz_class(5)) == GInt(2, 1));
  CHECK(split_sum_two_squares(mpz_class(281)) == GInt(16, 5));
  CHECK(split_sum_two_squares(mpz_class(13)) == GInt(3, 2));
  CHECK_THROWS_AS(split_sum_two_squares(mpz_class(7)), NotSplittable);
  CHECK_THROWS_AS(split_sum_two_squares(mpz_class(10)), NotSplittable);
  CHECK_THROWS_AS(split_sum_two_squares(mpz_class(15)), NotSplittable);
  CHECK_THROWS_AS(split_sum_two_squares(mpz_class(1)), NotSplittable);
  const GInt e65 = split_sum_two_squares(mpz_class(65));
  CHECK(norm(e65) == 65);
  CHECK(e65 == primary_associate(e65));
}

TEST_CASE("split agrees with a brute-force two-squares scan below 1e5") {
  const auto primes = oracle::primes_below(100000);
  std::size_t n = 0;
  for (auto p : primes) {
    if (p % 4 != 1) continue;
    const GInt eta = split_sum_two_squares(mpz_class(static_cast<unsigned long>(p)));
    const auto reps = oracle::two_squares(static_cast<long>(p));
    REQUIRE(reps.size() == 1);
    CHECK(eta == GInt(reps[0].first, reps[0].second));
    ++n;
  }
  CHECK(n == 4783);
}

TEST_CASE("sqrt of -1 takes the smaller root") {
  CHECK(sqrt_minus_one(mpz_class(5)) == 2);
  CHECK(sqrt_minus_one(mpz_class(13)) == 5);
  CHECK(sqrt_minus_one(mpz_class(281)) == 53);
}

TEST_CASE("primary associate") {
  CHECK(primary_associate(GInt(1, 2)) == GInt(2, -1));
  CHECK(primary_associate(GInt(2, 1)) == GInt(2, 1));
  CHECK(primary_associate(GInt(-3, 1)) == GInt(3, -1));
  CHECK_THROWS_AS(primary_associate(GInt(1, 1)), OnDiagonal);
  CHECK_THROWS_AS(primary_associate(GInt(-4, 4)), OnDiagonal);
  CHECK_THROWS_AS(primary_associate(GInt(0, 0)), std::invalid_argument);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int i = 0; i < 300; ++i) {
    GInt z(d(rng), d(rng));
    if (z.is_zero() || abs(z.re()) == abs(z.im())) continue;
    const GInt p = primary_associate(z);
    CHECK(primary_associate(p) == p);
    CHECK(are_associates(p, z));
    CHECK(p.re() > 0);
    CHECK(abs(p.im()) < p.re());
  }
}

TEST_CASE("exact division") {
  CHECK(exact_divide(GInt(5, 0), GInt(2, 1)) == GInt(2, -1));
  CHECK_FALSE(exact_divide(GInt(3, 0), GInt(2, 1)).has_value());
  CHECK(exact_divide(GInt(0, 0), GInt(2, 1)) == GInt(0, 0));
  CHECK_THROWS_AS(exact_divide(GInt(1, 0), GInt(0, 0)), DivisionByZero);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-200, 200);
  for (int i = 0; i < 300; ++i) {
    GInt a(d(rng), d(rng)), b(d(rng), d(rng));
    if (b.is_zero()) continue;
    const auto q = exact_divide(a * b, b);
    REQUIRE(q.has_value());
    CHECK(*q * b == a * b);
  }
}

TEST_CASE("gcd and nearest quotient") {
  CHECK(gcd(GInt(5, 0), GInt(2, 1)) == GInt(2, 1));
  const GInt g = gcd(GInt(13, 0), GInt(5, 1));
  CHECK((are_associates(g, GInt(3, 2)) || are_associates(g, GInt(3, -2))));
  const GInt a(123, -45), b(7, 3);
  const GInt q = nearest_quotient(a, b);
  CHECK(2 * norm(a - q * b) <= norm(b));
}

TEST_CASE("factorization") {
  const auto f = factor_trial(mpz_class(3250));
  REQUIRE(f.size() == 3);
  CHECK(f[0].p == 2);
  CHECK(f[1].p == 5);
  CHECK(f[1].e == 3);
  CHECK(f[2].p == 13);
}

TEST_CASE("height of (x+i)/(x-i)") {
  CHECK(height_of_quotient(mpz_class(2)) == doctest::Approx(0.8047189562).epsilon(1e-10));
  CHECK(height_of_quotient(mpz_class(239)) == doctest::Approx(0.5 * std::log(57122.0)).epsilon(1e-12));
  // even x: the polynomial (x^2+1)t^2 - 2(x^2-1)t + (x^2+1) is already primitive
  for (unsigned long x = 2; x < 400; x += 2) {
    CHECK(height_of_quotient(mpz_class(x)) == doctest::Approx(oracle::quotient_height_primitive(x)).epsilon(1e-12));
  }
  // odd x: the leading coefficient is kept at x^2+1, half a log 2 above the primitive one
  for (unsigned long x = 3; x < 400; x += 2) {
    CHECK(height_of_quotient(mpz_class(x)) - oracle::quotient_height_primitive(x) ==
          doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
  }
  double prev = 0;
  for (unsigned long x = 2; x < 2000; ++x) {
    const double h = height_of_quotient(mpz_class(x));
    CHECK(h > prev);
    prev = h;
  }
  CHECK(height_of_quotient(mpz_class("1000000000000")) == doctest::Approx(std::log(1e12)).epsilon(1e-12));
}

TEST_CASE("Gaussian rationals stay reduced") {
  const GRational q = arctan_quotient(mpz_class(7));
  CHECK(q.is_unit_modulus());
  const GRational p = pow(q, 3) * pow(q, -3);
  CHECK(p.is_unit());
  const GRational r(GInt(6, 2), GInt(4, 2));
  CHECK(norm(gcd(r.num(), r.den())) == 1);
}

}  // TEST_SUITE
