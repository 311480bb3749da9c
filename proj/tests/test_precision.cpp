#include <doctest.h>

#include "machin/corpus.hpp"
#include "machin/errors.hpp"
#include "machin/precision.hpp"
#include "oracles.hpp"

using namespace machin;

namespace {

ArctanRelation rel(std::vector<std::pair<long, long>> xy, long r) {
  ArctanRelation out;
  for (auto [x, y] : xy) out.terms.push_back({mpz_class(x), y});
  out.r = r;
  return out;
}

mpz_class pow10(unsigned long n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, n);
  return p;
}

}  // namespace

TEST_SUITE("precision") {

TEST_CASE("arctan agrees across precisions") {
  for (long x : {2, 3, 5, 57, 239, 4443}) {
    INFO(x);
    const FixedDecimal a = arctan_recip(mpz_class(x), 30);
    const FixedDecimal b = round_to(arctan_recip(mpz_class(x), 60), 30);
    CHECK(abs(a.mantissa - b.mantissa) <= 1);
    CHECK(a.error_ulps <= 2);
    CHECK(a.mantissa > 0);
    CHECK(a.mantissa < pow10(30) / x);
  }
}

TEST_CASE("arctan against boost at 45 digits") {
  for (long x : {2, 7, 18, 239, 12943}) {
    const oracle::Float50 ref = boost::multiprecision::atan(oracle::Float50(1) / x);
    const FixedDecimal a = arctan_recip(mpz_class(x), 45);
    const oracle::Float50 got = oracle::Float50(a.mantissa.get_str()) / oracle::Float50(pow10(45).get_str());
    CHECK(abs(got - ref) < oracle::Float50("2e-45"));
  }
}

TEST_CASE("error bounds are sound when the digits double") {
  for (const auto& f : known_formulae()) {
    if (f.relation.r == 0) continue;
    INFO(f.id);
    const FixedDecimal lo = pi_from_relation(f.relation, 200);
    const FixedDecimal hi = round_to(pi_from_relation(f.relation, 400), 200);
    CHECK(abs(lo.mantissa - hi.mantissa) <= lo.error_ulps + 1);
    CHECK(lo.error_ulps <= 5);
  }
  for (long x : {2, 3, 239}) {
    const FixedDecimal lo = arctan_recip(mpz_class(x), 100);
    const FixedDecimal hi = arctan_recip(mpz_class(x), 200);
    CHECK(abs(lo.mantissa * pow10(100) - hi.mantissa) <= lo.error_ulps * pow10(100) + hi.error_ulps);
  }
}

TEST_CASE("atan(1/2) + atan(1/3) = pi/4") {
  const FixedDecimal pi = pi_from_relation(formula("machin"), 80);
  const FixedDecimal s2 = arctan_recip(mpz_class(2), 80), s3 = arctan_recip(mpz_class(3), 80);
  CHECK(abs(4 * (s2.mantissa + s3.mantissa) - pi.mantissa) < 10 * 4);
}

TEST_CASE("pi from several formulae") {
  const FixedDecimal ref = pi_from_relation(formula("machin"), 300);
  CHECK(ref.str().rfind("3.14159265358979323846264338327950288419716939937510", 0) == 0);
  for (const char* id : {"euler", "hutton", "hermann", "simson", "gauss", "wrench1", "wrench2", "wrench3"}) {
    INFO(id);
    CHECK(agreement_digits(ref, pi_from_relation(formula(id), 300)) >= 298);
  }
}

TEST_CASE("pi rejects r = 0 and unverified relations") {
  CHECK_THROWS_AS(pi_from_relation(rel({{4, 1}, {5, -1}, {21, -1}}, 0), 20), RelationNotVerified);
  CHECK_THROWS_AS(pi_from_relation(rel({{5, 5}, {239, -1}}, 1), 20), RelationNotVerified);
  CHECK_THROWS_AS(arctan_recip(mpz_class(1), 10), std::invalid_argument);
  CHECK_THROWS_AS(arctan_recip(mpz_class(2), 0), std::invalid_argument);
}

TEST_CASE("numeric check") {
  CHECK(numeric_check(formula("simson"), 50));
  CHECK_FALSE(numeric_check(rel({{10, 9}, {239, -1}, {515, -4}}, 1), 50));
  CHECK(numeric_check(rel({{4, 1}, {5, -1}, {21, -1}}, 0), 50));
  CHECK(numeric_check(formula("machin"), 50));
  CHECK_THROWS_AS(numeric_check(formula("machin"), 19), std::invalid_argument);
  for (const auto& f : known_formulae()) CHECK(numeric_check(f.relation, 50));
}

TEST_CASE("block layout") {
  const std::string s = format_blocks(pi_from_relation(formula("machin"), 60));
  CHECK(s.rfind("3.\n1415926535 8979323846 2643383279 5028841971 6939937510\n5820974945\n", 0) == 0);
  CHECK(s.find("error <= ") != std::string::npos);
  CHECK(s.back() == '\n');
}

}  // TEST_SUITE
