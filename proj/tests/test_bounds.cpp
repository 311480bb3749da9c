#include <doctest.h>

#include "machin/bounds.hpp"
#include "machin/errors.hpp"

using namespace machin;

namespace {

double d(const Real& v) { return v.convert_to<double>(); }

Real R(const char* s) { return Real(s); }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("spot inequalities for f3") {
  CHECK(f3(13, 17) * log(Real(17)) > R("20.34"));
  const Real m = 16816560;
  CHECK(f3(m, m) * sqrt(log(m)) > R("8.15791"));
  // mpmath, 40 digits
  CHECK(d(f3(13, 17) * log(Real(17))) == doctest::Approx(20.341152504965584).epsilon(1e-14));
  CHECK(d(f3(m, m) * sqrt(log(m))) == doctest::Approx(8.157910196468589).epsilon(1e-14));
}

TEST_CASE("closed forms exceed one and tend to one") {
  for (const char* m : {"1.5", "5", "13", "1e6", "1e30"}) {
    const Real a(m), b = Real(m) * 3;
    CHECK(g1(a) > 1);
    CHECK(g2(a) > 1);
    CHECK(f1(a, b) > 1);
    CHECK(f2(a, b, R("7.4")) > 1);
    CHECK(f3(a, b) > 1);
    CHECK(f4(a, b, R("7.4")) > 1);
  }
  const Real big = R("1e12");
  CHECK(d(f1_log(big, big)) == doctest::Approx(1).epsilon(1e-9));
  CHECK(d(f4_log(big, big, 6)) == doctest::Approx(1).epsilon(1e-9));
  CHECK_THROWS_AS(g1(1), DomainError);
  CHECK_THROWS_AS(f3(R("0.5"), 3), DomainError);
  CHECK_THROWS_AS(f2(3, 5, 0), DomainError);
  CHECK_THROWS_AS(f1_log(0, 2), DomainError);
}

TEST_CASE("C2") {
  CHECK(d(compute_C2(C2Case::B, R("7.4"))) == doctest::Approx(148.36939406905383).epsilon(1e-14));
  CHECK(d(compute_C2(C2Case::C, R("7.4"))) == doctest::Approx(21250.548117233026).epsilon(1e-14));
  const Real b = compute_C2(C2Case::B, R("7.4"));
  const Real tail = 20 / (20 - log(Real(2)));
  CHECK(d(compute_C2(C2Case::C, R("7.4")) / (b * b / tail)) == doctest::Approx(1).epsilon(1e-30));
  CHECK(d(compute_C2(C2Case::B, R("1e-30"))) == doctest::Approx(61.890698723196998).epsilon(1e-14));
}

TEST_CASE("three logarithms") {
  ThreeLogInputs in;
  in.a1 = 4;
  in.a2 = 5;
  in.a3 = 5;
  in.b_prime = 1;
  CHECK(d(in.logB()) == 10);
  CHECK(d(three_log_lower_bound(in)) == doctest::Approx(-7909500).epsilon(1e-15));
  in.a1 = 8;
  CHECK(d(three_log_lower_bound(in)) == doctest::Approx(-15819000).epsilon(1e-15));
  in.b_prime = R("1e10");
  CHECK(d(in.logB()) == doctest::Approx(0.882 + std::log(1e10)).epsilon(1e-14));
  in.a1 = 3;
  CHECK_THROWS_AS(three_log_lower_bound(in), DomainError);
  in.a1 = in.a2 = in.a3 = 4;
  CHECK_THROWS_AS(three_log_lower_bound(in), DomainError);
}

TEST_CASE("two logarithms") {
  TwoLogInputs in;
  in.rho = R("7.4");
  in.mu = R("0.62");
  in.bp = 100;
  in.a1p = in.a2p = 30;
  in.h = 20;
  const TwoLogDerived dv = derive(in);
  CHECK(d(dv.sigma) == doctest::Approx(0.9278).epsilon(1e-15));
  CHECK(d(dv.lambda) == doctest::Approx(1.8569731441949531).epsilon(1e-14));
  const Real base = two_log_lower_bound(in);
  CHECK(base < 0);
  in.a1p = 40;
  CHECK(two_log_lower_bound(in) < base);
  in.h = R("1e30");
  const TwoLogDerived lim = derive(in);
  CHECK(d(lim.omega) == doctest::Approx(4).epsilon(1e-12));
  CHECK(d(lim.theta) == doctest::Approx(1).epsilon(1e-12));
  in.h = 2;
  CHECK_THROWS_AS(two_log_lower_bound(in), DomainError);
  in.h = 20;
  in.a1p = in.a2p = 1;
  CHECK_THROWS_AS(two_log_lower_bound(in), DomainError);
  in.a1p = in.a2p = 30;
  in.bp = 10;
  CHECK_THROWS_AS(two_log_lower_bound(in), DomainError);
  in.bp = 100;
  in.mu = R("0.2");
  CHECK_THROWS_AS(two_log_lower_bound(in), DomainError);
}

TEST_CASE("one logarithm") {
  OneLogInputs in;
  in.D = 1;
  in.height = log(Real(5)) / 2;
  in.bp = R("1e-3");
  CHECK(d(in.H()) == 17);
  CHECK(d(one_log_lower_bound(in)) == doctest::Approx(-24052.075515618927).epsilon(1e-14));
  const Real a0 = in.a();
  in.height *= 3;
  CHECK(d(one_log_lower_bound(in) / in.a()) == doctest::Approx(d(-R("2.7704") * 289)).epsilon(1e-14));
  CHECK(in.a() > a0);
  in.bp = R("1e20");
  CHECK(d(in.H()) == doctest::Approx(std::log(1e20) + 2.96 + 0.01).epsilon(1e-14));
}

TEST_CASE("tau") {
  // bisection in mpmath to 40 digits
  CHECK(d(tau_for(32163, 2)) == doctest::Approx(2.3508192015965635).epsilon(1e-13));
  CHECK(d(tau_for(22743, 2)) == doctest::Approx(2.3920360905625604).epsilon(1e-13));
  CHECK(d(tau_for(R("57814.865"), Real(7) / 3)) == doctest::Approx(3.0427701676195396).epsilon(1e-13));
  CHECK(d(tau_for(R("100.776"), Real(7) / 3)) == doctest::Approx(6.0555651738841210).epsilon(1e-13));
  CHECK(d(tau_for(R("57814.873"), Real(8) / 3)) == doctest::Approx(4.2032042614481651).epsilon(1e-13));
  CHECK(d(tau_for(R("23125971.065"), Real(1) / 3)) == doctest::Approx(1.0185633204509144).epsilon(1e-13));
  CHECK(d(tau_for(R("23127228.879"), Real(2) / 3)) == doctest::Approx(1.0756477014072981).epsilon(1e-13));
  CHECK_THROWS_AS(tau_for(5, 2), BranchError);
  CHECK_THROWS_AS(tau_for(R("7.3"), 2), BranchError);
}

TEST_CASE("tau bounds X on sampled Y") {
  for (auto [y0, psi] : std::vector<std::pair<const char*, Real>>{
           {"32163", Real(2)}, {"57814.865", Real(7) / 3}, {"23125971.065", Real(1) / 3}}) {
    const Real Y0(y0);
    const Real t = tau_for(Y0, psi);
    for (int j = 0; j < 10; ++j) {
      const Real Y = Y0 * pow(Real(3), j);
      const Real X = branch_root(Y, psi);
      CHECK(d(X / pow(log(X), psi) / Y) == doctest::Approx(1).epsilon(1e-30));
      CHECK(X <= t * Y * pow(log(Y), psi) * (1 + R("1e-30")));
    }
  }
}

TEST_CASE("row table") {
  const auto& rows = published_rows();
  CHECK(rows.size() == 2 + 3 + 5 * 11);
  const auto at30 = rows_for(Real(30), rows);
  CHECK(at30.size() == 16);
  for (const auto& r : at30) {
    if (r.source_table > 1) CHECK(r.floor_label == "e^30");
  }
  const auto at5 = rows_for(log(Real(5)), rows);
  for (const auto& r : at5) {
    if (r.source_table > 1) CHECK(r.floor_label == "5");
  }
  CHECK(rows_for(log(Real(3)), rows).empty());
  CHECK(rows_of(rows, {CaseTag::Ai, CaseTag::Aii}).size() == 2);
}

TEST_CASE("Y0 of the first Table 3 row") {
  const auto& rows = published_rows();
  const auto it = std::find_if(rows.begin(), rows.end(), [](const BoundTableRow& r) {
    return r.variant == "B.a>20 alpha2=i" && r.floor_label == "e^30";
  });
  REQUIRE(it != rows.end());
  const RowEvaluation e = evaluate_row(*it, 30, 30, TableMode::AsPublished);
  CHECK(d(e.Y) == doctest::Approx(57814.866275291508).epsilon(1e-13));
  CHECK(d(abs(e.Y / it->Y0 - 1)) < 1e-3);
}

TEST_CASE("row A.i at the e^30 threshold") {
  const auto& r = published_rows().front();
  REQUIRE(r.variant == "A.i");
  const RowEvaluation e = evaluate_row(r, 30, 30, TableMode::AsPublished);
  const Real C = 28962 * f1_log(30, 30);
  CHECK(d(e.C / C) == doctest::Approx(1).epsilon(1e-30));
  CHECK(d(e.Y / (2 * C * g1_log(30) / (R("5.296") * pi_real()) * 30)) == doctest::Approx(1).epsilon(1e-30));
}

TEST_CASE("exponent bound domain and monotonicity") {
  const auto& rows = published_rows();
  CHECK_THROWS_AS(exponent_bound_log(10, 29, rows), OutOfStatedDomain);
  CHECK_THROWS_AS(exponent_bound(5, 3, rows), DomainError);
  Real prev = 0;
  for (int l2 = 30; l2 < 200; l2 += 7) {
    const auto b = exponent_bound_log(log(Real(13)), l2, rows);
    CHECK(b.value >= prev);
    prev = b.value;
  }
  for (const char* l1 : {"1.7", "2.6", "4.7", "10", "30"}) {
    const auto b1 = exponent_bound_log(Real(l1), 60, rows);
    const auto b2 = exponent_bound_log(Real(l1) * R("1.01"), 60, rows);
    CHECK(b2.value >= b1.value * (1 - R("1e-30")));
  }
  const auto b = exponent_bound_log(30, 40, rows, TableMode::Recompute);
  CHECK(b.value > 0);
  CHECK(b.rows.size() == 16);
}

TEST_CASE("implied C1") {
  for (const auto& r : published_rows()) {
    const auto c1 = implied_C1(r);
    CHECK(c1.has_value() == r.uses_c1);
    if (!c1) continue;
    const Real l1 = r.log_m1_floor, l2 = std::max(l1, Real(30));
    CHECK(d(row_C(r, l1, l2, TableMode::Recompute) / r.c_published) == doctest::Approx(1).epsilon(1e-30));
  }
}

TEST_CASE("case I chain") {
  const auto a_rows = rows_of(published_rows(), {CaseTag::Ai, CaseTag::Aii});
  const Case1Result r = theorem_case1(a_rows);
  CHECK(r.max.log_m2 > 30);
  CHECK(r.max.log_m2 < log(R("1e41")));
  CHECK(d(r.max.y_bound / (2 * r.max.KL)) == doctest::Approx(1).epsilon(1e-30));
  TheoremOptions sq;
  sq.tau_power = TauPower::Squared;
  CHECK(theorem_case1(a_rows, sq).max.log_m2 > r.max.log_m2);
  TheoremOptions big;
  big.c_scale = 2;
  CHECK(theorem_case1(a_rows, big).max.log_m2 > r.max.log_m2);
  // 6.485 (KL)^2 with KL = 1
  CHECK(d(pow(4 * (2 + R("1e-8")) / pi_real(), 2)) < 6.485);
}

TEST_CASE("case II pieces") {
  CHECK(d(case2_r_bound(log(Real(25)), 10)) == doctest::Approx(6).epsilon(1e-30));
  CHECK(d(case2_H1(log(Real(25)), 10)) == 17);
  const Real KL = R("1e12"), l1 = 60;
  CHECK(case2_H1(l1, KL) <= R("1.2845") * log(KL));
  CHECK(d(log_m2_cap_from_m1(Real(100))) == doctest::Approx(498756 * 100 * std::pow(std::log(100.0), 2)).epsilon(1e-13));
}

}  // TEST_SUITE
