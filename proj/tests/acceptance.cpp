// One PASS/FAIL line per acceptance criterion. `acceptance --only N` runs one.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "machin/bounds.hpp"
#include "machin/corpus.hpp"
#include "machin/errors.hpp"
#include "machin/precision.hpp"
#include "machin/relation.hpp"
#include "machin/stormer.hpp"
#include "oracles.hpp"

using namespace machin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  std::string failures;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += " [fail: " + what + "]";
    }
  }
};

double d(const Real& v) { return v.convert_to<double>(); }

// ---- 1 -----------------------------------------------------------------------

void c1(Outcome& o) {
  const auto t0 = Clock::now();
  std::size_t verified = 0, perturbed = 0, caught = 0;
  for (const auto& f : known_formulae()) {
    if (verify(f.relation).verified && verify(f.relation).r == f.relation.r) {
      ++verified;
    } else {
      o.require(false, f.id + " does not verify");
    }
    for (std::size_t i = 0; i < f.relation.terms.size(); ++i) {
      for (int delta : {-1, 1}) {
        ArctanRelation p = f.relation;
        p.terms[i].y += delta;
        if (p.terms[i].y == 0) continue;
        ++perturbed;
        if (!verify(p).verified) {
          ++caught;
        } else {
          o.require(false, f.id + " perturbed term " + std::to_string(i) + " verifies");
        }
      }
    }
  }
  const double s = seconds_since(t0);
  o.require(verified == 9, "nine formulae verified");
  o.require(s < 1.0, "runtime under 1 s");
  o.note << verified << "/9 verified, " << caught << "/" << perturbed << " perturbations fail, " << s << " s";
}

// ---- 2, 3 ----------------------------------------------------------------------

const std::set<std::uint64_t> kExpected513{1, 2, 3, 5, 7, 8, 18, 57, 239};

void c2(Outcome& o) {
  // the oracle runs first and must itself land on the expected set
  const auto oracle_xs = oracle::smooth_x(5, 13, 1000000);
  o.require(oracle_xs == kExpected513, "generate-and-test oracle");
  const auto primes = oracle::primes_below(1001);
  std::set<std::uint64_t> factored;
  for (unsigned long x = 1; x <= 1000; ++x) {
    bool ok = true;
    for (const auto& [p, e] : oracle::factor(mpz_class(x) * x + 1, primes)) ok = ok && (p == 2 || p == 5 || p == 13);
    if (ok) factored.insert(x);
  }
  std::set<std::uint64_t> low;
  for (auto x : oracle_xs) {
    if (x <= 1000) low.insert(x);
  }
  o.require(factored == low, "factorization oracle below 1000");

  const auto t0 = Clock::now();
  const auto sols = enumerate_solutions(5, 13, 1000000);
  const double s = seconds_since(t0);
  std::set<std::uint64_t> got;
  for (const auto& r : sols) got.insert(r.x);
  o.require(got == kExpected513, "enumerated set");
  o.require(s < 30.0, "runtime under 30 s");
  o.note << "{";
  bool first = true;
  for (auto x : got) {
    o.note << (first ? "" : ",") << x;
    first = false;
  }
  o.note << "}, " << s << " s";
}

void c3(Outcome& o) {
  const auto census = parity_census(enumerate_solutions(5, 13, 1000000));
  std::size_t max_class = 0;
  for (const auto& [cls, n] : census.counts) max_class = std::max(max_class, n);
  o.require(max_class <= 1, "at most one solution per parity class");
  o.require(census.total <= 14, "at most 14 solutions");
  o.require(!census.violation, "no census violation");
  o.note << census.counts.size() << " classes, max " << max_class << " per class, total " << census.total;
}

// ---- 4 -------------------------------------------------------------------------

void c4(Outcome& o) {
  const auto t0 = Clock::now();
  const auto got = pure_power_scan(1000000, 40);
  const double s = seconds_since(t0);
  o.require(got.size() == 1 && got[0] == PurePower{239, 1, 13, 4}, "exactly (239, 1, 13, 4)");
  o.require(s < 60.0, "runtime under 60 s");
  for (const auto& p : got) o.note << "(" << p.x << "," << p.e << "," << p.y << "," << p.n << ") ";
  o.note << s << " s";
}

// ---- 5 -------------------------------------------------------------------------

bool contains(const SearchReport& rep, const std::string& text) {
  for (const auto& r : rep.relations) {
    if (format_relation(r) == text) return true;
  }
  return false;
}

void c5(Outcome& o) {
  const auto gauss = find_three_term(5, 13, 1000000);
  o.require(contains(gauss, "12*atan(1/18) + 8*atan(1/57) - 5*atan(1/239) = 1*pi/4"), "Gauss relation");
  const auto wrench = find_three_term(5, 281, 5000);
  o.require(contains(wrench, "5*atan(1/2) + 2*atan(1/53) + 1*atan(1/4443) = 3*pi/4"), "(5, 2, 1; r=3) relation");
  const auto none = find_three_term(13, 17, 100);
  bool nonzero = false, zero_r = false;
  for (const auto& r : none.relations) nonzero = nonzero || r.r != 0;
  for (const auto& j : none.rejected) {
    zero_r = zero_r || (j.xs == std::array<std::uint64_t, 3>{4, 5, 21} && j.reason == RejectReason::ZeroR);
  }
  o.require(!nonzero, "no r != 0 relation over (13, 17)");
  o.require(zero_r, "(4,5,21) rejected as ZeroR");
  o.note << gauss.relations.size() << " relations over (5,13), " << wrench.relations.size() << " over (5,281), "
         << none.relations.size() << " over (13,17)";
}

// ---- 6 -------------------------------------------------------------------------

void c6(Outcome& o) {
  std::size_t tau_rows = 0, tau_ok = 0;
  std::size_t y_rows = 0, y_ok_literal = 0, y_ok_e30 = 0;
  std::size_t shifted_rows = 0, shifted_ok = 0;
  double worst_tau = 0;
  std::string worst_tau_row;
  for (const auto& r : published_rows()) {
    if (r.source_table < 3 || r.Y0 <= 0) continue;
    ++tau_rows;
    const Real tau = tau_for(r.Y0, r.psi);
    const double rel = d(abs(tau / r.tau - 1));
    if (r.source_table == 4 || r.source_table == 6) {
      // printed 1.abcd against a computed 1.0abcd
      ++shifted_rows;
      if (d(abs(tau / (1 + (r.tau - 1) / 10) - 1)) < 1e-4) ++shifted_ok;
    }
    if (rel < 1e-3) {
      ++tau_ok;
    } else if (rel > worst_tau) {
      worst_tau = rel;
      worst_tau_row = "table " + std::to_string(r.source_table) + " " + r.variant + " @" + r.floor_label + ": " +
                      to_fixed(tau, 5) + " vs " + to_fixed(r.tau, 4);
    }

    ++y_rows;
    const Real l1 = r.log_m1_floor;
    auto y_at = [&](const Real& l2) {
      return 2 * beta_of(r, l1) * r.c_published * pow(l1, r.nu1) * pow(l2, r.nu2);
    };
    if (d(abs(y_at(l1) / r.Y0 - 1)) < 1e-3) ++y_ok_literal;
    if (d(abs(y_at(std::max(l1, Real(30))) / r.Y0 - 1)) < 1e-3) ++y_ok_e30;
  }
  const double ai = d(tau_for(32163, 2));
  o.require(std::abs(ai - 2.351) <= 0.001, "tau_for(32163, 2) = 2.351 +- 0.001");
  o.require(tau_ok == tau_rows, "tau within 1e-3 on every row");
  o.require(y_ok_literal == y_rows, "Y0 within 0.1% with m2 = m1");
  o.note << "A.i tau " << ai << "; tau " << tau_ok << "/" << tau_rows << " rows";
  if (!worst_tau_row.empty()) o.note << " (worst " << worst_tau_row << ")";
  o.note << "; tables 4/6 read as 1.0abcd: " << shifted_ok << "/" << shifted_rows << " within 1e-4";
  o.note << "; Y0 " << y_ok_literal << "/" << y_rows << " with m2 = m1, " << y_ok_e30 << "/" << y_rows
         << " with m2 = max(m1, e^30)";
}

// ---- 7 -------------------------------------------------------------------------

void c7(Outcome& o) {
  const Real a = f3(13, 17) * log(Real(17));
  const Real m = 16816560;
  const Real b = f3(m, m) * sqrt(log(m));
  o.require(a > Real("20.34"), "f3(13,17) log 17 > 20.34");
  o.require(b > Real("8.15791"), "f3(16816560,16816560) sqrt(log 16816560) > 8.15791");
  const Real c2b = compute_C2(C2Case::B, Real("7.4"));
  const Real c2c = compute_C2(C2Case::C, Real("7.4"));
  const Real tail = 20 / (20 - log(Real(2)));
  o.require(abs(c2c * tail / (c2b * c2b) - 1) < Real("1e-40"), "C2 cases related by the 20/(20 - log 2) factor");
  o.note << to_fixed(a, 8) << " > 20.34, " << to_fixed(b, 8) << " > 8.15791, C2(B,7.4) = " << to_fixed(c2b, 6);
}

// ---- 8 -------------------------------------------------------------------------

void c8(Outcome& o) {
  const auto& rows = published_rows();
  const auto a_rows = rows_of(rows, {CaseTag::Ai, CaseTag::Aii});
  const Case1Result base = theorem_case1(a_rows);
  const Real bound41 = log(Real("1e41"));
  o.require(isfinite(base.max.log_m2) && base.max.log_m2 <= bound41, "Case I m2 <= 1e41");

  TheoremOptions up;
  up.c_scale = Real("1.5");
  const Case1Result bigger = theorem_case1(a_rows, up);
  o.require(bigger.max.log_m2 >= base.max.log_m2, "Case I monotone in C");

  const Case2Result c2 = theorem_case2(rows);
  const bool finite = isfinite(c2.log_m1_cap) && isfinite(c2.caps.log_m2) && isfinite(c2.caps.x_log_bound) &&
                      isfinite(c2.caps.y_bound) && isfinite(c2.caps.r_bound);
  o.require(finite, "Case II caps finite");
  const Case2Result c2_up = theorem_case2(rows, up);
  o.require(c2_up.log_m1_cap >= c2.log_m1_cap && c2_up.caps.log_m2 >= c2.caps.log_m2, "Case II monotone in C");

  bool mono = true;
  for (int l1 = 2; l1 < 40; l1 += 3) {
    Real prev = 0;
    for (int l2 = std::max(30, l1); l2 < 300; l2 += 17) {
      const Real v = exponent_bound_log(l1, l2, rows).value;
      mono = mono && v >= prev;
      prev = v;
    }
  }
  o.require(mono, "exponent bound monotone in m2");

  o.note << "Case I m2 < " << to_sci(exp(base.max.log_m2), 3) << " (" << base.max.row << "), |y| <= "
         << to_sci(base.max.y_bound, 3) << "; Case II m1 < " << to_sci(exp(c2.log_m1_cap), 3) << ", log m2 < "
         << to_sci(c2.caps.log_m2, 3) << ", log x < " << to_sci(c2.caps.x_log_bound, 3);
}

// ---- 9 -------------------------------------------------------------------------

void c9(Outcome& o) {
  const auto t0 = Clock::now();
  const FixedDecimal a = pi_from_relation(formula("machin"), 1000);
  const FixedDecimal b = pi_from_relation(formula("gauss"), 1000);
  const double s = seconds_since(t0);
  const std::size_t agree = agreement_digits(a, b);
  o.require(agree >= 998, "agreement to 998 digits");
  o.require(s < 5.0, "runtime under 5 s");
  o.note << agree << " digits agree, " << s << " s";
}

// ---- 10 ------------------------------------------------------------------------

void c10(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> xs(1, 2000), zs(1, 60);
  std::size_t made = 0, exact = 0, numeric = 0;
  while (made < 200) {
    const long x = xs(rng);
    const long n = x * x + 1;
    std::vector<long> divisors;
    for (long a = 2; a * a <= n; ++a) {
      if (n % a == 0) divisors.insert(divisors.end(), {a, n / a});
    }
    divisors.push_back(n);
    const long a = divisors[std::uniform_int_distribution<std::size_t>(0, divisors.size() - 1)(rng)];
    const long z = zs(rng);
    ArctanRelation r;
    try {
      r = stormer_identity(mpz_class(a), mpz_class(x), mpz_class(n / a), mpz_class(z));
    } catch (const OutOfRange&) {
      continue;
    }
    ++made;
    if (verify(r).verified && r.r == 0) ++exact;
    if (numeric_check(r, 50)) ++numeric;
  }
  o.require(exact == made, "every identity verifies exactly");
  o.require(numeric == made, "every identity passes numeric_check at 50 digits");
  o.note << exact << "/" << made << " exact, " << numeric << "/" << made << " numeric";
}

struct Criterion {
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> all = {
      {"exact verification", c1},   {"enumeration oracle", c2},   {"parity census", c3},
      {"pure power scan", c4},      {"rediscovery", c5},          {"table reproduction", c6},
      {"constant formulas", c7},    {"theorem pipeline", c8},     {"pi cross-check", c9},
      {"exact/numeric coherence", c10},
  };
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      all[i].run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures += std::string(" [exception: ") + e.what() + "]";
    }
    std::printf("c%zu %s %s: %s%s\n", i + 1, o.pass ? "PASS" : "FAIL", all[i].title, o.note.str().c_str(),
                o.failures.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed ? 1 : 0;
}
