#pragma once

// Explicit constants for the exponent bounds on x^2+1 = 2^v m1^k m2^l and the
// chains that turn them into caps on three-term formulas.
//
// Moduli enter either directly or through their logarithms; anything that can
// exceed the Real exponent range (m2 near exp(1e9)) is carried in log space.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "machin/real.hpp"

namespace machin {

// ---- closed forms --------------------------------------------------------------
// All take m > 1 and throw DomainError otherwise. The *_log variants take log m > 0.

Real g1(const Real& m);
Real g2(const Real& m);
Real f1(const Real& m1, const Real& m2);
Real f2(const Real& m1, const Real& m2, const Real& rho);
Real f3(const Real& m1, const Real& m2);
Real f4(const Real& m1, const Real& m2, const Real& rho);

Real g1_log(const Real& l);
Real g2_log(const Real& l);
Real f1_log(const Real& l1, const Real& l2);
Real f2_log(const Real& l1, const Real& l2, const Real& rho);
Real f3_log(const Real& l1, const Real& l2);
Real f4_log(const Real& l1, const Real& l2, const Real& rho);

enum class C2Case { B, C };

Real compute_C2(C2Case c, const Real& rho);

// ---- lower bounds for linear forms in logarithms ---------------------------------

struct ThreeLogInputs {
  Real a1 = 4, a2 = 4, a3 = 4;
  Real b_prime = 1;

  Real omega() const { return a1 * a2 * a3; }
  /// max{0.882 + log b', 10}
  Real logB() const;
};

/// -790.95 * Omega * log^2 B. DomainError if some a_i < 4, Omega < 100 or b' <= 0.
Real three_log_lower_bound(const ThreeLogInputs& in);

struct TwoLogInputs {
  Real rho = 2;
  Real mu = Real(1) / 2;
  Real h = 0;
  Real a1p = 1, a2p = 1;
  Real bp = 20;
};

struct TwoLogDerived {
  Real sigma, lambda, H, omega, theta, c, c_prime;
};

/// sigma, lambda, H, omega, theta, c and c'. The constant written C inside c' is read as c.
TwoLogDerived derive(const TwoLogInputs& in);

/// Right side of the two-logarithm estimate. DomainError when rho <= 1, mu outside
/// [1/3, 1], bp < 20, a1'a2' < lambda^2 or h < log bp + log lambda + 1.81.
Real two_log_lower_bound(const TwoLogInputs& in);

struct OneLogInputs {
  long b1 = 1, b2 = 1;
  Real D = 1;
  Real height = 0;
  Real bp = 1;

  /// 9.05 pi + 2 D height
  Real a() const;
  /// max{17, D, D(log bp + 2.96) + 0.01}
  Real H() const;
};

/// -2.7704 a H^2. DomainError if a <= 0 or bp <= 0.
Real one_log_lower_bound(const OneLogInputs& in);

// ---- tau ---------------------------------------------------------------------

/// Smallest tau with X < tau Y log^psi Y whenever X / log^psi X < Y and Y >= Y0.
/// Solves X/log^psi X = Y0 on the increasing branch and checks tau(Y) does not grow
/// on sampled Y > Y0. BranchError if Y0 does not exceed e^psi and the branch minimum.
Real tau_for(const Real& Y0, const Real& psi);

/// The root X of X / log^psi X = Y on the increasing branch.
Real branch_root(const Real& Y, const Real& psi);

// ---- table rows --------------------------------------------------------------

enum class CaseTag { Ai, Aii, Ba, Bb, Ci, Cii };

const char* to_string(CaseTag c);

enum class CForm { One, F1, F2, F3, F4 };
enum class BetaForm { G1, G2, Constant };

enum class TableMode { AsPublished, Recompute };

struct BoundTableRow {
  CaseTag case_tag = CaseTag::Ai;
  /// Rows sharing a variant differ only in the m1 floor.
  std::string variant;
  /// Table holding the row's numbers (1 for the closed-form rows).
  int source_table = 1;
  Real log_m1_floor = 0;
  std::string floor_label;

  /// Recomputed C = c_coef * [C1 * C2(rho)] * f(m1, m2) + c_add; the bracket only when uses_c1.
  Real c_coef = 1;
  Real c_add = 0;
  CForm c_form = CForm::One;
  bool uses_c1 = false;
  C2Case c2_case = C2Case::B;
  /// Printed C (0 for closed-form rows).
  Real c_published = 0;

  Real psi = 2, nu1 = 0, nu2 = 0;
  BetaForm beta_form = BetaForm::Constant;
  Real beta_const = 1;
  Real tau = 1;
  /// Smallest Y for which tau is claimed; 0 when the row prints none.
  Real Y0 = 0;
  Real rho = 0, mu = 0;
};

/// All rows of the published tables: every variant at every m1 floor.
const std::vector<BoundTableRow>& published_rows();

/// For each variant, the row with the largest floor not above log m1.
std::vector<BoundTableRow> rows_for(const Real& log_m1, const std::vector<BoundTableRow>& rows);

/// Rows of the given cases only.
std::vector<BoundTableRow> rows_of(const std::vector<BoundTableRow>& rows, std::initializer_list<CaseTag> cases);

Real beta_of(const BoundTableRow& row, const Real& log_m1);
Real f_of(const BoundTableRow& row, const Real& l1, const Real& l2);

/// (C_published - c_add) / (c_coef * C2 * f) at m1 = floor, m2 = max(floor, e^30).
/// nullopt for rows without C1.
std::optional<Real> implied_C1(const BoundTableRow& row);

/// C at (m1, m2). Closed-form rows evaluate at (m1, m2) in both modes; C1 rows use
/// the printed constant as published and C1 * C2 * f(m1, m2) with the implied C1
/// when recomputing.
Real row_C(const BoundTableRow& row, const Real& l1, const Real& l2, TableMode mode);

struct RowEvaluation {
  std::string variant;
  std::string floor_label;
  Real C, beta, Y;
  /// max(Y, Y0): below Y0 the printed tau is only valid with Y0 in place of Y.
  Real Y_eff;
  /// 2 tau C log m1 log m2 log^psi Y_eff
  Real bound;
};

RowEvaluation evaluate_row(const BoundTableRow& row, const Real& l1, const Real& l2, TableMode mode,
                           const Real& c_scale = 1);

struct ExponentBound {
  Real value;
  std::size_t argmax = 0;
  std::vector<RowEvaluation> rows;
};

/// Cap on e1 log m1 + e2 log m2 from the maximum over the applicable rows.
/// Takes log m1 <= log m2; OutOfStatedDomain if log m2 <= 30.
ExponentBound exponent_bound_log(const Real& log_m1, const Real& log_m2, const std::vector<BoundTableRow>& rows,
                                 TableMode mode = TableMode::AsPublished, const Real& c_scale = 1);
ExponentBound exponent_bound(const Real& m1, const Real& m2, const std::vector<BoundTableRow>& rows,
                             TableMode mode = TableMode::AsPublished);

// ---- theorem chains ----------------------------------------------------------

enum class TauPower {
  /// KL < 4 tau C^2 ..., as printed.
  AsPrinted,
  /// KL < 4 tau^2 C^2 ..., squaring the exponent bound.
  Squared,
};

enum class LogExponent {
  /// log^(2 psi) Y in the KL bound.
  Psi,
  /// log^(2 mu) Y as printed; rows without mu fall back to psi.
  LiteralMu,
};

struct TheoremOptions {
  TableMode mode = TableMode::AsPublished;
  Real c_scale = 1;
  TauPower tau_power = TauPower::AsPrinted;
  LogExponent exponent = LogExponent::Psi;
  std::size_t max_iterations = 10000;
};

struct TheoremState {
  std::string row;
  Real log_m1, log_m2;
  Real K, L, KL;
  Real y_bound;
  Real x_log_bound;
  Real r_bound;
  std::size_t iterations = 0;
};

struct Case1Result {
  std::vector<TheoremState> per_row;
  TheoremState max;
};

/// m2 < 6.485 (KL)^2 with KL from the exponent bound at m1 = m2, iterated from
/// m2 = e^30 to the largest self-consistent m2. NoConvergence on divergence.
Case1Result theorem_case1(const std::vector<BoundTableRow>& rows, const TheoremOptions& options = {});

/// max{17, 2.97 + log(3 KL / sqrt(m1) + 4 KL / (9.05 pi))}
Real case2_H1(const Real& log_m1, const Real& KL);

/// 3 KL / sqrt(m1)
Real case2_r_bound(const Real& log_m1, const Real& KL);

/// Largest self-consistent log m2 for fixed m1 in
/// log m2 < 2 log(4(1+1e-8) KL) + 2 * 2.7704 (9.05 pi + log m1) H1^2.
TheoremState case2_log_m2(const Real& log_m1, const std::vector<BoundTableRow>& rows,
                          const TheoremOptions& options = {});

/// Whether 2KL/sqrt(m1-1) + 4L/sqrt(m2-1) < pi/4 rules out every m2 at this m1.
bool case2_contradiction(const Real& log_m1, const std::vector<BoundTableRow>& rows,
                         const TheoremOptions& options = {});

struct Case2Result {
  /// Smallest log m1 from which the contradiction holds.
  Real log_m1_cap;
  /// Maxima over log m1 in [log 5, log_m1_cap].
  TheoremState caps;
  bool h1_log_branch = false;
};

Case2Result theorem_case2(const std::vector<BoundTableRow>& rows, const TheoremOptions& options = {});

/// coefficient * log m1 * (log log m1)^2
Real log_m2_cap_from_m1(const Real& log_m1, const Real& coefficient = 498756);

// ---- table emitters ----------------------------------------------------------

enum class TableFormat { Text, Tsv };

/// Tables 1-6 in their printed column layout. Recompute mode replaces Y0 and tau
/// columns by recomputed values where a formula exists.
std::string emit_table(int which, TableMode mode, TableFormat format);

/// Implied C1 per row with its stability across floors.
std::string emit_c1_report(TableFormat format);

}  // namespace machin
