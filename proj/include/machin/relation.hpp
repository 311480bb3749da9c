#pragma once

// Machin-type relations  sum y_j * atan(1/x_j) = r * pi/4  and Stormer's
// criterion over a basis of odd moduli.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "machin/gaussian.hpp"

namespace machin {

struct Term {
  mpz_class x;
  std::int64_t y = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct ArctanRelation {
  std::vector<Term> terms;
  std::int64_t r = 0;

  friend bool operator==(const ArctanRelation&, const ArctanRelation&) = default;
};

/// Throws MalformedRelation unless every x > 1, all x distinct and every y != 0.
void check_well_formed(const ArctanRelation& rel);

/// Terms sorted by x ascending; overall sign flipped so the first y is positive.
ArctanRelation canonicalize(ArctanRelation rel);

/// prod (x+i)^max(y,0) * (x-i)^max(-y,0); its argument is sum y*atan(1/x) mod 2 pi.
GInt arctan_product(const std::vector<Term>& terms);

struct VerifyResult {
  bool verified = false;
  std::int64_t r = 0;

  explicit operator bool() const { return verified; }
};

/// Exact check of the stated r: A*(1-i)^r must be a positive real Gaussian integer.
VerifyResult verify(const ArctanRelation& rel);

/// Infers r from the exact octant of A plus a winding count from a 50-digit
/// evaluation, then certifies it exactly. nullopt when no r exists.
std::optional<std::int64_t> infer_r(const std::vector<Term>& terms);

// ---- text format -----------------------------------------------------------
//   <y1>*atan(1/<x1>) <+|-> <|y2|>*atan(1/<x2>) ... = <r>*pi/4

std::string format_relation(const ArctanRelation& rel);

/// Parses one relation line; throws ParseError.
ArctanRelation parse_relation(std::string_view line);

struct CorpusEntry {
  std::size_t line = 0;
  ArctanRelation relation;
};

/// Parses a corpus: one relation per line, '#' comment lines and blank lines skipped.
/// Throws ParseError naming the offending line.
std::vector<CorpusEntry> parse_corpus(std::string_view text);

// ---- Stormer's criterion -----------------------------------------------------

struct ModulusExponent {
  mpz_class modulus;
  unsigned e = 0;
  /// +1 when eta^e divides x+i, -1 when conj(eta)^e does, 0 when neither
  /// (only possible for composite moduli whose prime splits are mixed).
  int sign = 1;

  friend bool operator==(const ModulusExponent&, const ModulusExponent&) = default;
};

/// x^2 + 1 = 2^v * prod m_j^e_j, with the side of each eta_j that divides x+i.
struct ExponentSignature {
  mpz_class x;
  unsigned v = 0;
  std::vector<ModulusExponent> exps;

  friend bool operator==(const ExponentSignature&, const ExponentSignature&) = default;
};

struct NotSmooth {
  mpz_class cofactor;
};

/// A reduction basis of odd moduli with their canonical eta_j.
class Basis {
 public:
  /// Throws BadBasis for an even modulus, a modulus <= 1, a prime factor 3 mod 4,
  /// or moduli that are not pairwise coprime.
  explicit Basis(std::vector<mpz_class> moduli);

  const std::vector<mpz_class>& moduli() const noexcept { return moduli_; }
  const std::vector<GInt>& etas() const noexcept { return etas_; }
  std::size_t size() const noexcept { return moduli_.size(); }

 private:
  std::vector<mpz_class> moduli_;
  std::vector<GInt> etas_;
};

std::variant<ExponentSignature, NotSmooth> reduce(const mpz_class& x, const Basis& basis);
std::variant<ExponentSignature, NotSmooth> reduce(const mpz_class& x,
                                                  const std::vector<mpz_class>& moduli);

/// The unit u with x+i = u*(1+i)^v * prod eta_j^e_j (conj(eta_j) when sign is -1).
/// nullopt when the quotient is not a unit.
std::optional<GInt> signature_unit(const ExponentSignature& sig, const Basis& basis);

/// xa = +-xb (mod m). Throws NotApplicable unless m divides both xa^2+1 and xb^2+1.
bool sign_condition(const mpz_class& xa, const mpz_class& xb, const mpz_class& m);

/// Whether m divides both xa^2+1 and xb^2+1.
bool sign_condition_applies(const mpz_class& xa, const mpz_class& xb, const mpz_class& m);

enum class DeriveKind { Relation, ZeroR, Degenerate };

struct DeriveOutcome {
  DeriveKind kind = DeriveKind::Degenerate;
  /// Canonical relation for Relation and ZeroR; empty for Degenerate.
  ArctanRelation relation;
  /// True when the recorded signs failed and the exhaustive sign search was used.
  bool used_fallback = false;
};

/// Coefficients from the 2x2 minors of the signed exponent matrix of three
/// signatures over the same two-modulus basis; r from exact verification.
/// Throws InconsistentSigns if no sign pattern verifies, BadBasis on a basis mismatch.
DeriveOutcome derive_coefficients(const std::array<ExponentSignature, 3>& sigs);

/// atan(1/(az-x)) - atan(1/(az+a-x)) - atan(1/(az(z+1)-(2z+1)x+y)) = 0 for x^2+1 = a*y.
/// Throws std::invalid_argument if x^2+1 != a*y and OutOfRange if an argument is <= 1.
ArctanRelation stormer_identity(const mpz_class& a, const mpz_class& x, const mpz_class& y,
                                const mpz_class& z);

}  // namespace machin
