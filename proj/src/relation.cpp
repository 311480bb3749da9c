#include "machin/relation.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

#include "machin/errors.hpp"
#include "machin/real.hpp"

namespace machin {

void check_well_formed(const ArctanRelation& rel) {
  std::set<mpz_class> seen;
  for (const auto& t : rel.terms) {
    if (t.x <= 1) throw MalformedRelation("relation term with x = " + t.x.get_str() + " <= 1");
    if (t.y == 0) throw MalformedRelation("relation term with zero coefficient");
    if (!seen.insert(t.x).second) throw MalformedRelation("repeated argument x = " + t.x.get_str());
  }
}

ArctanRelation canonicalize(ArctanRelation rel) {
  std::sort(rel.terms.begin(), rel.terms.end(),
            [](const Term& a, const Term& b) { return a.x < b.x; });
  if (!rel.terms.empty() && rel.terms.front().y < 0) {
    for (auto& t : rel.terms) t.y = -t.y;
    rel.r = -rel.r;
  }
  return rel;
}

GInt arctan_product(const std::vector<Term>& terms) {
  GInt a(1, 0);
  for (const auto& t : terms) {
    const unsigned long k = static_cast<unsigned long>(std::llabs(t.y));
    a = a * pow(GInt(t.x, t.y > 0 ? 1 : -1), k);
  }
  return a;
}

namespace {

// A * (1-i)^r, rotating the argument by -r*pi/4.
GInt rotate_octants(const GInt& a, std::int64_t r) {
  const unsigned long k = static_cast<unsigned long>(std::llabs(r));
  return a * pow(GInt(1, r >= 0 ? -1 : 1), k);
}

bool is_positive_real(const GInt& z) { return sgn(z.im()) == 0 && sgn(z.re()) > 0; }

}  // namespace

VerifyResult verify(const ArctanRelation& rel) {
  check_well_formed(rel);
  const GInt a = arctan_product(rel.terms);
  // arg A is only known mod 2 pi; the winding must match the stated r too
  if (!is_positive_real(rotate_octants(a, rel.r))) return {false, rel.r};
  const auto inferred = infer_r(rel.terms);
  return {inferred && *inferred == rel.r, rel.r};
}

std::optional<std::int64_t> infer_r(const std::vector<Term>& terms) {
  const GInt a = arctan_product(terms);
  // exact octant: r mod 8
  std::optional<std::int64_t> octant;
  GInt b = a;
  for (std::int64_t r0 = 0; r0 < 8; ++r0) {
    if (is_positive_real(b)) {
      octant = r0;
      break;
    }
    b = b * GInt(1, -1);
  }
  if (!octant) return std::nullopt;

  // winding from the real sum; candidates differ by 8, so the 50-digit sum is ample
  Real s = 0;
  for (const auto& t : terms) s += Real(t.y) * atan(Real(1) / to_real(t.x));
  const Real quarter_turns = 4 * s / pi_real();
  const Real k = round((quarter_turns - Real(*octant)) / 8);
  const Real r_real = Real(*octant) + 8 * k;
  if (abs(quarter_turns - r_real) > 0.5) return std::nullopt;
  return static_cast<std::int64_t>(r_real);
}

// ---- text format -----------------------------------------------------------

std::string format_relation(const ArctanRelation& rel) {
  if (rel.terms.empty()) throw MalformedRelation("format_relation: relation has no terms");
  std::string out;
  for (std::size_t i = 0; i < rel.terms.size(); ++i) {
    const auto& t = rel.terms[i];
    if (i == 0) {
      out += std::to_string(t.y);
    } else {
      out += t.y < 0 ? " - " : " + ";
      out += std::to_string(std::llabs(t.y));
    }
    out += "*atan(1/" + t.x.get_str() + ")";
  }
  out += " = " + std::to_string(rel.r) + "*pi/4";
  return out;
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_single_spaces(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ' ') {
      if (i == start) throw ParseError("empty token (leading, trailing or doubled space)", i + 1);
      tokens.push_back({line.substr(start, i - start), start + 1});
      start = i + 1;
    }
  }
  return tokens;
}

bool is_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void check_canonical_digits(std::string_view s, std::size_t column) {
  if (!is_digits(s)) throw ParseError("expected decimal digits", column);
  if (s.size() > 1 && s.front() == '0') throw ParseError("leading zero", column);
}

std::int64_t parse_int(std::string_view s, bool allow_sign, std::size_t column) {
  std::string_view digits = s;
  if (allow_sign && !digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  check_canonical_digits(digits, column + (s.size() - digits.size()));
  if (digits != s && digits == "0") throw ParseError("negative zero", column);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("integer out of range", column);
  return v;
}

Term parse_term(const Token& tok, bool first) {
  constexpr std::string_view mid = "*atan(1/";
  const auto star = tok.text.find(mid);
  if (star == std::string_view::npos) throw ParseError("expected <y>*atan(1/<x>)", tok.column);
  if (tok.text.back() != ')') throw ParseError("expected closing ')'", tok.column + tok.text.size() - 1);
  const std::string_view ytext = tok.text.substr(0, star);
  const std::size_t xpos = star + mid.size();
  const std::string_view xtext = tok.text.substr(xpos, tok.text.size() - xpos - 1);
  Term t;
  t.y = parse_int(ytext, first, tok.column);
  check_canonical_digits(xtext, tok.column + xpos);
  t.x = mpz_class(std::string(xtext), 10);
  return t;
}

}  // namespace

ArctanRelation parse_relation(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto tokens = split_single_spaces(line);
  if (tokens.size() < 3 || tokens.size() % 2 == 0) {
    throw ParseError("expected <term> (<+|-> <term>)* = <r>*pi/4", 1);
  }
  ArctanRelation rel;
  rel.terms.push_back(parse_term(tokens[0], true));
  std::size_t i = 1;
  for (; i + 2 < tokens.size(); i += 2) {
    const auto& op = tokens[i];
    if (op.text != "+" && op.text != "-") throw ParseError("expected '+' or '-'", op.column);
    Term t = parse_term(tokens[i + 1], false);
    if (op.text == "-") t.y = -t.y;
    rel.terms.push_back(std::move(t));
  }
  if (tokens[i].text != "=") throw ParseError("expected '='", tokens[i].column);
  const auto& rtok = tokens[i + 1];
  constexpr std::string_view suffix = "*pi/4";
  if (rtok.text.size() <= suffix.size() || !rtok.text.ends_with(suffix)) {
    throw ParseError("expected <r>*pi/4", rtok.column);
  }
  rel.r = parse_int(rtok.text.substr(0, rtok.text.size() - suffix.size()), true, rtok.column);
  return rel;
}

std::vector<CorpusEntry> parse_corpus(std::string_view text) {
  std::vector<CorpusEntry> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    try {
      out.push_back({line_no, parse_relation(line)});
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(), e.column());
    }
  }
  return out;
}

// ---- Stormer's criterion -----------------------------------------------------

Basis::Basis(std::vector<mpz_class> moduli) : moduli_(std::move(moduli)) {
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    const auto& m = moduli_[j];
    if (m <= 1) throw BadBasis("basis modulus " + m.get_str() + " must exceed 1");
    if (m % 2 == 0) throw BadBasis("basis modulus " + m.get_str() + " is even");
    try {
      etas_.push_back(split_sum_two_squares(m));
    } catch (const NotSplittable& e) {
      throw BadBasis("basis modulus " + m.get_str() + " is not a norm: " + e.what());
    }
    for (std::size_t i = 0; i < j; ++i) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), moduli_[i].get_mpz_t());
      if (g != 1) throw BadBasis("basis moduli " + moduli_[i].get_str() + " and " + m.get_str() + " share a factor");
    }
  }
}

std::variant<ExponentSignature, NotSmooth> reduce(const mpz_class& x, const Basis& basis) {
  if (x < 1) throw std::invalid_argument("reduce: x must be positive");
  mpz_class n = x * x + 1;
  ExponentSignature sig;
  sig.x = x;
  if (n % 2 == 0) {
    n /= 2;
    sig.v = 1;
  }
  const GInt target(x, 1);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const mpz_class& m = basis.moduli()[j];
    ModulusExponent me{m, 0, 1};
    while (mpz_divisible_p(n.get_mpz_t(), m.get_mpz_t())) {
      mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
      ++me.e;
    }
    if (me.e > 0) {
      const GInt eta_e = pow(basis.etas()[j], me.e);
      if (exact_divide(target, eta_e)) {
        me.sign = 1;
      } else if (exact_divide(target, eta_e.conj())) {
        me.sign = -1;
      } else {
        me.sign = 0;
      }
    }
    sig.exps.push_back(std::move(me));
  }
  if (n != 1) return NotSmooth{n};
  return sig;
}

std::variant<ExponentSignature, NotSmooth> reduce(const mpz_class& x, const std::vector<mpz_class>& moduli) {
  return reduce(x, Basis(moduli));
}

std::optional<GInt> signature_unit(const ExponentSignature& sig, const Basis& basis) {
  if (sig.exps.size() != basis.size()) throw BadBasis("signature_unit: basis size mismatch");
  GInt q(sig.x, 1);
  auto divide = [&q](const GInt& d) {
    auto r = exact_divide(q, d);
    if (!r) return false;
    q = std::move(*r);
    return true;
  };
  if (sig.v == 1 && !divide(GInt(1, 1))) return std::nullopt;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const auto& me = sig.exps[j];
    if (me.e == 0) continue;
    if (me.sign == 0) return std::nullopt;
    const GInt eta = me.sign > 0 ? basis.etas()[j] : basis.etas()[j].conj();
    if (!divide(pow(eta, me.e))) return std::nullopt;
  }
  if (!q.is_unit()) return std::nullopt;
  return q;
}

bool sign_condition_applies(const mpz_class& xa, const mpz_class& xb, const mpz_class& m) {
  const mpz_class na = xa * xa + 1;
  const mpz_class nb = xb * xb + 1;
  return mpz_divisible_p(na.get_mpz_t(), m.get_mpz_t()) && mpz_divisible_p(nb.get_mpz_t(), m.get_mpz_t());
}

bool sign_condition(const mpz_class& xa, const mpz_class& xb, const mpz_class& m) {
  if (!sign_condition_applies(xa, xb, m)) {
    throw NotApplicable("sign_condition: " + m.get_str() + " does not divide both " + xa.get_str() +
                        "^2+1 and " + xb.get_str() + "^2+1");
  }
  const mpz_class d = xa - xb;
  const mpz_class s = xa + xb;
  return mpz_divisible_p(d.get_mpz_t(), m.get_mpz_t()) || mpz_divisible_p(s.get_mpz_t(), m.get_mpz_t());
}

namespace {

std::array<std::int64_t, 3> cross_minors(const std::array<std::int64_t, 3>& s,
                                         const std::array<std::int64_t, 3>& t) {
  return {s[1] * t[2] - s[2] * t[1], s[2] * t[0] - s[0] * t[2], s[0] * t[1] - s[1] * t[0]};
}

std::optional<ArctanRelation> relation_from(const std::array<ExponentSignature, 3>& sigs,
                                            std::array<std::int64_t, 3> y) {
  std::int64_t g = 0;
  for (auto v : y) g = std::gcd(g, v);
  if (g == 0) return std::nullopt;
  ArctanRelation rel;
  for (std::size_t i = 0; i < 3; ++i) rel.terms.push_back({sigs[i].x, y[i] / g});
  const auto r = infer_r(rel.terms);
  if (!r) return std::nullopt;
  rel.r = *r;
  return canonicalize(std::move(rel));
}

}  // namespace

DeriveOutcome derive_coefficients(const std::array<ExponentSignature, 3>& sigs) {
  for (const auto& sg : sigs) {
    if (sg.exps.size() != 2) throw BadBasis("derive_coefficients: signatures must use a two-modulus basis");
    if (sg.exps[0].modulus != sigs[0].exps[0].modulus || sg.exps[1].modulus != sigs[0].exps[1].modulus) {
      throw BadBasis("derive_coefficients: signatures use different bases");
    }
    if (sg.x <= 1) throw MalformedRelation("derive_coefficients: x must exceed 1");
  }
  if (sigs[0].x == sigs[1].x || sigs[0].x == sigs[2].x || sigs[1].x == sigs[2].x) {
    throw MalformedRelation("derive_coefficients: arguments must be distinct");
  }

  std::array<std::int64_t, 3> s{}, t{};
  bool signs_known = true;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& k = sigs[i].exps[0];
    const auto& l = sigs[i].exps[1];
    if ((k.e > 0 && k.sign == 0) || (l.e > 0 && l.sign == 0)) signs_known = false;
    s[i] = static_cast<std::int64_t>(k.e) * (k.sign < 0 ? -1 : 1);
    t[i] = static_cast<std::int64_t>(l.e) * (l.sign < 0 ? -1 : 1);
  }

  auto classify = [](ArctanRelation rel, bool fallback) {
    DeriveOutcome out;
    out.kind = rel.r == 0 ? DeriveKind::ZeroR : DeriveKind::Relation;
    out.relation = std::move(rel);
    out.used_fallback = fallback;
    return out;
  };

  if (signs_known) {
    const auto y = cross_minors(s, t);
    if (y[0] == 0 || y[1] == 0 || y[2] == 0) return {DeriveKind::Degenerate, {}, false};
    if (auto rel = relation_from(sigs, y)) return classify(std::move(*rel), false);
  }

  // flip the relative sign of k_i and l_i for each index
  for (unsigned pattern = 0; pattern < 8; ++pattern) {
    std::array<std::int64_t, 3> tp = t;
    for (std::size_t i = 0; i < 3; ++i) {
      if (pattern & (1U << i)) tp[i] = -tp[i];
    }
    const auto y = cross_minors(s, tp);
    if (y[0] == 0 || y[1] == 0 || y[2] == 0) continue;
    if (auto rel = relation_from(sigs, y)) return classify(std::move(*rel), true);
  }
  throw InconsistentSigns("derive_coefficients: no sign resolution verifies for x = (" + sigs[0].x.get_str() +
                          ", " + sigs[1].x.get_str() + ", " + sigs[2].x.get_str() + ")");
}

ArctanRelation stormer_identity(const mpz_class& a, const mpz_class& x, const mpz_class& y,
                                const mpz_class& z) {
  if (x * x + 1 != a * y) throw std::invalid_argument("stormer_identity: requires x^2 + 1 = a*y");
  const mpz_class p = a * z - x;
  const mpz_class q = a * z + a - x;
  const mpz_class s = a * z * (z + 1) - (2 * z + 1) * x + y;
  for (const mpz_class* v : {&p, &q, &s}) {
    if (*v <= 1) throw OutOfRange("stormer_identity: generated argument " + v->get_str() + " <= 1");
  }
  ArctanRelation rel;
  auto add = [&rel](const mpz_class& arg, std::int64_t coeff) {
    for (auto& t : rel.terms) {
      if (t.x == arg) {
        t.y += coeff;
        return;
      }
    }
    rel.terms.push_back({arg, coeff});
  };
  add(p, 1);
  add(q, -1);
  add(s, -1);
  std::erase_if(rel.terms, [](const Term& t) { return t.y == 0; });
  rel.r = 0;
  return rel;
}

}  // namespace machin
