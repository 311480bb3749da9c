#include "machin/stormer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "machin/errors.hpp"

namespace machin {

ParityTag parity_tag(unsigned e) {
  if (e == 0) return ParityTag::Zero;
  return e % 2 == 1 ? ParityTag::Odd : ParityTag::EvenNonzero;
}

const char* to_string(ParityTag t) {
  switch (t) {
    case ParityTag::Zero: return "zero";
    case ParityTag::Odd: return "odd";
    case ParityTag::EvenNonzero: return "even";
  }
  return "?";
}

std::string to_string(const ParityClass& c) {
  return std::string(to_string(c[0])) + "/" + to_string(c[1]) + "/" + to_string(c[2]);
}

const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::SignConditionFailed: return "SignConditionFailed";
    case RejectReason::ZeroR: return "ZeroR";
    case RejectReason::Degenerate: return "Degenerate";
    case RejectReason::Inconsistent: return "Inconsistent";
  }
  return "?";
}

namespace {

constexpr std::uint64_t kMaxX = 0xFFFFFFFFULL;

void check_pair(std::uint64_t m1, std::uint64_t m2) {
  if (m1 <= 1 || m2 <= 1) throw BadBasis("moduli must exceed 1");
  if (m1 % 2 == 0 || m2 % 2 == 0) throw BadBasis("moduli must be odd");
  if (m1 >= m2) throw BadBasis("moduli must satisfy m1 < m2");
  if (std::gcd(m1, m2) != 1) throw BadBasis("moduli must be coprime");
}

// Lazily split moduli: an odd modulus dividing some x^2+1 is always a norm, while a
// modulus such as 3 can appear in a basis that never divides anything.
class LazyEtas {
 public:
  explicit LazyEtas(std::vector<std::uint64_t> moduli) : moduli_(std::move(moduli)), etas_(moduli_.size()) {}

  const GInt& eta(std::size_t j) {
    if (!etas_[j]) etas_[j] = split_sum_two_squares(mpz_class(static_cast<unsigned long>(moduli_[j])));
    return *etas_[j];
  }

 private:
  std::vector<std::uint64_t> moduli_;
  std::vector<std::optional<GInt>> etas_;
};

int side_of(const mpz_class& x, const GInt& eta, unsigned e) {
  const GInt target(x, 1);
  const GInt eta_e = pow(eta, e);
  if (exact_divide(target, eta_e)) return 1;
  if (exact_divide(target, eta_e.conj())) return -1;
  return 0;
}

// Odd part of x^2+1 must be m1^k m2^l; returns false otherwise.
bool factor_over(std::uint64_t x, std::uint64_t m1, std::uint64_t m2, unsigned& v, unsigned& k, unsigned& l) {
  std::uint64_t n = x * x + 1;
  v = 0;
  k = 0;
  l = 0;
  if ((n & 1ULL) == 0) {
    n >>= 1;
    v = 1;
  }
  while (n % m1 == 0) {
    n /= m1;
    ++k;
  }
  while (n % m2 == 0) {
    n /= m2;
    ++l;
  }
  return n == 1;
}

struct RawSolution {
  std::uint64_t x;
  unsigned v, k, l;
};

std::vector<RawSolution> scan_block_trial(std::uint64_t lo, std::uint64_t hi, std::uint64_t m1, std::uint64_t m2) {
  std::vector<RawSolution> out;
  for (std::uint64_t x = lo; x <= hi; ++x) {
    unsigned v, k, l;
    if (factor_over(x, m1, m2, v, k, l)) out.push_back({x, v, k, l});
  }
  return out;
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

std::uint64_t to_u64(const mpz_class& z) {
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
  return v;
}

// Roots of s^2 = -1 modulo m, ascending; empty when none exist.
std::vector<std::uint64_t> roots_of_minus_one(std::uint64_t m) {
  if (m == 1) return {0};
  if (m % 2 == 0) return {};
  std::vector<mpz_class> roots{0};
  mpz_class modulus = 1;
  for (const auto& [p, e] : factor_trial(to_mpz(m))) {
    if (p % 4 != 1) return {};
    // Hensel lift a root from p to p^e
    mpz_class s = sqrt_minus_one(p);
    mpz_class pk = p;
    for (unsigned i = 1; i < e; ++i) {
      const mpz_class next = pk * p;
      mpz_class inv, two_s = 2 * s;
      mpz_invert(inv.get_mpz_t(), two_s.get_mpz_t(), next.get_mpz_t());
      s = s - (s * s + 1) * inv;
      mpz_mod(s.get_mpz_t(), s.get_mpz_t(), next.get_mpz_t());
      pk = next;
    }
    const std::array<mpz_class, 2> local{s, pk - s};
    mpz_class inv;
    mpz_class mod_reduced = modulus % pk;
    mpz_invert(inv.get_mpz_t(), mod_reduced.get_mpz_t(), pk.get_mpz_t());
    std::vector<mpz_class> combined;
    for (const auto& ra : roots) {
      for (const auto& rb : local) {
        mpz_class t = ((rb - ra) * inv) % pk;
        if (t < 0) t += pk;
        combined.push_back(ra + modulus * t);
      }
    }
    roots = std::move(combined);
    modulus *= pk;
  }
  std::vector<std::uint64_t> out;
  for (const auto& r : roots) out.push_back(to_u64(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<RawSolution> scan_block_sieve(std::uint64_t lo, std::uint64_t hi, std::uint64_t m1, std::uint64_t m2,
                                          const std::vector<std::vector<std::uint64_t>>& roots) {
  std::vector<RawSolution> out;
  constexpr std::uint64_t kSegment = 1ULL << 18;
  const std::array<std::uint64_t, 2> moduli{m1, m2};
  std::vector<char> mark;
  for (std::uint64_t seg = lo; seg <= hi; seg += kSegment) {
    const std::uint64_t seg_hi = std::min(hi, seg + kSegment - 1);
    mark.assign(seg_hi - seg + 1, 0);
    if (seg == 1) mark[0] = 1;  // x = 1: x^2+1 = 2
    for (std::size_t j = 0; j < 2; ++j) {
      const std::uint64_t m = moduli[j];
      for (std::uint64_t r : roots[j]) {
        std::uint64_t first = seg - seg % m + r;
        if (first < seg) first += m;
        for (std::uint64_t x = first; x <= seg_hi; x += m) mark[x - seg] = 1;
      }
    }
    for (std::uint64_t x = seg; x <= seg_hi; ++x) {
      if (!mark[x - seg]) continue;
      unsigned v, k, l;
      if (factor_over(x, m1, m2, v, k, l)) out.push_back({x, v, k, l});
    }
  }
  return out;
}

}  // namespace

std::vector<SolutionRecord> enumerate_solutions(std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max,
                                                const EnumerationOptions& options) {
  check_pair(m1, m2);
  if (x_max > kMaxX) throw std::invalid_argument("enumerate_solutions: x_max must be below 2^32");
  if (x_max == 0) return {};

  std::vector<std::vector<std::uint64_t>> roots;
  if (options.strategy == EnumerationStrategy::Sieve) {
    roots = {roots_of_minus_one(m1), roots_of_minus_one(m2)};
  }
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    return options.strategy == EnumerationStrategy::Sieve ? scan_block_sieve(lo, hi, m1, m2, roots)
                                                          : scan_block_trial(lo, hi, m1, m2);
  };

  const std::uint64_t threads = std::clamp<std::uint64_t>(options.threads, 1, std::max<std::uint64_t>(1, x_max));
  std::vector<RawSolution> raw;
  if (threads == 1) {
    raw = scan(1, x_max);
  } else {
    std::vector<std::future<std::vector<RawSolution>>> parts;
    const std::uint64_t block = (x_max + threads - 1) / threads;
    for (std::uint64_t lo = 1; lo <= x_max; lo += block) {
      const std::uint64_t hi = std::min(x_max, lo + block - 1);
      parts.push_back(std::async(std::launch::async, scan, lo, hi));
    }
    for (auto& f : parts) {
      auto part = f.get();
      raw.insert(raw.end(), part.begin(), part.end());
    }
    std::sort(raw.begin(), raw.end(), [](const RawSolution& a, const RawSolution& b) { return a.x < b.x; });
  }

  LazyEtas etas({m1, m2});
  const std::array<std::uint64_t, 2> moduli{m1, m2};
  std::vector<SolutionRecord> out;
  out.reserve(raw.size());
  for (const auto& s : raw) {
    SolutionRecord rec;
    rec.x = s.x;
    rec.sig.x = to_mpz(s.x);
    rec.sig.v = s.v;
    const std::array<unsigned, 2> es{s.k, s.l};
    for (std::size_t j = 0; j < 2; ++j) {
      ModulusExponent me{to_mpz(moduli[j]), es[j], 1};
      if (es[j] > 0) me.sign = side_of(rec.sig.x, etas.eta(j), es[j]);
      rec.sig.exps.push_back(std::move(me));
    }
    rec.parity = {parity_tag(s.v), parity_tag(s.k), parity_tag(s.l)};
    out.push_back(std::move(rec));
  }
  return out;
}

ParityCensus parity_census(const std::vector<SolutionRecord>& solutions) {
  ParityCensus census;
  for (const auto& s : solutions) {
    ++census.counts[s.parity];
    ++census.total;
  }
  for (const auto& [cls, count] : census.counts) {
    const bool all_even = std::all_of(cls.begin(), cls.end(), [](ParityTag t) { return t != ParityTag::Odd; });
    if (count >= 2 || all_even) census.violation = true;
  }
  return census;
}

namespace {

// base^n, or 0 if it exceeds limit.
std::uint64_t bounded_pow(std::uint64_t base, unsigned n, std::uint64_t limit) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < n; ++i) {
    acc *= base;
    if (acc > limit) return 0;
  }
  return static_cast<std::uint64_t>(acc);
}

// floor(M^(1/n)) for M >= 1.
std::uint64_t integer_root(std::uint64_t m, unsigned n) {
  auto y = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<long double>(m), 1.0L / n)));
  if (y == 0) y = 1;
  while (y > 1 && bounded_pow(y, n, m) == 0) --y;
  while (bounded_pow(y + 1, n, m) != 0) ++y;
  return y;
}

bool is_exact_power(std::uint64_t m, unsigned n, std::uint64_t& root) {
  root = integer_root(m, n);
  return root > 1 && bounded_pow(root, n, m) == m;
}

}  // namespace

std::vector<PurePower> pure_power_scan(std::uint64_t x_max, unsigned n_max) {
  if (n_max < 3) throw std::invalid_argument("pure_power_scan: n_max must be at least 3");
  if (x_max > kMaxX) throw std::invalid_argument("pure_power_scan: x_max must be below 2^32");
  // any n >= 3 has a divisor in this list, so these exponents screen every candidate
  static constexpr unsigned kScreen[] = {3, 4, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61};
  std::vector<PurePower> out;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    std::uint64_t m = x * x + 1;
    unsigned e = 0;
    if ((m & 1ULL) == 0) {
      m >>= 1;
      e = 1;
    }
    if (m < 8) continue;
    bool candidate = false;
    for (unsigned n : kScreen) {
      if (n > n_max || (m >> std::min(n, 63U)) == 0) break;
      std::uint64_t y;
      if (is_exact_power(m, n, y)) {
        candidate = true;
        break;
      }
    }
    if (!candidate) continue;
    for (unsigned n = 3; n <= n_max && n < 64 && (m >> n) != 0; ++n) {
      std::uint64_t y;
      if (is_exact_power(m, n, y)) out.push_back({x, e, y, n});
    }
  }
  return out;
}

SearchReport find_three_term(std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max,
                             const EnumerationOptions& options) {
  SearchReport report;
  report.m1 = m1;
  report.m2 = m2;
  report.x_max = x_max;
  report.solutions = enumerate_solutions(m1, m2, x_max, options);

  std::vector<const SolutionRecord*> usable;
  for (const auto& s : report.solutions) {
    if (s.x > 1) usable.push_back(&s);
  }
  const std::array<mpz_class, 2> moduli{to_mpz(m1), to_mpz(m2)};

  std::set<std::string> seen;
  std::vector<std::pair<std::string, ArctanRelation>> found;
  for (std::size_t a = 0; a < usable.size(); ++a) {
    for (std::size_t b = a + 1; b < usable.size(); ++b) {
      for (std::size_t c = b + 1; c < usable.size(); ++c) {
        const std::array<const SolutionRecord*, 3> trio{usable[a], usable[b], usable[c]};
        Rejection rej;
        rej.xs = {trio[0]->x, trio[1]->x, trio[2]->x};

        bool sign_ok = true;
        for (const auto& m : moduli) {
          for (std::size_t i = 0; i < 3 && sign_ok; ++i) {
            for (std::size_t j = i + 1; j < 3 && sign_ok; ++j) {
              const auto& xi = trio[i]->sig.x;
              const auto& xj = trio[j]->sig.x;
              if (sign_condition_applies(xi, xj, m) && !sign_condition(xi, xj, m)) {
                sign_ok = false;
                rej.detail = "x = " + xi.get_str() + ", " + xj.get_str() + " mod " + m.get_str();
              }
            }
          }
        }
        if (!sign_ok) {
          rej.reason = RejectReason::SignConditionFailed;
          report.rejected.push_back(std::move(rej));
          continue;
        }

        try {
          const auto outcome = derive_coefficients({trio[0]->sig, trio[1]->sig, trio[2]->sig});
          switch (outcome.kind) {
            case DeriveKind::Relation: {
              std::string key = format_relation(outcome.relation);
              if (seen.insert(key).second) found.emplace_back(std::move(key), outcome.relation);
              break;
            }
            case DeriveKind::ZeroR:
              rej.reason = RejectReason::ZeroR;
              rej.detail = format_relation(outcome.relation);
              report.rejected.push_back(std::move(rej));
              break;
            case DeriveKind::Degenerate:
              rej.reason = RejectReason::Degenerate;
              report.rejected.push_back(std::move(rej));
              break;
          }
        } catch (const InconsistentSigns& e) {
          rej.reason = RejectReason::Inconsistent;
          rej.detail = e.what();
          report.rejected.push_back(std::move(rej));
        }
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) {
    const auto& a = p.second.terms;
    const auto& b = q.second.terms;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      if (a[i].x != b[i].x) return a[i].x < b[i].x;
    }
    if (a.size() != b.size()) return a.size() < b.size();
    return p.first < q.first;
  });
  for (auto& [key, rel] : found) report.relations.push_back(std::move(rel));
  return report;
}

std::vector<GeneralSolution> enumerate_general(const std::vector<std::uint64_t>& primes, std::uint64_t x_max) {
  if (x_max > kMaxX) throw std::invalid_argument("enumerate_general: x_max must be below 2^32");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const mpz_class p = to_mpz(primes[i]);
    if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
      throw std::invalid_argument("enumerate_general: " + p.get_str() + " is not prime");
    }
    if (primes[i] % 4 != 1) throw std::invalid_argument("enumerate_general: " + p.get_str() + " is not 1 mod 4");
    for (std::size_t j = 0; j < i; ++j) {
      if (primes[j] == primes[i]) throw std::invalid_argument("enumerate_general: primes must be distinct");
    }
  }
  std::vector<GeneralSolution> out;
  for (std::uint64_t x = 1; x <= x_max; ++x) {
    std::uint64_t n = x * x + 1;
    GeneralSolution s;
    s.x = x;
    if ((n & 1ULL) == 0) {
      n >>= 1;
      s.v = 1;
    }
    s.exponents.assign(primes.size(), 0);
    for (std::size_t i = 0; i < primes.size() && n > 1; ++i) {
      while (n % primes[i] == 0) {
        n /= primes[i];
        ++s.exponents[i];
      }
    }
    if (n == 1) out.push_back(std::move(s));
  }
  return out;
}

std::string format_report(const SearchReport& report) {
  std::ostringstream os;
  os << "basis " << report.m1 << ' ' << report.m2 << '\n';
  os << "x_max " << report.x_max << '\n';
  os << "solutions " << report.solutions.size() << '\n';
  for (const auto& s : report.solutions) {
    os << "solution " << s.x << ' ' << s.v() << ' ' << s.k() << ' ' << s.l() << ' ' << to_string(s.parity) << '\n';
  }
  os << "relations " << report.relations.size() << '\n';
  for (const auto& rel : report.relations) os << "relation " << format_relation(rel) << '\n';
  os << "rejected " << report.rejected.size() << '\n';
  for (const auto& rej : report.rejected) {
    os << "reject " << rej.xs[0] << ' ' << rej.xs[1] << ' ' << rej.xs[2] << ' ' << to_string(rej.reason);
    if (!rej.detail.empty()) os << ' ' << rej.detail;
    os << '\n';
  }
  return os.str();
}

std::string format_relations(const SearchReport& report) {
  std::string out;
  for (const auto& rel : report.relations) out += format_relation(rel) + "\n";
  return out;
}

std::string solutions_tsv(const std::vector<SolutionRecord>& solutions) {
  std::ostringstream os;
  os << "x\tv\tk\tl\tparity_class\n";
  for (const auto& s : solutions) {
    os << s.x << '\t' << s.v() << '\t' << s.k() << '\t' << s.l() << '\t' << to_string(s.parity) << '\n';
  }
  return os.str();
}

}  // namespace machin
