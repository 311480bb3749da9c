#pragma once

// Solutions of x^2 + 1 = 2^v * m1^k * m2^l and three-term formula discovery.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "machin/relation.hpp"

namespace machin {

enum class ParityTag { Zero, Odd, EvenNonzero };

ParityTag parity_tag(unsigned e);
const char* to_string(ParityTag t);

/// Tags for (v, k, l).
using ParityClass = std::array<ParityTag, 3>;

std::string to_string(const ParityClass& c);

struct SolutionRecord {
  std::uint64_t x = 0;
  ExponentSignature sig;
  ParityClass parity{};

  unsigned v() const { return sig.v; }
  unsigned k() const { return sig.exps.at(0).e; }
  unsigned l() const { return sig.exps.at(1).e; }
};

enum class EnumerationStrategy {
  TrialDivision,
  /// Visits only the residues x = +-s (mod m_j) with s^2 = -1, then trial-divides.
  Sieve,
};

struct EnumerationOptions {
  EnumerationStrategy strategy = EnumerationStrategy::TrialDivision;
  /// Worker threads; the x-range is split into disjoint blocks.
  unsigned threads = 1;
};

/// Every x in [1, x_max] with x^2 + 1 = 2^v * m1^k * m2^l, ascending.
/// Requires m1 < m2, both odd and > 1 (BadBasis otherwise); x_max < 2^32.
std::vector<SolutionRecord> enumerate_solutions(std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max,
                                                const EnumerationOptions& options = {});

struct ParityCensus {
  std::map<ParityClass, std::size_t> counts;
  std::size_t total = 0;
  /// Some class holds two or more solutions, or an all-even class is nonempty.
  bool violation = false;
};

ParityCensus parity_census(const std::vector<SolutionRecord>& solutions);

struct PurePower {
  std::uint64_t x = 0;
  unsigned e = 0;
  std::uint64_t y = 0;
  unsigned n = 0;

  friend bool operator==(const PurePower&, const PurePower&) = default;
};

/// All (x, e, y, n) with x <= x_max, 3 <= n <= n_max, y > 1, e in {0,1},
/// x^2 + 1 = 2^e * y^n. Throws std::invalid_argument when n_max < 3.
std::vector<PurePower> pure_power_scan(std::uint64_t x_max, unsigned n_max);

enum class RejectReason { SignConditionFailed, ZeroR, Degenerate, Inconsistent };

const char* to_string(RejectReason r);

struct Rejection {
  std::array<std::uint64_t, 3> xs{};
  RejectReason reason = RejectReason::Degenerate;
  /// For ZeroR, the r = 0 relation found.
  std::string detail;
};

struct SearchReport {
  std::uint64_t m1 = 0;
  std::uint64_t m2 = 0;
  std::uint64_t x_max = 0;
  std::vector<SolutionRecord> solutions;
  std::vector<ArctanRelation> relations;
  std::vector<Rejection> rejected;
};

/// Runs derive_coefficients on every 3-subset of solutions with x > 1 that passes
/// the pairwise sign condition; relations canonical, deduplicated and sorted.
SearchReport find_three_term(std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max,
                             const EnumerationOptions& options = {});

struct GeneralSolution {
  std::uint64_t x = 0;
  unsigned v = 0;
  std::vector<unsigned> exponents;

  friend bool operator==(const GeneralSolution&, const GeneralSolution&) = default;
};

/// All x <= x_max with x^2 + 1 = 2^v * prod p_i^e_i. Primes must be distinct,
/// prime and 1 mod 4 (std::invalid_argument otherwise).
std::vector<GeneralSolution> enumerate_general(const std::vector<std::uint64_t>& primes, std::uint64_t x_max);

// ---- serialization -----------------------------------------------------------

/// Line-oriented report: header, solutions, relations, rejections.
std::string format_report(const SearchReport& report);
/// Relations only, in the relation text format.
std::string format_relations(const SearchReport& report);
/// Columns: x, v, k, l, parity_class.
std::string solutions_tsv(const std::vector<SolutionRecord>& solutions);

}  // namespace machin
