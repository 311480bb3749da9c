// machin: command-line front end.
//
// Exit codes: 0 success, 1 verification or consistency failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "machin/bounds.hpp"
#include "machin/corpus.hpp"
#include "machin/errors.hpp"
#include "machin/precision.hpp"
#include "machin/relation.hpp"
#include "machin/stormer.hpp"

namespace {

using namespace machin;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

mpz_class parse_mpz(const std::string& s) {
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw UsageError("not an integer: " + s);
  return v;
}

// "12345", "1.4e57" or "e^40"; returns log m.
Real parse_log_modulus(const std::string& s) {
  try {
    if (s.rfind("e^", 0) == 0) return Real(s.substr(2));
    const Real m(s);
    if (!(m > 1)) throw UsageError("modulus must exceed 1: " + s);
    return boost::multiprecision::log(m);
  } catch (const std::runtime_error&) {
    throw UsageError("not a modulus: " + s);
  }
}

TableMode parse_mode(const std::string& s) { return s == "recompute" ? TableMode::Recompute : TableMode::AsPublished; }
TableFormat parse_format(const std::string& s) { return s == "tsv" ? TableFormat::Tsv : TableFormat::Text; }

int cmd_verify(const std::string& path) {
  const auto entries = parse_corpus(read_file(path));
  bool all = true;
  for (const auto& e : entries) {
    bool ok = false;
    std::string note;
    try {
      ok = verify(e.relation).verified;
    } catch (const MalformedRelation& ex) {
      note = std::string(" (") + ex.what() + ")";
    }
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " line " << e.line << ": " << format_relation(e.relation) << note << '\n';
  }
  std::cout << entries.size() << " relations, " << (all ? "all verified" : "some failed") << '\n';
  return all ? kOk : kFail;
}

int cmd_search(std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max, const std::string& format, unsigned threads,
               bool sieve) {
  EnumerationOptions opt;
  opt.threads = threads;
  opt.strategy = sieve ? EnumerationStrategy::Sieve : EnumerationStrategy::TrialDivision;
  if (format == "tsv") {
    std::cout << solutions_tsv(enumerate_solutions(m1, m2, x_max, opt));
    return kOk;
  }
  const SearchReport report = find_three_term(m1, m2, x_max, opt);
  std::cout << format_report(report);
  const ParityCensus census = parity_census(report.solutions);
  std::cout << "parity " << (census.violation ? "violated" : "ok") << '\n';
  return census.violation ? kFail : kOk;
}

int cmd_reduce(const std::string& x, const std::vector<std::string>& basis) {
  std::vector<mpz_class> moduli;
  for (const auto& b : basis) moduli.push_back(parse_mpz(b));
  const auto result = reduce(parse_mpz(x), moduli);
  if (const auto* ns = std::get_if<NotSmooth>(&result)) {
    std::cout << "x = " << x << ": not smooth, cofactor " << ns->cofactor.get_str() << '\n';
    return kOk;
  }
  const auto& sig = std::get<ExponentSignature>(result);
  std::cout << "x = " << sig.x.get_str() << ": v = " << sig.v;
  for (const auto& me : sig.exps) {
    std::cout << ", " << me.modulus.get_str() << "^" << me.e;
    if (me.e > 0) std::cout << (me.sign > 0 ? " (eta)" : me.sign < 0 ? " (conj eta)" : " (mixed)");
  }
  std::cout << '\n';
  return kOk;
}

int cmd_solve(const std::vector<std::uint64_t>& primes, std::uint64_t x_max) {
  const auto sols = enumerate_general(primes, x_max);
  std::cout << "x\tv";
  for (auto p : primes) std::cout << "\te_" << p;
  std::cout << '\n';
  for (const auto& s : sols) {
    std::cout << s.x << '\t' << s.v;
    for (auto e : s.exponents) std::cout << '\t' << e;
    std::cout << '\n';
  }
  return kOk;
}

std::string sci(const Real& v) { return to_sci(v, 6); }

void print_state(const TheoremState& s) {
  std::cout << "  " << s.row << ": log m1 <= " << sci(s.log_m1) << ", log m2 <= " << sci(s.log_m2)
            << ", KL <= " << sci(s.KL) << ", |y| <= " << sci(s.y_bound) << ", log x <= " << sci(s.x_log_bound)
            << ", |r| <= " << sci(s.r_bound) << '\n';
}

int cmd_theorem(TableMode mode) {
  TheoremOptions opt;
  opt.mode = mode;
  const auto rows = published_rows();
  const Case1Result a = theorem_case1(rows_of(rows, {CaseTag::Ai, CaseTag::Aii}), opt);
  std::cout << "case I (rows A):\n";
  for (const auto& s : a.per_row) print_state(s);
  print_state(a.max);
  const Case1Result all = theorem_case1(rows, opt);
  std::cout << "case I (all rows):\n";
  print_state(all.max);
  const Case2Result b = theorem_case2(rows, opt);
  std::cout << "case II:\n";
  std::cout << "  m1 < " << sci(boost::multiprecision::exp(b.log_m1_cap)) << '\n';
  print_state(b.caps);
  std::cout << "  H1 log branch " << (b.h1_log_branch ? "active" : "inactive") << '\n';
  return kOk;
}

int cmd_bounds(const std::string& m1, const std::string& m2, TableMode mode, TableFormat format) {
  const Real l1 = parse_log_modulus(m1);
  const Real l2 = parse_log_modulus(m2);
  const ExponentBound eb = exponent_bound_log(l1, l2, published_rows(), mode);
  const char* sep = format == TableFormat::Tsv ? "\t" : "  ";
  std::cout << "row" << sep << "m1>=" << sep << "C" << sep << "beta" << sep << "Y" << sep << "bound\n";
  for (const auto& r : eb.rows) {
    std::cout << r.variant << sep << r.floor_label << sep << sci(r.C) << sep << sci(r.beta) << sep << sci(r.Y_eff)
              << sep << sci(r.bound) << '\n';
  }
  std::cout << "max" << sep << eb.rows[eb.argmax].variant << sep << sci(eb.value) << '\n';
  return kOk;
}

int cmd_tables(const std::string& which, TableMode mode, TableFormat format) {
  if (which == "c1") {
    std::cout << emit_c1_report(format);
    return kOk;
  }
  int n = 0;
  try {
    n = std::stoi(which);
  } catch (const std::exception&) {
    throw UsageError("tables: expected 1-6 or c1, got " + which);
  }
  if (n < 1 || n > 6) throw UsageError("tables: expected 1-6 or c1, got " + which);
  std::cout << emit_table(n, mode, format);
  return kOk;
}

int cmd_pi(const std::string& id, std::size_t digits) {
  ArctanRelation rel;
  try {
    rel = formula(id);
  } catch (const std::out_of_range&) {
    throw UsageError("unknown formula id " + id);
  }
  std::cout << format_blocks(pi_from_relation(rel, digits));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Machin-type arctangent formulae: verification, search, bounds and pi"};
  app.require_subcommand(1);

  std::string mode = "as-published";
  std::string format = "text";
  std::uint64_t x_max = 0;
  std::size_t digits = 0;

  auto* verify_cmd = app.add_subcommand("verify", "verify every relation in a corpus file");
  std::string corpus;
  verify_cmd->add_option("file", corpus, "corpus file")->required();

  auto* search_cmd = app.add_subcommand("search", "three-term formulae over a basis {m1, m2}");
  std::uint64_t m1 = 0, m2 = 0;
  std::uint64_t x_max_pos = 0;
  unsigned threads = 1;
  bool sieve = false;
  search_cmd->add_option("m1", m1)->required();
  search_cmd->add_option("m2", m2)->required();
  search_cmd->add_option("limit", x_max_pos, "largest x");
  search_cmd->add_option("--x-max", x_max, "largest x");
  search_cmd->add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
  search_cmd->add_flag("--sieve", sieve, "visit only roots of x^2 = -1");
  search_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  auto* reduce_cmd = app.add_subcommand("reduce", "exponent signature of x over a basis");
  std::string rx;
  std::vector<std::string> basis;
  reduce_cmd->add_option("x", rx)->required();
  reduce_cmd->add_option("basis", basis)->required();

  auto* solve_cmd = app.add_subcommand("solve", "x with x^2+1 = 2^v prod p_i^e_i");
  std::vector<std::uint64_t> primes;
  solve_cmd->add_option("primes", primes)->required();
  solve_cmd->add_option("--x-max", x_max)->required();

  auto* bounds_cmd = app.add_subcommand("bounds", "exponent bound at (m1, m2), or the theorem chains");
  std::string bm1, bm2;
  bounds_cmd->add_option("m1", bm1, "m1 as an integer, decimal or e^N");
  bounds_cmd->add_option("m2", bm2);
  bounds_cmd->add_option("--mode", mode)->check(CLI::IsMember({"as-published", "recompute"}));
  bounds_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  auto* tables_cmd = app.add_subcommand("tables", "published constant tables 1-6, or c1");
  std::string which;
  tables_cmd->add_option("which", which)->required();
  tables_cmd->add_option("--mode", mode)->check(CLI::IsMember({"as-published", "recompute"}));
  tables_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "tsv"}));

  auto* pi_cmd = app.add_subcommand("pi", "digits of pi from a named formula");
  std::string pid;
  std::size_t digits_pos = 0;
  pi_cmd->add_option("id", pid)->required();
  pi_cmd->add_option("count", digits_pos, "number of digits");
  pi_cmd->add_option("--digits", digits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(corpus);
    if (*search_cmd) {
      const std::uint64_t xm = x_max != 0 ? x_max : x_max_pos;
      if (xm == 0) throw UsageError("search: x_max is required");
      return cmd_search(m1, m2, xm, format, threads, sieve);
    }
    if (*reduce_cmd) return cmd_reduce(rx, basis);
    if (*solve_cmd) return cmd_solve(primes, x_max);
    if (*bounds_cmd) {
      if (bm1.empty()) return cmd_theorem(parse_mode(mode));
      if (bm2.empty()) throw UsageError("bounds: give both m1 and m2, or neither");
      return cmd_bounds(bm1, bm2, parse_mode(mode), parse_format(format));
    }
    if (*tables_cmd) return cmd_tables(which, parse_mode(mode), parse_format(format));
    if (*pi_cmd) {
      const std::size_t d = digits != 0 ? digits : digits_pos;
      return cmd_pi(pid, d == 0 ? 100 : d);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const BadBasis& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const OutOfStatedDomain& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
