#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "machin/bounds.hpp"
#include "machin/corpus.hpp"
#include "machin/errors.hpp"
#include "machin/precision.hpp"
#include "machin/relation.hpp"
#include "machin/stormer.hpp"

namespace py = pybind11;
using namespace machin;

namespace {

// Python ints cross as decimal strings so arbitrary sizes survive.
mpz_class to_mpz(const py::int_& v) { return mpz_class(py::str(v).cast<std::string>()); }
py::int_ to_py(const mpz_class& v) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(v.get_str().c_str(), nullptr, 10))); }

ArctanRelation make_relation(const std::vector<std::pair<py::int_, std::int64_t>>& terms, std::int64_t r) {
  ArctanRelation rel;
  for (const auto& [x, y] : terms) rel.terms.push_back({to_mpz(x), y});
  rel.r = r;
  return rel;
}

py::list terms_of(const ArctanRelation& rel) {
  py::list out;
  for (const auto& t : rel.terms) out.append(py::make_tuple(to_py(t.x), t.y));
  return out;
}

py::dict solution_dict(const SolutionRecord& s) {
  py::dict d;
  d["x"] = s.x;
  d["v"] = s.v();
  d["k"] = s.k();
  d["l"] = s.l();
  d["parity"] = to_string(s.parity);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "C++ core of the machin package";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<MalformedRelation>(m, "MalformedRelation", base.ptr());
  py::register_exception<BadBasis>(m, "BadBasis", base.ptr());
  py::register_exception<OutOfRange>(m, "OutOfRange", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<BranchError>(m, "BranchError", base.ptr());
  py::register_exception<RelationNotVerified>(m, "RelationNotVerified", base.ptr());

  py::class_<ArctanRelation>(m, "Relation")
      .def(py::init(&make_relation), py::arg("terms"), py::arg("r"))
      .def_property_readonly("terms", &terms_of)
      .def_readonly("r", &ArctanRelation::r)
      .def("__str__", [](const ArctanRelation& r) { return format_relation(r); })
      .def("__repr__", [](const ArctanRelation& r) { return "Relation('" + format_relation(r) + "')"; })
      .def("__eq__", [](const ArctanRelation& a, const ArctanRelation& b) { return a == b; });

  m.def("parse_relation", [](const std::string& s) { return parse_relation(s); });
  m.def("format_relation", &format_relation);
  m.def("verify", [](const ArctanRelation& r) { return verify(r).verified; },
        "Exact check of the stated r.");
  m.def("known_formulae", [] {
    py::dict d;
    for (const auto& f : known_formulae()) d[py::str(f.id)] = f.relation;
    return d;
  });
  m.def("stormer_identity", [](const py::int_& a, const py::int_& x, const py::int_& y, const py::int_& z) {
    return stormer_identity(to_mpz(a), to_mpz(x), to_mpz(y), to_mpz(z));
  });

  m.def(
      "enumerate_solutions",
      [](std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max, unsigned threads) {
        std::vector<SolutionRecord> sols;
        {
          py::gil_scoped_release release;
          sols = enumerate_solutions(m1, m2, x_max, {EnumerationStrategy::TrialDivision, threads});
        }
        py::list out;
        for (const auto& s : sols) out.append(solution_dict(s));
        return out;
      },
      py::arg("m1"), py::arg("m2"), py::arg("x_max"), py::arg("threads") = 1);

  m.def("find_three_term", [](std::uint64_t m1, std::uint64_t m2, std::uint64_t x_max) {
    const SearchReport rep = find_three_term(m1, m2, x_max);
    py::dict d;
    py::list sols, rels, rejected;
    for (const auto& s : rep.solutions) sols.append(solution_dict(s));
    for (const auto& r : rep.relations) rels.append(r);
    for (const auto& r : rep.rejected) {
      rejected.append(py::make_tuple(py::make_tuple(r.xs[0], r.xs[1], r.xs[2]), to_string(r.reason)));
    }
    d["solutions"] = sols;
    d["relations"] = rels;
    d["rejected"] = rejected;
    return d;
  });

  m.def("pure_power_scan", [](std::uint64_t x_max, unsigned n_max) {
    py::list out;
    for (const auto& p : pure_power_scan(x_max, n_max)) out.append(py::make_tuple(p.x, p.e, p.y, p.n));
    return out;
  });

  m.def("tau_for", [](const std::string& y0, const std::string& psi_num, const std::string& psi_den) {
    return to_fixed(tau_for(Real(y0), Real(psi_num) / Real(psi_den)), 12);
  }, py::arg("Y0"), py::arg("psi_num"), py::arg("psi_den") = "1",
     "tau for Y0 and psi = psi_num / psi_den, as a decimal string.");

  m.def("exponent_bound", [](const std::string& log_m1, const std::string& log_m2, bool recompute) {
    const auto eb = exponent_bound_log(Real(log_m1), Real(log_m2), published_rows(),
                                       recompute ? TableMode::Recompute : TableMode::AsPublished);
    return py::make_tuple(to_sci(eb.value, 12), eb.rows[eb.argmax].variant);
  }, py::arg("log_m1"), py::arg("log_m2"), py::arg("recompute") = false);

  m.def("table", [](int which, bool recompute, bool tsv) {
    return emit_table(which, recompute ? TableMode::Recompute : TableMode::AsPublished,
                      tsv ? TableFormat::Tsv : TableFormat::Text);
  }, py::arg("which"), py::arg("recompute") = false, py::arg("tsv") = true);

  m.def("pi_digits", [](const ArctanRelation& rel, std::size_t digits) {
    py::gil_scoped_release release;
    return pi_from_relation(rel, digits).str();
  });

  m.def("numeric_check", [](const ArctanRelation& rel, std::size_t digits) { return numeric_check(rel, digits); },
        py::arg("relation"), py::arg("digits") = 50);
}
