// Python extension: thin string-rational facade over the exact-arithmetic
// core.  Rationals cross the boundary as "p/q" strings, structured results as
// JSON strings produced by the same serializers the command-line tool uses,
// so both front ends always agree byte for byte.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "cantor/base_seq.hpp"
#include "cantor/index_set.hpp"
#include "cantor/json_io.hpp"
#include "cantor/metric.hpp"
#include "cantor/mixed_radix.hpp"
#include "cantor/rational.hpp"
#include "cantor/separation.hpp"
#include "cantor/submeasure.hpp"
#include "verify.hpp"

namespace py = pybind11;
using namespace cantor;

namespace {

Rational rat(const std::string& text) { return parse_rational(text); }

Submeasure ideal_of(const IndexSet& x) {
  return Submeasure::dyadic_weighted(x);
}

py::int_ big(const Integer& v) {
  std::string s = v.get_str();
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(s.c_str(), nullptr, 10));
}

py::dict digits_out(const BaseSeq& b, const std::string& value, uint64_t n) {
  SignedReal r(b, rat(value));
  py::list ds;
  for (const Integer& d : r.magnitude().digits(n)) ds.append(big(d));
  py::dict out;
  out["sign"] = r.sign();
  out["int"] = big(r.magnitude().integer_part());
  out["digits"] = ds;
  return out;
}

std::string jump_out(const BaseSeq& b, const std::string& value,
                     uint64_t depth) {
  SignedReal r(b, rat(value));
  return jump_to_json(r.magnitude().jump(depth)).dump();
}

std::string phi_out(const IndexSet& x, const BaseSeq& b,
                    const std::string& value, uint64_t depth) {
  SignedReal r(b, rat(value));
  RhoValue v = rho(ideal_of(x), r, SignedReal(b, Rational(0)), depth);
  return mass_to_json(v.phi).dump();
}

std::string member_out(const IndexSet& x, const BaseSeq& b,
                       const std::string& value, uint64_t depth) {
  SignedReal r(b, rat(value));
  return membership_to_json(carrier_membership(ideal_of(x), r, depth)).dump();
}

std::string rho_out(const IndexSet& x, const BaseSeq& b,
                    const std::string& first, const std::string& second,
                    uint64_t depth) {
  RhoValue v =
      rho(ideal_of(x), SignedReal(b, rat(first)), SignedReal(b, rat(second)),
          depth);
  return rho_to_json(v).dump();
}

std::string inclusion_out(const IndexSet& x, const IndexSet& y) {
  return inclusion_to_json(ideal_inclusion(ideal_of(x), ideal_of(y))).dump();
}

std::string separate_out(const IndexSet& x, const IndexSet& y,
                         const std::string& c, uint64_t count,
                         const BaseSeq& b) {
  return certificate_to_json(separation_certificate(x, y, rat(c), count, b))
      .dump();
}

std::string separate_csv_out(const IndexSet& x, const IndexSet& y,
                             const std::string& c, uint64_t count,
                             const BaseSeq& b) {
  return certificate_to_csv(separation_certificate(x, y, rat(c), count, b));
}

std::string verify_out(const std::string& suite, uint64_t seed,
                       uint64_t trials) {
  verify::SuiteReport rep = verify::run_suite(suite, seed, trials);
  Json checks = Json::array();
  for (const verify::CheckReport& c : rep.checks)
    checks.push_back(Json{
        {"name", c.name}, {"trials", c.trials}, {"failures", c.failures}});
  return Json{{"suite", rep.suite},
              {"seed", rep.seed},
              {"trials", rep.trials},
              {"ok", rep.ok()},
              {"checks", checks}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "exact mixed-radix expansions, weighted submeasure ideals, and "
      "separation certificates";

  py::class_<BaseSeq>(m, "Base")
      .def_static("constant", &BaseSeq::constant, py::arg("value"))
      .def_static("eventually_periodic", &BaseSeq::eventually_periodic,
                  py::arg("prefix"), py::arg("period"))
      .def_static("primorial_blocks", &BaseSeq::primorial_blocks,
                  py::arg("primes"))
      .def("value_at", &BaseSeq::value_at, py::arg("n"))
      .def("primes", [](const BaseSeq& b) { return b.primes(); });

  py::class_<IndexSet>(m, "IndexSet")
      .def_static("odds", &IndexSet::odds)
      .def_static("evens", &IndexSet::evens)
      .def_static("finite", &IndexSet::finite, py::arg("members"))
      .def_static("parse_bits", &IndexSet::parse_bits, py::arg("prefix_bits"),
                  py::arg("period_bits"))
      .def("contains", &IndexSet::contains, py::arg("k"))
      .def("prefix_bits", &IndexSet::prefix_bits)
      .def("period_bits", &IndexSet::period_bits);

  m.def("digits", &digits_out, py::arg("base"), py::arg("value"),
        py::arg("n") = 128);
  m.def("jump_json", &jump_out, py::arg("base"), py::arg("value"),
        py::arg("depth") = 128);
  m.def("phi_json", &phi_out, py::arg("x"), py::arg("base"), py::arg("value"),
        py::arg("depth") = 128);
  m.def("member_json", &member_out, py::arg("x"), py::arg("base"),
        py::arg("value"), py::arg("depth") = 128);
  m.def("rho_json", &rho_out, py::arg("x"), py::arg("base"), py::arg("first"),
        py::arg("second"), py::arg("depth") = 128);
  m.def("inclusion_json", &inclusion_out, py::arg("x"), py::arg("y"));
  m.def("separate_json", &separate_out, py::arg("x"), py::arg("y"),
        py::arg("c") = "1", py::arg("count") = 3,
        py::arg("base") = BaseSeq::constant(10));
  m.def("separate_csv", &separate_csv_out, py::arg("x"), py::arg("y"),
        py::arg("c") = "1", py::arg("count") = 3,
        py::arg("base") = BaseSeq::constant(10));
  m.def("verify_json", &verify_out, py::arg("suite"), py::arg("seed") = 0,
        py::arg("trials") = 200);
}
