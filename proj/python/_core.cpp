#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "satotate/charpoly.hpp"
#include "satotate/errors.hpp"
#include "satotate/lpoly.hpp"
#include "satotate/moments.hpp"
#include "satotate/sampling.hpp"
#include "satotate/serialize.hpp"
#include "satotate/stgroup.hpp"

namespace py = pybind11;
using namespace satotate;

namespace {

py::object py_int(const Int& v) { return py::module_::import("builtins").attr("int")(v.get_str()); }

py::object py_fraction(const Rational& v) {
  return py::module_::import("fractions").attr("Fraction")(to_string(v));
}

py::object py_json(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

int pick_generator(const CurveFamily& f, std::optional<int> generator) {
  return generator ? *generator : default_generator(f);
}

MomentOptions options(std::optional<int> generator, int threads) {
  MomentOptions o;
  o.generator = generator.value_or(0);
  o.threads = threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sato-Tate groups of y^2 = x^m - 1";

  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_ValueError);
  py::register_exception<CacheCorruption>(m, "CacheCorruption", PyExc_RuntimeError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  py::class_<CurveFamily>(m, "CurveFamily")
      .def(py::init<int>(), py::arg("m"))
      .def_property_readonly("m", &CurveFamily::m)
      .def_property_readonly("p", &CurveFamily::p)
      .def_property_readonly("genus", &CurveFamily::genus)
      .def_property_readonly("is_even", &CurveFamily::is_even)
      .def("__repr__", [](const CurveFamily& f) { return "CurveFamily(" + std::to_string(f.m()) + ")"; });

  m.def("default_generator", [](int mm) { return default_generator(CurveFamily(mm)); }, py::arg("m"));
  m.def("unit_group_generators", [](int mm) { return unit_group_generators(CurveFamily(mm)); },
        py::arg("m"));

  m.def(
      "gamma",
      [](int mm, std::optional<int> generator, bool adjusted) {
        const CurveFamily f(mm);
        const int a = pick_generator(f, generator);
        return py_json(to_json(adjusted ? build_gamma_beta_compatible(f, a) : build_gamma(f, a)));
      },
      py::arg("m"), py::arg("generator") = py::none(), py::arg("adjusted") = false);

  m.def(
      "verify",
      [](int mm, std::optional<int> generator) {
        const CurveFamily f(mm);
        const int a = pick_generator(f, generator);
        const auto checks = verify_family(f, a);
        std::optional<BlockUnitaryMatrix> gp;
        if (f.is_even()) gp = build_gamma_prime(f);
        const auto order = component_order_facts(f, build_gamma_beta_compatible(f, a), gp);
        bool ok = order.all_hold();
        for (const auto& c : checks) ok = ok && (c.passed || !c.required);
        Json out;
        out["m"] = mm;
        out["generator"] = a;
        out["passed"] = ok;
        out["checks"] = to_json(checks);
        out["order"] = to_json(order);
        return py_json(out);
      },
      py::arg("m"), py::arg("generator") = py::none());

  m.def("point_count", [](int mm, u64 q) { return point_count(CurveFamily(mm), PrimeField(q)); },
        py::arg("m"), py::arg("q"));
  m.def("trace_a1", [](int mm, u64 q) { return trace_a1(CurveFamily(mm), q); }, py::arg("m"),
        py::arg("q"));
  m.def(
      "lpoly_coeffs",
      [](int mm, u64 q, unsigned depth) { return lpoly_coeffs(CurveFamily(mm), q, depth); },
      py::arg("m"), py::arg("q"), py::arg("depth"));

  m.def(
      "scan",
      [](int mm, u64 bound, unsigned depth, unsigned threads, std::optional<std::filesystem::path> cache) {
        ScanConfig cfg;
        cfg.family = CurveFamily(mm);
        cfg.prime_bound = bound;
        cfg.depth = depth;
        cfg.worker_count = threads;
        cfg.cache_path = std::move(cache);
        std::vector<TraceRecord> records;
        {
          py::gil_scoped_release release;
          records = scan(cfg);
        }
        py::list out;
        for (const auto& r : records) out.append(py::make_tuple(r.q, r.a, r.deep));
        return out;
      },
      py::arg("m"), py::arg("bound"), py::arg("depth") = 1, py::arg("threads") = 1,
      py::arg("cache") = py::none());

  m.def(
      "numeric_moments",
      [](const std::vector<std::tuple<u64, i64, std::vector<i64>>>& rows, int i,
         const std::vector<int>& orders) {
        std::vector<TraceRecord> records;
        for (const auto& [q, a, deep] : rows) records.push_back({q, a, deep});
        py::list out;
        for (const auto& e : numeric_moments(records, i, orders)) {
          py::dict d;
          d["n"] = e.n;
          d["N"] = e.samples;
          d["value"] = e.value;
          d["standard_error"] = e.standard_error;
          d["exact"] = e.exact ? py_fraction(*e.exact) : py::none();
          out.append(d);
        }
        return out;
      },
      py::arg("records"), py::arg("i") = 1, py::arg("orders") = std::vector<int>{2, 4, 6, 8});

  m.def(
      "charpoly",
      [](int mm, int k, int j, std::optional<int> generator) {
        const CurveFamily f(mm);
        return char_poly_component(f, k, j, pick_generator(f, generator)).to_string();
      },
      py::arg("m"), py::arg("k"), py::arg("j") = 0, py::arg("generator") = py::none());

  m.def("u1_moment", [](int n) { return py_int(u1_moment(n)); }, py::arg("n"));
  m.def("u1_2_moment", [](int n) { return py_int(u1_2_moment(n)); }, py::arg("n"));
  m.def(
      "component_moment",
      [](int mm, int k, int j, int i, int n, std::optional<int> generator) {
        return py_int(component_moment(CurveFamily(mm), k, j, i, n, options(generator, 1)));
      },
      py::arg("m"), py::arg("k"), py::arg("j"), py::arg("i"), py::arg("n"),
      py::arg("generator") = py::none());
  m.def(
      "averaged_moment",
      [](int mm, int i, int n, const std::string& base, std::optional<int> generator) {
        return py_fraction(
            averaged_moment(CurveFamily(mm), i, n, parse_base_field(base), options(generator, 1)));
      },
      py::arg("m"), py::arg("i"), py::arg("n"), py::arg("base_field") = "Q",
      py::arg("generator") = py::none());
  m.def(
      "moment_table",
      [](int mm, int i, int n_max, const std::string& base, std::optional<int> generator,
         int threads) {
        MomentTable t;
        {
          py::gil_scoped_release release;
          t = moment_table(CurveFamily(mm), parse_base_field(base), i, n_max,
                           options(generator, threads));
        }
        return py_json(to_json(t));
      },
      py::arg("m"), py::arg("i") = 1, py::arg("n_max") = 10, py::arg("base_field") = "Q",
      py::arg("generator") = py::none(), py::arg("threads") = 1);
  m.def("multinomial_mu1_moment",
        [](int mm, int n) { return py_int(multinomial_mu1_moment(CurveFamily(mm), n)); },
        py::arg("m"), py::arg("n"));

  m.def(
      "haar_sample",
      [](int mm, std::uint64_t seed, std::size_t count, const std::string& base) {
        SampleBatch b;
        {
          py::gil_scoped_release release;
          b = haar_sample(CurveFamily(mm), seed, count, parse_base_field(base));
        }
        py::array_t<double> arr({b.count, static_cast<std::size_t>(b.genus)});
        std::copy(b.values.begin(), b.values.end(), arr.mutable_data());
        return arr;
      },
      py::arg("m"), py::arg("seed"), py::arg("count"), py::arg("base_field") = "Q");

  m.def(
      "check_conjectures",
      [](int mm, int n_max) {
        py::list out;
        for (const auto& r : check_conjectures(CurveFamily(mm), n_max)) {
          py::dict d;
          d["check"] = r.name;
          d["m"] = r.m;
          d["k"] = r.k;
          d["j"] = r.j;
          d["status"] = r.status;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("m"), py::arg("n_max") = 6);
}
