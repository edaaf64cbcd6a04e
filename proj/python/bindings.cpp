#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include "hyperchord/analysis.hpp"
#include "hyperchord/chord.hpp"
#include "hyperchord/dot.hpp"
#include "hyperchord/sampling.hpp"
#include "hyperchord/specfun.hpp"

namespace py = pybind11;
using namespace hyperchord;

namespace {

py::array_t<double> to_array(std::vector<double>&& values) {
  auto* heap = new std::vector<double>(std::move(values));
  py::capsule owner(heap, [](void* p) { delete static_cast<std::vector<double>*>(p); });
  return py::array_t<double>(heap->size(), heap->data(), owner);
}

ChordMethod parse_method(const std::string& name) {
  if (name == "pairwise") return ChordMethod::PairwisePoints;
  if (name == "inverse-cdf") return ChordMethod::InverseCdf;
  throw ValidationError("method must be 'pairwise' or 'inverse-cdf'");
}

DistanceSample as_sample(py::array_t<double, py::array::c_style | py::array::forcecast> values) {
  return DistanceSample(std::vector<double>(values.data(), values.data() + values.size()), "python");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chord-length and dot-product distributions on the N-sphere.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<UnsupportedDimensionError>(m, "UnsupportedDimensionError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

  m.def("log_gamma", &specfun::log_gamma, py::arg("x"));
  m.def("log_beta", &specfun::log_beta, py::arg("a"), py::arg("b"));
  m.def("reg_inc_beta", [](double x, double a, double b) { return specfun::reg_inc_beta(x, a, b); },
        py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("inv_reg_inc_beta", [](double p, double a, double b) { return specfun::inv_reg_inc_beta(p, a, b); },
        py::arg("p"), py::arg("a"), py::arg("b"));
  m.def("reg_inc_beta_step", &specfun::reg_inc_beta_step, py::arg("i_prev"), py::arg("x"),
        py::arg("a"), py::arg("b"));

  py::class_<ChordDistribution>(m, "ChordDistribution")
      .def(py::init<int, double>(), py::arg("dim"), py::arg("radius") = 1.0)
      .def_property_readonly("dim", &ChordDistribution::dim)
      .def_property_readonly("radius", &ChordDistribution::radius)
      .def("cap_radius", &ChordDistribution::cap_radius, py::arg("d"))
      .def("cap_height", &ChordDistribution::cap_height, py::arg("d"))
      .def("colatitude", &ChordDistribution::colatitude, py::arg("d"))
      .def("cap_area_fraction", &ChordDistribution::cap_area_fraction, py::arg("phi"))
      .def("cdf", py::vectorize(&ChordDistribution::cdf), py::arg("d"))
      .def("pdf", py::vectorize(&ChordDistribution::pdf), py::arg("d"))
      .def("quantile", py::vectorize(&ChordDistribution::quantile), py::arg("p"))
      .def("moment", &ChordDistribution::moment, py::arg("k"))
      .def("mean", &ChordDistribution::mean)
      .def("variance", &ChordDistribution::variance)
      .def("bertrand_probability", &ChordDistribution::bertrand_probability)
      .def("closed_form_cdf", &ChordDistribution::closed_form_cdf, py::arg("d"))
      .def("__repr__", [](const ChordDistribution& d) {
        return "ChordDistribution(dim=" + std::to_string(d.dim()) + ", radius=" +
               py::repr(py::float_(d.radius())).cast<std::string>() + ")";
      });

  py::class_<DotProductDistribution>(m, "DotProductDistribution")
      .def(py::init<int>(), py::arg("dim"))
      .def_property_readonly("dim", &DotProductDistribution::dim)
      .def("cdf", py::vectorize(&DotProductDistribution::cdf), py::arg("c"))
      .def("pdf", py::vectorize(&DotProductDistribution::pdf), py::arg("c"))
      .def("quantile", py::vectorize(&DotProductDistribution::quantile), py::arg("p"))
      .def("even_moment", &DotProductDistribution::even_moment, py::arg("lam"))
      .def("moment", &DotProductDistribution::moment, py::arg("k"))
      .def("mean", &DotProductDistribution::mean)
      .def("variance", &DotProductDistribution::variance);

  m.def(
      "sample_chords",
      [](int dim, std::size_t count, std::uint64_t seed, double radius, const std::string& method) {
        SampleSpec spec{dim, radius, count, seed, parse_method(method), 1};
        std::vector<double> out;
        {
          py::gil_scoped_release release;
          out = sample_chords(spec);
        }
        return to_array(std::move(out));
      },
      py::arg("dim"), py::arg("count"), py::arg("seed") = 0, py::arg("radius") = 1.0,
      py::arg("method") = "pairwise");
  m.def(
      "sample_dot_products",
      [](int dim, std::size_t count, std::uint64_t seed, const std::string& method) {
        return to_array(sample_dot_products(dim, count, seed, parse_method(method)));
      },
      py::arg("dim"), py::arg("count"), py::arg("seed") = 0, py::arg("method") = "pairwise");
  m.def(
      "sample_sphere_points",
      [](int dim, std::size_t count, std::uint64_t seed, double radius) {
        auto flat = to_array(sample_sphere_points(dim, radius, count, seed));
        return flat.reshape({static_cast<py::ssize_t>(count), static_cast<py::ssize_t>(dim)});
      },
      py::arg("dim"), py::arg("count"), py::arg("seed") = 0, py::arg("radius") = 1.0);

  m.def("empirical_cdf",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> values, double d) {
          return empirical_cdf(as_sample(values), d);
        },
        py::arg("values"), py::arg("d"));
  m.def("ks_statistic",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> values,
           const ChordDistribution& dist) { return ks_statistic(as_sample(values), dist); },
        py::arg("values"), py::arg("dist"));
  m.def(
      "gof_test",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values,
         const ChordDistribution& dist, double alpha) {
        const GofReport r = gof_test(as_sample(values), dist, alpha);
        py::dict out;
        out["statistic"] = r.statistic;
        out["p_bound"] = r.p_bound;
        out["n"] = r.n;
        out["null_dim"] = r.null_dim;
        out["null_radius"] = r.null_radius;
        out["alpha"] = r.alpha;
        out["critical_value"] = r.critical_value;
        out["verdict"] = r.verdict == GofVerdict::Rejected ? "rejected" : "consistent";
        return out;
      },
      py::arg("values"), py::arg("dist"), py::arg("alpha") = 0.01);
  m.def(
      "estimate_dimension",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> values,
         std::optional<double> radius, double alpha) {
        const DimensionEstimate e = estimate_dimension(as_sample(values), radius, alpha);
        py::dict out;
        out["best_dim"] = e.best_dim;
        out["ks_at_best"] = e.ks_at_best;
        out["lower_bound"] = e.lower_bound;
        out["upper_bound"] = e.upper_bound ? py::object(py::int_(*e.upper_bound)) : py::object(py::none());
        out["radius_estimate"] = e.radius_estimate;
        out["critical_value"] = e.critical_value;
        out["consistent"] = e.consistent;
        return out;
      },
      py::arg("values"), py::arg("radius") = py::none(), py::arg("alpha") = 0.01);
  m.def("quantile_range", &quantile_range, py::arg("dist"), py::arg("q"));
  m.def(
      "quantile_table",
      [](const std::vector<int>& dims, const std::vector<int>& qs, double radius) {
        const QuantileTable t = quantile_table(dims, qs, radius);
        py::dict out;
        for (const auto& c : t.cells) out[py::make_tuple(c.dim, c.q)] = c.range;
        return out;
      },
      py::arg("dims") = kDefaultTableDims, py::arg("qs") = kDefaultTableQs, py::arg("radius") = 1.0);
}
