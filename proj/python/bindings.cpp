#include "rtsgs/biortho.hpp"
#include "rtsgs/diagnostics.hpp"
#include "rtsgs/lanczos.hpp"
#include "rtsgs/rbiortho.hpp"
#include "rtsgs/sketching.hpp"
#include "rtsgs/testmatrices.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace rtsgs;

namespace {

Variant variant_of(const std::string& name) { return parse_variant(name); }

SketchOperator make_sketch(const std::string& kind, Index s, Index n, std::uint64_t seed, Index zeta,
                           const std::string& scaling) {
  switch (parse_sketch_kind(kind)) {
    case SketchKind::SparseSign:
      return SketchOperator::sparse_sign(s, n, zeta > 0 ? zeta : default_zeta(s), seed, parse_sketch_scaling(scaling));
    case SketchKind::Gaussian: return SketchOperator::gaussian(s, n, seed);
    case SketchKind::Identity: return SketchOperator::identity(n);
  }
  throw std::invalid_argument("unknown sketch kind");
}

RBiorthConfig rconfig(const std::string& variant, int passes, const SketchOperator& sketch, bool mixed) {
  RBiorthConfig cfg;
  cfg.variant = variant_of(variant);
  cfg.passes = passes;
  cfg.sketch = sketch;
  cfg.precision = mixed ? PrecisionPolicy::mixed() : PrecisionPolicy::uniform();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-sided Gram-Schmidt biorthogonalization, deterministic and sketched";

  py::register_exception<NearBreakdown>(m, "NearBreakdown", PyExc_ArithmeticError);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", PyExc_ValueError);

  py::class_<SketchOperator>(m, "SketchOperator")
      .def(py::init(&make_sketch), py::arg("kind"), py::arg("s"), py::arg("n"), py::arg("seed") = 0,
           py::arg("zeta") = 0, py::arg("scaling") = "standard")
      .def_property_readonly("kind", [](const SketchOperator& op) { return to_string(op.kind()); })
      .def_property_readonly("shape", [](const SketchOperator& op) { return py::make_tuple(op.rows(), op.cols()); })
      .def_property_readonly("zeta", &SketchOperator::zeta)
      .def_property_readonly("seed", &SketchOperator::seed)
      .def("apply", [](const SketchOperator& op, const MatrixD& M) { return op.apply(M); }, py::arg("M"))
      .def("materialize", &SketchOperator::materialize);

  auto status_of = [](const Status& s) { return to_string(s); };

  py::class_<BiorthResult>(m, "BiorthResult")
      .def_readonly("Q", &BiorthResult::Q)
      .def_readonly("P", &BiorthResult::P)
      .def_readonly("TX", &BiorthResult::TX)
      .def_readonly("TY", &BiorthResult::TY)
      .def_readonly("d", &BiorthResult::d)
      .def_property_readonly("status", [status_of](const BiorthResult& r) { return status_of(r.status); });

  py::class_<RBiorthResult>(m, "RBiorthResult")
      .def_readonly("Q", &RBiorthResult::Q)
      .def_readonly("P", &RBiorthResult::P)
      .def_readonly("SQ", &RBiorthResult::SQ)
      .def_readonly("SP", &RBiorthResult::SP)
      .def_readonly("TX", &RBiorthResult::TX)
      .def_readonly("TY", &RBiorthResult::TY)
      .def_readonly("d", &RBiorthResult::d)
      .def_property_readonly("status", [status_of](const RBiorthResult& r) { return status_of(r.status); });

  py::class_<LanczosResult>(m, "LanczosResult")
      .def_readonly("Q", &LanczosResult::Q)
      .def_readonly("P", &LanczosResult::P)
      .def_readonly("H", &LanczosResult::H)
      .def_readonly("T", &LanczosResult::T)
      .def_readonly("delta_next", &LanczosResult::delta_next)
      .def_readonly("beta_next", &LanczosResult::beta_next)
      .def_readonly("q_next", &LanczosResult::q_next)
      .def_readonly("p_next", &LanczosResult::p_next)
      .def_property_readonly("status", [status_of](const LanczosResult& r) { return status_of(r.status); });

  m.def(
      "two_sided_gs",
      [](const MatrixD& X, const MatrixD& Y, const std::string& variant, int passes) {
        BiorthConfig cfg;
        cfg.variant = variant_of(variant);
        cfg.passes = passes;
        return two_sided_gs(X, Y, cfg);
      },
      py::arg("X"), py::arg("Y"), py::arg("variant") = "MGS", py::arg("passes") = 1);

  m.def(
      "randomized_two_sided_gs",
      [](const MatrixD& X, const MatrixD& Y, const SketchOperator& sketch, const std::string& variant, int passes,
         bool mixed) { return randomized_two_sided_gs(X, Y, rconfig(variant, passes, sketch, mixed)); },
      py::arg("X"), py::arg("Y"), py::arg("sketch"), py::arg("variant") = "MGS", py::arg("passes") = 1,
      py::arg("mixed") = false);

  m.def(
      "nonsym_lanczos",
      [](const MatrixD& A, const VectorD& q1, const VectorD& p1, Index steps, const std::string& variant,
         int passes) {
        BiorthConfig cfg;
        cfg.variant = variant_of(variant);
        cfg.passes = passes;
        return nonsym_lanczos(MatrixOracle::dense(A), q1, p1, steps, cfg);
      },
      py::arg("A"), py::arg("q1"), py::arg("p1"), py::arg("m"), py::arg("variant") = "MGS", py::arg("passes") = 2);

  m.def(
      "rand_nonsym_lanczos",
      [](const MatrixD& A, const VectorD& q1, const VectorD& p1, Index steps, const SketchOperator& sketch,
         const std::string& variant, int passes) {
        return rand_nonsym_lanczos(MatrixOracle::dense(A), q1, p1, steps, rconfig(variant, passes, sketch, false));
      },
      py::arg("A"), py::arg("q1"), py::arg("p1"), py::arg("m"), py::arg("sketch"), py::arg("variant") = "CGS_O",
      py::arg("passes") = 2);

  m.def(
      "ritz_values",
      [](const MatrixD& A, const LanczosResult& res, Index k) {
        py::list out;
        for (const RitzTriplet& t : ritz_triplets(MatrixOracle::dense(A), res, k))
          out.append(py::make_tuple(t.theta, t.res_right, t.res_left));
        return out;
      },
      py::arg("A"), py::arg("result"), py::arg("k"),
      "Top-k Ritz values by modulus as (theta, right residual, left residual).");

  m.def("biorth_loss", &biorth_loss, py::arg("Q"), py::arg("P"));
  m.def("sketch_biorth_error", &sketch_biorth_error, py::arg("SQ"), py::arg("SP"));
  m.def("cond2", &cond2, py::arg("M"));

  m.def("gen_ill_conditioned", &gen_ill_conditioned, py::arg("n"), py::arg("m"));
  m.def("gen_gaussian_pair", &gen_gaussian_pair, py::arg("n"), py::arg("m"), py::arg("seed"));
  m.def(
      "decaying_spectrum", [](Index n) { return decaying_spectrum(n).eigenvalues; }, py::arg("n"));
  m.def(
      "gen_prescribed_spectrum",
      [](const VectorD& eigenvalues, double cond_X, std::uint64_t seed) {
        SpectrumSpec spec;
        spec.n = eigenvalues.size();
        spec.eigenvalues = eigenvalues;
        spec.cond_X = cond_X;
        return gen_prescribed_spectrum(spec, seed);
      },
      py::arg("eigenvalues"), py::arg("cond_X"), py::arg("seed"));
}
