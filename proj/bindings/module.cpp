#include "spincm/dynamics.hpp"
#include "spincm/orbits.hpp"
#include "spincm/reduction.hpp"
#include "spincm/rmatrix.hpp"
#include "spincm/verify.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace spincm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spin Calogero-Moser systems by symplectic reduction of T*Herm(n)";

  py::class_<PhasePoint>(m, "PhasePoint")
      .def(py::init([](const CMatrix& a, const CMatrix& alpha) {
             return PhasePoint(ConfigElement(a), ConfigElement(alpha));
           }),
           py::arg("a"), py::arg("alpha"))
      .def_property_readonly("a", [](const PhasePoint& x) { return x.a.m; })
      .def_property_readonly("alpha", [](const PhasePoint& x) { return x.alpha.m; });

  py::class_<ReducedPoint>(m, "ReducedPoint")
      .def(py::init<RVector, RVector, CMatrix, Eigen::VectorXcd>(), py::arg("q"),
           py::arg("p"), py::arg("z"), py::arg("gauge") = Eigen::VectorXcd())
      .def_readonly("q", &ReducedPoint::q)
      .def_readonly("p", &ReducedPoint::p)
      .def_readonly("z", &ReducedPoint::z)
      .def_readonly("gauge", &ReducedPoint::gauge);

  m.def("momentum_map",
        [](const CMatrix& a, const CMatrix& alpha) {
          return momentum_map(PhasePoint(ConfigElement(a), ConfigElement(alpha))).m;
        },
        py::arg("a"), py::arg("alpha"));
  m.def("connection_dual", &connection_dual, py::arg("q"), py::arg("z"));
  m.def("connection_form",
        [](const CMatrix& a, const CMatrix& v) {
          return connection_form(ConfigElement(a), ConfigElement(v)).m;
        },
        py::arg("a"), py::arg("v"));
  m.def("project_point",
        [](const CMatrix& a, const CMatrix& alpha) {
          return project_point(PhasePoint(ConfigElement(a), ConfigElement(alpha)));
        },
        py::arg("a"), py::arg("alpha"));
  m.def("embed_reduced",
        [](const ReducedPoint& r) {
          const PhasePoint x = embed_reduced(r);
          return py::make_tuple(x.a.m, x.alpha.m);
        },
        py::arg("r"));
  m.def("gauge_fix_spin", &gauge_fix_spin, py::arg("z"));
  m.def("reduced_hamiltonian", &reduced_hamiltonian, py::arg("r"));
  m.def("lax_matrix",
        [](const ReducedPoint& r) { return lax_matrix(r).m; }, py::arg("r"));

  py::class_<OrbitSpec>(m, "OrbitSpec")
      .def_static("from_generator",
                  [](const CMatrix& z0) {
                    return OrbitSpec::from_generator(AlgebraElement(z0));
                  })
      .def_static("from_rank_one", &OrbitSpec::from_rank_one)
      .def_property_readonly("generator",
                             [](const OrbitSpec& s) { return s.generator.m; });
  m.def("project_to_ann_m",
        [](const OrbitSpec& spec, std::uint64_t seed) {
          return project_to_ann_m(spec, seed).value.m;
        },
        py::arg("spec"), py::arg("seed"));
  m.def("orbit_spectrum", &orbit_spectrum, py::arg("z"));
  m.def("kks_form",
        py::overload_cast<const CMatrix&, const CMatrix&, const CMatrix&>(&kks_form),
        py::arg("z"), py::arg("x"), py::arg("y"));
  m.def("casimirs", &casimirs, py::arg("z"), py::arg("k_max"));

  py::enum_<Engine>(m, "Engine")
      .value("projection", Engine::projection)
      .value("direct", Engine::direct);
  py::enum_<SpinSign>(m, "SpinSign")
      .value("plus", SpinSign::plus)
      .value("minus", SpinSign::minus)
      .value("automatic", SpinSign::automatic);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("points", &Trajectory::points)
      .def_readonly("resolved_spin_sign", &Trajectory::resolved_spin_sign)
      .def_readonly("max_structural_drift", &Trajectory::max_structural_drift)
      .def("energies", [](const Trajectory& t) {
        std::vector<double> e;
        for (const auto& d : t.diagnostics) e.push_back(d.energy);
        return e;
      });

  m.def("simulate",
        [](const ReducedPoint& initial, double t_end, double dt, Engine engine,
           SpinSign sign) {
          SimulationConfig cfg{initial, t_end, dt, engine, sign};
          return engine == Engine::projection ? trajectory_via_projection(cfg)
                                              : integrate_direct(cfg);
        },
        py::arg("initial"), py::arg("t_end"), py::arg("dt"),
        py::arg("engine") = Engine::projection,
        py::arg("spin_sign") = SpinSign::automatic);
  m.def("conserved_drifts",
        [](const Trajectory& t) { return conserved_report(t).drifts; });

  m.def("check_connection_identities",
        [](int n, std::uint64_t seed, int samples) {
          return check_connection_identities(n, seed, samples).max_residuals;
        },
        py::arg("n"), py::arg("seed") = 7, py::arg("samples") = 50);
  m.def("cdybe_residual", &cdybe_residual, py::arg("family"), py::arg("n"),
        py::arg("q"), py::arg("h_step") = 1e-5);

  py::enum_<RMatrixFamily>(m, "RMatrixFamily")
      .value("rational", RMatrixFamily::rational)
      .value("trigonometric", RMatrixFamily::trigonometric);
  m.def("rational_r_dense",
        [](int n, const RVector& q) { return CMatrix(rational_r(n, q).tensor); },
        py::arg("n"), py::arg("q"));
  m.def("trig_r_dense",
        [](int n, const RVector& a) { return CMatrix(trig_r(n, a).tensor); },
        py::arg("n"), py::arg("a"));
}
