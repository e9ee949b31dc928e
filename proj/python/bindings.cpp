#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "callias/clifford.hpp"
#include "callias/commands.hpp"
#include "callias/helmholtz.hpp"
#include "callias/index.hpp"
#include "callias/matrixfn.hpp"
#include "callias/potential.hpp"
#include "callias/witten.hpp"

namespace py = pybind11;
using namespace callias;

namespace {

py::dict index_dict(const IndexResult& r) {
  py::dict d;
  d["n"] = r.n;
  d["label"] = r.label;
  d["index"] = r.index_real;
  d["value"] = r.extrapolated;
  d["imag_residual"] = r.imag_residual;
  d["integer_distance"] = r.integer_distance;
  d["converged"] = r.converged;
  d["method"] = r.method;
  d["note"] = r.note;
  py::list per;
  for (const auto& p : r.per_radius) per.append(py::make_tuple(p.radius, p.value));
  d["per_radius"] = per;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Callias index, resolvent kernels and lattice Witten traces";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  m.def("gammas", [](int n) { return build_algebra(n).gammas; }, py::arg("n"),
        "Hermitian generators gamma_1..gamma_n of the Clifford algebra.");
  m.def("gamma_trace", [](int n, const std::vector<int>& idx) { return gamma_trace(build_algebra(n), idx); },
        py::arg("n"), py::arg("indices"));

  m.def("sign_spectral", &sign_spectral, py::arg("a"), py::arg("c") = 0.0);
  m.def("sign_integral", &sign_integral, py::arg("a"), py::arg("c"), py::arg("tol") = 1e-12);

  m.def(
      "potential_value",
      [](const std::string& spec, const Vec& x) { return potential_from_spec(spec)(x); }, py::arg("potential"),
      py::arg("x"));
  m.def(
      "index",
      [](const std::string& spec, std::vector<double> radii, int degree) {
        IndexOptions opt;
        opt.radii = std::move(radii);
        opt.degree = degree;
        return index_dict(callias_index(sign_potential(potential_from_spec(spec)), opt));
      },
      py::arg("potential") = "hedgehog", py::arg("radii") = std::vector<double>{}, py::arg("degree") = 0);
  m.def(
      "classify",
      [](const std::string& spec) {
        const auto r = classify(potential_from_spec(spec));
        py::dict d;
        d["class"] = to_string(r.cls);
        d["epsilon"] = r.epsilon;
        d["unitary_outside"] = r.unitary_outside;
        d["max_unitarity_defect"] = r.max_unitarity_defect;
        return d;
      },
      py::arg("potential"));

  m.def(
      "kernel", [](int n, cplx mu, double r) { return kernel_eval(GreenKernel(n, mu), r); }, py::arg("n"),
      py::arg("mu"), py::arg("r"));
  m.def("resolvent_power_diagonal", &resolvent_power_diagonal, py::arg("n"), py::arg("m"), py::arg("z"));
  m.def("inequality_ids", &inequality_ids);
  m.def(
      "verify_inequality",
      [](const std::string& id, int n, int samples) {
        InequalityGrid g;
        g.n = n;
        g.samples = samples;
        const auto r = verify_inequality(id, g);
        return py::make_tuple(r.pass(), r.max_violation, r.samples);
      },
      py::arg("id"), py::arg("n") = 3, py::arg("samples") = 200);

  m.def(
      "verify",
      [](const std::string& suite, int n) {
        RunConfig cfg;
        cfg.n = n;
        py::list out;
        for (const auto& l : verify_suite(suite, cfg)) {
          py::dict d;
          d["check"] = l.name;
          d["value"] = l.value;
          d["bound"] = l.bound;
          d["pass"] = l.pass;
          d["informational"] = l.informational;
          out.append(d);
        }
        return out;
      },
      py::arg("suite"), py::arg("n") = 0);

  m.def(
      "witten",
      [](const std::string& spec, int level, std::vector<cplx> zs) {
        LatticeConfig c = lattice_level(level);
        if (!zs.empty()) c.zs = std::move(zs);
        WittenTraceResult r;
        {
          py::gil_scoped_release release;
          r = witten_trace(make_lattice(potential_from_spec(spec), c), c.lambdas, c.zs);
        }
        py::dict d;
        d["method"] = r.method;
        py::list f;
        for (const auto& [z, v] : r.f_curve) f.append(py::make_tuple(z, v));
        d["f"] = f;
        d["f_spread"] = r.f_spread;
        d["index_estimate"] = r.index_estimate;
        d["index_spread"] = r.index_spread;
        return d;
      },
      py::arg("potential") = "hedgehog", py::arg("level") = 0, py::arg("zs") = std::vector<cplx>{});
}
