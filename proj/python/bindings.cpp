#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohstate/cli/verify.hpp"
#include "cohstate/dynamics.hpp"
#include "cohstate/errors.hpp"
#include "cohstate/moments.hpp"
#include "cohstate/observables.hpp"
#include "cohstate/series.hpp"
#include "cohstate/spectrum.hpp"
#include "cohstate/state.hpp"
#include "cohstate/unity.hpp"

namespace py = pybind11;
using namespace cohstate;

namespace {

py::array_t<std::complex<double>> as_array(std::span<const Amplitude> c) {
  return py::array_t<std::complex<double>>({static_cast<py::ssize_t>(c.size())}, c.data());
}

LevelFormula::Family family_from_name(const std::string& name) {
  if (name == "power_law") return LevelFormula::Family::PowerLaw;
  if (name == "saturating") return LevelFormula::Family::Saturating;
  if (name == "affine") return LevelFormula::Family::Affine;
  throw py::value_error("unknown formula family '" + name + "'");
}

TruncationPolicy truncation(double rel_tol, std::size_t n_cap) { return {rel_tol, n_cap}; }

py::dict report_to_dict(const cli::VerificationReport& r) {
  py::list postulates;
  for (const auto& p : r.postulates) {
    py::dict d;
    d["name"] = p.name;
    d["status"] = cli::status_name(p.status);
    d["residual_over_tolerance"] = p.residual;
    d["detail"] = p.detail;
    postulates.append(d);
  }
  py::list rows;
  for (const auto& row : r.residuals) {
    py::dict d;
    d["check"] = row.check;
    d["parameter"] = row.parameter;
    d["residual"] = row.residual;
    d["tolerance"] = row.tolerance;
    d["pass"] = row.pass;
    rows.append(d);
  }
  py::dict out;
  out["postulates"] = postulates;
  out["residuals"] = rows;
  out["action_reference"] = r.action_reference;
  out["pass"] = r.pass();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent states for discrete spectra";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<Spectrum>(m, "Spectrum")
      .def_static("harmonic", &Spectrum::harmonic, py::arg("omega") = 1.0)
      .def_static("hydrogen1d", &Spectrum::hydrogen1d, py::arg("omega") = 1.0)
      .def_static(
          "table",
          [](std::vector<double> levels, double omega) {
            auto s = Spectrum::table(std::move(levels), omega);
            require_valid(s);
            return s;
          },
          py::arg("levels"), py::arg("omega") = 1.0)
      .def_static(
          "formula",
          [](const std::string& family, double scale, double shape, double omega) {
            auto s = Spectrum::formula({family_from_name(family), scale, shape}, omega);
            require_valid(s);
            return s;
          },
          py::arg("family"), py::arg("scale") = 1.0, py::arg("shape") = 1.0,
          py::arg("omega") = 1.0)
      .def("level", &Spectrum::level, py::arg("n"))
      .def_property_readonly("omega", &Spectrum::omega)
      .def_property_readonly("name", &Spectrum::name)
      .def("limit", [](const Spectrum& s) {
        const auto e = limit_level(s);
        return py::make_tuple(e.value, e.uncertainty);
      })
      .def("__eq__", [](const Spectrum& a, const Spectrum& b) { return a == b; })
      .def("__repr__", [](const Spectrum& s) { return "Spectrum(" + s.name() + ")"; });

  m.def(
      "rho",
      [](const Spectrum& s, std::size_t n_max) {
        const auto seq = MomentSequence::build(s, n_max);
        std::vector<double> out(n_max + 1);
        for (std::size_t n = 0; n <= n_max; ++n) out[n] = seq.rho(n);
        return out;
      },
      py::arg("spectrum"), py::arg("n_max"), "rho_0 .. rho_{n_max}");

  m.def(
      "normalization_sq",
      [](const Spectrum& s, double J, double rel_tol, std::size_t n_cap) {
        return normalization_sq(s, J, truncation(rel_tol, n_cap)).value;
      },
      py::arg("spectrum"), py::arg("J"), py::arg("rel_tol") = 1e-12,
      py::arg("n_cap") = 1'000'000, "M(J)^2");

  m.def("hydrogen_normalization_closed", &hydrogen_normalization_closed, py::arg("J"));

  m.def(
      "coefficients",
      [](const Spectrum& s, double J, double gamma, double rel_tol, std::size_t n_cap) {
        return as_array(coefficients(s, J, gamma, truncation(rel_tol, n_cap)).coefficients());
      },
      py::arg("spectrum"), py::arg("J"), py::arg("gamma"), py::arg("rel_tol") = 1e-12,
      py::arg("n_cap") = 1'000'000, "Truncated coefficient vector c_0 .. c_N");

  m.def(
      "overlap",
      [](const Spectrum& s, double J1, double g1, double J2, double g2, double rel_tol) {
        const TruncationPolicy p = truncation(rel_tol, 1'000'000);
        return overlap(coefficients(s, J1, g1, p), coefficients(s, J2, g2, p));
      },
      py::arg("spectrum"), py::arg("J1"), py::arg("gamma1"), py::arg("J2"), py::arg("gamma2"),
      py::arg("rel_tol") = 1e-12);

  m.def(
      "evolve",
      [](const Spectrum& s, double J, double gamma, double t) {
        const auto state = coefficients(s, J, gamma);
        return py::make_tuple(as_array(evolve_direct(state, t).coefficients()),
                              as_array(evolve_label(state, t).coefficients()));
      },
      py::arg("spectrum"), py::arg("J"), py::arg("gamma"), py::arg("t"),
      "(direct, label-shifted) coefficient vectors at time t");

  m.def(
      "autocorrelation",
      [](const Spectrum& s, double J, double t_max, std::size_t steps) {
        const auto samples = autocorrelation(s, J, TimeGrid::uniform(t_max, steps));
        std::vector<double> t, p;
        for (const auto& x : samples) {
          t.push_back(x.t);
          p.push_back(x.probability);
        }
        return py::make_tuple(t, p);
      },
      py::arg("spectrum"), py::arg("J"), py::arg("t_max"), py::arg("steps"));

  m.def("mean_energy", [](const Spectrum& s, double J) { return mean_energy(s, J); },
        py::arg("spectrum"), py::arg("J"));
  m.def("variance_v", [](const Spectrum& s, double J) { return variance_v(s, J); },
        py::arg("spectrum"), py::arg("J"));
  m.def("canonical_one_form", [](const Spectrum& s, double J) { return canonical_one_form(s, J); },
        py::arg("spectrum"), py::arg("J"));

  m.def(
      "diagonal_residuals",
      [](const Spectrum& s, std::size_t n_max) {
        return verify_diagonal(s, canonical_measure(s), n_max).errors;
      },
      py::arg("spectrum"), py::arg("n_max"));

  m.def(
      "verify",
      [](const Spectrum& s, std::size_t n_max, double gamma_window) {
        return report_to_dict(cli::run_verification(s, TruncationPolicy{}, QuadraturePolicy{},
                                                    {n_max, gamma_window}));
      },
      py::arg("spectrum"), py::arg("n_max") = 200, py::arg("gamma_window") = 1e4,
      "Checks the four postulates; returns a dict with per-postulate status");
}
