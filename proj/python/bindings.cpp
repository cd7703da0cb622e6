// Copyright 2026 The optosqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "optosqueeze/errors.hpp"
#include "optosqueeze/evolve.hpp"
#include "optosqueeze/liouvillian.hpp"
#include "optosqueeze/meanfield.hpp"
#include "optosqueeze/model.hpp"
#include "optosqueeze/observables.hpp"
#include "optosqueeze/scenario.hpp"
#include "optosqueeze/stability.hpp"
#include "optosqueeze/states.hpp"
#include "optosqueeze/steady_state.hpp"

namespace py = pybind11;
using namespace optosqueeze;

namespace {

DensityMatrix as_density(const DenseMatrix& m) {
  const auto d = static_cast<int>(m.rows());
  return DensityMatrix(SpaceSignature::single(d), m);
}

py::dict record_dict(const ObservableRecord& r) {
  py::dict d;
  d["t"] = r.t;
  d["fidelity"] = r.fidelity;
  d["purity"] = r.purity;
  d["var_x1"] = r.var_x1;
  d["var_x2"] = r.var_x2;
  d["squeezing_db"] = r.squeezing_db;
  d["opt_theta"] = r.opt_theta;
  d["opt_squeezing_db"] = r.opt_squeezing_db;
  d["g2"] = r.g2;
  d["mean_n"] = r.mean_n;
  d["parity"] = r.parity;
  return d;
}

Engine parse_engine(const std::string& e) {
  if (e == "effective") return Engine::Effective;
  if (e == "full") return Engine::Full;
  if (e == "full-nonrwa") return Engine::FullNonRwa;
  throw std::invalid_argument("engine must be effective, full or full-nonrwa");
}

// Mechanical-mode observables along a trajectory, one dict of lists.
py::dict evolve_py(const SystemParams& p, const std::string& engine, const std::string& initial,
                   const std::string& target, const std::vector<double>& times, const std::string& integrator,
                   double rtol, double atol) {
  const Engine e = parse_engine(engine);
  const bool full = e != Engine::Effective;
  const SpaceSignature sig = full ? p.full_signature() : p.mechanical_signature();
  const StateSpec init = StateSpec::parse(initial);
  DensityMatrix rho0;
  if (init.kind == StateSpec::Kind::Fock) {
    std::vector<int> occ = full ? std::vector<int>{init.n_a, init.n_b} : std::vector<int>{init.n_b};
    rho0 = DensityMatrix::fock(sig, occ);
  } else if (init.kind == StateSpec::Kind::Squeezed) {
    rho0 = squeezed_number(sig, full ? 1 : 0, SqueezeParam(init.r), init.n, 1.0).density();
  } else {
    throw std::invalid_argument("initial state must be 'fock n_a n_b' or 'squeezed r n'");
  }
  StateSpec tgt = StateSpec::parse(target);
  if (tgt.kind == StateSpec::Kind::Auto) {
    tgt.kind = StateSpec::Kind::Squeezed;
    tgt.r = p.r;
    tgt.n = (init.kind == StateSpec::Kind::Fock ? init.n_b : init.n) % 2;
  }
  Vector psi;
  if (tgt.kind == StateSpec::Kind::Squeezed) psi = squeezed_number(sig, full ? 1 : 0, SqueezeParam(tgt.r), tgt.n, 1.0).amplitudes;

  EvolveOptions o;
  o.method = parse_integrator(integrator);
  o.rtol = rtol;
  o.atol = atol;
  std::vector<ObservableRecord> recs;
  auto cb = [&](double t, const DensityMatrix& rho) { recs.push_back(observe(t, rho, psi)); };
  EvolutionResult res;
  {
    py::gil_scoped_release release;
    if (e == Engine::Effective) {
      res = evolve(effective_liouvillian(p), rho0, times, o, cb);
    } else if (e == Engine::Full) {
      res = evolve(full_liouvillian(p), rho0, times, o, cb);
    } else {
      res = evolve(interaction_hamiltonian(p), collapse_ops(p), rho0, times, o, cb);
    }
  }
  py::dict out;
  const char* keys[] = {"t", "fidelity", "purity", "var_x1", "var_x2", "squeezing_db",
                        "opt_theta", "opt_squeezing_db", "g2", "mean_n", "parity"};
  for (const char* k : keys) out[k] = py::list();
  for (const auto& r : recs) {
    const py::dict d = record_dict(r);
    for (const char* k : keys) out[k].cast<py::list>().append(d[k]);
  }
  out["leakage"] = res.leakage;
  out["leakage_flagged"] = res.leakage_flagged;
  out["advisory"] = res.advisory;
  out["steps"] = res.steps;
  return out;
}

py::dict steady_py(const SystemParams& p, const std::string& engine, bool allow_degenerate) {
  const Engine e = parse_engine(engine);
  if (e == Engine::FullNonRwa) throw std::invalid_argument("steady states need engine full or effective");
  SteadyStateOptions o;
  o.allow_degenerate = allow_degenerate;
  SteadyStateResult ss;
  {
    py::gil_scoped_release release;
    ss = steady_state(e == Engine::Effective ? effective_liouvillian(p) : full_liouvillian(p), o);
  }
  py::dict out;
  out["null_dimension"] = ss.null_dimension;
  out["smallest_singular_values"] = ss.smallest_singular_values;
  out["degenerate"] = ss.degenerate;
  if (ss.state) {
    const DensityMatrix mech = e == Engine::Effective ? *ss.state : mechanical_state(*ss.state);
    out["rho"] = mech.data();
    out["observables"] = record_dict(observe(0.0, *ss.state, Vector()));
  } else {
    out["rho"] = py::none();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reservoir-engineered mechanical squeezing: states, dynamics, observables, stability";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def_readwrite("r", &SystemParams::r)
      .def_readwrite("g_minus", &SystemParams::g_minus)
      .def_readwrite("gamma", &SystemParams::gamma)
      .def_readwrite("nbar_m", &SystemParams::nbar_m)
      .def_readwrite("omega_m_eff_over_kappa", &SystemParams::omega_m_eff_over_kappa)
      .def_readwrite("N_a", &SystemParams::N_a)
      .def_readwrite("N_b", &SystemParams::N_b)
      .def_readwrite("cancel_4wm", &SystemParams::cancel_4wm)
      .def_readwrite("nr_mech_amplitude", &SystemParams::nr_mech_amplitude)
      .def("validate", &SystemParams::validate)
      .def_property_readonly("g_zero", &SystemParams::g_zero)
      .def_property_readonly("g_plus", &SystemParams::g_plus)
      .def_property_readonly("coupling", &SystemParams::coupling)
      .def_property_readonly("engineered_rate", &SystemParams::engineered_rate)
      .def("__repr__", [](const SystemParams& p) {
        std::ostringstream os;
        os << "SystemParams(r=" << p.r << ", g_minus=" << p.g_minus << ", gamma=" << p.gamma << ", nbar_m=" << p.nbar_m
           << ", omega_m_eff_over_kappa=" << p.omega_m_eff_over_kappa << ", N_a=" << p.N_a << ", N_b=" << p.N_b << ")";
        return os.str();
      });

  m.def(
      "squeezed_state",
      [](double r, int n, int N_b, double theta, double leakage_cap) {
        const auto sv = squeezed_number(SpaceSignature::single(N_b), 0, SqueezeParam(r, theta), n, leakage_cap);
        return py::make_tuple(sv.amplitudes, sv.leakage);
      },
      py::arg("r"), py::arg("n") = 0, py::arg("N_b") = 60, py::arg("theta") = 0.0,
      py::arg("leakage_cap") = kDefaultStateLeakageCap, "Amplitudes of |xi, n> and the truncation leakage.");
  m.def("required_truncation", [](double r, int n, double cap) { return required_truncation(SqueezeParam(r), n, cap); },
        py::arg("r"), py::arg("n") = 0, py::arg("cap") = kDefaultStateLeakageCap);
  m.def(
      "analytic_variances",
      [](double r, int n) {
        const auto v = analytic_variances(SqueezeParam(r), n);
        return py::make_tuple(v.var_x1, v.var_x2);
      },
      py::arg("r"), py::arg("n") = 0);
  m.def("analytic_mean_n", [](double r, int n) { return analytic_mean_n(SqueezeParam(r), n); }, py::arg("r"),
        py::arg("n") = 0);
  m.def("analytic_g2", [](double r, int n) { return analytic_g2(SqueezeParam(r), n); }, py::arg("r"), py::arg("n") = 0);
  m.def("exact_g2", [](double r, int n) { return exact_g2(SqueezeParam(r), n); }, py::arg("r"), py::arg("n") = 0);

  m.def(
      "observables",
      [](const DenseMatrix& rho, std::optional<Vector> target) {
        return record_dict(observe(0.0, as_density(rho), target.value_or(Vector())));
      },
      py::arg("rho"), py::arg("target") = py::none(), "Single-mode observables of a density matrix.");
  m.def("squeezing_db", &squeezing_db, py::arg("var_x1"));

  m.def("evolve", &evolve_py, py::arg("params"), py::arg("engine") = "effective", py::arg("initial") = "fock 0 0",
        py::arg("target") = "auto", py::arg("times"), py::arg("integrator") = "auto",
        py::arg("rtol") = kDefaultEvolveRtol, py::arg("atol") = 1e-10);
  m.def("steady_state", &steady_py, py::arg("params"), py::arg("engine") = "effective",
        py::arg("allow_degenerate") = false);
  m.def("linear_grid", &linear_grid, py::arg("t0"), py::arg("t1"), py::arg("n"));
  m.def("log_grid", &log_grid, py::arg("t_min"), py::arg("t_max"), py::arg("n"));

  m.def(
      "classify",
      [](double omega_R, double eps_tilde, double gamma_tilde) {
        const auto pt = classify(MathieuParams::from_axes(omega_R, eps_tilde, gamma_tilde));
        py::dict d;
        d["verdict"] = to_string(pt.verdict);
        d["max_multiplier"] = pt.max_multiplier;
        d["determinant"] = pt.determinant;
        return d;
      },
      py::arg("omega_R"), py::arg("eps_tilde"), py::arg("gamma_tilde") = 0.0);
  m.def(
      "stability_map",
      [](std::pair<double, double> omega_R, std::pair<double, double> eps, int nx, int ny, double gamma_tilde) {
        StabilityMap map;
        {
          py::gil_scoped_release release;
          map = stability_map({omega_R.first, omega_R.second}, {eps.first, eps.second}, nx, ny, gamma_tilde);
        }
        Eigen::MatrixXd mult(ny, nx);
        for (int j = 0; j < ny; ++j) {
          for (int i = 0; i < nx; ++i) mult(j, i) = map.at(i, j).max_multiplier;
        }
        return mult;
      },
      py::arg("omega_R") = std::make_pair(0.0, 2.5), py::arg("eps_tilde") = std::make_pair(0.0, 1.0),
      py::arg("nx") = 100, py::arg("ny") = 100, py::arg("gamma_tilde") = 0.0,
      "Largest Floquet multiplier on a (ny, nx) grid of cell centres.");

  py::class_<DriveConfig>(m, "DriveConfig")
      .def(py::init<>())
      .def_readwrite("E_plus", &DriveConfig::E_plus)
      .def_readwrite("E_zero", &DriveConfig::E_zero)
      .def_readwrite("E_minus", &DriveConfig::E_minus)
      .def_readwrite("Delta", &DriveConfig::Delta)
      .def_readwrite("Omega", &DriveConfig::Omega)
      .def_readwrite("epsilon", &DriveConfig::epsilon)
      .def_readwrite("kappa", &DriveConfig::kappa)
      .def_readwrite("omega_m", &DriveConfig::omega_m)
      .def_readwrite("g", &DriveConfig::g);
  m.def("matched_config", &matched_config, py::arg("cfg"));
  m.def(
      "matching_conditions",
      [](const DriveConfig& cfg) {
        const auto r = matching_conditions(cfg);
        py::dict d;
        d["Omega_required"] = r.Omega_required;
        d["Delta_required"] = r.Delta_required;
        d["epsilon_required"] = r.epsilon_required;
        d["residual_Omega"] = r.residual_Omega;
        d["residual_Delta"] = r.residual_Delta;
        d["residual_epsilon"] = r.residual_epsilon;
        d["matched"] = r.matched;
        return d;
      },
      py::arg("cfg"));

  m.def(
      "run_config",
      [](const std::string& path, const std::vector<std::string>& overrides) {
        const ScenarioConfig cfg = load_config(path, overrides);
        std::ostringstream log;
        RunOutcome out;
        {
          py::gil_scoped_release release;
          out = run_scenario(cfg, log);
        }
        return py::make_tuple(out.exit_code, out.message, out.csv);
      },
      py::arg("path"), py::arg("overrides") = std::vector<std::string>{},
      "Run a scenario file; returns (exit_code, message, csv_text).");
}
