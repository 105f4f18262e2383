// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sinecrit/cli.hpp"
#include "sinecrit/critpoints.hpp"
#include "sinecrit/ensembles.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/sineproc.hpp"
#include "sinecrit/stats.hpp"
#include "sinecrit/version.hpp"
#include "sinecrit/zetaxi.hpp"

namespace py = pybind11;
using namespace sinecrit;

namespace {

SamplerModel parse_model(const std::string& m) {
  if (m == "tridiagonal") return SamplerModel::tridiagonal;
  if (m == "dense") return SamplerModel::dense;
  throw InvalidArgument("model must be 'tridiagonal' or 'dense'");
}

py::dict omega_dict(const OmegaEstimate& e) {
  py::dict d;
  d["process"] = to_string(e.process);
  d["k"] = e.k;
  d["eps"] = e.eps;
  d["trials"] = e.trials;
  d["hits"] = e.hits;
  d["lo"] = e.lo;
  d["hi"] = e.hi;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Critical points of random spectra, the sine process and the Riemann xi-function";
  m.attr("__version__") = kVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InputError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const NumericalError& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  m.def(
      "sample_gue_spectrum",
      [](std::size_t n, std::uint64_t seed, const std::string& model) {
        return sample_gue_spectrum(n, seed, parse_model(model)).eigenvalues;
      },
      py::arg("n"), py::arg("seed"), py::arg("model") = "tridiagonal",
      "Ascending eigenvalues of H/sqrt(N) for a GUE_N sample.");
  m.def(
      "submatrix_pair",
      [](std::size_t n, std::uint64_t seed) {
        const auto h = sample_gue_dense(n, seed);
        return py::make_tuple(spectrum(h).eigenvalues, principal_submatrix_spectrum(h).eigenvalues);
      },
      py::arg("n"), py::arg("seed"), "Parent and (N-1)x(N-1) submatrix spectra of one dense sample.");
  m.def("semicircle_density", &semicircle_density, py::arg("e"));

  m.def(
      "critical_points",
      [](const std::vector<double>& zeros) { return critical_points(zeros).points; },
      py::arg("zeros"), "Zeros of the derivative of prod (z - x_j), one per gap.");
  m.def(
      "solve_level",
      [](const std::vector<double>& points, double level, const std::vector<double>& weights) {
        return solve_level(LevelSetQuery{points, level, weights}).points;
      },
      py::arg("points"), py::arg("level") = 0.0, py::arg("weights") = std::vector<double>{},
      "Roots of sum w_j/(x_j - z) + level = 0 inside each gap.");
  m.def(
      "w_eval",
      [](const std::vector<double>& points, std::complex<double> z, double radius) {
        return w_eval(points, z, radius);
      },
      py::arg("points"), py::arg("z"), py::arg("radius") = kNoTruncation);
  m.def(
      "phi_eval",
      [](const std::vector<double>& points, std::complex<double> z, double radius) {
        return phi_eval(points, z, radius);
      },
      py::arg("points"), py::arg("z"), py::arg("radius") = kNoTruncation);
  m.def("drift_level", &drift_level, py::arg("energy"));
  m.def("energy_for_level", &energy_for_level, py::arg("level"));

  m.def(
      "sample_dpp",
      [](double radius, std::uint64_t seed) {
        return sample_dpp(decompose(nystrom_sine_kernel(radius)), seed).points;
      },
      py::arg("radius"), py::arg("seed"), "One window of the discretised sine process.");
  m.def(
      "sample_sine_gue_proxy",
      [](std::size_t n, double radius, std::uint64_t seed) {
        return sample_sine_gue_proxy(n, radius, seed).points;
      },
      py::arg("n"), py::arg("radius"), py::arg("seed"));

  m.def("gamma", &gamma_complex, py::arg("s"));
  m.def("zeta", [](std::complex<double> s) { return zeta_em(s); }, py::arg("s"));
  m.def("xi", &xi, py::arg("s"));
  m.def("Xi", &Xi, py::arg("t"));
  m.def("hardy_z", &hardy_z, py::arg("t"));
  m.def("riemann_von_mangoldt", &riemann_von_mangoldt, py::arg("t"));
  m.def(
      "find_zeros",
      [](double t_min, double t_max) { return find_zeros(t_min, t_max).ordinates; },
      py::arg("t_min"), py::arg("t_max"));
  m.def(
      "find_critical_points",
      [](const std::vector<double>& zeros) {
        ZeroTable z;
        z.ordinates = zeros;
        z.t_min = zeros.empty() ? 0.0 : zeros.front();
        z.t_max = zeros.empty() ? 0.0 : zeros.back();
        return find_critical_points(z);
      },
      py::arg("zeros"));

  m.def("fgl_curve", &fgl_curve, py::arg("alpha"));
  m.def("wilson_interval", &wilson_interval, py::arg("hits"), py::arg("trials"), py::arg("z") = 1.96);
  m.def(
      "tail_bound",
      [](double sup_norm, double expected_square_sum, const std::vector<double>& r) {
        return tail_bound(TailBoundSpec{sup_norm, expected_square_sum, r});
      },
      py::arg("sup_norm"), py::arg("expected_square_sum"), py::arg("r"));
  m.def("cauchy_cdf", &cauchy_cdf, py::arg("x"));
  m.def(
      "ks_distance",
      [](const std::vector<double>& sample, const std::function<double(double)>& cdf) {
        return ks_distance(sample, cdf);
      },
      py::arg("sample"), py::arg("cdf"));
  m.def(
      "second_closest_stat",
      [](const std::vector<double>& eigenvalues, double scale) {
        SpectrumSample s;
        s.n = eigenvalues.size();
        s.eigenvalues = eigenvalues;
        return second_closest_stat(s, scale);
      },
      py::arg("eigenvalues"), py::arg("scale") = 1.0);
  m.def(
      "omega_gue",
      [](std::size_t n, double energy, int k, const std::vector<double>& eps, std::uint64_t trials,
         std::uint64_t seed, const std::string& process) {
        const ProcessTag tag =
            process == "critical-points" ? ProcessTag::critical_points : ProcessTag::eigenvalues;
        return omega_dict(omega_estimate(gue_probe_sampler(n, energy, {tag}), k, eps, trials, seed));
      },
      py::arg("n"), py::arg("energy"), py::arg("k"), py::arg("eps"), py::arg("trials"),
      py::arg("seed"), py::arg("process") = "eigenvalues",
      "P(at least k points in (-eps, eps)) for GUE_N unfolded at the energy.");
  m.def(
      "omega_poisson",
      [](int k, const std::vector<double>& eps, std::uint64_t trials, std::uint64_t seed) {
        return omega_dict(omega_estimate(poisson_sampler(), k, eps, trials, seed));
      },
      py::arg("k"), py::arg("eps"), py::arg("trials"), py::arg("seed"));
  m.def(
      "theorem1_event_check",
      [](const std::vector<double>& points, double level, int k, double eps, double r,
         double half_width) {
        PointConfiguration w;
        w.points = points;
        w.half_width = half_width;
        const Theorem1Result t = theorem1_event_check(w, level, k, eps, r);
        py::dict d;
        d["omega_critical"] = t.omega_critical;
        d["omega_enlarged"] = t.omega_enlarged;
        d["omega_far"] = t.omega_far;
        d["threshold_plus"] = t.threshold_plus;
        d["threshold_minus"] = t.threshold_minus;
        d["inclusion_holds"] = t.inclusion_holds();
        return d;
      },
      py::arg("points"), py::arg("level"), py::arg("k"), py::arg("eps"), py::arg("r"),
      py::arg("half_width") = kNoTruncation);

  m.def(
      "run_cli", [](const std::vector<std::string>& args) { return cli::run(args); },
      py::arg("args"), "Runs a command-line subcommand and returns its exit code.");
}
