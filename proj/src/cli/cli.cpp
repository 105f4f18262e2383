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


#include "sinecrit/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sinecrit/critpoints.hpp"
#include "sinecrit/ensembles.hpp"
#include "sinecrit/error.hpp"
#include "sinecrit/manifest.hpp"
#include "sinecrit/parallel.hpp"
#include "sinecrit/rng.hpp"
#include "sinecrit/sineproc.hpp"
#include "sinecrit/stats.hpp"
#include "sinecrit/svg.hpp"
#include "sinecrit/version.hpp"
#include "sinecrit/zetaxi.hpp"

namespace sinecrit::cli {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kWindowShiftStream = 0x77696e646f77ULL;

std::string fmt(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

/// Collects the files of one run and stamps them with the manifest digest.
class Run {
 public:
  Run(fs::path dir, std::string cmd, std::string digest, bool svg, unsigned workers)
      : dir_(std::move(dir)), cmd_(std::move(cmd)), digest_(std::move(digest)), svg_(svg),
        workers_(workers) {
    fs::create_directories(dir_);
  }

  unsigned workers() const { return workers_; }
  bool svg() const { return svg_; }
  const std::string& digest() const { return digest_; }
  const std::map<std::string, std::string>& outputs() const { return outputs_; }

  void csv(const std::string& suffix, const std::string& header,
           const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream o;
    o << "# manifest " << digest_ << '\n' << header << '\n';
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << r[i];
      o << '\n';
    }
    write(cmd_ + suffix + ".csv", o.str());
  }

  void json(const std::string& suffix, const ordered_json& body) {
    ordered_json j;
    j["manifest_digest"] = digest_;
    for (const auto& [k, v] : body.items()) j[k] = v;
    write(cmd_ + suffix + ".json", j.dump(2) + "\n");
  }

  void chart(const std::string& suffix, const Chart& c) {
    if (!svg_) return;
    write(cmd_ + suffix + ".svg", render_svg(c, digest_));
  }

 private:
  void write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw InputError("cannot write " + p.string());
    outputs_[name] = sha256_hex(content);
  }

  fs::path dir_;
  std::string cmd_;
  std::string digest_;
  bool svg_;
  unsigned workers_;
  std::map<std::string, std::string> outputs_;
};

ordered_json omega_json(const OmegaEstimate& o) {
  ordered_json j;
  j["process"] = to_string(o.process);
  j["k"] = o.k;
  j["trials"] = o.trials;
  return j;
}

std::vector<std::vector<std::string>> omega_rows(const OmegaEstimate& o) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < o.eps.size(); ++i)
    rows.push_back({fmt(o.eps[i]), fmt(o.hits[i]), fmt(o.trials), fmt(o.p(i)), fmt(o.lo[i]),
                    fmt(o.hi[i])});
  return rows;
}

ZeroTable acquire_table(const std::string& file, double from, double to, unsigned workers) {
  if (!file.empty()) return load_zero_table(file);
  return find_zeros(from, to, workers);
}

SpectrumSample draw_spectrum(std::size_t n, std::uint64_t seed, const std::string& model) {
  if (model == "dense") return sample_gue_spectrum(n, seed, SamplerModel::dense);
  if (model == "tridiagonal") return sample_gue_spectrum(n, seed, SamplerModel::tridiagonal);
  throw InvalidArgument("unknown model '" + model + "'");
}

void require_interlacing(std::span<const double> outer, std::span<const double> inner,
                         const std::string& what) {
  if (inner.size() + 1 != outer.size()) throw NumericalError(what + ": wrong number of points");
  for (std::size_t i = 0; i < inner.size(); ++i)
    if (!(outer[i] < inner[i] && inner[i] < outer[i + 1]))
      throw NumericalError(what + ": interlacing violated at index " + std::to_string(i));
}

std::vector<PointConfiguration> gue_windows(std::size_t n, double energy, double radius,
                                            std::size_t count, std::uint64_t seed, bool critical,
                                            unsigned workers) {
  const double scale = static_cast<double>(n) * semicircle_density(energy);
  const TrialChunks chunks{count, 64};
  auto parts = run_tasks(chunks.count(), workers, [&](std::size_t c) {
    std::vector<PointConfiguration> out;
    for (std::size_t i = chunks.begin(c); i < chunks.end(c); ++i) {
      const std::uint64_t ts = derive_seed(seed, i);
      const SpectrumSample s = sample_gue_spectrum(n, ts);
      const double shift = Rng(derive_seed(ts, kWindowShiftStream)).uniform() - 0.5;
      const std::vector<double> src = critical ? critical_points(s.eigenvalues).points : s.eigenvalues;
      PointConfiguration w;
      w.center = energy;
      w.half_width = radius;
      w.density = DensityModel::semicircle;
      for (double p : src) {
        const double x = (p - energy) * scale - shift;
        if (std::abs(x) <= radius) w.points.push_back(x);
      }
      out.push_back(std::move(w));
    }
    return out;
  });
  std::vector<PointConfiguration> out;
  for (auto& p : parts)
    for (auto& w : p) out.push_back(std::move(w));
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgument("median of an empty sample");
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double hi = *mid;
  return 0.5 * (hi + *std::max_element(v.begin(), mid));
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(v.size() - 1)));
  return v[idx];
}

UnfoldingScale parse_scale(const std::string& s) {
  if (s == "local") return UnfoldingScale::local;
  if (s == "asymptotic") return UnfoldingScale::asymptotic;
  throw InvalidArgument("unknown scale '" + s + "' (local | asymptotic)");
}

ProcessTag parse_process(const std::string& s) {
  if (s == "eigenvalues") return ProcessTag::eigenvalues;
  if (s == "critical-points") return ProcessTag::critical_points;
  throw InvalidArgument("unknown process '" + s + "' (eigenvalues | critical-points)");
}

// ---------------------------------------------------------------------------

struct Options {
  std::uint64_t seed = 0;
  std::string out = ".";
  unsigned workers = 1;
  bool svg = false;

  std::size_t n = 0;
  std::size_t samples = 1;
  std::string model = "tridiagonal";
  double level = 0.0;
  int k = 2;
  double a = 0.0;
  std::string eps = "0.4:1.0:0.1";
  std::uint64_t trials = 1000000;
  std::string process = "critical-points";
  double eps_value = 0.5;
  double big_r = 5.0;
  std::string source;
  double radius = 10.0;
  std::size_t windows = 10000;
  std::string alpha = "0.25,0.5,0.75,1.5";
  double raw_scale = 1.0;
  std::size_t nodes = 0;
  double from = 10.0;
  double to = 100.0;
  std::string table_out;
  std::string zeros_file;
  double t_lo = 100.0;
  double t_hi = 5000.0;
  std::string heights = "2,4,8";
  double big_t = 0.0;
  std::string scale = "local";
  bool tail_correction = false;
  double eta = 1e-3;
  int bins = 50;
  double hist_max = 0.0;
  double bulk = 20.0;
  double energy = 0.0;
  std::string r_grid = "1:8:1";
  std::string manifest;
  bool verify = false;
};

using Handler = std::function<int(const Options&, Run&)>;

struct Command {
  CLI::App* app = nullptr;
  bool stochastic = false;
  Handler handler;
};

int cmd_sample_gue(const Options& o, Run& run) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const auto spec = draw_spectrum(o.n, derive_seed(o.seed, s), o.model);
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j)
      rows.push_back({fmt(std::uint64_t{s}), fmt(std::uint64_t{j}), fmt(spec.eigenvalues[j])});
  }
  run.csv("", "sample,index,eigenvalue", rows);
  return kExitOk;
}

int cmd_crit_points(const Options& o, Run& run) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const auto spec = draw_spectrum(o.n, derive_seed(o.seed, s), o.model);
    const auto crit = solve_level(LevelSetQuery{spec.eigenvalues, o.level, {}});
    require_interlacing(spec.eigenvalues, crit.points, "critical points");
    for (std::size_t j = 0; j < spec.eigenvalues.size(); ++j)
      rows.push_back({fmt(std::uint64_t{s}), "eigenvalue", fmt(std::uint64_t{j}), fmt(spec.eigenvalues[j])});
    for (std::size_t j = 0; j < crit.points.size(); ++j)
      rows.push_back({fmt(std::uint64_t{s}), "critical", fmt(std::uint64_t{j}), fmt(crit.points[j])});
  }
  run.csv("", "sample,kind,index,value", rows);
  return kExitOk;
}

int cmd_repulsion(const Options& o, Run& run) {
  const auto grid = parse_grid(o.eps);
  const ProcessTag tag = parse_process(o.process);
  const double energy = energy_for_level(o.a);
  const auto sampler = gue_probe_sampler(o.n, energy, {tag});
  const OmegaEstimate est = omega_estimate(sampler, o.k, grid, o.trials, o.seed, run.workers());
  run.csv("", "eps,hits,trials,p,lo,hi", omega_rows(est));
  const ExponentFit fit = exponent_fit(est);
  ordered_json j = omega_json(est);
  j["a"] = o.a;
  j["energy"] = energy;
  j["n"] = o.n;
  j["slope"] = fit.slope;
  j["stderr"] = fit.stderr_slope;
  j["intercept"] = fit.intercept;
  j["bins_used"] = fit.bins_used;
  run.json("", j);
  Chart c{"P(at least k points in (-eps, eps))", "log eps", "log p", {}};
  Series pts{"estimate", SeriesKind::points, {}, {}};
  Series line{"fit slope " + fmt(std::round(fit.slope * 1000) / 1000), SeriesKind::line, {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (est.hits[i] == 0 || !(grid[i] > 0.0)) continue;
    pts.x.push_back(std::log(grid[i]));
    pts.y.push_back(std::log(est.p(i)));
    line.x.push_back(std::log(grid[i]));
    line.y.push_back(fit.intercept + fit.slope * std::log(grid[i]));
  }
  c.series = {pts, line};
  run.chart("", c);
  return kExitOk;
}

int cmd_theorem1(const Options& o, Run& run) {
  Theorem1Tally t;
  if (o.source == "gue") {
    t = theorem1_gue(o.n, energy_for_level(o.a), o.k, o.eps_value, o.big_r, o.trials, o.seed,
                     run.workers());
  } else if (o.source == "poisson") {
    const double hw = 2.0 * o.big_r * o.eps_value;
    t = theorem1_configs([hw](std::uint64_t s) { return poisson_window(hw, s); }, o.a, o.k,
                         o.eps_value, o.big_r, o.trials, o.seed, run.workers());
  } else {
    throw InvalidArgument("unknown source '" + o.source + "' (gue | poisson)");
  }
  std::vector<std::vector<std::string>> rows;
  auto row = [&](const std::string& name, std::uint64_t count) {
    const auto [lo, hi] = wilson_interval(count, t.trials);
    rows.push_back({name, fmt(count), fmt(t.trials),
                    fmt(static_cast<double>(count) / static_cast<double>(t.trials)), fmt(lo), fmt(hi)});
  };
  row("omega_critical", t.omega_critical);
  row("excluded", t.excluded);
  row("checked", t.checked);
  row("violations", t.violations);
  run.csv("", "event,count,trials,p,lo,hi", rows);
  ordered_json j;
  j["source"] = o.source;
  j["k"] = o.k;
  j["eps"] = o.eps_value;
  j["R"] = o.big_r;
  j["a"] = o.a;
  j["trials"] = t.trials;
  j["omega_critical"] = t.omega_critical;
  j["excluded"] = t.excluded;
  j["ratio"] = t.omega_critical ? static_cast<double>(t.excluded) / static_cast<double>(t.omega_critical) : 0.0;
  j["checked"] = t.checked;
  j["violations"] = t.violations;
  j["mismatches"] = t.mismatches;
  run.json("", j);
  if (t.violations > 0) throw NumericalError("theorem1: inclusion violated on some configurations");
  return kExitOk;
}

int cmd_formfactor(const Options& o, Run& run) {
  const auto alpha = parse_grid(o.alpha);
  const ProcessTag tag = parse_process(o.process);
  const bool critical = tag == ProcessTag::critical_points;
  std::vector<PointConfiguration> configs;
  if (o.source == "dpp") {
    configs = dpp_windows(o.radius, o.windows, o.seed, run.workers());
    if (critical) {
      for (auto& w : configs) {
        if (w.points.size() < 2) {
          w.points.clear();
          continue;
        }
        w.points = solve_level(LevelSetQuery{w.points, o.a, {}}).points;
      }
    }
  } else if (o.source == "gue") {
    configs = gue_windows(o.n, energy_for_level(o.a), o.radius, o.windows, o.seed, critical,
                          run.workers());
  } else {
    throw InvalidArgument("unknown source '" + o.source + "' (dpp | gue)");
  }
  const FormFactorEstimate f = form_factor(configs, alpha, o.raw_scale);
  std::vector<std::vector<std::string>> rows;
  Chart c{"Form factor", "alpha", "F(alpha)", {}};
  Series emp{"estimate (w = 1)", SeriesKind::points, {}, {}};
  Series mont{"min(|alpha|, 1)", SeriesKind::line, {}, {}};
  Series fgl{"FGL curve", SeriesKind::line, {}, {}};
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const double a = std::abs(alpha[i]);
    const bool in_unit = a > 0.0 && a < 1.0;
    rows.push_back({fmt(alpha[i]), fmt(f.unweighted[i]), fmt(f.unweighted_se[i]), fmt(f.weighted[i]),
                    fmt(f.weighted_se[i]), fmt(f.imag_unweighted[i]), fmt(std::min(a, 1.0)),
                    in_unit ? fmt(fgl_curve(a)) : std::string()});
    emp.x.push_back(alpha[i]);
    emp.y.push_back(f.unweighted[i]);
  }
  for (int i = 1; i < 100; ++i) {
    const double a = 0.01 * i;
    fgl.x.push_back(a);
    fgl.y.push_back(fgl_curve(a));
  }
  const double amax = std::max(1.0, alpha.back());
  mont.x = {0.0, 1.0, amax};
  mont.y = {0.0, 1.0, 1.0};
  run.csv("", "alpha,unweighted,unweighted_se,weighted,weighted_se,imag,montgomery,fgl", rows);
  ordered_json j;
  j["source"] = o.source;
  j["process"] = to_string(tag);
  j["a"] = o.a;
  j["window_length"] = f.window_length;
  j["raw_scale"] = f.raw_scale;
  j["mean_count"] = f.mean_count;
  j["samples"] = f.samples;
  run.json("", j);
  c.series = {emp, mont};
  if (critical) c.series.push_back(fgl);
  run.chart("", c);
  return kExitOk;
}

int cmd_fgl_curve(const Options& o, Run& run) {
  const auto alpha = parse_grid(o.alpha);
  std::vector<std::vector<std::string>> rows;
  Series s{"FGL curve", SeriesKind::line, {}, {}};
  Series m{"|alpha|", SeriesKind::line, {}, {}};
  for (double a : alpha) {
    const double v = fgl_curve(a);
    rows.push_back({fmt(a), fmt(v), fmt(std::abs(a))});
    s.x.push_back(a);
    s.y.push_back(v);
    m.x.push_back(a);
    m.y.push_back(std::abs(a));
  }
  run.csv("", "alpha,fgl,montgomery", rows);
  run.chart("", Chart{"Critical-point form factor", "alpha", "F", {s, m}});
  return kExitOk;
}

int cmd_dpp_sample(const Options& o, Run& run) {
  const auto disc = o.nodes ? nystrom_sine_kernel(o.radius, o.nodes) : nystrom_sine_kernel(o.radius);
  const DppSpectral d = decompose(disc);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t s = 0; s < o.samples; ++s) {
    const auto w = sample_dpp(d, derive_seed(o.seed, s));
    for (std::size_t j = 0; j < w.points.size(); ++j)
      rows.push_back({fmt(std::uint64_t{s}), fmt(std::uint64_t{j}), fmt(w.points[j])});
  }
  run.csv("", "sample,index,x", rows);
  return kExitOk;
}

int cmd_zeta_zeros(const Options& o, Run& run) {
  const ZeroTable z = find_zeros(o.from, o.to, run.workers());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < z.ordinates.size(); ++i)
    rows.push_back({fmt(std::uint64_t{i + 1}), fmt(z.ordinates[i])});
  run.csv("", "index,ordinate", rows);
  if (!o.table_out.empty()) save_zero_table(z, o.table_out);
  return kExitOk;
}

int cmd_xi_critical(const Options& o, Run& run) {
  const ZeroTable z = acquire_table(o.zeros_file, o.from, o.to, run.workers());
  const auto crit = find_critical_points(z, run.workers());
  require_interlacing(z.ordinates, crit, "xi critical points");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < crit.size(); ++i)
    rows.push_back({fmt(std::uint64_t{i + 1}), fmt(z.ordinates[i]), fmt(crit[i]), fmt(z.ordinates[i + 1])});
  run.csv("", "index,zero_left,critical,zero_right", rows);
  return kExitOk;
}

int cmd_w_stats(const Options& o, Run& run) {
  const ZeroTable z = acquire_table(o.zeros_file, o.from, o.to, run.workers());
  const auto heights = parse_grid(o.heights);
  const double big_t = o.big_t > 0.0 ? o.big_t : o.t_hi;
  const WStatistics w = w_statistics(z, o.t_lo, o.t_hi, o.samples, o.radius, heights, o.seed, big_t,
                                     parse_scale(o.scale), o.tail_correction);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < heights.size(); ++i)
    rows.push_back({fmt(heights[i]), fmt(w.mean[i].real()), fmt(w.mean[i].imag()),
                    fmt(w.second_moment[i]), fmt(w.second_moment_se[i])});
  run.csv("", "R,mean_re,mean_im,second_moment,second_moment_se", rows);
  ordered_json j;
  j["t_lo"] = o.t_lo;
  j["t_hi"] = o.t_hi;
  j["T"] = big_t;
  j["scale"] = o.scale;
  j["radius"] = o.radius;
  j["tail_correction"] = o.tail_correction;
  j["samples"] = o.samples;
  j["table_source"] = z.source;
  run.json("", j);
  return kExitOk;
}

int cmd_spacings(const Options& o, Run& run) {
  const ZeroTable z = acquire_table(o.zeros_file, o.from, o.to, run.workers());
  const auto crit = find_critical_points(z, run.workers());
  const auto xi_sp = unfolded_spacings(crit, z.t_min, z.t_max);
  const auto gue_sp = gue_critical_spacings(o.n, o.samples, o.seed, o.energy, o.bulk, run.workers());
  const double hi = o.hist_max > 0.0 ? o.hist_max : 3.0;
  const Series g = histogram_series("GUE_" + std::to_string(o.n) + " critical points", gue_sp, 0.0, hi, o.bins);
  const Series x = histogram_series("xi critical points", xi_sp, 0.0, hi, o.bins);
  std::vector<std::vector<std::string>> rows;
  for (int b = 0; b < o.bins; ++b)
    rows.push_back({fmt(g.x[static_cast<std::size_t>(b)]), fmt(g.x[static_cast<std::size_t>(b) + 1]),
                    fmt(g.y[static_cast<std::size_t>(b)]), fmt(x.y[static_cast<std::size_t>(b)])});
  run.csv("", "bin_lo,bin_hi,gue_critical,xi_critical", rows);
  ordered_json j;
  j["gue_spacings"] = gue_sp.size();
  j["xi_spacings"] = xi_sp.size();
  j["ks_two_sample"] = ks_two_sample(gue_sp, xi_sp);
  j["table_source"] = z.source;
  run.json("", j);
  Series gl = g;
  gl.kind = SeriesKind::line;
  gl.x.clear();
  for (int b = 0; b < o.bins; ++b) gl.x.push_back(0.5 * (g.x[static_cast<std::size_t>(b)] + g.x[static_cast<std::size_t>(b) + 1]));
  run.chart("", Chart{"Spacings between consecutive critical points", "unfolded spacing", "density", {x, gl}});
  return kExitOk;
}

int cmd_fig1(const Options& o, Run& run) {
  const HermitianDense m = sample_gue_dense(o.n, o.seed);
  const SpectrumSample s = spectrum(m);
  const SpectrumSample sub = principal_submatrix_spectrum(m);
  const auto crit = critical_points(s.eigenvalues).points;
  require_interlacing(s.eigenvalues, crit, "critical points");
  require_interlacing(s.eigenvalues, sub.eigenvalues, "submatrix eigenvalues");
  std::vector<std::vector<std::string>> rows;
  Series se{"eigenvalues", SeriesKind::points, {}, {}};
  Series sc{"critical points", SeriesKind::points, {}, {}};
  Series ss{"submatrix eigenvalues", SeriesKind::points, {}, {}};
  for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) {
    rows.push_back({"eigenvalue", fmt(std::uint64_t{j}), fmt(s.eigenvalues[j])});
    se.x.push_back(s.eigenvalues[j]);
    se.y.push_back(1.0);
  }
  for (std::size_t j = 0; j < crit.size(); ++j) {
    rows.push_back({"critical", fmt(std::uint64_t{j}), fmt(crit[j])});
    sc.x.push_back(crit[j]);
    sc.y.push_back(2.0);
  }
  for (std::size_t j = 0; j < sub.eigenvalues.size(); ++j) {
    rows.push_back({"submatrix", fmt(std::uint64_t{j}), fmt(sub.eigenvalues[j])});
    ss.x.push_back(sub.eigenvalues[j]);
    ss.y.push_back(0.0);
  }
  run.csv("", "kind,index,value", rows);
  run.chart("", Chart{"GUE_" + std::to_string(o.n) + ": critical points, eigenvalues, submatrix",
                      "lambda / sqrt(N)", "row", {sc, se, ss}});
  return kExitOk;
}

int cmd_fig2(const Options& o, Run& run) {
  const double scale = o.raw_scale > 0.0 ? o.raw_scale : default_second_closest_scale(o.n);
  const auto [eig, crit] = second_closest_samples(o.n, o.samples, o.seed, scale, run.workers());
  const double hi = o.hist_max > 0.0 ? o.hist_max
                                     : 1.05 * std::max(quantile(eig, 0.995), quantile(crit, 0.995));
  const Series he = histogram_series("eigenvalue", eig, 0.0, hi, o.bins);
  const Series hc = histogram_series("critical point", crit, 0.0, hi, o.bins);
  std::vector<std::vector<std::string>> rows;
  for (int b = 0; b < o.bins; ++b) {
    const auto i = static_cast<std::size_t>(b);
    rows.push_back({fmt(he.x[i]), fmt(he.x[i + 1]), fmt(he.y[i]), fmt(hc.y[i])});
  }
  run.csv("", "bin_lo,bin_hi,eigenvalue,critical", rows);
  const double med_e = median(eig);
  const double med_c = median(crit);
  std::size_t below = 0;
  for (double c : crit)
    if (c < med_e) ++below;
  ordered_json j;
  j["n"] = o.n;
  j["samples"] = o.samples;
  j["scale"] = scale;
  j["median_eigenvalue"] = med_e;
  j["median_critical"] = med_c;
  j["p_critical_below_eigen_median"] = static_cast<double>(below) / static_cast<double>(crit.size());
  run.json("", j);
  run.chart("", Chart{"Second closest to zero, GUE_" + std::to_string(o.n), "value x scale",
                      "density", {he, hc}});
  return kExitOk;
}

int cmd_cauchy_check(const Options& o, Run& run) {
  const double big_t = o.big_t > 0.0 ? o.big_t : 1e4;
  const double margin = o.radius / unfolding_density(big_t, big_t, UnfoldingScale::local) + 10.0;
  const ZeroTable z = acquire_table(o.zeros_file, 1.0, std::min(kMaxHeight, big_t + margin), run.workers());
  const double t_lo = o.t_lo > 0.0 ? o.t_lo : 0.1 * big_t;
  const double t_hi = o.t_hi > 0.0 ? o.t_hi : big_t;
  const auto v = cauchy_sample(z, t_lo, t_hi, o.samples, o.eta, o.radius, o.seed, big_t,
                               parse_scale(o.scale));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < v.size(); ++i) rows.push_back({fmt(std::uint64_t{i}), fmt(v[i])});
  run.csv("", "draw,value", rows);
  const double ks = ks_distance(v, cauchy_cdf);
  ordered_json j;
  j["T"] = big_t;
  j["t_lo"] = t_lo;
  j["t_hi"] = t_hi;
  j["eta"] = o.eta;
  j["radius"] = o.radius;
  j["draws"] = v.size();
  j["ks_distance"] = ks;
  j["table_source"] = z.source;
  run.json("", j);
  std::vector<double> clipped;
  for (double x : v)
    if (std::abs(x) < 5.0) clipped.push_back(x);
  Series h = histogram_series("Re W / pi", clipped, -5.0, 5.0, o.bins);
  for (double& y : h.y) y *= static_cast<double>(clipped.size()) / static_cast<double>(v.size());
  Series c{"standard Cauchy", SeriesKind::line, {}, {}};
  for (int i = 0; i <= 200; ++i) {
    const double x = -5.0 + 0.05 * i;
    c.x.push_back(x);
    c.y.push_back(1.0 / (std::numbers::pi * (1.0 + x * x)));
  }
  run.chart("", Chart{"Rescaled logarithmic derivative", "value", "density", {h, c}});
  return kExitOk;
}

int cmd_count_variance(const Options& o, Run& run) {
  const auto grid = parse_grid(o.r_grid);
  CountSampler sampler;
  std::string table_source;
  if (o.source == "poisson") {
    sampler = poisson_sampler();
  } else if (o.source == "gue") {
    sampler = gue_probe_sampler(o.n, o.energy, {ProcessTag::eigenvalues});
  } else if (o.source == "dpp") {
    const double big = *std::max_element(grid.begin(), grid.end());
    const double radius = std::max(o.radius, 4.0 * big + 1.0);
    auto d = std::make_shared<DppSpectral>(decompose(nystrom_sine_kernel(radius)));
    sampler = configuration_sampler([d](std::uint64_t s) { return sample_dpp(*d, s); }, radius,
                                    {ProcessTag::eigenvalues});
  } else if (o.source == "xi") {
    auto z = std::make_shared<const ZeroTable>(acquire_table(o.zeros_file, o.from, o.to, run.workers()));
    table_source = z->source;
    sampler = xi_table_sampler(z, nullptr, o.t_lo, o.t_hi);
  } else {
    throw InvalidArgument("unknown source '" + o.source + "' (poisson | gue | dpp | xi)");
  }
  const auto var = count_variance(sampler, grid, o.trials, o.seed, run.workers());
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < grid.size(); ++i)
    rows.push_back({fmt(grid[i]), fmt(var[i]), fmt(std::log(std::numbers::e + grid[i]))});
  run.csv("", "R,variance,log_e_plus_R", rows);
  ordered_json j;
  j["source"] = o.source;
  j["trials"] = o.trials;
  if (!table_source.empty()) j["table_source"] = table_source;
  run.json("", j);
  Series s{"variance", SeriesKind::line, grid, var};
  run.chart("", Chart{"Count variance", "R", "Var #[0, R]", {s}});
  return kExitOk;
}

void add_common(CLI::App* sub, Options& o, bool stochastic, bool with_svg) {
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--workers", o.workers, "Worker threads (default from SINECRIT_WORKERS)");
  if (stochastic) sub->add_option("--seed", o.seed, "Master seed")->required();
  if (with_svg) sub->add_flag("--svg", o.svg, "Also write an SVG figure");
}

std::vector<std::pair<std::string, std::string>> collect_parameters(const CLI::App* sub) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const CLI::Option* opt : sub->get_options()) {
    const auto& names = opt->get_lnames();
    if (names.empty()) continue;
    const std::string& name = names.front();
    if (name == "help" || name == "out" || name == "workers" || name == "seed") continue;
    std::string value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& res = opt->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
    } else {
      value = opt->get_default_str();
    }
    out.emplace_back(name, value);
  }
  return out;
}

int replay(const Options& o, const std::map<std::string, Command>& commands) {
  const RunManifest m = RunManifest::load(o.manifest);
  const auto it = commands.find(m.subcommand);
  if (it == commands.end()) throw InputError("replay: unknown subcommand '" + m.subcommand + "'");
  if (m.version != kVersion)
    std::cerr << "replay: manifest written by version " << m.version << ", running " << kVersion << '\n';
  std::vector<std::string> args{m.subcommand};
  for (const auto& [k, v] : m.parameters) {
    const CLI::Option* opt = it->second.app->get_option_no_throw("--" + k);
    if (opt == nullptr) throw InputError("replay: unknown parameter '" + k + "'");
    if (opt->get_expected_max() == 0) {
      if (v == "true") args.push_back("--" + k);
      continue;
    }
    args.push_back("--" + k);
    args.push_back(v);
  }
  if (m.seed) {
    args.push_back("--seed");
    args.push_back(std::to_string(*m.seed));
  }
  args.push_back("--out");
  args.push_back(o.out);
  args.push_back("--workers");
  args.push_back(std::to_string(o.workers ? o.workers : default_workers()));
  const int code = run(args);
  if (code != kExitOk || !o.verify) return code;
  const RunManifest again = RunManifest::load(fs::path(o.out) / (m.subcommand + ".manifest.json"));
  for (const auto& [file, digest] : m.outputs) {
    const auto found = again.outputs.find(file);
    if (found == again.outputs.end() || found->second != digest)
      throw NumericalError("replay: output " + file + " differs from the manifest");
  }
  std::cout << "replay: " << m.outputs.size() << " outputs reproduced\n";
  return kExitOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  auto number = [&](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
      throw InvalidArgument("grid '" + spec + "': bad number '" + std::string(s) + "'");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string_view> parts;
    std::string_view rest(spec);
    for (std::size_t p; (p = rest.find(':')) != std::string_view::npos; rest.remove_prefix(p + 1))
      parts.push_back(rest.substr(0, p));
    parts.push_back(rest);
    if (parts.size() != 3) throw InvalidArgument("grid '" + spec + "': expected start:stop:step");
    const double a = number(parts[0]);
    const double b = number(parts[1]);
    const double h = number(parts[2]);
    if (!(h > 0.0) || b < a) throw InvalidArgument("grid '" + spec + "': need step > 0, stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / h + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) out.push_back(a + h * static_cast<double>(i));
  } else {
    std::string_view rest(spec);
    for (std::size_t p; (p = rest.find(',')) != std::string_view::npos; rest.remove_prefix(p + 1))
      out.push_back(number(rest.substr(0, p)));
    out.push_back(number(rest));
  }
  return out;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"Critical points of GUE, sine-process and zeta statistics", "sinecrit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;
  o.workers = default_workers();
  std::map<std::string, Command> commands;

  std::map<std::string, std::unique_ptr<Options>> opts;
  auto add = [&](const std::string& name, const std::string& help, bool stochastic, bool svg,
                 Handler h) -> std::pair<CLI::App*, Options*> {
    CLI::App* sub = app.add_subcommand(name, help);
    auto& slot = opts[name];
    slot = std::make_unique<Options>();
    slot->workers = o.workers;
    add_common(sub, *slot, stochastic, svg);
    commands[name] = Command{sub, stochastic, std::move(h)};
    return {sub, slot.get()};
  };

  {
    auto [s, p] = add("sample-gue", "Eigenvalues of GUE_N samples", true, false, cmd_sample_gue);
    p->n = 10;
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
    s->add_option("--samples", p->samples, "Number of samples")->capture_default_str();
    s->add_option("--model", p->model, "tridiagonal | dense")->capture_default_str();
  }
  {
    auto [s, p] = add("crit-points", "Eigenvalues and critical points of GUE_N samples", true, false, cmd_crit_points);
    p->n = 10;
    p->model = "dense";
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
    s->add_option("--samples", p->samples, "Number of samples")->capture_default_str();
    s->add_option("--model", p->model, "tridiagonal | dense")->capture_default_str();
    s->add_option("--level", p->level, "Level a of sum 1/(x_j - z) + a = 0")->capture_default_str();
  }
  {
    auto [s, p] = add("repulsion", "Omega_k probabilities on an eps grid with an exponent fit", true, true, cmd_repulsion);
    p->n = 300;
    s->add_option("--k", p->k, "Minimum number of points")->capture_default_str();
    s->add_option("--a", p->a, "Level a; sets the energy E")->capture_default_str();
    s->add_option("--eps", p->eps, "eps grid (start:stop:step or list)")->capture_default_str();
    s->add_option("--trials", p->trials, "Number of samples")->capture_default_str();
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
    s->add_option("--process", p->process, "eigenvalues | critical-points")->capture_default_str();
  }
  {
    auto [s, p] = add("theorem1", "Event-inclusion frequencies for the critical-point repulsion bound", true, false, cmd_theorem1);
    p->n = 300;
    p->source = "gue";
    s->add_option("--k", p->k, "k >= 2")->capture_default_str();
    s->add_option("--eps", p->eps_value, "eps")->capture_default_str();
    s->add_option("--R", p->big_r, "R >= 1 + 4/(k-1)")->capture_default_str();
    s->add_option("--trials", p->trials, "Number of configurations")->capture_default_str();
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
    s->add_option("--a", p->a, "Level a")->capture_default_str();
    s->add_option("--source", p->source, "gue | poisson")->capture_default_str();
  }
  {
    auto [s, p] = add("formfactor", "Pair form factor of sine-process windows", true, true, cmd_formfactor);
    p->n = 300;
    p->source = "dpp";
    p->process = "eigenvalues";
    s->add_option("--R", p->radius, "Window half-width")->capture_default_str();
    s->add_option("--windows", p->windows, "Number of windows")->capture_default_str();
    s->add_option("--alpha", p->alpha, "alpha grid")->capture_default_str();
    s->add_option("--source", p->source, "dpp | gue")->capture_default_str();
    s->add_option("--process", p->process, "eigenvalues | critical-points")->capture_default_str();
    s->add_option("--a", p->a, "Level a")->capture_default_str();
    s->add_option("--n", p->n, "Matrix size for --source gue")->capture_default_str();
    s->add_option("--raw-scale", p->raw_scale, "Scale applied to differences inside the weight")->capture_default_str();
  }
  {
    auto [s, p] = add("fgl-curve", "Limiting critical-point form factor on a grid", false, true, cmd_fgl_curve);
    p->alpha = "0.02:0.98:0.02";
    s->add_option("--alpha", p->alpha, "alpha grid in (0, 1)")->capture_default_str();
  }
  {
    auto [s, p] = add("dpp-sample", "Exact samples of the discretised sine process", true, false, cmd_dpp_sample);
    s->add_option("--R", p->radius, "Window half-width")->capture_default_str();
    s->add_option("--samples", p->samples, "Number of windows")->capture_default_str();
    s->add_option("--nodes", p->nodes, "Quadrature nodes (0 = default)")->capture_default_str();
  }
  {
    auto [s, p] = add("zeta-zeros", "Zeros of Xi(t) in a height range", false, false, cmd_zeta_zeros);
    s->add_option("--from", p->from, "Lower height")->capture_default_str();
    s->add_option("--to", p->to, "Upper height")->capture_default_str();
    s->add_option("--table", p->table_out, "Also save a zero table file");
  }
  {
    auto [s, p] = add("xi-critical", "Critical ordinates of Xi between consecutive zeros", false, false, cmd_xi_critical);
    s->add_option("--from", p->from, "Lower height")->capture_default_str();
    s->add_option("--to", p->to, "Upper height")->capture_default_str();
    s->add_option("--zeros-file", p->zeros_file, "Zero table to use instead of computing");
  }
  {
    auto [s, p] = add("w-stats", "Mean and second moment of W_{t,T}(iR)", true, false, cmd_w_stats);
    p->from = 1.0;
    p->to = 5100.0;
    p->samples = 2000;
    p->radius = 50.0;
    s->add_option("--zeros-file", p->zeros_file, "Zero table");
    s->add_option("--from", p->from, "Lower height when computing zeros")->capture_default_str();
    s->add_option("--to", p->to, "Upper height when computing zeros")->capture_default_str();
    s->add_option("--t-lo", p->t_lo, "Lowest sampled height")->capture_default_str();
    s->add_option("--t-hi", p->t_hi, "Highest sampled height")->capture_default_str();
    s->add_option("--samples", p->samples, "Number of heights")->capture_default_str();
    s->add_option("--radius", p->radius, "Truncation radius")->capture_default_str();
    s->add_option("--heights", p->heights, "Imaginary parts R")->capture_default_str();
    s->add_option("--T", p->big_t, "T for the asymptotic scale (0 = t-hi)")->capture_default_str();
    s->add_option("--scale", p->scale, "local | asymptotic")->capture_default_str();
    s->add_flag("--tail-correction", p->tail_correction,
                "Add the unit-density contribution beyond the radius");
  }
  {
    auto [s, p] = add("spacings", "Critical-point spacings of GUE_N and of Xi", true, true, cmd_spacings);
    p->n = 300;
    p->samples = 200;
    p->from = 1000.0;
    p->to = 5000.0;
    p->bins = 40;
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
    s->add_option("--samples", p->samples, "GUE samples")->capture_default_str();
    s->add_option("--energy", p->energy, "Energy E")->capture_default_str();
    s->add_option("--bulk", p->bulk, "Unfolded half-width kept around E")->capture_default_str();
    s->add_option("--zeros-file", p->zeros_file, "Zero table");
    s->add_option("--from", p->from, "Lower height when computing zeros")->capture_default_str();
    s->add_option("--to", p->to, "Upper height when computing zeros")->capture_default_str();
    s->add_option("--bins", p->bins, "Histogram bins")->capture_default_str();
    s->add_option("--max", p->hist_max, "Histogram upper edge (0 = 3)")->capture_default_str();
  }
  {
    auto [s, p] = add("fig1", "One GUE_N sample: eigenvalues, critical points, submatrix", true, true, cmd_fig1);
    p->n = 40;
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
  }
  {
    auto [s, p] = add("fig2", "Second-closest-to-zero histograms", true, true, cmd_fig2);
    p->n = 50;
    p->samples = 100000;
    p->raw_scale = 0.0;
    s->add_option("--n", p->n, "Matrix size")->capture_default_str();
    s->add_option("--samples", p->samples, "Number of samples")->capture_default_str();
    s->add_option("--scale", p->raw_scale, "Multiplier (0 = N pi)")->capture_default_str();
    s->add_option("--bins", p->bins, "Histogram bins")->capture_default_str();
    s->add_option("--max", p->hist_max, "Histogram upper edge (0 = automatic)")->capture_default_str();
  }
  {
    auto [s, p] = add("cauchy-check", "KS distance of Re W_{t,T}(i eta)/pi to the Cauchy law", true, true, cmd_cauchy_check);
    p->samples = 10000;
    p->radius = 200.0;
    p->t_lo = 0.0;
    p->t_hi = 0.0;
    s->add_option("--zeros-file", p->zeros_file, "Zero table");
    s->add_option("--T", p->big_t, "Height scale T (0 = 1e4)")->capture_default_str();
    s->add_option("--t-lo", p->t_lo, "Lowest sampled height (0 = T/10)")->capture_default_str();
    s->add_option("--t-hi", p->t_hi, "Highest sampled height (0 = T)")->capture_default_str();
    s->add_option("--samples", p->samples, "Number of draws")->capture_default_str();
    s->add_option("--eta", p->eta, "Imaginary part of the evaluation point")->capture_default_str();
    s->add_option("--radius", p->radius, "Truncation radius")->capture_default_str();
    s->add_option("--scale", p->scale, "local | asymptotic")->capture_default_str();
    s->add_option("--bins", p->bins, "Histogram bins")->capture_default_str();
  }
  {
    auto [s, p] = add("count-variance", "Variance of counts in intervals of length R", true, true, cmd_count_variance);
    p->n = 300;
    p->source = "poisson";
    p->trials = 10000;
    p->radius = 40.0;
    p->from = 900.0;
    p->to = 10100.0;
    p->t_lo = 1000.0;
    p->t_hi = 10000.0;
    s->add_option("--source", p->source, "poisson | gue | dpp | xi")->capture_default_str();
    s->add_option("--R", p->r_grid, "Interval lengths")->capture_default_str();
    s->add_option("--trials", p->trials, "Number of samples")->capture_default_str();
    s->add_option("--n", p->n, "Matrix size for --source gue")->capture_default_str();
    s->add_option("--energy", p->energy, "Energy for --source gue")->capture_default_str();
    s->add_option("--radius", p->radius, "DPP window half-width")->capture_default_str();
    s->add_option("--zeros-file", p->zeros_file, "Zero table for --source xi");
    s->add_option("--from", p->from, "Lower height when computing zeros")->capture_default_str();
    s->add_option("--to", p->to, "Upper height when computing zeros")->capture_default_str();
    s->add_option("--t-lo", p->t_lo, "Lowest sampled height")->capture_default_str();
    s->add_option("--t-hi", p->t_hi, "Highest sampled height")->capture_default_str();
  }
  CLI::App* rp = app.add_subcommand("replay", "Re-run a manifest");
  rp->add_option("manifest", o.manifest, "Manifest JSON file")->required();
  rp->add_option("--out", o.out, "Output directory")->capture_default_str();
  rp->add_option("--workers", o.workers, "Worker threads");
  rp->add_flag("--verify", o.verify, "Compare output digests with the manifest");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (rp->parsed()) return replay(o, commands);
    for (auto& [name, cmd] : commands) {
      if (!cmd.app->parsed()) continue;
      const Options& o = *opts[name];
      if (o.workers == 0) throw InvalidArgument("--workers must be positive");
      RunManifest m;
      m.subcommand = name;
      m.parameters = collect_parameters(cmd.app);
      if (cmd.stochastic) m.seed = o.seed;
      m.workers = o.workers;
      m.version = kVersion;
      const auto start = std::chrono::steady_clock::now();
      Run r(o.out, name, m.digest(), o.svg, o.workers);
      int code = kExitOk;
      std::optional<std::string> failure;
      int failure_code = kExitOk;
      try {
        code = cmd.handler(o, r);
      } catch (const NumericalError& e) {
        failure = e.what();
        failure_code = kExitNumerical;
      }
      m.wall_clock_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      m.outputs = r.outputs();
      m.save(fs::path(o.out) / (name + ".manifest.json"));
      if (failure) {
        std::cerr << "sinecrit " << name << ": " << *failure << '\n';
        return failure_code;
      }
      return code;
    }
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "sinecrit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "sinecrit: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "sinecrit: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "sinecrit: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "sinecrit: internal error: " << e.what() << '\n';
    return 1;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace sinecrit::cli
