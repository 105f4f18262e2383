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


#include "sinecrit/zetaxi.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>

#include "sinecrit/error.hpp"
#include "sinecrit/parallel.hpp"

namespace sinecrit {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const double kLogPi = std::log(kPi);
const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 15> kLanczos = {
    1.000000000000000007405727,
    676.5203681218835372087395,
    -1259.13921672228177389344,
    771.3234287754377065164444,
    -176.6150291459897810877191,
    12.50734322502874532697338,
    -0.1385710323332822431295777,
    0.00001009112629473137286227944,
    -0.0000003434584225253104608054195,
    0.0000008359337835712596538246431,
    -0.0000008597755644539608755436647,
    0.0000006046497338494928107833457,
    -0.0000002911328727890613713860013,
    8.589129313568226855860868e-8,
    -1.164606563986785152934326e-8,
};

// B_{2k} / (2k)!, k = 1..30.
constexpr std::array<double, 30> kBernoulliRatio = {
    8.3333333333333333e-2,   -1.3888888888888889e-3,  3.3068783068783069e-5,
    -8.2671957671957672e-7,  2.0876756987868099e-8,   -5.2841901386874932e-10,
    1.3382536530684679e-11,  -3.3896802963225829e-13, 8.5860620562778446e-15,
    -2.1748686985580619e-16, 5.5090028283602295e-18,  -1.3954464685812523e-19,
    3.5347070396294675e-21,  -8.9535174270375469e-23, 2.2679524523376831e-24,
    -5.7447906688722024e-26, 1.4551724756148649e-27,  -3.6859949406653102e-29,
    9.3367342570950447e-31,  -2.3650224157006299e-32, 5.9906717624821343e-34,
    -1.5174548844682903e-35, 3.8437581254541882e-37,  -9.736353072646691e-39,
    2.466247044200681e-40,   -6.2470767418207437e-42, 1.5824030244644914e-43,
    -4.008273685948936e-45,  1.0153075855569556e-46,  -2.5718041582418717e-48,
};

bool is_nonpositive_integer(cd s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// log sin(w) without overflow for large |Im w|; the branch is arbitrary.
cd log_sin(cd w) {
  const cd i(0.0, 1.0);
  if (std::abs(w.imag()) < 20.0) return std::log(std::sin(w));
  if (w.imag() > 0.0) return -i * w + std::log((std::exp(2.0 * i * w) - 1.0) / (2.0 * i));
  return i * w + std::log((1.0 - std::exp(-2.0 * i * w)) / (2.0 * i));
}

cd log_gamma_lanczos(cd s) {
  const cd z = s - 1.0;
  cd acc = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) acc += kLanczos[k] / (z + static_cast<double>(k));
  const cd t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

const std::vector<double>& log_table() {
  static std::vector<double> table;
  static std::once_flag once;
  std::call_once(once, [] {
    const std::size_t n = static_cast<std::size_t>(kMaxHeight / 2.0) + 256;
    table.resize(n + 1);
    table[0] = 0.0;
    for (std::size_t k = 1; k <= n; ++k) table[k] = std::log(static_cast<double>(k));
  });
  return table;
}

cd zeta_direct(cd s, const ZetaEvalParams& p) {
  const double height = std::abs(s.imag());
  const auto n_terms =
      static_cast<std::size_t>(std::ceil(height / 2.0) + std::max(1.0, std::ceil(p.cutoff_extra)));
  const auto& logs = log_table();
  const double sigma = s.real();
  const double t = s.imag();
  double re = 0.0;
  double im = 0.0;
  for (std::size_t n = 1; n < n_terms; ++n) {
    const double ln = n < logs.size() ? logs[n] : std::log(static_cast<double>(n));
    const double mag = std::exp(-sigma * ln);
    const double ph = t * ln;
    re += mag * std::cos(ph);
    im -= mag * std::sin(ph);
  }
  const auto big_n = static_cast<double>(n_terms);
  const double ln_n = std::log(big_n);
  const cd n_pow = std::exp(-s * ln_n);  // N^{-s}
  cd sum(re, im);
  sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;
  cd rising = s;
  cd power = n_pow / big_n;
  const double inv_n2 = 1.0 / (big_n * big_n);
  for (int k = 1; k <= p.bernoulli_terms; ++k) {
    const cd term = kBernoulliRatio[static_cast<std::size_t>(k - 1)] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-3 * p.precision * std::abs(sum)) break;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    power *= inv_n2;
  }
  return sum;
}

}  // namespace

cd log_gamma_complex(cd s) {
  if (is_nonpositive_integer(s)) throw PoleError("gamma: pole at a non-positive integer");
  if (s.real() >= 0.5) return log_gamma_lanczos(s);
  return kLogPi - log_sin(kPi * s) - log_gamma_lanczos(1.0 - s);
}

cd gamma_complex(cd s) {
  if (is_nonpositive_integer(s)) throw PoleError("gamma: pole at a non-positive integer");
  if (s.real() >= 0.5) return std::exp(log_gamma_lanczos(s));
  if (std::abs(s.imag()) < 20.0) return kPi / (std::sin(kPi * s) * std::exp(log_gamma_lanczos(1.0 - s)));
  return std::exp(log_gamma_complex(s));
}

cd zeta_em(cd s, const ZetaEvalParams& p) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw InvalidArgument("zeta: argument must be finite");
  if (std::abs(s.imag()) > kMaxHeight) throw InvalidArgument("zeta: |Im s| exceeds 1e5");
  if (p.bernoulli_terms < 2 || p.bernoulli_terms > 30)
    throw InvalidArgument("zeta: bernoulli_terms must lie in [2, 30]");
  if (!(p.cutoff_extra >= 0.0) || !(p.precision > 0.0))
    throw InvalidArgument("zeta: cutoff_extra must be >= 0 and precision > 0");
  if (s == cd(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  if (s.real() >= 0.0) return zeta_direct(s, p);
  if (is_nonpositive_integer(s) && std::fmod(s.real(), 2.0) == 0.0) return 0.0;
  const cd r = 1.0 - s;
  const cd log_factor = s * std::log(2.0) + (s - 1.0) * kLogPi + log_sin(0.5 * kPi * s) +
                        log_gamma_complex(r);
  return std::exp(log_factor) * zeta_direct(r, p);
}

cd xi(cd s) {
  if (s.real() < 0.5) return xi(1.0 - s);
  if (s == cd(1.0, 0.0)) return 0.5;
  const cd log_pre = std::log(0.5 * s * (s - 1.0)) - 0.5 * s * kLogPi + log_gamma_complex(0.5 * s);
  return std::exp(log_pre) * zeta_em(s);
}

double Xi(double t) {
  const cd s(0.5, t);
  const cd log_pre = std::log(0.5 * s * (s - 1.0)) - 0.5 * s * kLogPi + log_gamma_complex(0.5 * s);
  const cd rotated = std::polar(1.0, log_pre.imag()) * zeta_em(s);
  if (std::abs(rotated.imag()) > 1e-9 * std::max(1.0, std::abs(rotated)))
    throw NumericalError("Xi: imaginary part is not negligible");
  return std::exp(log_pre.real()) * rotated.real();
}

double riemann_siegel_theta(double t) {
  return log_gamma_complex(cd(0.25, 0.5 * t)).imag() - 0.5 * t * kLogPi;
}

double hardy_z(double t) {
  const double a = std::abs(t);
  const double th = riemann_siegel_theta(a);
  const cd z = zeta_em(cd(0.5, a));
  return std::cos(th) * z.real() - std::sin(th) * z.imag();
}

double xi_log_scale(double t) {
  return std::log(0.5 * (t * t + 0.25)) - 0.25 * kLogPi +
         log_gamma_complex(cd(0.25, 0.5 * std::abs(t))).real();
}

double xi_normalized(double t) { return -hardy_z(t); }

double xi_slope_normalized(double t, double h) {
  if (!(h > 0.0)) throw InvalidArgument("xi slope: step must be positive");
  const double l0 = xi_log_scale(t);
  auto scaled = [l0](double u) { return std::exp(xi_log_scale(u) - l0) * xi_normalized(u); };
  const double d1 = (scaled(t + h) - scaled(t - h)) / (2.0 * h);
  const double d2 = (scaled(t + 2.0 * h) - scaled(t - 2.0 * h)) / (4.0 * h);
  return (4.0 * d1 - d2) / 3.0;
}

double riemann_von_mangoldt(double t) {
  if (!(t > 0.0)) return 0.0;
  const double u = t / (2.0 * kPi);
  return std::max(0.0, u * std::log(u) - u + 0.875);
}

double mean_zero_spacing(double t) {
  return 2.0 * kPi / std::max(1.0, std::log(t / (2.0 * kPi)));
}

namespace {

constexpr double kZeroTol = 1e-9;
constexpr double kCriticalTol = 1e-8;
constexpr double kScanChunk = 64.0;
constexpr int kScanPerSpacing = 8;
constexpr int kGoldenIterations = 48;
constexpr int kCountSlack = 2;
constexpr std::size_t kGapsPerTask = 128;

// Illinois false position on a sign-changing bracket.
template <typename F>
double bracket_root(F&& f, double a, double fa, double b, double fb, double tol) {
  int side = 0;
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double fc = f(c);
    if (fc == 0.0) return c;
    if ((fc < 0.0) == (fa < 0.0)) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (a + b);
}

bool opposite(double x, double y) { return (x < 0.0 && y > 0.0) || (x > 0.0 && y < 0.0); }

// Golden-section search for a point where sign * f < 0 inside (a, b).
bool find_dip(const std::function<double(double)>& f, double a, double b, double sign,
              double& where) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = sign * f(c);
  double fd = sign * f(d);
  for (int it = 0; it < kGoldenIterations; ++it) {
    if (fc < 0.0) {
      where = c;
      return true;
    }
    if (fd < 0.0) {
      where = d;
      return true;
    }
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = sign * f(d);
    }
  }
  return false;
}

std::vector<double> scan_zeros(double lo, double hi) {
  std::vector<double> grid{lo};
  while (grid.back() < hi) grid.push_back(std::min(hi, grid.back() + mean_zero_spacing(grid.back()) / kScanPerSpacing));
  std::vector<double> val(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) val[i] = xi_normalized(grid[i]);
  const std::function<double(double)> f = [](double t) { return xi_normalized(t); };
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (val[i] == 0.0) out.push_back(grid[i]);
    if (opposite(val[i], val[i + 1])) {
      out.push_back(bracket_root(f, grid[i], val[i], grid[i + 1], val[i + 1], kZeroTol));
      continue;
    }
    if (i == 0 || val[i] == 0.0 || opposite(val[i - 1], val[i])) continue;
    if (std::abs(val[i]) < std::abs(val[i - 1]) && std::abs(val[i]) < std::abs(val[i + 1])) {
      const double sign = val[i] > 0.0 ? 1.0 : -1.0;
      double mid = 0.0;
      if (find_dip(f, grid[i - 1], grid[i + 1], sign, mid)) {
        const double fm = f(mid);
        out.push_back(bracket_root(f, grid[i - 1], val[i - 1], mid, fm, kZeroTol));
        out.push_back(bracket_root(f, mid, fm, grid[i + 1], val[i + 1], kZeroTol));
      }
    }
  }
  return out;
}

}  // namespace

ZeroTable find_zeros(double t_min, double t_max, unsigned workers) {
  if (!(t_min > 0.0) || !(t_max > t_min) || t_max > kMaxHeight)
    throw InvalidArgument("zeta zeros: need 0 < t_min < t_max <= 1e5");
  const auto n_chunks = static_cast<std::size_t>(std::ceil((t_max - t_min) / kScanChunk));
  auto parts = run_tasks(n_chunks, workers, [&](std::size_t k) {
    const double lo = t_min + static_cast<double>(k) * kScanChunk;
    const double hi = k + 1 == n_chunks ? t_max : t_min + static_cast<double>(k + 1) * kScanChunk;
    return scan_zeros(lo, hi);
  });
  ZeroTable out;
  out.source = "computed";
  out.t_min = t_min;
  out.t_max = t_max;
  for (const auto& p : parts) out.ordinates.insert(out.ordinates.end(), p.begin(), p.end());
  std::sort(out.ordinates.begin(), out.ordinates.end());
  out.ordinates.erase(std::unique(out.ordinates.begin(), out.ordinates.end(),
                                  [](double a, double b) { return b - a < kZeroTol; }),
                      out.ordinates.end());
  const double expected = riemann_von_mangoldt(t_max) - riemann_von_mangoldt(t_min);
  if (std::abs(static_cast<double>(out.ordinates.size()) - expected) > kCountSlack + 0.5) {
    std::ostringstream msg;
    msg << "zeta zeros: found " << out.ordinates.size() << " zeros in [" << t_min << ", " << t_max
        << "], expected about " << expected;
    throw NumericalError(msg.str());
  }
  return out;
}

namespace {

double gap_critical_point(double a, double b) {
  const double gap = b - a;
  int intervals = 8;
  double h = gap / 1024.0;
  for (int refine = 0; refine <= 4; ++refine) {
    std::vector<double> ts(static_cast<std::size_t>(intervals) + 1);
    std::vector<double> ds(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      ts[i] = i + 1 == ts.size() ? b : a + gap * static_cast<double>(i) / intervals;
      ds[i] = xi_slope_normalized(ts[i], h);
    }
    int changes = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
      if (opposite(ds[i], ds[i + 1]) || ds[i + 1] == 0.0) {
        ++changes;
        where = i;
      }
    }
    if (changes == 1) {
      if (ds[where + 1] == 0.0) return ts[where + 1];
      return bracket_root([h](double t) { return xi_slope_normalized(t, h); }, ts[where], ds[where],
                          ts[where + 1], ds[where + 1], kCriticalTol);
    }
    intervals *= 2;
    h *= 0.5;
  }
  std::ostringstream msg;
  msg << std::setprecision(12) << "xi critical points: no unique slope sign change in (" << a
      << ", " << b << ")";
  throw NumericalError(msg.str());
}

}  // namespace

std::vector<double> find_critical_points(const ZeroTable& z, unsigned workers) {
  const auto& g = z.ordinates;
  if (g.size() < 2) throw InvalidArgument("xi critical points: need at least two zeros");
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (!(g[i + 1] > g[i])) throw InvalidArgument("xi critical points: zeros must ascend");
  const std::size_t n_gaps = g.size() - 1;
  const std::size_t n_tasks = (n_gaps + kGapsPerTask - 1) / kGapsPerTask;
  auto parts = run_tasks(n_tasks, workers, [&](std::size_t k) {
    std::vector<double> out;
    const std::size_t end = std::min(n_gaps, (k + 1) * kGapsPerTask);
    for (std::size_t i = k * kGapsPerTask; i < end; ++i) out.push_back(gap_critical_point(g[i], g[i + 1]));
    return out;
  });
  std::vector<double> out;
  out.reserve(n_gaps);
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

ZeroTable load_zero_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("zero table: cannot open " + path.string());
  ZeroTable out;
  out.source = path.string();
  bool have_range = false;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw InputError("zero table " + path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (view.front() == '#') {
      const std::string_view body = trim(view.substr(1));
      if (body.substr(0, 6) == "range ") {
        const std::string_view rest = trim(body.substr(6));
        const auto space = rest.find_first_of(" \t");
        if (space == std::string_view::npos ||
            !parse_double(rest.substr(0, space), out.t_min) ||
            !parse_double(rest.substr(space), out.t_max) || !(out.t_max > out.t_min))
          fail("malformed range directive");
        have_range = true;
      }
      continue;
    }
    double v = 0.0;
    if (!parse_double(view, v)) fail("not a number: '" + std::string(view) + "'");
    if (!(v > 0.0)) fail("ordinates must be positive");
    if (!out.ordinates.empty() && !(v > out.ordinates.back())) fail("ordinates must ascend");
    out.ordinates.push_back(v);
  }
  if (out.ordinates.empty()) throw InputError("zero table " + path.string() + ": no ordinates");
  if (!have_range) {
    out.t_min = out.ordinates.front();
    out.t_max = out.ordinates.back();
  } else if (out.ordinates.front() < out.t_min || out.ordinates.back() > out.t_max) {
    throw InputError("zero table " + path.string() + ": ordinates outside the declared range");
  }
  return out;
}

void save_zero_table(const ZeroTable& z, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("zero table: cannot write " + path.string());
  out << "# zeta zero ordinates\n# range " << std::setprecision(17) << z.t_min << ' ' << z.t_max
      << '\n';
  for (double g : z.ordinates) out << g << '\n';
  if (!out) throw InputError("zero table: write failed for " + path.string());
}

double unfolding_density(double t, double big_t, UnfoldingScale scale) {
  const double d = scale == UnfoldingScale::asymptotic ? std::log(big_t) / (2.0 * kPi)
                                                       : std::log(t / (2.0 * kPi)) / (2.0 * kPi);
  if (!(d > 0.0)) throw InvalidArgument("unfolding: height too small for a positive density");
  return d;
}

cd unit_density_tail(double radius, cd z) {
  const double u = z.real(), v = z.imag();
  const double re = 0.5 * std::log(((radius + u) * (radius + u) + v * v) /
                                   ((radius - u) * (radius - u) + v * v));
  const double im = v == 0.0 ? 0.0
                             : std::copysign(kPi, v) - std::atan((radius - u) / v) -
                                   std::atan((radius + u) / v);
  return {re, im};
}

cd w_tT(const ZeroTable& z, double t, double big_t, cd zpt, double radius, UnfoldingScale scale,
        bool tail) {
  if (!(radius > 0.0)) throw InvalidArgument("w_tT: radius must be positive");
  if (!(t > z.t_min && t < z.t_max)) throw InvalidArgument("w_tT: t outside the table range");
  const double dens = unfolding_density(t, big_t, scale);
  const double r = std::min({radius, (t - z.t_min) * dens, (z.t_max - t) * dens});
  const auto& g = z.ordinates;
  const double pad = 1e-9 * (1.0 + t);
  const auto lo = std::lower_bound(g.begin(), g.end(), t - r / dens - pad);
  const auto hi = std::upper_bound(g.begin(), g.end(), t + r / dens + pad);
  std::vector<double> x;
  x.reserve(static_cast<std::size_t>(hi - lo));
  for (auto it = lo; it != hi; ++it) x.push_back((*it - t) * dens);
  const cd w = w_eval(x, zpt, r);
  return tail ? w + unit_density_tail(r, zpt) : w;
}

XiWindow unfold_zeros(const ZeroTable& z, double t, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("unfold zeros: radius must be positive");
  if (!(t >= z.t_min && t <= z.t_max)) throw InvalidArgument("unfold zeros: t outside the table range");
  XiWindow w;
  w.center = t;
  w.scale = unfolding_density(t, t, UnfoldingScale::local);
  w.asymptotic_scale = unfolding_density(t, t, UnfoldingScale::asymptotic);
  for (double g : z.ordinates) {
    const double x = (g - t) * w.scale;
    if (std::abs(x) <= radius) w.points.push_back(x);
  }
  return w;
}

std::vector<double> unfolded_spacings(std::span<const double> ordinates, double lo, double hi) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < ordinates.size(); ++i) {
    const double a = ordinates[i];
    const double b = ordinates[i + 1];
    if (a < lo || b > hi) continue;
    const double mid = 0.5 * (a + b);
    out.push_back((b - a) * unfolding_density(mid, mid, UnfoldingScale::local));
  }
  return out;
}

}  // namespace sinecrit
