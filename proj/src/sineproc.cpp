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


#include "sinecrit/sineproc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sinecrit/error.hpp"
#include "sinecrit/rng.hpp"

namespace sinecrit {

double sinc_pi(double d) {
  if (d == 0.0) return 1.0;
  const double x = std::numbers::pi * d;
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

std::size_t default_node_count(double radius) {
  return std::max<std::size_t>(static_cast<std::size_t>(std::ceil(2.0 * kNodesPerUnit * radius)),
                               64);
}

KernelDiscretization nystrom_sine_kernel(double radius, std::size_t m) {
  if (!(radius > 0.0)) throw InvalidArgument("radius must be positive");
  const auto min_nodes = static_cast<std::size_t>(std::ceil(2.0 * kNodesPerUnit * radius));
  if (m < min_nodes)
    throw InvalidArgument("node count " + std::to_string(m) + " below ceil(8R) = " +
                          std::to_string(min_nodes));
  KernelDiscretization k;
  k.radius = radius;
  auto rule = gauss_legendre(m, -radius, radius);
  k.nodes = std::move(rule.nodes);
  k.weights = std::move(rule.weights);
  k.kernel = Matrix<double>(m, m);
  for (std::size_t p = 0; p < m; ++p) {
    k.kernel(p, p) = k.weights[p];
    const double sp = std::sqrt(k.weights[p]);
    for (std::size_t q = 0; q < p; ++q) {
      const double v = sp * sinc_pi(k.nodes[p] - k.nodes[q]) * std::sqrt(k.weights[q]);
      k.kernel(p, q) = v;
      k.kernel(q, p) = v;
    }
  }
  return k;
}

KernelDiscretization nystrom_sine_kernel(double radius) {
  return nystrom_sine_kernel(radius, default_node_count(radius));
}

DppSpectral decompose(const KernelDiscretization& k) {
  auto eig = symmetric_eigen(k.kernel);
  for (double v : eig.values)
    if (v < -kKernelSpectrumTol || v > 1.0 + kKernelSpectrumTol)
      throw NumericalError("discretized sine kernel eigenvalue " + std::to_string(v) +
                           " outside [0, 1]");
  DppSpectral d;
  d.radius = k.radius;
  d.eigenvalues = std::move(eig.values);
  for (double& v : d.eigenvalues) v = std::clamp(v, 0.0, 1.0);
  d.eigenvectors = std::move(eig.vectors);
  d.nodes = k.nodes;
  d.weights = k.weights;
  d.cell_edges.resize(d.nodes.size() + 1);
  d.cell_edges[0] = -k.radius;
  for (std::size_t p = 0; p < d.weights.size(); ++p)
    d.cell_edges[p + 1] = d.cell_edges[p] + d.weights[p];
  d.cell_edges.back() = k.radius;
  return d;
}

PointConfiguration sample_dpp(const DppSpectral& d, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t m = d.nodes.size();
  // Columns of the selected eigenvectors, stored contiguously per column.
  std::vector<std::vector<double>> cols;
  for (std::size_t j = 0; j < d.eigenvalues.size(); ++j) {
    if (rng.uniform() < d.eigenvalues[j]) {
      std::vector<double> c(m);
      for (std::size_t p = 0; p < m; ++p) c[p] = d.eigenvectors(p, j);
      cols.push_back(std::move(c));
    }
  }
  PointConfiguration out;
  out.half_width = d.radius;
  out.density = DensityModel::unit;
  std::vector<double> prob(m);
  while (!cols.empty()) {
    double total = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      double s = 0.0;
      for (const auto& c : cols) s += c[p] * c[p];
      prob[p] = s;
      total += s;
    }
    const double target = rng.uniform() * total;
    std::size_t node = m - 1;
    double acc = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      acc += prob[p];
      if (target < acc) {
        node = p;
        break;
      }
    }
    const double lo = d.cell_edges[node];
    const double hi = d.cell_edges[node + 1];
    out.points.push_back(lo + rng.uniform() * (hi - lo));

    // Condition on the chosen node: eliminate it from the span.
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < cols.size(); ++j)
      if (std::abs(cols[j][node]) > std::abs(cols[pivot][node])) pivot = j;
    const std::vector<double> pv = std::move(cols[pivot]);
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pivot));
    for (auto& c : cols) {
      const double f = c[node] / pv[node];
      for (std::size_t p = 0; p < m; ++p) c[p] -= f * pv[p];
    }
    // Modified Gram--Schmidt.
    for (std::size_t j = 0; j < cols.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        double dot = 0.0;
        for (std::size_t p = 0; p < m; ++p) dot += cols[i][p] * cols[j][p];
        for (std::size_t p = 0; p < m; ++p) cols[j][p] -= dot * cols[i][p];
      }
      double nrm = 0.0;
      for (double v : cols[j]) nrm += v * v;
      nrm = std::sqrt(nrm);
      for (double& v : cols[j]) v /= nrm;
    }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

PointConfiguration sample_sine_gue_proxy(std::size_t n, double radius, std::uint64_t seed) {
  if (n < 50) throw InvalidArgument("GUE proxy needs N >= 50");
  if (!(radius > 0.0) || radius > static_cast<double>(n) / 20.0)
    throw InvalidArgument("GUE proxy window must satisfy 0 < R <= N/20");
  const auto s = sample_gue_spectrum(n, seed);
  Rng rng(derive_seed(seed, 0x5348494654ULL));
  const double shift = rng.uniform();
  PointConfiguration out;
  out.half_width = radius;
  out.density = DensityModel::semicircle;
  for (double x : unfold_all(s, 0.0, shift))
    if (std::abs(x) <= radius) out.points.push_back(x);
  return out;
}

}  // namespace sinecrit
