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


#ifndef SINECRIT_SINEPROC_HPP
#define SINECRIT_SINEPROC_HPP

// Samplers of the sine process on [-R, R]: a discretized determinantal
// sampler and the GUE bulk proxy.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinecrit/ensembles.hpp"
#include "sinecrit/linalg.hpp"

namespace sinecrit {

/// sin(pi d)/(pi d), with the removable singularity filled.
double sinc_pi(double d);

/// Nodes per unit length in the resolution rule m >= ceil(8 R).
inline constexpr double kNodesPerUnit = 4.0;
/// Default node budget: max(ceil(8 R), 64).
std::size_t default_node_count(double radius);

/// Symmetrized Nystrom matrix sqrt(w_p) K(u_p, u_q) sqrt(w_q) on
/// Gauss--Legendre nodes.
struct KernelDiscretization {
  double radius = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
  Matrix<double> kernel;
};

/// Eigenvalues clamped to [0, 1] with orthonormal eigenvectors.
struct DppSpectral {
  double radius = 0.0;
  std::vector<double> eigenvalues;
  Matrix<double> eigenvectors;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> cell_edges;  ///< cumulative weights from -R: node p owns [edge_p, edge_{p+1})
};

/// Eigenvalue tolerance of the discretized kernel outside [0, 1].
inline constexpr double kKernelSpectrumTol = 1e-8;

/// Throws InvalidArgument when m < ceil(8 R).
KernelDiscretization nystrom_sine_kernel(double radius, std::size_t m);
KernelDiscretization nystrom_sine_kernel(double radius);

/// Throws NumericalError if the spectrum leaves [-tol, 1 + tol].
DppSpectral decompose(const KernelDiscretization& k);

/// One configuration: Bernoulli-selected eigenvectors, sequential node
/// selection from the conditioned intensity, uniform jitter within the cell.
PointConfiguration sample_dpp(const DppSpectral& d, std::uint64_t seed);

/// GUE_N bulk window at E = 0 with a uniform recentering shift in [0, 1).
/// Requires N >= 50 and R <= N/20.
PointConfiguration sample_sine_gue_proxy(std::size_t n, double radius, std::uint64_t seed);

}  // namespace sinecrit

#endif  // SINECRIT_SINEPROC_HPP
