// Copyright 2026 The ftq Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Bergman kernels of the future tube and of the one-dimensional half-plane
 * and disk, the induced metric, Monte-Carlo reproduction and the momentum
 * kernel.
 *
 * One-dimensional conventions: the half-plane is {z = x - i r : r > 0} with
 * measure dx dr. Its orthonormal basis is
 *   phi^n(z) = 2i sqrt(n/pi) (i + z)^{n-1} / (i - z)^{n+1},
 * with kernel K(z, w-bar) = -1 / (pi (z - w-bar)^2), positive on the diagonal.
 */

#pragma once

#include <functional>
#include <vector>

#include "ftq/minkowski.hpp"
#include "ftq/montecarlo.hpp"

namespace ftq {

/// 192 / pi^4, the tube kernel normalization.
inline constexpr double kKernelConstant = 192.0 / (kPi * kPi * kPi * kPi);

/**
 * K(z, w-bar) = (192/pi^4) / [(z - w-bar).(z - w-bar)]^4 for raw complex
 * arguments. Throws BoundaryDivergence when |(z - w-bar)^2| < kBoundaryEps.
 */
Complex kernel4(const ComplexFourVector &z, const ComplexFourVector &wbar);

/// K(z, w-bar) for tube points.
Complex kernel4(const FutureTubePoint &z, const FutureTubePoint &w);

/// K(z, z-bar) = 3 / (4 pi^4 (r.r)^4).
double kernel_diagonal(const FutureTubePoint &z);

/// The same diagonal written in momentum form, 3 (p.p)^4 / (4 pi^4 hbar^8).
double kernel_diagonal_momentum(const RealFourVector &p, double hbar = 1.0);

Complex kernel_halfplane(Complex z, Complex w);
Complex basis_halfplane(int n, Complex z);

/// phi_n(w) = sqrt(n/pi) w^{n-1} on the unit disk.
Complex basis_disk(int n, Complex w);

/// K(z, w-bar) = 1 / (pi (1 - z w-bar)^2) on the unit disk.
Complex kernel_disk(Complex z, Complex w);

/// Partial basis sum sum_{n <= terms} phi^n(z) conj(phi^n(w)).
Complex kernel_halfplane_series(Complex z, Complex w, int terms);

/**
 * Integral over the half-plane of K(z, y-bar) f(y) dx dr, computed on the
 * Cayley disk image with the polar rule of ftq::quad.
 */
Complex reproduce_halfplane_quadrature(const std::function<Complex(Complex)> &f, Complex z,
                                       std::size_t n_radial = 200, std::size_t n_angular = 256);

/// Default stencil 1e-4 sqrt(r.r).
double default_metric_step(const FutureTubePoint &z);

/**
 * Levi form d^2 log K / dz^a dz-bar^b by central differences in (x, r), with
 * d/dz = (d/dx + i d/dr)/2. Analytically this is 2 h_ab. A non-positive step
 * selects default_metric_step. Throws BoundaryDivergence when the stencil
 * leaves the tube.
 */
Eigen::Matrix4cd levi_form_numeric(const FutureTubePoint &z, double step = 0.0);

/// Real metric block on (dx, dr): half the real part of the Levi form, which
/// reproduces phase_space_metric(r).h.
Matrix4 bergman_metric_numeric(const FutureTubePoint &z, double step = 0.0);

/**
 * P_a(z, w-bar) = -1536 i hbar / pi^4 g_ab (z - w-bar)^b / [(z - w-bar)^2]^5,
 * the kernel of the momentum operator i hbar d/dx^a.
 */
Complex momentum_kernel(const FutureTubePoint &z, const FutureTubePoint &w, int a,
                        double hbar = 1.0);

/// A wavefunction on the tube together with the foci it concentrates at.
struct TubeFunction {
    std::function<Complex(const FutureTubePoint &)> f;
    std::vector<FutureTubePoint> foci;
};

/// Kernel of an integral operator, k(z, y) standing for k(z, y-bar).
using TubeKernel = std::function<Complex(const FutureTubePoint &, const FutureTubePoint &)>;

/**
 * Monte-Carlo estimate of the integral over the tube of k(z, y-bar) f(y) dmu_y.
 * The proposal mixes the foci of f with z. Throws InsufficientSamples when
 * the relative standard error exceeds cfg.max_rel_err.
 */
Estimate apply_kernel_mc(const TubeKernel &k, const TubeFunction &f, const FutureTubePoint &z,
                         const McConfig &cfg, std::string_view tag = "apply-kernel");

/// apply_kernel_mc with the Bergman kernel; converges to f(z).
Estimate reproduce_mc(const TubeFunction &f, const FutureTubePoint &z, const McConfig &cfg);

/// Estimate of the integral of K(x, y-bar) K(y, z-bar) dmu_y, which equals K(x, z-bar).
Estimate fundamental_identity_mc(const FutureTubePoint &x, const FutureTubePoint &z,
                                 const McConfig &cfg);

} // namespace ftq
