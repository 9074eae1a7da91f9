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
 * Coherent states, finite coherent-frame states and phase-space measurement.
 *
 * A pure state is a finite superposition sum_i c_i psi_{z_i} of normalized
 * coherent states; all inner products reduce to kernel evaluations through
 * the Gram matrix G_ij = <psi_{z_i}|psi_{z_j}>.
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ftq/minkowski.hpp"
#include "ftq/montecarlo.hpp"
#include "ftq/region.hpp"

namespace ftq {

/// psi_z(u) = K(u, z-bar) / sqrt(K(z, z-bar)).
Complex coherent_wavefunction(const FutureTubePoint &z, const FutureTubePoint &u);

/// <psi_w|psi_z> = K(w, z-bar) / sqrt(K(w, w-bar) K(z, z-bar)).
Complex overlap(const FutureTubePoint &w, const FutureTubePoint &z);

/// |<psi_w|psi_z>|^2 written as the fourth power of the four-point cross ratio.
double cross_ratio_probability(const FutureTubePoint &w, const FutureTubePoint &z);

Eigen::MatrixXcd gram_matrix(const std::vector<FutureTubePoint> &foci);

class PureState {
  public:
    static PureState coherent(const FutureTubePoint &z);

    /// Normalizes the coefficients against the Gram matrix. Throws
    /// InvalidArgument for empty or zero-norm input.
    static PureState make(std::vector<FutureTubePoint> foci, Eigen::VectorXcd coeffs);

    [[nodiscard]] const std::vector<FutureTubePoint> &foci() const noexcept { return foci_; }
    [[nodiscard]] const Eigen::VectorXcd &coeffs() const noexcept { return coeffs_; }

    /// xi(u) = sum_i c_i psi_{z_i}(u).
    Complex operator()(const FutureTubePoint &u) const;

    /// <this|other>.
    [[nodiscard]] Complex inner(const PureState &other) const;

  private:
    PureState(std::vector<FutureTubePoint> foci, Eigen::VectorXcd coeffs)
        : foci_(std::move(foci)), coeffs_(std::move(coeffs)) {}

    std::vector<FutureTubePoint> foci_;
    Eigen::VectorXcd coeffs_;
};

struct Branch {
    double weight;
    PureState state;
};

class DensityState {
  public:
    static DensityState pure(const PureState &s);

    /// Weights must be non-negative with a positive sum; they are rescaled to sum to 1.
    static DensityState make(std::vector<Branch> branches);

    [[nodiscard]] const std::vector<Branch> &branches() const noexcept { return branches_; }

    /// Every focus of every branch, in order.
    [[nodiscard]] std::vector<FutureTubePoint> foci() const;

    /// rho(u, u-bar) = sum_b w_b |xi_b(u)|^2.
    [[nodiscard]] double diagonal(const FutureTubePoint &u) const;

    /// rho(u, v-bar) = sum_b w_b xi_b(u) conj(xi_b(v)).
    [[nodiscard]] Complex kernel(const FutureTubePoint &u, const FutureTubePoint &v) const;

    /// Tr rho^2 = sum_bc w_b w_c |<xi_b|xi_c>|^2.
    [[nodiscard]] double purity() const;

  private:
    explicit DensityState(std::vector<Branch> b) : branches_(std::move(b)) {}

    std::vector<Branch> branches_;
};

double density_diagonal(const DensityState &state, const FutureTubePoint &z);

/// Importance proposal for integrals against rho: the state's foci, plus the
/// bounded boxes of `region` when it is not a complement.
TubeProposal density_proposal(const DensityState &state, const Region &region,
                              const McConfig &cfg);

/// Integral of rho over the region. Throws InvalidArgument for point regions
/// (measure zero) and InsufficientSamples when imprecise.
Estimate povm_probability(const DensityState &state, const Region &region, const McConfig &cfg);

struct MeasurementOutcome {
    Estimate probability;
    DensityState state;
};

/**
 * Outcome-conditioned state: a point region collapses to the coherent state
 * at that point; otherwise foci are drawn by Metropolis from rho restricted to
 * the region and returned as an equal-weight coherent mixture. Throws
 * ZeroProbabilityRegion when the region carries no weight.
 */
MeasurementOutcome post_measurement_state(const DensityState &state, const Region &region,
                                          std::size_t n_foci, const McConfig &cfg);

/// Unrecorded measurement: foci drawn from rho over the whole tube.
DensityState decohere_unrecorded(const DensityState &state, std::size_t n_foci,
                                 const McConfig &cfg);

/// Foci sampled from rho restricted to the region.
std::vector<FutureTubePoint> sample_density(const DensityState &state, const Region &region,
                                            std::size_t count, const McConfig &cfg,
                                            std::string_view tag);

struct ProjectiveOutcome {
    double p_yes;
    PureState yes;
    std::optional<PureState> no; ///< absent when p_yes = 1
};

/// Projective test for the coherent state at z: p = |xi(z)|^2 / K(z, z-bar).
ProjectiveOutcome projective_yes_probability(const PureState &state, const FutureTubePoint &z);

/**
 * Integral of F rho over the tube. Throws NonIntegrable when a single weight
 * dominates (share above cfg.max_weight_share) and InsufficientSamples when
 * the relative standard error is too large.
 */
Estimate expectation(const DensityState &state, const std::function<double(const FutureTubePoint &)> &F,
                     const McConfig &cfg);

/// Integral of psi_z(x) conj(psi_z(y)) K(z, z-bar) dmu_z against K(x, y-bar).
IdentityReport completeness_check(const FutureTubePoint &x, const FutureTubePoint &y,
                                  const McConfig &cfg);

} // namespace ftq
