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
 * Fourier analysis between holomorphic functions on the tube and functions
 * on the forward cone V+ = {p : p.p > 0, p^0 > 0}.
 *
 * The inverse map is psi(z) = (1/8 pi^5) int_{V+} e^{-i p.z} (p.p)^2 Psi(p) d^4p
 * and the coherent state psi_z has the transform
 *   Psi_z(p) = (2 pi^2 / sqrt 3) (r.r)^2 e^{-r.p} e^{i x.p}.
 */

#pragma once

#include <functional>
#include <vector>

#include "ftq/minkowski.hpp"
#include "ftq/montecarlo.hpp"
#include "ftq/states.hpp"

namespace ftq {

Complex coherent_ft(const FutureTubePoint &z, const RealFourVector &p);

/// A function on the cone with |Psi(p)| bounded by a multiple of e^{-damping.p}.
struct MomentumFunction {
    std::function<Complex(const RealFourVector &)> f;
    RealFourVector damping;
};

MomentumFunction coherent_momentum(const FutureTubePoint &z);

/// Psi(p) = e^{i p.w-bar}, whose inverse transform is K(z, w-bar).
MomentumFunction plane_wave(const FutureTubePoint &w);

/// Transform of a coherent frame, by linearity.
MomentumFunction state_momentum(const PureState &s);

/// 8 pi / (xi.xi)^2. Throws DegenerateVector unless xi is time-like future.
double cone_exponential_integral(const RealFourVector &xi);

/// Integral of (p.p)^2 e^{-xi.p} over the cone, 1536 pi / (xi.xi)^4.
double cone_weighted_integral(const RealFourVector &xi);

/// Mean of p under the density proportional to e^{-xi.p}: 4 xi / (xi.xi).
RealFourVector cone_mean(const RealFourVector &xi);

/**
 * Mixture of cone densities. Each component is proportional to
 * (p.p)^power e^{-xi.p} with power 0 or 2, sampled in the rest frame of xi:
 * power 0 draws p^0 ~ Gamma(4, xi-rate) and |p| uniform in volume on [0, p^0);
 * power 2 draws p^0 ~ Gamma(8) and v = |p|/p^0 with density ~ v^2 (1 - v^2)^2.
 */
class ConeProposal {
  public:
    explicit ConeProposal(int power = 0) : power_(power) {}

    void add(const RealFourVector &xi, double weight = 1.0);

    RealFourVector sample(Rng &rng) const;
    [[nodiscard]] double density(const RealFourVector &p) const;
    [[nodiscard]] bool empty() const noexcept { return components_.empty(); }

  private:
    struct Component {
        RealFourVector xi;
        Matrix4 boost;
        double a;
        double norm;
        double weight;
    };

    int power_;
    double total_weight_ = 0.0;
    std::vector<Component> components_;
};

struct ConeSampler {
    RealFourVector xi = RealFourVector(1.0, 0.0, 0.0, 0.0);
    std::uint64_t seed = 42;
    std::size_t samples = 100'000;
};

struct ConeSample {
    RealFourVector p;
    double density; ///< normalized density e^{-xi.p} / cone_exponential_integral(xi)
};

/// Draws from the density proportional to e^{-xi.p} on the cone.
std::vector<ConeSample> sample_forward_cone(const ConeSampler &sampler);

/// MC estimate of the integral of e^{-xi.p} over the cone, drawing from the sampler.
Estimate cone_integral_mc(const RealFourVector &xi, const ConeSampler &sampler);

/**
 * MC estimate of (1/8 pi^5) int e^{-i p.z} (p.p)^2 Psi(p) d^4p, drawing p from
 * (p.p)^2 e^{-xi.p} with xi = r_z + Psi.damping. Throws InsufficientSamples.
 */
Estimate inverse_ft_mc(const MomentumFunction &psi, const FutureTubePoint &z, const McConfig &cfg);

/**
 * Compares <s2|s1> from Gram algebra with (1/8 pi^5) int Psi1 (p.p)^2 conj(Psi2) d^4p.
 * The proposal mixes (p.p)^2 e^{-(r_i + r_j).p} over focus pairs.
 */
IdentityReport parseval_check(const PureState &s1, const PureState &s2, const McConfig &cfg);

} // namespace ftq
