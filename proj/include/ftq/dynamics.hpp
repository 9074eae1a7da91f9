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
 * Hamilton's equations on the cotangent bundle of Minkowski space and on the
 * future tube, fixed-step integrators and the closed forms of the free
 * particle, the charged particle in a constant field and the two-body
 * oscillator.
 *
 * Cotangent form, with contravariant momenta:
 *   dx^a/ds = g^ab dH/dp^b,   dp^a/ds = -g^ab dH/dx^b.
 * Tube form, with k^ab the inverse phase-space metric:
 *   hbar dx^a/ds = -k^ab dH/dr^b,   hbar dr^a/ds = k^ab dH/dx^b.
 */

#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "ftq/minkowski.hpp"

namespace ftq {

struct CotangentPoint {
    RealFourVector x;
    RealFourVector p;
};

/// Two particles (x, X) and (y, Y) sharing one parameter s.
struct TwoBodyPoint {
    RealFourVector x;
    RealFourVector y;
    RealFourVector X;
    RealFourVector Y;
};

/// H = sqrt(p.p).
struct FreeParticle {};

/// H = sqrt((p - qA).(p - qA)). dA(a, b) = d A^a / d x^b; finite differences when empty.
struct ChargedParticle {
    double q = 1.0;
    std::function<RealFourVector(const RealFourVector &)> A;
    std::function<Matrix4(const RealFourVector &)> dA;
};

/**
 * H = sqrt(X.X + Y.Y - 2 Phi(u)) with u = -xi.xi, xi the internal coordinate.
 * dphi is finite-differenced when empty.
 */
struct TwoBody {
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
};

using HamiltonianSpec = std::variant<FreeParticle, ChargedParticle, TwoBody>;

/// Potential A^a = -F^a_b x^b / 2 of a constant field with upper-index F^ab.
ChargedParticle uniform_field(double q, const Matrix4 &F);

/// Phi(u) = k u.
TwoBody oscillator(double k);

enum class Integrator { RK4, ImplicitMidpoint };

struct IntegratorConfig {
    Integrator method = Integrator::RK4;
    std::size_t steps = 10'000;
    double s_max = 10.0;
    double tolerance = 1e-8; ///< conservation-drift tolerance for diagnostics
};

/// Radicands below this raise StepFailure.
inline constexpr double kRadicandEps = 1e-12;

struct Trajectory {
    std::vector<double> s;
    std::vector<Eigen::VectorXd> states; ///< (x, p), (x, y, X, Y) or (x, r)
    std::vector<double> energy;

    [[nodiscard]] CotangentPoint cotangent(std::size_t i) const;
    [[nodiscard]] TwoBodyPoint two_body(std::size_t i) const;
    /// (x, r) of a tube trajectory.
    [[nodiscard]] CotangentPoint tube(std::size_t i) const;
};

double hamiltonian(const HamiltonianSpec &spec, const CotangentPoint &pt);
double hamiltonian(const TwoBody &spec, const TwoBodyPoint &pt);

/**
 * Integrate a single-particle Hamiltonian. Throws MassShellViolation when
 * H(init) is not a positive real, StepFailure when a radicand drops below
 * kRadicandEps, InvalidArgument for a two-body spec.
 */
Trajectory integrate_cotangent(const HamiltonianSpec &spec, const CotangentPoint &init,
                               const IntegratorConfig &cfg);

Trajectory integrate_cotangent(const TwoBody &spec, const TwoBodyPoint &init,
                               const IntegratorConfig &cfg);

/// A Hamiltonian on the tube, H(x, r), with an optional analytic gradient (dH/dx, dH/dr).
struct TubeHamiltonian {
    std::function<double(const RealFourVector &, const RealFourVector &)> H;
    std::function<std::pair<RealFourVector, RealFourVector>(const RealFourVector &,
                                                           const RealFourVector &)>
        grad;
};

/// H = hbar / sqrt(r.r), the free particle of mass hbar / sqrt(r.r).
TubeHamiltonian free_tube_hamiltonian(double hbar = 1.0);

/// Throws LeftFutureTube when r.r <= kBoundaryEps at an accepted step.
Trajectory integrate_future_tube(const TubeHamiltonian &h, const FutureTubePoint &z0, double hbar,
                                 const IntegratorConfig &cfg);

/// xi = q - (q.P / P.P) P with q = (x - y)/2 and P = X + Y.
RealFourVector internal_coordinate(const RealFourVector &x, const RealFourVector &y,
                                   const RealFourVector &X, const RealFourVector &Y);

double oscillator_frequency(double k, double m1, double m2);

/// alpha cos(w s) + beta sin(w s) with w^2 = k / (m1^2 + m2^2).
RealFourVector two_body_oscillator_closed_form(const RealFourVector &alpha,
                                               const RealFourVector &beta, double k, double m1,
                                               double m2, double s);

/**
 * Initial data in the rest frame of P for which the oscillator's internal
 * coordinate follows the closed form with the given spatial alpha, beta, on
 * the surfaces H = sqrt(m1^2 + m2^2) and P.Q = m1^2 - m2^2 (Q = X - Y).
 */
TwoBodyPoint two_body_initial(const RealFourVector &alpha, const RealFourVector &beta, double k,
                              double m1, double m2);

/// Geodesic x(s) = x0 + p s / m, m = sqrt(p.p).
CotangentPoint free_particle_closed_form(const CotangentPoint &init, double s);

/**
 * Constant field F^12 = B: u = dx/ds rotates in the 1-2 plane at qB/m and
 * x^1 + i x^2 = x0 + (u0 / (i Omega)) (e^{i Omega s} - 1). Here init.p and
 * the returned p are kinetic momenta p - qA.
 */
CotangentPoint charged_helix_closed_form(const CotangentPoint &init, double q, double B, double s);

struct ConservationReport {
    std::vector<double> energy;
    std::vector<double> pq; ///< P.Q, two-body only
    double energy_drift = 0.0;
    double pq_drift = 0.0;
    bool within_tolerance = true;
};

ConservationReport conserved_quantities(const Trajectory &traj, const HamiltonianSpec &spec,
                                        double tolerance = 1e-8);

} // namespace ftq
