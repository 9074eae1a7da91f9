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
 * The conformal group acting on tube points, on wavefunctions through its
 * unitary representatives, and on coherent states.
 *
 * Each factor f has a point action and a multiplier J, and its unitary acts
 * by (U psi)(x) = J(x) psi(f(x)):
 *   Poincare        f(x) = L x + B,                       J = 1
 *   dilatation      f(x) = Lambda x,                      J = Lambda^4
 *   special conf.   f(x) = (x + x^2 lambda) / s(x),       J = s(x)^-4,
 *                   s(x) = 1 + 2 lambda.x + lambda^2 x^2.
 * A coherent state transforms as U psi_z = e^{i theta} psi_w with w = f^-1(z).
 */

#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "ftq/minkowski.hpp"

namespace ftq {

/// Proper orthochronous Lorentz matrix boost(rapidity) * rotation(axis_angle).
Matrix4 lorentz_from_params(const Eigen::Vector3d &rapidity, const Eigen::Vector3d &axis_angle);

/// Max entry of |L^T g L - g|.
double lorentz_defect(const Matrix4 &l);

struct Poincare {
    Matrix4 L = Matrix4::Identity();
    RealFourVector B = RealFourVector::Zero();
};

struct Dilatation {
    double scale = 1.0;
};

struct SpecialConformal {
    RealFourVector lambda = RealFourVector::Zero();
};

using ConformalFactor = std::variant<Poincare, Dilatation, SpecialConformal>;

/**
 * A word in the group factors. The point action applies the factors right to
 * left: word {m1, m2} maps z to m1(m2(z)).
 */
class ConformalMap {
  public:
    ConformalMap() = default;
    /// Throws InvalidArgument for a non-positive dilatation or a matrix that
    /// is not a proper orthochronous Lorentz transformation.
    ConformalMap(ConformalFactor f); // NOLINT(google-explicit-constructor)
    explicit ConformalMap(std::vector<ConformalFactor> word);

    /// m1 * m2: apply m2 first, then m1.
    friend ConformalMap operator*(const ConformalMap &m1, const ConformalMap &m2);

    [[nodiscard]] const std::vector<ConformalFactor> &factors() const noexcept { return factors_; }

  private:
    std::vector<ConformalFactor> factors_;
};

/// Point action on raw complex vectors. Throws SingularMap on a vanishing denominator.
ComplexFourVector apply_point(const ConformalMap &m, const ComplexFourVector &z);

/// Point action on the tube. Throws NumericalBoundary when the image leaves the tube.
FutureTubePoint apply_point(const ConformalMap &m, const FutureTubePoint &z);

/// Multiplier of the unitary: (U_m psi)(x) = J_m(x) psi(m(x)).
Complex unitary_multiplier(const ConformalMap &m, const ComplexFourVector &x);

/**
 * (U_m psi)(x). For a word {m1, .., mk} this is U_k ... U_1, whose kernel is
 * J_k(x) J_{k-1}(m_k x) ... K(m_1(...m_k(x)), y-bar).
 */
Complex apply_unitary(const ConformalMap &m,
                      const std::function<Complex(const FutureTubePoint &)> &psi,
                      const FutureTubePoint &x);

/// Kernel U(x, y-bar) of the unitary representative.
Complex unitary_kernel(const ConformalMap &m, const FutureTubePoint &x, const FutureTubePoint &y);

struct CoherentImage {
    FutureTubePoint w;
    double theta; ///< phase in (-pi, pi]
};

/// U_m psi_z = e^{i theta} psi_w.
CoherentImage act_on_coherent(const ConformalMap &m, const FutureTubePoint &z);

/// Special-conformal phase theta = 4 arg(1 - 2 lambda.z + lambda^2 z^2).
double special_conformal_phase(const RealFourVector &lambda, const FutureTubePoint &z);

/// The two closed forms of the special-conformal phase, wrapped to (-pi, pi]:
/// (2/i) log[s(z)/s(z-bar)] and (2/i) log[z^2 w-bar^2 / (z-bar^2 w^2)].
struct PhaseForms {
    double from_denominator;
    double from_squares;
};
PhaseForms special_conformal_phase_forms(const RealFourVector &lambda, const FutureTubePoint &z);

/// nu = lambda + mu.
RealFourVector compose_special(const RealFourVector &lambda, const RealFourVector &mu);

/// Wrap an angle into (-pi, pi].
double wrap_phase(double theta);

struct CrossRatioReport {
    double before;
    double after;
    double abs_err;
};

CrossRatioReport cross_ratio_invariance_check(const ConformalMap &m, const FutureTubePoint &w,
                                              const FutureTubePoint &z);

} // namespace ftq
