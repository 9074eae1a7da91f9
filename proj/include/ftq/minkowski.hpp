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
 * Real and complex Minkowski four-vectors, the future tube, the Kelvin
 * position-momentum correspondence and the 2x2 matrix / Cayley realizations.
 *
 * Signature is (+,-,-,-) throughout. Index lowering is a sign flip on the
 * spatial components.
 */

#pragma once

#include <complex>
#include <numbers>
#include <optional>

#include <Eigen/Dense>

#include "ftq/error.hpp"

namespace ftq {

using Complex = std::complex<double>;
using RealFourVector = Eigen::Vector4d;
using ComplexFourVector = Eigen::Vector4cd;
using Matrix4 = Eigen::Matrix4d;
using Matrix2c = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;

/// Points with r.r at or below this are treated as outside the tube.
inline constexpr double kBoundaryEps = 1e-12;

/// Components below this magnitude classify a vector as zero.
inline constexpr double kZeroEps = 1e-14;

/// g_ab a^a b^b. Bilinear (no conjugation) for complex arguments.
template <class A, class B>
auto minkowski_inner(const Eigen::MatrixBase<A> &a,
                     const Eigen::MatrixBase<B> &b) {
    return a(0) * b(0) - a(1) * b(1) - a(2) * b(2) - a(3) * b(3);
}

template <class A> auto minkowski_square(const Eigen::MatrixBase<A> &a) {
    return minkowski_inner(a, a);
}

/// v_a = g_ab v^b.
template <class A>
auto lower_index(const Eigen::MatrixBase<A> &v) -> typename A::PlainObject {
    typename A::PlainObject out = v;
    out.template tail<3>() = -out.template tail<3>();
    return out;
}

inline const Matrix4 &minkowski_metric() {
    static const Matrix4 g = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
    return g;
}

enum class VectorClass {
    TimelikeFuture,
    TimelikePast,
    NullFuture,
    NullPast,
    Spacelike,
    Zero,
};

const char *to_string(VectorClass c) noexcept;

/**
 * Classify by the sign of v.v and of v^0. A vector is null when |v.v| is
 * below 1e-12 of its Euclidean square, and zero when every component is
 * below zero_eps in magnitude.
 */
VectorClass classify_vector(const RealFourVector &v, double zero_eps = kZeroEps);

inline bool is_timelike_future(const RealFourVector &v, double eps = kBoundaryEps) {
    return v(0) > 0.0 && minkowski_square(v) > eps;
}

/**
 * A point z = x - i r of the future tube: r time-like and future-pointing.
 * Instances can only be obtained through the validating factories, so every
 * FutureTubePoint satisfies r.r > eps and r^0 > 0 for the eps it was built
 * with.
 */
class FutureTubePoint {
  public:
    static std::optional<FutureTubePoint> try_make(const RealFourVector &x,
                                                   const RealFourVector &r,
                                                   double eps = kBoundaryEps);

    /// Throws ErrorCode::InvalidArgument when (x, r) is not in the tube.
    static FutureTubePoint make(const RealFourVector &x, const RealFourVector &r,
                                double eps = kBoundaryEps);

    [[nodiscard]] const RealFourVector &x() const noexcept { return x_; }
    [[nodiscard]] const RealFourVector &r() const noexcept { return r_; }

    /// z = x - i r.
    [[nodiscard]] ComplexFourVector z() const {
        return x_.cast<Complex>() - Complex(0.0, 1.0) * r_.cast<Complex>();
    }

    /// z-bar = x + i r.
    [[nodiscard]] ComplexFourVector zbar() const {
        return x_.cast<Complex>() + Complex(0.0, 1.0) * r_.cast<Complex>();
    }

    [[nodiscard]] double r_square() const { return minkowski_square(r_); }

  private:
    FutureTubePoint(const RealFourVector &x, const RealFourVector &r) : x_(x), r_(r) {}

    RealFourVector x_;
    RealFourVector r_;
};

/// Decompose z = x - i r; the point is returned only when it lies in the tube.
std::optional<FutureTubePoint> is_in_future_tube(const ComplexFourVector &z,
                                                 double eps = kBoundaryEps);

/// r = hbar v / (v.v). Throws DegenerateVector when v.v <= 0.
RealFourVector kelvin_map(const RealFourVector &v, double hbar = 1.0);

struct PhaseSpaceMetric {
    Matrix4 h; ///< h_ab, lower indices, positive definite
    Matrix4 k; ///< k^ab, its inverse
};

/**
 * h_ab = -(1/r.r)(g_ab - 2 r_a r_b / r.r) and
 * k^ab = -(r.r)(g^ab - 2 r^a r^b / r.r).
 * Throws DegenerateVector when r.r <= 0.
 */
PhaseSpaceMetric phase_space_metric(const RealFourVector &r);

/// z^0 I + z^1 sigma_x + z^2 sigma_y + z^3 sigma_z.
Matrix2c to_matrix_form(const ComplexFourVector &z);
ComplexFourVector from_matrix_form(const Matrix2c &m);

/**
 * Cayley map of the tube onto the matrix unit ball,
 * W = i (I - iZ)(I + iZ)^{-1}. Throws SingularMap when I + iZ is singular,
 * which cannot happen for points of the tube.
 */
Matrix2c cayley_to_ball(const ComplexFourVector &z);
Matrix2c cayley_to_ball(const FutureTubePoint &z);

/// True when I - W^dagger W is strictly positive definite.
bool is_in_unit_ball(const Matrix2c &w, double eps = 0.0);

/// One-dimensional analogue: w = i(1 - iz)/(1 + iz) maps {z = x - ir, r > 0}
/// onto the unit disk.
Complex cayley_to_disk(Complex z);
Complex cayley_from_disk(Complex w);

/// The pure boost taking (|u|, 0, 0, 0) to u for time-like future u.
Matrix4 rest_frame_boost(const RealFourVector &u);

/// Inverse of a Lorentz matrix, g L^T g.
Matrix4 lorentz_inverse(const Matrix4 &l);

} // namespace ftq
