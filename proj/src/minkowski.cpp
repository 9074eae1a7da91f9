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

#include "ftq/minkowski.hpp"

#include <cmath>
#include <sstream>

namespace ftq {

const char *to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument:
        return "InvalidArgument";
    case ErrorCode::DegenerateVector:
        return "DegenerateVector";
    case ErrorCode::SingularMap:
        return "SingularMap";
    case ErrorCode::BoundaryDivergence:
        return "BoundaryDivergence";
    case ErrorCode::NumericalBoundary:
        return "NumericalBoundary";
    case ErrorCode::MassShellViolation:
        return "MassShellViolation";
    case ErrorCode::StepFailure:
        return "StepFailure";
    case ErrorCode::LeftFutureTube:
        return "LeftFutureTube";
    case ErrorCode::InsufficientSamples:
        return "InsufficientSamples";
    case ErrorCode::ZeroProbabilityRegion:
        return "ZeroProbabilityRegion";
    case ErrorCode::NonIntegrable:
        return "NonIntegrable";
    }
    return "Unknown";
}

const char *to_string(VectorClass c) noexcept {
    switch (c) {
    case VectorClass::TimelikeFuture:
        return "timelike-future";
    case VectorClass::TimelikePast:
        return "timelike-past";
    case VectorClass::NullFuture:
        return "null-future";
    case VectorClass::NullPast:
        return "null-past";
    case VectorClass::Spacelike:
        return "spacelike";
    case VectorClass::Zero:
        return "zero";
    }
    return "unknown";
}

VectorClass classify_vector(const RealFourVector &v, double zero_eps) {
    if (v.cwiseAbs().maxCoeff() < zero_eps) {
        return VectorClass::Zero;
    }
    const double sq = minkowski_square(v);
    if (std::abs(sq) <= 1e-12 * v.squaredNorm()) {
        return v(0) > 0.0 ? VectorClass::NullFuture : VectorClass::NullPast;
    }
    if (sq < 0.0) {
        return VectorClass::Spacelike;
    }
    return v(0) > 0.0 ? VectorClass::TimelikeFuture : VectorClass::TimelikePast;
}

std::optional<FutureTubePoint> FutureTubePoint::try_make(const RealFourVector &x,
                                                         const RealFourVector &r,
                                                         double eps) {
    if (!x.allFinite() || !r.allFinite() || !is_timelike_future(r, eps)) {
        return std::nullopt;
    }
    return FutureTubePoint(x, r);
}

FutureTubePoint FutureTubePoint::make(const RealFourVector &x, const RealFourVector &r,
                                      double eps) {
    auto p = try_make(x, r, eps);
    if (!p) {
        std::ostringstream os;
        os << "point is not in the future tube (r = " << r.transpose()
           << ", r.r = " << minkowski_square(r) << ")";
        fail(ErrorCode::InvalidArgument, os.str());
    }
    return *p;
}

std::optional<FutureTubePoint> is_in_future_tube(const ComplexFourVector &z, double eps) {
    const RealFourVector x = z.real();
    const RealFourVector r = -z.imag();
    return FutureTubePoint::try_make(x, r, eps);
}

RealFourVector kelvin_map(const RealFourVector &v, double hbar) {
    const double sq = minkowski_square(v);
    if (!(sq > 0.0)) {
        fail(ErrorCode::DegenerateVector, "Kelvin map needs a time-like vector");
    }
    return hbar * v / sq;
}

PhaseSpaceMetric phase_space_metric(const RealFourVector &r) {
    const double rr = minkowski_square(r);
    if (!(rr > 0.0)) {
        fail(ErrorCode::DegenerateVector, "phase-space metric needs a time-like r");
    }
    const Matrix4 &g = minkowski_metric(); // g is its own inverse
    const RealFourVector rl = lower_index(r);
    PhaseSpaceMetric m;
    m.h = -(g - 2.0 * rl * rl.transpose() / rr) / rr;
    m.k = -rr * (g - 2.0 * r * r.transpose() / rr);
    return m;
}

namespace {
const Complex I(0.0, 1.0);
}

Matrix2c to_matrix_form(const ComplexFourVector &z) {
    Matrix2c m;
    m(0, 0) = z(0) + z(3);
    m(0, 1) = z(1) - I * z(2);
    m(1, 0) = z(1) + I * z(2);
    m(1, 1) = z(0) - z(3);
    return m;
}

ComplexFourVector from_matrix_form(const Matrix2c &m) {
    ComplexFourVector z;
    z(0) = 0.5 * (m(0, 0) + m(1, 1));
    z(3) = 0.5 * (m(0, 0) - m(1, 1));
    z(1) = 0.5 * (m(0, 1) + m(1, 0));
    z(2) = (m(1, 0) - m(0, 1)) / (2.0 * I);
    return z;
}

Matrix2c cayley_to_ball(const ComplexFourVector &z) {
    const Matrix2c id = Matrix2c::Identity();
    const Matrix2c iz = I * to_matrix_form(z);
    const Matrix2c denom = id + iz;
    if (std::abs(denom.determinant()) < 1e-14 * (1.0 + denom.squaredNorm())) {
        fail(ErrorCode::SingularMap, "I + iZ is singular");
    }
    return I * (id - iz) * denom.inverse();
}

Matrix2c cayley_to_ball(const FutureTubePoint &z) { return cayley_to_ball(z.z()); }

bool is_in_unit_ball(const Matrix2c &w, double eps) {
    const Matrix2c m = Matrix2c::Identity() - w.adjoint() * w;
    // A 2x2 Hermitian matrix is positive definite iff m00 > 0 and det > 0.
    const double m00 = m(0, 0).real();
    const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
    return m00 > eps && det > eps;
}

Complex cayley_to_disk(Complex z) {
    const Complex denom = 1.0 + I * z;
    if (std::abs(denom) < 1e-300) {
        fail(ErrorCode::SingularMap, "1 + iz vanishes");
    }
    return I * (1.0 - I * z) / denom;
}

Complex cayley_from_disk(Complex w) {
    const Complex denom = I * w - 1.0;
    if (std::abs(denom) < 1e-300) {
        fail(ErrorCode::SingularMap, "iw - 1 vanishes");
    }
    return (I - w) / denom;
}

Matrix4 rest_frame_boost(const RealFourVector &u) {
    const double sq = minkowski_square(u);
    if (!(sq > 0.0) || u(0) <= 0.0) {
        fail(ErrorCode::DegenerateVector, "rest frame needs a time-like future vector");
    }
    const RealFourVector n = u / std::sqrt(sq);
    Matrix4 l = Matrix4::Identity();
    l(0, 0) = n(0);
    for (int i = 1; i < 4; ++i) {
        l(0, i) = n(i);
        l(i, 0) = n(i);
        for (int j = 1; j < 4; ++j) {
            l(i, j) += n(i) * n(j) / (1.0 + n(0));
        }
    }
    return l;
}

Matrix4 lorentz_inverse(const Matrix4 &l) {
    const Matrix4 &g = minkowski_metric();
    return g * l.transpose() * g;
}

} // namespace ftq
