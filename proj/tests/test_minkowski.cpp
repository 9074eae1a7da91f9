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

#include <catch_amalgamated.hpp>

#include "ftq/error.hpp"
#include "ftq/minkowski.hpp"
#include "ftq/region.hpp"
#include "helpers.hpp"

using namespace ftq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("minkowski square has signature (+,-,-,-)", "[minkowski]") {
    // [TRIVIAL]
    CHECK(minkowski_square(RealFourVector(1, 0, 0, 0)) == 1.0);
    CHECK(minkowski_square(RealFourVector(0, 1, 0, 0)) == -1.0);
    CHECK(minkowski_square(RealFourVector(2, 1, 1, 1)) == 1.0);
    CHECK(minkowski_inner(RealFourVector(1, 2, 3, 4), RealFourVector(4, 3, 2, 1)) == 4.0 - 6.0 - 6.0 - 4.0);
}

TEST_CASE("vector classification", "[minkowski]") {
    CHECK(classify_vector(RealFourVector(1, 0, 0, 0)) == VectorClass::TimelikeFuture);
    CHECK(classify_vector(RealFourVector(-1, 0, 0, 0)) == VectorClass::TimelikePast);
    CHECK(classify_vector(RealFourVector(1, 1, 0, 0)) == VectorClass::NullFuture);
    CHECK(classify_vector(RealFourVector(-1, 0, 1, 0)) == VectorClass::NullPast);
    CHECK(classify_vector(RealFourVector(0, 1, 0, 0)) == VectorClass::Spacelike);
}

TEST_CASE("tube points are validated on construction", "[minkowski]") {
    CHECK(FutureTubePoint::try_make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0)).has_value());
    CHECK_FALSE(FutureTubePoint::try_make(RealFourVector::Zero(), RealFourVector(1, 1, 0, 0)).has_value());
    CHECK_FALSE(FutureTubePoint::try_make(RealFourVector::Zero(), RealFourVector(-2, 0, 0, 0)).has_value());
    CHECK_THROWS_AS(FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(0, 1, 0, 0)), Error);
    const auto z = FutureTubePoint::make(RealFourVector(1, 2, 3, 4), RealFourVector(2, 0, 0, 1));
    CHECK(z.z()(0) == Complex(1.0, -2.0));
    CHECK(z.zbar()(3) == Complex(4.0, 1.0));
    CHECK(is_in_future_tube(z.z()).has_value());
    CHECK_FALSE(is_in_future_tube(z.zbar()).has_value());
}

TEST_CASE("Kelvin map examples", "[minkowski]") {
    // [TRIVIAL] r = hbar v / v.v
    const RealFourVector r = kelvin_map(RealFourVector(2, 0, 0, 0), 1.0);
    CHECK_THAT(r(0), WithinAbs(0.5, 1e-15));
    const RealFourVector s = kelvin_map(RealFourVector(2, 0, 0, 0), 3.0);
    CHECK_THAT(s(0), WithinAbs(1.5, 1e-15));
    CHECK_THROWS_AS(kelvin_map(RealFourVector(1, 1, 0, 0)), Error);
    CHECK_THROWS_AS(kelvin_map(RealFourVector(0, 1, 0, 0)), Error);
}

TEST_CASE("Kelvin map is an involution preserving the future cone", "[minkowski][property]") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const FutureTubePoint z = testing::random_point(rng, 1.0, 0.05, 20.0, 3.0);
        const double hbar = 0.5 + (i % 7) * 0.3;
        const RealFourVector p = kelvin_map(z.r(), hbar);
        REQUIRE(classify_vector(p) == VectorClass::TimelikeFuture);
        // r.r p.p = hbar^2
        REQUIRE_THAT(z.r_square() * minkowski_square(p), WithinRel(hbar * hbar, 1e-12));
        const RealFourVector back = kelvin_map(p, hbar);
        REQUIRE((back - z.r()).cwiseAbs().maxCoeff() <= 1e-12 * z.r().cwiseAbs().maxCoeff());
    }
}

TEST_CASE("phase-space metric: h positive definite, k its inverse", "[minkowski][property]") {
    // [TRIVIAL] at r = e0: h = diag(1, 1, 1, 1) up to sign pattern of -(g - 2 e0 e0)
    const PhaseSpaceMetric m0 = phase_space_metric(RealFourVector(1, 0, 0, 0));
    CHECK((m0.h - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        const FutureTubePoint z = testing::random_point(rng, 1.0, 0.2, 5.0, 2.0);
        const PhaseSpaceMetric m = phase_space_metric(z.r());
        REQUIRE((m.h * m.k - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-9);
        REQUIRE(Eigen::SelfAdjointEigenSolver<Matrix4>(m.h).eigenvalues().minCoeff() > 0.0);
        REQUIRE((m.h - m.h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(phase_space_metric(RealFourVector(0, 1, 0, 0)), Error);
}

TEST_CASE("matrix form has determinant z.z", "[minkowski]") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const FutureTubePoint z = testing::random_point(rng);
        const Matrix2c m = to_matrix_form(z.z());
        REQUIRE(std::abs(m.determinant() - minkowski_square(z.z())) < 1e-12);
        REQUIRE((from_matrix_form(m) - z.z()).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("Cayley map sends the tube into the unit ball", "[minkowski][property]") {
    const auto e0 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
    CHECK(cayley_to_ball(e0).norm() < 1e-15);
    Rng rng(4);
    for (int i = 0; i < 2000; ++i) {
        REQUIRE(is_in_unit_ball(cayley_to_ball(testing::random_point(rng, 5.0, 0.05, 10.0, 2.0))));
    }
    // 1-D: lower half-plane to disk and back.
    for (int i = 0; i < 100; ++i) {
        const Complex z(-3.0 + 0.06 * i, -0.1 - 0.05 * i);
        const Complex w = cayley_to_disk(z);
        REQUIRE(std::abs(w) < 1.0);
        REQUIRE(std::abs(cayley_from_disk(w) - z) < 1e-12);
    }
    CHECK(std::abs(cayley_to_disk(Complex(0.0, -1.0))) < 1e-15);
}

TEST_CASE("rest-frame boost", "[minkowski]") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        const FutureTubePoint z = testing::random_point(rng);
        const double a = std::sqrt(z.r_square());
        const Matrix4 L = rest_frame_boost(z.r() / a);
        REQUIRE((L * RealFourVector(a, 0, 0, 0) - z.r()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((L.transpose() * minkowski_metric() * L - minkowski_metric()).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((lorentz_inverse(L) * L - Matrix4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("regions: boxes, complement, whole tube, point", "[region]") {
    const RealFourVector x0 = RealFourVector::Zero();
    const RealFourVector r0(1, 0, 0, 0);
    const Box b = Box::around(x0, r0, 0.5, 0.25);
    CHECK(b.bounded());
    CHECK_THAT(b.volume(), WithinRel(std::pow(1.0, 4) * std::pow(0.5, 4), 1e-15));
    CHECK(b.contains(x0, r0));
    CHECK_FALSE(b.contains(RealFourVector(0.6, 0, 0, 0), r0));
    CHECK_FALSE(Box{}.bounded());
    CHECK(std::isinf(Box{}.volume()));

    const Region a({b});
    const Region c = Region::complement(a);
    CHECK(a.contains(x0, r0));
    CHECK_FALSE(c.contains(x0, r0));
    CHECK(c.contains(RealFourVector(3, 0, 0, 0), r0));
    // Outside the tube nothing is contained.
    CHECK_FALSE(c.contains(x0, RealFourVector(0, 1, 0, 0)));
    CHECK(Region::whole_tube().is_whole_tube());
    CHECK_FALSE(a.is_whole_tube());
    CHECK(Region::complement(c).contains(x0, r0));
    const Region p = Region::point(FutureTubePoint::make(x0, r0));
    CHECK(p.is_point());
    CHECK(Region::complement(p).is_whole_tube());
}
