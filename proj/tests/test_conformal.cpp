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

#include "ftq/conformal.hpp"
#include "ftq/error.hpp"
#include "ftq/kernel.hpp"
#include "ftq/states.hpp"
#include "helpers.hpp"

using namespace ftq;
using Catch::Matchers::WithinAbs;

namespace {

const Complex I(0.0, 1.0);

Eigen::Vector3d random3(Rng &rng, double s) {
    std::uniform_real_distribution<double> u(-s, s);
    return {u(rng), u(rng), u(rng)};
}

double max_abs(const ComplexFourVector &v) { return v.cwiseAbs().maxCoeff(); }

double covariance_error(const ConformalMap &m, const FutureTubePoint &z, Rng &rng) {
    const CoherentImage img = act_on_coherent(m, z);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const FutureTubePoint u = testing::random_point(rng, 1.5, 0.4, 2.5, 0.8);
        const Complex lhs = apply_unitary(m, [&](const FutureTubePoint &y) { return coherent_wavefunction(z, y); }, u);
        const Complex rhs = std::exp(I * img.theta) * coherent_wavefunction(img.w, u);
        worst = std::max(worst, testing::rel_err(lhs, rhs));
    }
    return worst;
}

} // namespace

TEST_CASE("Lorentz parametrization", "[conformal]") {
    Rng rng(20);
    for (int i = 0; i < 200; ++i) {
        const Matrix4 L = lorentz_from_params(random3(rng, 1.5), random3(rng, 3.0));
        REQUIRE(lorentz_defect(L) < 1e-12);
        REQUIRE(L(0, 0) >= 1.0);
        REQUIRE(L.determinant() > 0.0);
    }
    // [TRIVIAL] pure boost along x^1
    const Matrix4 b = lorentz_from_params(Eigen::Vector3d(0.3, 0, 0), Eigen::Vector3d::Zero());
    CHECK_THAT(b(0, 1), WithinAbs(std::sinh(0.3), 1e-15));
    CHECK_THAT(b(1, 1), WithinAbs(std::cosh(0.3), 1e-15));
}

TEST_CASE("invalid factors are rejected", "[conformal]") {
    CHECK_THROWS_AS(ConformalMap(Dilatation{0.0}), Error);
    CHECK_THROWS_AS(ConformalMap(Dilatation{-1.0}), Error);
    Matrix4 parity = Matrix4::Identity();
    parity(1, 1) = -1.0;
    CHECK_THROWS_AS(ConformalMap(Poincare{parity, RealFourVector::Zero()}), Error);
    Matrix4 reversal = Matrix4::Identity();
    reversal(0, 0) = -1.0;
    reversal(1, 1) = -1.0;
    CHECK_THROWS_AS(ConformalMap(Poincare{reversal, RealFourVector::Zero()}), Error);
    CHECK_THROWS_AS(ConformalMap(Poincare{2.0 * Matrix4::Identity(), RealFourVector::Zero()}), Error);
}

TEST_CASE("special conformal map agrees with its first-order Taylor expansion", "[conformal]") {
    // [DERIVED] d/de S_{e lambda}(z) at e = 0 is (z.z) lambda - 2 (lambda.z) z
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        const FutureTubePoint z = testing::random_point(rng);
        const RealFourVector l = testing::random_vector(rng, 1.0);
        const ComplexFourVector zz = z.z();
        const ComplexFourVector lc = l.cast<Complex>();
        const ComplexFourVector deriv = minkowski_square(zz) * lc - 2.0 * minkowski_inner(lc, zz) * zz;
        const double e = 1e-6;
        const ComplexFourVector fd = (apply_point(ConformalMap(SpecialConformal{e * l}), zz) -
                                      apply_point(ConformalMap(SpecialConformal{-e * l}), zz)) /
                                     (2.0 * e);
        REQUIRE(max_abs(fd - deriv) < 1e-7 * (1.0 + max_abs(deriv)));
    }
}

TEST_CASE("special conformal maps compose additively", "[conformal][property]") {
    Rng rng(22);
    for (int i = 0; i < 1000; ++i) {
        const RealFourVector l = testing::random_vector(rng, 0.3), mu = testing::random_vector(rng, 0.3);
        const ComplexFourVector z = testing::random_point(rng).z();
        const ComplexFourVector two =
            apply_point(ConformalMap(SpecialConformal{mu}), apply_point(ConformalMap(SpecialConformal{l}), z));
        const ComplexFourVector one = apply_point(ConformalMap(SpecialConformal{compose_special(l, mu)}), z);
        REQUIRE(max_abs(two - one) < 1e-10 * (1.0 + max_abs(one)));
    }
    CHECK((compose_special(RealFourVector(1, 2, 3, 4), RealFourVector(1, 1, 1, 1)) - RealFourVector(2, 3, 4, 5)).norm() == 0.0);
}

TEST_CASE("words act right to left", "[conformal]") {
    const ConformalMap d(Dilatation{2.0});
    const ConformalMap t(Poincare{Matrix4::Identity(), RealFourVector(1, 0, 0, 0)});
    const ComplexFourVector z = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0)).z();
    // [TRIVIAL] (d * t)(z) = 2 (z + e0)
    const ComplexFourVector img = apply_point(d * t, z);
    CHECK(std::abs(img(0) - 2.0 * (z(0) + 1.0)) < 1e-15);
    CHECK((d * t).factors().size() == 2);
}

TEST_CASE("Poincare unitarity identity", "[conformal][property]") {
    Rng rng(23);
    for (int i = 0; i < 2000; ++i) {
        const Matrix4 L = lorentz_from_params(random3(rng, 0.8), random3(rng, 3.0));
        const RealFourVector B = testing::random_vector(rng, 2.0);
        const FutureTubePoint x = testing::random_point(rng), z = testing::random_point(rng);
        const ConformalMap m(Poincare{L, B});
        const Complex lhs = kernel4(apply_point(m, x.z()), apply_point(m, z.zbar()));
        REQUIRE(testing::rel_err(lhs, kernel4(x, z)) < 1e-10);
    }
}

TEST_CASE("coherent states transform covariantly", "[conformal][property]") {
    Rng rng(24);
    const std::vector<std::function<ConformalMap()>> makers = {
        [&] { return ConformalMap(Poincare{lorentz_from_params(random3(rng, 0.6), random3(rng, 1.5)), testing::random_vector(rng, 1.0)}); },
        [&] { return ConformalMap(Dilatation{std::exp(std::uniform_real_distribution<double>(-0.7, 0.7)(rng))}); },
        [&] { return ConformalMap(SpecialConformal{testing::random_vector(rng, 0.4)}); },
    };
    for (const auto &make : makers) {
        for (int k = 0; k < 5; ++k) {
            const ConformalMap m = make();
            const FutureTubePoint z = testing::random_point(rng, 1.0, 0.5, 2.0, 0.6);
            REQUIRE(covariance_error(m, z, rng) < 1e-9);
            // w is the preimage of z
            REQUIRE(max_abs(apply_point(m, act_on_coherent(m, z).w).z() - z.z()) < 1e-10);
        }
    }
    // Words: phases add.
    const ConformalMap word = ConformalMap(SpecialConformal{RealFourVector(0.1, 0.2, 0, -0.1)}) * ConformalMap(Dilatation{1.3});
    const FutureTubePoint z = testing::random_point(rng, 1.0, 0.5, 2.0, 0.6);
    CHECK(covariance_error(word, z, rng) < 1e-9);
}

TEST_CASE("the unitaries are isometric on the kernel", "[conformal][property]") {
    // [DERIVED] <U psi_w | U psi_z> = <psi_w | psi_z>
    Rng rng(25);
    for (int i = 0; i < 200; ++i) {
        const ConformalMap m(SpecialConformal{testing::random_vector(rng, 0.4)});
        const FutureTubePoint w = testing::random_point(rng), z = testing::random_point(rng);
        const CoherentImage a = act_on_coherent(m, w), b = act_on_coherent(m, z);
        const Complex after = std::exp(I * (b.theta - a.theta)) * overlap(a.w, b.w);
        REQUIRE(std::abs(after - overlap(w, z)) < 1e-10);
    }
}

TEST_CASE("special conformal phase expressions agree", "[conformal]") {
    Rng rng(26);
    for (int i = 0; i < 2000; ++i) {
        const RealFourVector l = testing::random_vector(rng, 0.5);
        const FutureTubePoint z = testing::random_point(rng);
        const PhaseForms f = special_conformal_phase_forms(l, z);
        REQUIRE(std::abs(wrap_phase(f.from_denominator - f.from_squares)) < 1e-10);
    }
    CHECK(special_conformal_phase(RealFourVector::Zero(), testing::random_point(rng)) == 0.0);
    CHECK_THAT(wrap_phase(3.0 * M_PI), WithinAbs(M_PI, 1e-15));
    CHECK_THAT(wrap_phase(-M_PI), WithinAbs(M_PI, 1e-15));
}

TEST_CASE("cross ratio is invariant", "[conformal][property]") {
    Rng rng(27);
    for (int i = 0; i < 500; ++i) {
        const FutureTubePoint w = testing::random_point(rng, 1.0, 0.5, 2.0, 0.6), z = testing::random_point(rng, 1.0, 0.5, 2.0, 0.6);
        const ConformalMap m = ConformalMap(SpecialConformal{testing::random_vector(rng, 0.4)}) *
                               ConformalMap(Poincare{lorentz_from_params(random3(rng, 0.5), random3(rng, 2.0)), testing::random_vector(rng, 1.0)});
        REQUIRE(cross_ratio_invariance_check(m, w, z).abs_err < 1e-9);
    }
}

TEST_CASE("images stay in the tube", "[conformal][property]") {
    Rng rng(28);
    for (int i = 0; i < 20000; ++i) {
        const RealFourVector l = testing::random_vector(rng, 2.0);
        const ComplexFourVector img = apply_point(ConformalMap(SpecialConformal{l}), testing::random_point(rng, 2.0, 0.05, 5.0, 2.0).z());
        REQUIRE(is_in_future_tube(img, 0.0).has_value());
    }
}
