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

#include "ftq/kernel.hpp"
#include "ftq/localization.hpp"
#include "ftq/states.hpp"
#include "helpers.hpp"

using namespace ftq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("mass of a tube point", "[localization]") {
    // [TRIVIAL] r = e0 gives M = hbar; r = 2 e0 gives hbar / 2
    const auto e0 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
    const auto e2 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(2, 0, 0, 0));
    CHECK(mass_of_point(e0, 1.0) == 1.0);
    CHECK(mass_of_point(e2, 1.0) == 0.5);
    CHECK(mass_of_point(e0, 3.0) == 3.0);
    CHECK_THAT(compton_wavelength(e2, 1.0), WithinRel(2.0, 1e-15));
}

TEST_CASE("bound equals the kernel diagonal and scales as M^8", "[localization][property]") {
    Rng rng(50);
    for (int i = 0; i < 2000; ++i) {
        const FutureTubePoint z = testing::random_point(rng, 2.0, 0.2, 5.0, 1.5);
        REQUIRE_THAT(density_bound(z, 1.0), WithinRel(kernel_diagonal(z), 1e-12));
        const double m = mass_of_point(z, 1.0);
        // [DERIVED] 3 M^8 / (4 pi^4 hbar^8)
        REQUIRE_THAT(density_bound(z, 1.0), WithinRel(3.0 * std::pow(m, 8) / (4.0 * std::pow(M_PI, 4)), 1e-12));
        const FutureTubePoint half = FutureTubePoint::make(z.x(), 0.5 * z.r());
        REQUIRE(density_bound(half, 1.0) == 256.0 * density_bound(z, 1.0));
    }
}

TEST_CASE("coherent states saturate the bound only at their focus", "[localization]") {
    Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        const FutureTubePoint z = testing::random_point(rng);
        const DensityState st = DensityState::pure(PureState::coherent(z));
        REQUIRE_THAT(scan_bound(st, {z}, 1.0)[0].ratio, WithinAbs(1.0, 1e-12));
        const FutureTubePoint u = FutureTubePoint::make(z.x() + RealFourVector(0, 0.5, 0, 0), z.r());
        REQUIRE(scan_bound(st, {u}, 1.0)[0].ratio < 1.0);
    }
}

TEST_CASE("scans never exceed the bound", "[localization][property]") {
    Rng rng(52);
    std::vector<FutureTubePoint> foci;
    Eigen::VectorXcd c(4);
    for (int i = 0; i < 4; ++i) {
        foci.push_back(testing::random_point(rng, 1.0));
        c(i) = Complex(1.0 - 0.3 * i, 0.2 * i);
    }
    const DensityState st = DensityState::pure(PureState::make(foci, c));
    McConfig cfg;
    const auto pts = scan_points(st, 2000, cfg);
    CHECK(pts.size() >= 2000);
    const auto reports = scan_bound(st, pts, 1.0);
    CHECK(max_ratio(reports) <= 1.0 + 1e-9);
    for (const auto &r : reports) {
        REQUIRE_THAT(r.ratio, WithinRel(r.density / r.bound, 1e-15));
    }
}
