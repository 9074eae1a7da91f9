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

#include <array>
#include <cmath>

#include "ftq/quadrature.hpp"

using namespace ftq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Gauss-Legendre small rules match tabulated nodes", "[quadrature]") {
    // [TRIVIAL] two-point rule: +-1/sqrt(3), weights 1
    const quad::Rule r2 = quad::gauss_legendre(2);
    CHECK_THAT(std::abs(r2.nodes[0]), WithinAbs(1.0 / std::sqrt(3.0), 1e-15));
    CHECK_THAT(r2.weights[0] + r2.weights[1], WithinAbs(2.0, 1e-15));
    // three-point rule: 0, +-sqrt(3/5); weights 8/9, 5/9
    const quad::Rule r3 = quad::gauss_legendre(3);
    double wsum = 0.0;
    bool has_zero = false;
    for (std::size_t i = 0; i < 3; ++i) {
        wsum += r3.weights[i];
        if (std::abs(r3.nodes[i]) < 1e-15) {
            has_zero = true;
            CHECK_THAT(r3.weights[i], WithinAbs(8.0 / 9.0, 1e-15));
        } else {
            CHECK_THAT(std::abs(r3.nodes[i]), WithinAbs(std::sqrt(0.6), 1e-15));
        }
    }
    CHECK(has_zero);
    CHECK_THAT(wsum, WithinAbs(2.0, 1e-14));
}

TEST_CASE("n-point rule integrates degree 2n-1 exactly", "[quadrature][property]") {
    for (std::size_t n : {1u, 2u, 5u, 10u, 40u, 200u}) {
        const quad::Rule r = quad::gauss_legendre(n, 0.0, 2.0);
        for (std::size_t deg = 0; deg <= 2 * n - 1 && deg <= 60; ++deg) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(deg));
            }
            const double exact = std::pow(2.0, static_cast<double>(deg + 1)) / static_cast<double>(deg + 1);
            REQUIRE_THAT(s, WithinRel(exact, 1e-12));
        }
    }
}

TEST_CASE("tensor-product box rule", "[quadrature]") {
    const std::array<double, 3> lo{0.0, -1.0, 1.0};
    const std::array<double, 3> hi{1.0, 1.0, 3.0};
    // integral of x y^2 z over the box = (1/2)(2/3)(4) = 4/3
    const double v = quad::integrate_box([](std::span<const double> p) { return p[0] * p[1] * p[1] * p[2]; },
                                         std::span<const double>(lo), std::span<const double>(hi), 3);
    CHECK_THAT(v, WithinRel(4.0 / 3.0, 1e-14));
}

TEST_CASE("disk rule", "[quadrature]") {
    const double area = quad::integrate_disk([](std::complex<double>) { return 1.0; }, 4, 8);
    CHECK_THAT(area, WithinRel(M_PI, 1e-14));
    // integral of |w|^2 over the unit disk = pi/2
    const double m2 = quad::integrate_disk([](std::complex<double> w) { return std::norm(w); }, 4, 8);
    CHECK_THAT(m2, WithinRel(M_PI / 2.0, 1e-14));
    // w^3 integrates to zero
    const auto z = quad::integrate_disk([](std::complex<double> w) { return w * w * w; }, 4, 8);
    CHECK(std::abs(z) < 1e-15);
}
