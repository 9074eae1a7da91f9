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
 * Deterministic quadrature: Gauss-Legendre rules, tensor-product box rules
 * and a polar rule on the disk.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ftq::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
Rule gauss_legendre(std::size_t n);

/// The same rule mapped affinely onto [a, b].
Rule gauss_legendre(std::size_t n, double a, double b);

/**
 * Tensor-product Gauss-Legendre over the box [lo, hi] with n nodes per axis.
 * f receives a span of coordinates and may return double or std::complex.
 */
template <class F>
auto integrate_box(F &&f, std::span<const double> lo, std::span<const double> hi,
                   std::size_t n) {
    const std::size_t dim = lo.size();
    std::vector<Rule> rules;
    rules.reserve(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        rules.push_back(gauss_legendre(n, lo[d], hi[d]));
    }
    std::vector<double> point(dim);
    std::vector<std::size_t> idx(dim, 0);
    using R = decltype(f(std::span<const double>(point)));
    R total{};
    while (true) {
        double w = 1.0;
        for (std::size_t d = 0; d < dim; ++d) {
            point[d] = rules[d].nodes[idx[d]];
            w *= rules[d].weights[idx[d]];
        }
        total += w * f(std::span<const double>(point));
        std::size_t d = 0;
        while (d < dim && ++idx[d] == n) {
            idx[d] = 0;
            ++d;
        }
        if (d == dim) {
            break;
        }
    }
    return total;
}

/**
 * Integral over the disk |w| < radius of f(w) dA, with Gauss-Legendre in the
 * radius and the periodic trapezoid rule in the angle.
 */
template <class F>
auto integrate_disk(F &&f, std::size_t n_radial, std::size_t n_angular, double radius = 1.0) {
    const Rule rule = gauss_legendre(n_radial, 0.0, radius);
    const double dphi = 2.0 * 3.14159265358979323846 / static_cast<double>(n_angular);
    using R = decltype(f(std::complex<double>{}));
    R total{};
    for (std::size_t i = 0; i < n_radial; ++i) {
        const double rho = rule.nodes[i];
        R ring{};
        for (std::size_t k = 0; k < n_angular; ++k) {
            ring += f(std::polar(rho, dphi * static_cast<double>(k)));
        }
        total += rule.weights[i] * rho * dphi * ring;
    }
    return total;
}

} // namespace ftq::quad
