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

#pragma once

#include <random>

#include "ftq/minkowski.hpp"
#include "ftq/montecarlo.hpp"

namespace ftq::testing {

inline RealFourVector random_vector(Rng &rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng), u(rng), u(rng)};
}

/// Random tube point with rest scale a in [a_lo, a_hi] and rapidity below eta_max.
inline FutureTubePoint random_point(Rng &rng, double x_range = 1.0, double a_lo = 0.5, double a_hi = 2.0,
                                    double eta_max = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n;
    Eigen::Vector3d dir(n(rng), n(rng), n(rng));
    dir.normalize();
    const double a = a_lo + (a_hi - a_lo) * u(rng);
    const double eta = eta_max * u(rng);
    RealFourVector r;
    r << a * std::cosh(eta), a * std::sinh(eta) * dir;
    return FutureTubePoint::make(random_vector(rng, x_range), r);
}

inline double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

} // namespace ftq::testing
