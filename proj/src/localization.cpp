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

#include "ftq/localization.hpp"

#include <algorithm>
#include <cmath>

namespace ftq {

double mass_of_point(const FutureTubePoint &z, double hbar) {
    const RealFourVector p = kelvin_map(z.r(), hbar);
    return std::sqrt(minkowski_square(p));
}

double compton_wavelength(const FutureTubePoint &z, double hbar) {
    return hbar / mass_of_point(z, hbar);
}

double density_bound(const FutureTubePoint &z, double hbar) {
    const double m = mass_of_point(z, hbar) / hbar;
    const double m2 = m * m;
    const double m4 = m2 * m2;
    return 3.0 * m4 * m4 / (4.0 * std::pow(kPi, 4));
}

std::vector<LocalizationReport> scan_bound(const DensityState &state,
                                           const std::vector<FutureTubePoint> &points,
                                           double hbar) {
    std::vector<LocalizationReport> out;
    out.reserve(points.size());
    for (const auto &z : points) {
        const double bound = density_bound(z, hbar);
        const double rho = state.diagonal(z);
        out.push_back({z, mass_of_point(z, hbar), bound, rho, rho / bound});
    }
    return out;
}

std::vector<FutureTubePoint> scan_points(const DensityState &state, std::size_t count,
                                         const McConfig &cfg) {
    std::vector<FutureTubePoint> pts = state.foci();
    if (count == 0) {
        return pts;
    }
    const std::size_t half = std::max<std::size_t>(count / 2, 1);
    const auto mcmc = sample_density(state, Region::whole_tube(), half, cfg, "scan-mcmc");
    pts.insert(pts.end(), mcmc.begin(), mcmc.end());

    const TubeProposal q = density_proposal(state, Region::whole_tube(), cfg);
    Rng rng = make_stream(cfg.seed, "scan-proposal", 0);
    for (std::size_t i = half; i < count;) {
        const TubeSample s = q.sample(rng);
        if (auto z = FutureTubePoint::try_make(s.x, s.r)) {
            pts.push_back(*z);
            ++i;
        }
    }
    return pts;
}

double max_ratio(const std::vector<LocalizationReport> &reports) {
    double m = 0.0;
    for (const auto &r : reports) {
        m = std::max(m, r.ratio);
    }
    return m;
}

} // namespace ftq
