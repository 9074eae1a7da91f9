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
 * Localization bound: the density of any state at z is at most
 * 3 M_z^8 / (4 pi^4 hbar^8), with M_z the mass of the phase-space point.
 */

#pragma once

#include <vector>

#include "ftq/minkowski.hpp"
#include "ftq/montecarlo.hpp"
#include "ftq/states.hpp"

namespace ftq {

struct LocalizationReport {
    FutureTubePoint z;
    double mass;
    double bound;
    double density;
    double ratio;
};

/// M_z = sqrt(p.p) with p = kelvin_map(r, hbar); equals hbar / sqrt(r.r).
double mass_of_point(const FutureTubePoint &z, double hbar = 1.0);

/// Reduced Compton wavelength hbar / M_z.
double compton_wavelength(const FutureTubePoint &z, double hbar = 1.0);

/// 3 M_z^8 / (4 pi^4 hbar^8).
double density_bound(const FutureTubePoint &z, double hbar = 1.0);

std::vector<LocalizationReport> scan_bound(const DensityState &state,
                                           const std::vector<FutureTubePoint> &points,
                                           double hbar = 1.0);

/// Scan points: the foci, Metropolis draws from rho and draws from the focus proposal.
std::vector<FutureTubePoint> scan_points(const DensityState &state, std::size_t count,
                                         const McConfig &cfg);

double max_ratio(const std::vector<LocalizationReport> &reports);

} // namespace ftq
