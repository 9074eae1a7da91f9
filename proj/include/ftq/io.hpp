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
 * JSON and CSV serialization.
 *
 * Schemas:
 *   four-vector   [v0, v1, v2, v3]
 *   complex       {"re": a, "im": b}
 *   focus         [z0, z1, z2, z3] as complex numbers, or {"x": [...], "r": [...]}
 *   state         {"branches": [{"weight": w, "foci": [...], "coeffs": [...]}]}
 *   region        {"boxes": [{"x_lo", "x_hi", "r_lo", "r_hi"}], "complement": false}
 *                 with null entries for unbounded sides, or {"point": focus}
 *   map           {"type": "poincare", "L": [[...]] | "rapidity"/"axis_angle", "B": [...]}
 *                 {"type": "dilatation", "scale": s}
 *                 {"type": "special", "lambda": [...]}
 *                 {"type": "word", "factors": [map, ...]}
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftq/conformal.hpp"
#include "ftq/dynamics.hpp"
#include "ftq/localization.hpp"
#include "ftq/montecarlo.hpp"
#include "ftq/region.hpp"
#include "ftq/states.hpp"

namespace ftq::io {

using Json = nlohmann::ordered_json;

Json to_json(const RealFourVector &v);
Json to_json(Complex c);
Json to_json(const FutureTubePoint &z);
Json to_json(const PureState &s);
Json to_json(const DensityState &s);
Json to_json(const Region &r);
Json to_json(const ConformalMap &m);
Json to_json(const Estimate &e);
Json to_json(const IdentityReport &r);
Json to_json(const LocalizationReport &r);

// Parsers throw ftq::Error(InvalidArgument) on malformed input.
RealFourVector four_vector_from_json(const Json &j);
Complex complex_from_json(const Json &j);
FutureTubePoint focus_from_json(const Json &j);
PureState pure_state_from_json(const Json &j);
DensityState state_from_json(const Json &j);
Region region_from_json(const Json &j);
ConformalMap map_from_json(const Json &j);

Json parse(const std::string &text);

/// CSV: s, x0..x3, p0..p3 (or y, X, Y for two-body), H, followed by extras.
void write_trajectory_csv(std::ostream &os, const Trajectory &t,
                          const std::vector<std::string> &extra_names = {},
                          const std::vector<std::vector<double>> &extra_columns = {});

/// CSV: z components (x0..x3, r0..r3), mass, bound, density, ratio.
void write_localization_csv(std::ostream &os, const std::vector<LocalizationReport> &reports);

} // namespace ftq::io
