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
 * Identity suites: each check compares a computed quantity with its closed
 * form or exact property and records pass/fail against a tolerance.
 */

#pragma once

#include <string>
#include <vector>

#include "ftq/io.hpp"
#include "ftq/minkowski.hpp"
#include "ftq/montecarlo.hpp"

namespace ftq {

struct VerifyConfig {
    std::uint64_t seed = 42;
    std::size_t samples = 1'000'000;
    double tol = 0.05;      ///< relative tolerance for Monte-Carlo identities
    double hbar = 1.0;
    std::size_t pairs = 20; ///< random cases per Monte-Carlo identity
    std::vector<std::string> only; ///< run only these checks; empty runs all
};

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    io::Json details;
};

/// Suite names accepted by run_suite, in the order "all" runs them.
const std::vector<std::string> &suite_names();

/// Throws InvalidArgument for an unknown suite. "all" runs every suite.
std::vector<CheckResult> run_suite(const std::string &suite, const VerifyConfig &cfg);

bool all_pass(const std::vector<CheckResult> &results);

io::Json to_json(const std::vector<CheckResult> &results);

/// Random tube point with x in [-x_range, x_range]^4 and r a boost of rapidity
/// at most max_rapidity applied to (a, 0, 0, 0), a in [a_lo, a_hi].
FutureTubePoint random_tube_point(Rng &rng, double x_range = 1.0, double a_lo = 0.5,
                                  double a_hi = 2.0, double max_rapidity = 1.0);

} // namespace ftq
