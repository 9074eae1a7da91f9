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

// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "ftq/verify.hpp"

namespace {

struct Criterion {
    int id;
    std::string title;
    std::string suite;
    std::vector<std::string> checks;
    double time_limit_s;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string summary(const std::vector<ftq::CheckResult> &results) {
    std::string s;
    for (const auto &r : results) {
        s += (s.empty() ? "" : "; ") + r.name + (r.pass ? " ok" : " FAILED");
        for (const char *key : {"max_rel_err", "max_abs_err", "max_ratio", "max_sigma", "ratio"}) {
            if (r.details.contains(key)) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " %s=%.3g", key, r.details[key].get<double>());
                s += buf;
            }
        }
    }
    return s;
}

bool report(int id, const std::string &title, bool pass, double secs, const std::string &detail) {
    std::printf("[%s] %2d %s (%.2f s) %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), secs, detail.c_str());
    std::fflush(stdout);
    return pass;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "kernel diagonal and momentum form", "kernel", {"kernel-diagonal", "kernel-momentum-form"}, 1.0},
        {2, "Bergman metric equals phase-space metric", "kernel", {"bergman-metric"}, 10.0},
        {3, "dynamics oracles", "dynamics", {"free-particle", "two-body-oscillator", "charged-helix"}, 10.0},
        {4, "Kelvin involution and cone preservation", "geometry", {"kelvin-involution"}, 1.0},
        {5, "1-D half-plane basis, series and reproducing", "kernel",
         {"halfplane-orthonormality", "halfplane-series", "halfplane-reproducing"}, 30.0},
        {6, "Poincare unitarity identity", "conformal", {"unitarity-identity"}, 5.0},
        {7, "conformal covariance, phases, composition, cross ratio", "conformal",
         {"covariance-poincare", "covariance-dilatation", "covariance-special", "phase-expressions",
          "special-composition", "cross-ratio-invariance"},
         30.0},
        {8, "4-D reproducing property by Monte Carlo", "kernel", {"reproduce-mc"}, 120.0},
        {9, "Fourier suite", "fourier", {"cone-integral", "plane-wave-identity", "coherent-round-trip", "parseval"}, 180.0},
        {10, "measurement suite", "measurement",
         {"probability-of-tube", "povm-additivity", "point-collapse", "orthogonal-vanishing", "decoherence"}, 600.0},
        {11, "localization bound", "localization", {"scan-bound", "saturation", "mass-scaling"}, 600.0},
    };

    bool all = true;
    for (const auto &c : criteria) {
        ftq::VerifyConfig cfg;
        cfg.seed = 42;
        cfg.samples = 1'000'000;
        cfg.only = c.checks;
        const auto t0 = std::chrono::steady_clock::now();
        const auto results = ftq::run_suite(c.suite, cfg);
        const double secs = seconds_since(t0);
        bool pass = results.size() == c.checks.size() && ftq::all_pass(results) && secs < c.time_limit_s;
        if (c.id == 8) {
            pass = pass && results.front().details.value("cases", 0) >= 20;
        }
        all = report(c.id, c.title, pass, secs, summary(results)) && all;
    }

    {
        const std::string cmd = std::string(FTQ_CLI_PATH) + " --seed 42 --samples 1e6 verify --suite all > /dev/null";
        const auto t0 = std::chrono::steady_clock::now();
        const int status = std::system(cmd.c_str());
        const double secs = seconds_since(t0);
        const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        all = report(12, "full verify --suite all", code == 0 && secs < 600.0, secs, "exit code " + std::to_string(code)) && all;
    }
    return all ? 0 : 1;
}
