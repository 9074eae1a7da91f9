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

#include <cmath>
#include <cstring>
#include <string>

#include "ftq/ftq.h"

namespace {

struct Config {
    ftq_config *c = nullptr;
    Config() { REQUIRE(ftq_config_create(&c) == FTQ_OK); }
    ~Config() { ftq_config_destroy(c); }
};

std::string take(char *s) {
    std::string out = s != nullptr ? s : "";
    ftq_string_free(s);
    return out;
}

const char *kState = R"({"foci": [{"x": [0, 0, 0, 0], "r": [1, 0, 0, 0]}]})";
const char *kRegion = R"({"boxes": [{"x_lo": [-1,-1,-1,-1], "x_hi": [1,1,1,1], "r_lo": [0.5,-0.5,-0.5,-0.5], "r_hi": [1.5,0.5,0.5,0.5]}]})";

} // namespace

TEST_CASE("status names and errors", "[capi]") {
    CHECK(std::string(ftq_status_name(FTQ_OK)) == "OK");
    CHECK(std::string(ftq_status_name(FTQ_MASS_SHELL_VIOLATION)) == "MassShellViolation");
    CHECK(std::string(ftq_status_name(FTQ_NON_INTEGRABLE)) == "NonIntegrable");
    ftq_state *s = nullptr;
    CHECK(ftq_state_from_json("{broken", &s) == FTQ_INVALID_ARGUMENT);
    CHECK(s == nullptr);
    CHECK(std::strlen(ftq_last_error()) > 0);
    CHECK(ftq_config_create(nullptr) == FTQ_INVALID_ARGUMENT);
    Config cfg;
    CHECK(ftq_config_set_hbar(cfg.c, -1.0) == FTQ_INVALID_ARGUMENT);
    CHECK(ftq_config_set_samples(cfg.c, 0) == FTQ_INVALID_ARGUMENT);
    CHECK(ftq_config_set_seed(cfg.c, 7) == FTQ_OK);
    CHECK(std::strlen(ftq_last_error()) == 0);
}

TEST_CASE("kernel through the C interface", "[capi]") {
    const double x[4] = {0, 0, 0, 0}, r[4] = {1, 0, 0, 0};
    double out[2] = {0, 0};
    REQUIRE(ftq_kernel(x, r, x, r, out) == FTQ_OK);
    CHECK(std::abs(out[0] - 3.0 / (4.0 * std::pow(M_PI, 4))) < 1e-15);
    CHECK(out[1] == 0.0);
    const double bad[4] = {0, 1, 0, 0};
    CHECK(ftq_kernel(x, bad, x, r, out) == FTQ_INVALID_ARGUMENT);
}

TEST_CASE("dynamics through the C interface", "[capi]") {
    Config cfg;
    char *csv = nullptr, *report = nullptr;
    REQUIRE(ftq_dynamics(cfg.c, R"({"system": "twobody", "k": 1, "m1": 1, "m2": 1, "steps": 2000})", &csv, &report) == FTQ_OK);
    const std::string rep = take(report);
    const std::string table = take(csv);
    CHECK(rep.find("\"omega\": 0.7071067811865476") != std::string::npos);
    CHECK(table.rfind("s,x0", 0) == 0);
    CHECK(ftq_dynamics(cfg.c, R"({"system": "warp"})", &csv, &report) == FTQ_INVALID_ARGUMENT);
    CHECK(ftq_dynamics(cfg.c, R"({"system": "free", "p": [0, 1, 0, 0]})", &csv, &report) == FTQ_MASS_SHELL_VIOLATION);
}

TEST_CASE("measurement through the C interface is deterministic", "[capi]") {
    Config cfg;
    REQUIRE(ftq_config_set_samples(cfg.c, 20000) == FTQ_OK);
    ftq_state *st = nullptr;
    ftq_region *rg = nullptr;
    REQUIRE(ftq_state_from_json(kState, &st) == FTQ_OK);
    REQUIRE(ftq_region_from_json(kRegion, &rg) == FTQ_OK);
    double p = 0.0, err = 0.0;
    REQUIRE(ftq_probability(cfg.c, st, rg, &p, &err) == FTQ_OK);
    CHECK(p > 0.0);
    CHECK(p < 1.0);
    const ftq_measure_options opts{8, 0, 100};
    char *j1 = nullptr, *c1 = nullptr, *j2 = nullptr, *c2 = nullptr;
    REQUIRE(ftq_measure(cfg.c, st, rg, &opts, &j1, &c1) == FTQ_OK);
    REQUIRE(ftq_measure(cfg.c, st, rg, &opts, &j2, &c2) == FTQ_OK);
    const std::string a = take(j1), b = take(j2);
    CHECK(a == b);
    CHECK(take(c1) == take(c2));
    CHECK(a.find("\"mode\": \"region\"") != std::string::npos);
    const ftq_measure_options none{8, 0, 0};
    CHECK(ftq_measure(cfg.c, st, nullptr, &none, &j1, nullptr) == FTQ_INVALID_ARGUMENT);
    char *js = nullptr;
    REQUIRE(ftq_state_to_json(st, &js) == FTQ_OK);
    CHECK(take(js).find("branches") != std::string::npos);
    ftq_region_destroy(rg);
    ftq_state_destroy(st);
}

TEST_CASE("verify through the C interface", "[capi]") {
    Config cfg;
    char *out = nullptr;
    int pass = 0;
    REQUIRE(ftq_verify(cfg.c, "dynamics", &out, &pass) == FTQ_OK);
    CHECK(pass == 1);
    CHECK(take(out).find("two-body-oscillator") != std::string::npos);
    CHECK(ftq_verify(cfg.c, "nonsense", &out, &pass) == FTQ_INVALID_ARGUMENT);
    CHECK(std::string(ftq_suite_names()).find("measurement") != std::string::npos);
}
