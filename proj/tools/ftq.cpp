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

// Command-line front end. Links only the C interface.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftq/ftq.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIntegration = 3;

struct Globals {
    double hbar = 1.0;
    std::uint64_t seed = 42;
    double samples = 1e6;
    double tol = 0.05;
    std::string out;
    std::string format = "json";
};

struct Deleter {
    void operator()(ftq_config *c) const { ftq_config_destroy(c); }
    void operator()(ftq_state *s) const { ftq_state_destroy(s); }
    void operator()(ftq_region *r) const { ftq_region_destroy(r); }
    void operator()(char *s) const { ftq_string_free(s); }
};
template <class T>
using Owned = std::unique_ptr<T, Deleter>;

/// Failure carrying the process exit code.
struct Exit {
    int code;
};

int exit_code_for(ftq_status s) {
    switch (s) {
    case FTQ_OK:
        return kExitOk;
    case FTQ_INVALID_ARGUMENT:
    case FTQ_DEGENERATE_VECTOR:
    case FTQ_ZERO_PROBABILITY_REGION:
        return kExitInvalid;
    default:
        return kExitIntegration;
    }
}

void check(ftq_status s) {
    if (s != FTQ_OK) {
        std::cerr << "ftq: " << ftq_last_error() << "\n";
        throw Exit{exit_code_for(s)};
    }
}

void invalid(const std::string &msg) {
    std::cerr << "ftq: " << msg << "\n";
    throw Exit{kExitInvalid};
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        invalid("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Accepts inline JSON or a path to a JSON file.
std::string json_arg(const std::string &arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        return arg;
    }
    return read_file(arg);
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream out(path);
    if (!out) {
        invalid("cannot write " + path);
    }
    out << text;
}

/// Companion file path: "run.csv" + ".json" -> "run.json".
std::string sibling(const std::string &path, const std::string &ext) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    const std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? path.substr(0, dot) : path;
    return stem + ext;
}

Owned<ftq_config> make_config(const Globals &g) {
    ftq_config *raw = nullptr;
    check(ftq_config_create(&raw));
    Owned<ftq_config> cfg(raw);
    if (!(g.samples >= 1.0) || g.samples > 1e12) {
        invalid("--samples must be in [1, 1e12]");
    }
    check(ftq_config_set_hbar(cfg.get(), g.hbar));
    check(ftq_config_set_seed(cfg.get(), g.seed));
    check(ftq_config_set_samples(cfg.get(), static_cast<size_t>(g.samples)));
    check(ftq_config_set_tolerance(cfg.get(), g.tol));
    return cfg;
}

struct DynamicsArgs {
    std::string system;
    std::optional<double> m, s_max, B, q, k, m1, m2;
    std::optional<std::size_t> steps;
    std::string method = "rk4";
};

int cmd_dynamics(const Globals &g, const DynamicsArgs &a) {
    auto cfg = make_config(g);
    nlohmann::ordered_json spec{{"system", a.system}, {"method", a.method}};
    auto put = [&](const char *key, const auto &v) {
        if (v) {
            spec[key] = *v;
        }
    };
    put("m", a.m);
    put("s_max", a.s_max);
    put("steps", a.steps);
    put("B", a.B);
    put("q", a.q);
    put("k", a.k);
    put("m1", a.m1);
    put("m2", a.m2);
    char *csv_raw = nullptr;
    char *report_raw = nullptr;
    check(ftq_dynamics(cfg.get(), spec.dump().c_str(), &csv_raw, &report_raw));
    Owned<char> csv(csv_raw), report(report_raw);
    if (g.out.empty()) {
        write_text("", g.format == "csv" ? csv.get() : report.get());
    } else {
        write_text(sibling(g.out, ".csv"), csv.get());
        write_text(sibling(g.out, ".json"), report.get());
    }
    return kExitOk;
}

int cmd_verify(const Globals &g, const std::string &suite) {
    auto cfg = make_config(g);
    char *raw = nullptr;
    int pass = 0;
    check(ftq_verify(cfg.get(), suite.c_str(), &raw, &pass));
    Owned<char> report(raw);
    const auto results = nlohmann::ordered_json::parse(report.get());
    if (g.format == "csv") {
        std::ostringstream os;
        os << "suite,identity,pass\n";
        for (const auto &r : results) {
            os << r["suite"].get<std::string>() << ',' << r["identity"].get<std::string>() << ','
               << (r["pass"].get<bool>() ? 1 : 0) << '\n';
        }
        write_text(g.out, os.str());
    } else {
        // One JSON object per line and identity.
        std::ostringstream os;
        for (const auto &r : results) {
            os << r.dump() << '\n';
        }
        write_text(g.out, os.str());
    }
    return pass != 0 ? kExitOk : kExitVerifyFailed;
}

struct MeasureArgs {
    std::string state;
    std::string region;
    std::string point;
    bool unrecorded = false;
    std::size_t n_foci = 256;
    std::size_t scan = 2000;
};

int cmd_measure(const Globals &g, const MeasureArgs &a) {
    auto cfg = make_config(g);
    ftq_state *sraw = nullptr;
    check(ftq_state_from_json(json_arg(a.state).c_str(), &sraw));
    Owned<ftq_state> state(sraw);
    Owned<ftq_region> region;
    if (!a.point.empty()) {
        const std::string region_json = "{\"point\":" + json_arg(a.point) + "}";
        ftq_region *r = nullptr;
        check(ftq_region_from_json(region_json.c_str(), &r));
        region.reset(r);
    } else if (!a.region.empty()) {
        ftq_region *r = nullptr;
        check(ftq_region_from_json(json_arg(a.region).c_str(), &r));
        region.reset(r);
    } else if (!a.unrecorded) {
        invalid("measure needs --region, --point or --unrecorded");
    }
    ftq_measure_options opts{a.n_foci, a.unrecorded ? 1 : 0, a.scan};
    char *jraw = nullptr;
    char *craw = nullptr;
    check(ftq_measure(cfg.get(), state.get(), region.get(), &opts, &jraw, &craw));
    Owned<char> json(jraw), csv(craw);
    if (g.out.empty()) {
        write_text("", g.format == "csv" && csv ? csv.get() : json.get());
    } else {
        write_text(sibling(g.out, ".json"), json.get());
        if (csv) {
            write_text(sibling(g.out, "_scan.csv"), csv.get());
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Phase-space quantum mechanics on the future tube"};
    app.require_subcommand(1);
    Globals g;
    if (const char *env = std::getenv("FTQ_SEED")) {
        try {
            g.seed = std::stoull(env);
        } catch (const std::exception &) {
            std::cerr << "ftq: FTQ_SEED is not an unsigned integer\n";
            return kExitInvalid;
        }
    }
    app.add_option("--hbar", g.hbar, "Planck constant")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "64-bit seed (default $FTQ_SEED or 42)");
    app.add_option("--samples", g.samples, "Monte-Carlo samples per estimate")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "relative tolerance for Monte-Carlo identities")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output path (stdout if omitted)");
    app.add_option("--format", g.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));

    DynamicsArgs dyn;
    auto *dynamics = app.add_subcommand("dynamics", "integrate a classical trajectory");
    dynamics->add_option("--system", dyn.system, "free, charged or twobody")
        ->required()
        ->check(CLI::IsMember({"free", "charged", "twobody"}));
    dynamics->add_option("--m", dyn.m, "mass");
    dynamics->add_option("--s-max", dyn.s_max, "final proper time (default: one period)");
    dynamics->add_option("--steps", dyn.steps, "integration steps");
    dynamics->add_option("--B", dyn.B, "field strength F^12");
    dynamics->add_option("--q", dyn.q, "charge");
    dynamics->add_option("--k", dyn.k, "oscillator constant");
    dynamics->add_option("--m1", dyn.m1, "first mass");
    dynamics->add_option("--m2", dyn.m2, "second mass");
    dynamics->add_option("--method", dyn.method, "rk4 or midpoint")->check(CLI::IsMember({"rk4", "midpoint"}));

    std::string suite = "all";
    auto *verify = app.add_subcommand("verify", "run identity checks");
    verify->add_option("--suite", suite, std::string("suite: all, ") + ftq_suite_names());

    MeasureArgs meas;
    auto *measure = app.add_subcommand("measure", "measure a state on a region");
    measure->add_option("state", meas.state, "state JSON (file or inline)")->required();
    measure->add_option("region", meas.region, "region JSON (file or inline)");
    measure->add_option("--point", meas.point, "focus JSON for an exact point outcome");
    measure->add_flag("--unrecorded", meas.unrecorded, "measurement with unrecorded outcome");
    measure->add_option("--n-foci", meas.n_foci, "foci in the outgoing mixture")->check(CLI::PositiveNumber);
    measure->add_option("--scan", meas.scan, "localization scan points (0 disables)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (*dynamics) {
            return cmd_dynamics(g, dyn);
        }
        if (*verify) {
            return cmd_verify(g, suite);
        }
        return cmd_measure(g, meas);
    } catch (const Exit &e) {
        return e.code;
    } catch (const std::exception &e) {
        std::cerr << "ftq: " << e.what() << "\n";
        return kExitInvalid;
    }
}
