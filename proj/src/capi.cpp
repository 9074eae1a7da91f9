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

#include "ftq/ftq.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "ftq/dynamics.hpp"
#include "ftq/error.hpp"
#include "ftq/io.hpp"
#include "ftq/kernel.hpp"
#include "ftq/localization.hpp"
#include "ftq/states.hpp"
#include "ftq/verify.hpp"

struct ftq_config {
    double hbar = 1.0;
    std::uint64_t seed = 42;
    std::size_t samples = 1'000'000;
    double tol = 0.05;
    std::size_t threads = 0;
};

struct ftq_state {
    ftq::DensityState state;
};

struct ftq_region {
    ftq::Region region;
};

namespace {

thread_local std::string g_last_error;

ftq_status to_status(ftq::ErrorCode c) {
    switch (c) {
    case ftq::ErrorCode::InvalidArgument:
        return FTQ_INVALID_ARGUMENT;
    case ftq::ErrorCode::DegenerateVector:
        return FTQ_DEGENERATE_VECTOR;
    case ftq::ErrorCode::SingularMap:
        return FTQ_SINGULAR_MAP;
    case ftq::ErrorCode::BoundaryDivergence:
        return FTQ_BOUNDARY_DIVERGENCE;
    case ftq::ErrorCode::NumericalBoundary:
        return FTQ_NUMERICAL_BOUNDARY;
    case ftq::ErrorCode::MassShellViolation:
        return FTQ_MASS_SHELL_VIOLATION;
    case ftq::ErrorCode::StepFailure:
        return FTQ_STEP_FAILURE;
    case ftq::ErrorCode::LeftFutureTube:
        return FTQ_LEFT_FUTURE_TUBE;
    case ftq::ErrorCode::InsufficientSamples:
        return FTQ_INSUFFICIENT_SAMPLES;
    case ftq::ErrorCode::ZeroProbabilityRegion:
        return FTQ_ZERO_PROBABILITY_REGION;
    case ftq::ErrorCode::NonIntegrable:
        return FTQ_NON_INTEGRABLE;
    }
    return FTQ_INTERNAL;
}

template <class F>
ftq_status guard(F &&f) {
    try {
        f();
        g_last_error.clear();
        return FTQ_OK;
    } catch (const ftq::Error &e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const nlohmann::json::exception &e) {
        g_last_error = std::string("InvalidArgument: ") + e.what();
        return FTQ_INVALID_ARGUMENT;
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return FTQ_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return FTQ_INTERNAL;
    }
}

void require(bool ok, const char *what) {
    if (!ok) {
        ftq::fail(ftq::ErrorCode::InvalidArgument, what);
    }
}

char *dup(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

ftq::McConfig mc_config(const ftq_config &c, std::string_view subcommand) {
    ftq::McConfig m;
    m.seed = ftq::substream_seed(c.seed, subcommand);
    m.samples = c.samples;
    m.threads = c.threads;
    return m;
}

ftq::RealFourVector vec(const double v[4]) { return {v[0], v[1], v[2], v[3]}; }

// ---------------------------------------------------------------- dynamics

struct DynamicsResult {
    std::string csv;
    ftq::io::Json report;
};

ftq::IntegratorConfig integrator(const ftq::io::Json &spec, double default_s_max) {
    ftq::IntegratorConfig cfg;
    cfg.steps = spec.value("steps", std::size_t{10'000});
    cfg.s_max = spec.value("s_max", default_s_max);
    const std::string method = spec.value("method", std::string("rk4"));
    require(method == "rk4" || method == "midpoint", "method must be rk4 or midpoint");
    cfg.method = method == "rk4" ? ftq::Integrator::RK4 : ftq::Integrator::ImplicitMidpoint;
    require(cfg.steps > 0 && cfg.s_max > 0.0 && std::isfinite(cfg.s_max), "steps and s_max must be positive");
    return cfg;
}

ftq::io::Json conservation_json(const ftq::ConservationReport &r, bool two_body) {
    ftq::io::Json j{{"energy_initial", r.energy.front()}, {"energy_drift", r.energy_drift}};
    if (two_body) {
        j["pq_initial"] = r.pq.front();
        j["pq_drift"] = r.pq_drift;
    }
    j["within_tolerance"] = r.within_tolerance;
    return j;
}

DynamicsResult run_free(const ftq::io::Json &spec) {
    const double m = spec.value("m", 1.0);
    require(m > 0.0, "m must be positive");
    const ftq::CotangentPoint init{
        spec.contains("x") ? ftq::io::four_vector_from_json(spec["x"]) : ftq::RealFourVector::Zero(),
        spec.contains("p") ? ftq::io::four_vector_from_json(spec["p"]) : ftq::RealFourVector(m, 0, 0, 0)};
    const ftq::IntegratorConfig cfg = integrator(spec, 10.0 / m);
    const ftq::Trajectory t = ftq::integrate_cotangent(ftq::FreeParticle{}, init, cfg);
    std::vector<double> err;
    double worst = 0.0;
    for (std::size_t i = 0; i < t.s.size(); ++i) {
        const ftq::CotangentPoint exact = ftq::free_particle_closed_form(init, t.s[i]);
        const ftq::CotangentPoint got = t.cotangent(i);
        err.push_back(std::max((got.x - exact.x).cwiseAbs().maxCoeff(), (got.p - exact.p).cwiseAbs().maxCoeff()));
        worst = std::max(worst, err.back());
    }
    std::ostringstream os;
    ftq::io::write_trajectory_csv(os, t, {"closed_form_err"}, {err});
    const auto rep = ftq::conserved_quantities(t, ftq::FreeParticle{}, cfg.tolerance);
    ftq::io::Json j{{"system", "free"}, {"m", m}, {"steps", cfg.steps}, {"s_max", cfg.s_max},
                    {"closed_form_max_err", worst}, {"conservation", conservation_json(rep, false)}};
    return {os.str(), j};
}

DynamicsResult run_charged(const ftq::io::Json &spec) {
    const double m = spec.value("m", 1.0);
    const double q = spec.value("q", 1.0);
    const double B = spec.value("B", 1.0);
    require(m > 0.0 && q != 0.0 && B != 0.0, "charged system needs m > 0, q != 0, B != 0");
    ftq::Matrix4 F = ftq::Matrix4::Zero();
    F(1, 2) = B;
    F(2, 1) = -B;
    const ftq::ChargedParticle h = ftq::uniform_field(q, F);
    const double eta = 0.5;
    const ftq::RealFourVector u(std::cosh(eta), 0.6 * std::sinh(eta), 0.0, 0.8 * std::sinh(eta));
    // A vanishes at the origin, so canonical and kinetic momenta agree there.
    const ftq::CotangentPoint init{ftq::RealFourVector::Zero(),
                                   spec.contains("p") ? ftq::io::four_vector_from_json(spec["p"]) : ftq::RealFourVector(m * u)};
    const double omega = std::abs(q * B) / std::sqrt(ftq::minkowski_square(init.p));
    const ftq::IntegratorConfig cfg = integrator(spec, 2.0 * ftq::kPi / omega);
    const ftq::Trajectory t = ftq::integrate_cotangent(h, init, cfg);
    std::vector<double> err;
    double worst = 0.0;
    for (std::size_t i = 0; i < t.s.size(); ++i) {
        const ftq::CotangentPoint exact = ftq::charged_helix_closed_form(init, q, B, t.s[i]);
        err.push_back((t.cotangent(i).x - exact.x).cwiseAbs().maxCoeff());
        worst = std::max(worst, err.back());
    }
    std::ostringstream os;
    ftq::io::write_trajectory_csv(os, t, {"helix_err"}, {err});
    const auto rep = ftq::conserved_quantities(t, h, cfg.tolerance);
    ftq::io::Json j{{"system", "charged"}, {"m", std::sqrt(ftq::minkowski_square(init.p))}, {"q", q}, {"B", B},
                    {"omega", omega}, {"steps", cfg.steps}, {"s_max", cfg.s_max},
                    {"closed_form_max_err", worst}, {"conservation", conservation_json(rep, false)}};
    return {os.str(), j};
}

DynamicsResult run_twobody(const ftq::io::Json &spec) {
    const double k = spec.value("k", 1.0);
    const double m1 = spec.value("m1", 1.0);
    const double m2 = spec.value("m2", 1.0);
    require(k > 0.0 && m1 > 0.0 && m2 > 0.0, "twobody system needs k, m1, m2 > 0");
    const ftq::RealFourVector alpha =
        spec.contains("alpha") ? ftq::io::four_vector_from_json(spec["alpha"]) : ftq::RealFourVector(0, 0.3, 0, 0);
    const ftq::RealFourVector beta =
        spec.contains("beta") ? ftq::io::four_vector_from_json(spec["beta"]) : ftq::RealFourVector(0, 0, 0.3, 0);
    const double omega = ftq::oscillator_frequency(k, m1, m2);
    const ftq::TwoBody h = ftq::oscillator(k);
    const ftq::TwoBodyPoint init = ftq::two_body_initial(alpha, beta, k, m1, m2);
    const ftq::IntegratorConfig cfg = integrator(spec, 2.0 * ftq::kPi / omega);
    const ftq::Trajectory t = ftq::integrate_cotangent(h, init, cfg);
    std::vector<std::vector<double>> xi(5);
    double worst = 0.0;
    for (std::size_t i = 0; i < t.s.size(); ++i) {
        const ftq::TwoBodyPoint p = t.two_body(i);
        const ftq::RealFourVector v = ftq::internal_coordinate(p.x, p.y, p.X, p.Y);
        const ftq::RealFourVector e = v - ftq::two_body_oscillator_closed_form(alpha, beta, k, m1, m2, t.s[i]);
        for (int a = 0; a < 4; ++a) {
            xi[static_cast<std::size_t>(a)].push_back(v(a));
        }
        xi[4].push_back(e.cwiseAbs().maxCoeff());
        worst = std::max(worst, xi[4].back());
    }
    std::ostringstream os;
    ftq::io::write_trajectory_csv(os, t, {"xi0", "xi1", "xi2", "xi3", "closed_form_err"}, xi);
    const auto rep = ftq::conserved_quantities(t, h, cfg.tolerance);
    ftq::io::Json j{{"system", "twobody"}, {"k", k}, {"m1", m1}, {"m2", m2}, {"omega", omega},
                    {"steps", cfg.steps}, {"s_max", cfg.s_max}, {"closed_form_max_err", worst},
                    {"conservation", conservation_json(rep, true)}};
    return {os.str(), j};
}

} // namespace

extern "C" {

const char *ftq_version(void) { return "1.0.0"; }

const char *ftq_status_name(ftq_status status) {
    switch (status) {
    case FTQ_OK:
        return "OK";
    case FTQ_INTERNAL:
        return "Internal";
    default:
        break;
    }
    if (status >= FTQ_INVALID_ARGUMENT && status <= FTQ_NON_INTEGRABLE) {
        return ftq::to_string(static_cast<ftq::ErrorCode>(status - 1));
    }
    return "Unknown";
}

const char *ftq_last_error(void) { return g_last_error.c_str(); }

void ftq_string_free(char *s) { std::free(s); }

ftq_status ftq_config_create(ftq_config **out) {
    return guard([&] {
        require(out != nullptr, "null output pointer");
        *out = new ftq_config();
    });
}

void ftq_config_destroy(ftq_config *cfg) { delete cfg; }

ftq_status ftq_config_set_hbar(ftq_config *cfg, double hbar) {
    return guard([&] {
        require(cfg != nullptr && hbar > 0.0 && std::isfinite(hbar), "hbar must be positive");
        cfg->hbar = hbar;
    });
}

ftq_status ftq_config_set_seed(ftq_config *cfg, uint64_t seed) {
    return guard([&] {
        require(cfg != nullptr, "null config");
        cfg->seed = seed;
    });
}

ftq_status ftq_config_set_samples(ftq_config *cfg, size_t samples) {
    return guard([&] {
        require(cfg != nullptr && samples > 0, "samples must be positive");
        cfg->samples = samples;
    });
}

ftq_status ftq_config_set_tolerance(ftq_config *cfg, double tol) {
    return guard([&] {
        require(cfg != nullptr && tol > 0.0, "tolerance must be positive");
        cfg->tol = tol;
    });
}

ftq_status ftq_config_set_threads(ftq_config *cfg, size_t threads) {
    return guard([&] {
        require(cfg != nullptr, "null config");
        cfg->threads = threads;
    });
}

ftq_status ftq_state_from_json(const char *json, ftq_state **out) {
    return guard([&] {
        require(json != nullptr && out != nullptr, "null argument");
        *out = new ftq_state{ftq::io::state_from_json(ftq::io::parse(json))};
    });
}

ftq_status ftq_state_to_json(const ftq_state *state, char **out) {
    return guard([&] {
        require(state != nullptr && out != nullptr, "null argument");
        *out = dup(ftq::io::to_json(state->state).dump(2));
    });
}

void ftq_state_destroy(ftq_state *state) { delete state; }

ftq_status ftq_region_from_json(const char *json, ftq_region **out) {
    return guard([&] {
        require(json != nullptr && out != nullptr, "null argument");
        *out = new ftq_region{ftq::io::region_from_json(ftq::io::parse(json))};
    });
}

void ftq_region_destroy(ftq_region *region) { delete region; }

ftq_status ftq_kernel(const double x[4], const double r[4], const double y[4], const double s[4], double out[2]) {
    return guard([&] {
        require(x && r && y && s && out, "null argument");
        const auto z = ftq::FutureTubePoint::make(vec(x), vec(r));
        const auto w = ftq::FutureTubePoint::make(vec(y), vec(s));
        const ftq::Complex k = ftq::kernel4(z, w);
        out[0] = k.real();
        out[1] = k.imag();
    });
}

ftq_status ftq_probability(const ftq_config *cfg, const ftq_state *state, const ftq_region *region,
                           double *probability, double *std_err) {
    return guard([&] {
        require(cfg && state && region && probability, "null argument");
        const ftq::Estimate e = ftq::povm_probability(state->state, region->region, mc_config(*cfg, "probability"));
        *probability = e.value.real();
        if (std_err != nullptr) {
            *std_err = e.std_err;
        }
    });
}

ftq_status ftq_measure(const ftq_config *cfg, const ftq_state *state, const ftq_region *region,
                       const ftq_measure_options *opts, char **out_json, char **out_scan_csv) {
    return guard([&] {
        require(cfg && state && opts && out_json, "null argument");
        require(opts->unrecorded || region != nullptr, "a region is required unless unrecorded");
        require(opts->n_foci > 0, "n_foci must be positive");
        const ftq::McConfig mc = mc_config(*cfg, "measure");
        ftq::io::Json j;
        ftq::DensityState out = state->state;
        if (opts->unrecorded) {
            out = ftq::decohere_unrecorded(state->state, opts->n_foci, mc);
            j["mode"] = "unrecorded";
            j["probability"] = 1.0;
            j["std_err"] = 0.0;
        } else {
            const ftq::MeasurementOutcome o = ftq::post_measurement_state(state->state, region->region, opts->n_foci, mc);
            out = o.state;
            if (region->region.is_point()) {
                j["mode"] = "point";
                j["density"] = o.probability.value.real();
            } else {
                j["mode"] = "region";
                j["probability"] = o.probability.value.real();
                j["std_err"] = o.probability.std_err;
                j["samples"] = o.probability.samples;
            }
        }
        j["seed"] = cfg->seed;
        j["purity"] = out.purity();
        if (opts->scan_points > 0) {
            ftq::McConfig scan = mc_config(*cfg, "measure-scan");
            const auto reports = ftq::scan_bound(out, ftq::scan_points(out, opts->scan_points, scan), cfg->hbar);
            j["scan_points"] = reports.size();
            j["max_ratio"] = ftq::max_ratio(reports);
            if (out_scan_csv != nullptr) {
                std::ostringstream os;
                ftq::io::write_localization_csv(os, reports);
                *out_scan_csv = dup(os.str());
            }
        } else if (out_scan_csv != nullptr) {
            *out_scan_csv = nullptr;
        }
        j["state"] = ftq::io::to_json(out);
        *out_json = dup(j.dump(2));
    });
}

ftq_status ftq_dynamics(const ftq_config *cfg, const char *spec_json, char **out_csv, char **out_report_json) {
    return guard([&] {
        require(cfg && spec_json && out_csv && out_report_json, "null argument");
        const ftq::io::Json spec = ftq::io::parse(spec_json);
        require(spec.is_object(), "dynamics spec must be an object");
        const std::string system = spec.value("system", std::string());
        DynamicsResult r;
        if (system == "free") {
            r = run_free(spec);
        } else if (system == "charged") {
            r = run_charged(spec);
        } else if (system == "twobody") {
            r = run_twobody(spec);
        } else {
            ftq::fail(ftq::ErrorCode::InvalidArgument, "system must be free, charged or twobody");
        }
        *out_csv = dup(r.csv);
        *out_report_json = dup(r.report.dump(2));
    });
}

ftq_status ftq_verify(const ftq_config *cfg, const char *suite, char **out_json, int *all_pass) {
    return guard([&] {
        require(cfg && suite && out_json, "null argument");
        ftq::VerifyConfig v;
        v.seed = cfg->seed;
        v.samples = cfg->samples;
        v.tol = cfg->tol;
        v.hbar = cfg->hbar;
        const auto results = ftq::run_suite(suite, v);
        *out_json = dup(ftq::to_json(results).dump(2));
        if (all_pass != nullptr) {
            *all_pass = ftq::all_pass(results) ? 1 : 0;
        }
    });
}

const char *ftq_suite_names(void) {
    static const std::string names = [] {
        std::string s;
        for (const auto &n : ftq::suite_names()) {
            s += (s.empty() ? "" : ",") + n;
        }
        return s;
    }();
    return names.c_str();
}

} // extern "C"
