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

#include "ftq/error.hpp"
#include "ftq/kernel.hpp"
#include "ftq/montecarlo.hpp"
#include "ftq/states.hpp"
#include "helpers.hpp"

using namespace ftq;
using Catch::Matchers::WithinAbs;

TEST_CASE("substream seeds are deterministic and distinct", "[mc]") {
    CHECK(substream_seed(42, "kernel") == substream_seed(42, "kernel"));
    CHECK(substream_seed(42, "kernel") != substream_seed(42, "fourier"));
    CHECK(substream_seed(42, "kernel") != substream_seed(43, "kernel"));
    Rng a = make_stream(7, "x", 0), b = make_stream(7, "x", 0), c = make_stream(7, "x", 1);
    CHECK(a() == b());
    CHECK(a() != c());
}

TEST_CASE("accumulator statistics", "[mc]") {
    // [TRIVIAL] values 1, 3: mean 2, sample variance of the mean 1/2
    Accumulator acc;
    acc.add(1.0);
    acc.add(3.0);
    const Estimate e = acc.finish(0);
    CHECK(e.value == Complex(2.0));
    CHECK_THAT(e.mean_abs, WithinAbs(2.0, 1e-15));
    CHECK_THAT(e.max_share, WithinAbs(0.75, 1e-15));
    CHECK(e.std_err > 0.0);
}

TEST_CASE("tube proposal draws from its own density", "[mc]") {
    // [DERIVED] a coherent state has unit norm.
    const FutureTubePoint z = FutureTubePoint::make(RealFourVector(0.2, 0, 0.1, 0), RealFourVector(1.2, 0.3, 0.0, 0.2));
    TubeProposal q;
    q.add_focus(z);
    McConfig cfg;
    cfg.samples = 200000;
    const Estimate e = integrate_tube(q, [&](const TubeSample &s) {
        return std::norm(coherent_wavefunction(z, FutureTubePoint::make(s.x, s.r)));
    }, cfg, "norm");
    CHECK(std::abs(e.value - 1.0) < 5.0 * e.std_err);
    CHECK(std::abs(e.value - 1.0) < 0.02);
    Rng rng(1);
    for (int i = 0; i < 1000; ++i) {
        const TubeSample s = q.sample(rng);
        REQUIRE(q.density(s.x, s.r) > 0.0);
    }
}

TEST_CASE("box components and their density", "[mc]") {
    TubeProposal q;
    const Box b = Box::around(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0), 0.5, 0.25);
    q.add_box(b);
    Rng rng(2);
    for (int i = 0; i < 100; ++i) {
        const TubeSample s = q.sample(rng);
        REQUIRE(b.contains(s.x, s.r));
        REQUIRE_THAT(q.density(s.x, s.r), Catch::Matchers::WithinRel(1.0 / b.volume(), 1e-12));
    }
    CHECK_THROWS_AS(q.add_box(Box{}), Error);
}

TEST_CASE("estimates do not depend on the thread count", "[mc][property]") {
    const FutureTubePoint z = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
    TubeProposal q;
    q.add_focus(z);
    auto run = [&](std::size_t threads) {
        McConfig cfg;
        cfg.samples = 20000;
        cfg.threads = threads;
        return integrate_tube(q, [&](const TubeSample &s) {
            return std::norm(coherent_wavefunction(z, FutureTubePoint::make(s.x, s.r)));
        }, cfg, "threads");
    };
    const Estimate a = run(1), b = run(3);
    CHECK(a.value == b.value);
    CHECK(a.std_err == b.std_err);
}

TEST_CASE("require_precision", "[mc]") {
    McConfig cfg;
    cfg.max_rel_err = 0.1;
    Estimate e;
    e.mean_abs = 1.0;
    e.std_err = 0.05;
    CHECK_NOTHROW(require_precision(e, cfg, "ok"));
    e.std_err = 0.5;
    CHECK_THROWS_AS(require_precision(e, cfg, "bad"), Error);
}

TEST_CASE("Metropolis chain samples a coherent density", "[mc][mcmc]") {
    const FutureTubePoint z = FutureTubePoint::make(RealFourVector(0.5, -0.2, 0.0, 0.1), RealFourVector(1, 0, 0, 0));
    TubeProposal q;
    q.add_focus(z);
    Rng rng(3);
    MetropolisConfig mcfg;
    mcfg.step = 0.2;
    const auto chain = metropolis(
        [&](const TubeSample &s) {
            const auto p = FutureTubePoint::try_make(s.x, s.r);
            return p ? std::log(std::norm(coherent_wavefunction(z, *p))) : -std::numeric_limits<double>::infinity();
        },
        q, TubeSample{z.x(), z.r()}, 4000, mcfg, rng);
    REQUIRE(chain.size() == 4000);
    // [DERIVED] |psi_z|^2 is even in x - x_z, so the median of x^0 is x_z^0.
    std::vector<double> x0;
    for (const auto &s : chain) {
        REQUIRE(is_timelike_future(s.r));
        x0.push_back(s.x(0));
    }
    std::nth_element(x0.begin(), x0.begin() + 2000, x0.end());
    CHECK(std::abs(x0[2000] - 0.5) < 0.1);
}
