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
 * Seeded Monte-Carlo machinery over the future tube: an importance proposal
 * with exact density, a stream-splitting estimator and a Metropolis sampler.
 *
 * Integration is with respect to d^4x d^4r. The sample budget is split over
 * independent streams, each seeded from (seed, tag, stream index), and the
 * stream sums are combined in stream order, so results depend only on the
 * seed, the tag and the stream count and not on the thread count.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "ftq/minkowski.hpp"
#include "ftq/region.hpp"

namespace ftq {

struct McConfig {
    std::uint64_t seed = 42;
    std::size_t samples = 1'000'000;
    std::size_t streams = 8;
    std::size_t threads = 0; ///< 0 picks std::thread::hardware_concurrency()
    /// x-proposal scale, in units of (a + r'^0) for a focus of rest scale a.
    double x_scale = 0.5;
    /// r-proposal scale, in units of a.
    double r_scale = 0.5;
    /// InsufficientSamples is raised above this relative standard error.
    double max_rel_err = 0.25;
    /// NonIntegrable is raised when one weight carries more than this share
    /// of the total absolute weight.
    double max_weight_share = 0.02;
};

struct Estimate {
    Complex value{};
    double std_err = 0.0;
    double mean_abs = 0.0; ///< mean |weight|, the scale for relative errors
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double max_share = 0.0; ///< largest single |weight| over the sum of |weight|

    [[nodiscard]] double rel_std_err() const {
        return mean_abs > 0.0 ? std_err / mean_abs : 0.0;
    }
};

/// Estimate compared against a closed-form target.
struct IdentityReport {
    std::string identity;
    Complex estimate{};
    Complex target{};
    double abs_err = 0.0;
    double rel_err = 0.0;
    double std_err = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

IdentityReport make_report(std::string identity, const Estimate &e, Complex target);

struct TubeSample {
    RealFourVector x;
    RealFourVector r;
};

using Rng = std::mt19937_64;

/// Seed for a named substream: FNV-1a of the name mixed with the base seed.
std::uint64_t substream_seed(std::uint64_t seed, std::string_view name);

/// Generator for stream `index` of substream `tag`.
Rng make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index);

/**
 * Mixture importance proposal on the tube.
 *
 * A focus component lives in the rest frame of its focus (boost L with
 * L (a,0,0,0) = r_focus):
 *   r'^0 = kappa a T with T ~ BetaPrime(4, 2), r' spatial uniform in the ball
 *   of radius r'^0, giving density 15 / (pi (kappa a)^4) (1 + r'^0/(kappa a))^-6;
 *   x' - x_focus is a 4-d multivariate Cauchy of scale sigma (a + r'^0).
 * A box component is uniform on a bounded box. Every density is exact.
 */
class TubeProposal {
  public:
    TubeProposal(double x_scale = 0.5, double r_scale = 0.5)
        : x_scale_(x_scale), r_scale_(r_scale) {}

    void add_focus(const FutureTubePoint &focus, double weight = 1.0);
    void add_box(const Box &box, double weight = 1.0);

    [[nodiscard]] bool empty() const noexcept { return components_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return components_.size(); }

    TubeSample sample(Rng &rng) const;
    [[nodiscard]] double density(const RealFourVector &x, const RealFourVector &r) const;

  private:
    struct Component {
        bool is_box = false;
        double weight = 1.0;
        // focus
        RealFourVector x0;
        Matrix4 boost;
        Matrix4 inverse;
        double a = 1.0;
        // box
        Box box;
        double inv_volume = 0.0;
    };

    TubeSample sample_component(const Component &c, Rng &rng) const;
    double component_density(const Component &c, const RealFourVector &x,
                             const RealFourVector &r) const;

    double x_scale_;
    double r_scale_;
    double total_weight_ = 0.0;
    std::vector<Component> components_;
};

/// Per-stream accumulator; merged in stream order.
struct Accumulator {
    Complex sum{};
    double sum_sq = 0.0;
    double sum_abs = 0.0;
    double max_abs = 0.0;
    std::size_t n = 0;

    void add(Complex v) {
        sum += v;
        const double a = std::abs(v);
        sum_sq += a * a;
        sum_abs += a;
        max_abs = std::max(max_abs, a);
        ++n;
    }
    void merge(const Accumulator &o);
    [[nodiscard]] Estimate finish(std::uint64_t seed) const;
};

/**
 * Run `body(stream_rng, count, accumulator)` over cfg.streams independent
 * streams, splitting cfg.samples between them, and merge the results.
 */
Estimate run_streams(const McConfig &cfg, std::string_view tag,
                     const std::function<void(Rng &, std::size_t, Accumulator &)> &body);

/**
 * Estimate the integral of f over the tube by importance sampling from q.
 * Samples with r.r <= kBoundaryEps contribute zero.
 */
template <class F>
Estimate integrate_tube(const TubeProposal &q, F &&f, const McConfig &cfg, std::string_view tag) {
    return run_streams(cfg, tag, [&](Rng &rng, std::size_t count, Accumulator &acc) {
        for (std::size_t i = 0; i < count; ++i) {
            const TubeSample s = q.sample(rng);
            if (!is_timelike_future(s.r)) {
                acc.add(0.0);
                continue;
            }
            const Complex v = Complex(f(s)) / q.density(s.x, s.r);
            acc.add(v);
        }
    });
}

/// Throws InsufficientSamples when the relative standard error exceeds the bound.
void require_precision(const Estimate &e, const McConfig &cfg, std::string_view what);

struct MetropolisConfig {
    std::size_t burn_in = 1000;
    std::size_t thin = 10;
    /// Probability of an independence move from the proposal (else random walk).
    double independence_fraction = 0.5;
    /// Standard deviation of each random-walk coordinate step.
    double step = 0.1;
};

/**
 * Metropolis-Hastings chain targeting exp(log_target). The kernel is a
 * mixture of an independence move drawn from `proposal` and a Gaussian
 * random walk; points where log_target is -inf are rejected.
 */
std::vector<TubeSample> metropolis(const std::function<double(const TubeSample &)> &log_target,
                                   const TubeProposal &proposal, TubeSample start, std::size_t count,
                                   const MetropolisConfig &mcfg, Rng &rng);

} // namespace ftq
