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

#include "ftq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "ftq/error.hpp"

namespace ftq {

std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    // splitmix64 finalizer over the combination
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (h | 1ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    const std::uint64_t s = substream_seed(seed, tag);
    std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

void TubeProposal::add_focus(const FutureTubePoint &focus, double weight) {
    if (!(weight > 0.0)) {
        fail(ErrorCode::InvalidArgument, "proposal weight must be positive");
    }
    Component c;
    c.weight = weight;
    c.x0 = focus.x();
    c.boost = rest_frame_boost(focus.r());
    c.inverse = lorentz_inverse(c.boost);
    c.a = std::sqrt(focus.r_square());
    components_.push_back(c);
    total_weight_ += weight;
}

void TubeProposal::add_box(const Box &box, double weight) {
    if (!(weight > 0.0)) {
        fail(ErrorCode::InvalidArgument, "proposal weight must be positive");
    }
    const double vol = box.volume();
    if (!std::isfinite(vol) || !(vol > 0.0)) {
        fail(ErrorCode::InvalidArgument, "box proposal needs a bounded box of positive volume");
    }
    Component c;
    c.is_box = true;
    c.weight = weight;
    c.box = box;
    c.inv_volume = 1.0 / vol;
    components_.push_back(c);
    total_weight_ += weight;
}

TubeSample TubeProposal::sample_component(const Component &c, Rng &rng) const {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    TubeSample s;
    if (c.is_box) {
        for (int i = 0; i < 4; ++i) {
            s.x(i) = c.box.x_lo(i) + (c.box.x_hi(i) - c.box.x_lo(i)) * uni(rng);
            s.r(i) = c.box.r_lo(i) + (c.box.r_hi(i) - c.box.r_lo(i)) * uni(rng);
        }
        return s;
    }
    std::gamma_distribution<double> g4(4.0, 1.0);
    std::gamma_distribution<double> g2(2.0, 1.0);
    std::normal_distribution<double> normal;

    const double scale = r_scale_ * c.a;
    const double r0 = scale * g4(rng) / g2(rng);
    Eigen::Vector3d dir(normal(rng), normal(rng), normal(rng));
    const double norm = dir.norm();
    dir = norm > 0.0 ? Eigen::Vector3d(dir / norm) : Eigen::Vector3d::UnitX();
    const double radius = r0 * std::cbrt(uni(rng));
    RealFourVector rp;
    rp << r0, radius * dir;

    const double sx = x_scale_ * (c.a + r0);
    const double chi = std::abs(normal(rng));
    RealFourVector xp;
    for (int i = 0; i < 4; ++i) {
        xp(i) = normal(rng);
    }
    xp *= sx / std::max(chi, 1e-300);

    s.r = c.boost * rp;
    s.x = c.x0 + c.boost * xp;
    return s;
}

double TubeProposal::component_density(const Component &c, const RealFourVector &x,
                                       const RealFourVector &r) const {
    if (c.is_box) {
        return c.box.contains(x, r) ? c.inv_volume : 0.0;
    }
    const RealFourVector rp = c.inverse * r;
    if (!(rp(0) > 0.0) || rp.tail<3>().norm() >= rp(0)) {
        return 0.0;
    }
    const double scale = r_scale_ * c.a;
    const double t = rp(0) / scale;
    const double q_r = 15.0 / (kPi * std::pow(scale, 4)) * std::pow(1.0 + t, -6.0);

    const RealFourVector xp = c.inverse * (x - c.x0);
    const double sx = x_scale_ * (c.a + rp(0));
    const double q_x = 0.75 / (kPi * kPi * std::pow(sx, 4)) *
                       std::pow(1.0 + xp.squaredNorm() / (sx * sx), -2.5);
    return q_r * q_x;
}

TubeSample TubeProposal::sample(Rng &rng) const {
    if (components_.empty()) {
        fail(ErrorCode::InvalidArgument, "empty proposal");
    }
    std::uniform_real_distribution<double> uni(0.0, total_weight_);
    double u = uni(rng);
    for (const Component &c : components_) {
        if (u < c.weight) {
            return sample_component(c, rng);
        }
        u -= c.weight;
    }
    return sample_component(components_.back(), rng);
}

double TubeProposal::density(const RealFourVector &x, const RealFourVector &r) const {
    double d = 0.0;
    for (const Component &c : components_) {
        d += c.weight * component_density(c, x, r);
    }
    return d / total_weight_;
}

void Accumulator::merge(const Accumulator &o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    sum_abs += o.sum_abs;
    max_abs = std::max(max_abs, o.max_abs);
    n += o.n;
}

Estimate Accumulator::finish(std::uint64_t seed) const {
    Estimate e;
    e.seed = seed;
    e.samples = n;
    if (n == 0) {
        return e;
    }
    const double nn = static_cast<double>(n);
    e.value = sum / nn;
    const double var = std::max(0.0, sum_sq / nn - std::norm(e.value));
    e.std_err = std::sqrt(var / nn);
    e.mean_abs = sum_abs / nn;
    e.max_share = sum_abs > 0.0 ? max_abs / sum_abs : 0.0;
    return e;
}

Estimate run_streams(const McConfig &cfg, std::string_view tag,
                     const std::function<void(Rng &, std::size_t, Accumulator &)> &body) {
    if (cfg.samples == 0 || cfg.streams == 0) {
        fail(ErrorCode::InvalidArgument, "Monte-Carlo run needs samples > 0 and streams > 0");
    }
    const std::size_t streams = std::min(cfg.streams, cfg.samples);
    std::vector<Accumulator> acc(streams);
    const std::size_t per = cfg.samples / streams;
    const std::size_t rem = cfg.samples % streams;

    auto run_one = [&](std::size_t i) {
        Rng rng = make_stream(cfg.seed, tag, i);
        body(rng, per + (i < rem ? 1 : 0), acc[i]);
    };

    std::size_t threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, streams);
    if (threads == 1) {
        for (std::size_t i = 0; i < streams; ++i) {
            run_one(i);
        }
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < streams; i += threads) {
                        run_one(i);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    Accumulator total;
    for (const Accumulator &a : acc) {
        total.merge(a);
    }
    return total.finish(cfg.seed);
}

IdentityReport make_report(std::string identity, const Estimate &e, Complex target) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.estimate = e.value;
    r.target = target;
    r.abs_err = std::abs(e.value - target);
    r.rel_err = std::abs(target) > 0.0 ? r.abs_err / std::abs(target) : r.abs_err;
    r.std_err = e.std_err;
    r.samples = e.samples;
    r.seed = e.seed;
    return r;
}

void require_precision(const Estimate &e, const McConfig &cfg, std::string_view what) {
    if (e.rel_std_err() > cfg.max_rel_err) {
        std::ostringstream os;
        os << what << ": relative standard error " << e.rel_std_err() << " exceeds "
           << cfg.max_rel_err << " with " << e.samples << " samples";
        fail(ErrorCode::InsufficientSamples, os.str());
    }
}

std::vector<TubeSample> metropolis(const std::function<double(const TubeSample &)> &log_target,
                                   const TubeProposal &proposal, TubeSample start, std::size_t count,
                                   const MetropolisConfig &mcfg, Rng &rng) {
    double lt_cur = log_target(start);
    if (!std::isfinite(lt_cur)) {
        fail(ErrorCode::InvalidArgument, "Metropolis start point has zero target density");
    }
    const std::size_t thin = std::max<std::size_t>(mcfg.thin, 1);
    const bool independence = !proposal.empty() && mcfg.independence_fraction > 0.0;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> normal;

    TubeSample cur = start;
    double lq_cur = independence ? std::log(proposal.density(cur.x, cur.r)) : 0.0;
    std::vector<TubeSample> out;
    out.reserve(count);
    const std::size_t total = mcfg.burn_in + count * thin;
    for (std::size_t it = 0; it < total; ++it) {
        TubeSample y;
        double log_ratio;
        double lq_y = 0.0;
        const bool use_ind = independence && uni(rng) < mcfg.independence_fraction;
        if (use_ind) {
            y = proposal.sample(rng);
            lq_y = std::log(proposal.density(y.x, y.r));
        } else {
            for (int i = 0; i < 4; ++i) {
                y.x(i) = cur.x(i) + mcfg.step * normal(rng);
                y.r(i) = cur.r(i) + mcfg.step * normal(rng);
            }
        }
        const double lt_y = is_timelike_future(y.r) ? log_target(y)
                                                     : -std::numeric_limits<double>::infinity();
        if (std::isfinite(lt_y)) {
            log_ratio = lt_y - lt_cur;
            if (use_ind) {
                log_ratio += lq_cur - lq_y;
            }
            if (std::log(uni(rng)) < log_ratio) {
                cur = y;
                lt_cur = lt_y;
                lq_cur = independence ? (use_ind ? lq_y : std::log(proposal.density(y.x, y.r))) : 0.0;
            }
        }
        if (it >= mcfg.burn_in && (it - mcfg.burn_in) % thin == thin - 1) {
            out.push_back(cur);
        }
    }
    return out;
}

} // namespace ftq
