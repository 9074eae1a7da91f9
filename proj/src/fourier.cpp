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

#include "ftq/fourier.hpp"

#include <cmath>
#include <limits>

#include "ftq/error.hpp"

namespace ftq {

namespace {

const Complex I(0.0, 1.0);

void require_future(const RealFourVector &xi, const char *what) {
    if (!is_timelike_future(xi)) {
        fail(ErrorCode::DegenerateVector, std::string(what) + " must be time-like future-pointing");
    }
}

Eigen::Vector3d unit_vector(Rng &rng) {
    std::normal_distribution<double> normal;
    Eigen::Vector3d v(normal(rng), normal(rng), normal(rng));
    const double n = v.norm();
    return n > 0.0 ? Eigen::Vector3d(v / n) : Eigen::Vector3d::UnitX();
}

} // namespace

Complex coherent_ft(const FutureTubePoint &z, const RealFourVector &p) {
    const double rr = z.r_square();
    const double c = 2.0 * kPi * kPi / std::sqrt(3.0) * rr * rr;
    return c * std::exp(-minkowski_inner(z.r(), p)) * std::exp(I * minkowski_inner(z.x(), p));
}

MomentumFunction coherent_momentum(const FutureTubePoint &z) {
    return {[z](const RealFourVector &p) { return coherent_ft(z, p); }, z.r()};
}

MomentumFunction plane_wave(const FutureTubePoint &w) {
    const ComplexFourVector wbar = w.zbar();
    return {[wbar](const RealFourVector &p) {
                return std::exp(I * minkowski_inner(p.cast<Complex>(), wbar));
            },
            w.r()};
}

MomentumFunction state_momentum(const PureState &s) {
    // c e_0 with r_i - c e_0 in the closed cone for every focus.
    double c = std::numeric_limits<double>::infinity();
    for (const auto &f : s.foci()) {
        c = std::min(c, f.r()(0) - f.r().tail<3>().norm());
    }
    const RealFourVector damping(c, 0.0, 0.0, 0.0);
    return {[s](const RealFourVector &p) {
                Complex v = 0.0;
                for (std::size_t i = 0; i < s.foci().size(); ++i) {
                    v += s.coeffs()(static_cast<Eigen::Index>(i)) * coherent_ft(s.foci()[i], p);
                }
                return v;
            },
            damping};
}

double cone_exponential_integral(const RealFourVector &xi) {
    require_future(xi, "damping vector");
    const double s = minkowski_square(xi);
    return 8.0 * kPi / (s * s);
}

double cone_weighted_integral(const RealFourVector &xi) {
    require_future(xi, "damping vector");
    const double s = minkowski_square(xi);
    return 1536.0 * kPi / std::pow(s, 4);
}

RealFourVector cone_mean(const RealFourVector &xi) {
    require_future(xi, "damping vector");
    return 4.0 * xi / minkowski_square(xi);
}

void ConeProposal::add(const RealFourVector &xi, double weight) {
    require_future(xi, "damping vector");
    if (!(weight > 0.0)) {
        fail(ErrorCode::InvalidArgument, "cone proposal weight must be positive");
    }
    const double norm = power_ == 2 ? cone_weighted_integral(xi) : cone_exponential_integral(xi);
    components_.push_back({xi, rest_frame_boost(xi), std::sqrt(minkowski_square(xi)), norm, weight});
    total_weight_ += weight;
}

RealFourVector ConeProposal::sample(Rng &rng) const {
    if (components_.empty()) {
        fail(ErrorCode::InvalidArgument, "empty cone proposal");
    }
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u = uni(rng) * total_weight_;
    const Component *c = &components_.back();
    for (const auto &comp : components_) {
        if (u < comp.weight) {
            c = &comp;
            break;
        }
        u -= comp.weight;
    }
    const double shape = power_ == 2 ? 8.0 : 4.0;
    std::gamma_distribution<double> gamma(shape, 1.0 / c->a);
    const double p0 = gamma(rng);
    double v;
    if (power_ == 2) {
        // v^2 (1 - v^2)^2 peaks at 4/27.
        do {
            v = uni(rng);
        } while (uni(rng) * (4.0 / 27.0) > v * v * (1.0 - v * v) * (1.0 - v * v));
    } else {
        v = std::cbrt(uni(rng));
    }
    RealFourVector pp;
    pp << p0, p0 * v * unit_vector(rng);
    return c->boost * pp;
}

double ConeProposal::density(const RealFourVector &p) const {
    if (!(p(0) > 0.0) || !(minkowski_square(p) > 0.0)) {
        return 0.0;
    }
    const double pp = minkowski_square(p);
    const double poly = power_ == 2 ? pp * pp : 1.0;
    double d = 0.0;
    for (const auto &c : components_) {
        d += c.weight * poly * std::exp(-minkowski_inner(c.xi, p)) / c.norm;
    }
    return d / total_weight_;
}

std::vector<ConeSample> sample_forward_cone(const ConeSampler &sampler) {
    ConeProposal q(0);
    q.add(sampler.xi);
    Rng rng = make_stream(sampler.seed, "cone", 0);
    std::vector<ConeSample> out;
    out.reserve(sampler.samples);
    for (std::size_t i = 0; i < sampler.samples; ++i) {
        const RealFourVector p = q.sample(rng);
        out.push_back({p, q.density(p)});
    }
    return out;
}

Estimate cone_integral_mc(const RealFourVector &xi, const ConeSampler &sampler) {
    require_future(xi, "damping vector");
    ConeProposal q(0);
    q.add(sampler.xi);
    McConfig cfg;
    cfg.seed = sampler.seed;
    cfg.samples = sampler.samples;
    return run_streams(cfg, "cone-integral", [&](Rng &rng, std::size_t n, Accumulator &acc) {
        for (std::size_t i = 0; i < n; ++i) {
            const RealFourVector p = q.sample(rng);
            acc.add(std::exp(-minkowski_inner(xi, p)) / q.density(p));
        }
    });
}

Estimate inverse_ft_mc(const MomentumFunction &psi, const FutureTubePoint &z, const McConfig &cfg) {
    ConeProposal q(2);
    q.add(z.r() + psi.damping);
    const ComplexFourVector zc = z.z();
    const double c = 1.0 / (8.0 * std::pow(kPi, 5));
    const Estimate e = run_streams(cfg, "inverse-ft", [&](Rng &rng, std::size_t n, Accumulator &acc) {
        for (std::size_t i = 0; i < n; ++i) {
            const RealFourVector p = q.sample(rng);
            const double pp = minkowski_square(p);
            const Complex phase = std::exp(-I * minkowski_inner(p.cast<Complex>(), zc));
            acc.add(c * phase * pp * pp * psi.f(p) / q.density(p));
        }
    });
    require_precision(e, cfg, "inverse Fourier transform");
    return e;
}

IdentityReport parseval_check(const PureState &s1, const PureState &s2, const McConfig &cfg) {
    ConeProposal q(2);
    for (const auto &a : s1.foci()) {
        for (const auto &b : s2.foci()) {
            q.add(a.r() + b.r());
        }
    }
    const MomentumFunction f1 = state_momentum(s1);
    const MomentumFunction f2 = state_momentum(s2);
    const double c = 1.0 / (8.0 * std::pow(kPi, 5));
    const Estimate e = run_streams(cfg, "parseval", [&](Rng &rng, std::size_t n, Accumulator &acc) {
        for (std::size_t i = 0; i < n; ++i) {
            const RealFourVector p = q.sample(rng);
            const double pp = minkowski_square(p);
            acc.add(c * f1.f(p) * pp * pp * std::conj(f2.f(p)) / q.density(p));
        }
    });
    return make_report("parseval", e, s2.inner(s1));
}

} // namespace ftq
