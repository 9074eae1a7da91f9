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

#include "ftq/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ftq/error.hpp"
#include "ftq/kernel.hpp"

namespace ftq {

Complex coherent_wavefunction(const FutureTubePoint &z, const FutureTubePoint &u) {
    return kernel4(u, z) / std::sqrt(kernel_diagonal(z));
}

Complex overlap(const FutureTubePoint &w, const FutureTubePoint &z) {
    return kernel4(w, z) / std::sqrt(kernel_diagonal(w) * kernel_diagonal(z));
}

double cross_ratio_probability(const FutureTubePoint &w, const FutureTubePoint &z) {
    const Complex ww = minkowski_square(w.z() - w.zbar());
    const Complex zz = minkowski_square(z.z() - z.zbar());
    const Complex wz = minkowski_square(w.z() - z.zbar());
    const Complex zw = minkowski_square(z.z() - w.zbar());
    const Complex ratio = ww * zz / (wz * zw);
    const Complex r2 = ratio * ratio;
    return std::abs(r2 * r2);
}

Eigen::MatrixXcd gram_matrix(const std::vector<FutureTubePoint> &foci) {
    const auto n = static_cast<Eigen::Index>(foci.size());
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            g(i, j) = overlap(foci[i], foci[j]);
            g(j, i) = std::conj(g(i, j));
        }
    }
    return g;
}

PureState PureState::coherent(const FutureTubePoint &z) {
    Eigen::VectorXcd c(1);
    c(0) = 1.0;
    return PureState({z}, c);
}

PureState PureState::make(std::vector<FutureTubePoint> foci, Eigen::VectorXcd coeffs) {
    if (foci.empty() || static_cast<Eigen::Index>(foci.size()) != coeffs.size()) {
        fail(ErrorCode::InvalidArgument, "state needs matching non-empty foci and coefficients");
    }
    const Eigen::MatrixXcd g = gram_matrix(foci);
    const double norm_sq = std::real(coeffs.dot(g * coeffs));
    if (!(norm_sq > 1e-24)) {
        fail(ErrorCode::InvalidArgument, "state has zero norm");
    }
    coeffs /= std::sqrt(norm_sq);
    return PureState(std::move(foci), std::move(coeffs));
}

Complex PureState::operator()(const FutureTubePoint &u) const {
    Complex v = 0.0;
    for (std::size_t i = 0; i < foci_.size(); ++i) {
        v += coeffs_(static_cast<Eigen::Index>(i)) * coherent_wavefunction(foci_[i], u);
    }
    return v;
}

Complex PureState::inner(const PureState &other) const {
    Complex v = 0.0;
    for (std::size_t i = 0; i < foci_.size(); ++i) {
        for (std::size_t j = 0; j < other.foci_.size(); ++j) {
            v += std::conj(coeffs_(static_cast<Eigen::Index>(i))) *
                 other.coeffs_(static_cast<Eigen::Index>(j)) * overlap(foci_[i], other.foci_[j]);
        }
    }
    return v;
}

DensityState DensityState::pure(const PureState &s) { return DensityState({Branch{1.0, s}}); }

DensityState DensityState::make(std::vector<Branch> branches) {
    if (branches.empty()) {
        fail(ErrorCode::InvalidArgument, "density state needs at least one branch");
    }
    double total = 0.0;
    for (const Branch &b : branches) {
        if (!(b.weight >= 0.0) || !std::isfinite(b.weight)) {
            fail(ErrorCode::InvalidArgument, "branch weights must be finite and non-negative");
        }
        total += b.weight;
    }
    if (!(total > 0.0)) {
        fail(ErrorCode::InvalidArgument, "branch weights sum to zero");
    }
    for (Branch &b : branches) {
        b.weight /= total;
    }
    return DensityState(std::move(branches));
}

std::vector<FutureTubePoint> DensityState::foci() const {
    std::vector<FutureTubePoint> out;
    for (const Branch &b : branches_) {
        out.insert(out.end(), b.state.foci().begin(), b.state.foci().end());
    }
    return out;
}

double DensityState::diagonal(const FutureTubePoint &u) const {
    double v = 0.0;
    for (const Branch &b : branches_) {
        v += b.weight * std::norm(b.state(u));
    }
    return v;
}

Complex DensityState::kernel(const FutureTubePoint &u, const FutureTubePoint &v) const {
    Complex s = 0.0;
    for (const Branch &b : branches_) {
        s += b.weight * b.state(u) * std::conj(b.state(v));
    }
    return s;
}

double DensityState::purity() const {
    double p = 0.0;
    for (const Branch &a : branches_) {
        for (const Branch &b : branches_) {
            p += a.weight * b.weight * std::norm(a.state.inner(b.state));
        }
    }
    return p;
}

double density_diagonal(const DensityState &state, const FutureTubePoint &z) {
    return state.diagonal(z);
}

TubeProposal density_proposal(const DensityState &state, const Region &region,
                              const McConfig &cfg) {
    TubeProposal q(cfg.x_scale, cfg.r_scale);
    const auto foci = state.foci();
    for (const auto &f : foci) {
        q.add_focus(f, 1.0 / static_cast<double>(foci.size()));
    }
    if (!region.is_complement()) {
        std::vector<Box> bounded;
        for (const Box &b : region.boxes()) {
            if (b.bounded() && b.volume() > 0.0) {
                bounded.push_back(b);
            }
        }
        for (const Box &b : bounded) {
            q.add_box(b, 1.0 / static_cast<double>(bounded.size()));
        }
    }
    return q;
}

Estimate povm_probability(const DensityState &state, const Region &region, const McConfig &cfg) {
    if (region.is_point()) {
        fail(ErrorCode::InvalidArgument,
             "a point region has zero measure; use density_diagonal for the density");
    }
    const TubeProposal q = density_proposal(state, region, cfg);
    const Estimate e = integrate_tube(
        q,
        [&](const TubeSample &s) -> double {
            if (!region.contains(s.x, s.r)) {
                return 0.0;
            }
            return state.diagonal(FutureTubePoint::make(s.x, s.r));
        },
        cfg, "povm");
    require_precision(e, cfg, "povm probability");
    return e;
}

std::vector<FutureTubePoint> sample_density(const DensityState &state, const Region &region,
                                            std::size_t count, const McConfig &cfg,
                                            std::string_view tag) {
    if (count == 0) {
        fail(ErrorCode::InvalidArgument, "need at least one focus");
    }
    const TubeProposal q = density_proposal(state, region, cfg);
    Rng rng = make_stream(cfg.seed, tag, 0);

    auto log_target = [&](const TubeSample &s) {
        if (!region.contains(s.x, s.r)) {
            return -std::numeric_limits<double>::infinity();
        }
        const double d = state.diagonal(FutureTubePoint::make(s.x, s.r));
        return d > 0.0 ? std::log(d) : -std::numeric_limits<double>::infinity();
    };

    // Start from the best of the foci and a batch of proposal draws.
    std::optional<TubeSample> start;
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](const TubeSample &s) {
        const double lt = log_target(s);
        if (lt > best) {
            best = lt;
            start = s;
        }
    };
    for (const auto &f : state.foci()) {
        consider({f.x(), f.r()});
    }
    for (int i = 0; i < 4096; ++i) {
        consider(q.sample(rng));
    }
    if (!start) {
        fail(ErrorCode::ZeroProbabilityRegion, "no proposal draw landed in the region with positive density");
    }

    MetropolisConfig mcfg;
    double scale = std::numeric_limits<double>::infinity();
    for (const auto &f : state.foci()) {
        scale = std::min(scale, std::sqrt(f.r_square()));
    }
    mcfg.step = 0.2 * scale;
    for (const Box &b : region.boxes()) {
        if (!region.is_complement() && b.bounded()) {
            const double w = std::min((b.x_hi - b.x_lo).minCoeff(), (b.r_hi - b.r_lo).minCoeff());
            mcfg.step = std::min(mcfg.step, 0.25 * w);
        }
    }

    const auto chain = metropolis(log_target, q, *start, count, mcfg, rng);
    std::vector<FutureTubePoint> out;
    out.reserve(chain.size());
    for (const auto &s : chain) {
        out.push_back(FutureTubePoint::make(s.x, s.r));
    }
    return out;
}

namespace {

DensityState mixture_of(const std::vector<FutureTubePoint> &foci) {
    std::vector<Branch> branches;
    branches.reserve(foci.size());
    for (const auto &f : foci) {
        branches.push_back(Branch{1.0, PureState::coherent(f)});
    }
    return DensityState::make(std::move(branches));
}

} // namespace

MeasurementOutcome post_measurement_state(const DensityState &state, const Region &region,
                                          std::size_t n_foci, const McConfig &cfg) {
    if (region.is_point()) {
        Estimate density;
        density.value = state.diagonal(*region.point());
        density.seed = cfg.seed;
        if (!(density.value.real() > 0.0)) {
            fail(ErrorCode::ZeroProbabilityRegion, "state vanishes at the recorded point");
        }
        return {density, DensityState::pure(PureState::coherent(*region.point()))};
    }
    const Estimate p = povm_probability(state, region, cfg);
    if (!(p.value.real() > std::numeric_limits<double>::min())) {
        fail(ErrorCode::ZeroProbabilityRegion, "region carries no probability");
    }
    return {p, mixture_of(sample_density(state, region, n_foci, cfg, "post-measurement"))};
}

DensityState decohere_unrecorded(const DensityState &state, std::size_t n_foci,
                                 const McConfig &cfg) {
    return mixture_of(sample_density(state, Region::whole_tube(), n_foci, cfg, "decohere"));
}

ProjectiveOutcome projective_yes_probability(const PureState &state, const FutureTubePoint &z) {
    const Complex amp = state(z) / std::sqrt(kernel_diagonal(z)); // <psi_z|xi>
    const double p = std::clamp(std::norm(amp), 0.0, 1.0);
    ProjectiveOutcome out{p, PureState::coherent(z), std::nullopt};
    if (1.0 - p > 1e-12) {
        std::vector<FutureTubePoint> foci = state.foci();
        foci.push_back(z);
        Eigen::VectorXcd c(state.coeffs().size() + 1);
        c << state.coeffs(), -amp;
        out.no = PureState::make(std::move(foci), std::move(c));
    }
    return out;
}

Estimate expectation(const DensityState &state,
                     const std::function<double(const FutureTubePoint &)> &F, const McConfig &cfg) {
    const TubeProposal q = density_proposal(state, Region::whole_tube(), cfg);
    const Estimate e = integrate_tube(
        q,
        [&](const TubeSample &s) -> double {
            const FutureTubePoint z = FutureTubePoint::make(s.x, s.r);
            return F(z) * state.diagonal(z);
        },
        cfg, "expectation");
    if (!std::isfinite(e.mean_abs)) {
        fail(ErrorCode::NonIntegrable, "non-finite integrand weight");
    }
    if (e.max_share > cfg.max_weight_share) {
        std::ostringstream os;
        os << "a single sample carries " << e.max_share << " of the total weight";
        fail(ErrorCode::NonIntegrable, os.str());
    }
    require_precision(e, cfg, "expectation");
    return e;
}

IdentityReport completeness_check(const FutureTubePoint &x, const FutureTubePoint &y,
                                  const McConfig &cfg) {
    TubeProposal q(cfg.x_scale, cfg.r_scale);
    q.add_focus(x);
    q.add_focus(y);
    const Estimate e = integrate_tube(
        q,
        [&](const TubeSample &s) -> Complex {
            const FutureTubePoint z = FutureTubePoint::make(s.x, s.r);
            return coherent_wavefunction(z, x) * std::conj(coherent_wavefunction(z, y)) *
                   kernel_diagonal(z);
        },
        cfg, "completeness");
    require_precision(e, cfg, "completeness");
    return make_report("completeness", e, kernel4(x, y));
}

} // namespace ftq
