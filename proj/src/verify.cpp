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

#include "ftq/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

#include "ftq/conformal.hpp"
#include "ftq/dynamics.hpp"
#include "ftq/error.hpp"
#include "ftq/fourier.hpp"
#include "ftq/kernel.hpp"
#include "ftq/localization.hpp"
#include "ftq/quadrature.hpp"
#include "ftq/states.hpp"

namespace ftq {

using io::Json;

namespace {

const Complex I(0.0, 1.0);

class Suite {
  public:
    Suite(std::string name, const VerifyConfig &cfg) : name_(std::move(name)), cfg_(cfg) {}

    void add(const std::string &check, bool pass, Json details) {
        out_.push_back({name_, check, pass, std::move(details)});
    }

    /// Runs f, turning a thrown ftq::Error into a failed check.
    void guarded(const std::string &check, const std::function<void()> &f) {
        if (!cfg_.only.empty() && std::find(cfg_.only.begin(), cfg_.only.end(), check) == cfg_.only.end()) {
            return;
        }
        try {
            f();
        } catch (const Error &e) {
            add(check, false, Json{{"error", e.what()}});
        }
    }

    Rng rng(const std::string &tag) const { return make_stream(cfg_.seed, name_ + "/" + tag, 0); }

    McConfig mc(const std::string &salt = "") const {
        McConfig c;
        c.seed = substream_seed(cfg_.seed, name_ + "/" + salt);
        c.samples = cfg_.samples;
        c.max_rel_err = std::numeric_limits<double>::infinity();
        return c;
    }

    std::vector<CheckResult> take() { return std::move(out_); }
    const VerifyConfig &cfg() const { return cfg_; }

  private:
    std::string name_;
    const VerifyConfig &cfg_;
    std::vector<CheckResult> out_;
};

double rel(Complex a, Complex b) {
    const double d = std::abs(b);
    return d > 0.0 ? std::abs(a - b) / d : std::abs(a);
}

double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

RealFourVector random_vector(Rng &rng, double scale) {
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale),
            uniform(rng, -scale, scale)};
}

Eigen::Vector3d random3(Rng &rng, double scale) {
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

/// A pair of foci close enough for Monte-Carlo identities at percent accuracy.
std::pair<FutureTubePoint, FutureTubePoint> nearby_pair(Rng &rng) {
    const FutureTubePoint z = random_tube_point(rng, 0.5, 0.7, 1.4, 0.5);
    const FutureTubePoint w = random_tube_point(rng, 0.5, 0.7, 1.4, 0.5);
    return {z, w};
}

Complex random_complex(Rng &rng) { return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)}; }

PureState random_state(Rng &rng, std::size_t n, double x_range = 0.5) {
    std::vector<FutureTubePoint> foci;
    Eigen::VectorXcd c(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        foci.push_back(random_tube_point(rng, x_range, 0.7, 1.4, 0.5));
        c(static_cast<Eigen::Index>(i)) = random_complex(rng);
    }
    return PureState::make(std::move(foci), std::move(c));
}

Json mc_json(const Estimate &e, Complex target) {
    return Json{{"estimate", io::to_json(e.value)}, {"target", io::to_json(target)},
                {"abs_err", std::abs(e.value - target)}, {"rel_err", rel(e.value, target)},
                {"std_err", e.std_err}, {"samples", e.samples}, {"seed", e.seed}};
}

/// Worst case over several Monte-Carlo comparisons against closed forms.
struct McSweep {
    double max_rel = 0.0;
    double max_sigma = 0.0;
    std::size_t cases = 0;
    Json worst;

    void add(const Estimate &e, Complex target) {
        const double r = rel(e.value, target);
        const double sig = e.std_err > 0.0 ? std::abs(e.value - target) / e.std_err : 0.0;
        if (r >= max_rel) {
            worst = mc_json(e, target);
        }
        max_rel = std::max(max_rel, r);
        max_sigma = std::max(max_sigma, sig);
        ++cases;
    }
    Json json() const {
        return Json{{"cases", cases}, {"max_rel_err", max_rel}, {"max_sigma", max_sigma},
                    {"worst", worst}};
    }
};

// ---------------------------------------------------------------- geometry

void geometry_suite(Suite &s) {
    const double hbar = s.cfg().hbar;
    s.guarded("kelvin-involution", [&] {
        Rng rng = s.rng("kelvin");
        double worst = 0.0;
        bool cone = true;
        for (int i = 0; i < 100000; ++i) {
            const FutureTubePoint z = random_tube_point(rng, 1.0, 0.1, 10.0, 2.0);
            const RealFourVector p = kelvin_map(z.r(), hbar);
            const RealFourVector back = kelvin_map(p, hbar);
            worst = std::max(worst, (back - z.r()).cwiseAbs().maxCoeff() / z.r().cwiseAbs().maxCoeff());
            cone = cone && classify_vector(p) == VectorClass::TimelikeFuture;
        }
        s.add("kelvin-involution", worst <= 1e-12 && cone,
              Json{{"samples", 100000}, {"max_rel_err", worst}, {"cone_preserved", cone}});
    });
    s.guarded("cayley-ball", [&] {
        Rng rng = s.rng("cayley");
        bool inside = true;
        for (int i = 0; i < 10000; ++i) {
            inside = inside && is_in_unit_ball(cayley_to_ball(random_tube_point(rng, 3.0, 0.1, 10.0, 2.0)));
        }
        const double origin = cayley_to_ball(FutureTubePoint::make(RealFourVector::Zero(),
                                                                   RealFourVector(1, 0, 0, 0)))
                                  .norm();
        s.add("cayley-ball", inside && origin < 1e-14,
              Json{{"samples", 10000}, {"all_inside", inside}, {"image_of_minus_i_e0", origin}});
    });
    s.guarded("phase-space-metric", [&] {
        Rng rng = s.rng("metric");
        double inv_err = 0.0;
        double min_eig = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng, 1.0, 0.2, 5.0, 1.5);
            const PhaseSpaceMetric m = phase_space_metric(z.r());
            inv_err = std::max(inv_err, (m.h * m.k - Matrix4::Identity()).cwiseAbs().maxCoeff());
            const double e = Eigen::SelfAdjointEigenSolver<Matrix4>(m.h).eigenvalues().minCoeff();
            min_eig = std::min(min_eig, e * z.r_square());
        }
        s.add("phase-space-metric", inv_err <= 1e-10 && min_eig > 0.0,
              Json{{"max_hk_minus_identity", inv_err}, {"min_scaled_eigenvalue", min_eig}});
    });
}

// ---------------------------------------------------------------- kernel

void kernel_suite(Suite &s) {
    const double hbar = s.cfg().hbar;
    s.guarded("kernel-diagonal", [&] {
        const FutureTubePoint z = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
        const double target = 3.0 / (4.0 * std::pow(kPi, 4));
        const double err = rel(kernel4(z, z), target);
        s.add("kernel-diagonal", err <= 1e-12,
              Json{{"value", kernel4(z, z).real()}, {"target", target}, {"rel_err", err}});
    });
    s.guarded("kernel-momentum-form", [&] {
        Rng rng = s.rng("momentum-form");
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const FutureTubePoint z = random_tube_point(rng, 2.0, 0.3, 3.0, 1.5);
            const double m = kernel_diagonal_momentum(kelvin_map(z.r(), hbar), hbar);
            worst = std::max(worst, rel(kernel4(z, z), m));
        }
        s.add("kernel-momentum-form", worst <= 1e-12, Json{{"points", 10000}, {"max_rel_err", worst}});
    });
    s.guarded("kernel-hermitian", [&] {
        Rng rng = s.rng("hermitian");
        double worst = 0.0;
        double translation = 0.0;
        bool positive = true;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const FutureTubePoint w = random_tube_point(rng);
            worst = std::max(worst, rel(kernel4(z, w), std::conj(kernel4(w, z))));
            const RealFourVector b = random_vector(rng, 1.0);
            const Complex kt = kernel4(FutureTubePoint::make(z.x() + b, z.r()),
                                       FutureTubePoint::make(w.x() + b, w.r()));
            translation = std::max(translation, rel(kt, kernel4(z, w)));
            const Complex d = kernel4(z, z);
            positive = positive && d.real() > 0.0 && d.imag() == 0.0;
        }
        s.add("kernel-hermitian", worst <= 1e-14 && translation <= 1e-12 && positive,
              Json{{"max_rel_err", worst}, {"translation_rel_err", translation},
                   {"diagonal_positive", positive}});
    });
    s.guarded("coherent-diagonal", [&] {
        Rng rng = s.rng("coherent-diagonal");
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            worst = std::max(worst, rel(coherent_wavefunction(z, z), std::sqrt(kernel_diagonal(z))));
        }
        s.add("coherent-diagonal", worst <= 1e-12, Json{{"max_rel_err", worst}});
    });
    s.guarded("bergman-metric", [&] {
        Rng rng = s.rng("bergman-metric");
        double worst = 0.0;
        double levi = 0.0;
        double min_eig = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 100; ++i) {
            const FutureTubePoint z = random_tube_point(rng, 2.0, 0.3, 3.0, 1.2);
            const Matrix4 h = phase_space_metric(z.r()).h;
            const Eigen::Matrix4cd l = levi_form_numeric(z);
            const Matrix4 g = 0.5 * l.real();
            const double scale = h.cwiseAbs().maxCoeff();
            worst = std::max(worst, (g - h).cwiseAbs().maxCoeff() / scale);
            levi = std::max(levi, (l - Eigen::Matrix4cd(2.0 * h.cast<Complex>())).cwiseAbs().maxCoeff() / scale);
            min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Matrix4>(h).eigenvalues().minCoeff() / scale);
        }
        s.add("bergman-metric", worst <= 1e-6 && min_eig > 0.0,
              Json{{"points", 100}, {"max_rel_err", worst}, {"levi_minus_2h_rel", levi},
                   {"min_rel_eigenvalue", min_eig}});
    });
    s.guarded("halfplane-orthonormality", [&] {
        double worst = 0.0;
        for (int n = 1; n <= 10; ++n) {
            for (int m = 1; m <= 10; ++m) {
                const Complex g = quad::integrate_disk(
                    [&](Complex w) {
                        const Complex y = cayley_from_disk(w);
                        const double jac = 4.0 / std::pow(std::abs(I * w - 1.0), 4);
                        return basis_halfplane(n, y) * std::conj(basis_halfplane(m, y)) * jac;
                    },
                    32, 48);
                worst = std::max(worst, std::abs(g - (n == m ? 1.0 : 0.0)));
            }
        }
        s.add("halfplane-orthonormality", worst <= 1e-6, Json{{"max_abs_err", worst}, {"n_max", 10}});
    });
    s.guarded("halfplane-series", [&] {
        Rng rng = s.rng("halfplane-series");
        double worst = 0.0;
        bool positive = true;
        for (int i = 0; i < 200; ++i) {
            const Complex z(uniform(rng, -1.0, 1.0), -uniform(rng, 0.5, 2.0));
            const Complex w(uniform(rng, -1.0, 1.0), -uniform(rng, 0.5, 2.0));
            worst = std::max(worst, rel(kernel_halfplane_series(z, w, 200), kernel_halfplane(z, w)));
        }
        for (int i = 0; i < 1000; ++i) {
            const Complex z(uniform(rng, -5.0, 5.0), -uniform(rng, 1e-3, 5.0));
            positive = positive && kernel_halfplane(z, z).real() > 0.0;
        }
        const double disk0 = kernel_disk(0.0, 0.0).real();
        const bool disk_ok = std::abs(disk0 - 1.0 / kPi) <= 1e-15 &&
                             std::abs(basis_disk(1, 0.0) - 1.0 / std::sqrt(kPi)) <= 1e-15;
        s.add("halfplane-series", worst <= 1e-6 && positive && disk_ok,
              Json{{"terms", 200}, {"max_rel_err", worst}, {"diagonal_positive", positive},
                   {"disk_kernel_at_0", disk0}});
    });
    s.guarded("halfplane-reproducing", [&] {
        Rng rng = s.rng("halfplane-reproducing");
        double worst = 0.0;
        for (int i = 0; i < 5; ++i) {
            std::array<Complex, 5> c{};
            for (auto &ci : c) {
                ci = random_complex(rng);
            }
            auto f = [&](Complex y) {
                Complex v = 0.0;
                for (int n = 1; n <= 5; ++n) {
                    v += c[static_cast<std::size_t>(n - 1)] * basis_halfplane(n, y);
                }
                return v;
            };
            const Complex z(uniform(rng, -1.0, 1.0), -uniform(rng, 0.5, 2.0));
            worst = std::max(worst, std::abs(reproduce_halfplane_quadrature(f, z) - f(z)));
        }
        s.add("halfplane-reproducing", worst <= 1e-4, Json{{"max_abs_err", worst}});
    });
    s.guarded("reproduce-mc", [&] {
        Rng rng = s.rng("reproduce-mc");
        McSweep sweep;
        bool positive = true;
        for (std::size_t i = 0; i < s.cfg().pairs; ++i) {
            const auto [z, w] = nearby_pair(rng);
            const TubeFunction f{[w = w](const FutureTubePoint &u) { return coherent_wavefunction(w, u); }, {w}};
            sweep.add(reproduce_mc(f, z, s.mc("reproduce-" + std::to_string(i))), coherent_wavefunction(w, z));
        }
        {
            const FutureTubePoint z = random_tube_point(rng, 0.5, 0.7, 1.4, 0.5);
            const TubeFunction f{[z](const FutureTubePoint &u) { return kernel4(u, z); }, {z}};
            const Estimate e = reproduce_mc(f, z, s.mc("reproduce-diagonal"));
            positive = e.value.real() > 0.0 && std::abs(e.value.imag()) < 3.0 * e.std_err + 1e-12;
        }
        s.add("reproduce-mc", sweep.max_rel <= s.cfg().tol && sweep.max_sigma <= 3.0 && positive,
              [&] { Json j = sweep.json(); j["diagonal_positive"] = positive; return j; }());
    });
    s.guarded("fundamental-identity-mc", [&] {
        Rng rng = s.rng("fundamental");
        McSweep sweep;
        const std::size_t n = std::max<std::size_t>(3, s.cfg().pairs / 4);
        for (std::size_t i = 0; i < n; ++i) {
            const auto [x, z] = nearby_pair(rng);
            sweep.add(fundamental_identity_mc(x, z, s.mc("fundamental-" + std::to_string(i))), kernel4(x, z));
        }
        s.add("fundamental-identity-mc", sweep.max_rel <= s.cfg().tol, sweep.json());
    });
    s.guarded("momentum-kernel", [&] {
        Rng rng = s.rng("momentum-kernel");
        const FutureTubePoint e0 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
        const double diag_err = rel(momentum_kernel(e0, e0, 0, hbar), 3.0 * hbar / std::pow(kPi, 4));
        double herm = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const FutureTubePoint w = random_tube_point(rng);
            for (int a = 0; a < 4; ++a) {
                herm = std::max(herm, rel(momentum_kernel(z, w, a, hbar), std::conj(momentum_kernel(w, z, a, hbar))));
            }
        }
        McSweep sweep;
        for (int i = 0; i < 3; ++i) {
            const auto [z, w] = nearby_pair(rng);
            const int a = i % 4;
            const TubeFunction f{[w = w](const FutureTubePoint &u) { return coherent_wavefunction(w, u); }, {w}};
            const Estimate e = apply_kernel_mc(
                [a, hbar](const FutureTubePoint &p, const FutureTubePoint &q) { return momentum_kernel(p, q, a, hbar); },
                f, z, s.mc("momentum-" + std::to_string(i)), "momentum");
            // i hbar d psi_w / dx^a in closed form.
            const ComplexFourVector d = z.z() - w.zbar();
            const Complex sq = minkowski_square(d);
            const Complex da = a == 0 ? d(0) : -d(a);
            const Complex target = I * hbar * (-8.0) * kKernelConstant / std::sqrt(kernel_diagonal(w)) * da /
                                   std::pow(sq, 5);
            sweep.add(e, target);
        }
        Json j = sweep.json();
        j["diagonal_rel_err"] = diag_err;
        j["hermitian_rel_err"] = herm;
        s.add("momentum-kernel", diag_err <= 1e-12 && herm <= 1e-13 && sweep.max_rel <= s.cfg().tol, j);
    });
}

// ---------------------------------------------------------------- dynamics

void dynamics_suite(Suite &s) {
    const double hbar = s.cfg().hbar;
    s.guarded("free-particle", [&] {
        const double m = 1.0;
        const CotangentPoint init{RealFourVector::Zero(),
                                  RealFourVector(m * std::cosh(0.4), m * std::sinh(0.4), 0.0, 0.0)};
        IntegratorConfig cfg;
        cfg.steps = 10000;
        cfg.s_max = 10.0 / m;
        const Trajectory t = integrate_cotangent(FreeParticle{}, init, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < t.s.size(); ++i) {
            const CotangentPoint exact = free_particle_closed_form(init, t.s[i]);
            const CotangentPoint got = t.cotangent(i);
            const double scale = std::max(1.0, exact.x.cwiseAbs().maxCoeff());
            worst = std::max(worst, (got.x - exact.x).cwiseAbs().maxCoeff() / scale);
            worst = std::max(worst, (got.p - exact.p).cwiseAbs().maxCoeff() / m);
        }
        const auto rep = conserved_quantities(t, FreeParticle{});
        s.add("free-particle", worst <= 1e-9 && rep.energy_drift <= 1e-12,
              Json{{"max_rel_err", worst}, {"energy_drift", rep.energy_drift}});
    });
    s.guarded("two-body-oscillator", [&] {
        const double k = 1.0, m1 = 1.0, m2 = 1.5;
        const RealFourVector alpha(0.0, 0.3, -0.1, 0.2);
        const RealFourVector beta(0.0, 0.05, 0.25, -0.1);
        const TwoBodyPoint init = two_body_initial(alpha, beta, k, m1, m2);
        const double w = oscillator_frequency(k, m1, m2);
        IntegratorConfig cfg;
        cfg.steps = 10000;
        cfg.s_max = 2.0 * kPi / w;
        const TwoBody spec = oscillator(k);
        const Trajectory t = integrate_cotangent(spec, init, cfg);
        double worst = 0.0;
        double ortho = 0.0;
        for (std::size_t i = 0; i < t.s.size(); ++i) {
            const TwoBodyPoint p = t.two_body(i);
            const RealFourVector xi = internal_coordinate(p.x, p.y, p.X, p.Y);
            worst = std::max(worst, (xi - two_body_oscillator_closed_form(alpha, beta, k, m1, m2, t.s[i]))
                                        .cwiseAbs().maxCoeff());
            ortho = std::max(ortho, std::abs(minkowski_inner(xi, RealFourVector(p.X + p.Y))));
        }
        const auto rep = conserved_quantities(t, spec);
        const double h0 = std::sqrt(m1 * m1 + m2 * m2);
        const double shell = std::abs(rep.energy.front() - h0);
        const double pq0 = std::abs(rep.pq.front() - (m1 * m1 - m2 * m2));
        s.add("two-body-oscillator",
              worst <= 1e-6 && rep.energy_drift <= 1e-8 && rep.pq_drift <= 1e-8 && ortho <= 1e-10 &&
                  shell <= 1e-12 && pq0 <= 1e-12,
              Json{{"omega", w}, {"max_abs_err", worst}, {"energy_drift", rep.energy_drift},
                   {"pq_drift", rep.pq_drift}, {"xi_dot_P", ortho}, {"shell_err", shell},
                   {"pq_shell_err", pq0}});
    });
    s.guarded("rk4-order", [&] {
        const double k = 1.0, m1 = 1.0, m2 = 1.0;
        const RealFourVector alpha(0.0, 0.3, 0.0, 0.0), beta(0.0, 0.0, 0.3, 0.0);
        const TwoBodyPoint init = two_body_initial(alpha, beta, k, m1, m2);
        const double w = oscillator_frequency(k, m1, m2);
        auto err = [&](std::size_t steps) {
            IntegratorConfig cfg;
            cfg.steps = steps;
            cfg.s_max = 2.0 * kPi / w;
            const Trajectory t = integrate_cotangent(oscillator(k), init, cfg);
            const TwoBodyPoint p = t.two_body(t.s.size() - 1);
            return (internal_coordinate(p.x, p.y, p.X, p.Y) -
                    two_body_oscillator_closed_form(alpha, beta, k, m1, m2, t.s.back()))
                .cwiseAbs().maxCoeff();
        };
        const double e1 = err(100), e2 = err(200);
        const double ratio = e1 / e2;
        s.add("rk4-order", ratio >= 12.0 && ratio <= 20.0,
              Json{{"err_100", e1}, {"err_200", e2}, {"ratio", ratio}});
    });
    s.guarded("implicit-midpoint", [&] {
        const double k = 1.0, m1 = 1.0, m2 = 1.0;
        const RealFourVector alpha(0.0, 0.3, 0.0, 0.0), beta(0.0, 0.0, 0.3, 0.0);
        const TwoBodyPoint init = two_body_initial(alpha, beta, k, m1, m2);
        const double w = oscillator_frequency(k, m1, m2);
        IntegratorConfig cfg;
        cfg.method = Integrator::ImplicitMidpoint;
        cfg.steps = 10000;
        cfg.s_max = 2.0 * kPi / w;
        const Trajectory t = integrate_cotangent(oscillator(k), init, cfg);
        const TwoBodyPoint p = t.two_body(t.s.size() - 1);
        const double e = (internal_coordinate(p.x, p.y, p.X, p.Y) -
                          two_body_oscillator_closed_form(alpha, beta, k, m1, m2, t.s.back()))
                             .cwiseAbs().maxCoeff();
        const auto rep = conserved_quantities(t, oscillator(k));
        s.add("implicit-midpoint", e <= 1e-5 && rep.energy_drift <= 1e-8,
              Json{{"max_abs_err", e}, {"energy_drift", rep.energy_drift}});
    });
    s.guarded("charged-helix", [&] {
        const double q = 1.0, B = 1.0, m = 1.0;
        Matrix4 F = Matrix4::Zero();
        F(1, 2) = B;
        F(2, 1) = -B;
        const ChargedParticle spec = uniform_field(q, F);
        const RealFourVector u(std::cosh(0.5), 0.6 * std::sinh(0.5), 0.0, 0.8 * std::sinh(0.5));
        const CotangentPoint init{RealFourVector::Zero(), m * u};
        IntegratorConfig cfg;
        cfg.steps = 10000;
        cfg.s_max = 2.0 * kPi * m / (q * B);
        const Trajectory t = integrate_cotangent(spec, init, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < t.s.size(); ++i) {
            const CotangentPoint exact = charged_helix_closed_form(init, q, B, t.s[i]);
            worst = std::max(worst, (t.cotangent(i).x - exact.x).cwiseAbs().maxCoeff());
        }
        const auto rep = conserved_quantities(t, spec);
        s.add("charged-helix", worst <= 1e-6 && rep.energy_drift <= 1e-8,
              Json{{"omega", q * B / m}, {"max_abs_err", worst}, {"energy_drift", rep.energy_drift}});
    });
    s.guarded("tube-kelvin-conjugacy", [&] {
        const RealFourVector p(1.3, 0.2, -0.4, 0.1);
        const CotangentPoint init{RealFourVector(0.1, 0.0, 0.2, -0.3), p};
        const FutureTubePoint z0 = FutureTubePoint::make(init.x, kelvin_map(p, hbar));
        IntegratorConfig cfg;
        cfg.steps = 2000;
        cfg.s_max = 5.0;
        const Trajectory tube = integrate_future_tube(free_tube_hamiltonian(hbar), z0, hbar, cfg);
        const Trajectory cot = integrate_cotangent(FreeParticle{}, init, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < tube.s.size(); ++i) {
            const CotangentPoint a = tube.tube(i);
            const CotangentPoint b = cot.cotangent(i);
            worst = std::max(worst, (a.x - b.x).cwiseAbs().maxCoeff());
            worst = std::max(worst, (kelvin_map(a.p, hbar) - b.p).cwiseAbs().maxCoeff());
        }
        // With the cotangent sign pattern on the tube the motion would run backwards.
        const RealFourVector dx = tube.tube(tube.s.size() - 1).x - z0.x();
        const bool forward = dx(0) > 0.0;
        s.add("tube-kelvin-conjugacy", worst <= 1e-8 && forward,
              Json{{"max_abs_err", worst}, {"moves_forward_in_time", forward}});
    });
    s.guarded("mass-shell-guard", [&] {
        bool raised = false;
        try {
            IntegratorConfig cfg;
            cfg.steps = 10;
            integrate_cotangent(FreeParticle{}, CotangentPoint{RealFourVector::Zero(), RealFourVector(0, 1, 0, 0)}, cfg);
        } catch (const Error &e) {
            raised = e.code() == ErrorCode::MassShellViolation;
        }
        s.add("mass-shell-guard", raised, Json{{"raised_mass_shell_violation", raised}});
    });
}

// ---------------------------------------------------------------- conformal

ConformalMap random_poincare(Rng &rng) {
    return ConformalMap(Poincare{lorentz_from_params(random3(rng, 0.6), random3(rng, 1.5)), random_vector(rng, 1.0)});
}

ConformalMap random_dilatation(Rng &rng) { return ConformalMap(Dilatation{std::exp(uniform(rng, -0.7, 0.7))}); }

ConformalMap random_special(Rng &rng) { return ConformalMap(SpecialConformal{random_vector(rng, 0.4)}); }

double covariance_error(const ConformalMap &m, const FutureTubePoint &z, Rng &rng, int points) {
    const CoherentImage img = act_on_coherent(m, z);
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const FutureTubePoint u = random_tube_point(rng, 1.5, 0.4, 2.5, 0.8);
        const Complex lhs = apply_unitary(m, [&](const FutureTubePoint &y) { return coherent_wavefunction(z, y); }, u);
        const Complex rhs = std::exp(I * img.theta) * coherent_wavefunction(img.w, u);
        worst = std::max(worst, rel(lhs, rhs));
    }
    return worst;
}

void conformal_suite(Suite &s) {
    s.guarded("lorentz-params", [&] {
        Rng rng = s.rng("lorentz");
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            worst = std::max(worst, lorentz_defect(lorentz_from_params(random3(rng, 1.0), random3(rng, 3.0))));
        }
        const Matrix4 b = lorentz_from_params(Eigen::Vector3d(0.7, 0, 0), Eigen::Vector3d::Zero());
        const bool cosh_ok = std::abs(b(0, 0) - std::cosh(0.7)) <= 1e-15;
        s.add("lorentz-params", worst <= 1e-12 && cosh_ok, Json{{"max_defect", worst}});
    });
    s.guarded("unitarity-identity", [&] {
        Rng rng = s.rng("unitarity");
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const Matrix4 L = lorentz_from_params(random3(rng, 0.8), random3(rng, 3.0));
            const RealFourVector B = random_vector(rng, 2.0);
            const FutureTubePoint x = random_tube_point(rng);
            const FutureTubePoint z = random_tube_point(rng);
            const Complex lhs = kernel4(ComplexFourVector(L.cast<Complex>() * x.z() + B.cast<Complex>()),
                                        ComplexFourVector(L.cast<Complex>() * z.zbar() + B.cast<Complex>()));
            worst = std::max(worst, rel(lhs, kernel4(x, z)));
        }
        s.add("unitarity-identity", worst <= 1e-10, Json{{"samples", 10000}, {"max_rel_err", worst}});
    });
    const std::vector<std::pair<std::string, std::function<ConformalMap(Rng &)>>> factors = {
        {"poincare", random_poincare}, {"dilatation", random_dilatation}, {"special", random_special}};
    for (const auto &[name, make] : factors) {
        s.guarded("covariance-" + name, [&, name = name, make = make] {
            Rng rng = s.rng("covariance-" + name);
            double worst = 0.0;
            double inverse = 0.0;
            for (int k = 0; k < 10; ++k) {
                const ConformalMap m = make(rng);
                const FutureTubePoint z = random_tube_point(rng, 1.0, 0.5, 2.0, 0.6);
                worst = std::max(worst, covariance_error(m, z, rng, 100));
                const FutureTubePoint back = apply_point(m, act_on_coherent(m, z).w);
                inverse = std::max(inverse, (back.z() - z.z()).cwiseAbs().maxCoeff());
            }
            s.add("covariance-" + name, worst <= 1e-9 && inverse <= 1e-10,
                  Json{{"points", 1000}, {"max_rel_err", worst}, {"inverse_action_err", inverse}});
        });
    }
    s.guarded("covariance-word", [&] {
        Rng rng = s.rng("covariance-word");
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) {
            const ConformalMap m = random_special(rng) * random_poincare(rng) * random_dilatation(rng);
            const FutureTubePoint z = random_tube_point(rng, 1.0, 0.5, 2.0, 0.6);
            worst = std::max(worst, covariance_error(m, z, rng, 100));
        }
        s.add("covariance-word", worst <= 1e-9, Json{{"points", 1000}, {"max_rel_err", worst}});
    });
    s.guarded("phase-expressions", [&] {
        Rng rng = s.rng("phase");
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const RealFourVector l = random_vector(rng, 0.5);
            const FutureTubePoint z = random_tube_point(rng);
            const PhaseForms f = special_conformal_phase_forms(l, z);
            worst = std::max(worst, std::abs(wrap_phase(f.from_denominator - f.from_squares)));
            worst = std::max(worst, std::abs(wrap_phase(f.from_denominator - special_conformal_phase(l, z))));
        }
        s.add("phase-expressions", worst <= 1e-10, Json{{"samples", 10000}, {"max_abs_err_mod_2pi", worst}});
    });
    s.guarded("special-composition", [&] {
        Rng rng = s.rng("composition");
        double worst = 0.0;
        double inverse = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const RealFourVector l = random_vector(rng, 0.3);
            const RealFourVector mu = random_vector(rng, 0.3);
            const FutureTubePoint z = random_tube_point(rng);
            const ComplexFourVector two = apply_point(ConformalMap(SpecialConformal{mu}),
                                                      apply_point(ConformalMap(SpecialConformal{l}), z.z()));
            const ComplexFourVector one = apply_point(ConformalMap(SpecialConformal{compose_special(l, mu)}), z.z());
            worst = std::max(worst, (two - one).cwiseAbs().maxCoeff() / std::max(1.0, one.cwiseAbs().maxCoeff()));
            const ComplexFourVector id = apply_point(ConformalMap(SpecialConformal{-l}),
                                                     apply_point(ConformalMap(SpecialConformal{l}), z.z()));
            inverse = std::max(inverse, (id - z.z()).cwiseAbs().maxCoeff());
        }
        s.add("special-composition", worst <= 1e-10 && inverse <= 1e-10,
              Json{{"samples", 10000}, {"max_rel_err", worst}, {"inverse_err", inverse}});
    });
    s.guarded("dilatation-composition", [&] {
        Rng rng = s.rng("dilatation-composition");
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double a = std::exp(uniform(rng, -1.0, 1.0)), b = std::exp(uniform(rng, -1.0, 1.0));
            const FutureTubePoint z = random_tube_point(rng);
            const ComplexFourVector seq = act_on_coherent(ConformalMap(Dilatation{b}),
                                                          act_on_coherent(ConformalMap(Dilatation{a}), z).w).w.z();
            const ComplexFourVector one = act_on_coherent(ConformalMap(Dilatation{a * b}), z).w.z();
            worst = std::max(worst, (seq - one).cwiseAbs().maxCoeff());
        }
        s.add("dilatation-composition", worst <= 1e-10, Json{{"max_abs_err", worst}});
    });
    s.guarded("tube-preservation", [&] {
        Rng rng = s.rng("tube-preservation");
        double min_den = std::numeric_limits<double>::infinity();
        bool inside = true;
        for (int i = 0; i < 100000; ++i) {
            const RealFourVector l = random_vector(rng, 2.0);
            const FutureTubePoint z = random_tube_point(rng, 2.0, 0.05, 5.0, 2.0);
            const ComplexFourVector zz = z.z();
            const Complex den = 1.0 + 2.0 * minkowski_inner(l.cast<Complex>(), zz) +
                                minkowski_square(l) * minkowski_square(zz);
            const double scale = 1.0 + 2.0 * std::abs(minkowski_inner(l.cast<Complex>(), zz)) +
                                 std::abs(minkowski_square(l) * minkowski_square(zz));
            min_den = std::min(min_den, std::abs(den) / scale);
            inside = inside && is_in_future_tube(apply_point(ConformalMap(SpecialConformal{l}), zz), 0.0).has_value();
        }
        s.add("tube-preservation", inside && min_den > 1e-10,
              Json{{"samples", 100000}, {"all_images_in_tube", inside}, {"min_relative_denominator", min_den}});
    });
    s.guarded("cross-ratio-invariance", [&] {
        Rng rng = s.rng("cross-ratio");
        double worst_p = 0.0, worst_d = 0.0, worst_s = 0.0, formula = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint w = random_tube_point(rng, 1.0, 0.5, 2.0, 0.6);
            const FutureTubePoint z = random_tube_point(rng, 1.0, 0.5, 2.0, 0.6);
            worst_p = std::max(worst_p, cross_ratio_invariance_check(random_poincare(rng), w, z).abs_err);
            worst_d = std::max(worst_d, cross_ratio_invariance_check(random_dilatation(rng), w, z).abs_err);
            worst_s = std::max(worst_s, cross_ratio_invariance_check(random_special(rng), w, z).abs_err);
            formula = std::max(formula, std::abs(std::norm(overlap(w, z)) - cross_ratio_probability(w, z)));
        }
        s.add("cross-ratio-invariance", worst_p <= 1e-10 && worst_d <= 1e-10 && worst_s <= 1e-9 && formula <= 1e-12,
              Json{{"poincare", worst_p}, {"dilatation", worst_d}, {"special", worst_s},
                   {"overlap_vs_cross_ratio", formula}});
    });
}

// ---------------------------------------------------------------- fourier

void fourier_suite(Suite &s) {
    s.guarded("cone-integral", [&] {
        Rng rng = s.rng("cone-integral");
        McSweep sweep;
        bool closed = std::abs(cone_exponential_integral(RealFourVector(1, 0, 0, 0)) - 8.0 * kPi) < 1e-14 &&
                      std::abs(cone_exponential_integral(RealFourVector(2, 0, 0, 0)) - kPi / 2.0) < 1e-15;
        for (int i = 0; i < 3; ++i) {
            const RealFourVector xi = random_tube_point(rng, 0.0, 0.5, 2.0, 1.0).r();
            ConeSampler cs{0.9 * xi, substream_seed(s.cfg().seed, "cone-" + std::to_string(i)), s.cfg().samples};
            sweep.add(cone_integral_mc(xi, cs), cone_exponential_integral(xi));
        }
        Json j = sweep.json();
        j["closed_form_examples"] = closed;
        s.add("cone-integral", closed && sweep.max_rel <= 0.02, j);
    });
    s.guarded("cone-sampler-moments", [&] {
        const RealFourVector xi(1.5, 0.3, -0.2, 0.4);
        ConeSampler cs{xi, s.cfg().seed, 200000};
        const auto samples = sample_forward_cone(cs);
        bool in_cone = true;
        RealFourVector mean = RealFourVector::Zero();
        for (const auto &p : samples) {
            in_cone = in_cone && is_timelike_future(p.p, 0.0);
            mean += p.p;
        }
        mean /= static_cast<double>(samples.size());
        const RealFourVector target = cone_mean(xi);
        const double err = (mean - target).cwiseAbs().maxCoeff() / target(0);
        s.add("cone-sampler-moments", in_cone && err <= 0.01,
              Json{{"samples", samples.size()}, {"mean_p0", mean(0)}, {"target_p0", target(0)}, {"max_rel_err", err}});
    });
    s.guarded("plane-wave-identity", [&] {
        Rng rng = s.rng("plane-wave");
        McSweep sweep;
        for (std::size_t i = 0; i < s.cfg().pairs; ++i) {
            const auto [z, w] = nearby_pair(rng);
            sweep.add(inverse_ft_mc(plane_wave(w), z, s.mc("plane-wave-" + std::to_string(i))), kernel4(z, w));
        }
        s.add("plane-wave-identity", sweep.max_rel <= s.cfg().tol, sweep.json());
    });
    s.guarded("coherent-round-trip", [&] {
        Rng rng = s.rng("round-trip");
        McSweep sweep;
        for (std::size_t i = 0; i < s.cfg().pairs; ++i) {
            const FutureTubePoint w = random_tube_point(rng, 0.5, 0.5, 2.0, 0.5);
            const FutureTubePoint z = random_tube_point(rng, 0.5, 0.5, 2.0, 0.5);
            sweep.add(inverse_ft_mc(coherent_momentum(w), z, s.mc("round-trip-" + std::to_string(i))),
                      coherent_wavefunction(w, z));
        }
        const FutureTubePoint e0 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
        const double ex = coherent_ft(e0, RealFourVector(1, 0, 0, 0)).real();
        const bool ex_ok = std::abs(ex - 2.0 * kPi * kPi / std::sqrt(3.0) * std::exp(-1.0)) <= 1e-14;
        Json j = sweep.json();
        j["example_value"] = ex;
        s.add("coherent-round-trip", ex_ok && sweep.max_rel <= s.cfg().tol, j);
    });
    s.guarded("inverse-linearity", [&] {
        Rng rng = s.rng("linearity");
        const auto [z, w] = nearby_pair(rng);
        const Complex c(0.3, -1.7);
        MomentumFunction f = coherent_momentum(w);
        MomentumFunction g{[f, c](const RealFourVector &p) { return c * f.f(p); }, f.damping};
        McConfig mc = s.mc("linearity");
        mc.samples = std::min<std::size_t>(mc.samples, 100000);
        const Complex a = inverse_ft_mc(g, z, mc).value;
        const Complex b = c * inverse_ft_mc(f, z, mc).value;
        s.add("inverse-linearity", rel(a, b) <= 1e-12, Json{{"rel_err", rel(a, b)}});
    });
    s.guarded("damping-monotonic", [&] {
        Rng rng = s.rng("damping");
        bool mono = true;
        for (int i = 0; i < 100; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const RealFourVector dir = random_tube_point(rng).r();
            double prev = std::numeric_limits<double>::infinity();
            for (int k = 1; k <= 50; ++k) {
                const double v = std::abs(coherent_ft(z, 0.2 * k * dir));
                mono = mono && v < prev;
                prev = v;
            }
        }
        s.add("damping-monotonic", mono, Json{{"rays", 100}, {"monotone", mono}});
    });
    s.guarded("parseval", [&] {
        Rng rng = s.rng("parseval");
        double worst_sigma = 0.0;
        double worst_rel = 0.0;
        bool pass = true;
        Json cases = Json::array();
        for (std::size_t i = 0; i < s.cfg().pairs; ++i) {
            const PureState a = random_state(rng, 1 + i % 3, 0.3);
            const PureState b = i == 0 ? a : random_state(rng, 1 + (i + 1) % 3, 0.3);
            const IdentityReport r = parseval_check(a, b, s.mc("parseval-" + std::to_string(i)));
            const double sig = r.abs_err / std::max(r.std_err, 1e-300);
            worst_sigma = std::max(worst_sigma, r.std_err > 0 ? sig : 0.0);
            worst_rel = std::max(worst_rel, r.rel_err);
            pass = pass && r.abs_err <= 3.0 * r.std_err + 1e-10 * std::max(1.0, std::abs(r.target));
        }
        // Orthogonalized pair.
        const FutureTubePoint p = random_tube_point(rng, 0.3, 0.7, 1.4, 0.5);
        const FutureTubePoint q = random_tube_point(rng, 0.3, 0.7, 1.4, 0.5);
        Eigen::VectorXcd c(2);
        c << -overlap(p, q), 1.0;
        const PureState theta = PureState::make({p, q}, c);
        const IdentityReport orth = parseval_check(theta, PureState::coherent(p), s.mc("parseval-orthogonal"));
        const bool orth_ok = std::abs(orth.target) <= 1e-12 && orth.abs_err <= 3.0 * orth.std_err + 1e-10;
        s.add("parseval", pass && orth_ok,
              Json{{"pairs", s.cfg().pairs}, {"max_sigma", worst_sigma}, {"max_rel_err", worst_rel},
                   {"orthogonal", io::to_json(orth)}});
    });
}

// ---------------------------------------------------------------- measurement

void measurement_suite(Suite &s) {
    const FutureTubePoint z0 = FutureTubePoint::make(RealFourVector(0.1, -0.2, 0.0, 0.3), RealFourVector(1.0, 0.2, 0.0, -0.1));
    const DensityState coh = DensityState::pure(PureState::coherent(z0));
    s.guarded("probability-of-tube", [&] {
        Rng rng = s.rng("tube-probability");
        const DensityState sup = DensityState::pure(random_state(rng, 3));
        const DensityState mix = DensityState::make({{0.3, PureState::coherent(z0)}, {0.7, random_state(rng, 2)}});
        McSweep sweep;
        sweep.add(povm_probability(coh, Region::whole_tube(), s.mc("tube-coherent")), 1.0);
        sweep.add(povm_probability(sup, Region::whole_tube(), s.mc("tube-superposition")), 1.0);
        sweep.add(povm_probability(mix, Region::whole_tube(), s.mc("tube-mixture")), 1.0);
        const Estimate one = expectation(coh, [](const FutureTubePoint &) { return 1.0; }, s.mc("expectation-one"));
        sweep.add(one, 1.0);
        s.add("probability-of-tube", sweep.max_rel <= 0.02, sweep.json());
    });
    s.guarded("povm-additivity", [&] {
        const Region a({Box::around(z0.x(), z0.r(), 1.0, 0.5)});
        const Estimate pa = povm_probability(coh, a, s.mc("additivity-a"));
        const Estimate pc = povm_probability(coh, Region::complement(a), s.mc("additivity-c"));
        const double sum = (pa.value + pc.value).real();
        const double sigma = std::hypot(pa.std_err, pc.std_err);
        s.add("povm-additivity", std::abs(sum - 1.0) <= 3.0 * sigma && pa.value.real() > 0.0,
              Json{{"p_region", pa.value.real()}, {"p_complement", pc.value.real()}, {"sum", sum},
                   {"combined_std_err", sigma}});
    });
    s.guarded("point-collapse", [&] {
        Rng rng = s.rng("point");
        const DensityState in = DensityState::pure(random_state(rng, 3));
        const FutureTubePoint z = random_tube_point(rng, 0.5, 0.7, 1.4, 0.5);
        const MeasurementOutcome out = post_measurement_state(in, Region::point(z), 256, s.mc("point"));
        const auto &b = out.state.branches();
        const bool exact = b.size() == 1 && b[0].weight == 1.0 && b[0].state.foci().size() == 1 &&
                           b[0].state.foci()[0].x() == z.x() && b[0].state.foci()[0].r() == z.r() &&
                           b[0].state.coeffs()(0) == Complex(1.0);
        s.add("point-collapse", exact, Json{{"exact_coherent", exact}, {"density_at_point", out.probability.value.real()}});
    });
    s.guarded("orthogonal-vanishing", [&] {
        Rng rng = s.rng("orthogonal");
        double worst = 0.0;
        double p_worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const FutureTubePoint w = random_tube_point(rng);
            Eigen::VectorXcd c(2);
            c << -overlap(z, w), 1.0;
            const PureState theta = PureState::make({z, w}, c);
            worst = std::max(worst, std::abs(theta(z)) / std::sqrt(kernel_diagonal(z)));
            p_worst = std::max(p_worst, projective_yes_probability(theta, z).p_yes);
        }
        s.add("orthogonal-vanishing", worst <= 1e-10 && p_worst <= 1e-20,
              Json{{"max_rel_amplitude", worst}, {"max_p_yes", p_worst}});
    });
    s.guarded("projective-measurement", [&] {
        Rng rng = s.rng("projective");
        double self = 0.0, cross = 0.0, sym = 0.0, remainder = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const FutureTubePoint w = random_tube_point(rng);
            self = std::max(self, std::abs(projective_yes_probability(PureState::coherent(z), z).p_yes - 1.0));
            const ProjectiveOutcome o = projective_yes_probability(PureState::coherent(w), z);
            cross = std::max(cross, std::abs(o.p_yes - cross_ratio_probability(w, z)) /
                                        std::max(cross_ratio_probability(w, z), 1e-300));
            sym = std::max(sym, std::abs(cross_ratio_probability(w, z) - cross_ratio_probability(z, w)));
            if (o.no) {
                remainder = std::max(remainder, std::abs(o.no->inner(PureState::coherent(z))));
            }
        }
        s.add("projective-measurement", self <= 1e-12 && cross <= 1e-10 && sym <= 1e-14 && remainder <= 1e-10,
              Json{{"self_err", self}, {"cross_ratio_rel_err", cross}, {"symmetry_err", sym},
                   {"no_branch_overlap", remainder}});
    });
    s.guarded("amplitude-bound", [&] {
        Rng rng = s.rng("amplitude");
        double worst = 0.0;
        double sat = 0.0;
        for (int k = 0; k < 20; ++k) {
            const PureState st = random_state(rng, 5, 1.0);
            for (int i = 0; i < 200; ++i) {
                const FutureTubePoint z = random_tube_point(rng);
                worst = std::max(worst, std::norm(st(z)) / kernel_diagonal(z));
            }
            const FutureTubePoint f = st.foci()[0];
            sat = std::max(sat, std::abs(std::norm(coherent_wavefunction(f, f)) / kernel_diagonal(f) - 1.0));
        }
        s.add("amplitude-bound", worst <= 1.0 + 1e-9 && sat <= 1e-12,
              Json{{"max_ratio", worst}, {"saturation_err", sat}});
    });
    s.guarded("post-measurement-concentration", [&] {
        const Box box = Box::around(z0.x(), z0.r(), 0.3, 0.2);
        const MeasurementOutcome out = post_measurement_state(coh, Region({box}), 256, s.mc("concentration"));
        RealFourVector mx = RealFourVector::Zero(), mr = RealFourVector::Zero();
        bool inside = true;
        for (const auto &b : out.state.branches()) {
            const auto &f = b.state.foci()[0];
            mx += f.x() / 256.0;
            mr += f.r() / 256.0;
            inside = inside && box.contains(f.x(), f.r());
        }
        s.add("post-measurement-concentration", inside && box.contains(mx, mr),
              Json{{"n_foci", out.state.branches().size()}, {"probability", out.probability.value.real()},
                   {"std_err", out.probability.std_err}, {"all_foci_in_box", inside}});
    });
    s.guarded("decoherence", [&] {
        const DensityState out = decohere_unrecorded(coh, 256, s.mc("decoherence"));
        const double purity = out.purity();
        const double peak = out.diagonal(z0) / kernel_diagonal(z0);
        s.add("decoherence", purity < 1.0 && peak < 1.0 && coh.purity() > 1.0 - 1e-12,
              Json{{"n_foci", out.branches().size()}, {"purity_before", coh.purity()},
                   {"purity_after", purity}, {"peak_ratio_after", peak}});
    });
    s.guarded("completeness", [&] {
        Rng rng = s.rng("completeness");
        McSweep sweep;
        const std::size_t n = std::max<std::size_t>(3, s.cfg().pairs / 4);
        for (std::size_t i = 0; i < n; ++i) {
            const auto [x, y] = i == 0 ? std::make_pair(z0, z0) : nearby_pair(rng);
            const IdentityReport r = completeness_check(x, y, s.mc("completeness-" + std::to_string(i)));
            Estimate e;
            e.value = r.estimate;
            e.std_err = r.std_err;
            e.samples = r.samples;
            e.seed = r.seed;
            sweep.add(e, r.target);
        }
        s.add("completeness", sweep.max_rel <= s.cfg().tol, sweep.json());
    });
}

// ---------------------------------------------------------------- localization

void localization_suite(Suite &s) {
    const double hbar = s.cfg().hbar;
    s.guarded("bound-identity", [&] {
        Rng rng = s.rng("bound");
        double worst = 0.0, compton = 0.0;
        const double c = 3.0 / (4.0 * std::pow(kPi, 4));
        for (int i = 0; i < 10000; ++i) {
            const FutureTubePoint z = random_tube_point(rng, 2.0, 0.2, 5.0, 1.5);
            worst = std::max(worst, rel(density_bound(z, hbar), kernel_diagonal(z)));
            compton = std::max(compton, rel(density_bound(z, hbar) * std::pow(compton_wavelength(z, hbar), 8), c));
        }
        const FutureTubePoint e0 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0));
        const FutureTubePoint e2 = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(2, 0, 0, 0));
        const bool masses = std::abs(mass_of_point(e0, 1.0) - 1.0) < 1e-15 && std::abs(mass_of_point(e2, 1.0) - 0.5) < 1e-15;
        s.add("bound-identity", worst <= 1e-12 && compton <= 1e-12 && masses,
              Json{{"max_rel_err", worst}, {"compton_rel_err", compton}, {"mass_examples", masses}});
    });
    s.guarded("mass-scaling", [&] {
        Rng rng = s.rng("scaling");
        bool exact = true;
        double boost = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const FutureTubePoint h = FutureTubePoint::make(z.x(), 0.5 * z.r());
            exact = exact && mass_of_point(h, hbar) == 2.0 * mass_of_point(z, hbar) &&
                    density_bound(h, hbar) == 256.0 * density_bound(z, hbar);
            const Matrix4 L = lorentz_from_params(random3(rng, 1.0), random3(rng, 3.0));
            const FutureTubePoint b = FutureTubePoint::make(L * z.x(), L * z.r());
            boost = std::max(boost, rel(mass_of_point(b, hbar), mass_of_point(z, hbar)));
        }
        s.add("mass-scaling", exact && boost <= 1e-12, Json{{"exact_256", exact}, {"boost_rel_err", boost}});
    });
    s.guarded("saturation", [&] {
        Rng rng = s.rng("saturation");
        double at_focus = 0.0;
        double elsewhere = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const FutureTubePoint z = random_tube_point(rng);
            const DensityState st = DensityState::pure(PureState::coherent(z));
            at_focus = std::max(at_focus, std::abs(scan_bound(st, {z}, hbar)[0].ratio - 1.0));
            const FutureTubePoint u = random_tube_point(rng);
            elsewhere = std::max(elsewhere, scan_bound(st, {u}, hbar)[0].ratio);
        }
        s.add("saturation", at_focus <= 1e-12 && elsewhere < 1.0,
              Json{{"focus_ratio_err", at_focus}, {"max_ratio_elsewhere", elsewhere}});
    });
    s.guarded("scan-bound", [&] {
        Rng rng = s.rng("scan");
        const DensityState st = DensityState::pure(random_state(rng, 5, 1.0));
        McConfig mc = s.mc("scan");
        const auto pts = scan_points(st, 10000, mc);
        const auto reports = scan_bound(st, pts, hbar);
        const double m = max_ratio(reports);
        s.add("scan-bound", m <= 1.0 + 1e-9, Json{{"points", pts.size()}, {"max_ratio", m}});
    });
}

} // namespace

FutureTubePoint random_tube_point(Rng &rng, double x_range, double a_lo, double a_hi, double max_rapidity) {
    const RealFourVector x = x_range > 0.0 ? random_vector(rng, x_range) : RealFourVector::Zero();
    const double a = uniform(rng, a_lo, a_hi);
    std::normal_distribution<double> normal;
    Eigen::Vector3d n(normal(rng), normal(rng), normal(rng));
    n.normalize();
    const double eta = uniform(rng, 0.0, max_rapidity);
    RealFourVector r;
    r << a * std::cosh(eta), a * std::sinh(eta) * n;
    return FutureTubePoint::make(x, r);
}

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names = {"geometry", "kernel",      "dynamics",    "conformal",
                                                   "fourier",  "measurement", "localization"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string &suite, const VerifyConfig &cfg) {
    if (suite == "all") {
        std::vector<CheckResult> all;
        for (const auto &name : suite_names()) {
            auto r = run_suite(name, cfg);
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    }
    static const std::vector<std::pair<std::string, void (*)(Suite &)>> table = {
        {"geometry", geometry_suite},   {"kernel", kernel_suite},           {"dynamics", dynamics_suite},
        {"conformal", conformal_suite}, {"fourier", fourier_suite},         {"measurement", measurement_suite},
        {"localization", localization_suite}};
    for (const auto &[name, fn] : table) {
        if (name == suite) {
            Suite s(name, cfg);
            fn(s);
            return s.take();
        }
    }
    fail(ErrorCode::InvalidArgument, "unknown suite '" + suite + "'");
}

bool all_pass(const std::vector<CheckResult> &results) {
    return std::all_of(results.begin(), results.end(), [](const CheckResult &r) { return r.pass; });
}

io::Json to_json(const std::vector<CheckResult> &results) {
    Json out = Json::array();
    for (const auto &r : results) {
        Json j{{"suite", r.suite}, {"identity", r.name}, {"pass", r.pass}};
        for (auto it = r.details.begin(); it != r.details.end(); ++it) {
            j[it.key()] = it.value();
        }
        out.push_back(j);
    }
    return out;
}

} // namespace ftq
