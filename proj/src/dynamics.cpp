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

#include "ftq/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "ftq/error.hpp"

namespace ftq {

namespace {

using Vec = Eigen::VectorXd;
using Rhs = std::function<Vec(const Vec &)>;

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

double checked_sqrt(double radicand) {
    if (!(radicand >= kRadicandEps)) {
        std::ostringstream os;
        os << "Hamiltonian radicand " << radicand << " left the domain";
        fail(ErrorCode::StepFailure, os.str());
    }
    return std::sqrt(radicand);
}

Matrix4 field_jacobian(const ChargedParticle &c, const RealFourVector &x) {
    if (c.dA) {
        return c.dA(x);
    }
    Matrix4 j;
    const double h = 1e-6 * std::max(1.0, x.cwiseAbs().maxCoeff());
    for (int b = 0; b < 4; ++b) {
        RealFourVector xp = x, xm = x;
        xp(b) += h;
        xm(b) -= h;
        j.col(b) = (c.A(xp) - c.A(xm)) / (2.0 * h);
    }
    return j;
}

double potential_derivative(const TwoBody &t, double u) {
    if (t.dphi) {
        return t.dphi(u);
    }
    const double h = 1e-6 * std::max(1.0, std::abs(u));
    return (t.phi(u + h) - t.phi(u - h)) / (2.0 * h);
}

RealFourVector seg(const Vec &y, int i) { return y.segment<4>(4 * i); }

Vec single_rhs(const HamiltonianSpec &spec, const Vec &y) {
    const RealFourVector x = seg(y, 0);
    const RealFourVector p = seg(y, 1);
    Vec dy(8);
    std::visit(Overloaded{
                   [&](const FreeParticle &) {
                       const double h = checked_sqrt(minkowski_square(p));
                       dy << p / h, RealFourVector::Zero();
                   },
                   [&](const ChargedParticle &c) {
                       const RealFourVector pi = p - c.q * c.A(x);
                       const double h = checked_sqrt(minkowski_square(pi));
                       const Matrix4 dA = field_jacobian(c, x);
                       // dH/dx^b = -q pi_c dA^c/dx^b / H
                       const RealFourVector grad = -c.q * dA.transpose() * lower_index(pi) / h;
                       dy << pi / h, -lower_index(grad);
                   },
                   [&](const TwoBody &) {
                       fail(ErrorCode::InvalidArgument, "two-body spec needs a TwoBodyPoint");
                   },
               },
               spec);
    return dy;
}

Vec two_body_rhs(const TwoBody &t, const Vec &y) {
    const RealFourVector x = seg(y, 0), yy = seg(y, 1), X = seg(y, 2), Y = seg(y, 3);
    const RealFourVector q = 0.5 * (x - yy);
    const RealFourVector P = X + Y;
    const double pp = minkowski_square(P);
    if (!(pp > kRadicandEps)) {
        fail(ErrorCode::StepFailure, "total momentum is not time-like");
    }
    const double qp = minkowski_inner(q, P);
    const RealFourVector xi = q - qp / pp * P;
    const double u = -minkowski_square(xi);
    const double h = checked_sqrt(minkowski_square(X) + minkowski_square(Y) - 2.0 * t.phi(u));
    const double dphi = potential_derivative(t, u);
    if (!std::isfinite(dphi)) {
        fail(ErrorCode::StepFailure, "potential derivative is not finite");
    }
    const RealFourVector shift = 2.0 * dphi * qp / pp * xi;
    Vec dy(16);
    dy << (X - shift) / h, (Y - shift) / h, -dphi * xi / h, dphi * xi / h;
    return dy;
}

Vec rk4_step(const Rhs &f, const Vec &y, double h) {
    const Vec k1 = f(y);
    const Vec k2 = f(y + 0.5 * h * k1);
    const Vec k3 = f(y + 0.5 * h * k2);
    const Vec k4 = f(y + h * k3);
    return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec midpoint_step(const Rhs &f, const Vec &y, double h) {
    Vec next = y + h * f(y);
    for (int it = 0; it < 100; ++it) {
        const Vec candidate = y + h * f(0.5 * (y + next));
        const double diff = (candidate - next).cwiseAbs().maxCoeff();
        next = candidate;
        if (diff <= 1e-15 * (1.0 + next.cwiseAbs().maxCoeff())) {
            return next;
        }
    }
    fail(ErrorCode::StepFailure, "implicit midpoint iteration did not converge");
}

Trajectory run(const Rhs &f, const std::function<double(const Vec &)> &energy,
               const std::function<void(const Vec &)> &check, const Vec &y0,
               const IntegratorConfig &cfg) {
    if (cfg.steps < 1 || !(cfg.s_max > 0.0)) {
        fail(ErrorCode::InvalidArgument, "integrator needs steps >= 1 and s_max > 0");
    }
    const double h = cfg.s_max / static_cast<double>(cfg.steps);
    Trajectory t;
    t.s.reserve(cfg.steps + 1);
    t.states.reserve(cfg.steps + 1);
    t.energy.reserve(cfg.steps + 1);
    Vec y = y0;
    t.s.push_back(0.0);
    t.states.push_back(y);
    t.energy.push_back(energy(y));
    for (std::size_t i = 1; i <= cfg.steps; ++i) {
        y = cfg.method == Integrator::RK4 ? rk4_step(f, y, h) : midpoint_step(f, y, h);
        if (!y.allFinite()) {
            fail(ErrorCode::StepFailure, "state became non-finite");
        }
        check(y);
        t.s.push_back(h * static_cast<double>(i));
        t.states.push_back(y);
        t.energy.push_back(energy(y));
    }
    return t;
}

void require_shell(double h2) {
    if (!std::isfinite(h2) || !(h2 > 0.0)) {
        std::ostringstream os;
        os << "H^2 = " << h2 << " at the initial point; H must be a positive real";
        fail(ErrorCode::MassShellViolation, os.str());
    }
}

double single_h2(const HamiltonianSpec &spec, const CotangentPoint &pt) {
    return std::visit(Overloaded{
                          [&](const FreeParticle &) { return minkowski_square(pt.p); },
                          [&](const ChargedParticle &c) {
                              return minkowski_square(RealFourVector(pt.p - c.q * c.A(pt.x)));
                          },
                          [&](const TwoBody &) -> double {
                              fail(ErrorCode::InvalidArgument, "two-body spec needs a TwoBodyPoint");
                          },
                      },
                      spec);
}

double two_body_h2(const TwoBody &t, const TwoBodyPoint &pt) {
    const RealFourVector xi = internal_coordinate(pt.x, pt.y, pt.X, pt.Y);
    return minkowski_square(pt.X) + minkowski_square(pt.Y) - 2.0 * t.phi(-minkowski_square(xi));
}

TwoBodyPoint unpack_two_body(const Vec &y) { return {seg(y, 0), seg(y, 1), seg(y, 2), seg(y, 3)}; }

} // namespace

CotangentPoint Trajectory::cotangent(std::size_t i) const {
    return {seg(states.at(i), 0), seg(states.at(i), 1)};
}

TwoBodyPoint Trajectory::two_body(std::size_t i) const { return unpack_two_body(states.at(i)); }

CotangentPoint Trajectory::tube(std::size_t i) const { return cotangent(i); }

ChargedParticle uniform_field(double q, const Matrix4 &F) {
    const Matrix4 j = -0.5 * F * minkowski_metric();
    ChargedParticle c;
    c.q = q;
    c.A = [j](const RealFourVector &x) -> RealFourVector { return j * x; };
    c.dA = [j](const RealFourVector &) { return j; };
    return c;
}

TwoBody oscillator(double k) {
    return {[k](double u) { return k * u; }, [k](double) { return k; }};
}

double hamiltonian(const HamiltonianSpec &spec, const CotangentPoint &pt) {
    return checked_sqrt(single_h2(spec, pt));
}

double hamiltonian(const TwoBody &spec, const TwoBodyPoint &pt) {
    return checked_sqrt(two_body_h2(spec, pt));
}

Trajectory integrate_cotangent(const HamiltonianSpec &spec, const CotangentPoint &init,
                               const IntegratorConfig &cfg) {
    require_shell(single_h2(spec, init));
    Vec y0(8);
    y0 << init.x, init.p;
    return run([&](const Vec &y) { return single_rhs(spec, y); },
               [&](const Vec &y) { return hamiltonian(spec, CotangentPoint{seg(y, 0), seg(y, 1)}); },
               [](const Vec &) {}, y0, cfg);
}

Trajectory integrate_cotangent(const TwoBody &spec, const TwoBodyPoint &init,
                               const IntegratorConfig &cfg) {
    if (!spec.phi) {
        fail(ErrorCode::InvalidArgument, "two-body spec needs a potential");
    }
    require_shell(two_body_h2(spec, init));
    Vec y0(16);
    y0 << init.x, init.y, init.X, init.Y;
    return run([&](const Vec &y) { return two_body_rhs(spec, y); },
               [&](const Vec &y) { return hamiltonian(spec, unpack_two_body(y)); },
               [](const Vec &) {}, y0, cfg);
}

TubeHamiltonian free_tube_hamiltonian(double hbar) {
    TubeHamiltonian h;
    h.H = [hbar](const RealFourVector &, const RealFourVector &r) {
        return hbar / checked_sqrt(minkowski_square(r));
    };
    h.grad = [hbar](const RealFourVector &, const RealFourVector &r) {
        const double rr = minkowski_square(r);
        return std::make_pair(RealFourVector(RealFourVector::Zero()),
                              RealFourVector(-hbar * lower_index(r) / std::pow(rr, 1.5)));
    };
    return h;
}

Trajectory integrate_future_tube(const TubeHamiltonian &h, const FutureTubePoint &z0, double hbar,
                                 const IntegratorConfig &cfg) {
    if (!(hbar > 0.0)) {
        fail(ErrorCode::InvalidArgument, "hbar must be positive");
    }
    auto gradient = [&](const RealFourVector &x, const RealFourVector &r) {
        if (h.grad) {
            return h.grad(x, r);
        }
        const double step = 1e-6 * std::sqrt(std::max(minkowski_square(r), kBoundaryEps));
        RealFourVector gx, gr;
        for (int b = 0; b < 4; ++b) {
            RealFourVector p = x, m = x;
            p(b) += step;
            m(b) -= step;
            gx(b) = (h.H(p, r) - h.H(m, r)) / (2.0 * step);
            p = r, m = r;
            p(b) += step;
            m(b) -= step;
            gr(b) = (h.H(x, p) - h.H(x, m)) / (2.0 * step);
        }
        return std::make_pair(gx, gr);
    };
    auto rhs = [&](const Vec &y) {
        const RealFourVector x = seg(y, 0), r = seg(y, 1);
        if (!is_timelike_future(r)) {
            fail(ErrorCode::LeftFutureTube, "trajectory left the future tube");
        }
        const Matrix4 k = phase_space_metric(r).k;
        const auto [gx, gr] = gradient(x, r);
        Vec dy(8);
        dy << -k * gr / hbar, k * gx / hbar;
        return dy;
    };
    auto check = [](const Vec &y) {
        if (!is_timelike_future(seg(y, 1))) {
            fail(ErrorCode::LeftFutureTube, "trajectory left the future tube");
        }
    };
    Vec y0(8);
    y0 << z0.x(), z0.r();
    return run(rhs, [&](const Vec &y) { return h.H(seg(y, 0), seg(y, 1)); }, check, y0, cfg);
}

RealFourVector internal_coordinate(const RealFourVector &x, const RealFourVector &y,
                                   const RealFourVector &X, const RealFourVector &Y) {
    const RealFourVector q = 0.5 * (x - y);
    const RealFourVector P = X + Y;
    const double pp = minkowski_square(P);
    if (!(pp > 0.0)) {
        fail(ErrorCode::DegenerateVector, "total momentum must be time-like");
    }
    return q - minkowski_inner(q, P) / pp * P;
}

double oscillator_frequency(double k, double m1, double m2) {
    if (!(k > 0.0) || !(m1 > 0.0) || !(m2 > 0.0)) {
        fail(ErrorCode::InvalidArgument, "oscillator needs k, m1, m2 > 0");
    }
    return std::sqrt(k / (m1 * m1 + m2 * m2));
}

RealFourVector two_body_oscillator_closed_form(const RealFourVector &alpha,
                                               const RealFourVector &beta, double k, double m1,
                                               double m2, double s) {
    const double w = oscillator_frequency(k, m1, m2);
    return alpha * std::cos(w * s) + beta * std::sin(w * s);
}

TwoBodyPoint two_body_initial(const RealFourVector &alpha, const RealFourVector &beta, double k,
                              double m1, double m2) {
    if (alpha(0) != 0.0 || beta(0) != 0.0) {
        fail(ErrorCode::InvalidArgument, "alpha and beta must be spatial in the rest frame of P");
    }
    const double w = oscillator_frequency(k, m1, m2);
    const double h2 = m1 * m1 + m2 * m2;
    const double h = std::sqrt(h2);
    const double v = k * alpha.tail<3>().squaredNorm();
    const Eigen::Vector3d qs = 2.0 * h * w * beta.tail<3>();
    const double d = m1 * m1 - m2 * m2;
    const double S = 2.0 * h2 + 4.0 * v + qs.squaredNorm();
    const double M2 = 0.5 * (S + std::sqrt(S * S - 4.0 * d * d));
    const double M = std::sqrt(M2);
    RealFourVector P(M, 0.0, 0.0, 0.0);
    RealFourVector Q;
    Q << d / M, qs;
    return {alpha, -alpha, 0.5 * (P + Q), 0.5 * (P - Q)};
}

CotangentPoint free_particle_closed_form(const CotangentPoint &init, double s) {
    const double m = checked_sqrt(minkowski_square(init.p));
    return {init.x + init.p * s / m, init.p};
}

CotangentPoint charged_helix_closed_form(const CotangentPoint &init, double q, double B, double s) {
    const double m = checked_sqrt(minkowski_square(init.p));
    const RealFourVector u0 = init.p / m;
    const double omega = q * B / m;
    CotangentPoint out = init;
    out.x(0) += u0(0) * s;
    out.x(3) += u0(3) * s;
    const Complex w0(u0(1), u0(2));
    const Complex rot = std::exp(Complex(0.0, omega * s));
    const Complex dx = omega != 0.0 ? w0 / Complex(0.0, omega) * (rot - 1.0) : w0 * s;
    out.x(1) += dx.real();
    out.x(2) += dx.imag();
    const Complex w = w0 * rot;
    out.p(1) = m * w.real();
    out.p(2) = m * w.imag();
    return out;
}

ConservationReport conserved_quantities(const Trajectory &traj, const HamiltonianSpec &spec,
                                        double tolerance) {
    if (traj.states.empty()) {
        fail(ErrorCode::InvalidArgument, "empty trajectory");
    }
    ConservationReport r;
    const auto *two = std::get_if<TwoBody>(&spec);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        if (two) {
            const TwoBodyPoint pt = traj.two_body(i);
            r.energy.push_back(hamiltonian(*two, pt));
            r.pq.push_back(minkowski_inner(RealFourVector(pt.X + pt.Y), RealFourVector(pt.X - pt.Y)));
        } else {
            r.energy.push_back(hamiltonian(spec, traj.cotangent(i)));
        }
    }
    for (std::size_t i = 0; i < r.energy.size(); ++i) {
        r.energy_drift = std::max(r.energy_drift, std::abs(r.energy[i] - r.energy[0]));
        if (!r.pq.empty()) {
            r.pq_drift = std::max(r.pq_drift, std::abs(r.pq[i] - r.pq[0]));
        }
    }
    const double h0 = std::abs(r.energy[0]);
    r.within_tolerance = r.energy_drift <= tolerance * std::max(1.0, h0) &&
                         r.pq_drift <= tolerance * std::max(1.0, r.pq.empty() ? 1.0 : std::abs(r.pq[0]));
    return r;
}

} // namespace ftq
