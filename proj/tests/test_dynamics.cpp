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

#include "ftq/dynamics.hpp"
#include "ftq/error.hpp"

using namespace ftq;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Matrix4 field_12(double B) {
    Matrix4 F = Matrix4::Zero();
    F(1, 2) = B;
    F(2, 1) = -B;
    return F;
}

double oscillator_error(std::size_t steps, Integrator method) {
    const RealFourVector alpha(0, 0.3, 0, 0), beta(0, 0, 0.3, 0);
    const TwoBodyPoint init = two_body_initial(alpha, beta, 1.0, 1.0, 1.0);
    IntegratorConfig cfg;
    cfg.method = method;
    cfg.steps = steps;
    cfg.s_max = 2.0 * M_PI / oscillator_frequency(1.0, 1.0, 1.0);
    const Trajectory t = integrate_cotangent(oscillator(1.0), init, cfg);
    const TwoBodyPoint p = t.two_body(t.s.size() - 1);
    return (internal_coordinate(p.x, p.y, p.X, p.Y) - two_body_oscillator_closed_form(alpha, beta, 1.0, 1.0, 1.0, t.s.back()))
        .cwiseAbs()
        .maxCoeff();
}

} // namespace

TEST_CASE("free particle follows the geodesic", "[dynamics]") {
    const CotangentPoint init{RealFourVector(0.1, 0.2, 0.3, 0.4), RealFourVector(2.0, 0.5, -0.3, 0.1)};
    IntegratorConfig cfg;
    cfg.steps = 1000;
    cfg.s_max = 5.0;
    const Trajectory t = integrate_cotangent(FreeParticle{}, init, cfg);
    REQUIRE(t.s.size() == 1001);
    const double m = std::sqrt(minkowski_square(init.p));
    for (std::size_t i = 0; i < t.s.size(); i += 100) {
        // [DERIVED] x(s) = x0 + p s / m
        const RealFourVector expect = init.x + init.p * t.s[i] / m;
        REQUIRE((t.cotangent(i).x - expect).cwiseAbs().maxCoeff() < 1e-9);
        REQUIRE((t.cotangent(i).p - init.p).cwiseAbs().maxCoeff() < 1e-12);
        REQUIRE((free_particle_closed_form(init, t.s[i]).x - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THAT(hamiltonian(FreeParticle{}, init), WithinRel(m, 1e-15));
}

TEST_CASE("mass-shell violations are rejected", "[dynamics]") {
    IntegratorConfig cfg;
    cfg.steps = 10;
    CHECK_THROWS_AS(integrate_cotangent(FreeParticle{}, CotangentPoint{RealFourVector::Zero(), RealFourVector(0, 1, 0, 0)}, cfg),
                    Error);
    TwoBody heavy{[](double) { return 100.0; }, [](double) { return 0.0; }};
    const TwoBodyPoint p{RealFourVector::Zero(), RealFourVector::Zero(), RealFourVector(1, 0, 0, 0), RealFourVector(1, 0, 0, 0)};
    CHECK_THROWS_AS(integrate_cotangent(heavy, p, cfg), Error);
    CHECK_THROWS_AS(integrate_cotangent(HamiltonianSpec(oscillator(1.0)), CotangentPoint{RealFourVector::Zero(), RealFourVector(1, 0, 0, 0)}, cfg),
                    Error);
}

TEST_CASE("two-body oscillator frequency", "[dynamics]") {
    // [REFERENCE] k = m1 = m2 = 1 gives omega = 1/sqrt(2)
    CHECK_THAT(oscillator_frequency(1.0, 1.0, 1.0), WithinRel(1.0 / std::sqrt(2.0), 1e-15));
    // [DERIVED] omega^2 = k / (m1^2 + m2^2)
    CHECK_THAT(oscillator_frequency(4.0, 1.0, 2.0), WithinRel(2.0 / std::sqrt(5.0), 1e-15));
}

TEST_CASE("two-body initial data sit on both constraint surfaces", "[dynamics]") {
    const RealFourVector alpha(0, 0.2, -0.1, 0.3), beta(0, 0.1, 0.2, 0.0);
    const double m1 = 1.0, m2 = 1.7, k = 0.8;
    const TwoBodyPoint p = two_body_initial(alpha, beta, k, m1, m2);
    const TwoBody h = oscillator(k);
    CHECK_THAT(hamiltonian(h, p), WithinRel(std::sqrt(m1 * m1 + m2 * m2), 1e-12));
    const RealFourVector P = p.X + p.Y, Q = p.X - p.Y;
    CHECK_THAT(minkowski_inner(P, Q), WithinAbs(m1 * m1 - m2 * m2, 1e-12));
    CHECK((internal_coordinate(p.x, p.y, p.X, p.Y) - alpha).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS_AS(two_body_initial(RealFourVector(1, 0, 0, 0), beta, k, m1, m2), Error);
}

TEST_CASE("two-body oscillator matches the closed form over one period", "[dynamics][property]") {
    const RealFourVector alpha(0, 0.3, -0.1, 0.2), beta(0, 0.05, 0.25, -0.1);
    const double k = 1.0, m1 = 1.0, m2 = 1.5;
    const TwoBody h = oscillator(k);
    IntegratorConfig cfg;
    cfg.steps = 10000;
    cfg.s_max = 2.0 * M_PI / oscillator_frequency(k, m1, m2);
    const Trajectory t = integrate_cotangent(h, two_body_initial(alpha, beta, k, m1, m2), cfg);
    for (std::size_t i = 0; i < t.s.size(); i += 97) {
        const TwoBodyPoint p = t.two_body(i);
        const RealFourVector xi = internal_coordinate(p.x, p.y, p.X, p.Y);
        REQUIRE((xi - two_body_oscillator_closed_form(alpha, beta, k, m1, m2, t.s[i])).cwiseAbs().maxCoeff() < 1e-6);
        REQUIRE(std::abs(minkowski_inner(xi, RealFourVector(p.X + p.Y))) < 1e-10);
    }
    const ConservationReport rep = conserved_quantities(t, h);
    CHECK(rep.energy_drift <= 1e-8);
    CHECK(rep.pq_drift <= 1e-8);
    CHECK(rep.within_tolerance);
}

TEST_CASE("RK4 is fourth order, implicit midpoint second order", "[dynamics]") {
    const double r4 = oscillator_error(100, Integrator::RK4) / oscillator_error(200, Integrator::RK4);
    CHECK(r4 > 12.0);
    CHECK(r4 < 20.0);
    const double r2 = oscillator_error(100, Integrator::ImplicitMidpoint) / oscillator_error(200, Integrator::ImplicitMidpoint);
    CHECK(r2 > 3.0);
    CHECK(r2 < 5.0);
}

TEST_CASE("charged particle in a constant field follows the helix", "[dynamics]") {
    const double q = 1.0, B = 1.0;
    const RealFourVector u(std::cosh(0.5), 0.6 * std::sinh(0.5), 0.0, 0.8 * std::sinh(0.5));
    const CotangentPoint init{RealFourVector::Zero(), u};
    IntegratorConfig cfg;
    cfg.steps = 10000;
    cfg.s_max = 2.0 * M_PI;
    const ChargedParticle spec = uniform_field(q, field_12(B));
    const Trajectory t = integrate_cotangent(spec, init, cfg);
    for (std::size_t i = 0; i < t.s.size(); i += 101) {
        REQUIRE((t.cotangent(i).x - charged_helix_closed_form(init, q, B, t.s[i]).x).cwiseAbs().maxCoeff() < 1e-6);
    }
    // [DERIVED] after one period the transverse position returns
    const CotangentPoint end = t.cotangent(t.s.size() - 1);
    CHECK(std::abs(end.x(1)) < 1e-6);
    CHECK(std::abs(end.x(2)) < 1e-6);
    CHECK_THAT(end.x(3), WithinRel(u(3) * 2.0 * M_PI, 1e-6));
    CHECK(conserved_quantities(t, spec).energy_drift < 1e-8);
}

TEST_CASE("finite-difference potential derivative agrees with the analytic one", "[dynamics]") {
    ChargedParticle analytic = uniform_field(0.7, field_12(1.3));
    ChargedParticle numeric{analytic.q, analytic.A, {}};
    const CotangentPoint init{RealFourVector(0.1, 0.2, 0.0, 0.0), RealFourVector(1.3, 0.2, 0.1, 0.3)};
    IntegratorConfig cfg;
    cfg.steps = 2000;
    cfg.s_max = 3.0;
    const Trajectory a = integrate_cotangent(analytic, init, cfg);
    const Trajectory b = integrate_cotangent(numeric, init, cfg);
    CHECK((a.states.back() - b.states.back()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("tube free particle is the Kelvin image of the cotangent one", "[dynamics][tube]") {
    const double hbar = 1.0;
    const RealFourVector p(1.3, 0.2, -0.4, 0.1);
    const CotangentPoint init{RealFourVector(0.1, 0.0, 0.2, -0.3), p};
    const FutureTubePoint z0 = FutureTubePoint::make(init.x, kelvin_map(p, hbar));
    IntegratorConfig cfg;
    cfg.steps = 500;
    cfg.s_max = 4.0;
    const Trajectory tube = integrate_future_tube(free_tube_hamiltonian(hbar), z0, hbar, cfg);
    const Trajectory cot = integrate_cotangent(FreeParticle{}, init, cfg);
    for (std::size_t i = 0; i < tube.s.size(); i += 50) {
        REQUIRE((tube.tube(i).x - cot.cotangent(i).x).cwiseAbs().maxCoeff() < 1e-8);
        REQUIRE((tube.tube(i).p - z0.r()).cwiseAbs().maxCoeff() < 1e-12);
    }
    // [DERIVED] dx/ds = r / sqrt(r.r)
    const RealFourVector v = (tube.tube(1).x - tube.tube(0).x) / tube.s[1];
    CHECK((v - z0.r() / std::sqrt(z0.r_square())).cwiseAbs().maxCoeff() < 1e-10);
}
