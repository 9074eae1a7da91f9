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

#include <sstream>

#include "ftq/error.hpp"
#include "ftq/io.hpp"
#include "helpers.hpp"

using namespace ftq;
using io::Json;

TEST_CASE("focus JSON accepts both forms", "[io]") {
    const FutureTubePoint a = io::focus_from_json(Json::parse(R"({"x": [0, 1, 0, 0], "r": [2, 0, 0, 0]})"));
    CHECK(a.x() == RealFourVector(0, 1, 0, 0));
    CHECK(a.r() == RealFourVector(2, 0, 0, 0));
    const FutureTubePoint b = io::focus_from_json(io::to_json(a));
    CHECK(b.x() == a.x());
    CHECK(b.r() == a.r());
    CHECK(io::complex_from_json(Json::parse("[1, 2]")) == Complex(1, 2));
    CHECK(io::complex_from_json(Json::parse(R"({"re": 3, "im": -1})")) == Complex(3, -1));
    CHECK(io::complex_from_json(Json::parse("4")) == Complex(4, 0));
}

TEST_CASE("state JSON round trip", "[io]") {
    Rng rng(60);
    const PureState p = PureState::make({testing::random_point(rng), testing::random_point(rng)},
                                        Eigen::Vector2cd(Complex(1, 0.5), Complex(-0.2, 0.3)));
    const DensityState d = DensityState::make({{0.25, p}, {0.75, PureState::coherent(testing::random_point(rng))}});
    const DensityState back = io::state_from_json(io::parse(io::to_json(d).dump()));
    REQUIRE(back.branches().size() == 2);
    const FutureTubePoint u = testing::random_point(rng);
    CHECK(std::abs(back.diagonal(u) - d.diagonal(u)) <= 1e-15 * d.diagonal(u));
    // A bare focus list is an equal superposition.
    const DensityState bare = io::state_from_json(Json::parse(R"({"foci": [{"x": [0,0,0,0], "r": [1,0,0,0]}]})"));
    CHECK(bare.branches().size() == 1);
    CHECK(std::abs(bare.purity() - 1.0) < 1e-12);
}

TEST_CASE("region JSON round trip", "[io]") {
    const Box b = Box::around(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0), 0.5, 0.2);
    Box half;
    half.x_lo = RealFourVector::Constant(-1);
    const Region r = Region::complement(Region({b, half}));
    const Region back = io::region_from_json(io::to_json(r));
    CHECK(back.is_complement());
    REQUIRE(back.boxes().size() == 2);
    CHECK(std::isinf(back.boxes()[1].x_hi(0)));
    CHECK(back.boxes()[0].x_lo == b.x_lo);
    const Region p = io::region_from_json(Json::parse(R"({"point": {"x": [0,0,0,0], "r": [1,0,0,0]}})"));
    CHECK(p.is_point());
}

TEST_CASE("map JSON", "[io]") {
    const ConformalMap m = io::map_from_json(Json::parse(R"({"type": "word", "factors": [
        {"type": "special", "lambda": [0.1, 0, 0, 0]},
        {"type": "dilatation", "scale": 2},
        {"type": "poincare", "rapidity": [0.2, 0, 0], "axis_angle": [0, 0, 1], "B": [1, 0, 0, 0]}]})"));
    CHECK(m.factors().size() == 3);
    const ConformalMap back = io::map_from_json(io::to_json(m));
    const ComplexFourVector z = FutureTubePoint::make(RealFourVector::Zero(), RealFourVector(1, 0, 0, 0)).z();
    CHECK((apply_point(m, z) - apply_point(back, z)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("malformed input raises InvalidArgument", "[io]") {
    auto code = [](auto &&f) {
        try {
            f();
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::NonIntegrable;
    };
    CHECK(code([] { io::parse("{not json"); }) == ErrorCode::InvalidArgument);
    CHECK(code([] { io::four_vector_from_json(Json::parse("[1, 2]")); }) == ErrorCode::InvalidArgument);
    CHECK(code([] { io::focus_from_json(Json::parse(R"({"x": [0,0,0,0], "r": [0,1,0,0]})")); }) == ErrorCode::InvalidArgument);
    CHECK(code([] { io::map_from_json(Json::parse(R"({"type": "shear"})")); }) == ErrorCode::InvalidArgument);
    CHECK(code([] { io::state_from_json(Json::parse("[]")); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("trajectory CSV layout", "[io]") {
    Trajectory t;
    t.s = {0.0, 1.0};
    Eigen::VectorXd v = Eigen::VectorXd::Zero(8);
    t.states = {v, v};
    t.energy = {1.0, 1.0};
    std::ostringstream os;
    io::write_trajectory_csv(os, t, {"extra"}, {{5.0, 6.0}});
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "s,x0,x1,x2,x3,p0,p1,p2,p3,H,extra");
}
