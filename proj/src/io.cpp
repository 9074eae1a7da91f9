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

#include "ftq/io.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "ftq/error.hpp"

namespace ftq::io {

namespace {

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void bad(const std::string &what) { fail(ErrorCode::InvalidArgument, what); }

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        bad(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

double number(const Json &j) {
    if (!j.is_number()) {
        bad("expected a number, got " + j.dump());
    }
    return j.get<double>();
}

Json bound_to_json(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

RealFourVector bounds_from_json(const Json &j, double fallback) {
    if (j.is_null()) {
        return RealFourVector::Constant(fallback);
    }
    if (!j.is_array() || j.size() != 4) {
        bad("box bound must be an array of 4 numbers or nulls");
    }
    RealFourVector v;
    for (int i = 0; i < 4; ++i) {
        v(i) = j[static_cast<std::size_t>(i)].is_null() ? fallback : number(j[static_cast<std::size_t>(i)]);
    }
    return v;
}

Json bounds_to_json(const RealFourVector &v) {
    Json a = Json::array();
    for (int i = 0; i < 4; ++i) {
        a.push_back(bound_to_json(v(i)));
    }
    return a;
}

Json factor_to_json(const ConformalFactor &f) {
    return std::visit(Overloaded{
                          [](const Poincare &p) {
                              Json l = Json::array();
                              for (int i = 0; i < 4; ++i) {
                                  Json row = Json::array();
                                  for (int k = 0; k < 4; ++k) {
                                      row.push_back(p.L(i, k));
                                  }
                                  l.push_back(row);
                              }
                              return Json{{"type", "poincare"}, {"L", l}, {"B", to_json(p.B)}};
                          },
                          [](const Dilatation &d) {
                              return Json{{"type", "dilatation"}, {"scale", d.scale}};
                          },
                          [](const SpecialConformal &s) {
                              return Json{{"type", "special"}, {"lambda", to_json(s.lambda)}};
                          },
                      },
                      f);
}

Eigen::Vector3d three_vector(const Json &j) {
    if (!j.is_array() || j.size() != 3) {
        bad("expected an array of 3 numbers");
    }
    return {number(j[0]), number(j[1]), number(j[2])};
}

void factors_from_json(const Json &j, std::vector<ConformalFactor> &out) {
    const std::string type = field(j, "type").get<std::string>();
    if (type == "poincare") {
        Poincare p;
        if (j.contains("L")) {
            const Json &l = j.at("L");
            if (!l.is_array() || l.size() != 4) {
                bad("L must be a 4x4 array");
            }
            for (std::size_t i = 0; i < 4; ++i) {
                if (!l[i].is_array() || l[i].size() != 4) {
                    bad("L must be a 4x4 array");
                }
                for (std::size_t k = 0; k < 4; ++k) {
                    p.L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = number(l[i][k]);
                }
            }
        } else {
            const Eigen::Vector3d rap = j.contains("rapidity") ? three_vector(j.at("rapidity"))
                                                               : Eigen::Vector3d::Zero();
            const Eigen::Vector3d ang = j.contains("axis_angle") ? three_vector(j.at("axis_angle"))
                                                                 : Eigen::Vector3d::Zero();
            p.L = lorentz_from_params(rap, ang);
        }
        if (j.contains("B")) {
            p.B = four_vector_from_json(j.at("B"));
        }
        out.emplace_back(p);
    } else if (type == "dilatation") {
        out.emplace_back(Dilatation{number(field(j, "scale"))});
    } else if (type == "special") {
        out.emplace_back(SpecialConformal{four_vector_from_json(field(j, "lambda"))});
    } else if (type == "word") {
        const Json &fs = field(j, "factors");
        if (!fs.is_array()) {
            bad("word factors must be an array");
        }
        for (const auto &f : fs) {
            factors_from_json(f, out);
        }
    } else {
        bad("unknown map type '" + type + "'");
    }
}

} // namespace

Json to_json(const RealFourVector &v) { return Json::array({v(0), v(1), v(2), v(3)}); }

Json to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Json to_json(const FutureTubePoint &z) {
    Json a = Json::array();
    const ComplexFourVector zc = z.z();
    for (int i = 0; i < 4; ++i) {
        a.push_back(to_json(zc(i)));
    }
    return a;
}

Json to_json(const PureState &s) {
    Json foci = Json::array();
    Json coeffs = Json::array();
    for (std::size_t i = 0; i < s.foci().size(); ++i) {
        foci.push_back(to_json(s.foci()[i]));
        coeffs.push_back(to_json(s.coeffs()(static_cast<Eigen::Index>(i))));
    }
    return Json{{"foci", foci}, {"coeffs", coeffs}};
}

Json to_json(const DensityState &s) {
    Json branches = Json::array();
    for (const Branch &b : s.branches()) {
        Json jb = to_json(b.state);
        Json out{{"weight", b.weight}};
        out["foci"] = jb["foci"];
        out["coeffs"] = jb["coeffs"];
        branches.push_back(out);
    }
    return Json{{"branches", branches}};
}

Json to_json(const Region &r) {
    if (r.is_point()) {
        return Json{{"point", to_json(*r.point())}};
    }
    Json boxes = Json::array();
    for (const Box &b : r.boxes()) {
        boxes.push_back(Json{{"x_lo", bounds_to_json(b.x_lo)},
                             {"x_hi", bounds_to_json(b.x_hi)},
                             {"r_lo", bounds_to_json(b.r_lo)},
                             {"r_hi", bounds_to_json(b.r_hi)}});
    }
    return Json{{"boxes", boxes}, {"complement", r.is_complement()}};
}

Json to_json(const ConformalMap &m) {
    if (m.factors().size() == 1) {
        return factor_to_json(m.factors().front());
    }
    Json fs = Json::array();
    for (const auto &f : m.factors()) {
        fs.push_back(factor_to_json(f));
    }
    return Json{{"type", "word"}, {"factors", fs}};
}

Json to_json(const Estimate &e) {
    return Json{{"estimate", to_json(e.value)}, {"std_err", e.std_err}, {"samples", e.samples},
                {"seed", e.seed}};
}

Json to_json(const IdentityReport &r) {
    return Json{{"identity", r.identity}, {"estimate", to_json(r.estimate)},
                {"target", to_json(r.target)}, {"abs_err", r.abs_err},
                {"rel_err", r.rel_err},        {"std_err", r.std_err},
                {"samples", r.samples},        {"seed", r.seed}};
}

Json to_json(const LocalizationReport &r) {
    return Json{{"z", to_json(r.z)},         {"mass", r.mass},   {"bound", r.bound},
                {"density", r.density},     {"ratio", r.ratio}};
}

RealFourVector four_vector_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 4) {
        bad("four-vector must be an array of 4 numbers, got " + j.dump());
    }
    return {number(j[0]), number(j[1]), number(j[2]), number(j[3])};
}

Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2) {
        return {number(j[0]), number(j[1])};
    }
    return {number(field(j, "re")), number(field(j, "im"))};
}

FutureTubePoint focus_from_json(const Json &j) {
    if (j.is_object()) {
        return FutureTubePoint::make(four_vector_from_json(field(j, "x")),
                                     four_vector_from_json(field(j, "r")));
    }
    if (!j.is_array() || j.size() != 4) {
        bad("focus must be 4 complex numbers or {x, r}");
    }
    ComplexFourVector z;
    for (std::size_t i = 0; i < 4; ++i) {
        z(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    }
    return FutureTubePoint::make(z.real(), -z.imag());
}

PureState pure_state_from_json(const Json &j) {
    const Json &foci = field(j, "foci");
    if (!foci.is_array() || foci.empty()) {
        bad("foci must be a non-empty array");
    }
    std::vector<FutureTubePoint> pts;
    for (const auto &f : foci) {
        pts.push_back(focus_from_json(f));
    }
    Eigen::VectorXcd c = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(pts.size()));
    if (j.contains("coeffs")) {
        const Json &cs = j.at("coeffs");
        if (!cs.is_array() || cs.size() != pts.size()) {
            bad("coeffs must match foci in length");
        }
        for (std::size_t i = 0; i < cs.size(); ++i) {
            c(static_cast<Eigen::Index>(i)) = complex_from_json(cs[i]);
        }
    }
    return PureState::make(std::move(pts), std::move(c));
}

DensityState state_from_json(const Json &j) {
    if (j.is_object() && j.contains("foci") && !j.contains("branches")) {
        return DensityState::pure(pure_state_from_json(j));
    }
    const Json &bs = field(j, "branches");
    if (!bs.is_array() || bs.empty()) {
        bad("branches must be a non-empty array");
    }
    std::vector<Branch> branches;
    for (const auto &b : bs) {
        const double w = b.contains("weight") ? number(b.at("weight")) : 1.0;
        branches.push_back(Branch{w, pure_state_from_json(b)});
    }
    return DensityState::make(std::move(branches));
}

Region region_from_json(const Json &j) {
    if (j.is_object() && j.contains("point")) {
        return Region::point(focus_from_json(j.at("point")));
    }
    const Json &bs = field(j, "boxes");
    if (!bs.is_array()) {
        bad("boxes must be an array");
    }
    std::vector<Box> boxes;
    const double inf = std::numeric_limits<double>::infinity();
    for (const auto &b : bs) {
        Box box;
        box.x_lo = b.contains("x_lo") ? bounds_from_json(b.at("x_lo"), -inf) : box.x_lo;
        box.x_hi = b.contains("x_hi") ? bounds_from_json(b.at("x_hi"), inf) : box.x_hi;
        box.r_lo = b.contains("r_lo") ? bounds_from_json(b.at("r_lo"), -inf) : box.r_lo;
        box.r_hi = b.contains("r_hi") ? bounds_from_json(b.at("r_hi"), inf) : box.r_hi;
        boxes.push_back(box);
    }
    Region r(std::move(boxes));
    if (j.value("complement", false)) {
        r = Region::complement(r);
    }
    return r;
}

ConformalMap map_from_json(const Json &j) {
    std::vector<ConformalFactor> factors;
    factors_from_json(j, factors);
    return ConformalMap(std::move(factors));
}

Json parse(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

void write_trajectory_csv(std::ostream &os, const Trajectory &t,
                          const std::vector<std::string> &extra_names,
                          const std::vector<std::vector<double>> &extra_columns) {
    const bool two = !t.states.empty() && t.states.front().size() == 16;
    os << "s";
    const char *groups_single[] = {"x", "p"};
    const char *groups_two[] = {"x", "y", "X", "Y"};
    const auto n_groups = two ? 4 : 2;
    for (int g = 0; g < n_groups; ++g) {
        for (int i = 0; i < 4; ++i) {
            os << ',' << (two ? groups_two[g] : groups_single[g]) << i;
        }
    }
    os << ",H";
    for (const auto &n : extra_names) {
        os << ',' << n;
    }
    os << '\n' << std::setprecision(17);
    for (std::size_t k = 0; k < t.states.size(); ++k) {
        os << t.s[k];
        for (Eigen::Index i = 0; i < t.states[k].size(); ++i) {
            os << ',' << t.states[k](i);
        }
        os << ',' << t.energy[k];
        for (const auto &col : extra_columns) {
            os << ',' << col.at(k);
        }
        os << '\n';
    }
}

void write_localization_csv(std::ostream &os, const std::vector<LocalizationReport> &reports) {
    os << "x0,x1,x2,x3,r0,r1,r2,r3,mass,bound,density,ratio\n" << std::setprecision(17);
    for (const auto &r : reports) {
        for (int i = 0; i < 4; ++i) {
            os << r.z.x()(i) << ',';
        }
        for (int i = 0; i < 4; ++i) {
            os << r.z.r()(i) << ',';
        }
        os << r.mass << ',' << r.bound << ',' << r.density << ',' << r.ratio << '\n';
    }
}

} // namespace ftq::io
