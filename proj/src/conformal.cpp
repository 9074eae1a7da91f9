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

#include "ftq/conformal.hpp"

#include <cmath>
#include <sstream>

#include "ftq/error.hpp"
#include "ftq/kernel.hpp"
#include "ftq/states.hpp"

namespace ftq {

namespace {

const Complex I(0.0, 1.0);

template <class... Ts> struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

void validate(const ConformalFactor &f) {
    std::visit(Overloaded{
                   [](const Poincare &p) {
                       if (!p.L.allFinite() || !p.B.allFinite() || lorentz_defect(p.L) > 1e-9 ||
                           p.L(0, 0) < 1.0 - 1e-12 || p.L.determinant() < 0.0) {
                           fail(ErrorCode::InvalidArgument,
                                "Poincare factor needs a proper orthochronous Lorentz matrix");
                       }
                   },
                   [](const Dilatation &d) {
                       if (!(d.scale > 0.0) || !std::isfinite(d.scale)) {
                           fail(ErrorCode::InvalidArgument, "dilatation scale must be positive");
                       }
                   },
                   [](const SpecialConformal &s) {
                       if (!s.lambda.allFinite()) {
                           fail(ErrorCode::InvalidArgument, "special conformal parameter must be finite");
                       }
                   },
               },
               f);
}

/// s(z) = 1 + 2 sign lambda.z + lambda^2 z^2.
Complex sigma(const RealFourVector &lambda, const ComplexFourVector &z, double sign) {
    const ComplexFourVector l = lambda.cast<Complex>();
    return 1.0 + 2.0 * sign * minkowski_inner(l, z) + minkowski_square(lambda) * minkowski_square(z);
}

ComplexFourVector special_map(const RealFourVector &lambda, const ComplexFourVector &z, double sign) {
    const Complex s = sigma(lambda, z, sign);
    if (std::abs(s) < 1e-300) {
        fail(ErrorCode::SingularMap, "special conformal denominator vanishes");
    }
    return (z + sign * minkowski_square(z) * lambda.cast<Complex>()) / s;
}

ComplexFourVector forward(const ConformalFactor &f, const ComplexFourVector &z) {
    return std::visit(Overloaded{
                          [&](const Poincare &p) -> ComplexFourVector {
                              return p.L.cast<Complex>() * z + p.B.cast<Complex>();
                          },
                          [&](const Dilatation &d) -> ComplexFourVector { return d.scale * z; },
                          [&](const SpecialConformal &s) { return special_map(s.lambda, z, 1.0); },
                      },
                      f);
}

ComplexFourVector inverse(const ConformalFactor &f, const ComplexFourVector &z) {
    return std::visit(Overloaded{
                          [&](const Poincare &p) -> ComplexFourVector {
                              return lorentz_inverse(p.L).cast<Complex>() * (z - p.B.cast<Complex>());
                          },
                          [&](const Dilatation &d) -> ComplexFourVector { return z / d.scale; },
                          [&](const SpecialConformal &s) { return special_map(s.lambda, z, -1.0); },
                      },
                      f);
}

Complex multiplier(const ConformalFactor &f, const ComplexFourVector &x) {
    return std::visit(Overloaded{
                          [](const Poincare &) { return Complex(1.0); },
                          [](const Dilatation &d) { return Complex(std::pow(d.scale, 4)); },
                          [&](const SpecialConformal &s) {
                              const Complex sg = sigma(s.lambda, x, 1.0);
                              const Complex s2 = sg * sg;
                              return 1.0 / (s2 * s2);
                          },
                      },
                      f);
}

double phase(const ConformalFactor &f, const FutureTubePoint &z) {
    if (const auto *s = std::get_if<SpecialConformal>(&f)) {
        return special_conformal_phase(s->lambda, z);
    }
    return 0.0;
}

FutureTubePoint to_tube(const ComplexFourVector &z) {
    auto p = is_in_future_tube(z);
    if (!p) {
        std::ostringstream os;
        os << "image point left the tube (r.r = " << minkowski_square(RealFourVector(-z.imag()))
           << ")";
        fail(ErrorCode::NumericalBoundary, os.str());
    }
    return *p;
}

} // namespace

Matrix4 lorentz_from_params(const Eigen::Vector3d &rapidity, const Eigen::Vector3d &axis_angle) {
    Matrix4 boost = Matrix4::Identity();
    const double eta = rapidity.norm();
    if (eta > 0.0) {
        const Eigen::Vector3d n = rapidity / eta;
        boost(0, 0) = std::cosh(eta);
        boost.block<1, 3>(0, 1) = std::sinh(eta) * n.transpose();
        boost.block<3, 1>(1, 0) = std::sinh(eta) * n;
        boost.block<3, 3>(1, 1) += (std::cosh(eta) - 1.0) * n * n.transpose();
    }
    Matrix4 rot = Matrix4::Identity();
    const double angle = axis_angle.norm();
    if (angle > 0.0) {
        rot.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis_angle / angle).toRotationMatrix();
    }
    return boost * rot;
}

double lorentz_defect(const Matrix4 &l) {
    const Matrix4 &g = minkowski_metric();
    return (l.transpose() * g * l - g).cwiseAbs().maxCoeff();
}

ConformalMap::ConformalMap(ConformalFactor f) {
    validate(f);
    factors_.push_back(std::move(f));
}

ConformalMap::ConformalMap(std::vector<ConformalFactor> word) : factors_(std::move(word)) {
    for (const auto &f : factors_) {
        validate(f);
    }
}

ConformalMap operator*(const ConformalMap &m1, const ConformalMap &m2) {
    std::vector<ConformalFactor> word = m1.factors_;
    word.insert(word.end(), m2.factors_.begin(), m2.factors_.end());
    ConformalMap out;
    out.factors_ = std::move(word);
    return out;
}

ComplexFourVector apply_point(const ConformalMap &m, const ComplexFourVector &z) {
    ComplexFourVector cur = z;
    for (auto it = m.factors().rbegin(); it != m.factors().rend(); ++it) {
        cur = forward(*it, cur);
    }
    return cur;
}

FutureTubePoint apply_point(const ConformalMap &m, const FutureTubePoint &z) {
    return to_tube(apply_point(m, z.z()));
}

Complex unitary_multiplier(const ConformalMap &m, const ComplexFourVector &x) {
    Complex j = 1.0;
    ComplexFourVector cur = x;
    for (auto it = m.factors().rbegin(); it != m.factors().rend(); ++it) {
        j *= multiplier(*it, cur);
        cur = forward(*it, cur);
    }
    return j;
}

Complex apply_unitary(const ConformalMap &m,
                      const std::function<Complex(const FutureTubePoint &)> &psi,
                      const FutureTubePoint &x) {
    return unitary_multiplier(m, x.z()) * psi(apply_point(m, x));
}

Complex unitary_kernel(const ConformalMap &m, const FutureTubePoint &x, const FutureTubePoint &y) {
    return unitary_multiplier(m, x.z()) * kernel4(apply_point(m, x.z()), y.zbar());
}

CoherentImage act_on_coherent(const ConformalMap &m, const FutureTubePoint &z) {
    FutureTubePoint w = z;
    double theta = 0.0;
    for (const auto &f : m.factors()) {
        theta += phase(f, w);
        w = to_tube(inverse(f, w.z()));
    }
    return {w, wrap_phase(theta)};
}

double special_conformal_phase(const RealFourVector &lambda, const FutureTubePoint &z) {
    return wrap_phase(4.0 * std::arg(sigma(lambda, z.z(), -1.0)));
}

PhaseForms special_conformal_phase_forms(const RealFourVector &lambda, const FutureTubePoint &z) {
    const Complex sz = sigma(lambda, z.z(), -1.0);
    const Complex szb = sigma(lambda, z.zbar(), -1.0);
    const ComplexFourVector w = special_map(lambda, z.z(), -1.0);
    const ComplexFourVector wb = w.conjugate();
    const Complex ratio = minkowski_square(z.z()) * minkowski_square(wb) /
                          (minkowski_square(z.zbar()) * minkowski_square(w));
    return {wrap_phase(std::real(2.0 / I * std::log(sz / szb))),
            wrap_phase(std::real(2.0 / I * std::log(ratio)))};
}

RealFourVector compose_special(const RealFourVector &lambda, const RealFourVector &mu) {
    return lambda + mu;
}

double wrap_phase(double theta) {
    double t = std::remainder(theta, 2.0 * kPi);
    if (t <= -kPi) {
        t += 2.0 * kPi;
    }
    return t;
}

CrossRatioReport cross_ratio_invariance_check(const ConformalMap &m, const FutureTubePoint &w,
                                              const FutureTubePoint &z) {
    const double before = std::norm(overlap(w, z));
    const double after = std::norm(overlap(act_on_coherent(m, w).w, act_on_coherent(m, z).w));
    return {before, after, std::abs(before - after)};
}

} // namespace ftq
