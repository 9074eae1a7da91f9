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

#include "ftq/kernel.hpp"

#include <cmath>
#include <sstream>

#include "ftq/error.hpp"
#include "ftq/quadrature.hpp"

namespace ftq {

namespace {

const Complex I(0.0, 1.0);

Complex checked_square(const ComplexFourVector &d) {
    const Complex s = minkowski_square(d);
    if (std::abs(s) < kBoundaryEps) {
        std::ostringstream os;
        os << "(z - w-bar)^2 = " << s << " is at the tube boundary";
        fail(ErrorCode::BoundaryDivergence, os.str());
    }
    return s;
}

double log_kernel_diagonal(const RealFourVector &x, const RealFourVector &r) {
    if (!is_timelike_future(r)) {
        fail(ErrorCode::BoundaryDivergence, "metric stencil leaves the tube");
    }
    const ComplexFourVector z = x.cast<Complex>() - I * r.cast<Complex>();
    const ComplexFourVector zbar = x.cast<Complex>() + I * r.cast<Complex>();
    return std::log(std::real(kernel4(z, zbar)));
}

} // namespace

Complex kernel4(const ComplexFourVector &z, const ComplexFourVector &wbar) {
    const Complex s = checked_square(z - wbar);
    const Complex s2 = s * s;
    return kKernelConstant / (s2 * s2);
}

Complex kernel4(const FutureTubePoint &z, const FutureTubePoint &w) {
    return kernel4(z.z(), w.zbar());
}

double kernel_diagonal(const FutureTubePoint &z) {
    const double rr = z.r_square();
    return 3.0 / (4.0 * std::pow(kPi, 4) * std::pow(rr, 4));
}

double kernel_diagonal_momentum(const RealFourVector &p, double hbar) {
    return 3.0 * std::pow(minkowski_square(p), 4) / (4.0 * std::pow(kPi, 4) * std::pow(hbar, 8));
}

Complex kernel_halfplane(Complex z, Complex w) {
    const Complex d = z - std::conj(w);
    if (std::norm(d) < kBoundaryEps) {
        fail(ErrorCode::BoundaryDivergence, "half-plane kernel at z = w-bar");
    }
    return -1.0 / (kPi * d * d);
}

Complex basis_halfplane(int n, Complex z) {
    if (n < 1) {
        fail(ErrorCode::InvalidArgument, "basis index must be >= 1");
    }
    const double c = std::sqrt(static_cast<double>(n) / kPi);
    return 2.0 * I * c * std::pow(I + z, n - 1) / std::pow(I - z, n + 1);
}

Complex basis_disk(int n, Complex w) {
    if (n < 1) {
        fail(ErrorCode::InvalidArgument, "basis index must be >= 1");
    }
    return std::sqrt(static_cast<double>(n) / kPi) * std::pow(w, n - 1);
}

Complex kernel_disk(Complex z, Complex w) {
    const Complex d = 1.0 - z * std::conj(w);
    if (std::norm(d) < kBoundaryEps) {
        fail(ErrorCode::BoundaryDivergence, "disk kernel at z w-bar = 1");
    }
    return 1.0 / (kPi * d * d);
}

Complex kernel_halfplane_series(Complex z, Complex w, int terms) {
    Complex sum = 0.0;
    for (int n = 1; n <= terms; ++n) {
        sum += basis_halfplane(n, z) * std::conj(basis_halfplane(n, w));
    }
    return sum;
}

Complex reproduce_halfplane_quadrature(const std::function<Complex(Complex)> &f, Complex z,
                                       std::size_t n_radial, std::size_t n_angular) {
    return quad::integrate_disk(
        [&](Complex w) -> Complex {
            const Complex y = cayley_from_disk(w);
            const double jac = 4.0 / std::pow(std::abs(I * w - 1.0), 4);
            return kernel_halfplane(z, y) * f(y) * jac;
        },
        n_radial, n_angular);
}

double default_metric_step(const FutureTubePoint &z) { return 1e-4 * std::sqrt(z.r_square()); }

Eigen::Matrix4cd levi_form_numeric(const FutureTubePoint &z, double step) {
    const double h = step > 0.0 ? step : default_metric_step(z);
    // Coordinates q = (x, r) in R^8.
    Eigen::Matrix<double, 8, 1> q0;
    q0 << z.x(), z.r();
    auto f = [](const Eigen::Matrix<double, 8, 1> &q) {
        return log_kernel_diagonal(q.head<4>(), q.tail<4>());
    };
    const double f0 = f(q0);
    Eigen::Matrix<double, 8, 8> hess;
    for (int i = 0; i < 8; ++i) {
        Eigen::Matrix<double, 8, 1> qp = q0, qm = q0;
        qp(i) += h;
        qm(i) -= h;
        hess(i, i) = (f(qp) - 2.0 * f0 + f(qm)) / (h * h);
        for (int j = i + 1; j < 8; ++j) {
            Eigen::Matrix<double, 8, 1> a = q0, b = q0, c = q0, d = q0;
            a(i) += h, a(j) += h;
            b(i) += h, b(j) -= h;
            c(i) -= h, c(j) += h;
            d(i) -= h, d(j) -= h;
            hess(i, j) = hess(j, i) = (f(a) - f(b) - f(c) + f(d)) / (4.0 * h * h);
        }
    }
    const Matrix4 xx = hess.topLeftCorner<4, 4>();
    const Matrix4 rr = hess.bottomRightCorner<4, 4>();
    const Matrix4 xr = hess.topRightCorner<4, 4>(); // d_x^a d_r^b
    Eigen::Matrix4cd levi;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            levi(a, b) = 0.25 * Complex(xx(a, b) + rr(a, b), xr(b, a) - xr(a, b));
        }
    }
    return levi;
}

Matrix4 bergman_metric_numeric(const FutureTubePoint &z, double step) {
    return 0.5 * levi_form_numeric(z, step).real();
}

Complex momentum_kernel(const FutureTubePoint &z, const FutureTubePoint &w, int a, double hbar) {
    if (a < 0 || a > 3) {
        fail(ErrorCode::InvalidArgument, "momentum index must be in 0..3");
    }
    const ComplexFourVector d = z.z() - w.zbar();
    const Complex s = checked_square(d);
    const Complex s2 = s * s;
    const Complex da = a == 0 ? d(0) : -d(a);
    return Complex(0.0, -1536.0 * hbar / std::pow(kPi, 4)) * da / (s2 * s2 * s);
}

Estimate apply_kernel_mc(const TubeKernel &k, const TubeFunction &f, const FutureTubePoint &z,
                         const McConfig &cfg, std::string_view tag) {
    TubeProposal q(cfg.x_scale, cfg.r_scale);
    q.add_focus(z);
    for (const auto &p : f.foci) {
        q.add_focus(p);
    }
    const Estimate e = integrate_tube(
        q,
        [&](const TubeSample &s) -> Complex {
            const auto y = FutureTubePoint::try_make(s.x, s.r);
            if (!y) {
                return 0.0;
            }
            return k(z, *y) * f.f(*y);
        },
        cfg, tag);
    require_precision(e, cfg, tag);
    return e;
}

Estimate reproduce_mc(const TubeFunction &f, const FutureTubePoint &z, const McConfig &cfg) {
    return apply_kernel_mc(
        [](const FutureTubePoint &a, const FutureTubePoint &b) { return kernel4(a, b); }, f, z, cfg,
        "reproduce");
}

Estimate fundamental_identity_mc(const FutureTubePoint &x, const FutureTubePoint &z,
                                 const McConfig &cfg) {
    TubeFunction f{[z](const FutureTubePoint &y) { return kernel4(y, z); }, {z}};
    return apply_kernel_mc(
        [](const FutureTubePoint &a, const FutureTubePoint &b) { return kernel4(a, b); }, f, x, cfg,
        "fundamental-identity");
}

} // namespace ftq
