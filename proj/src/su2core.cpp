// Copyright 2026 The su2design Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "su2design/su2core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace su2design {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("invalid-parameter: non-finite ") + what);
    }
}

}  // namespace

Su2Params::Su2Params(double x1_, double y1_, double x2_, double y2_)
    : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
    require_finite(x1, "x1");
    require_finite(y1, "y1");
    require_finite(x2, "x2");
    require_finite(y2, "y2");
    if (std::abs(norm_sq() - 1.0) > kNormTol) {
        std::ostringstream os;
        os << "invalid-parameter: (x1,y1,x2,y2) must lie on the unit 3-sphere, |v|^2 = "
           << norm_sq();
        throw std::invalid_argument(os.str());
    }
}

Su2Params Su2Params::normalized(double x1, double y1, double x2, double y2) {
    const double n = std::sqrt(x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2);
    if (!(n > 1e-12) || !std::isfinite(n)) {
        throw std::invalid_argument("invalid-parameter: cannot normalize a near-zero vector");
    }
    return Su2Params(x1 / n, y1 / n, x2 / n, y2 / n);
}

UnitaryMat2::UnitaryMat2(Complex a, Complex b, Complex c, Complex d)
    : u11(a), u12(b), u21(c), u22(d) {
    // U U+ = I, elementwise.
    const Complex g11 = u11 * std::conj(u11) + u12 * std::conj(u12);
    const Complex g12 = u11 * std::conj(u21) + u12 * std::conj(u22);
    const Complex g22 = u21 * std::conj(u21) + u22 * std::conj(u22);
    const double dev = std::max({std::abs(g11 - 1.0), std::abs(g12), std::abs(g22 - 1.0)});
    if (!(dev <= kUnitarityTol)) {
        std::ostringstream os;
        os << "invalid-parameter: matrix is not unitary (max |UU+ - I| = " << dev << ")";
        throw std::invalid_argument(os.str());
    }
}

UnitaryMat2 UnitaryMat2::adjoint() const {
    return {std::conj(u11), std::conj(u21), std::conj(u12), std::conj(u22)};
}

UnitaryMat2 operator*(const UnitaryMat2& a, const UnitaryMat2& b) {
    return {a.u11 * b.u11 + a.u12 * b.u21, a.u11 * b.u12 + a.u12 * b.u22,
            a.u21 * b.u11 + a.u22 * b.u21, a.u21 * b.u12 + a.u22 * b.u22};
}

double max_abs_diff(const UnitaryMat2& a, const UnitaryMat2& b) {
    return std::max({std::abs(a.u11 - b.u11), std::abs(a.u12 - b.u12), std::abs(a.u21 - b.u21),
                     std::abs(a.u22 - b.u22)});
}

UnitaryMat2 su2_from_params(const Su2Params& p) {
    return {{p.x1, p.y1}, {p.x2, p.y2}, {-p.x2, p.y2}, {p.x1, -p.y1}};
}

Su2Params params_from_unitary(const UnitaryMat2& u) {
    const Complex d = u.det();
    if (std::abs(d - 1.0) > kSpecialTol) {
        std::ostringstream os;
        os << "not-special-unitary: det(U) = " << d.real() << (d.imag() < 0 ? " - " : " + ")
           << std::abs(d.imag()) << "i, expected 1 (global phase present?)";
        throw std::invalid_argument(os.str());
    }
    // Symmetrized read-off; exact when U already has the canonical form.
    const double x1 = 0.5 * (u.u11.real() + u.u22.real());
    const double y1 = 0.5 * (u.u11.imag() - u.u22.imag());
    const double x2 = 0.5 * (u.u12.real() - u.u21.real());
    const double y2 = 0.5 * (u.u12.imag() + u.u21.imag());
    const double n = std::sqrt(x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2);
    if (n == 1.0) {
        return Su2Params(x1, y1, x2, y2);
    }
    return Su2Params::normalized(x1, y1, x2, y2);
}

UnitaryMat2 hwp(double angle_deg) {
    require_finite(angle_deg, "wave-plate angle");
    const double t = 2.0 * angle_deg * kPi / 180.0;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const Complex mi(0.0, -1.0);
    return {mi * c, mi * s, mi * s, -mi * c};
}

UnitaryMat2 qwp(double angle_deg) {
    require_finite(angle_deg, "wave-plate angle");
    const double t = 2.0 * angle_deg * kPi / 180.0;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double r = 1.0 / std::sqrt(2.0);
    return {Complex(r, -r * c), Complex(0.0, -r * s), Complex(0.0, -r * s), Complex(r, r * c)};
}

UnitaryMat2 process_from_plates(const ProcessAngles& a) {
    return qwp(a.theta1) * hwp(a.theta2) * qwp(a.theta3);
}

UnitaryMat2 compose_interferometer(const ProbeAngles& w, const UnitaryMat2& u) {
    return hwp(w.omega4) * qwp(w.omega3) * u * qwp(w.omega2) * hwp(w.omega1);
}

Su2Params haar_sample(RandomStream& rng) {
    while (true) {
        const double a = rng.normal();
        const double b = rng.normal();
        const double c = rng.normal();
        const double d = rng.normal();
        if (a * a + b * b + c * c + d * d > 1e-12) {
            return Su2Params::normalized(a, b, c, d);
        }
    }
}

Ensemble ensemble_d1() {
    Ensemble e;
    e.label = "d1";
    e.elements = {
        su2_from_params(Su2Params(1, 0, 0, 0)),   // I
        su2_from_params(Su2Params(0, 0, 0, 1)),   // iX
        su2_from_params(Su2Params(0, 0, -1, 0)),  // -iY
        su2_from_params(Su2Params(0, 1, 0, 0)),   // iZ
    };
    return e;
}

Ensemble ensemble_d2() {
    Ensemble e = ensemble_d1();
    e.label = "d2";
    // (I + sx iX + sy iY + sz iZ)/2 in the order of the bundled design table.
    constexpr int signs[8][3] = {{+1, -1, +1}, {+1, +1, +1}, {-1, -1, +1}, {-1, +1, +1},
                                 {+1, -1, -1}, {+1, +1, -1}, {-1, -1, -1}, {-1, +1, -1}};
    for (const auto& s : signs) {
        // x1 = 1/2, y1 = sz/2, x2 = sy/2, y2 = sx/2.
        e.elements.push_back(
            su2_from_params(Su2Params(0.5, s[2] * 0.5, s[1] * 0.5, s[0] * 0.5)));
    }
    return e;
}

Ensemble ensemble_haar(std::size_t k, RandomStream& rng) {
    if (k == 0) {
        throw std::invalid_argument("invalid-parameter: ensemble needs K >= 1");
    }
    Ensemble e;
    e.label = "haar:" + std::to_string(k);
    e.elements.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        e.elements.push_back(su2_from_params(haar_sample(rng)));
    }
    return e;
}

bool equal_up_to_phase(const UnitaryMat2& a, const UnitaryMat2& b, double tol) {
    // Align on B's largest entry; minimizing over the remaining phase freedom
    // cannot do better than ~tol once that entry matches.
    const Complex* bs[4] = {&b.u11, &b.u12, &b.u21, &b.u22};
    const Complex* as[4] = {&a.u11, &a.u12, &a.u21, &a.u22};
    int best = 0;
    for (int i = 1; i < 4; ++i) {
        if (std::abs(*bs[i]) > std::abs(*bs[best])) {
            best = i;
        }
    }
    if (std::abs(*bs[best]) < 1e-15) {
        return max_abs_diff(a, b) <= tol;
    }
    Complex phi = *as[best] / *bs[best];
    const double m = std::abs(phi);
    if (std::abs(m - 1.0) > 1e-6) {
        return false;
    }
    phi /= m;
    double dev = 0.0;
    for (int i = 0; i < 4; ++i) {
        dev = std::max(dev, std::abs(*as[i] - phi * *bs[i]));
    }
    return dev <= tol;
}

}  // namespace su2design
