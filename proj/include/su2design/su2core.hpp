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

#ifndef SU2DESIGN_SU2CORE_HPP
#define SU2DESIGN_SU2CORE_HPP

#include <complex>
#include <string>
#include <vector>

#include "su2design/rng.hpp"

namespace su2design {

using Complex = std::complex<double>;

/// Construction tolerance for the unit-norm constraint on Su2Params.
inline constexpr double kNormTol = 1e-12;
/// Elementwise tolerance for U·U† = I on UnitaryMat2.
inline constexpr double kUnitarityTol = 1e-10;
/// Tolerance on det(U) = 1 when recovering parameters from a matrix.
inline constexpr double kSpecialTol = 1e-9;
/// Global-phase equivalence tolerance used for the plate-product checks.
inline constexpr double kPhaseTol = 1e-9;

/// Point on the unit 3-sphere: the canonical real coordinates (x1, y1, x2, y2)
/// in which every polynomial of this project is written.
struct Su2Params {
    double x1, y1, x2, y2;

    /// Validating constructor; rejects vectors off the sphere by more than
    /// kNormTol.
    Su2Params(double x1, double y1, double x2, double y2);

    /// Rescales any vector of nonzero length onto the sphere.
    static Su2Params normalized(double x1, double y1, double x2, double y2);

    double norm_sq() const { return x1 * x1 + y1 * y1 + x2 * x2 + y2 * y2; }
};

/// 2x2 complex matrix, unitary within kUnitarityTol by construction.
struct UnitaryMat2 {
    Complex u11, u12, u21, u22;

    UnitaryMat2(Complex u11, Complex u12, Complex u21, Complex u22);

    static UnitaryMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    Complex det() const { return u11 * u22 - u12 * u21; }
    UnitaryMat2 adjoint() const;

    friend UnitaryMat2 operator*(const UnitaryMat2& a, const UnitaryMat2& b);
};

/// Largest elementwise |a - b|.
double max_abs_diff(const UnitaryMat2& a, const UnitaryMat2& b);

/// Probe-stage plate rotations, degrees from the vertical. Wave plates are
/// 180-degree periodic.
struct ProbeAngles {
    double omega1, omega2, omega3, omega4;
};

/// Process-stage plate rotations (the three plates realizing U), degrees.
struct ProcessAngles {
    double theta1, theta2, theta3;
};

/// Finite ensemble of unitaries with uniform weight 1/K.
struct Ensemble {
    std::string label;
    std::vector<UnitaryMat2> elements;

    double weight() const { return 1.0 / static_cast<double>(elements.size()); }
    std::size_t size() const { return elements.size(); }
};

/// Matrix of Eq-type [[x1+iy1, x2+iy2], [-x2+iy2, x1-iy1]]; determinant is 1
/// exactly by the sphere constraint.
UnitaryMat2 su2_from_params(const Su2Params& p);

/// Inverse of su2_from_params. Requires det(U) = 1 within kSpecialTol; a
/// leftover global phase is reported in the error message.
Su2Params params_from_unitary(const UnitaryMat2& u);

/// Half-wave plate at `angle_deg` from the vertical.
UnitaryMat2 hwp(double angle_deg);

/// Quarter-wave plate at `angle_deg` from the vertical.
UnitaryMat2 qwp(double angle_deg);

/// Three-plate process unitary QWP(theta1) * HWP(theta2) * QWP(theta3). This
/// order realizes the bundled design-table settings: each row's product equals
/// its labelled element up to a global phase.
UnitaryMat2 process_from_plates(const ProcessAngles& a);

/// Full interferometer T = HWP(omega4) * QWP(omega3) * U * QWP(omega2) * HWP(omega1).
UnitaryMat2 compose_interferometer(const ProbeAngles& w, const UnitaryMat2& u);

/// Haar-uniform parameters: four independent normal deviates scaled to the
/// sphere. Deterministic for a given stream.
Su2Params haar_sample(RandomStream& rng);

/// The four-element 1-design {I, iX, -iY, iZ} (unit-quaternion phases).
Ensemble ensemble_d1();

/// The twelve-element 2-design: ensemble_d1 plus (I +- iX +- iY +- iZ)/2.
Ensemble ensemble_d2();

/// K Haar-random elements drawn from `rng`.
Ensemble ensemble_haar(std::size_t k, RandomStream& rng);

/// True iff min over unit phases phi of max-entry |A - phi*B| <= tol.
bool equal_up_to_phase(const UnitaryMat2& a, const UnitaryMat2& b, double tol);

}  // namespace su2design

#endif
