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

#ifndef SU2DESIGN_MULTIPHOTON_HPP
#define SU2DESIGN_MULTIPHOTON_HPP

#include <complex>
#include <string>
#include <vector>

#include "su2design/su2core.hpp"

namespace su2design {

/// Small dense complex matrix, only as large as permanents need.
class ComplexMatrix {
  public:
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Complex& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  private:
    std::size_t rows_, cols_;
    std::vector<Complex> a_;
};

/// Exact permanent by Ryser's formula with Gray-code updates. Square matrices
/// up to 8x8 (the core's supported photon numbers); the empty matrix gives 1.
Complex permanent(const ComplexMatrix& m);

/// Photon counts in the two input modes.
struct FockInput {
    int n_h;
    int n_v;

    FockInput(int n_h, int n_v);

    int total() const { return n_h + n_v; }
};

/// Normalized probabilities over outcomes (k, n-k) for fixed total n.
/// Index k counts photons in the first output mode.
class OutcomeDistribution {
  public:
    /// Validates: probabilities in [0,1], sum 1 within 1e-10.
    OutcomeDistribution(int total, std::vector<double> probs);

    int total() const { return total_; }
    std::size_t size() const { return probs_.size(); }

    /// P(outcome (k, n-k)).
    double prob(int k) const;

    const std::vector<double>& probs() const { return probs_; }

    /// Conventional two-digit outcome name, e.g. "21" for (2,1).
    static std::string outcome_label(int k, int total);

  private:
    int total_;
    std::vector<double> probs_;
};

/// Single-parameter photon-distinguishability model; theta in [0, pi/2].
struct MismatchModel {
    double theta;

    explicit MismatchModel(double theta);

    double cos2() const;
    double sin2() const;
};

/// Bosonic transition probability |perm(T_sub)|^2 / (n_h! n_v! k! (n-k)!),
/// where T_sub repeats input columns and output rows by multiplicity.
double transition_probability(const UnitaryMat2& t, const FockInput& input, int k_out);

/// All outcomes (k, n-k) of `input` through `t`; sums to 1 by unitarity.
OutcomeDistribution outcome_distribution(const UnitaryMat2& t, const FockInput& input);

/// Two-photon coincidence probability |T11 T22 + T12 T21|^2.
double hom_coincidence(const UnitaryMat2& t);

/// Two-photon (1,1)-input distribution under partial distinguishability:
/// cos^2(theta) times the interfering distribution plus sin^2(theta) times the
/// fully distinguishable one.
OutcomeDistribution distribution_with_mismatch_2(const UnitaryMat2& t, const MismatchModel& m);

/// Three-photon (2,1)-input distribution under partial distinguishability.
/// The V photon decoheres from the (mutually identical) H pair: the partial
/// term is the H-pair distribution convolved with the single-V distribution.
OutcomeDistribution distribution_with_mismatch_3(const UnitaryMat2& t, const MismatchModel& m);

/// Hong-Ou-Mandel delay scan of the bunching probability P(2,0).
struct HomScan {
    std::vector<double> delays;
    std::vector<double> bunching;
    double coherence_width;
    double theta;
    /// Distinguishable-limit bunching (the |delay| >> width baseline).
    double baseline;
    /// Zero-delay bunching at the scan's mismatch.
    double peak;
    /// Gaussian-model visibility 1 - peak/baseline; -1 for theta = 0 at a
    /// balanced splitter.
    double fitted_visibility;
};

/// Bunching interpolates between the mismatch-theta value at zero delay and
/// the distinguishable value far out, with envelope exp(-delay^2 / 2 width^2).
HomScan hom_dip_scan(const UnitaryMat2& t, double theta, double coherence_width,
                     std::vector<double> delays);

/// theta = arccos(sqrt(|v|)); requires 0 < |v| <= 1.
double visibility_to_mismatch(double v);

/// Scan-model visibility -cos^2(theta) of a mismatch-theta HOM peak.
double mismatch_to_visibility(double theta);

}  // namespace su2design

#endif
