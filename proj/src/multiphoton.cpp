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

#include "su2design/multiphoton.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace su2design {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;
constexpr int kMaxPhotons = 8;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

/// Fully distinguishable two-photon (1,1) distribution: each photon scatters
/// classically and the counts add.
std::vector<double> distinguishable_pair(const UnitaryMat2& t) {
    const double ph1 = std::norm(t.u11);  // H photon to output 1
    const double pv1 = std::norm(t.u12);  // V photon to output 1
    return {(1.0 - ph1) * (1.0 - pv1),            // (0,2)
            ph1 * (1.0 - pv1) + (1.0 - ph1) * pv1,  // (1,1)
            ph1 * pv1};                           // (2,0)
}

}  // namespace

Complex permanent(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << "dimension: permanent needs a square matrix, got " << m.rows() << "x" << m.cols();
        throw std::invalid_argument(os.str());
    }
    const std::size_t n = m.rows();
    if (n == 0) {
        return 1.0;
    }
    if (n > kMaxPhotons) {
        throw std::invalid_argument("dimension: permanent supports up to 8x8");
    }
    if (n == 1) {
        return m.at(0, 0);
    }

    // Ryser with Gray-code subset updates: perm = (-1)^n sum_S (-1)^|S|
    // prod_r sum_{c in S} a(r, c).
    std::vector<Complex> row_sums(n, 0.0);
    Complex total = 0.0;
    std::uint64_t gray = 0;
    int sign = 1;  // (-1)^|S| tracked incrementally, |S| starts at 0
    const std::uint64_t count = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t next_gray = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ next_gray;
        int col = 0;
        while (!((changed >> col) & 1)) {
            ++col;
        }
        const bool added = (next_gray >> col) & 1;
        for (std::size_t r = 0; r < n; ++r) {
            if (added) {
                row_sums[r] += m.at(r, col);
            } else {
                row_sums[r] -= m.at(r, col);
            }
        }
        sign = -sign;  // |S| parity flips on both add and remove
        gray = next_gray;
        Complex prod = 1.0;
        for (std::size_t r = 0; r < n; ++r) {
            prod *= row_sums[r];
        }
        total += static_cast<double>(sign) * prod;
    }
    const double outer = (n % 2 == 0) ? 1.0 : -1.0;
    return outer * total;
}

FockInput::FockInput(int n_h_, int n_v_) : n_h(n_h_), n_v(n_v_) {
    if (n_h < 0 || n_v < 0) {
        throw std::invalid_argument("invalid-parameter: photon counts must be nonnegative");
    }
    if (total() < 1) {
        throw std::invalid_argument("invalid-parameter: need at least one photon");
    }
    if (total() > kMaxPhotons) {
        throw std::invalid_argument("invalid-parameter: core supports up to 8 photons");
    }
}

OutcomeDistribution::OutcomeDistribution(int total, std::vector<double> probs)
    : total_(total), probs_(std::move(probs)) {
    if (total_ < 1 || probs_.size() != static_cast<std::size_t>(total_) + 1) {
        throw std::invalid_argument("invalid-parameter: distribution needs n+1 outcomes");
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= -1e-12) || !(p <= 1.0 + 1e-10)) {
            throw std::invalid_argument("invalid-parameter: probability out of [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "invalid-parameter: probabilities sum to " << sum << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

double OutcomeDistribution::prob(int k) const {
    if (k < 0 || k > total_) {
        throw std::invalid_argument("invalid-outcome: k out of range");
    }
    return probs_[static_cast<std::size_t>(k)];
}

std::string OutcomeDistribution::outcome_label(int k, int total) {
    return std::to_string(k) + std::to_string(total - k);
}

MismatchModel::MismatchModel(double theta_) : theta(theta_) {
    if (!(theta >= 0.0) || !(theta <= kHalfPi + 1e-12)) {
        throw std::invalid_argument("invalid-parameter: mismatch theta must lie in [0, pi/2]");
    }
}

double MismatchModel::cos2() const {
    const double c = std::cos(theta);
    return c * c;
}

double MismatchModel::sin2() const {
    const double s = std::sin(theta);
    return s * s;
}

double transition_probability(const UnitaryMat2& t, const FockInput& input, int k_out) {
    const int n = input.total();
    if (k_out < 0 || k_out > n) {
        std::ostringstream os;
        os << "invalid-outcome: outcome (" << k_out << "," << n - k_out
           << ") does not conserve the " << n << "-photon total";
        throw std::invalid_argument(os.str());
    }
    ComplexMatrix sub(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    const Complex t_arr[2][2] = {{t.u11, t.u12}, {t.u21, t.u22}};
    for (int r = 0; r < n; ++r) {
        const int out_mode = r < k_out ? 0 : 1;
        for (int c = 0; c < n; ++c) {
            const int in_mode = c < input.n_h ? 0 : 1;
            sub.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                t_arr[out_mode][in_mode];
        }
    }
    const double norm = factorial(input.n_h) * factorial(input.n_v) * factorial(k_out) *
                        factorial(n - k_out);
    const double p = std::norm(permanent(sub)) / norm;
    // Guard against roundoff pushing marginally past the ends.
    return std::min(std::max(p, 0.0), 1.0);
}

OutcomeDistribution outcome_distribution(const UnitaryMat2& t, const FockInput& input) {
    const int n = input.total();
    std::vector<double> p(static_cast<std::size_t>(n) + 1);
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        p[static_cast<std::size_t>(k)] = transition_probability(t, input, k);
        sum += p[static_cast<std::size_t>(k)];
    }
    // Unitarity makes the sum 1 up to roundoff; rescale the residue away so
    // downstream mixtures stay normalized.
    if (std::abs(sum - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "internal-consistency: outcome probabilities sum to " << sum;
        throw std::runtime_error(os.str());
    }
    for (double& v : p) {
        v /= sum;
    }
    return OutcomeDistribution(n, std::move(p));
}

double hom_coincidence(const UnitaryMat2& t) {
    return std::norm(t.u11 * t.u22 + t.u12 * t.u21);
}

OutcomeDistribution distribution_with_mismatch_2(const UnitaryMat2& t, const MismatchModel& m) {
    const OutcomeDistribution full = outcome_distribution(t, FockInput(1, 1));
    const std::vector<double> dist = distinguishable_pair(t);
    const double c2 = m.cos2();
    const double s2 = m.sin2();
    std::vector<double> p(3);
    for (int k = 0; k <= 2; ++k) {
        p[static_cast<std::size_t>(k)] = c2 * full.prob(k) + s2 * dist[static_cast<std::size_t>(k)];
    }
    return OutcomeDistribution(2, std::move(p));
}

OutcomeDistribution distribution_with_mismatch_3(const UnitaryMat2& t, const MismatchModel& m) {
    const OutcomeDistribution full = outcome_distribution(t, FockInput(2, 1));
    // Partial term: H pair stays bosonic, V photon scatters independently.
    const OutcomeDistribution pair = outcome_distribution(t, FockInput(2, 0));
    const double pv1 = std::norm(t.u12);
    std::vector<double> partial(4, 0.0);
    for (int j = 0; j <= 2; ++j) {
        partial[static_cast<std::size_t>(j + 1)] += pair.prob(j) * pv1;
        partial[static_cast<std::size_t>(j)] += pair.prob(j) * (1.0 - pv1);
    }
    const double c2 = m.cos2();
    const double s2 = m.sin2();
    std::vector<double> p(4);
    for (int k = 0; k <= 3; ++k) {
        p[static_cast<std::size_t>(k)] =
            c2 * full.prob(k) + s2 * partial[static_cast<std::size_t>(k)];
    }
    return OutcomeDistribution(3, std::move(p));
}

HomScan hom_dip_scan(const UnitaryMat2& t, double theta, double coherence_width,
                     std::vector<double> delays) {
    if (!(coherence_width > 0.0)) {
        throw std::invalid_argument("invalid-parameter: coherence width must be positive");
    }
    const MismatchModel m(theta);
    const double ideal = outcome_distribution(t, FockInput(1, 1)).prob(2);
    const double dist = distinguishable_pair(t)[2];
    HomScan scan;
    scan.delays = std::move(delays);
    scan.coherence_width = coherence_width;
    scan.theta = theta;
    scan.baseline = dist;
    scan.peak = dist + m.cos2() * (ideal - dist);
    scan.bunching.reserve(scan.delays.size());
    for (double d : scan.delays) {
        const double env = std::exp(-d * d / (2.0 * coherence_width * coherence_width));
        scan.bunching.push_back(dist + m.cos2() * (ideal - dist) * env);
    }
    scan.fitted_visibility = scan.baseline > 0.0 ? 1.0 - scan.peak / scan.baseline
                                                 : std::numeric_limits<double>::quiet_NaN();
    return scan;
}

double visibility_to_mismatch(double v) {
    const double a = std::abs(v);
    if (!(a > 0.0) || !(a <= 1.0)) {
        std::ostringstream os;
        os << "invalid-visibility: |V| = " << a << " must lie in (0, 1]";
        throw std::invalid_argument(os.str());
    }
    return std::acos(std::sqrt(a));
}

double mismatch_to_visibility(double theta) {
    const MismatchModel m(theta);
    return -m.cos2();
}

}  // namespace su2design
