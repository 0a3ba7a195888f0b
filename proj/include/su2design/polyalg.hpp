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

#ifndef SU2DESIGN_POLYALG_HPP
#define SU2DESIGN_POLYALG_HPP

#include <map>
#include <string>
#include <vector>

#include "su2design/rational.hpp"
#include "su2design/su2core.hpp"

namespace su2design {

/// Exponents (a, b, c, d) of the monomial x1^a y1^b x2^c y2^d.
struct Exponents {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;

    int total() const { return x1 + y1 + x2 + y2; }

    auto operator<=>(const Exponents&) const = default;
};

std::string monomial_str(const Exponents& e);

/// Real polynomial in (x1, y1, x2, y2) as a sparse exponents -> coefficient
/// map. Zero coefficients are never stored.
class PolynomialR4 {
  public:
    PolynomialR4() = default;

    static PolynomialR4 constant(double c);
    static PolynomialR4 monomial(const Exponents& e, double coeff = 1.0);

    void add_term(const Exponents& e, double coeff);

    double coeff(const Exponents& e) const;
    const std::map<Exponents, double>& terms() const { return terms_; }

    bool empty() const { return terms_.empty(); }
    int degree() const;

    double evaluate(const Su2Params& p) const;
    double evaluate(double x1, double y1, double x2, double y2) const;

    PolynomialR4 operator+(const PolynomialR4& o) const;
    PolynomialR4 operator-(const PolynomialR4& o) const;
    PolynomialR4 operator*(const PolynomialR4& o) const;
    PolynomialR4 operator*(double s) const;

    /// Drops terms with |coefficient| <= threshold.
    void prune(double threshold);

    /// Human-readable form, terms in descending exponent order.
    std::string str() const;

  private:
    std::map<Exponents, double> terms_;
};

/// JSON form: a list of {"exponents": [a,b,c,d], "coeff": c} objects.
std::string polynomial_to_json(const PolynomialR4& f);
PolynomialR4 polynomial_from_json(const std::string& json_text);

/// The bundled monomial bases: 9 entries for degree 2, 25 for degree 4, in
/// the bundled-table order (all monomials of that degree with y2-power <= 1).
struct MonomialBasis {
    int degree;
    std::vector<Exponents> monomials;
};

const MonomialBasis& monomial_basis(int degree);

/// All homogeneous monomials of the given total degree, in descending
/// lexicographic exponent order ((d,0,0,0) first).
std::vector<Exponents> monomials_of_degree(int degree);

enum class ProbeKind { one_photon, two_photon };

/// Expands the physical probe polynomial for the given wave-plate settings:
/// |T11|^2 (degree 2) or |T11 T22 + T12 T21|^2 (degree 4), with U symbolic in
/// (x1, y1, x2, y2) and the probe plates numeric. The result is homogeneous.
/// Throws on imaginary residue above 1e-10.
PolynomialR4 expand_probe_polynomial(const ProbeAngles& w, ProbeKind kind);

/// Result of rewriting a polynomial with the sphere constraint: y2-powers >= 2
/// eliminated via y2^2 = 1 - x1^2 - y1^2 - x2^2. A degree-4 input generally
/// leaves basis-monomial terms, plain degree-2 terms and a constant.
struct ReducedPolynomial {
    int degree;
    PolynomialR4 polynomial;                  // the full reduced form
    std::vector<double> basis_coefficients;   // over monomial_basis(degree)
    std::vector<double> degree2_coefficients; // over monomial_basis(2); degree 4 only
    double constant;
};

/// Requires an even polynomial of degree <= `degree` with degree in {2, 4};
/// otherwise throws an unsupported-degree error.
ReducedPolynomial reduce_mod_constraint(const PolynomialR4& f, int degree);

/// Physical-completeness matrix: row i holds the coefficients of setting i's
/// expanded probe polynomial on the degree-2t basis monomials (the expansion
/// is homogeneous, so the coefficients are read off directly). Rank by
/// one-sided Jacobi SVD with threshold 1e-8 * sigma_max.
struct BasisMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<double> singular_values;  // descending
    int rank;
};

BasisMatrix basis_matrix(const std::vector<ProbeAngles>& settings, ProbeKind kind);

/// Singular values (descending) of a dense rows x cols matrix, rows >= cols.
std::vector<double> singular_values(const std::vector<std::vector<double>>& m);

/// Moment of the uniform distribution on the unit 3-sphere. Zero for any odd
/// exponent; otherwise prod (e_i - 1)!! / prod_{j<K} (4 + 2j) with K half the
/// total degree.
double haar_moment(const Exponents& e);
Rational haar_moment_rational(const Exponents& e);

/// Haar average of a polynomial, term by term.
double haar_average(const PolynomialR4& f);

/// Uniform ensemble average of f over the element parameters.
double ensemble_average(const PolynomialR4& f, const Ensemble& ensemble);

/// One monomial's ensemble-vs-Haar comparison.
struct MonomialComparison {
    Exponents exponents;
    double ensemble_average;
    double haar_average;
    double deviation;
};

/// Moment-matching report over all homogeneous degree-2t monomials.
struct DesignTestReport {
    int t;
    double tolerance;
    bool exact;    // averages were evaluated in exact rational arithmetic
    bool passed;   // max deviation <= tolerance
    double max_deviation;
    Rational max_deviation_rational;  // meaningful when exact
    Exponents witness;                // first monomial attaining the max
    std::vector<MonomialComparison> comparisons;
};

/// Compares ensemble and Haar averages over every homogeneous degree-2t
/// monomial (10 / 35 / 84 for t = 1 / 2 / 3). Ensembles whose parameters are
/// exact half-integers (the bundled designs) are evaluated in rational
/// arithmetic, making the verdict exact.
DesignTestReport design_test(const Ensemble& ensemble, int t, double tolerance);

}  // namespace su2design

#endif
