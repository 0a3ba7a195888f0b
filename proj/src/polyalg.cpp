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

#include "su2design/polyalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace su2design {

namespace {

/// Coefficients below this are trigonometric roundoff in plate-matrix
/// products, two orders under any genuine coefficient seen in the tables.
constexpr double kExpansionPrune = 1e-12;
constexpr double kImagResidueTol = 1e-10;
constexpr double kRankThreshold = 1e-8;

}  // namespace

std::string monomial_str(const Exponents& e) {
    static const char* names[4] = {"x1", "y1", "x2", "y2"};
    const int exps[4] = {e.x1, e.y1, e.x2, e.y2};
    std::string out;
    for (int i = 0; i < 4; ++i) {
        if (exps[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += names[i];
        if (exps[i] > 1) {
            out += "^" + std::to_string(exps[i]);
        }
    }
    return out.empty() ? "1" : out;
}

PolynomialR4 PolynomialR4::constant(double c) {
    PolynomialR4 f;
    f.add_term({0, 0, 0, 0}, c);
    return f;
}

PolynomialR4 PolynomialR4::monomial(const Exponents& e, double coeff) {
    PolynomialR4 f;
    f.add_term(e, coeff);
    return f;
}

void PolynomialR4::add_term(const Exponents& e, double coeff) {
    if (e.x1 < 0 || e.y1 < 0 || e.x2 < 0 || e.y2 < 0) {
        throw std::invalid_argument("invalid-parameter: negative exponent");
    }
    const auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (coeff != 0.0) {
            terms_.emplace(e, coeff);
        }
        return;
    }
    it->second += coeff;
    if (it->second == 0.0) {
        terms_.erase(it);
    }
}

double PolynomialR4::coeff(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

int PolynomialR4::degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, e.total());
    }
    return d;
}

double PolynomialR4::evaluate(const Su2Params& p) const {
    return evaluate(p.x1, p.y1, p.x2, p.y2);
}

double PolynomialR4::evaluate(double x1, double y1, double x2, double y2) const {
    auto ipow = [](double v, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) {
            r *= v;
        }
        return r;
    };
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        sum += c * ipow(x1, e.x1) * ipow(y1, e.y1) * ipow(x2, e.x2) * ipow(y2, e.y2);
    }
    return sum;
}

PolynomialR4 PolynomialR4::operator+(const PolynomialR4& o) const {
    PolynomialR4 out = *this;
    for (const auto& [e, c] : o.terms_) {
        out.add_term(e, c);
    }
    return out;
}

PolynomialR4 PolynomialR4::operator-(const PolynomialR4& o) const {
    PolynomialR4 out = *this;
    for (const auto& [e, c] : o.terms_) {
        out.add_term(e, -c);
    }
    return out;
}

PolynomialR4 PolynomialR4::operator*(const PolynomialR4& o) const {
    PolynomialR4 out;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            out.add_term({ea.x1 + eb.x1, ea.y1 + eb.y1, ea.x2 + eb.x2, ea.y2 + eb.y2}, ca * cb);
        }
    }
    return out;
}

PolynomialR4 PolynomialR4::operator*(double s) const {
    PolynomialR4 out;
    if (s == 0.0) {
        return out;
    }
    for (const auto& [e, c] : terms_) {
        out.terms_.emplace(e, c * s);
    }
    return out;
}

void PolynomialR4::prune(double threshold) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= threshold) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

std::string PolynomialR4::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    // Descending exponent order reads like the usual mathematical layout.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const double c = it->second;
        if (first) {
            if (c < 0) {
                os << "-";
            }
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const double a = std::abs(c);
        const std::string mono = monomial_str(it->first);
        if (mono == "1") {
            os << a;
        } else if (a == 1.0) {
            os << mono;
        } else {
            os << a << "*" << mono;
        }
    }
    return os.str();
}

std::string polynomial_to_json(const PolynomialR4& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) {
        arr.push_back({{"exponents", {e.x1, e.y1, e.x2, e.y2}}, {"coeff", c}});
    }
    return arr.dump();
}

PolynomialR4 polynomial_from_json(const std::string& json_text) {
    const auto arr = nlohmann::json::parse(json_text);
    if (!arr.is_array()) {
        throw std::invalid_argument("invalid-parameter: polynomial JSON must be a list");
    }
    PolynomialR4 f;
    for (const auto& item : arr) {
        const auto& e = item.at("exponents");
        if (!e.is_array() || e.size() != 4) {
            throw std::invalid_argument("invalid-parameter: exponents must be [a,b,c,d]");
        }
        f.add_term({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()},
                   item.at("coeff").get<double>());
    }
    return f;
}

const MonomialBasis& monomial_basis(int degree) {
    static const MonomialBasis basis2{
        2,
        {{2, 0, 0, 0},   // x1^2
         {1, 0, 1, 0},   // x1 x2
         {0, 0, 2, 0},   // x2^2
         {1, 1, 0, 0},   // x1 y1
         {1, 0, 0, 1},   // x1 y2
         {0, 1, 1, 0},   // x2 y1
         {0, 0, 1, 1},   // x2 y2
         {0, 2, 0, 0},   // y1^2
         {0, 1, 0, 1}},  // y1 y2
    };
    static const MonomialBasis basis4{
        4,
        {{4, 0, 0, 0},   // x1^4
         {3, 0, 1, 0},   // x1^3 x2
         {2, 0, 2, 0},   // x1^2 x2^2
         {1, 0, 3, 0},   // x1 x2^3
         {0, 0, 4, 0},   // x2^4
         {3, 1, 0, 0},   // x1^3 y1
         {2, 1, 1, 0},   // x1^2 x2 y1
         {1, 1, 2, 0},   // x1 x2^2 y1
         {0, 1, 3, 0},   // x2^3 y1
         {3, 0, 0, 1},   // x1^3 y2
         {2, 0, 1, 1},   // x1^2 x2 y2
         {1, 0, 2, 1},   // x1 x2^2 y2
         {0, 0, 3, 1},   // x2^3 y2
         {2, 2, 0, 0},   // x1^2 y1^2
         {1, 2, 1, 0},   // x1 x2 y1^2
         {0, 2, 2, 0},   // x2^2 y1^2
         {2, 1, 0, 1},   // x1^2 y1 y2
         {1, 1, 1, 1},   // x1 x2 y1 y2
         {0, 1, 2, 1},   // x2^2 y1 y2
         {1, 3, 0, 0},   // x1 y1^3
         {1, 2, 0, 1},   // x1 y1^2 y2
         {0, 3, 1, 0},   // x2 y1^3
         {0, 2, 1, 1},   // x2 y1^2 y2
         {0, 4, 0, 0},   // y1^4
         {0, 3, 0, 1}},  // y1^3 y2
    };
    if (degree == 2) {
        return basis2;
    }
    if (degree == 4) {
        return basis4;
    }
    throw std::invalid_argument("unsupported-degree: monomial bases exist for degrees 2 and 4");
}

std::vector<Exponents> monomials_of_degree(int degree) {
    if (degree < 0) {
        throw std::invalid_argument("unsupported-degree: negative degree");
    }
    std::vector<Exponents> out;
    for (int a = degree; a >= 0; --a) {
        for (int b = degree - a; b >= 0; --b) {
            for (int c = degree - a - b; c >= 0; --c) {
                out.push_back({a, b, c, degree - a - b - c});
            }
        }
    }
    // Descending lexicographic order: (degree,0,0,0) first.
    std::sort(out.begin(), out.end(), [](const Exponents& l, const Exponents& r) { return r < l; });
    return out;
}

// ---------------------------------------------------------------------------
// Symbolic expansion machinery (file local).

namespace {

/// Polynomial in (x1, y1, x2, y2) with complex coefficients; just enough for
/// products of interferometer entries.
class ComplexPoly {
  public:
    ComplexPoly() = default;

    static ComplexPoly term(const Exponents& e, Complex c) {
        ComplexPoly f;
        f.add(e, c);
        return f;
    }

    void add(const Exponents& e, Complex c) {
        if (c == Complex(0.0, 0.0)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex(0.0, 0.0)) {
                terms_.erase(it);
            }
        }
    }

    ComplexPoly operator+(const ComplexPoly& o) const {
        ComplexPoly out = *this;
        for (const auto& [e, c] : o.terms_) {
            out.add(e, c);
        }
        return out;
    }

    ComplexPoly operator*(const ComplexPoly& o) const {
        ComplexPoly out;
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                out.add({ea.x1 + eb.x1, ea.y1 + eb.y1, ea.x2 + eb.x2, ea.y2 + eb.y2}, ca * cb);
            }
        }
        return out;
    }

    ComplexPoly operator*(Complex s) const {
        ComplexPoly out;
        for (const auto& [e, c] : terms_) {
            out.add(e, c * s);
        }
        return out;
    }

    ComplexPoly conj() const {
        ComplexPoly out;
        for (const auto& [e, c] : terms_) {
            out.add(e, std::conj(c));
        }
        return out;
    }

    /// Real part with a consistency check on leftover imaginary parts.
    PolynomialR4 real_checked() const {
        PolynomialR4 out;
        for (const auto& [e, c] : terms_) {
            if (std::abs(c.imag()) > kImagResidueTol) {
                std::ostringstream os;
                os << "internal-consistency: imaginary residue " << c.imag() << " on "
                   << monomial_str(e);
                throw std::runtime_error(os.str());
            }
            out.add_term(e, c.real());
        }
        out.prune(kExpansionPrune);
        return out;
    }

  private:
    std::map<Exponents, Complex> terms_;
};

struct SymbolicMat2 {
    ComplexPoly e11, e12, e21, e22;
};

SymbolicMat2 numeric_times(const UnitaryMat2& a, const SymbolicMat2& b) {
    return {b.e11 * a.u11 + b.e21 * a.u12, b.e12 * a.u11 + b.e22 * a.u12,
            b.e11 * a.u21 + b.e21 * a.u22, b.e12 * a.u21 + b.e22 * a.u22};
}

SymbolicMat2 times_numeric(const SymbolicMat2& a, const UnitaryMat2& b) {
    return {a.e11 * b.u11 + a.e12 * b.u21, a.e11 * b.u12 + a.e12 * b.u22,
            a.e21 * b.u11 + a.e22 * b.u21, a.e21 * b.u12 + a.e22 * b.u22};
}

SymbolicMat2 symbolic_interferometer(const ProbeAngles& w) {
    const Complex i(0.0, 1.0);
    SymbolicMat2 u{
        ComplexPoly::term({1, 0, 0, 0}, 1.0) + ComplexPoly::term({0, 1, 0, 0}, i),
        ComplexPoly::term({0, 0, 1, 0}, 1.0) + ComplexPoly::term({0, 0, 0, 1}, i),
        ComplexPoly::term({0, 0, 1, 0}, -1.0) + ComplexPoly::term({0, 0, 0, 1}, i),
        ComplexPoly::term({1, 0, 0, 0}, 1.0) + ComplexPoly::term({0, 1, 0, 0}, -i),
    };
    SymbolicMat2 t = times_numeric(u, qwp(w.omega2) * hwp(w.omega1));
    return numeric_times(hwp(w.omega4) * qwp(w.omega3), t);
}

}  // namespace

PolynomialR4 expand_probe_polynomial(const ProbeAngles& w, ProbeKind kind) {
    const SymbolicMat2 t = symbolic_interferometer(w);
    if (kind == ProbeKind::one_photon) {
        return (t.e11 * t.e11.conj()).real_checked();
    }
    const ComplexPoly perm = t.e11 * t.e22 + t.e12 * t.e21;
    return (perm * perm.conj()).real_checked();
}

ReducedPolynomial reduce_mod_constraint(const PolynomialR4& f, int degree) {
    if (degree != 2 && degree != 4) {
        throw std::invalid_argument("unsupported-degree: reduction targets degree 2 or 4");
    }
    if (f.degree() > degree) {
        std::ostringstream os;
        os << "unsupported-degree: polynomial has degree " << f.degree() << " > " << degree;
        throw std::invalid_argument(os.str());
    }
    for (const auto& [e, c] : f.terms()) {
        if (e.total() % 2 != 0) {
            throw std::invalid_argument(
                "unsupported-degree: reduction expects an even polynomial");
        }
    }

    // Substitute y2^2 = 1 - x1^2 - y1^2 - x2^2 until no y2-power >= 2 remains.
    PolynomialR4 work = f;
    while (true) {
        bool found = false;
        Exponents target;
        double coeff = 0.0;
        for (const auto& [e, c] : work.terms()) {
            if (e.y2 >= 2) {
                target = e;
                coeff = c;
                found = true;
                break;
            }
        }
        if (!found) {
            break;
        }
        const Exponents base{target.x1, target.y1, target.x2, target.y2 - 2};
        work.add_term(target, -coeff);
        work.add_term(base, coeff);
        work.add_term({base.x1 + 2, base.y1, base.x2, base.y2}, -coeff);
        work.add_term({base.x1, base.y1 + 2, base.x2, base.y2}, -coeff);
        work.add_term({base.x1, base.y1, base.x2 + 2, base.y2}, -coeff);
    }

    ReducedPolynomial out;
    out.degree = degree;
    out.polynomial = work;
    out.constant = work.coeff({0, 0, 0, 0});
    const MonomialBasis& basis = monomial_basis(degree);
    out.basis_coefficients.reserve(basis.monomials.size());
    for (const auto& e : basis.monomials) {
        out.basis_coefficients.push_back(work.coeff(e));
    }
    if (degree == 4) {
        const MonomialBasis& quad = monomial_basis(2);
        out.degree2_coefficients.reserve(quad.monomials.size());
        for (const auto& e : quad.monomials) {
            out.degree2_coefficients.push_back(work.coeff(e));
        }
    }
    return out;
}

std::vector<double> singular_values(const std::vector<std::vector<double>>& m) {
    if (m.empty()) {
        return {};
    }
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    for (const auto& r : m) {
        if (r.size() != cols) {
            throw std::invalid_argument("invalid-parameter: ragged matrix");
        }
    }
    // One-sided Jacobi on columns (Hestenes): rotate column pairs until all
    // are mutually orthogonal; singular values are the column norms.
    std::vector<std::vector<double>> a(cols, std::vector<double>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            a[c][r] = m[r][c];
        }
    }
    auto dot = [rows](const std::vector<double>& u, const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            s += u[i] * v[i];
        }
        return s;
    };
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double alpha = dot(a[p], a[p]);
                const double beta = dot(a[q], a[q]);
                const double gamma = dot(a[p], a[q]);
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || gamma == 0.0) {
                    continue;
                }
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < rows; ++i) {
                    const double vp = a[p][i];
                    const double vq = a[q][i];
                    a[p][i] = c * vp - s * vq;
                    a[q][i] = s * vp + c * vq;
                }
            }
        }
        if (converged) {
            break;
        }
    }
    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        sv[c] = std::sqrt(dot(a[c], a[c]));
    }
    std::sort(sv.rbegin(), sv.rend());
    return sv;
}

BasisMatrix basis_matrix(const std::vector<ProbeAngles>& settings, ProbeKind kind) {
    const MonomialBasis& basis = monomial_basis(kind == ProbeKind::one_photon ? 2 : 4);
    BasisMatrix out;
    out.rows.reserve(settings.size());
    for (const auto& w : settings) {
        const PolynomialR4 f = expand_probe_polynomial(w, kind);
        std::vector<double> row;
        row.reserve(basis.monomials.size());
        for (const auto& e : basis.monomials) {
            row.push_back(f.coeff(e));
        }
        out.rows.push_back(std::move(row));
    }
    out.singular_values = singular_values(out.rows);
    out.rank = 0;
    if (!out.singular_values.empty()) {
        const double cutoff = kRankThreshold * out.singular_values.front();
        for (double s : out.singular_values) {
            if (s > cutoff) {
                ++out.rank;
            }
        }
    }
    return out;
}

Rational haar_moment_rational(const Exponents& e) {
    const int exps[4] = {e.x1, e.y1, e.x2, e.y2};
    int total = 0;
    for (int v : exps) {
        if (v < 0) {
            throw std::invalid_argument("invalid-parameter: negative exponent");
        }
        if (v % 2 != 0) {
            return Rational(0);
        }
        total += v;
    }
    Rational num(1);
    for (int v : exps) {
        for (int k = v - 1; k >= 2; k -= 2) {
            num *= Rational(k);
        }
    }
    Rational den(1);
    const int half = total / 2;
    for (int j = 0; j < half; ++j) {
        den *= Rational(4 + 2 * j);
    }
    return num / den;
}

double haar_moment(const Exponents& e) {
    return haar_moment_rational(e).to_double();
}

double haar_average(const PolynomialR4& f) {
    double sum = 0.0;
    for (const auto& [e, c] : f.terms()) {
        sum += c * haar_moment(e);
    }
    return sum;
}

double ensemble_average(const PolynomialR4& f, const Ensemble& ensemble) {
    if (ensemble.size() == 0) {
        throw std::invalid_argument("invalid-parameter: empty ensemble");
    }
    double sum = 0.0;
    for (const auto& u : ensemble.elements) {
        sum += f.evaluate(params_from_unitary(u));
    }
    return sum / static_cast<double>(ensemble.size());
}

namespace {

/// Recognizes parameters that are exact half-integers (the bundled designs
/// live on {0, +-1/2, +-1}); bit-exact test, no tolerance.
bool exact_half_integer_params(const Su2Params& p, std::array<int, 4>& numerators) {
    const double vals[4] = {p.x1, p.y1, p.x2, p.y2};
    for (int i = 0; i < 4; ++i) {
        const double twice = 2.0 * vals[i];
        if (twice != std::nearbyint(twice) || std::abs(twice) > 2.0) {
            return false;
        }
        numerators[static_cast<std::size_t>(i)] = static_cast<int>(twice);
    }
    return true;
}

}  // namespace

DesignTestReport design_test(const Ensemble& ensemble, int t, double tolerance) {
    if (t < 1 || t > 3) {
        throw std::invalid_argument("unsupported-degree: design test supports t in {1, 2, 3}");
    }
    if (ensemble.size() == 0) {
        throw std::invalid_argument("invalid-parameter: empty ensemble");
    }

    std::vector<std::array<int, 4>> exact_params;
    bool exact = true;
    std::vector<Su2Params> params;
    params.reserve(ensemble.size());
    for (const auto& u : ensemble.elements) {
        params.push_back(params_from_unitary(u));
        std::array<int, 4> nums{};
        if (exact && exact_half_integer_params(params.back(), nums)) {
            exact_params.push_back(nums);
        } else {
            exact = false;
        }
    }

    DesignTestReport report;
    report.t = t;
    report.tolerance = tolerance;
    report.exact = exact;
    report.max_deviation = 0.0;
    report.max_deviation_rational = Rational(0);
    report.witness = {0, 0, 0, 0};

    const auto monomials = monomials_of_degree(2 * t);
    report.comparisons.reserve(monomials.size());
    bool have_witness = false;
    Rational max_dev_rat(0);
    for (const auto& e : monomials) {
        MonomialComparison cmp;
        cmp.exponents = e;
        if (exact) {
            Rational sum(0);
            for (const auto& nums : exact_params) {
                Rational v(1);
                const int exps[4] = {e.x1, e.y1, e.x2, e.y2};
                for (int i = 0; i < 4; ++i) {
                    v *= Rational(nums[static_cast<std::size_t>(i)], 2).pow(
                        static_cast<unsigned>(exps[i]));
                }
                sum += v;
            }
            const Rational ens = sum / Rational(static_cast<std::int64_t>(ensemble.size()));
            const Rational haar = haar_moment_rational(e);
            const Rational dev = (ens - haar).abs();
            cmp.ensemble_average = ens.to_double();
            cmp.haar_average = haar.to_double();
            cmp.deviation = dev.to_double();
            if (!have_witness || max_dev_rat < dev) {
                max_dev_rat = dev;
                report.witness = e;
                have_witness = true;
            }
        } else {
            double sum = 0.0;
            for (const auto& p : params) {
                sum += PolynomialR4::monomial(e).evaluate(p);
            }
            cmp.ensemble_average = sum / static_cast<double>(ensemble.size());
            cmp.haar_average = haar_moment(e);
            cmp.deviation = std::abs(cmp.ensemble_average - cmp.haar_average);
            if (!have_witness || cmp.deviation > report.max_deviation) {
                report.witness = e;
                have_witness = true;
            }
        }
        report.max_deviation = std::max(report.max_deviation, cmp.deviation);
        report.comparisons.push_back(cmp);
    }
    if (exact) {
        report.max_deviation_rational = max_dev_rat;
        report.max_deviation = max_dev_rat.to_double();
    }
    report.passed = report.max_deviation <= tolerance;
    return report;
}

}  // namespace su2design
