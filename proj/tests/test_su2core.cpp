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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>

#include "su2design/su2core.hpp"
#include "su2design/tables.hpp"

using namespace su2design;

namespace {

const Complex kI(0.0, 1.0);

double unitarity_dev(const UnitaryMat2& u) {
    const UnitaryMat2 g = u * u.adjoint();
    return std::max({std::abs(g.u11 - 1.0), std::abs(g.u12), std::abs(g.u21),
                     std::abs(g.u22 - 1.0)});
}

}  // namespace

TEST_CASE("Su2Params enforces the unit-norm constraint") {
    CHECK_NOTHROW(Su2Params(1, 0, 0, 0));
    CHECK_NOTHROW(Su2Params(0.5, 0.5, -0.5, 0.5));
    CHECK_THROWS_AS(Su2Params(1, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(Su2Params(0, 0, 0, 0), std::invalid_argument);

    const Su2Params p = Su2Params::normalized(3, 4, 0, 0);
    CHECK(p.x1 == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(p.y1 == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(Su2Params::normalized(0, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("su2_from_params reproduces the canonical matrix form") {
    SUBCASE("identity") {
        const UnitaryMat2 u = su2_from_params(Su2Params(1, 0, 0, 0));
        CHECK(max_abs_diff(u, UnitaryMat2::identity()) == 0.0);
    }
    SUBCASE("iX") {
        const UnitaryMat2 u = su2_from_params(Su2Params(0, 0, 0, 1));
        const UnitaryMat2 ix(0.0, kI, kI, 0.0);
        CHECK(max_abs_diff(u, ix) == 0.0);
    }
    SUBCASE("(I + iX - iY + iZ)/2") {
        const UnitaryMat2 u = su2_from_params(Su2Params(0.5, 0.5, -0.5, 0.5));
        // I/2 + iX/2 - iY/2 + iZ/2 entrywise.
        const UnitaryMat2 expected(0.5 + 0.5 * kI, -0.5 + 0.5 * kI, 0.5 + 0.5 * kI,
                                   0.5 - 0.5 * kI);
        CHECK(max_abs_diff(u, expected) == 0.0);
    }
    SUBCASE("determinant is 1") {
        RandomStream rng(11);
        for (int i = 0; i < 50; ++i) {
            const UnitaryMat2 u = su2_from_params(haar_sample(rng));
            CHECK(std::abs(u.det() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("params_from_unitary inverts su2_from_params") {
    SUBCASE("identity") {
        const Su2Params p = params_from_unitary(UnitaryMat2::identity());
        CHECK(p.x1 == 1.0);
        CHECK(p.y1 == 0.0);
        CHECK(p.x2 == 0.0);
        CHECK(p.y2 == 0.0);
    }
    SUBCASE("iZ") {
        const Su2Params p = params_from_unitary(UnitaryMat2(kI, 0.0, 0.0, -kI));
        CHECK(p.x1 == 0.0);
        CHECK(p.y1 == 1.0);
        CHECK(p.x2 == 0.0);
        CHECK(p.y2 == 0.0);
    }
    SUBCASE("[[0,-1],[1,0]] is -iY") {
        const Su2Params p = params_from_unitary(UnitaryMat2(0.0, -1.0, 1.0, 0.0));
        CHECK(p.x2 == -1.0);
        CHECK(p.x1 == 0.0);
        CHECK(p.y1 == 0.0);
        CHECK(p.y2 == 0.0);
    }
    SUBCASE("global phase is rejected with the determinant in the message") {
        const UnitaryMat2 phased(kI, 0.0, 0.0, kI);  // det = -1
        CHECK_THROWS_WITH_AS(params_from_unitary(phased),
                             doctest::Contains("not-special-unitary"), std::invalid_argument);
    }
    SUBCASE("round trip on Haar samples") {
        RandomStream rng(7);
        for (int i = 0; i < 100; ++i) {
            const Su2Params p = haar_sample(rng);
            const Su2Params q = params_from_unitary(su2_from_params(p));
            CHECK(std::abs(p.x1 - q.x1) < 1e-10);
            CHECK(std::abs(p.y1 - q.y1) < 1e-10);
            CHECK(std::abs(p.x2 - q.x2) < 1e-10);
            CHECK(std::abs(p.y2 - q.y2) < 1e-10);
        }
    }
}

TEST_CASE("wave plates match their closed forms") {
    SUBCASE("hwp at 0, 90, 22.5 degrees") {
        CHECK(max_abs_diff(hwp(0), UnitaryMat2(-kI, 0.0, 0.0, kI)) < 1e-15);
        CHECK(max_abs_diff(hwp(90), UnitaryMat2(kI, 0.0, 0.0, -kI)) < 1e-15);
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(max_abs_diff(hwp(22.5), UnitaryMat2(-kI * r, -kI * r, -kI * r, kI * r)) < 1e-15);
    }
    SUBCASE("qwp at 0 and 45 degrees") {
        const double r = 1.0 / std::sqrt(2.0);
        CHECK(max_abs_diff(qwp(0), UnitaryMat2({r, -r}, 0.0, 0.0, {r, r})) < 1e-15);
        CHECK(max_abs_diff(qwp(45), UnitaryMat2(r, -kI * r, -kI * r, r)) < 1e-15);
    }
    SUBCASE("non-finite angles are rejected") {
        CHECK_THROWS_AS(hwp(std::nan("")), std::invalid_argument);
        CHECK_THROWS_AS(qwp(std::numeric_limits<double>::infinity()), std::invalid_argument);
    }
    SUBCASE("unitary within 1e-12 over a sweep, 180-degree periodic") {
        for (double a = -180.0; a <= 360.0; a += 7.5) {
            CHECK(unitarity_dev(hwp(a)) < 1e-12);
            CHECK(unitarity_dev(qwp(a)) < 1e-12);
            CHECK(max_abs_diff(hwp(a), hwp(a + 180.0)) < 1e-12);
            CHECK(max_abs_diff(qwp(a), qwp(a + 180.0)) < 1e-12);
        }
    }
    SUBCASE("two quarter waves make a half wave") {
        for (double a = -90.0; a <= 90.0; a += 12.5) {
            CHECK(max_abs_diff(qwp(a) * qwp(a), hwp(a)) < 1e-12);
        }
    }
}

TEST_CASE("process plate products realize the bundled design elements") {
    SUBCASE("named rows") {
        CHECK(equal_up_to_phase(process_from_plates({0, 90, 0}), UnitaryMat2::identity(), 1e-12));
        CHECK(equal_up_to_phase(process_from_plates({0, -45, 0}), UnitaryMat2(0.0, kI, kI, 0.0),
                                1e-12));
        CHECK(equal_up_to_phase(process_from_plates({-45, 90, -45}), UnitaryMat2(kI, 0.0, 0.0, -kI),
                                1e-12));
    }
    SUBCASE("all twelve rows, up to a global phase at 1e-9") {
        const Ensemble d2 = ensemble_d2();
        const auto& design = builtin_tables().design;
        REQUIRE(design.size() == d2.size());
        for (std::size_t i = 0; i < design.size(); ++i) {
            CAPTURE(design[i].label);
            CHECK(equal_up_to_phase(process_from_plates(design[i].angles), d2.elements[i], 1e-9));
        }
    }
}

TEST_CASE("compose_interferometer") {
    SUBCASE("trivial probes compose to iZ") {
        // hwp(0) qwp(0) qwp(0) hwp(0) = hwp(0)^3 = -hwp(0) = diag(i, -i).
        const UnitaryMat2 t = compose_interferometer({0, 0, 0, 0}, UnitaryMat2::identity());
        CHECK(max_abs_diff(t, su2_from_params(Su2Params(0, 1, 0, 0))) < 1e-15);
        CHECK(equal_up_to_phase(t, hwp(0), 1e-12));
    }
    SUBCASE("p1 probes leave |T11|^2 = x1^2 + y1^2") {
        RandomStream rng(3);
        for (int i = 0; i < 20; ++i) {
            const Su2Params p = haar_sample(rng);
            const UnitaryMat2 t = compose_interferometer({0, 0, 0, 0}, su2_from_params(p));
            CHECK(std::norm(t.u11) == doctest::Approx(p.x1 * p.x1 + p.y1 * p.y1).epsilon(1e-12));
        }
    }
    SUBCASE("q19 probes with U = I pin to a fixed matrix") {
        const UnitaryMat2 t = compose_interferometer({0, 60, 0, 60}, UnitaryMat2::identity());
        const double s32 = std::sqrt(3.0) / 2.0;
        const double s34 = std::sqrt(3.0) / 4.0;
        const UnitaryMat2 expected(0.25 * kI, {s32, s34}, {-s32, s34}, -0.25 * kI);
        CHECK(max_abs_diff(t, expected) < 1e-12);
    }
    SUBCASE("SU(2) structure: |T11| = |T22| and |T12| = |T21|") {
        RandomStream rng(5);
        for (int i = 0; i < 30; ++i) {
            const Su2Params p = haar_sample(rng);
            const ProbeAngles w{rng.uniform() * 180.0, rng.uniform() * 180.0,
                                rng.uniform() * 180.0, rng.uniform() * 180.0};
            const UnitaryMat2 t = compose_interferometer(w, su2_from_params(p));
            CHECK(std::abs(t.u11) == doctest::Approx(std::abs(t.u22)).epsilon(1e-12));
            CHECK(std::abs(t.u12) == doctest::Approx(std::abs(t.u21)).epsilon(1e-12));
            CHECK(unitarity_dev(t) < 1e-12);
        }
    }
}

TEST_CASE("haar_sample moments" * doctest::timeout(120)) {
    RandomStream rng(20260808);
    const std::size_t n = 1000000;
    double sq[4] = {0, 0, 0, 0};
    double odd[4] = {0, 0, 0, 0};
    double sum_x1y1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Su2Params p = haar_sample(rng);
        CHECK(std::abs(p.norm_sq() - 1.0) <= 1e-12);
        const double v[4] = {p.x1, p.y1, p.x2, p.y2};
        for (int j = 0; j < 4; ++j) {
            sq[j] += v[j] * v[j];
            odd[j] += v[j];
        }
        sum_x1y1 += p.x1 * p.y1;
    }
    const double inv = 1.0 / static_cast<double>(n);
    // E[v^2] = 1/4, Var(v^2) = E[v^4] - 1/16 = 1/16; 3 standard errors.
    const double se2 = 3.0 * 0.25 * std::sqrt(inv);
    for (int j = 0; j < 4; ++j) {
        CHECK(std::abs(sq[j] * inv - 0.25) < se2);
        CHECK(std::abs(sq[j] * inv - 0.25) < 0.002);
        // Odd moments vanish; sd(v) = 1/2.
        CHECK(std::abs(odd[j] * inv) < 3.0 * 0.5 * std::sqrt(inv));
        CHECK(std::abs(odd[j] * inv) < 0.002);
    }
    CHECK(std::abs(sum_x1y1 * inv) < 3.0 * 0.25 * std::sqrt(inv));
}

TEST_CASE("design ensembles") {
    const Ensemble d1 = ensemble_d1();
    const Ensemble d2 = ensemble_d2();
    SUBCASE("sizes and weights") {
        CHECK(d1.size() == 4);
        CHECK(d2.size() == 12);
        CHECK(d1.weight() == 0.25);
        CHECK(d2.weight() == doctest::Approx(1.0 / 12.0));
    }
    SUBCASE("element 2 of d1 is iX") {
        CHECK(max_abs_diff(d1.elements[1], su2_from_params(Su2Params(0, 0, 0, 1))) == 0.0);
    }
    SUBCASE("d1 is a prefix of d2") {
        for (std::size_t i = 0; i < d1.size(); ++i) {
            CHECK(max_abs_diff(d1.elements[i], d2.elements[i]) == 0.0);
        }
    }
    SUBCASE("the eight non-Pauli elements have all |params| = 1/2") {
        for (std::size_t i = 4; i < d2.size(); ++i) {
            const Su2Params p = params_from_unitary(d2.elements[i]);
            CHECK(std::abs(p.x1) == 0.5);
            CHECK(std::abs(p.y1) == 0.5);
            CHECK(std::abs(p.x2) == 0.5);
            CHECK(std::abs(p.y2) == 0.5);
        }
    }
    SUBCASE("all elements special-unitary") {
        for (const auto& u : d2.elements) {
            CHECK(std::abs(u.det() - 1.0) < 1e-14);
            CHECK(unitarity_dev(u) < 1e-14);
        }
    }
    SUBCASE("haar ensemble is seeded and labeled") {
        RandomStream rng_a(99);
        RandomStream rng_b(99);
        const Ensemble a = ensemble_haar(12, rng_a);
        const Ensemble b = ensemble_haar(12, rng_b);
        CHECK(a.label == "haar:12");
        REQUIRE(a.size() == 12);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(max_abs_diff(a.elements[i], b.elements[i]) == 0.0);
        }
        RandomStream rng_c(100);
        const Ensemble c = ensemble_haar(12, rng_c);
        CHECK(max_abs_diff(a.elements[0], c.elements[0]) > 1e-3);
    }
}

TEST_CASE("equal_up_to_phase") {
    const UnitaryMat2 id = UnitaryMat2::identity();
    const UnitaryMat2 minus(-1.0, 0.0, 0.0, -1.0);
    const UnitaryMat2 ix(0.0, kI, kI, 0.0);
    CHECK(equal_up_to_phase(id, minus, 1e-12));
    CHECK_FALSE(equal_up_to_phase(id, ix, 1e-9));
    CHECK(equal_up_to_phase(ix, su2_from_params(Su2Params(0, 0, 0, 1)), 0.0));
}

TEST_CASE("bundled CSV tables match the compiled-in tables") {
    const char* data_dir = std::getenv("SU2DESIGN_DATA");
    REQUIRE_MESSAGE(data_dir != nullptr, "SU2DESIGN_DATA must point at the data directory");
    const TableSet loaded = load_tables(data_dir);
    const TableSet& builtin = builtin_tables();

    REQUIRE(loaded.design.size() == builtin.design.size());
    for (std::size_t i = 0; i < loaded.design.size(); ++i) {
        CHECK(loaded.design[i].label == builtin.design[i].label);
        CHECK(loaded.design[i].angles.theta1 == builtin.design[i].angles.theta1);
        CHECK(loaded.design[i].angles.theta2 == builtin.design[i].angles.theta2);
        CHECK(loaded.design[i].angles.theta3 == builtin.design[i].angles.theta3);
    }
    const std::vector<const std::vector<ProbeSetting>*> loaded_groups = {&loaded.p, &loaded.q,
                                                                         &loaded.r};
    const std::vector<const std::vector<ProbeSetting>*> builtin_groups = {&builtin.p, &builtin.q,
                                                                          &builtin.r};
    for (std::size_t g = 0; g < loaded_groups.size(); ++g) {
        REQUIRE(loaded_groups[g]->size() == builtin_groups[g]->size());
        for (std::size_t i = 0; i < loaded_groups[g]->size(); ++i) {
            const ProbeSetting& a = (*loaded_groups[g])[i];
            const ProbeSetting& b = (*builtin_groups[g])[i];
            CHECK(a.label == b.label);
            CHECK(a.angles.omega1 == b.angles.omega1);
            CHECK(a.angles.omega2 == b.angles.omega2);
            CHECK(a.angles.omega3 == b.angles.omega3);
            CHECK(a.angles.omega4 == b.angles.omega4);
        }
    }
    CHECK(find_probe(loaded, "q19") != nullptr);
    CHECK(find_probe(loaded, "zz") == nullptr);
    CHECK_THROWS_AS(load_tables("/nonexistent-tables-dir"), std::runtime_error);
}
