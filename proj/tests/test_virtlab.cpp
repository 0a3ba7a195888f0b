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
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "su2design/virtlab.hpp"

using namespace su2design;

namespace {

OutcomeDistribution dist2(double p20, double p11, double p02) {
    return OutcomeDistribution(2, {p02, p11, p20});
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path fresh_out_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("su2design_test_" + tag);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("simulate_counts") {
    SUBCASE("zero mean gives all zeros") {
        RandomStream rng(1);
        const CountRecord rec = simulate_counts(dist2(0.25, 0.5, 0.25), 0.0, rng);
        CHECK(rec.total() == 0);
    }
    SUBCASE("degenerate distribution only populates its outcome") {
        RandomStream rng(2);
        const CountRecord rec = simulate_counts(dist2(0.0, 1.0, 0.0), 1e6, rng);
        CHECK(rec.counts[0] == 0);
        CHECK(rec.counts[2] == 0);
        CHECK(rec.counts[1] > 900000);
    }
    SUBCASE("empirical frequencies within 5 sigma at mean 1e6") {
        RandomStream rng(3);
        const OutcomeDistribution d = dist2(0.3, 0.5, 0.2);
        const CountRecord rec = simulate_counts(d, 1e6, rng);
        for (std::size_t k = 0; k < 3; ++k) {
            const double lambda = 1e6 * d.probs()[k];
            CHECK(std::abs(static_cast<double>(rec.counts[k]) - lambda) <
                  5.0 * std::sqrt(lambda));
        }
    }
    SUBCASE("poisson sampler summary statistics") {
        RandomStream rng(4);
        for (const double lambda : {0.5, 7.0, 123.0, 20000.0}) {
            double sum = 0.0, sum_sq = 0.0;
            const int n = 4000;
            for (int i = 0; i < n; ++i) {
                const double v = static_cast<double>(rng.poisson(lambda));
                sum += v;
                sum_sq += v * v;
            }
            const double mean = sum / n;
            const double var = sum_sq / n - mean * mean;
            CHECK(std::abs(mean - lambda) < 5.0 * std::sqrt(lambda / n));
            CHECK(std::abs(var - lambda) < 0.2 * lambda + 1.0);
        }
    }
}

TEST_CASE("apply_loss") {
    const OutcomeDistribution d = dist2(0.25, 0.5, 0.25);
    SUBCASE("trivial loss returns the distribution") {
        const auto w = apply_loss(d, LossModel());
        CHECK(w[2] == 0.25);
        CHECK(w[1] == 0.5);
        CHECK(w[0] == 0.25);
    }
    SUBCASE("eps3 = 1/2 scales (2,0) by 1/4, (1,1) by 1/2, (0,2) by 1") {
        const auto w = apply_loss(d, LossModel(0.5));
        CHECK(w[2] == doctest::Approx(0.25 * 0.25));
        CHECK(w[1] == doctest::Approx(0.5 * 0.5));
        CHECK(w[0] == doctest::Approx(0.25 * 1.0));
    }
    SUBCASE("degenerate outcomes keep zero weight") {
        const auto w = apply_loss(dist2(0.0, 1.0, 0.0), LossModel(0.7));
        CHECK(w[2] == 0.0);
        CHECK(w[0] == 0.0);
    }
    SUBCASE("detector efficiencies multiply per outcome") {
        const auto w = apply_loss(d, LossModel(1.0, {0.5, 1.0, 0.25}));
        CHECK(w[0] == doctest::Approx(0.125));
        CHECK(w[1] == doctest::Approx(0.5));
        CHECK(w[2] == doctest::Approx(0.0625));
    }
    SUBCASE("loss model validation") {
        CHECK_THROWS_AS(LossModel(0.0), std::invalid_argument);
        CHECK_THROWS_AS(LossModel(1.5), std::invalid_argument);
        CHECK_THROWS_AS(LossModel(1.0, {1.0, -0.5, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(apply_loss(d, LossModel(1.0, {1.0, 1.0})), std::invalid_argument);
    }
}

TEST_CASE("calibrate_loss") {
    SUBCASE("balanced counts give eps3 = 1") {
        const CountRecord rec{2, {160, 40, 160}};
        CHECK(calibrate_loss(rec).eps3 == 1.0);
    }
    SUBCASE("90 vs 160 gives 0.75") {
        const CountRecord rec{2, {160, 0, 90}};
        const LossCalibration cal = calibrate_loss(rec);
        CHECK(cal.eps3 == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(cal.std_error > 0.0);
    }
    SUBCASE("missing C(0,2) is calibration-impossible") {
        const CountRecord rec{2, {0, 10, 50}};
        CHECK_THROWS_WITH_AS(calibrate_loss(rec), doctest::Contains("calibration-impossible"),
                             std::invalid_argument);
    }
    SUBCASE("round trip: simulate with eps3 = 0.8, calibrate within 3 sigma") {
        RandomStream rng(5);
        const OutcomeDistribution d = dist2(0.25, 0.5, 0.25);  // P(2,0) = P(0,2)
        const LossModel loss(0.8);
        const auto w = apply_loss(d, loss);
        CountRecord rec{2, {0, 0, 0}};
        for (std::size_t k = 0; k < 3; ++k) {
            rec.counts[k] = rng.poisson(1e6 * w[k]);
        }
        const LossCalibration cal = calibrate_loss(rec);
        CHECK(std::abs(cal.eps3 - 0.8) < 3.0 * cal.std_error);
    }
}

TEST_CASE("correct_counts") {
    SUBCASE("trivial loss normalizes the counts") {
        const CountRecord rec{2, {100, 200, 100}};
        const OutcomeDistribution d = correct_counts(rec, LossModel());
        CHECK(d.prob(0) == 0.25);
        CHECK(d.prob(1) == 0.5);
        CHECK(d.prob(2) == 0.25);
    }
    SUBCASE("exact rates invert apply_loss") {
        // Rates chosen so every count is an integer: d = (0.25, 0.5, 0.25),
        // eps3 = 0.5, total 16e4.
        const CountRecord rec{2, {40000, 40000, 10000}};
        const OutcomeDistribution d = correct_counts(rec, LossModel(0.5));
        CHECK(d.prob(0) == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(d.prob(1) == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(d.prob(2) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("noisy round trip at 1e5 counts: total variation below 0.01") {
        RandomStream rng(6);
        const OutcomeDistribution d = dist2(0.3, 0.5, 0.2);
        const LossModel loss(0.75);
        const auto w = apply_loss(d, loss);
        CountRecord rec{2, {0, 0, 0}};
        for (std::size_t k = 0; k < 3; ++k) {
            rec.counts[k] = rng.poisson(1e5 * w[k]);
        }
        const OutcomeDistribution corrected = correct_counts(rec, loss);
        double tv = 0.0;
        for (int k = 0; k <= 2; ++k) {
            tv += 0.5 * std::abs(corrected.prob(k) - d.prob(k));
        }
        CHECK(tv < 0.01);
    }
    SUBCASE("empty record cannot be corrected") {
        const CountRecord rec{2, {0, 0, 0}};
        CHECK_THROWS_AS(correct_counts(rec, LossModel()), std::invalid_argument);
    }
}

TEST_CASE("statistical_fidelity") {
    const OutcomeDistribution a = dist2(0.25, 0.5, 0.25);
    CHECK(statistical_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    const OutcomeDistribution b(2, {1.0, 0.0, 0.0});
    const OutcomeDistribution c(2, {0.0, 1.0, 0.0});
    CHECK(statistical_fidelity(b, c) == 0.0);
    const OutcomeDistribution p(2, {0.5, 0.5, 0.0});
    const OutcomeDistribution q(2, {0.25, 0.25, 0.5});
    CHECK(statistical_fidelity(p, q) == doctest::Approx(std::sqrt(0.125) + std::sqrt(0.125)));
    SUBCASE("symmetry") {
        CHECK(statistical_fidelity(p, q) == statistical_fidelity(q, p));
    }
    SUBCASE("size mismatch") {
        const OutcomeDistribution one(1, {0.5, 0.5});
        CHECK_THROWS_AS(statistical_fidelity(a, one), std::invalid_argument);
    }
}

TEST_CASE("uniformity_metrics") {
    SUBCASE("constant at the reference") {
        const double vals[] = {0.5, 0.5, 0.5};
        const UniformityMetrics m = uniformity_metrics(vals, 0.5);
        CHECK(m.variance == 0.0);
        CHECK(m.max_percent_deviation == 0.0);
    }
    SUBCASE("worked example") {
        const double vals[] = {0.5, 0.5, 0.6};
        const UniformityMetrics m = uniformity_metrics(vals, 0.5);
        CHECK(m.variance == doctest::Approx(0.00222222222222).epsilon(1e-9));
        CHECK(m.max_percent_deviation == doctest::Approx(20.0).epsilon(1e-9));
    }
    SUBCASE("single element has zero variance") {
        const double vals[] = {0.4};
        CHECK(uniformity_metrics(vals, 0.5).variance == 0.0);
    }
    SUBCASE("guards") {
        const double vals[] = {0.5};
        CHECK_THROWS_AS(uniformity_metrics(vals, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(uniformity_metrics(std::span<const double>{}, 0.5),
                        std::invalid_argument);
    }
}

TEST_CASE("plan files") {
    ExperimentPlan plan;
    plan.ensemble = "d1";
    plan.settings = {"q19"};
    plan.photons = 2;
    plan.theta = 0.244;
    plan.loss = LossModel(0.9, {1.0, 0.95, 1.0});
    plan.counts_per_element = 5000;
    plan.seed = 99;
    SUBCASE("serialize / parse round trip") {
        const ExperimentPlan back = parse_plan(serialize_plan(plan));
        CHECK(back.ensemble == plan.ensemble);
        CHECK(back.settings == plan.settings);
        CHECK(back.photons == plan.photons);
        CHECK(back.theta == doctest::Approx(plan.theta));
        CHECK(back.loss.eps3 == doctest::Approx(0.9));
        CHECK(back.loss.detector_efficiency.size() == 3);
        CHECK(back.counts_per_element == 5000);
        CHECK(back.seed == 99);
    }
    SUBCASE("header is mandatory") {
        CHECK_THROWS_AS(parse_plan("ensemble = d1\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_plan(""), std::invalid_argument);
    }
    SUBCASE("unknown keys and bad values are rejected") {
        CHECK_THROWS_AS(parse_plan("su2design-plan v1\nbogus = 1\n"), std::invalid_argument);
        CHECK_THROWS_AS(parse_plan("su2design-plan v1\nphotons = seven\n"),
                        std::invalid_argument);
        CHECK_THROWS_AS(parse_plan("su2design-plan v1\nphotons = 4\n"), std::invalid_argument);
    }
    SUBCASE("comments and blank lines are fine") {
        const ExperimentPlan p = parse_plan(
            "# comment\nsu2design-plan v1\n\nensemble = d2\nsettings = p1, p2\nphotons = 1\n");
        CHECK(p.ensemble == "d2");
        CHECK(p.settings.size() == 2);
    }
}

TEST_CASE("run_plan") {
    SUBCASE("ideal two-photon averages over d2 are uniform at 1/3") {
        ExperimentPlan plan;
        plan.ensemble = "d2";
        plan.settings = {"q"};
        plan.photons = 2;
        const PlanResult result = run_plan(plan);
        REQUIRE(result.settings.size() == 25);
        for (const auto& sr : result.settings) {
            CHECK(sr.statistic == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        }
    }
    SUBCASE("ideal q19 average over d1 is 37/64") {
        ExperimentPlan plan;
        plan.ensemble = "d1";
        plan.settings = {"q19"};
        const PlanResult result = run_plan(plan);
        CHECK(result.settings[0].statistic == doctest::Approx(0.578125).epsilon(1e-12));
    }
    SUBCASE("q19 over d1 with theta = 0.244 sits near the reported 0.594") {
        ExperimentPlan plan;
        plan.ensemble = "d1";
        plan.settings = {"q19"};
        plan.theta = 0.244;
        const PlanResult result = run_plan(plan);
        CHECK(result.settings[0].statistic == doctest::Approx(0.590436119853).epsilon(1e-10));
        CHECK(std::abs(result.settings[0].statistic - 0.594) < 5e-3);
    }
    SUBCASE("simulated runs are deterministic in the seed") {
        ExperimentPlan plan;
        plan.ensemble = "d1";
        plan.settings = {"p"};
        plan.photons = 1;
        plan.counts_per_element = 2000;
        plan.seed = 7;
        const PlanResult a = run_plan(plan);
        const PlanResult b = run_plan(plan);
        for (std::size_t s = 0; s < a.settings.size(); ++s) {
            CHECK(a.settings[s].statistic == b.settings[s].statistic);
        }
        plan.seed = 8;
        const PlanResult c = run_plan(plan);
        bool any_diff = false;
        for (std::size_t s = 0; s < a.settings.size(); ++s) {
            any_diff = any_diff || a.settings[s].statistic != c.settings[s].statistic;
        }
        CHECK(any_diff);
    }
    SUBCASE("simulated averages are unbiased at 1e6 counts, 3 sigma") {
        ExperimentPlan plan;
        plan.ensemble = "d2";
        plan.settings = {"q3"};
        plan.theta = 0.1;
        plan.loss = LossModel(0.85);
        plan.seed = 21;
        const PlanResult exact = run_plan(plan);
        plan.counts_per_element = 1e6;
        const PlanResult noisy = run_plan(plan);
        double var_mean = 0.0;
        for (std::size_t e = 0; e < 12; ++e) {
            const double p = exact.settings[0].element_distributions[e].prob(1);
            var_mean += p * (1.0 - p) / noisy.settings[0].element_effective_counts[e];
        }
        const double se = std::sqrt(var_mean) / 12.0;
        CHECK(std::abs(noisy.settings[0].statistic - exact.settings[0].statistic) < 3.0 * se);
    }
    SUBCASE("element labels follow the bundled design table") {
        ExperimentPlan plan;
        plan.ensemble = "d2";
        plan.settings = {"q1"};
        const PlanResult result = run_plan(plan);
        REQUIRE(result.element_labels.size() == 12);
        CHECK(result.element_labels[0] == "I");
        CHECK(result.element_labels[4] == "(I+iX-iY+iZ)/2");
    }
    SUBCASE("unknown labels are rejected") {
        ExperimentPlan plan;
        plan.settings = {"nope"};
        CHECK_THROWS_WITH_AS(run_plan(plan), doctest::Contains("unknown setting"),
                             std::invalid_argument);
        plan.settings = {"q1"};
        plan.ensemble = "d3";
        CHECK_THROWS_AS(run_plan(plan), std::invalid_argument);
    }
}

TEST_CASE("running_average") {
    ExperimentPlan plan;
    plan.ensemble = "d1";
    plan.settings = {"q19"};
    plan.theta = 0.244;
    plan.seed = 31;
    SUBCASE("reference values") {
        const RunningAverageResult run = running_average(plan, 10, 2);
        CHECK(run.ideal_value == doctest::Approx(0.578125).epsilon(1e-12));
        CHECK(run.asymptote == doctest::Approx(0.590436119853).epsilon(1e-9));
        CHECK(run.haar_reference ==
              doctest::Approx(corrected_haar_outcome(2, 1, 0.244)).epsilon(1e-12));
    }
    SUBCASE("identical seeds give identical traces") {
        const RunningAverageResult a = running_average(plan, 50, 4);
        const RunningAverageResult b = running_average(plan, 50, 4);
        for (std::size_t r = 0; r < a.traces.size(); ++r) {
            CHECK(a.traces[r].running_mean == b.traces[r].running_mean);
        }
        CHECK(a.traces[0].running_mean != a.traces[1].running_mean);
    }
    SUBCASE("finals cluster at the asymptote within the envelope") {
        const RunningAverageResult run = running_average(plan, 300, 16);
        int inside = 0;
        for (const auto& trace : run.traces) {
            const double final = trace.running_mean.back();
            if (std::abs(final - run.asymptote) <= 3.0 * run.envelope_sigma.back()) {
                ++inside;
            }
        }
        CHECK(inside >= 15);  // 3 sigma, 16 repeats
    }
    SUBCASE("envelope shrinks like 1/sqrt(n)") {
        const RunningAverageResult run = running_average(plan, 100, 1);
        CHECK(run.envelope_sigma[99] ==
              doctest::Approx(run.envelope_sigma[24] / 2.0).epsilon(1e-9));
    }
    SUBCASE("two-photon plans only, one setting only") {
        plan.photons = 1;
        CHECK_THROWS_AS(running_average(plan, 10, 1), std::invalid_argument);
        plan.photons = 2;
        plan.settings = {"q"};
        CHECK_THROWS_AS(running_average(plan, 10, 1), std::invalid_argument);
    }
}

TEST_CASE("corrected haar references") {
    CHECK(corrected_haar_outcome(1, 1, 0.0) == 0.5);
    CHECK(corrected_haar_outcome(2, 1, 0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(corrected_haar_outcome(3, 2, 0.0) == doctest::Approx(0.25));
    SUBCASE("fully distinguishable limits") {
        const double h = 1.57079632679489662;
        CHECK(corrected_haar_outcome(2, 1, h) == doctest::Approx(2.0 / 3.0));
        CHECK(corrected_haar_outcome(2, 2, h) == doctest::Approx(1.0 / 6.0));
        CHECK(corrected_haar_outcome(3, 3, h) == doctest::Approx(1.0 / 12.0));
        CHECK(corrected_haar_outcome(3, 2, h) == doctest::Approx(5.0 / 12.0));
    }
    SUBCASE("Monte Carlo check of the three-photon partial reference") {
        RandomStream rng(88);
        double acc[4] = {0, 0, 0, 0};
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const UnitaryMat2 t = su2_from_params(haar_sample(rng));
            const auto part = oracles::labeled_partial_distribution_3(t);
            for (int k = 0; k <= 3; ++k) {
                acc[k] += part[static_cast<std::size_t>(k)];
            }
        }
        const double h = 1.57079632679489662;
        for (int k = 0; k <= 3; ++k) {
            CHECK(std::abs(acc[k] / n - corrected_haar_outcome(3, k, h)) < 0.01);
        }
    }
}

TEST_CASE("figure reproduction" * doctest::timeout(300)) {
    FigureConfig config;
    config.out_dir = fresh_out_dir("figs").string();
    config.seed = 424242;
    config.counts_per_element = 2000;
    config.fig5_budget = 60;
    config.fig5_repeats = 8;
    config.hom_points = 21;

    SUBCASE("fig2 ideal means are exactly 1/2") {
        const auto paths = reproduce_figure(FigureId::fig2, config);
        const std::string text = read_file(paths[0]);
        CHECK(text.rfind("figure,series,setting_label,element_label,outcome,value,stderr\n", 0) ==
              0);
        std::stringstream ss(text);
        std::string line;
        int ideal_means = 0;
        while (std::getline(ss, line)) {
            if (line.find("ideal") != std::string::npos &&
                line.find(":mean") != std::string::npos &&
                line.rfind("fig2,ideal", 0) == 0) {
                CHECK(line.find(",0.5,") != std::string::npos);
                ++ideal_means;
            }
        }
        CHECK(ideal_means == 18);  // 9 settings x 2 ensembles
    }
    SUBCASE("fig3 ideal d2 means are uniform, d1 means are not") {
        const auto paths = reproduce_figure(FigureId::fig3, config);
        const std::string text = read_file(paths[0]);
        std::stringstream ss(text);
        std::string line;
        std::vector<double> d1_means;
        int d2_uniform = 0;
        while (std::getline(ss, line)) {
            if (line.rfind("fig3,ideal,", 0) != 0) {
                continue;
            }
            if (line.find("d1:mean") != std::string::npos) {
                d1_means.push_back(std::stod(line.substr(line.rfind(',', line.rfind(',') - 1) + 1)));
            }
            if (line.find("d2:mean") != std::string::npos &&
                line.find("0.333333333333") != std::string::npos) {
                ++d2_uniform;
            }
        }
        CHECK(d2_uniform == 25);
        REQUIRE(d1_means.size() == 25);
        const auto [lo, hi] = std::minmax_element(d1_means.begin(), d1_means.end());
        CHECK(*hi - *lo > 0.3);  // clearly non-uniform
    }
    SUBCASE("fig4 d2 means deviate from the corrected Haar reference") {
        const auto paths = reproduce_figure(FigureId::fig4, config);
        const std::string text = read_file(paths[0]);
        std::stringstream ss(text);
        std::string line;
        double max_dev = 0.0;
        while (std::getline(ss, line)) {
            if (line.rfind("fig4,ideal,", 0) == 0 && line.find("d2:mean") != std::string::npos) {
                const auto tail = line.substr(line.find("d2:mean,") + 8);
                const auto comma = tail.find(',');
                const std::string outcome = tail.substr(0, comma);
                const double value = std::stod(tail.substr(comma + 1));
                const int k = outcome[0] - '0';
                max_dev = std::max(max_dev, std::abs(value - corrected_haar_outcome(3, k, 0.0)));
            }
        }
        CHECK(max_dev > 0.1);
    }
    SUBCASE("fig5, hom and uniformity files appear and are deterministic") {
        for (const FigureId id : {FigureId::fig5, FigureId::hom, FigureId::uniformity}) {
            const auto paths = reproduce_figure(id, config);
            REQUIRE(paths.size() == 1);
            const std::string first = read_file(paths[0]);
            reproduce_figure(id, config);
            CHECK(read_file(paths[0]) == first);
            CHECK(first.rfind("figure,series,", 0) == 0);
        }
    }
    SUBCASE("hom file carries the characterized visibility") {
        FigureConfig hom_config = config;
        hom_config.theta = visibility_to_mismatch(-0.941724);
        const auto paths = reproduce_figure(FigureId::hom, hom_config);
        const std::string text = read_file(paths[0]);
        CHECK(text.find("visibility,ref,-0.941724") != std::string::npos);
    }

    std::filesystem::remove_all(config.out_dir);
}
