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

#ifndef SU2DESIGN_VIRTLAB_HPP
#define SU2DESIGN_VIRTLAB_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "su2design/multiphoton.hpp"
#include "su2design/rng.hpp"
#include "su2design/su2core.hpp"
#include "su2design/tables.hpp"

namespace su2design {

/// Detected events per outcome (k photons in output mode 1) for one fixed
/// total photon number.
struct CountRecord {
    int total_photons;
    std::vector<std::int64_t> counts;  // index k, size total_photons + 1

    std::int64_t total() const;
};

/// Relative output transmissions and detector efficiencies. The second output
/// is the normalization reference (its transmission is fixed to 1); only the
/// relative loss eps3 of the first output is physical after post-selection.
struct LossModel {
    LossModel() = default;
    LossModel(double eps3, std::vector<double> detector_efficiency = {});

    double eps3 = 1.0;
    static constexpr double eps4 = 1.0;
    /// Optional per-outcome multiplicative efficiencies (index k). Empty
    /// means all ones.
    std::vector<double> detector_efficiency;

    bool trivial() const;

    /// eps3^k * eps4^(n-k) * detector_efficiency[k] for k = 0..n.
    std::vector<double> outcome_weights(int total_photons) const;
};

/// Independent Poisson draw per outcome with mean mean_total * p(outcome).
CountRecord simulate_counts(const OutcomeDistribution& d, double mean_total, RandomStream& rng);

/// Detection-rate weights: the distribution scaled by the loss model's
/// per-outcome weights. Deliberately not renormalized (rates, not
/// probabilities).
std::vector<double> apply_loss(const OutcomeDistribution& d, const LossModel& loss);

struct LossCalibration {
    double eps3;
    double std_error;  // first-order Poisson propagation
};

/// eps3 = sqrt(C(2,0) / C(0,2)) from a two-photon (1,1)-input record.
/// Throws a calibration-impossible error when C(0,2) = 0.
LossCalibration calibrate_loss(const CountRecord& c);

/// Divides counts by the loss weights and renormalizes; inverse of
/// simulate_counts after apply_loss, in expectation.
OutcomeDistribution correct_counts(const CountRecord& c, const LossModel& loss);

/// Bhattacharyya overlap sum_i sqrt(P_i P'_i); 1 iff equal, 0 for disjoint
/// supports.
double statistical_fidelity(const OutcomeDistribution& p, const OutcomeDistribution& q);

struct UniformityMetrics {
    double variance;               // population variance of the averages
    double max_percent_deviation;  // max |avg - ref| / ref * 100
};

UniformityMetrics uniformity_metrics(std::span<const double> averages, double reference);

/// A full virtual experiment: ensemble, probe settings, photon number, noise.
/// counts_per_element = 0 means the analytic (infinite-count) limit.
struct ExperimentPlan {
    std::string ensemble = "d2";             // d1 | d2 | haar:K
    std::vector<std::string> settings = {"q"};  // labels, or a table name p|q|r
    int photons = 2;
    double theta = 0.0;
    LossModel loss;
    double counts_per_element = 0.0;
    std::uint64_t seed = 0;
};

/// Plan files: "su2design-plan v1" header then "key = value" lines.
ExperimentPlan parse_plan(const std::string& text);
std::string serialize_plan(const ExperimentPlan& plan);

/// Resolved per-setting outcome of a plan run.
struct SettingResult {
    std::string label;
    std::vector<OutcomeDistribution> element_distributions;  // corrected
    std::vector<double> element_effective_counts;  // corrected totals; 0 = analytic
    OutcomeDistribution average;
    /// The figure statistic: P(1,0) for one photon, the (1,1) coincidence for
    /// two, P(2,1) for three.
    double statistic;
};

struct PlanResult {
    std::vector<std::string> element_labels;
    std::vector<SettingResult> settings;
};

/// Deterministic pipeline: compose interferometer, apply mismatch, apply
/// loss, draw Poisson counts, correct, average over the ensemble. Each
/// (setting, element) pair owns a substream derived from the plan seed by
/// stable indexing.
PlanResult run_plan(const ExperimentPlan& plan, const TableSet& tables = builtin_tables());

/// One repeat of the sample-by-sample running average.
struct ConvergenceTrace {
    int repeat_index;
    std::vector<double> running_mean;  // index n-1 = after n sampled unitaries
};

struct RunningAverageResult {
    std::vector<ConvergenceTrace> traces;
    std::vector<double> envelope_sigma;  // one-sigma error model per sample count
    double asymptote;                    // analytic ensemble average at plan theta
    double ideal_value;                  // same at theta = 0
    double haar_reference;               // mismatch-corrected Haar coincidence
};

/// Samples ensemble elements uniformly at random; each sampled unitary yields
/// a uniform [0, max_events] number of detection events. The trace accumulates
/// the pooled loss-corrected coincidence estimate. Two-photon plans only.
RunningAverageResult running_average(const ExperimentPlan& plan, int budget, int repeats,
                                     int max_events_per_element = 33,
                                     const TableSet& tables = builtin_tables());

enum class FigureId { fig2, fig3, fig4, fig5, hom, uniformity };

FigureId figure_id_from_string(const std::string& name);
std::string figure_id_to_string(FigureId id);

struct FigureConfig {
    std::string out_dir = "out";
    std::uint64_t seed = 12345;
    double theta = 0.244;              // simulated-series mismatch
    double counts_per_element = 10000;  // simulated-series budget
    int fig5_budget = 500;
    int fig5_repeats = 64;
    double hom_sigma = 1.0;
    int hom_points = 81;
};

/// Writes the figure dataset as CSV (schema: figure, series, setting_label,
/// element_label, outcome, value, stderr) and returns the written paths.
/// Ideal series are exact; simulated series are seeded reproductions.
std::vector<std::string> reproduce_figure(FigureId id, const FigureConfig& config,
                                          const TableSet& tables = builtin_tables());

/// Mismatch-corrected Haar average of the t-photon uniform outcome value
/// 1/(n+1): exact closed forms for n = 1, 2, 3.
double corrected_haar_outcome(int photons, int k_out, double theta);

}  // namespace su2design

#endif
