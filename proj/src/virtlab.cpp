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

#include "su2design/virtlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace su2design {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

// Substream tags so that ensembles, counts and traces never share a stream.
constexpr std::uint64_t kTagEnsemble = 1;
constexpr std::uint64_t kTagCounts = 2;
constexpr std::uint64_t kTagTrace = 3;

std::string format12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::int64_t CountRecord::total() const {
    std::int64_t t = 0;
    for (const std::int64_t c : counts) {
        t += c;
    }
    return t;
}

LossModel::LossModel(double eps3_, std::vector<double> detector_efficiency_)
    : eps3(eps3_), detector_efficiency(std::move(detector_efficiency_)) {
    if (!(eps3 > 0.0) || !(eps3 <= 1.0)) {
        throw std::invalid_argument("invalid-parameter: eps3 must lie in (0, 1]");
    }
    for (const double e : detector_efficiency) {
        if (!(e > 0.0)) {
            throw std::invalid_argument("invalid-parameter: detector efficiencies must be > 0");
        }
    }
}

bool LossModel::trivial() const {
    if (eps3 != 1.0) {
        return false;
    }
    return std::all_of(detector_efficiency.begin(), detector_efficiency.end(),
                       [](double e) { return e == 1.0; });
}

std::vector<double> LossModel::outcome_weights(int total_photons) const {
    if (total_photons < 1) {
        throw std::invalid_argument("invalid-parameter: need at least one photon");
    }
    if (!detector_efficiency.empty() &&
        detector_efficiency.size() != static_cast<std::size_t>(total_photons) + 1) {
        throw std::invalid_argument(
            "invalid-parameter: detector efficiencies must cover every outcome");
    }
    std::vector<double> w(static_cast<std::size_t>(total_photons) + 1);
    for (int k = 0; k <= total_photons; ++k) {
        double v = std::pow(eps3, k) * std::pow(eps4, total_photons - k);
        if (!detector_efficiency.empty()) {
            v *= detector_efficiency[static_cast<std::size_t>(k)];
        }
        w[static_cast<std::size_t>(k)] = v;
    }
    return w;
}

CountRecord simulate_counts(const OutcomeDistribution& d, double mean_total, RandomStream& rng) {
    if (!(mean_total >= 0.0)) {
        throw std::invalid_argument("invalid-parameter: mean_total must be nonnegative");
    }
    CountRecord rec;
    rec.total_photons = d.total();
    rec.counts.resize(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        rec.counts[k] = rng.poisson(mean_total * d.probs()[k]);
    }
    return rec;
}

std::vector<double> apply_loss(const OutcomeDistribution& d, const LossModel& loss) {
    const std::vector<double> w = loss.outcome_weights(d.total());
    std::vector<double> rates(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        rates[k] = d.probs()[k] * w[k];
    }
    return rates;
}

LossCalibration calibrate_loss(const CountRecord& c) {
    if (c.total_photons != 2 || c.counts.size() != 3) {
        throw std::invalid_argument("invalid-parameter: calibration needs a two-photon record");
    }
    const double c20 = static_cast<double>(c.counts[2]);
    const double c02 = static_cast<double>(c.counts[0]);
    if (c02 <= 0.0) {
        throw std::invalid_argument("calibration-impossible: C(0,2) = 0");
    }
    LossCalibration out;
    out.eps3 = std::sqrt(c20 / c02);
    // Relative Poisson errors of the two rates, halved by the square root.
    out.std_error =
        c20 > 0.0 ? 0.5 * out.eps3 * std::sqrt(1.0 / c20 + 1.0 / c02) : 0.0;
    return out;
}

OutcomeDistribution correct_counts(const CountRecord& c, const LossModel& loss) {
    const std::vector<double> w = loss.outcome_weights(c.total_photons);
    if (c.counts.size() != w.size()) {
        throw std::invalid_argument("invalid-parameter: count record size mismatch");
    }
    std::vector<double> corrected(c.counts.size());
    double total = 0.0;
    for (std::size_t k = 0; k < c.counts.size(); ++k) {
        if (c.counts[k] < 0) {
            throw std::invalid_argument("invalid-parameter: negative count");
        }
        corrected[k] = static_cast<double>(c.counts[k]) / w[k];
        total += corrected[k];
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("calibration-impossible: no detected events to correct");
    }
    for (double& v : corrected) {
        v /= total;
    }
    return OutcomeDistribution(c.total_photons, std::move(corrected));
}

double statistical_fidelity(const OutcomeDistribution& p, const OutcomeDistribution& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("invalid-parameter: distributions differ in outcome count");
    }
    double f = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        f += std::sqrt(p.probs()[i] * q.probs()[i]);
    }
    return std::min(f, 1.0);
}

UniformityMetrics uniformity_metrics(std::span<const double> averages, double reference) {
    if (averages.empty()) {
        throw std::invalid_argument("invalid-parameter: no averages given");
    }
    if (reference == 0.0) {
        throw std::invalid_argument("invalid-parameter: zero reference");
    }
    double mean = 0.0;
    for (const double v : averages) {
        mean += v;
    }
    mean /= static_cast<double>(averages.size());
    UniformityMetrics m{0.0, 0.0};
    for (const double v : averages) {
        m.variance += (v - mean) * (v - mean);
        m.max_percent_deviation =
            std::max(m.max_percent_deviation, std::abs(v - reference) / std::abs(reference) * 100.0);
    }
    m.variance /= static_cast<double>(averages.size());
    return m;
}

// ---------------------------------------------------------------------------
// Plans.

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        if (!t.empty()) {
            out.push_back(t);
        }
    }
    return out;
}

void validate_plan_fields(const ExperimentPlan& plan) {
    if (plan.photons < 1 || plan.photons > 3) {
        throw std::invalid_argument("invalid-parameter: plans support 1, 2 or 3 photons");
    }
    if (!(plan.theta >= 0.0) || !(plan.theta <= kHalfPi + 1e-12)) {
        throw std::invalid_argument("invalid-parameter: theta must lie in [0, pi/2]");
    }
    if (!(plan.counts_per_element >= 0.0)) {
        throw std::invalid_argument("invalid-parameter: counts_per_element must be >= 0");
    }
    if (plan.settings.empty()) {
        throw std::invalid_argument("invalid-parameter: plan needs at least one setting");
    }
}

Ensemble resolve_ensemble(const std::string& label, const StreamFactory& streams,
                          std::vector<std::string>* element_labels) {
    if (label == "d1" || label == "d2") {
        Ensemble e = label == "d1" ? ensemble_d1() : ensemble_d2();
        if (element_labels != nullptr) {
            const auto& design = builtin_tables().design;
            for (std::size_t i = 0; i < e.size(); ++i) {
                element_labels->push_back(design[i].label);
            }
        }
        return e;
    }
    if (label.rfind("haar:", 0) == 0) {
        std::size_t k = 0;
        try {
            k = static_cast<std::size_t>(std::stoul(label.substr(5)));
        } catch (const std::exception&) {
            k = 0;
        }
        if (k < 1 || k > 100000) {
            throw std::invalid_argument("invalid-parameter: bad ensemble '" + label + "'");
        }
        RandomStream rng = streams.stream(kTagEnsemble);
        Ensemble e = ensemble_haar(k, rng);
        if (element_labels != nullptr) {
            for (std::size_t i = 0; i < k; ++i) {
                element_labels->push_back("u" + std::to_string(i + 1));
            }
        }
        return e;
    }
    throw std::invalid_argument("invalid-parameter: unknown ensemble '" + label +
                                "' (want d1, d2 or haar:K)");
}

std::vector<ProbeSetting> resolve_settings(const std::vector<std::string>& labels,
                                           const TableSet& tables) {
    std::vector<ProbeSetting> out;
    for (const auto& label : labels) {
        if (label == "p") {
            out.insert(out.end(), tables.p.begin(), tables.p.end());
        } else if (label == "q") {
            out.insert(out.end(), tables.q.begin(), tables.q.end());
        } else if (label == "r") {
            out.insert(out.end(), tables.r.begin(), tables.r.end());
        } else if (const ProbeSetting* s = find_probe(tables, label)) {
            out.push_back(*s);
        } else {
            throw std::invalid_argument("invalid-parameter: unknown setting label '" + label + "'");
        }
    }
    return out;
}

OutcomeDistribution base_distribution(const UnitaryMat2& t, int photons, double theta) {
    switch (photons) {
        case 1:
            return outcome_distribution(t, FockInput(1, 0));
        case 2:
            return distribution_with_mismatch_2(t, MismatchModel(theta));
        case 3:
            return distribution_with_mismatch_3(t, MismatchModel(theta));
        default:
            throw std::invalid_argument("invalid-parameter: unsupported photon number");
    }
}

int statistic_outcome(int photons) {
    // P(1,0) for one photon, the coincidence for two, P(2,1) for three.
    return photons == 3 ? 2 : 1;
}

}  // namespace

ExperimentPlan parse_plan(const std::string& text) {
    std::stringstream ss(text);
    std::string line;
    bool saw_header = false;
    ExperimentPlan plan;
    plan.settings.clear();
    double eps3 = 1.0;
    std::vector<double> det_eff;
    while (std::getline(ss, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        if (!saw_header) {
            if (t != "su2design-plan v1") {
                throw std::invalid_argument(
                    "invalid-parameter: plan must start with 'su2design-plan v1'");
            }
            saw_header = true;
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("invalid-parameter: expected 'key = value', got '" + t +
                                        "'");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        try {
            if (key == "ensemble") {
                plan.ensemble = value;
            } else if (key == "settings") {
                plan.settings = split_list(value);
            } else if (key == "photons") {
                plan.photons = std::stoi(value);
            } else if (key == "theta") {
                plan.theta = std::stod(value);
            } else if (key == "eps3") {
                eps3 = std::stod(value);
            } else if (key == "detector_efficiency") {
                det_eff.clear();
                for (const auto& item : split_list(value)) {
                    det_eff.push_back(std::stod(item));
                }
            } else if (key == "counts_per_element") {
                plan.counts_per_element = std::stod(value);
            } else if (key == "seed") {
                plan.seed = std::stoull(value);
            } else {
                throw std::invalid_argument("invalid-parameter: unknown plan key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid-parameter: bad value for '" + key + "'");
        }
    }
    if (!saw_header) {
        throw std::invalid_argument("invalid-parameter: empty plan");
    }
    plan.loss = LossModel(eps3, std::move(det_eff));
    validate_plan_fields(plan);
    return plan;
}

std::string serialize_plan(const ExperimentPlan& plan) {
    std::ostringstream os;
    os << "su2design-plan v1\n";
    os << "ensemble = " << plan.ensemble << "\n";
    os << "settings = ";
    for (std::size_t i = 0; i < plan.settings.size(); ++i) {
        os << (i ? "," : "") << plan.settings[i];
    }
    os << "\n";
    os << "photons = " << plan.photons << "\n";
    os << "theta = " << format12(plan.theta) << "\n";
    os << "eps3 = " << format12(plan.loss.eps3) << "\n";
    if (!plan.loss.detector_efficiency.empty()) {
        os << "detector_efficiency = ";
        for (std::size_t i = 0; i < plan.loss.detector_efficiency.size(); ++i) {
            os << (i ? "," : "") << format12(plan.loss.detector_efficiency[i]);
        }
        os << "\n";
    }
    os << "counts_per_element = " << format12(plan.counts_per_element) << "\n";
    os << "seed = " << plan.seed << "\n";
    return os.str();
}

PlanResult run_plan(const ExperimentPlan& plan, const TableSet& tables) {
    validate_plan_fields(plan);
    const StreamFactory streams(plan.seed);
    PlanResult result;
    const Ensemble ensemble = resolve_ensemble(plan.ensemble, streams, &result.element_labels);
    const std::vector<ProbeSetting> settings = resolve_settings(plan.settings, tables);

    const int n = plan.photons;
    const int stat_k = statistic_outcome(n);
    const std::vector<double> weights = plan.loss.outcome_weights(n);
    for (std::size_t si = 0; si < settings.size(); ++si) {
        std::vector<OutcomeDistribution> dists;
        std::vector<double> effective_counts;
        std::vector<double> acc(static_cast<std::size_t>(n) + 1, 0.0);
        for (std::size_t ei = 0; ei < ensemble.size(); ++ei) {
            const UnitaryMat2 t =
                compose_interferometer(settings[si].angles, ensemble.elements[ei]);
            const OutcomeDistribution base = base_distribution(t, n, plan.theta);
            if (plan.counts_per_element <= 0.0) {
                dists.push_back(base);
                effective_counts.push_back(0.0);
            } else {
                RandomStream rng = streams.stream(kTagCounts, si, ei);
                CountRecord rec;
                rec.total_photons = n;
                rec.counts.resize(base.size());
                for (std::size_t k = 0; k < base.size(); ++k) {
                    rec.counts[k] =
                        rng.poisson(plan.counts_per_element * base.probs()[k] * weights[k]);
                }
                double effective = 0.0;
                for (std::size_t k = 0; k < rec.counts.size(); ++k) {
                    effective += static_cast<double>(rec.counts[k]) / weights[k];
                }
                dists.push_back(correct_counts(rec, plan.loss));
                effective_counts.push_back(effective);
            }
            for (std::size_t k = 0; k < acc.size(); ++k) {
                acc[k] += dists.back().probs()[k];
            }
        }
        for (double& v : acc) {
            v /= static_cast<double>(ensemble.size());
        }
        OutcomeDistribution average(n, std::move(acc));
        const double statistic = average.prob(stat_k);
        result.settings.push_back(SettingResult{settings[si].label, std::move(dists),
                                                std::move(effective_counts), std::move(average),
                                                statistic});
    }
    return result;
}

RunningAverageResult running_average(const ExperimentPlan& plan, int budget, int repeats,
                                     int max_events_per_element, const TableSet& tables) {
    validate_plan_fields(plan);
    if (plan.photons != 2) {
        throw std::invalid_argument("invalid-parameter: running averages use two-photon plans");
    }
    if (budget < 1 || repeats < 1 || max_events_per_element < 1) {
        throw std::invalid_argument("invalid-parameter: budget, repeats and events must be >= 1");
    }
    const std::vector<ProbeSetting> settings = resolve_settings(plan.settings, tables);
    if (settings.size() != 1) {
        throw std::invalid_argument(
            "invalid-parameter: running averages track a single probe setting");
    }
    const StreamFactory streams(plan.seed);
    const Ensemble ensemble = resolve_ensemble(plan.ensemble, streams, nullptr);

    const std::vector<double> weights = plan.loss.outcome_weights(2);
    std::vector<std::vector<double>> rates;  // per element, lossy outcome rates
    std::vector<double> p_theta;             // per element coincidence at plan theta
    double ideal_sum = 0.0;
    for (const auto& u : ensemble.elements) {
        const UnitaryMat2 t = compose_interferometer(settings[0].angles, u);
        const OutcomeDistribution base = base_distribution(t, 2, plan.theta);
        std::vector<double> r(3);
        for (std::size_t k = 0; k < 3; ++k) {
            r[k] = base.probs()[k] * weights[k];
        }
        rates.push_back(std::move(r));
        p_theta.push_back(base.prob(1));
        ideal_sum += hom_coincidence(t);
    }

    RunningAverageResult out;
    out.asymptote = 0.0;
    for (const double p : p_theta) {
        out.asymptote += p;
    }
    out.asymptote /= static_cast<double>(p_theta.size());
    out.ideal_value = ideal_sum / static_cast<double>(ensemble.size());
    out.haar_reference = corrected_haar_outcome(2, 1, plan.theta);

    // One-sigma error model: element-to-element spread plus per-element
    // counting noise, both first order in 1/n.
    double var_el = 0.0;
    double mean_pq = 0.0;
    for (const double p : p_theta) {
        var_el += (p - out.asymptote) * (p - out.asymptote);
        mean_pq += p * (1.0 - p);
    }
    var_el /= static_cast<double>(p_theta.size());
    mean_pq /= static_cast<double>(p_theta.size());
    double inv_n_given_positive = 0.0;
    for (int v = 1; v <= max_events_per_element; ++v) {
        inv_n_given_positive += 1.0 / v;
    }
    inv_n_given_positive /= max_events_per_element;
    const double s2 = var_el + mean_pq * inv_n_given_positive;
    const double fill = static_cast<double>(max_events_per_element) /
                        static_cast<double>(max_events_per_element + 1);
    out.envelope_sigma.resize(static_cast<std::size_t>(budget));
    for (int n = 1; n <= budget; ++n) {
        out.envelope_sigma[static_cast<std::size_t>(n - 1)] = std::sqrt(s2 / (n * fill));
    }

    for (int rep = 0; rep < repeats; ++rep) {
        RandomStream rng = streams.stream(kTagTrace, static_cast<std::uint64_t>(rep));
        ConvergenceTrace trace;
        trace.repeat_index = rep;
        trace.running_mean.reserve(static_cast<std::size_t>(budget));
        double corrected_coincidences = 0.0;
        double corrected_total = 0.0;
        double last = 0.0;
        for (int n = 0; n < budget; ++n) {
            const std::size_t e = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(ensemble.size()) - 1));
            const std::int64_t events = rng.uniform_int(0, max_events_per_element);
            std::int64_t counts[3] = {0, 0, 0};
            for (std::int64_t i = 0; i < events; ++i) {
                counts[rng.categorical(rates[e])] += 1;
            }
            for (std::size_t k = 0; k < 3; ++k) {
                corrected_total += static_cast<double>(counts[k]) / weights[k];
            }
            corrected_coincidences += static_cast<double>(counts[1]) / weights[1];
            if (corrected_total > 0.0) {
                last = corrected_coincidences / corrected_total;
            }
            trace.running_mean.push_back(last);
        }
        out.traces.push_back(std::move(trace));
    }
    return out;
}

double corrected_haar_outcome(int photons, int k_out, double theta) {
    const MismatchModel m(theta);
    switch (photons) {
        case 1:
            if (k_out < 0 || k_out > 1) {
                throw std::invalid_argument("invalid-outcome: k out of range");
            }
            return 0.5;
        case 2: {
            if (k_out < 0 || k_out > 2) {
                throw std::invalid_argument("invalid-outcome: k out of range");
            }
            // Distinguishable pair: E[p(1-p)] = 1/6 ends, E[p^2 + (1-p)^2] = 2/3.
            const double partial = k_out == 1 ? 2.0 / 3.0 : 1.0 / 6.0;
            return m.cos2() / 3.0 + m.sin2() * partial;
        }
        case 3: {
            if (k_out < 0 || k_out > 3) {
                throw std::invalid_argument("invalid-outcome: k out of range");
            }
            const double partial = (k_out == 1 || k_out == 2) ? 5.0 / 12.0 : 1.0 / 12.0;
            return m.cos2() / 4.0 + m.sin2() * partial;
        }
        default:
            throw std::invalid_argument("invalid-parameter: unsupported photon number");
    }
}

// ---------------------------------------------------------------------------
// Figure reproduction.

namespace {

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) {
            throw std::runtime_error("cannot open output file: " + path);
        }
        out_ << "figure,series,setting_label,element_label,outcome,value,stderr\n";
    }

    void row(const std::string& figure, const std::string& series, const std::string& setting,
             const std::string& element, const std::string& outcome, double value,
             double std_error) {
        out_ << figure << ',' << series << ',' << setting << ',' << element << ',' << outcome
             << ',' << format12(value) << ',' << format12(std_error) << '\n';
    }

  private:
    std::ofstream out_;
};

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
    return StreamFactory(root).stream(a, b).next_u64();
}

struct SeriesPair {
    PlanResult ideal;
    PlanResult simulated;
};

SeriesPair run_pair(const std::string& ensemble, const std::string& settings_group, int photons,
                    const FigureConfig& config, std::uint64_t seed, const TableSet& tables) {
    ExperimentPlan plan;
    plan.ensemble = ensemble;
    plan.settings = {settings_group};
    plan.photons = photons;
    plan.theta = 0.0;
    plan.counts_per_element = 0.0;
    plan.seed = seed;
    SeriesPair pair;
    pair.ideal = run_plan(plan, tables);
    plan.theta = photons == 1 ? 0.0 : config.theta;
    plan.counts_per_element = config.counts_per_element;
    pair.simulated = run_plan(plan, tables);
    return pair;
}

double element_stderr(const SettingResult& sr, std::size_t ei, int k) {
    const double n = sr.element_effective_counts[ei];
    if (n <= 0.0) {
        return 0.0;
    }
    const double p = sr.element_distributions[ei].prob(k);
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

double mean_stderr(const SettingResult& sr, int k) {
    double sum_var = 0.0;
    for (std::size_t ei = 0; ei < sr.element_distributions.size(); ++ei) {
        const double s = element_stderr(sr, ei, k);
        sum_var += s * s;
    }
    const double count = static_cast<double>(sr.element_distributions.size());
    return std::sqrt(sum_var) / count;
}

void emit_series(CsvWriter& csv, const std::string& figure, const std::string& series,
                 const std::string& ens_tag, const PlanResult& result,
                 const std::vector<int>& outcomes, int total_photons) {
    for (const auto& sr : result.settings) {
        for (const int k : outcomes) {
            const std::string outcome = OutcomeDistribution::outcome_label(k, total_photons);
            for (std::size_t ei = 0; ei < sr.element_distributions.size(); ++ei) {
                csv.row(figure, series, sr.label, ens_tag + ":" + result.element_labels[ei],
                        outcome, sr.element_distributions[ei].prob(k),
                        element_stderr(sr, ei, k));
            }
            csv.row(figure, series, sr.label, ens_tag + ":mean", outcome, sr.average.prob(k),
                    series == "ideal" ? 0.0 : mean_stderr(sr, k));
        }
    }
}

std::string figure_path(const FigureConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.out_dir);
    return (std::filesystem::path(config.out_dir) / (name + ".csv")).string();
}

std::vector<std::string> write_fig2(const FigureConfig& config, const TableSet& tables) {
    const std::string path = figure_path(config, "fig2");
    CsvWriter csv(path);
    int ens_index = 0;
    for (const std::string ens : {"d1", "d2"}) {
        const SeriesPair pair = run_pair(ens, "p", 1, config,
                                         derive_seed(config.seed, 2, ens_index), tables);
        emit_series(csv, "fig2", "ideal", ens, pair.ideal, {1}, 1);
        emit_series(csv, "fig2", "simulated", ens, pair.simulated, {1}, 1);
        for (const auto& sr : pair.ideal.settings) {
            csv.row("fig2", "haar_ref", sr.label, ens + ":ideal", "10", 0.5, 0.0);
        }
        ++ens_index;
    }
    return {path};
}

std::vector<std::string> write_fig3(const FigureConfig& config, const TableSet& tables) {
    const std::string path = figure_path(config, "fig3");
    CsvWriter csv(path);
    int ens_index = 0;
    for (const std::string ens : {"d1", "d2", "haar:12"}) {
        const SeriesPair pair = run_pair(ens, "q", 2, config,
                                         derive_seed(config.seed, 3, ens_index), tables);
        emit_series(csv, "fig3", "ideal", ens, pair.ideal, {1}, 2);
        emit_series(csv, "fig3", "simulated", ens, pair.simulated, {1}, 2);
        for (const auto& sr : pair.ideal.settings) {
            csv.row("fig3", "haar_ref", sr.label, ens + ":ideal", "11", 1.0 / 3.0, 0.0);
            csv.row("fig3", "haar_ref", sr.label, ens + ":corrected", "11",
                    corrected_haar_outcome(2, 1, config.theta), 0.0);
        }
        ++ens_index;
    }
    return {path};
}

std::vector<std::string> write_fig4(const FigureConfig& config, const TableSet& tables) {
    const std::string path = figure_path(config, "fig4");
    CsvWriter csv(path);
    const SeriesPair pair = run_pair("d2", "r", 3, config, derive_seed(config.seed, 4, 0), tables);
    emit_series(csv, "fig4", "ideal", "d2", pair.ideal, {3, 2, 1, 0}, 3);
    emit_series(csv, "fig4", "simulated", "d2", pair.simulated, {3, 2, 1, 0}, 3);
    for (const auto& sr : pair.ideal.settings) {
        for (const int k : {3, 2, 1, 0}) {
            const std::string outcome = OutcomeDistribution::outcome_label(k, 3);
            csv.row("fig4", "haar_ref", sr.label, "d2:ideal", outcome, 0.25, 0.0);
            csv.row("fig4", "haar_ref", sr.label, "d2:corrected", outcome,
                    corrected_haar_outcome(3, k, config.theta), 0.0);
        }
    }
    return {path};
}

std::vector<std::string> write_fig5(const FigureConfig& config, const TableSet& tables) {
    const std::string path = figure_path(config, "fig5");
    CsvWriter csv(path);
    ExperimentPlan plan;
    plan.ensemble = "d1";
    plan.settings = {"q19"};
    plan.photons = 2;
    plan.theta = config.theta;
    plan.counts_per_element = 0.0;
    plan.seed = derive_seed(config.seed, 5, 0);
    const RunningAverageResult run =
        running_average(plan, config.fig5_budget, config.fig5_repeats, 33, tables);
    csv.row("fig5", "ideal", "q19", "asymptote", "ref", run.asymptote, 0.0);
    csv.row("fig5", "ideal", "q19", "ideal_theta0", "ref", run.ideal_value, 0.0);
    csv.row("fig5", "haar_ref", "q19", "corrected", "ref", run.haar_reference, 0.0);
    for (const auto& trace : run.traces) {
        const std::string element = "repeat-" + std::to_string(trace.repeat_index);
        for (std::size_t n = 0; n < trace.running_mean.size(); ++n) {
            csv.row("fig5", "simulated", "q19", element, std::to_string(n + 1),
                    trace.running_mean[n], run.envelope_sigma[n]);
        }
    }
    return {path};
}

std::vector<std::string> write_hom(const FigureConfig& config, const TableSet&) {
    const std::string path = figure_path(config, "hom");
    CsvWriter csv(path);
    const UnitaryMat2 balanced = su2_from_params(
        Su2Params::normalized(1.0, 0.0, 1.0, 0.0));
    std::vector<double> delays;
    const int n = std::max(config.hom_points, 3);
    for (int i = 0; i < n; ++i) {
        const double span = 4.0 * config.hom_sigma;
        delays.push_back(-span + 2.0 * span * i / (n - 1));
    }
    const HomScan scan = hom_dip_scan(balanced, config.theta, config.hom_sigma, delays);
    for (std::size_t i = 0; i < scan.delays.size(); ++i) {
        csv.row("hom", "ideal", "balanced", "scan", format12(scan.delays[i]), scan.bunching[i],
                0.0);
    }
    csv.row("hom", "ideal", "balanced", "visibility", "ref", scan.fitted_visibility, 0.0);
    csv.row("hom", "ideal", "balanced", "theta", "ref", scan.theta, 0.0);

    RandomStream rng(derive_seed(config.seed, 6, 0));
    const std::int64_t shots = std::max<std::int64_t>(
        10, static_cast<std::int64_t>(config.counts_per_element));
    for (std::size_t i = 0; i < scan.delays.size(); ++i) {
        std::int64_t hits = 0;
        for (std::int64_t s = 0; s < shots; ++s) {
            if (rng.uniform() < scan.bunching[i]) {
                ++hits;
            }
        }
        const double p = static_cast<double>(hits) / static_cast<double>(shots);
        csv.row("hom", "simulated", "balanced", "scan", format12(scan.delays[i]), p,
                std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(shots)));
    }
    return {path};
}

std::vector<std::string> write_uniformity(const FigureConfig& config, const TableSet& tables) {
    const std::string path = figure_path(config, "uniformity");
    CsvWriter csv(path);

    struct Dataset {
        std::string name;
        std::string ensemble;
        std::string group;
        int photons;
        std::uint64_t figure_tag;
        std::uint64_t ens_index;
    };
    const std::vector<Dataset> datasets = {
        {"fig2_d1", "d1", "p", 1, 2, 0}, {"fig2_d2", "d2", "p", 1, 2, 1},
        {"fig3_d1", "d1", "q", 2, 3, 0}, {"fig3_d2", "d2", "q", 2, 3, 1},
        {"fig3_haar12", "haar:12", "q", 2, 3, 2}, {"fig4_d2", "d2", "r", 3, 4, 0},
    };
    for (const auto& ds : datasets) {
        // Same seeds as the figure writers, so the metrics describe the same
        // simulated datasets.
        const SeriesPair pair =
            run_pair(ds.ensemble, ds.group, ds.photons, config,
                     derive_seed(config.seed, ds.figure_tag, ds.ens_index), tables);
        const int stat_k = ds.photons == 3 ? 2 : 1;
        const double ideal_ref = ds.photons == 1 ? 0.5 : (ds.photons == 2 ? 1.0 / 3.0 : 0.25);
        const double sim_ref =
            corrected_haar_outcome(ds.photons, stat_k, ds.photons == 1 ? 0.0 : config.theta);
        for (const auto& [series, result, ref] :
             {std::tuple<std::string, const PlanResult*, double>{"ideal", &pair.ideal, ideal_ref},
              std::tuple<std::string, const PlanResult*, double>{"simulated", &pair.simulated,
                                                                 sim_ref}}) {
            std::vector<double> averages;
            averages.reserve(result->settings.size());
            for (const auto& sr : result->settings) {
                averages.push_back(sr.statistic);
            }
            const UniformityMetrics m = uniformity_metrics(averages, ref);
            csv.row("uniformity", series, ds.name, "", "variance", m.variance, 0.0);
            csv.row("uniformity", series, ds.name, "", "max_pct_dev", m.max_percent_deviation,
                    0.0);
        }
    }
    return {path};
}

}  // namespace

FigureId figure_id_from_string(const std::string& name) {
    if (name == "fig2") return FigureId::fig2;
    if (name == "fig3") return FigureId::fig3;
    if (name == "fig4") return FigureId::fig4;
    if (name == "fig5") return FigureId::fig5;
    if (name == "hom") return FigureId::hom;
    if (name == "uniformity") return FigureId::uniformity;
    throw std::invalid_argument("invalid-parameter: unknown figure '" + name + "'");
}

std::string figure_id_to_string(FigureId id) {
    switch (id) {
        case FigureId::fig2: return "fig2";
        case FigureId::fig3: return "fig3";
        case FigureId::fig4: return "fig4";
        case FigureId::fig5: return "fig5";
        case FigureId::hom: return "hom";
        case FigureId::uniformity: return "uniformity";
    }
    throw std::invalid_argument("invalid-parameter: unknown figure id");
}

std::vector<std::string> reproduce_figure(FigureId id, const FigureConfig& config,
                                          const TableSet& tables) {
    switch (id) {
        case FigureId::fig2: return write_fig2(config, tables);
        case FigureId::fig3: return write_fig3(config, tables);
        case FigureId::fig4: return write_fig4(config, tables);
        case FigureId::fig5: return write_fig5(config, tables);
        case FigureId::hom: return write_hom(config, tables);
        case FigureId::uniformity: return write_uniformity(config, tables);
    }
    throw std::invalid_argument("invalid-parameter: unknown figure id");
}

}  // namespace su2design
