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

// Command-line front end: design verification, probe-polynomial expansion,
// completeness rank checks, figure reproduction and noise calibration.
//
// Exit codes: 0 success/pass, 2 scientific failure (a design test or rank
// check that ran fine but did not hold), 1 usage or runtime error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "su2design/polyalg.hpp"
#include "su2design/su2core.hpp"
#include "su2design/tables.hpp"
#include "su2design/virtlab.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitError = 1;
constexpr int kExitFail = 2;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

su2design::TableSet resolve_tables(const std::string& dir) {
    if (dir.empty()) {
        return su2design::builtin_tables();
    }
    return su2design::load_tables(dir);
}

su2design::Ensemble make_ensemble(const std::string& label, std::uint64_t seed) {
    if (label == "d1") {
        return su2design::ensemble_d1();
    }
    if (label == "d2") {
        return su2design::ensemble_d2();
    }
    if (label.rfind("haar:", 0) == 0) {
        const std::size_t k = std::stoul(label.substr(5));
        su2design::RandomStream rng = su2design::StreamFactory(seed).stream(1);
        return su2design::ensemble_haar(k, rng);
    }
    throw std::invalid_argument("unknown ensemble '" + label + "' (want d1, d2 or haar:K)");
}

int cmd_verify(const std::string& ensemble_label, int t, std::optional<double> tol_opt,
               std::uint64_t seed, bool full) {
    const su2design::Ensemble ensemble = make_ensemble(ensemble_label, seed);
    const bool sampled = ensemble_label.rfind("haar:", 0) == 0;
    const double tol = tol_opt.value_or(sampled ? 1e-9 : 0.0);
    const su2design::DesignTestReport report = su2design::design_test(ensemble, t, tol);

    std::printf("design test: ensemble %s (K = %zu), t = %d, %zu monomials of degree %d\n",
                ensemble_label.c_str(), ensemble.size(), t, report.comparisons.size(), 2 * t);
    std::printf("arithmetic: %s, tolerance: %s\n", report.exact ? "exact rational" : "double",
                fmt12(report.tolerance).c_str());
    if (full) {
        for (const auto& cmp : report.comparisons) {
            std::printf("  %-16s ensemble %-18s haar %-18s deviation %s\n",
                        su2design::monomial_str(cmp.exponents).c_str(),
                        fmt12(cmp.ensemble_average).c_str(), fmt12(cmp.haar_average).c_str(),
                        fmt12(cmp.deviation).c_str());
        }
    }
    std::printf("max deviation: %s", fmt12(report.max_deviation).c_str());
    if (report.exact) {
        std::printf(" (exact %s)", report.max_deviation_rational.str().c_str());
    }
    std::printf("\n");
    if (!report.passed) {
        std::printf("witness: %s\n", su2design::monomial_str(report.witness).c_str());
    }
    std::printf("verdict: %s\n", report.passed ? "PASS" : "FAIL");
    return report.passed ? kExitPass : kExitFail;
}

su2design::ProbeKind kind_for_label(const std::string& label, const std::string& kind_flag) {
    if (kind_flag == "1photon") {
        return su2design::ProbeKind::one_photon;
    }
    if (kind_flag == "2photon") {
        return su2design::ProbeKind::two_photon;
    }
    if (label.rfind("p", 0) == 0) {
        return su2design::ProbeKind::one_photon;
    }
    if (label.rfind("q", 0) == 0) {
        return su2design::ProbeKind::two_photon;
    }
    throw std::invalid_argument("cannot infer polynomial kind for '" + label +
                                "'; pass --kind 1photon|2photon");
}

int cmd_expand(const std::string& label, const std::string& kind_flag, bool as_json,
               const std::string& tables_dir) {
    const su2design::TableSet tables = resolve_tables(tables_dir);
    const su2design::ProbeSetting* setting = su2design::find_probe(tables, label);
    if (setting == nullptr) {
        throw std::invalid_argument("unknown setting label '" + label + "'");
    }
    const su2design::ProbeKind kind = kind_for_label(label, kind_flag);
    const su2design::PolynomialR4 f = su2design::expand_probe_polynomial(setting->angles, kind);
    const int degree = kind == su2design::ProbeKind::one_photon ? 2 : 4;
    const su2design::ReducedPolynomial reduced = su2design::reduce_mod_constraint(f, degree);
    if (as_json) {
        nlohmann::json obj;
        obj["label"] = label;
        obj["kind"] = kind == su2design::ProbeKind::one_photon ? "1photon" : "2photon";
        obj["expanded"] = nlohmann::json::parse(su2design::polynomial_to_json(f));
        obj["reduced"] = nlohmann::json::parse(su2design::polynomial_to_json(reduced.polynomial));
        std::printf("%s\n", obj.dump(2).c_str());
        return kExitPass;
    }
    const auto& w = setting->angles;
    std::printf("setting %s: omega = (%s, %s, %s, %s) degrees, kind %s\n", label.c_str(),
                fmt12(w.omega1).c_str(), fmt12(w.omega2).c_str(), fmt12(w.omega3).c_str(),
                fmt12(w.omega4).c_str(),
                kind == su2design::ProbeKind::one_photon ? "1photon" : "2photon");
    std::printf("expanded: %s\n", f.str().c_str());
    std::printf("reduced:  %s\n", reduced.polynomial.str().c_str());
    return kExitPass;
}

int cmd_rank(const std::string& which, const std::vector<std::string>& drop,
             const std::string& tables_dir) {
    const su2design::TableSet tables = resolve_tables(tables_dir);
    const std::vector<su2design::ProbeSetting>* group = nullptr;
    su2design::ProbeKind kind;
    if (which == "p") {
        group = &tables.p;
        kind = su2design::ProbeKind::one_photon;
    } else if (which == "q") {
        group = &tables.q;
        kind = su2design::ProbeKind::two_photon;
    } else {
        throw std::invalid_argument("rank expects 'p' or 'q'");
    }
    std::vector<su2design::ProbeAngles> settings;
    std::vector<std::string> labels;
    for (const auto& s : *group) {
        bool dropped = false;
        for (const auto& d : drop) {
            if (d == s.label) {
                dropped = true;
                break;
            }
        }
        if (!dropped) {
            settings.push_back(s.angles);
            labels.push_back(s.label);
        }
    }
    if (settings.empty()) {
        throw std::invalid_argument("no settings left after --drop");
    }
    const su2design::BasisMatrix bm = su2design::basis_matrix(settings, kind);
    const std::size_t basis_size = bm.rows.front().size();
    std::printf("settings: %s (%zu rows), basis monomials: %zu\n", which.c_str(), bm.rows.size(),
                basis_size);
    std::printf("rank: %d\n", bm.rank);
    std::printf("singular values: max %s, min %s\n", fmt12(bm.singular_values.front()).c_str(),
                fmt12(bm.singular_values.back()).c_str());
    const bool complete = bm.rank == static_cast<int>(basis_size);
    std::printf("verdict: %s\n", complete ? "COMPLETE" : "INCOMPLETE");
    return complete ? kExitPass : kExitFail;
}

int cmd_reproduce(const std::string& figure, const su2design::FigureConfig& config,
                  const std::string& tables_dir) {
    const su2design::TableSet tables = resolve_tables(tables_dir);
    std::vector<std::string> figures;
    if (figure == "all") {
        figures = {"fig2", "fig3", "fig4", "fig5", "hom", "uniformity"};
    } else {
        figures = {figure};
    }
    for (const auto& name : figures) {
        const auto paths =
            su2design::reproduce_figure(su2design::figure_id_from_string(name), config, tables);
        for (const auto& p : paths) {
            std::printf("wrote %s\n", p.c_str());
        }
    }
    return kExitPass;
}

int cmd_calibrate(std::optional<double> visibility, const std::vector<std::int64_t>& counts) {
    if (visibility.has_value() == !counts.empty()) {
        throw std::invalid_argument("pass exactly one of --visibility or --counts");
    }
    if (visibility.has_value()) {
        const double theta = su2design::visibility_to_mismatch(*visibility);
        std::printf("theta = %s rad (visibility %s)\n", fmt12(theta).c_str(),
                    fmt12(*visibility).c_str());
        return kExitPass;
    }
    su2design::CountRecord rec;
    rec.total_photons = 2;
    rec.counts = {counts[1], 0, counts[0]};  // C(0,2), C(1,1) unused, C(2,0)
    const su2design::LossCalibration cal = su2design::calibrate_loss(rec);
    std::printf("eps3 = %s +- %s\n", fmt12(cal.eps3).c_str(), fmt12(cal.std_error).c_str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode unitary designs: realization, verification and virtual experiments"};
    app.require_subcommand(1);

    std::uint64_t seed = 12345;
    std::string tables_dir;

    // verify
    auto* verify = app.add_subcommand("verify", "Moment-match an ensemble against Haar");
    std::string ensemble_label;
    int t_value = 1;
    std::optional<double> tol_opt;
    bool full = false;
    verify->add_option("ensemble", ensemble_label, "d1, d2 or haar:K")->required();
    verify->add_option("--t", t_value, "design order t (1, 2 or 3)")->required();
    double tol_raw = -1.0;
    auto* tol_flag = verify->add_option("--tol", tol_raw,
                                        "deviation tolerance (default: 0 for d1/d2, 1e-9 for haar)");
    verify->add_option("--seed", seed, "seed for haar:K ensembles");
    verify->add_flag("--full", full, "print every monomial comparison");

    // expand
    auto* expand = app.add_subcommand("expand", "Expand a probe setting's polynomial");
    std::string expand_label;
    std::string kind_flag;
    bool expand_json = false;
    expand->add_option("label", expand_label, "bundled setting label, e.g. p1 or q19")->required();
    expand->add_option("--kind", kind_flag, "1photon or 2photon (default: from the label)");
    expand->add_flag("--json", expand_json, "emit JSON");
    expand->add_option("--tables", tables_dir, "directory with table CSV files");

    // rank
    auto* rank = app.add_subcommand("rank", "Completeness rank of a probe table");
    std::string rank_which;
    std::vector<std::string> rank_drop;
    rank->add_option("table", rank_which, "p or q")->required();
    rank->add_option("--drop", rank_drop, "labels to leave out");
    rank->add_option("--tables", tables_dir, "directory with table CSV files");

    // reproduce
    auto* reproduce = app.add_subcommand("reproduce", "Write figure datasets as CSV");
    std::string figure;
    su2design::FigureConfig config;
    if (const char* env_out = std::getenv("SU2DESIGN_OUT")) {
        config.out_dir = env_out;
    }
    reproduce->add_option("figure", figure, "fig2, fig3, fig4, fig5, hom, uniformity or all")
        ->required();
    reproduce->add_option("--seed", config.seed, "simulation seed");
    reproduce->add_option("--out", config.out_dir,
                          "output directory (default: $SU2DESIGN_OUT or ./out)");
    reproduce->add_option("--theta", config.theta, "mismatch parameter for simulated series");
    reproduce->add_option("--counts-per-element", config.counts_per_element,
                          "simulated events per (setting, element)");
    reproduce->add_option("--tables", tables_dir, "directory with table CSV files");

    // calibrate
    auto* calibrate = app.add_subcommand("calibrate", "Mismatch or loss from measured numbers");
    std::optional<double> visibility;
    std::vector<std::int64_t> cal_counts;
    double vis_raw = 0.0;
    auto* vis_flag =
        calibrate->add_option("--visibility", vis_raw, "fitted HOM visibility, |V| in (0,1]");
    calibrate->add_option("--counts", cal_counts, "C(2,0) C(0,2) bunching counts")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitError;
    }

    try {
        if (verify->parsed()) {
            if (tol_flag->count() > 0) {
                tol_opt = tol_raw;
            }
            return cmd_verify(ensemble_label, t_value, tol_opt, seed, full);
        }
        if (expand->parsed()) {
            return cmd_expand(expand_label, kind_flag, expand_json, tables_dir);
        }
        if (rank->parsed()) {
            return cmd_rank(rank_which, rank_drop, tables_dir);
        }
        if (reproduce->parsed()) {
            return cmd_reproduce(figure, config, tables_dir);
        }
        if (calibrate->parsed()) {
            if (vis_flag->count() > 0) {
                visibility = vis_raw;
            }
            return cmd_calibrate(visibility, cal_counts);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
