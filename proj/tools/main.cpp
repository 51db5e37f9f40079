// rassim CLI: runs the jamming / suppression experiments end-to-end and
// writes CSV/JSON artifacts.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rassim/analysis.hpp"
#include "rassim/errors.hpp"
#include "rassim/jammer.hpp"
#include "rassim/pipeline.hpp"
#include "rassim/receiver.hpp"
#include "rassim/report_io.hpp"
#include "rassim/rng.hpp"
#include "rassim/scenario.hpp"
#include "rassim/suppression.hpp"
#include "rassim/validate.hpp"
#include "rassim/version.hpp"

namespace {

using namespace rassim;
namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct CommonOpts {
    std::string scenario_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
    std::size_t trials = 1000;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials = true) {
    cmd->add_option("--scenario", o.scenario_path, "Scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", o.out_dir, "Output directory")->required();
    cmd->add_option("--seed", o.seed_override, "Override the scenario master seed");
    if (with_trials)
        cmd->add_option("--trials", o.trials, "Monte Carlo trials")
            ->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
}

Scenario load(const CommonOpts& o) {
    Scenario s = load_scenario(o.scenario_path);
    if (o.seed_override) s.master_seed = *o.seed_override;
    fs::create_directories(o.out_dir);
    return s;
}

json meta_json(const Scenario& s) {
    return json{{"tool", kToolName},
                {"version", kToolVersion},
                {"seed", s.master_seed},
                {"scenario", scenario_hash(s)}};
}

JsnrMode parse_mode(const std::string& m) {
    if (m == "exact") return JsnrMode::kExactEigen;
    if (m == "perturbation") return JsnrMode::kPerturbation;
    return JsnrMode::kBoth;
}

std::string profile_csv(const Scenario& scn, const RangeProfile& prof, bool per_radar) {
    std::string out = csv_metadata_header(scn);
    out += "# bins are sqrt(sum_k |corr_k|^2); db columns are 10*log10(bin)\n";
    out += "bin_index,range_m,magnitude_db";
    if (per_radar)
        for (std::size_t k = 0; k < prof.per_radar.size(); ++k)
            out += ",magnitude_db_r" + std::to_string(k + 1);
    out += "\n";
    char buf[64];
    for (std::size_t m = 0; m < prof.bins.size(); ++m) {
        std::snprintf(buf, sizeof buf, "%zu,%.12g,", m,
                      static_cast<double>(m) * prof.bin_resolution_m);
        out += buf;
        out += format_db(10.0 * std::log10(prof.bins[m]));
        if (per_radar)
            for (std::size_t k = 0; k < prof.per_radar.size(); ++k) {
                out += ",";
                out += format_db(10.0 * std::log10(prof.per_radar[k][m]));
            }
        out += "\n";
    }
    return out;
}

int cmd_profile(const CommonOpts& o, const std::string& pattern_flag, bool per_radar,
                bool dump_snapshots) {
    const Scenario scn = load(o);
    const fs::path out_dir(o.out_dir);

    json summary;
    summary["meta"] = meta_json(scn);

    auto emit = [&](JammingPattern pattern, const char* name) {
        const ProfileTrial run = run_profile_trial(scn, pattern, 0);
        write_file_atomic(out_dir / (std::string("profile_") + name + ".csv"),
                          profile_csv(scn, run.profile, per_radar));
        summary[name] = {{"peak_bin", run.peak_bin},
                         {"true_target_bin", run.true_target_bin},
                         {"peak_to_median_db", run.peak_to_median},
                         {"target_is_peak", run.peak_bin == run.true_target_bin}};
        if (dump_snapshots) {
            std::ostringstream ss;
            dump_snapshot_csv(run.snapshot.data, ss);
            write_file_atomic(out_dir / (std::string("snapshot_") + name + ".csv"), ss.str());
        }
    };

    if (pattern_flag.empty() || pattern_flag == "traditional")
        emit(JammingPattern::kTraditional, "traditional");
    if (pattern_flag.empty() || pattern_flag == "rass") emit(JammingPattern::kRass, "rass");

    write_file_atomic(out_dir / "profile_summary.json", summary.dump(2) + "\n");
    return kExitOk;
}

std::vector<double> parse_p_grid(const std::string& spec) {
    double a = 0.0, b = 0.0, step = 0.0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 || step <= 0.0 || b < a)
        throw ConfigError("--p-grid: expected a:b:step with step > 0 and b >= a");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double p = a + static_cast<double>(i) * step;
        if (p > b + step * 0.5) break;
        if (p < 0.0 || p > 1.0) throw ConfigError("--p-grid: values must lie in [0, 1]");
        grid.push_back(p);
    }
    return grid;
}

int cmd_sweep_p(const CommonOpts& o, const std::string& grid_spec, const std::string& mode) {
    const Scenario scn = load(o);
    const std::vector<double> grid = parse_p_grid(grid_spec);
    const std::vector<JsnrReport> reports =
        sweep_p(scn, grid, o.trials, parse_mode(mode), o.threads);
    write_file_atomic(fs::path(o.out_dir) / "jsnr_vs_p.csv",
                      jsnr_sweep_csv(scn, reports, false));
    write_file_atomic(fs::path(o.out_dir) / "jsnr_vs_p.json", jsnr_reports_json(scn, reports));
    return kExitOk;
}

std::vector<std::size_t> parse_n_set(const std::string& spec) {
    std::vector<std::size_t> out;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (cur.empty()) continue;
            char* end = nullptr;
            const unsigned long v = std::strtoul(cur.c_str(), &end, 10);
            if (!end || *end != '\0' || v == 0)
                throw ConfigError("--n-set: expected comma-separated positive integers");
            out.push_back(v);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (out.empty()) throw ConfigError("--n-set: empty set");
    return out;
}

int cmd_sweep_n(const CommonOpts& o, const std::string& set_spec, const std::string& mode) {
    const Scenario scn = load(o);
    const std::vector<JsnrReport> reports =
        sweep_n(scn, parse_n_set(set_spec), o.trials, parse_mode(mode), o.threads);
    write_file_atomic(fs::path(o.out_dir) / "jsnr_vs_n.csv", jsnr_sweep_csv(scn, reports, true));
    write_file_atomic(fs::path(o.out_dir) / "jsnr_vs_n.json", jsnr_reports_json(scn, reports));
    return kExitOk;
}

int cmd_baseline(const CommonOpts& o) {
    const Scenario scn = load(o);
    const JsnrReport trad = jsnr_monte_carlo(scn, JammingPattern::kTraditional, o.trials,
                                             JsnrMode::kExactEigen, o.threads);
    Scenario half = scn;
    half.selection_probability = 0.5;
    const JsnrReport rass =
        jsnr_monte_carlo(half, JammingPattern::kRass, o.trials, JsnrMode::kExactEigen, o.threads);

    json j;
    j["meta"] = meta_json(scn);
    j["trials"] = o.trials;
    j["jsnr_traditional_db"] = *trad.empirical_exact_db;
    j["jsnr_rass_p05_db"] = *rass.empirical_exact_db;
    j["delta_db"] = *rass.empirical_exact_db - *trad.empirical_exact_db;
    write_file_atomic(fs::path(o.out_dir) / "baseline.json", j.dump(2) + "\n");
    return kExitOk;
}

int cmd_validate(const CommonOpts& o, std::size_t covariance_draws, double covariance_tol) {
    const Scenario scn = load(o);
    ValidationOptions opts;
    opts.covariance_draws = covariance_draws;
    opts.covariance_rel_tol = covariance_tol;
    opts.baseline_trials = o.trials;
    opts.threads = o.threads;
    const ValidationOutcome outcome = run_validation_suite(scn, opts);

    json j;
    j["meta"] = meta_json(scn);
    j["all_pass"] = outcome.all_pass;
    j["checks"] = json::array();
    for (const CheckResult& c : outcome.checks) {
        json cj{{"name", c.name}, {"bound", c.bound}};
        if (c.skipped) {
            cj["skipped"] = true;
        } else {
            cj["pass"] = c.pass;
            cj["measured"] = c.measured;
        }
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(std::move(cj));
        std::printf("[%s] %s%s\n", c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL"),
                    c.name.c_str(), c.note.empty() ? "" : (" - " + c.note).c_str());
    }
    write_file_atomic(fs::path(o.out_dir) / "validate.json", j.dump(2) + "\n");
    return outcome.all_pass ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) + " " + kToolVersion +
                 " - random antenna subset selection jamming vs eigenprojection suppression"};
    app.require_subcommand(1);

    CommonOpts profile_opts, sweep_p_opts, sweep_n_opts, baseline_opts, validate_opts;
    std::string pattern_flag, p_grid = "0.1:0.9:0.1", n_set = "16,32,64";
    std::string mode_p = "both", mode_n = "both";
    bool per_radar = false, dump_snapshots = false;
    std::size_t covariance_draws = 100000;
    double covariance_tol = 0.02;

    CLI::App* c_profile = app.add_subcommand("profile", "Range profiles after suppression");
    add_common(c_profile, profile_opts, false);
    c_profile->add_option("--pattern", pattern_flag, "Restrict to one jamming pattern")
        ->check(CLI::IsMember({"traditional", "rass"}));
    c_profile->add_flag("--per-radar", per_radar, "Add per-radar profile columns");
    c_profile->add_flag("--dump-snapshots", dump_snapshots, "Also dump raw snapshot CSVs");

    CLI::App* c_sweep_p = app.add_subcommand("sweep-p", "Output JSNR vs selection probability");
    add_common(c_sweep_p, sweep_p_opts);
    c_sweep_p->add_option("--p-grid", p_grid, "Grid a:b:step (default 0.1:0.9:0.1)");
    c_sweep_p->add_option("--mode", mode_p, "exact | perturbation | both")
        ->check(CLI::IsMember({"exact", "perturbation", "both"}));

    CLI::App* c_sweep_n = app.add_subcommand("sweep-n", "Output JSNR vs array size");
    add_common(c_sweep_n, sweep_n_opts);
    c_sweep_n->add_option("--n-set", n_set, "Comma-separated N values (default 16,32,64)");
    c_sweep_n->add_option("--mode", mode_n, "exact | perturbation | both")
        ->check(CLI::IsMember({"exact", "perturbation", "both"}));

    CLI::App* c_baseline =
        app.add_subcommand("baseline", "Traditional full-array baseline vs RASS at p = 0.5");
    add_common(c_baseline, baseline_opts);

    CLI::App* c_validate = app.add_subcommand("validate", "Run the property suites");
    add_common(c_validate, validate_opts);
    c_validate->add_option("--cov-draws", covariance_draws, "Switch draws for the covariance check")
        ->check(CLI::PositiveNumber);
    c_validate->add_option("--cov-tol", covariance_tol, "Relative Frobenius tolerance")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c_profile->parsed())
            return cmd_profile(profile_opts, pattern_flag, per_radar, dump_snapshots);
        if (c_sweep_p->parsed()) return cmd_sweep_p(sweep_p_opts, p_grid, mode_p);
        if (c_sweep_n->parsed()) return cmd_sweep_n(sweep_n_opts, n_set, mode_n);
        if (c_baseline->parsed()) return cmd_baseline(baseline_opts);
        if (c_validate->parsed()) return cmd_validate(validate_opts, covariance_draws, covariance_tol);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
