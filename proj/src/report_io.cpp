#include "rassim/report_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "rassim/errors.hpp"
#include "rassim/version.hpp"

namespace rassim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void hash_str(std::uint64_t& h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

std::string scenario_hash(const Scenario& s) {
    std::string canon;
    for (const Vec3& r : s.radar_positions)
        canon += "r(" + fmt17(r.x) + "," + fmt17(r.y) + "," + fmt17(r.z) + ")";
    const Vec3& t = s.target_position;
    const Vec3& j = s.jammer_position;
    const Vec3& ax = s.jammer_array.axis;
    canon += "t(" + fmt17(t.x) + "," + fmt17(t.y) + "," + fmt17(t.z) + ")";
    canon += "j(" + fmt17(j.x) + "," + fmt17(j.y) + "," + fmt17(j.z) + ")";
    canon += "a(" + std::to_string(s.jammer_array.num_elements) + "," +
             fmt17(s.jammer_array.element_spacing_m) + "," + fmt17(ax.x) + "," + fmt17(ax.y) +
             "," + fmt17(ax.z) + ")";
    canon += "w(" + fmt17(s.waveform.bandwidth_hz) + "," + fmt17(s.waveform.duration_s) + "," +
             fmt17(s.waveform.carrier_hz) + ")";
    canon += "l" + std::to_string(s.num_slots);
    canon += "snr" + fmt17(s.target_snr_db);
    canon += "jsnr" + fmt17(s.input_jsnr_per_element_db);
    canon += "nv" + fmt17(s.noise_variance);
    canon += "p" + fmt17(s.selection_probability);
    canon += "seed" + std::to_string(s.master_seed);

    std::uint64_t h = 0xcbf29ce484222325ULL;
    hash_str(h, canon);
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + path.string() + ": " + ec.message());
}

std::string csv_metadata_header(const Scenario& scenario) {
    std::string h;
    h += std::string("# tool: ") + kToolName + " " + kToolVersion + "\n";
    h += "# seed: " + std::to_string(scenario.master_seed) + "\n";
    h += "# scenario: " + scenario_hash(scenario) + "\n";
    return h;
}

std::string format_db(double db) {
    if (std::isinf(db)) return db < 0 ? "-inf" : "inf";
    return fmt(db);
}

std::string jsnr_sweep_csv(const Scenario& scenario, const std::vector<JsnrReport>& reports,
                           bool sweep_over_n) {
    std::string out = csv_metadata_header(scenario);
    const bool gaps = sweep_over_n && reports.size() > 1;
    if (sweep_over_n)
        out += "n,p,trials,closed_form_db,empirical_exact_db,empirical_perturbation_db";
    else
        out += "p,n,trials,closed_form_db,empirical_exact_db,empirical_perturbation_db";
    if (gaps) out += ",closed_form_gap_db,empirical_gap_db";
    out += "\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const JsnrReport& r = reports[i];
        if (sweep_over_n)
            out += std::to_string(r.num_elements) + "," + fmt(r.p);
        else
            out += fmt(r.p) + "," + std::to_string(r.num_elements);
        out += "," + std::to_string(r.trials);
        out += "," + format_db(r.closed_form_db);
        out += ",";
        if (r.empirical_exact_db) out += format_db(*r.empirical_exact_db);
        out += ",";
        if (r.empirical_perturbation_db) out += format_db(*r.empirical_perturbation_db);
        if (gaps) {
            if (i == 0) {
                out += ",,";
            } else {
                const JsnrReport& prev = reports[i - 1];
                out += "," + format_db(r.closed_form_db - prev.closed_form_db);
                const double cur = r.empirical_exact_db.value_or(
                    r.empirical_perturbation_db.value_or(0.0));
                const double before = prev.empirical_exact_db.value_or(
                    prev.empirical_perturbation_db.value_or(0.0));
                out += "," + format_db(cur - before);
            }
        }
        out += "\n";
    }
    return out;
}

namespace {

// numeric when finite, "-inf"/"inf" strings otherwise (JSON has no infinities)
nlohmann::json db_json(double db) {
    if (std::isfinite(db)) return db;
    return format_db(db);
}

nlohmann::json report_body(const JsnrReport& report) {
    nlohmann::json j;
    j["p"] = report.p;
    j["n"] = report.num_elements;
    j["k"] = report.num_radars;
    j["trials"] = report.trials;
    j["r_rr"] = report.r_rr;
    j["closed_form_db"] = db_json(report.closed_form_db);
    if (report.empirical_exact_db) {
        j["empirical_exact_db"] = db_json(*report.empirical_exact_db);
        j["per_trial_exact"] = report.per_trial_exact;
    }
    if (report.empirical_perturbation_db) {
        j["empirical_perturbation_db"] = db_json(*report.empirical_perturbation_db);
        j["per_trial_perturbation"] = report.per_trial_perturbation;
    }
    return j;
}

nlohmann::json meta_body(const Scenario& scenario) {
    return {{"tool", kToolName},
            {"version", kToolVersion},
            {"seed", scenario.master_seed},
            {"scenario", scenario_hash(scenario)}};
}

}  // namespace

std::string jsnr_report_json(const Scenario& scenario, const JsnrReport& report) {
    nlohmann::json j = report_body(report);
    j["meta"] = meta_body(scenario);
    return j.dump(2) + "\n";
}

std::string jsnr_reports_json(const Scenario& scenario, const std::vector<JsnrReport>& reports) {
    nlohmann::json j;
    j["meta"] = meta_body(scenario);
    j["reports"] = nlohmann::json::array();
    for (const JsnrReport& r : reports) j["reports"].push_back(report_body(r));
    return j.dump(2) + "\n";
}

}  // namespace rassim
