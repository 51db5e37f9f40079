#include "rassim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rassim/errors.hpp"

namespace rassim {

namespace {

bool finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

void collect_scenario_issues(const Scenario& s, std::vector<std::string>& issues) {
    if (s.num_radars() < 2) issues.push_back("radars: need K >= 2 (index 0 is the main radar)");
    for (std::size_t k = 0; k < s.num_radars(); ++k)
        if (!finite(s.radar_positions[k]))
            issues.push_back("radars[" + std::to_string(k) + "]: non-finite position");
    if (!finite(s.target_position)) issues.push_back("target: non-finite position");
    if (!finite(s.jammer_position)) issues.push_back("jammer: non-finite position");
    if (norm(s.target_position - s.jammer_position) == 0.0)
        issues.push_back("target/jammer: must be distinct points");

    if (s.jammer_array.num_elements < 1) issues.push_back("array.n: need N >= 1");
    if (!(s.jammer_array.element_spacing_m > 0.0)) issues.push_back("array.d_m: need d > 0");
    if (std::abs(norm(s.jammer_array.axis) - 1.0) > 1e-12)
        issues.push_back("array.axis: must be a unit vector (|axis| = 1 within 1e-12)");

    if (!(s.waveform.bandwidth_hz > 0.0)) issues.push_back("waveform.bandwidth_hz: must be > 0");
    if (!(s.waveform.duration_s > 0.0)) issues.push_back("waveform.duration_s: must be > 0");
    if (!(s.waveform.carrier_hz > 0.0)) issues.push_back("waveform.carrier_hz: must be > 0");

    if (s.num_slots < 1) issues.push_back("slots: need L >= 1");
    if (!(s.noise_variance > 0.0)) issues.push_back("noise_variance: must be > 0");
    if (!(s.selection_probability >= 0.0 && s.selection_probability <= 1.0))
        issues.push_back("p: must lie in [0, 1]");
    if (!std::isfinite(s.target_snr_db)) issues.push_back("target_snr_db: must be finite");
    if (!std::isfinite(s.input_jsnr_per_element_db))
        issues.push_back("input_jsnr_per_element_db: must be finite");
    if (s.num_jammers != 1) issues.push_back("num_jammers: fixed to 1");
    if (s.num_targets != 1) issues.push_back("num_targets: fixed to 1");
}

using nlohmann::json;

Vec3 parse_vec3(const json& j, const std::string& key, std::vector<std::string>& issues) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
        !j[2].is_number()) {
        issues.push_back(key + ": expected [x, y, z] in meters");
        return {};
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

const json* require_key(const json& doc, const std::string& key, json::value_t type,
                        std::vector<std::string>& issues, const char* type_name) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        issues.push_back(key + ": missing required key");
        return nullptr;
    }
    const bool numeric_ok =
        type == json::value_t::number_float && it->is_number();
    if (it->type() != type && !numeric_ok) {
        issues.push_back(key + ": expected " + type_name);
        return nullptr;
    }
    return &*it;
}

void check_unknown_keys(const json& doc, const std::set<std::string>& known,
                        const std::string& prefix, std::vector<std::string>& issues) {
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key())) issues.push_back(prefix + it.key() + ": unknown key");
}

}  // namespace

void validate_scenario(const Scenario& s) {
    std::vector<std::string> issues;
    collect_scenario_issues(s, issues);
    if (!issues.empty()) throw ConfigError("scenario validation failed", std::move(issues));
}

Scenario parse_scenario(const std::string& json_text, const std::string& source_name) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(source_name + ": JSON parse error: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(source_name + ": top level must be an object");

    std::vector<std::string> issues;
    check_unknown_keys(doc,
                       {"radars", "target", "jammer", "array", "waveform", "slots",
                        "target_snr_db", "input_jsnr_per_element_db", "noise_variance", "p",
                        "seed"},
                       "", issues);

    Scenario s;

    if (const json* j = require_key(doc, "radars", json::value_t::array, issues, "array")) {
        for (std::size_t k = 0; k < j->size(); ++k)
            s.radar_positions.push_back(parse_vec3((*j)[k], "radars[" + std::to_string(k) + "]",
                                                   issues));
    }
    if (const json* j = require_key(doc, "target", json::value_t::array, issues, "array"))
        s.target_position = parse_vec3(*j, "target", issues);
    if (const json* j = require_key(doc, "jammer", json::value_t::array, issues, "array"))
        s.jammer_position = parse_vec3(*j, "jammer", issues);

    if (const json* j = require_key(doc, "array", json::value_t::object, issues, "object")) {
        check_unknown_keys(*j, {"n", "d_m", "axis"}, "array.", issues);
        if (const json* n = require_key(*j, "n", json::value_t::number_unsigned, issues,
                                        "positive integer"))
            s.jammer_array.num_elements = n->get<std::size_t>();
        if (const json* d = require_key(*j, "d_m", json::value_t::number_float, issues, "number"))
            s.jammer_array.element_spacing_m = d->get<double>();
        if (auto it = j->find("axis"); it != j->end())
            s.jammer_array.axis = parse_vec3(*it, "array.axis", issues);
        // default axis (1,0,0) documented in the schema
    }

    if (const json* j = require_key(doc, "waveform", json::value_t::object, issues, "object")) {
        check_unknown_keys(*j, {"type", "bandwidth_hz", "duration_s", "carrier_hz"}, "waveform.",
                           issues);
        if (const json* t = require_key(*j, "type", json::value_t::string, issues, "string")) {
            if (t->get<std::string>() != "lfm")
                issues.push_back("waveform.type: only \"lfm\" is supported");
            s.waveform.type = WaveformType::kLfm;
        }
        if (const json* v = require_key(*j, "bandwidth_hz", json::value_t::number_float, issues,
                                        "number"))
            s.waveform.bandwidth_hz = v->get<double>();
        if (const json* v = require_key(*j, "duration_s", json::value_t::number_float, issues,
                                        "number"))
            s.waveform.duration_s = v->get<double>();
        if (const json* v = require_key(*j, "carrier_hz", json::value_t::number_float, issues,
                                        "number"))
            s.waveform.carrier_hz = v->get<double>();
    }

    if (const json* j = require_key(doc, "slots", json::value_t::number_unsigned, issues,
                                    "positive integer"))
        s.num_slots = j->get<std::size_t>();
    if (const json* j = require_key(doc, "target_snr_db", json::value_t::number_float, issues,
                                    "number"))
        s.target_snr_db = j->get<double>();
    if (const json* j = require_key(doc, "input_jsnr_per_element_db", json::value_t::number_float,
                                    issues, "number"))
        s.input_jsnr_per_element_db = j->get<double>();
    if (const json* j = require_key(doc, "noise_variance", json::value_t::number_float, issues,
                                    "number"))
        s.noise_variance = j->get<double>();
    if (const json* j = require_key(doc, "p", json::value_t::number_float, issues, "number"))
        s.selection_probability = j->get<double>();
    // seeds are mandatory: reruns must be reproducible
    if (const json* j = require_key(doc, "seed", json::value_t::number_unsigned, issues,
                                    "unsigned integer"))
        s.master_seed = j->get<std::uint64_t>();

    if (!issues.empty()) throw ConfigError(source_name + ": schema error", std::move(issues));

    collect_scenario_issues(s, issues);
    if (!issues.empty())
        throw ConfigError(source_name + ": validation error", std::move(issues));
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path.filename().string());
}

GeometrySolution solve_geometry(const Scenario& s) {
    const std::size_t k_count = s.num_radars();
    GeometrySolution g;
    g.angles_rad.resize(k_count);
    g.jammer_delays_s.resize(k_count);
    g.target_delays_s.resize(k_count);

    for (std::size_t k = 0; k < k_count; ++k) {
        const Vec3 to_radar = s.radar_positions[k] - s.jammer_position;
        const double dist_j = norm(to_radar);
        const double dist_t = norm(s.radar_positions[k] - s.target_position);
        if (dist_j == 0.0)
            throw ConfigError("degenerate geometry: radar " + std::to_string(k) +
                              " coincides with the jammer");
        if (dist_t == 0.0)
            throw ConfigError("degenerate geometry: radar " + std::to_string(k) +
                              " coincides with the target");
        double sin_theta = dot(s.jammer_array.axis, to_radar) / dist_j;
        sin_theta = std::clamp(sin_theta, -1.0, 1.0);
        g.angles_rad[k] = std::asin(sin_theta);
        g.jammer_delays_s[k] = dist_j / kSpeedOfLight;
        g.target_delays_s[k] = 2.0 * dist_t / kSpeedOfLight;
    }
    return g;
}

}  // namespace rassim
