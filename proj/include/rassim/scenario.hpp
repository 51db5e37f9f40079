#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rassim/types.hpp"
#include "rassim/waveform.hpp"

namespace rassim {

/// ULA along `axis`; element n sits at jammer_position + n * spacing * axis.
struct ArrayGeometry {
    std::size_t num_elements = 0;    // N
    double element_spacing_m = 0.0;  // d
    Vec3 axis{1.0, 0.0, 0.0};        // unit vector
};

/// Full experiment description. Radar index 0 is the main radar.
struct Scenario {
    std::vector<Vec3> radar_positions;  // K >= 2
    Vec3 target_position;
    Vec3 jammer_position;
    ArrayGeometry jammer_array;
    WaveformSpec waveform;
    std::size_t num_slots = 0;            // L
    double target_snr_db = 0.0;           // ||s||^2 / E||n||^2
    double input_jsnr_per_element_db = 0.0;
    double noise_variance = 0.0;          // sigma^2
    double selection_probability = 0.0;   // p
    std::size_t num_jammers = 1;          // J
    std::size_t num_targets = 1;          // T
    std::uint64_t master_seed = 0;

    std::size_t num_radars() const { return radar_positions.size(); }
};

/// Throws ConfigError listing every violated invariant.
void validate_scenario(const Scenario& s);

/// Parse + validate a scenario JSON document (strict: unknown keys rejected,
/// all problems reported together). `source_name` labels error messages.
Scenario parse_scenario(const std::string& json_text, const std::string& source_name = "scenario");

/// Load from file; IoError on read failure.
Scenario load_scenario(const std::filesystem::path& path);

/// Angles and propagation delays derived from the scenario geometry.
/// theta_k is measured from the array broadside plane, so the steering phase
/// term uses sin(theta_k) = axis . (r_k - jammer) / |r_k - jammer|.
/// target_delays follow the doubled one-way convention: 2 |r_k - target| / c.
struct GeometrySolution {
    std::vector<double> angles_rad;        // theta_k
    std::vector<double> jammer_delays_s;   // tau_k^j
    std::vector<double> target_delays_s;   // tau_k^t

    double sin_theta(std::size_t k) const { return std::sin(angles_rad[k]); }
};

/// Pure and deterministic; throws ConfigError on degenerate geometry
/// (radar coincident with jammer or target).
GeometrySolution solve_geometry(const Scenario& scenario);

}  // namespace rassim
