#pragma once

#include <cstddef>
#include <vector>

#include "rassim/rng.hpp"
#include "rassim/types.hpp"

namespace rassim {

struct ArrayGeometry;  // scenario.hpp
struct Scenario;

enum class WaveformType { kLfm, kGaussianNoise };

struct WaveformSpec {
    WaveformType type = WaveformType::kLfm;
    double bandwidth_hz = 0.0;
    double duration_s = 0.0;
    double carrier_hz = 0.0;

    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
};

/// Complex baseband samples on the common slot grid, one sample per slot.
struct BasebandSignal {
    std::vector<cplx> samples;
    double slot_duration_s = 0.0;
};

struct SteeringVector {
    std::vector<cplx> entries;  // entry_n = exp(j 2 pi n d sin(theta) / lambda), entry_0 = 1
};

SteeringVector steering_vector(double theta_rad, const ArrayGeometry& geom, double wavelength_m);

/// Unit-amplitude LFM chirp, symmetric about mid-pulse, sampled at slot
/// centers t_l = (l + 0.5) T / L.
BasebandSignal gen_lfm(const WaveformSpec& spec, std::size_t num_slots);

/// I.i.d. circularly-symmetric complex Gaussian samples with E|r|^2 = r_rr.
/// One complex sample per slot, so whiteness at slot resolution matches the
/// radar bandwidth. A given r_rr scales a unit-power draw, so the same stream
/// scales exactly with sqrt(r_rr).
BasebandSignal gen_noise_jamming(double r_rr, std::size_t num_slots, double slot_duration_s,
                                 Rng& rng);

/// Power bookkeeping. Energies are instantaneous snapshot-vector powers:
/// expected_noise_power = K sigma^2, echo power = K A^2 with per-radar echo
/// amplitude A; r_rr solves K r_rr / (K A^2 + K sigma^2) = 10^(jsnr/10).
struct PowerLevels {
    double echo_amplitude = 0.0;       // A
    double r_rr = 0.0;                 // per-sample jamming power
    double expected_sn_power = 0.0;    // E ||s(t)||^2 + E ||n(t)||^2, per snapshot
};

PowerLevels derive_power_levels(const Scenario& scenario);

}  // namespace rassim
