#include "rassim/waveform.hpp"

#include <cmath>

#include "rassim/errors.hpp"
#include "rassim/scenario.hpp"

namespace rassim {

SteeringVector steering_vector(double theta_rad, const ArrayGeometry& geom, double wavelength_m) {
    SteeringVector sv;
    sv.entries.resize(geom.num_elements);
    const double sin_theta = std::sin(theta_rad);
    for (std::size_t n = 0; n < geom.num_elements; ++n) {
        const double phase =
            2.0 * kPi * static_cast<double>(n) * geom.element_spacing_m * sin_theta / wavelength_m;
        sv.entries[n] = std::polar(1.0, phase);
    }
    return sv;
}

BasebandSignal gen_lfm(const WaveformSpec& spec, std::size_t num_slots) {
    if (spec.type != WaveformType::kLfm) throw NumericError("gen_lfm: waveform type is not lfm");
    BasebandSignal sig;
    sig.slot_duration_s = spec.duration_s / static_cast<double>(num_slots);
    sig.samples.resize(num_slots);
    const double rate = spec.bandwidth_hz / spec.duration_s;  // chirp slope B/T
    const double half = 0.5 * spec.duration_s;
    for (std::size_t l = 0; l < num_slots; ++l) {
        const double t = (static_cast<double>(l) + 0.5) * sig.slot_duration_s;
        const double dt = t - half;
        sig.samples[l] = std::polar(1.0, kPi * rate * dt * dt);
    }
    return sig;
}

BasebandSignal gen_noise_jamming(double r_rr, std::size_t num_slots, double slot_duration_s,
                                 Rng& rng) {
    if (!(r_rr > 0.0)) throw NumericError("gen_noise_jamming: r_rr must be > 0");
    BasebandSignal sig;
    sig.slot_duration_s = slot_duration_s;
    sig.samples.resize(num_slots);
    const double amp = std::sqrt(r_rr);
    for (auto& s : sig.samples) s = amp * rng.cnormal(1.0);
    return sig;
}

PowerLevels derive_power_levels(const Scenario& s) {
    PowerLevels p;
    // per-radar echo amplitude from ||s(t)||^2 / E||n(t)||^2 = K A^2 / (K sigma^2)
    p.echo_amplitude = std::sqrt(std::pow(10.0, s.target_snr_db / 10.0) * s.noise_variance);
    const double k = static_cast<double>(s.num_radars());
    p.expected_sn_power = k * (p.echo_amplitude * p.echo_amplitude + s.noise_variance);
    // K r_rr / E[||s||^2 + ||n||^2] = 10^(jsnr/10), per snapshot
    p.r_rr = std::pow(10.0, s.input_jsnr_per_element_db / 10.0) * p.expected_sn_power / k;
    return p;
}

}  // namespace rassim
