#include "rassim/receiver.hpp"

#include <cmath>
#include <ostream>

#include "rassim/errors.hpp"
#include "rassim/kernels.hpp"

namespace rassim {

cplx carrier_phasor(double carrier_hz, double tau_s) {
    const double cycles = carrier_hz * tau_s;
    const double frac = cycles - std::floor(cycles);
    return std::polar(1.0, -2.0 * kPi * frac);
}

std::vector<cplx> fractional_cyclic_shift(const std::vector<cplx>& x, double shift_slots) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    // direct DFT; called once per scenario, n is small
    std::vector<cplx> spec(n);
    for (std::size_t f = 0; f < n; ++f) {
        cplx acc = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            acc += x[l] * std::polar(1.0, -2.0 * kPi * static_cast<double>(f) *
                                              static_cast<double>(l) / static_cast<double>(n));
        spec[f] = acc;
    }
    std::vector<cplx> out(n);
    for (std::size_t l = 0; l < n; ++l) {
        cplx acc = 0.0;
        for (std::size_t f = 0; f < n; ++f) {
            // signed frequency for band-limited interpolation
            const double fs = (f < (n + 1) / 2) ? static_cast<double>(f)
                                                : static_cast<double>(f) - static_cast<double>(n);
            const cplx shifted =
                spec[f] * std::polar(1.0, -2.0 * kPi * fs * shift_slots / static_cast<double>(n));
            acc += shifted * std::polar(1.0, 2.0 * kPi * static_cast<double>(f) *
                                                 static_cast<double>(l) / static_cast<double>(n));
        }
        out[l] = acc / static_cast<double>(n);
    }
    return out;
}

SnapshotSynthesizer::SnapshotSynthesizer(const Scenario& scenario, const GeometrySolution& geom) {
    const std::size_t k_count = scenario.num_radars();
    const std::size_t slots = scenario.num_slots;
    power_ = derive_power_levels(scenario);
    noise_variance_ = scenario.noise_variance;

    jam_phasors_.resize(k_count);
    echo_phasors_.resize(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        jam_phasors_[k] = carrier_phasor(scenario.waveform.carrier_hz, geom.jammer_delays_s[k]);
        echo_phasors_[k] = carrier_phasor(scenario.waveform.carrier_hz, geom.target_delays_s[k]);
    }

    const BasebandSignal lfm = gen_lfm(scenario.waveform, slots);
    target_offset_slots_ =
        std::fmod((geom.target_delays_s[0] - geom.jammer_delays_s[0]) / lfm.slot_duration_s,
                  static_cast<double>(slots));
    if (target_offset_slots_ < 0.0) target_offset_slots_ += static_cast<double>(slots);
    envelope_.slot_duration_s = lfm.slot_duration_s;
    envelope_.samples = fractional_cyclic_shift(lfm.samples, target_offset_slots_);

    const JammingGains trad = traditional_gains(geom, scenario.jammer_array,
                                                scenario.waveform.wavelength_m(), 1);
    jam_dir_.resize(k_count);
    echo_dir_.resize(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        jam_dir_[k] = trad.gains(k, 0) * jam_phasors_[k];
        echo_dir_[k] = power_.echo_amplitude * echo_phasors_[k];
    }
}

SnapshotMatrix SnapshotSynthesizer::synthesize(const JammingGains& gains,
                                               const BasebandSignal& jam_wave,
                                               Rng& noise_rng) const {
    const std::size_t k_count = jam_phasors_.size();
    const std::size_t slots = envelope_.samples.size();
    if (gains.gains.rows() != k_count || gains.gains.cols() != slots)
        throw DimensionError("synthesize: gains dimensions do not match scenario");
    if (jam_wave.samples.size() != slots)
        throw DimensionError("synthesize: jamming waveform length != slot count");

    SnapshotMatrix snap;
    snap.signal = CMatrix(k_count, slots);
    snap.jamming = CMatrix(k_count, slots);
    snap.noise = CMatrix(k_count, slots);
    snap.data = CMatrix(k_count, slots);

    for (std::size_t k = 0; k < k_count; ++k) {
        kernels::scale(echo_dir_[k], envelope_.samples, snap.signal.row(k));
        // q_k[l] = g_k[l] * r[l] * e^{-j 2 pi f_c tau_k^j}
        kernels::hadamard(gains.gains.row(k), jam_wave.samples, snap.jamming.row(k));
        kernels::scale(jam_phasors_[k], snap.jamming.row(k), snap.jamming.row(k));
    }
    // noise drawn after alignment (white at the fusion center), row-major order
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t l = 0; l < slots; ++l)
            snap.noise(k, l) = noise_rng.cnormal(noise_variance_);

    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t l = 0; l < slots; ++l)
            snap.data(k, l) = snap.signal(k, l) + snap.jamming(k, l) + snap.noise(k, l);
    return snap;
}

SnapshotMatrix synthesize(const Scenario& scenario, const GeometrySolution& geom,
                          const JammingGains& gains, const BasebandSignal& jam_wave,
                          Rng& noise_rng) {
    return SnapshotSynthesizer(scenario, geom).synthesize(gains, jam_wave, noise_rng);
}

void dump_snapshot_csv(const CMatrix& data, std::ostream& out) {
    out << "# snapshot matrix: one row per radar; columns re_0,im_0,...,re_" << data.cols() - 1
        << ",im_" << data.cols() - 1 << "\n";
    char buf[64];
    for (std::size_t k = 0; k < data.rows(); ++k) {
        for (std::size_t l = 0; l < data.cols(); ++l) {
            const cplx v = data(k, l);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
            out << (l ? "," : "") << buf;
        }
        out << "\n";
    }
}

}  // namespace rassim
