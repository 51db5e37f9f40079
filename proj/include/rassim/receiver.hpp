#pragma once

#include <iosfwd>

#include "rassim/jammer.hpp"
#include "rassim/rng.hpp"
#include "rassim/scenario.hpp"
#include "rassim/types.hpp"
#include "rassim/waveform.hpp"

namespace rassim {

/// K x L received snapshots with the ground-truth decomposition retained:
/// data = signal + jamming + noise elementwise, by construction.
struct SnapshotMatrix {
    CMatrix data;
    CMatrix signal;   // s
    CMatrix jamming;  // q
    CMatrix noise;    // n
};

/// Fusion-center model with the alignment conventions in one place.
///
/// Alignment: the fusion center compensates the known jammer->radar delays so
/// slot l of the transmitted jamming waveform lands at slot l for every
/// radar; this is what keeps the received jamming signals coherent across
/// radars (rank-1 covariance) under the traditional pattern. Residual carrier
/// phases e^{-j 2 pi f_c tau} are retained on both jamming and echo rows.
/// The target echo envelope appears at the common offset
/// (tau_1^t - tau_1^j) mod (L * slot) relative to this grid, applied as a
/// fractional cyclic shift via frequency-domain linear phase.
class SnapshotSynthesizer {
public:
    SnapshotSynthesizer(const Scenario& scenario, const GeometrySolution& geom);

    /// One trial. `gains` columns and `jam_wave` samples must span num_slots.
    /// Only the noise draws come from `noise_rng`.
    SnapshotMatrix synthesize(const JammingGains& gains, const BasebandSignal& jam_wave,
                              Rng& noise_rng) const;

    /// a_k = g_k * e^{-j 2 pi f_c tau_k^j} for the traditional (full-array) gains.
    const std::vector<cplx>& jamming_direction() const { return jam_dir_; }
    /// b_k = A * e^{-j 2 pi f_c tau_k^t}.
    const std::vector<cplx>& echo_direction() const { return echo_dir_; }

    const PowerLevels& power_levels() const { return power_; }
    const BasebandSignal& echo_envelope() const { return envelope_; }
    double target_offset_slots() const { return target_offset_slots_; }
    std::size_t num_radars() const { return jam_phasors_.size(); }
    std::size_t num_slots() const { return envelope_.samples.size(); }

private:
    PowerLevels power_;
    BasebandSignal envelope_;            // target-shifted LFM, unit amplitude
    std::vector<cplx> jam_phasors_;      // e^{-j 2 pi f_c tau_k^j}
    std::vector<cplx> echo_phasors_;     // e^{-j 2 pi f_c tau_k^t}
    std::vector<cplx> jam_dir_;          // a
    std::vector<cplx> echo_dir_;         // b
    double target_offset_slots_ = 0.0;
    double noise_variance_ = 0.0;
};

/// Spec-shaped convenience wrapper around SnapshotSynthesizer.
SnapshotMatrix synthesize(const Scenario& scenario, const GeometrySolution& geom,
                          const JammingGains& gains, const BasebandSignal& jam_wave,
                          Rng& noise_rng);

/// Cyclic shift by a (possibly fractional) number of slots via linear phase in
/// the DFT domain; signed frequencies, energy-preserving.
std::vector<cplx> fractional_cyclic_shift(const std::vector<cplx>& x, double shift_slots);

/// e^{-j 2 pi f_c tau}, with f_c tau reduced modulo 1 before the multiply so
/// the ~1e5-cycle delays keep full phase precision.
cplx carrier_phasor(double carrier_hz, double tau_s);

/// Textual dump: one CSV row per radar with re/im interleaved; a leading
/// comment line documents the layout.
void dump_snapshot_csv(const CMatrix& data, std::ostream& out);

}  // namespace rassim
