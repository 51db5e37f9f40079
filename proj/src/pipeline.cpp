#include "rassim/pipeline.hpp"

#include <cmath>

#include "rassim/receiver.hpp"
#include "rassim/rng.hpp"

namespace rassim {

namespace {

SnapshotMatrix synthesize_trial(const Scenario& scn, const SnapshotSynthesizer& synth,
                                const GeometrySolution& geom, JammingPattern pattern,
                                std::uint64_t trial_index) {
    const double wavelength = scn.waveform.wavelength_m();
    JammingGains gains;
    if (pattern == JammingPattern::kTraditional) {
        gains = traditional_gains(geom, scn.jammer_array, wavelength, scn.num_slots);
    } else {
        Rng switch_rng = trial_stream(scn.master_seed, trial_index, StreamRole::kSwitch);
        gains = rass_gains(sample_switch(scn.selection_probability, scn.jammer_array.num_elements,
                                         scn.num_slots, switch_rng),
                           geom, scn.jammer_array, wavelength);
    }
    Rng wave_rng = trial_stream(scn.master_seed, trial_index, StreamRole::kJamWave);
    Rng noise_rng = trial_stream(scn.master_seed, trial_index, StreamRole::kNoise);
    const BasebandSignal r = gen_noise_jamming(
        synth.power_levels().r_rr, scn.num_slots,
        scn.waveform.duration_s / static_cast<double>(scn.num_slots), wave_rng);
    return synth.synthesize(gains, r, noise_rng);
}

}  // namespace

ProfileTrial run_profile_trial(const Scenario& scn, JammingPattern pattern,
                               std::uint64_t trial_index) {
    const GeometrySolution geom = solve_geometry(scn);
    const SnapshotSynthesizer synth(scn, geom);

    ProfileTrial trial;
    trial.snapshot = synthesize_trial(scn, synth, geom, pattern, trial_index);
    const EigenSystem es = eig_hermitian(sample_covariance(trial.snapshot.data));
    const SubspaceSplit split = split_subspaces(es, scn.num_jammers, scn.num_targets);
    const CMatrix projected = eigenproject(trial.snapshot.data, split.jamming);
    trial.profile = range_profile(projected, gen_lfm(scn.waveform, scn.num_slots));

    trial.true_target_bin =
        static_cast<std::size_t>(std::llround(synth.target_offset_slots())) % scn.num_slots;
    for (std::size_t m = 1; m < trial.profile.bins.size(); ++m)
        if (trial.profile.bins[m] > trial.profile.bins[trial.peak_bin]) trial.peak_bin = m;
    trial.peak_to_median = peak_to_median_db(trial.profile);
    return trial;
}

RangeProfile clean_echo_profile(const Scenario& scn, std::uint64_t trial_index) {
    const GeometrySolution geom = solve_geometry(scn);
    const SnapshotSynthesizer synth(scn, geom);
    const SnapshotMatrix snap =
        synthesize_trial(scn, synth, geom, JammingPattern::kTraditional, trial_index);
    CMatrix clean(snap.signal.rows(), snap.signal.cols());
    for (std::size_t i = 0; i < clean.rows(); ++i)
        for (std::size_t j = 0; j < clean.cols(); ++j)
            clean(i, j) = snap.signal(i, j) + snap.noise(i, j);
    return range_profile(clean, gen_lfm(scn.waveform, scn.num_slots));
}

}  // namespace rassim
