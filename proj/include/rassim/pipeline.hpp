#pragma once

#include <cstdint>

#include "rassim/jammer.hpp"
#include "rassim/scenario.hpp"
#include "rassim/suppression.hpp"

namespace rassim {

/// One seeded realization of the receive / suppress / pulse-compress chain.
struct ProfileTrial {
    SnapshotMatrix snapshot;   // raw received components
    RangeProfile profile;      // after eigenprojection (J, T from the scenario)
    std::size_t peak_bin = 0;
    std::size_t true_target_bin = 0;
    double peak_to_median = 0.0;  // dB, 10*log10 of the bin ratio
};

ProfileTrial run_profile_trial(const Scenario& scenario, JammingPattern pattern,
                               std::uint64_t trial_index);

/// Matched-filter profile of echo + noise only (no jamming, no suppression);
/// the reference a "focused profile" threshold is derived from.
RangeProfile clean_echo_profile(const Scenario& scenario, std::uint64_t trial_index);

}  // namespace rassim
