#pragma once

#include <vector>

#include "rassim/receiver.hpp"
#include "rassim/types.hpp"
#include "rassim/waveform.hpp"

namespace rassim {

/// (1/L) sum_l x[:,l] x[:,l]^H. Hermitian PSD by construction.
CMatrix sample_covariance(const CMatrix& snapshots);

/// Eigendecomposition of a Hermitian matrix: eigenvalues descending,
/// eigenvector columns orthonormal, column i paired with eigenvalue i.
struct EigenSystem {
    std::vector<double> eigenvalues;
    CMatrix eigenvectors;  // K x K, column-aligned with eigenvalues
};

/// Cyclic Jacobi on the Hermitian input. Deterministic phase convention: each
/// eigenvector is scaled so its largest-modulus entry is real positive
/// (ties broken towards the lowest index). Throws NumericError when the input
/// is non-Hermitian beyond 1e-10 relative.
EigenSystem eig_hermitian(const CMatrix& matrix);

/// Columns split by descending eigenvalue: first J jamming, next T signal,
/// remaining K-J-T noise.
struct SubspaceSplit {
    CMatrix jamming;  // K x J
    CMatrix signal;   // K x T
    CMatrix noise;    // K x (K-J-T)
    std::vector<double> jamming_eigenvalues;
    std::vector<double> signal_eigenvalues;
    std::vector<double> noise_eigenvalues;
};

SubspaceSplit split_subspaces(const EigenSystem& es, std::size_t num_jammers,
                              std::size_t num_targets);

/// y = (I - U_J U_J^H) x, column by column.
CMatrix eigenproject(const CMatrix& snapshots, const CMatrix& jamming_basis);

/// Same projection applied to data and to each retained component label.
SnapshotMatrix eigenproject(const SnapshotMatrix& snapshots, const CMatrix& jamming_basis);

/// Matched-filter range profile: per radar, circular cross-correlation with
/// the replica, squared magnitudes summed noncoherently across radars. The
/// stored bins are the square root of that sum (an RMS-combined amplitude);
/// dB values derived from bins use 10*log10 of bin ratios.
struct RangeProfile {
    std::vector<double> bins;               // sqrt(sum_k |corr_k|^2), length L
    double bin_resolution_m = 0.0;          // c * slot / 2
    std::vector<std::vector<double>> per_radar;  // |corr_k|, K x L (optional use)
};

RangeProfile range_profile(const CMatrix& snapshots, const BasebandSignal& replica);

/// Peak-to-median of the profile bins, in 10*log10 of the bin ratio.
double peak_to_median_db(const RangeProfile& profile);

/// Single-trial ratio ||q||^2 / ||s + n||^2 of an already-projected snapshot
/// (labels carry the projected components). Throws NumericError on a zero
/// denominator.
double output_jsnr_empirical(const SnapshotMatrix& projected);

}  // namespace rassim
