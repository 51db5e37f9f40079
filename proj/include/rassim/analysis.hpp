#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rassim/jammer.hpp"
#include "rassim/scenario.hpp"
#include "rassim/suppression.hpp"
#include "rassim/types.hpp"

namespace rassim {

/// Closed-form jamming covariance under random subset selection:
/// p^2 R_JJ + N p (1-p) r_rr I. Full rank for 0 < p < 1.
CMatrix rass_jamming_covariance(double p, std::size_t num_elements, double r_rr,
                                const CMatrix& r_jj);

/// Rank-1 covariance of the full-array jamming: r_rr a a^H with
/// a_k = g_k e^{-j 2 pi f_c tau_k^j}. `carrier_phasors` are those unit
/// phasors. Throws when the gains are not the traditional pattern.
CMatrix traditional_jamming_covariance(const JammingGains& gains, double r_rr,
                                       std::span<const cplx> carrier_phasors);

/// First-order eigenpair perturbation of base + delta.
struct PerturbationResult {
    std::vector<double> delta_eigenvalues;  // u_k^H dR u_k, all k
    /// Approximate eigenvectors u_k + U b_k for the requested indices;
    /// entries for unrequested indices are left empty.
    std::vector<std::vector<cplx>> approx_eigenvectors;
    std::vector<std::size_t> computed_indices;
};

/// b_k[i] = u_i^H dR u_k / (lambda_k - lambda_i), b_k[k] = 0. Eigenvalue
/// shifts are gap-free and always computed; eigenvector corrections are
/// computed for `indices` (all of them when empty) and require every used
/// gap to exceed gap_tol (default 1e-9 * lambda_1) — a degenerate spectrum
/// raises NumericError.
PerturbationResult perturb_eigs(const EigenSystem& base, const CMatrix& delta,
                                double gap_tol = -1.0, std::vector<std::size_t> indices = {});

/// Closed-form output JSNR: K r_rr / E[||s||^2 + ||n||^2] * N p (1-p),
/// with per-snapshot energies. Linear ratio (0 at p = 0 or 1).
double closed_form_jsnr(std::size_t num_radars, std::size_t num_elements, double p, double r_rr,
                        double expected_sn_power);

/// Expectation-level covariances of a scenario (no sampling noise).
struct EnsembleModel {
    std::vector<cplx> jam_dir;   // a
    std::vector<cplx> echo_dir;  // b
    CMatrix r_jj;                // r_rr a a^H
    CMatrix r_ss;                // b b^H
    CMatrix r_xx;                // r_ss + r_jj + sigma^2 I
    double r_rr = 0.0;
    double expected_sn_power = 0.0;
};

EnsembleModel build_ensemble(const Scenario& scenario, const GeometrySolution& geom);

enum class JsnrMode { kExactEigen, kPerturbation, kBoth };

/// One grid point of the output-JSNR experiments.
struct JsnrReport {
    double p = 0.0;
    std::size_t num_elements = 0;  // N
    std::size_t num_radars = 0;    // K
    std::size_t trials = 0;
    double r_rr = 0.0;
    std::uint64_t master_seed = 0;
    double closed_form_db = 0.0;  // -inf at p in {0,1}
    std::optional<double> empirical_exact_db;
    std::optional<double> empirical_perturbation_db;
    std::vector<double> per_trial_exact;         // per-trial linear ratios
    std::vector<double> per_trial_perturbation;  // per-trial linear ratios
};

/// Monte Carlo over independent trials; trial i draws its streams from
/// hash64(master_seed, i), so results are independent of scheduling.
/// Numerator and denominator are averaged separately before the ratio.
JsnrReport jsnr_monte_carlo(const Scenario& scenario, JammingPattern pattern, std::size_t trials,
                            JsnrMode mode, unsigned threads = 0);

std::vector<JsnrReport> sweep_p(const Scenario& scenario, const std::vector<double>& p_grid,
                                std::size_t trials, JsnrMode mode, unsigned threads = 0);

/// Per-element input JSNR held fixed across N (r_rr does not depend on N).
std::vector<JsnrReport> sweep_n(const Scenario& scenario, const std::vector<std::size_t>& n_set,
                                std::size_t trials, JsnrMode mode, unsigned threads = 0);

}  // namespace rassim
