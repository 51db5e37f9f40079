#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rassim/scenario.hpp"

namespace rassim {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double measured = 0.0;
    std::string bound;
    std::string note;
};

struct ValidationOptions {
    std::size_t covariance_draws = 100000;
    double covariance_rel_tol = 0.02;
    std::size_t baseline_trials = 1000;
    std::size_t hygiene_instances = 20;
    unsigned threads = 0;
};

struct ValidationOutcome {
    std::vector<CheckResult> checks;
    bool all_pass = true;  // skipped checks do not fail the run
};

/// Property suites: closed-form RASS covariance vs Monte Carlo, rank
/// structure, first-order perturbation accuracy (O(eps^2) slope and top
/// eigenvector alignment), numeric hygiene (projector idempotence, eigen
/// reconstruction, PSD, energy split), and the traditional-baseline JSNR
/// check with its fallback bounds.
ValidationOutcome run_validation_suite(const Scenario& scenario, const ValidationOptions& options);

// Individual checks, exposed for tests and the acceptance suite.

/// Relative Frobenius error between the closed-form RASS jamming covariance
/// and the sample covariance of `draws` independently synthesized jamming
/// snapshots.
double rass_covariance_mc_error(const Scenario& scenario, std::size_t draws);

/// max_k |lambda_k(B + eps*D) - lambda_k(B) - eps * u_k^H D u_k| for the
/// given eps values on a fixed well-separated base; returns the log-log
/// regression slope.
double perturbation_error_slope(const std::vector<double>& eps_values, std::uint64_t seed);

/// |u1_pert^H u1_exact| for the scenario's actual perturbation at its p.
double perturbation_alignment(const Scenario& scenario);

/// Numeric-hygiene checks over random Hermitian PSD instances with K cycling
/// through {2..8}: projector idempotence, eigen reconstruction, PSD floor,
/// projection energy split.
std::vector<CheckResult> run_hygiene_checks(std::uint64_t seed, std::size_t instances);

}  // namespace rassim
