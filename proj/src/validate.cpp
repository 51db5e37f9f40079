#include "rassim/validate.hpp"

#include <cmath>

#include "rassim/analysis.hpp"
#include "rassim/errors.hpp"
#include "rassim/kernels.hpp"
#include "rassim/receiver.hpp"
#include "rassim/rng.hpp"

namespace rassim {

namespace {

constexpr std::uint64_t kRoleCovCheck = 0xCAFE01;
constexpr std::uint64_t kRoleSlope = 0xCAFE02;
constexpr std::uint64_t kRoleHygiene = 0xCAFE03;

CMatrix random_hermitian_psd(std::size_t k, Rng& rng) {
    const std::size_t cols = k + 4;
    CMatrix g(k, cols);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.cnormal(1.0);
    return sample_covariance(g);
}

CMatrix random_hermitian(std::size_t k, Rng& rng) {
    CMatrix h(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        h(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < k; ++j) {
            const cplx v = rng.cnormal(1.0);
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }
    return h;
}

}  // namespace

double rass_covariance_mc_error(const Scenario& scenario, std::size_t draws) {
    const GeometrySolution geom = solve_geometry(scenario);
    const EnsembleModel model = build_ensemble(scenario, geom);
    const double p = scenario.selection_probability;
    const std::size_t k_count = scenario.num_radars();
    const std::size_t n_elems = scenario.jammer_array.num_elements;

    Rng rng(hash64(scenario.master_seed, kRoleCovCheck));
    const SwitchRealization sw = sample_switch(p, n_elems, draws, rng);
    const JammingGains gains = rass_gains(sw, geom, scenario.jammer_array,
                                          scenario.waveform.wavelength_m());
    // q[l] = gains[:,l] * r[l] * e^{-j 2 pi f_c tau_k^j}, matching the
    // phasors baked into the closed-form side via model.jam_dir
    std::vector<cplx> phasors(k_count);
    for (std::size_t k = 0; k < k_count; ++k)
        phasors[k] = carrier_phasor(scenario.waveform.carrier_hz, geom.jammer_delays_s[k]);

    CMatrix acc(k_count, k_count);
    std::vector<cplx> q(k_count);
    for (std::size_t l = 0; l < draws; ++l) {
        const cplx r = std::sqrt(model.r_rr) * rng.cnormal(1.0);
        for (std::size_t k = 0; k < k_count; ++k) q[k] = gains.gains(k, l) * r * phasors[k];
        for (std::size_t i = 0; i < k_count; ++i)
            for (std::size_t j = 0; j < k_count; ++j) acc(i, j) += q[i] * std::conj(q[j]);
    }
    const double inv = 1.0 / static_cast<double>(draws);
    const CMatrix closed =
        rass_jamming_covariance(p, n_elems, model.r_rr, model.r_jj);
    CMatrix diff(k_count, k_count);
    for (std::size_t i = 0; i < k_count; ++i)
        for (std::size_t j = 0; j < k_count; ++j) diff(i, j) = acc(i, j) * inv - closed(i, j);
    return frobenius_norm(diff) / frobenius_norm(closed);
}

double perturbation_error_slope(const std::vector<double>& eps_values, std::uint64_t seed) {
    Rng rng(hash64(seed, kRoleSlope));
    const std::size_t k = 4;
    // base with well-separated spectrum
    const EigenSystem vecs = eig_hermitian(random_hermitian_psd(k, rng));
    const std::vector<double> lambdas{10.0, 6.0, 3.0, 1.0};
    CMatrix base(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            cplx s = 0.0;
            for (std::size_t m = 0; m < k; ++m)
                s += lambdas[m] * vecs.eigenvectors(i, m) * std::conj(vecs.eigenvectors(j, m));
            base(i, j) = s;
        }
    CMatrix dir = random_hermitian(k, rng);
    const double dn = frobenius_norm(dir);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) dir(i, j) /= dn;

    const EigenSystem base_es = eig_hermitian(base);
    std::vector<double> log_eps, log_err;
    for (double eps : eps_values) {
        CMatrix delta(k, k), perturbed(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                delta(i, j) = eps * dir(i, j);
                perturbed(i, j) = base(i, j) + delta(i, j);
            }
        const PerturbationResult pert = perturb_eigs(base_es, delta);
        const EigenSystem exact = eig_hermitian(perturbed);
        double err = 0.0;
        for (std::size_t m = 0; m < k; ++m)
            err = std::max(err, std::abs(exact.eigenvalues[m] - base_es.eigenvalues[m] -
                                         pert.delta_eigenvalues[m]));
        log_eps.push_back(std::log(eps));
        log_err.push_back(std::log(err));
    }
    // least-squares slope
    const double n = static_cast<double>(log_eps.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_eps.size(); ++i) {
        sx += log_eps[i];
        sy += log_err[i];
        sxx += log_eps[i] * log_eps[i];
        sxy += log_eps[i] * log_err[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double perturbation_alignment(const Scenario& scenario) {
    const GeometrySolution geom = solve_geometry(scenario);
    const EnsembleModel model = build_ensemble(scenario, geom);
    const double p = scenario.selection_probability;
    const std::size_t k_count = scenario.num_radars();
    const std::size_t n_elems = scenario.jammer_array.num_elements;

    CMatrix delta(k_count, k_count);
    const double diag = static_cast<double>(n_elems) * p * (1.0 - p) * model.r_rr;
    for (std::size_t i = 0; i < k_count; ++i) {
        for (std::size_t j = 0; j < k_count; ++j) delta(i, j) = (p * p - 1.0) * model.r_jj(i, j);
        delta(i, i) += diag;
    }
    const EigenSystem base = eig_hermitian(model.r_xx);
    const PerturbationResult pert = perturb_eigs(base, delta, -1.0, {0});
    std::vector<cplx> u1 = pert.approx_eigenvectors[0];
    double nrm = 0.0;
    for (const cplx& v : u1) nrm += std::norm(v);
    nrm = std::sqrt(nrm);

    CMatrix rbar(k_count, k_count);
    for (std::size_t i = 0; i < k_count; ++i)
        for (std::size_t j = 0; j < k_count; ++j) rbar(i, j) = model.r_xx(i, j) + delta(i, j);
    const EigenSystem exact = eig_hermitian(rbar);
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < k_count; ++i)
        overlap += std::conj(u1[i] / nrm) * exact.eigenvectors(i, 0);
    return std::abs(overlap);
}

std::vector<CheckResult> run_hygiene_checks(std::uint64_t seed, std::size_t instances) {
    CheckResult idem, recon, psd, split;
    idem.name = "projector_idempotence";
    idem.bound = "||P^2 - P||_F <= 1e-10 ||P||_F";
    recon.name = "eigen_reconstruction";
    recon.bound = "||U L U^H - R||_F <= 1e-8 ||R||_F";
    psd.name = "sample_covariance_psd";
    psd.bound = "lambda_min >= -1e-10 trace";
    split.name = "projection_energy_split";
    split.bound = "| ||x||^2 - ||Px||^2 - ||Pperp x||^2 | <= 1e-10 ||x||^2";
    Rng rng(seed);
    for (std::size_t inst = 0; inst < instances; ++inst) {
        const std::size_t k = 2 + inst % 7;
        const CMatrix r = random_hermitian_psd(k, rng);
        const EigenSystem es = eig_hermitian(r);

        CMatrix recon_m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                cplx s = 0.0;
                for (std::size_t m = 0; m < k; ++m)
                    s += es.eigenvalues[m] * es.eigenvectors(i, m) *
                         std::conj(es.eigenvectors(j, m));
                recon_m(i, j) = s - r(i, j);
            }
        recon.measured = std::max(recon.measured, frobenius_norm(recon_m) / frobenius_norm(r));

        double trace = 0.0;
        for (std::size_t i = 0; i < k; ++i) trace += r(i, i).real();
        psd.measured = std::min(psd.measured, es.eigenvalues.back() / trace);

        const SubspaceSplit sp = split_subspaces(es, 1, std::min<std::size_t>(1, k - 1));
        CMatrix proj(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                proj(i, j) = sp.jamming(i, 0) * std::conj(sp.jamming(j, 0));
        CMatrix pp = matmul(proj, proj);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) pp(i, j) -= proj(i, j);
        idem.measured = std::max(idem.measured, frobenius_norm(pp) / frobenius_norm(proj));

        CMatrix x(k, 8);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < 8; ++j) x(i, j) = rng.cnormal(1.0);
        const CMatrix perp = eigenproject(x, sp.jamming);
        double ex = 0.0, eperp = 0.0, epar = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            ex += kernels::norm2(x.row(i));
            eperp += kernels::norm2(perp.row(i));
        }
        CMatrix par(k, 8);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < 8; ++j) par(i, j) = x(i, j) - perp(i, j);
        for (std::size_t i = 0; i < k; ++i) epar += kernels::norm2(par.row(i));
        split.measured = std::max(split.measured, std::abs(ex - eperp - epar) / ex);
    }
    idem.pass = idem.measured <= 1e-10;
    recon.pass = recon.measured <= 1e-8;
    psd.pass = psd.measured >= -1e-10;
    split.pass = split.measured <= 1e-10;
    return {std::move(idem), std::move(recon), std::move(psd), std::move(split)};
}

ValidationOutcome run_validation_suite(const Scenario& scenario,
                                       const ValidationOptions& options) {
    ValidationOutcome out;
    const GeometrySolution geom = solve_geometry(scenario);
    const EnsembleModel model = build_ensemble(scenario, geom);
    const double p = scenario.selection_probability;
    const std::size_t k_count = scenario.num_radars();
    const std::size_t n_elems = scenario.jammer_array.num_elements;

    auto push = [&](CheckResult c) {
        if (!c.pass && !c.skipped) out.all_pass = false;
        out.checks.push_back(std::move(c));
    };

    {
        CheckResult c;
        c.name = "rass_covariance_monte_carlo";
        c.bound = "relative Frobenius error <= " + std::to_string(options.covariance_rel_tol);
        if (p <= 0.0 || p >= 1.0) {
            c.skipped = true;
            c.note = "requires 0 < p < 1";
        } else {
            c.measured = rass_covariance_mc_error(scenario, options.covariance_draws);
            c.pass = c.measured <= options.covariance_rel_tol;
            c.note = std::to_string(options.covariance_draws) + " switch draws";
        }
        push(std::move(c));
    }

    {
        CheckResult c;
        c.name = "rank_traditional_covariance";
        c.bound = "lambda_2 / lambda_1 <= 1e-10";
        const EigenSystem es = eig_hermitian(model.r_jj);
        c.measured = es.eigenvalues.size() > 1 ? es.eigenvalues[1] / es.eigenvalues[0] : 0.0;
        c.pass = c.measured <= 1e-10;
        push(std::move(c));
    }

    {
        CheckResult c;
        c.name = "rank_rass_min_eigenvalue";
        c.bound = "|lambda_min - N p (1-p) r_rr| <= 1e-10 relative";
        if (k_count < 2) {
            c.skipped = true;
            c.note = "requires K >= 2 (rank-1 jamming covariance leaves no complement)";
        } else if (p <= 0.0 || p >= 1.0) {
            c.skipped = true;
            c.note = "requires 0 < p < 1";
        } else {
            const CMatrix rbar = rass_jamming_covariance(p, n_elems, model.r_rr, model.r_jj);
            const EigenSystem es = eig_hermitian(rbar);
            const double expected = static_cast<double>(n_elems) * p * (1.0 - p) * model.r_rr;
            c.measured = std::abs(es.eigenvalues.back() - expected) / expected;
            c.pass = c.measured <= 1e-10;
        }
        push(std::move(c));
    }

    {
        CheckResult c;
        c.name = "perturbation_eigenvalue_slope";
        c.bound = "log-log slope 2 +/- 0.2 over eps {1e-2, 1e-3, 1e-4}";
        c.measured = perturbation_error_slope({1e-2, 1e-3, 1e-4}, scenario.master_seed);
        c.pass = std::abs(c.measured - 2.0) <= 0.2;
        push(std::move(c));
    }

    {
        CheckResult c;
        c.name = "perturbation_top_eigenvector_alignment";
        c.bound = "|u1_pert^H u1_exact| >= 0.99";
        if (p <= 0.0 || p >= 1.0) {
            c.skipped = true;
            c.note = "requires 0 < p < 1";
        } else {
            c.measured = perturbation_alignment(scenario);
            c.pass = c.measured >= 0.99;
        }
        push(std::move(c));
    }

    for (CheckResult& c :
         run_hygiene_checks(hash64(scenario.master_seed, kRoleHygiene),
                            options.hygiene_instances))
        push(std::move(c));

    {
        CheckResult c;
        c.name = "traditional_baseline_jsnr";
        c.bound = "within 2 dB of -24.19 dB, else baseline <= -15 dB with a >= 50 dB gap "
                  "to subset selection at p = 0.5";
        const JsnrReport trad = jsnr_monte_carlo(scenario, JammingPattern::kTraditional,
                                                 options.baseline_trials, JsnrMode::kExactEigen,
                                                 options.threads);
        Scenario half = scenario;
        half.selection_probability = 0.5;
        const JsnrReport rass = jsnr_monte_carlo(half, JammingPattern::kRass,
                                                 options.baseline_trials, JsnrMode::kExactEigen,
                                                 options.threads);
        const double baseline = *trad.empirical_exact_db;
        const double delta = *rass.empirical_exact_db - baseline;
        c.measured = baseline;
        if (std::abs(baseline - (-24.19)) <= 2.0) {
            c.pass = true;
            c.note = "within the reference tolerance";
        } else if (baseline <= -15.0 && delta >= 50.0) {
            c.pass = true;
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "discrepancy: baseline JSNR %.2f dB is outside -24.19 +/- 2 dB; "
                          "fallback bounds hold (gap %.2f dB)",
                          baseline, delta);
            c.note = buf;
        } else {
            c.pass = false;
            char buf[120];
            std::snprintf(buf, sizeof buf, "baseline JSNR %.2f dB, gap %.2f dB", baseline,
                          delta);
            c.note = buf;
        }
        push(std::move(c));
    }

    return out;
}

}  // namespace rassim
