#include "rassim/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "rassim/errors.hpp"
#include "rassim/kernels.hpp"
#include "rassim/receiver.hpp"
#include "rassim/rng.hpp"

namespace rassim {

namespace {

double to_db(double linear) {
    return linear > 0.0 ? 10.0 * std::log10(linear) : -std::numeric_limits<double>::infinity();
}

}  // namespace

CMatrix rass_jamming_covariance(double p, std::size_t num_elements, double r_rr,
                                const CMatrix& r_jj) {
    const std::size_t k_count = r_jj.rows();
    CMatrix out(k_count, k_count);
    const double diag = static_cast<double>(num_elements) * p * (1.0 - p) * r_rr;
    for (std::size_t i = 0; i < k_count; ++i) {
        for (std::size_t j = 0; j < k_count; ++j) out(i, j) = p * p * r_jj(i, j);
        out(i, i) += diag;
    }
    return out;
}

CMatrix traditional_jamming_covariance(const JammingGains& gains, double r_rr,
                                       std::span<const cplx> carrier_phasors) {
    if (gains.pattern != JammingPattern::kTraditional)
        throw NumericError("traditional_jamming_covariance: gains are not the traditional pattern");
    const std::size_t k_count = gains.gains.rows();
    if (carrier_phasors.size() != k_count)
        throw DimensionError("traditional_jamming_covariance: phasor count != radar count");
    std::vector<cplx> a(k_count);
    for (std::size_t k = 0; k < k_count; ++k) a[k] = gains.gains(k, 0) * carrier_phasors[k];
    CMatrix r(k_count, k_count);
    for (std::size_t i = 0; i < k_count; ++i)
        for (std::size_t j = 0; j < k_count; ++j) r(i, j) = r_rr * a[i] * std::conj(a[j]);
    return r;
}

PerturbationResult perturb_eigs(const EigenSystem& base, const CMatrix& delta, double gap_tol,
                                std::vector<std::size_t> indices) {
    const std::size_t n = base.eigenvalues.size();
    if (delta.rows() != n || delta.cols() != n)
        throw DimensionError("perturb_eigs: delta dimensions do not match base");
    if (gap_tol < 0.0) gap_tol = 1e-9 * std::abs(base.eigenvalues.empty() ? 0.0 : base.eigenvalues[0]);
    if (indices.empty()) {
        indices.resize(n);
        for (std::size_t k = 0; k < n; ++k) indices[k] = k;
    }

    // w_k = dR u_k once per column
    const CMatrix& u = base.eigenvectors;
    CMatrix du = matmul(delta, u);  // n x n, column k = dR u_k
    // projections c_{i,k} = u_i^H dR u_k
    auto proj = [&](std::size_t i, std::size_t k) {
        cplx s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += std::conj(u(r, i)) * du(r, k);
        return s;
    };

    PerturbationResult res;
    res.delta_eigenvalues.resize(n);
    for (std::size_t k = 0; k < n; ++k) res.delta_eigenvalues[k] = proj(k, k).real();

    res.approx_eigenvectors.resize(n);
    res.computed_indices = indices;
    for (std::size_t k : indices) {
        if (k >= n) throw DimensionError("perturb_eigs: index out of range");
        std::vector<cplx> b(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double gap = base.eigenvalues[k] - base.eigenvalues[i];
            if (std::abs(gap) <= gap_tol)
                throw NumericError("perturb_eigs: degenerate spectrum, |lambda_i - lambda_k| below "
                                   "gap tolerance; first-order approximation invalid");
            b[i] = proj(i, k) / gap;
        }
        std::vector<cplx> ub(n, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            cplx s = u(r, k);
            for (std::size_t i = 0; i < n; ++i) s += u(r, i) * b[i];
            ub[r] = s;
        }
        res.approx_eigenvectors[k] = std::move(ub);
    }
    return res;
}

double closed_form_jsnr(std::size_t num_radars, std::size_t num_elements, double p, double r_rr,
                        double expected_sn_power) {
    if (!(expected_sn_power > 0.0))
        throw NumericError("closed_form_jsnr: expected signal+noise power must be > 0");
    return static_cast<double>(num_radars) * r_rr / expected_sn_power *
           static_cast<double>(num_elements) * p * (1.0 - p);
}

EnsembleModel build_ensemble(const Scenario& scenario, const GeometrySolution& geom) {
    const SnapshotSynthesizer synth(scenario, geom);
    EnsembleModel m;
    m.jam_dir = synth.jamming_direction();
    m.echo_dir = synth.echo_direction();
    m.r_rr = synth.power_levels().r_rr;
    m.expected_sn_power = synth.power_levels().expected_sn_power;
    const std::size_t k_count = m.jam_dir.size();
    m.r_jj = CMatrix(k_count, k_count);
    m.r_ss = CMatrix(k_count, k_count);
    m.r_xx = CMatrix(k_count, k_count);
    for (std::size_t i = 0; i < k_count; ++i)
        for (std::size_t j = 0; j < k_count; ++j) {
            m.r_jj(i, j) = m.r_rr * m.jam_dir[i] * std::conj(m.jam_dir[j]);
            // time-averaged echo covariance; the unit-modulus envelope makes
            // (1/L) sum |env|^2 = 1 exactly
            m.r_ss(i, j) = m.echo_dir[i] * std::conj(m.echo_dir[j]);
            m.r_xx(i, j) = m.r_jj(i, j) + m.r_ss(i, j);
        }
    for (std::size_t i = 0; i < k_count; ++i) m.r_xx(i, i) += scenario.noise_variance;
    return m;
}

namespace {

/// Unit-norm top eigenvector predicted by first-order perturbation of the
/// ensemble covariance, used as the fixed projector in perturbation mode.
std::vector<cplx> perturbed_top_eigenvector(const EnsembleModel& model, double p,
                                            std::size_t num_elements) {
    const std::size_t k_count = model.jam_dir.size();
    CMatrix delta(k_count, k_count);
    const double diag = static_cast<double>(num_elements) * p * (1.0 - p) * model.r_rr;
    for (std::size_t i = 0; i < k_count; ++i) {
        for (std::size_t j = 0; j < k_count; ++j) delta(i, j) = (p * p - 1.0) * model.r_jj(i, j);
        delta(i, i) += diag;
    }
    const EigenSystem base = eig_hermitian(model.r_xx);
    const PerturbationResult pert = perturb_eigs(base, delta, -1.0, {0});
    std::vector<cplx> u = pert.approx_eigenvectors[0];
    double nrm = 0.0;
    for (const cplx& v : u) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    for (cplx& v : u) v /= nrm;
    return u;
}

CMatrix column_matrix(const std::vector<cplx>& v) {
    CMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

struct TrialEnergies {
    double num_exact = 0.0, den_exact = 0.0;
    double num_pert = 0.0, den_pert = 0.0;
};

double energy_sum(const CMatrix& a, const CMatrix& b) {
    double s = 0.0;
    std::vector<cplx> tmp(a.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        for (std::size_t l = 0; l < a.cols(); ++l) tmp[l] = a(k, l) + b(k, l);
        s += kernels::norm2(tmp);
    }
    return s;
}

double energy(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.rows(); ++k) s += kernels::norm2(a.row(k));
    return s;
}

/// Runs `trials` independent trials over a thread pool; slot t of the output
/// is trial t regardless of scheduling. A throwing trial is rethrown on the
/// calling thread (lowest trial index wins, deterministically).
template <typename Fn>
std::vector<TrialEnergies> run_trials(std::size_t trials, unsigned threads, Fn&& trial_fn) {
    std::vector<TrialEnergies> out(trials);
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));
    if (threads <= 1) {
        for (std::size_t t = 0; t < trials; ++t) out[t] = trial_fn(t);
        return out;
    }
    std::vector<std::exception_ptr> errors(trials);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
                try {
                    out[t] = trial_fn(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace

JsnrReport jsnr_monte_carlo(const Scenario& scenario, JammingPattern pattern, std::size_t trials,
                            JsnrMode mode, unsigned threads) {
    if (trials < 1) throw ConfigError("jsnr_monte_carlo: trials must be >= 1");
    const GeometrySolution geom = solve_geometry(scenario);
    const SnapshotSynthesizer synth(scenario, geom);
    const EnsembleModel model = build_ensemble(scenario, geom);
    const double p = scenario.selection_probability;
    const std::size_t n_elems = scenario.jammer_array.num_elements;
    const double wavelength = scenario.waveform.wavelength_m();

    const bool want_exact = mode != JsnrMode::kPerturbation;
    const bool want_pert = mode != JsnrMode::kExactEigen;

    CMatrix pert_basis;
    if (want_pert)
        pert_basis = column_matrix(perturbed_top_eigenvector(
            model, pattern == JammingPattern::kTraditional ? 1.0 : p, n_elems));

    const JammingGains trad =
        traditional_gains(geom, scenario.jammer_array, wavelength, scenario.num_slots);

    auto trial_fn = [&](std::size_t t) {
        Rng wave_rng = trial_stream(scenario.master_seed, t, StreamRole::kJamWave);
        Rng noise_rng = trial_stream(scenario.master_seed, t, StreamRole::kNoise);

        JammingGains gains;
        if (pattern == JammingPattern::kTraditional) {
            gains = trad;
        } else {
            Rng switch_rng = trial_stream(scenario.master_seed, t, StreamRole::kSwitch);
            const SwitchRealization sw =
                sample_switch(p, n_elems, scenario.num_slots, switch_rng);
            gains = rass_gains(sw, geom, scenario.jammer_array, wavelength);
        }
        const BasebandSignal r = gen_noise_jamming(
            synth.power_levels().r_rr, scenario.num_slots,
            scenario.waveform.duration_s / static_cast<double>(scenario.num_slots), wave_rng);
        const SnapshotMatrix snap = synth.synthesize(gains, r, noise_rng);

        TrialEnergies e;
        if (want_exact) {
            const EigenSystem es = eig_hermitian(sample_covariance(snap.data));
            const SubspaceSplit split = split_subspaces(es, scenario.num_jammers,
                                                        scenario.num_targets);
            const CMatrix pq = eigenproject(snap.jamming, split.jamming);
            e.num_exact = energy(pq);
            const CMatrix ps = eigenproject(snap.signal, split.jamming);
            const CMatrix pn = eigenproject(snap.noise, split.jamming);
            e.den_exact = energy_sum(ps, pn);
        }
        if (want_pert) {
            const CMatrix pq = eigenproject(snap.jamming, pert_basis);
            e.num_pert = energy(pq);
            const CMatrix ps = eigenproject(snap.signal, pert_basis);
            const CMatrix pn = eigenproject(snap.noise, pert_basis);
            e.den_pert = energy_sum(ps, pn);
        }
        return e;
    };

    const std::vector<TrialEnergies> energies = run_trials(trials, threads, trial_fn);

    JsnrReport rep;
    rep.p = pattern == JammingPattern::kTraditional ? 1.0 : p;
    rep.num_elements = n_elems;
    rep.num_radars = scenario.num_radars();
    rep.trials = trials;
    rep.r_rr = synth.power_levels().r_rr;
    rep.master_seed = scenario.master_seed;
    rep.closed_form_db =
        to_db(closed_form_jsnr(scenario.num_radars(), n_elems, rep.p, rep.r_rr,
                               synth.power_levels().expected_sn_power));

    // fixed-order reduction: trial 0, 1, ... regardless of thread count
    double num_e = 0.0, den_e = 0.0, num_p = 0.0, den_p = 0.0;
    for (const TrialEnergies& e : energies) {
        num_e += e.num_exact;
        den_e += e.den_exact;
        num_p += e.num_pert;
        den_p += e.den_pert;
    }
    if (want_exact) {
        if (den_e <= 0.0) throw NumericError("jsnr_monte_carlo: zero signal+noise energy");
        rep.empirical_exact_db = to_db(num_e / den_e);
        rep.per_trial_exact.reserve(trials);
        for (const TrialEnergies& e : energies)
            rep.per_trial_exact.push_back(e.num_exact / e.den_exact);
    }
    if (want_pert) {
        if (den_p <= 0.0) throw NumericError("jsnr_monte_carlo: zero signal+noise energy");
        rep.empirical_perturbation_db = to_db(num_p / den_p);
        rep.per_trial_perturbation.reserve(trials);
        for (const TrialEnergies& e : energies)
            rep.per_trial_perturbation.push_back(e.num_pert / e.den_pert);
    }
    return rep;
}

std::vector<JsnrReport> sweep_p(const Scenario& scenario, const std::vector<double>& p_grid,
                                std::size_t trials, JsnrMode mode, unsigned threads) {
    if (p_grid.empty()) throw ConfigError("sweep_p: empty grid");
    std::vector<JsnrReport> out;
    out.reserve(p_grid.size());
    for (double p : p_grid) {
        Scenario s = scenario;
        s.selection_probability = p;
        out.push_back(jsnr_monte_carlo(s, JammingPattern::kRass, trials, mode, threads));
    }
    return out;
}

std::vector<JsnrReport> sweep_n(const Scenario& scenario, const std::vector<std::size_t>& n_set,
                                std::size_t trials, JsnrMode mode, unsigned threads) {
    if (n_set.empty()) throw ConfigError("sweep_n: empty N set");
    std::vector<JsnrReport> out;
    out.reserve(n_set.size());
    for (std::size_t n : n_set) {
        Scenario s = scenario;
        s.jammer_array.num_elements = n;
        out.push_back(jsnr_monte_carlo(s, JammingPattern::kRass, trials, mode, threads));
    }
    return out;
}

}  // namespace rassim
