#include <doctest.h>

#include <cmath>

#include "rassim/analysis.hpp"
#include "rassim/errors.hpp"
#include "rassim/receiver.hpp"
#include "rassim/rng.hpp"
#include "rassim/validate.hpp"

using namespace rassim;

namespace {

Scenario reference() { return load_scenario(RASSIM_CONFIG_DIR "/reference_scenario.json"); }

CMatrix random_psd(std::size_t k, Rng& rng) {
    CMatrix g(k, k + 3);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k + 3; ++j) g(i, j) = rng.cnormal(1.0);
    return sample_covariance(g);
}

}  // namespace

TEST_CASE("rass covariance closed form degenerates at p = 0 and p = 1") {
    Rng rng(8);
    const CMatrix r_jj = random_psd(4, rng);
    const CMatrix at_one = rass_jamming_covariance(1.0, 16, 3.0, r_jj);
    CHECK(at_one == r_jj);  // p^2 = 1 and the diagonal term vanishes
    const CMatrix at_zero = rass_jamming_covariance(0.0, 16, 3.0, r_jj);
    CHECK(frobenius_norm(at_zero) == 0.0);
}

TEST_CASE("rass covariance is affine in the base covariance with slope p^2") {
    Rng rng(9);
    const CMatrix a = random_psd(4, rng);
    const CMatrix b = random_psd(4, rng);
    CMatrix sum(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) sum(i, j) = a(i, j) + b(i, j);
    const CMatrix lhs = rass_jamming_covariance(0.3, 16, 2.0, sum);
    const CMatrix ra = rass_jamming_covariance(0.3, 16, 2.0, a);
    const CMatrix rb = rass_jamming_covariance(0.3, 16, 2.0, b);
    const CMatrix zero = rass_jamming_covariance(0.3, 16, 2.0, CMatrix(4, 4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(std::abs(lhs(i, j) + zero(i, j) - ra(i, j) - rb(i, j)) <= 1e-12);
}

TEST_CASE("rass covariance minimum eigenvalue is the white floor") {
    const Scenario s = reference();
    const EnsembleModel m = build_ensemble(s, solve_geometry(s));
    for (double p : {0.3, 0.5, 0.7}) {
        const CMatrix rbar = rass_jamming_covariance(p, 16, m.r_rr, m.r_jj);
        const EigenSystem es = eig_hermitian(rbar);
        const double expected = 16.0 * p * (1.0 - p) * m.r_rr;
        CHECK(std::abs(es.eigenvalues.back() - expected) <= 1e-10 * expected);
    }
}

TEST_CASE("closed-form rass covariance matches the Monte Carlo oracle") {
    CHECK(rass_covariance_mc_error(reference(), 100000) <= 0.02);
}

TEST_CASE("traditional jamming covariance") {
    const Scenario s = reference();
    const GeometrySolution g = solve_geometry(s);
    const JammingGains trad =
        traditional_gains(g, s.jammer_array, s.waveform.wavelength_m(), 1);
    std::vector<cplx> phasors(s.num_radars());
    for (std::size_t k = 0; k < s.num_radars(); ++k)
        phasors[k] = carrier_phasor(s.waveform.carrier_hz, g.jammer_delays_s[k]);
    const double r_rr = 2.5;
    const CMatrix r = traditional_jamming_covariance(trad, r_rr, phasors);

    const EigenSystem es = eig_hermitian(r);
    CHECK(es.eigenvalues[1] <= 1e-12 * es.eigenvalues[0]);
    double a_norm = 0.0;
    for (std::size_t k = 0; k < s.num_radars(); ++k) a_norm += std::norm(trad.gains(k, 0));
    CHECK(es.eigenvalues[0] == doctest::Approx(r_rr * a_norm).epsilon(1e-10));
    CHECK(r(0, 0).real() == doctest::Approx(r_rr * 256.0).epsilon(1e-12));  // mainlobe N^2

    JammingGains wrong = trad;
    wrong.pattern = JammingPattern::kRass;
    CHECK_THROWS_AS(traditional_jamming_covariance(wrong, r_rr, phasors), NumericError);
}

TEST_CASE("traditional covariance matches a long-run sample covariance") {
    const Scenario s = reference();
    const GeometrySolution g = solve_geometry(s);
    const EnsembleModel model = build_ensemble(s, g);
    Rng rng(1717);
    const std::size_t slots = 50000;
    CMatrix q(s.num_radars(), slots);
    for (std::size_t l = 0; l < slots; ++l) {
        const cplx r = std::sqrt(model.r_rr) * rng.cnormal(1.0);
        for (std::size_t k = 0; k < s.num_radars(); ++k) q(k, l) = model.jam_dir[k] * r;
    }
    const CMatrix sample = sample_covariance(q);
    CMatrix diff(s.num_radars(), s.num_radars());
    for (std::size_t i = 0; i < s.num_radars(); ++i)
        for (std::size_t j = 0; j < s.num_radars(); ++j)
            diff(i, j) = sample(i, j) - model.r_jj(i, j);
    CHECK(frobenius_norm(diff) <= 0.02 * frobenius_norm(model.r_jj));
}

TEST_CASE("perturbation: zero and identity perturbations") {
    Rng rng(21);
    const EigenSystem base = eig_hermitian(random_psd(4, rng));
    const CMatrix zero(4, 4);
    const PerturbationResult none = perturb_eigs(base, zero);
    for (double d : none.delta_eigenvalues) CHECK(d == doctest::Approx(0.0));
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(none.approx_eigenvectors[k][i] - base.eigenvectors(i, k)) <= 1e-12);

    const double eps = 1e-3;
    CMatrix eye(4, 4);
    for (std::size_t i = 0; i < 4; ++i) eye(i, i) = eps;
    const PerturbationResult shift = perturb_eigs(base, eye);
    for (double d : shift.delta_eigenvalues) CHECK(d == doctest::Approx(eps).epsilon(1e-10));
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(std::abs(shift.approx_eigenvectors[k][i] - base.eigenvectors(i, k)) <= 1e-12);
}

TEST_CASE("perturbation eigenvalue error scales as eps^2") {
    const double slope = perturbation_error_slope({1e-2, 1e-3, 1e-4}, 7777);
    CHECK(std::abs(slope - 2.0) <= 0.2);
}

TEST_CASE("first-order eigenvectors beat the unperturbed base") {
    // a visible perturbation on a well-separated spectrum; the correction must
    // tighten the alignment with the exact eigenvector, not loosen it
    Rng rng(5151);
    const std::size_t k = 4;
    const EigenSystem vecs = eig_hermitian(random_psd(k, rng));
    const std::vector<double> lams{10.0, 6.0, 3.0, 1.0};
    CMatrix base(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            cplx s = 0.0;
            for (std::size_t m = 0; m < k; ++m)
                s += lams[m] * vecs.eigenvectors(i, m) * std::conj(vecs.eigenvectors(j, m));
            base(i, j) = s;
        }
    CMatrix delta(k, k), perturbed(k, k);
    const double eps = 0.1;
    for (std::size_t i = 0; i < k; ++i) {
        delta(i, i) = eps * rng.gaussian();
        for (std::size_t j = i + 1; j < k; ++j) {
            delta(i, j) = eps * rng.cnormal(1.0);
            delta(j, i) = std::conj(delta(i, j));
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) perturbed(i, j) = base(i, j) + delta(i, j);

    const EigenSystem base_es = eig_hermitian(base);
    const EigenSystem exact = eig_hermitian(perturbed);
    const PerturbationResult pert = perturb_eigs(base_es, delta);
    for (std::size_t kk = 0; kk < k; ++kk) {
        cplx dot_pert = 0.0, dot_base = 0.0;
        double norm_pert = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            dot_pert += std::conj(pert.approx_eigenvectors[kk][i]) * exact.eigenvectors(i, kk);
            dot_base += std::conj(base_es.eigenvectors(i, kk)) * exact.eigenvectors(i, kk);
            norm_pert += std::norm(pert.approx_eigenvectors[kk][i]);
        }
        const double align_pert = std::abs(dot_pert) / std::sqrt(norm_pert);
        const double align_base = std::abs(dot_base);
        CHECK(align_pert >= align_base);
        CHECK(1.0 - align_pert <= 1e-4);  // O(eps^2) misalignment at eps = 0.1
    }
}

TEST_CASE("degenerate spectra are rejected only for requested indices") {
    CMatrix d(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    d(2, 2) = 1.0;  // degenerate pair (1, 2)
    const EigenSystem base = eig_hermitian(d);
    Rng rng(3);
    CMatrix delta(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        delta(i, i) = rng.gaussian();
        for (std::size_t j = i + 1; j < 3; ++j) {
            delta(i, j) = rng.cnormal(1.0);
            delta(j, i) = std::conj(delta(i, j));
        }
    }
    CHECK_THROWS_AS(perturb_eigs(base, delta), NumericError);              // full set
    CHECK_THROWS_AS(perturb_eigs(base, delta, -1.0, {1}), NumericError);   // uses the 1-2 gap
    CHECK_NOTHROW(perturb_eigs(base, delta, -1.0, {0}));                   // gaps 2-1 only
}

TEST_CASE("perturbed top eigenvector stays aligned for the reference scenario") {
    CHECK(perturbation_alignment(reference()) >= 0.99);
}

TEST_CASE("closed-form jsnr identities") {
    CHECK(closed_form_jsnr(4, 16, 0.0, 5.0, 4.0) == 0.0);
    CHECK(closed_form_jsnr(4, 16, 1.0, 5.0, 4.0) == 0.0);
    const double at_half = closed_form_jsnr(4, 16, 0.5, 5.0, 4.0);
    const double at_quarter = closed_form_jsnr(4, 16, 0.25, 5.0, 4.0);
    CHECK(10.0 * std::log10(at_half / at_quarter) == doctest::Approx(1.2494).epsilon(1e-4));
    const double doubled = closed_form_jsnr(4, 32, 0.5, 5.0, 4.0);
    CHECK(10.0 * std::log10(doubled / at_half) ==
          doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
    // symmetric up to the ulp gap of decimal literals (0.3 + 0.7 != 1 in binary)
    CHECK(closed_form_jsnr(4, 16, 0.3, 5.0, 4.0) ==
          doctest::Approx(closed_form_jsnr(4, 16, 0.7, 5.0, 4.0)).epsilon(1e-14));
    CHECK_THROWS_AS(closed_form_jsnr(4, 16, 0.5, 5.0, 0.0), NumericError);
}

TEST_CASE("monte carlo report is bitwise reproducible and thread-invariant") {
    Scenario s = reference();
    const JsnrReport a = jsnr_monte_carlo(s, JammingPattern::kRass, 1, JsnrMode::kBoth, 1);
    const JsnrReport b = jsnr_monte_carlo(s, JammingPattern::kRass, 1, JsnrMode::kBoth, 1);
    CHECK(*a.empirical_exact_db == *b.empirical_exact_db);
    CHECK(*a.empirical_perturbation_db == *b.empirical_perturbation_db);
    CHECK(a.per_trial_exact == b.per_trial_exact);

    const JsnrReport one = jsnr_monte_carlo(s, JammingPattern::kRass, 16, JsnrMode::kBoth, 1);
    const JsnrReport two = jsnr_monte_carlo(s, JammingPattern::kRass, 16, JsnrMode::kBoth, 2);
    CHECK(*one.empirical_exact_db == *two.empirical_exact_db);
    CHECK(*one.empirical_perturbation_db == *two.empirical_perturbation_db);
    CHECK(one.per_trial_exact == two.per_trial_exact);
}

TEST_CASE("traditional baseline is deep in suppression") {
    const JsnrReport rep =
        jsnr_monte_carlo(reference(), JammingPattern::kTraditional, 200, JsnrMode::kExactEigen, 2);
    CHECK(*rep.empirical_exact_db <= -15.0);
    CHECK(*rep.empirical_exact_db >= -28.0);
    CHECK(rep.closed_form_db == -std::numeric_limits<double>::infinity());  // p = 1
}

TEST_CASE("sweep over p: symmetry and empirical argmax at one half") {
    const Scenario s = reference();
    const std::vector<double> grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const std::vector<JsnrReport> reports = sweep_p(s, grid, 150, JsnrMode::kExactEigen, 2);
    REQUIRE(reports.size() == 9);
    for (std::size_t i = 0; i < 4; ++i)  // p(1-p) symmetry, up to literal rounding
        CHECK(reports[i].closed_form_db ==
              doctest::Approx(reports[8 - i].closed_form_db).epsilon(1e-13));
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < 9; ++i)
        if (*reports[i].empirical_exact_db > *reports[argmax].empirical_exact_db) argmax = i;
    CHECK(reports[argmax].p == doctest::Approx(0.5));
}

TEST_CASE("sweep over n: exact closed-form gaps") {
    const Scenario s = reference();
    const std::vector<JsnrReport> reports =
        sweep_n(s, {16, 32, 64}, 50, JsnrMode::kPerturbation, 2);
    REQUIRE(reports.size() == 3);
    for (std::size_t i = 1; i < 3; ++i)
        CHECK(reports[i].closed_form_db - reports[i - 1].closed_form_db ==
              doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
    const std::vector<JsnrReport> single = sweep_n(s, {16}, 10, JsnrMode::kPerturbation, 1);
    CHECK(single.size() == 1);
}

TEST_CASE("ensemble model composition") {
    const Scenario s = reference();
    const EnsembleModel m = build_ensemble(s, solve_geometry(s));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const cplx expected =
                m.r_ss(i, j) + m.r_jj(i, j) + (i == j ? cplx(s.noise_variance, 0.0) : cplx(0.0));
            CHECK(std::abs(m.r_xx(i, j) - expected) <= 1e-12 * (std::abs(expected) + 1.0));
        }
    const EigenSystem ss = eig_hermitian(m.r_ss);
    CHECK(ss.eigenvalues[0] == doctest::Approx(4.0).epsilon(1e-10));  // K A^2
    CHECK(ss.eigenvalues[1] <= 1e-10 * ss.eigenvalues[0]);
}

TEST_CASE("invalid requests are configuration errors") {
    const Scenario s = reference();
    CHECK_THROWS_AS(jsnr_monte_carlo(s, JammingPattern::kRass, 0, JsnrMode::kBoth), ConfigError);
    CHECK_THROWS_AS(sweep_p(s, {}, 10, JsnrMode::kBoth), ConfigError);
    CHECK_THROWS_AS(sweep_n(s, {}, 10, JsnrMode::kBoth), ConfigError);
}
