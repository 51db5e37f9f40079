#include <doctest.h>

#include <cmath>

#include "rassim/scenario.hpp"
#include "rassim/waveform.hpp"

using namespace rassim;

namespace {

WaveformSpec chirp_waveform() {
    WaveformSpec w;
    w.type = WaveformType::kLfm;
    w.bandwidth_hz = 10e6;
    w.duration_s = 10e-6;
    w.carrier_hz = 5e9;
    return w;
}

ArrayGeometry ula(std::size_t n, double d) {
    ArrayGeometry g;
    g.num_elements = n;
    g.element_spacing_m = d;
    g.axis = {1.0, 0.0, 0.0};
    return g;
}

}  // namespace

TEST_CASE("steering vector basics") {
    const double lambda = kSpeedOfLight / 5e9;
    const SteeringVector broadside = steering_vector(0.0, ula(16, 0.03), lambda);
    for (const cplx& e : broadside.entries) CHECK(e == cplx(1.0, 0.0));

    // N = 2, d = lambda/2, theta = pi/2: [1, e^{j pi}] = [1, -1]
    const SteeringVector endfire = steering_vector(kPi / 2.0, ula(2, lambda / 2.0), lambda);
    CHECK(endfire.entries[0] == cplx(1.0, 0.0));
    CHECK(endfire.entries[1].real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(endfire.entries[1].imag() == doctest::Approx(0.0).epsilon(1e-12));

    const SteeringVector sv = steering_vector(0.31, ula(16, 0.03), lambda);
    cplx self = 0.0;
    for (const cplx& e : sv.entries) {
        CHECK(std::abs(e) == doctest::Approx(1.0).epsilon(1e-12));
        self += std::conj(e) * e;
    }
    CHECK(std::abs(self) == doctest::Approx(16.0).epsilon(1e-12));

    const SteeringVector neg = steering_vector(-0.31, ula(16, 0.03), lambda);
    for (std::size_t n = 0; n < 16; ++n)
        CHECK(std::abs(neg.entries[n] - std::conj(sv.entries[n])) <= 1e-12);
}

TEST_CASE("lfm is unit modulus and single-sample degenerates cleanly") {
    const BasebandSignal one = gen_lfm(chirp_waveform(), 1);
    REQUIRE(one.samples.size() == 1);
    CHECK(std::abs(one.samples[0]) == doctest::Approx(1.0).epsilon(1e-14));

    const BasebandSignal sig = gen_lfm(chirp_waveform(), 128);
    CHECK(sig.slot_duration_s == doctest::Approx(10e-6 / 128.0));
    for (const cplx& s : sig.samples)
        CHECK(std::abs(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lfm autocorrelation peak-to-first-sidelobe is near 13.2 dB at BT = 100") {
    // oversampled brute-force autocorrelation as the oracle
    const std::size_t n = 2048;
    const BasebandSignal sig = gen_lfm(chirp_waveform(), n);
    std::vector<double> mag(n);
    for (std::size_t m = 0; m < n; ++m) {
        cplx acc = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            acc += sig.samples[l] * std::conj(sig.samples[(l + m) % n]);
        mag[m] = std::abs(acc);
    }
    // walk from the peak at lag 0 to the first local maximum past the first null
    std::size_t m = 1;
    while (m + 1 < n / 2 && mag[m + 1] < mag[m]) ++m;  // descend into the null
    while (m + 1 < n / 2 && mag[m + 1] > mag[m]) ++m;  // climb the first sidelobe
    const double psl_db = 20.0 * std::log10(mag[0] / mag[m]);
    CHECK(psl_db == doctest::Approx(13.2).epsilon(0.08));
}

TEST_CASE("noise jamming statistics") {
    const double r_rr = 7.5;
    Rng rng(99);
    const BasebandSignal sig = gen_noise_jamming(r_rr, 200000, 1e-6, rng);

    cplx mean = 0.0;
    double power = 0.0;
    for (const cplx& s : sig.samples) {
        mean += s;
        power += std::norm(s);
    }
    const double n = static_cast<double>(sig.samples.size());
    mean /= n;
    power /= n;
    CHECK(std::abs(mean) < 4.0 * std::sqrt(r_rr / n));
    CHECK(power == doctest::Approx(r_rr).epsilon(0.05));

    cplx lag1 = 0.0;
    for (std::size_t l = 0; l + 1 < sig.samples.size(); ++l)
        lag1 += sig.samples[l] * std::conj(sig.samples[l + 1]);
    CHECK(std::abs(lag1 / (n * r_rr)) < 5.0 / std::sqrt(n));
}

TEST_CASE("noise jamming power scaling is exact under a shared seed") {
    Rng a(1234), b(1234);
    const BasebandSignal base = gen_noise_jamming(2.0, 64, 1e-6, a);
    const BasebandSignal scaled = gen_noise_jamming(8.0, 64, 1e-6, b);
    for (std::size_t l = 0; l < 64; ++l) CHECK(scaled.samples[l] == 2.0 * base.samples[l]);
}

TEST_CASE("power levels use per-snapshot energies") {
    Scenario s = load_scenario(RASSIM_CONFIG_DIR "/reference_scenario.json");
    const PowerLevels p = derive_power_levels(s);
    CHECK(p.echo_amplitude == doctest::Approx(1.0).epsilon(1e-12));
    // E||s(t)||^2 + E||n(t)||^2 = K (A^2 + sigma^2) = 4 * 1.01
    CHECK(p.expected_sn_power == doctest::Approx(4.04).epsilon(1e-12));
    // r_rr = 10^3.1 * (A^2 + sigma^2)
    CHECK(p.r_rr == doctest::Approx(1271.514665912109).epsilon(1e-12));

    s.target_snr_db = 0.0;
    s.noise_variance = 1.0;
    const PowerLevels q = derive_power_levels(s);
    CHECK(q.echo_amplitude == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.expected_sn_power == doctest::Approx(8.0).epsilon(1e-12));  // K (1 + 1)
}
