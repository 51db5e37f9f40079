#include "rassim/jammer.hpp"

#include <cmath>

#include "rassim/errors.hpp"

namespace rassim {

namespace {

/// Per-(radar, element) phase terms e_{k,n} = exp(j 2 pi n d (sin th_1 - sin th_k) / lambda),
/// so that alpha^H(theta_k) (p o alpha(theta_1)) = sum_n p_n e_{k,n}.
CMatrix element_phases(const GeometrySolution& geom, const ArrayGeometry& array,
                       double wavelength_m) {
    const std::size_t k_count = geom.angles_rad.size();
    CMatrix ph(k_count, array.num_elements);
    const double sin_main = geom.sin_theta(0);
    for (std::size_t k = 0; k < k_count; ++k) {
        const double dsin = sin_main - geom.sin_theta(k);
        const double step = 2.0 * kPi * array.element_spacing_m * dsin / wavelength_m;
        for (std::size_t n = 0; n < array.num_elements; ++n)
            ph(k, n) = std::polar(1.0, step * static_cast<double>(n));
    }
    return ph;
}

}  // namespace

SwitchRealization sample_switch(double p, std::size_t num_elements, std::size_t num_slots,
                                Rng& rng) {
    SwitchRealization sw;
    sw.num_elements = num_elements;
    sw.num_slots = num_slots;
    sw.p = p;
    sw.bits.resize(num_elements * num_slots);
    // element-major so that bits for one element over time are contiguous;
    // sampling order (n, then l) is part of the determinism contract
    for (auto& b : sw.bits) b = rng.bernoulli(p) ? 1 : 0;
    return sw;
}

JammingGains traditional_gains(const GeometrySolution& geom, const ArrayGeometry& array,
                               double wavelength_m, std::size_t num_slots) {
    const CMatrix ph = element_phases(geom, array, wavelength_m);
    const std::size_t k_count = geom.angles_rad.size();
    JammingGains jg;
    jg.pattern = JammingPattern::kTraditional;
    jg.gains = CMatrix(k_count, num_slots);
    for (std::size_t k = 0; k < k_count; ++k) {
        cplx g = 0.0;
        for (std::size_t n = 0; n < array.num_elements; ++n) g += ph(k, n);
        for (std::size_t l = 0; l < num_slots; ++l) jg.gains(k, l) = g;
    }
    return jg;
}

JammingGains rass_gains(const SwitchRealization& sw, const GeometrySolution& geom,
                        const ArrayGeometry& array, double wavelength_m) {
    if (sw.num_elements != array.num_elements)
        throw DimensionError("rass_gains: switch rows != array elements");
    const CMatrix ph = element_phases(geom, array, wavelength_m);
    const std::size_t k_count = geom.angles_rad.size();
    JammingGains jg;
    jg.pattern = JammingPattern::kRass;
    jg.gains = CMatrix(k_count, sw.num_slots);
    // summation order over n matches traditional_gains, so an all-ones switch
    // reproduces the traditional gains bitwise
    for (std::size_t k = 0; k < k_count; ++k) {
        for (std::size_t l = 0; l < sw.num_slots; ++l) {
            cplx g = 0.0;
            for (std::size_t n = 0; n < sw.num_elements; ++n)
                if (sw.bit(n, l)) g += ph(k, n);
            jg.gains(k, l) = g;
        }
    }
    return jg;
}

}  // namespace rassim
