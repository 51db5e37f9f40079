#pragma once

#include <cstdint>
#include <vector>

#include "rassim/rng.hpp"
#include "rassim/scenario.hpp"
#include "rassim/types.hpp"

namespace rassim {

/// N x L binary antenna-activation matrix: column l is the switch vector at
/// slot l, sampled i.i.d. Bernoulli(p) per element and slot.
struct SwitchRealization {
    std::size_t num_elements = 0;  // N
    std::size_t num_slots = 0;     // L
    std::vector<std::uint8_t> bits;  // row-major N x L
    double p = 0.0;

    std::uint8_t bit(std::size_t n, std::size_t l) const { return bits[n * num_slots + l]; }
};

enum class JammingPattern { kTraditional, kRass };

/// Per-radar jamming gain processes: entry (k, l) is the coefficient
/// alpha^H(theta_k) (p[l] o alpha(theta_1)). For the traditional full-array
/// pattern every column is identical; for the RASS pattern row 0 equals the
/// per-slot count of active elements.
struct JammingGains {
    CMatrix gains;  // K x L
    JammingPattern pattern = JammingPattern::kTraditional;
};

SwitchRealization sample_switch(double p, std::size_t num_elements, std::size_t num_slots,
                                Rng& rng);

JammingGains traditional_gains(const GeometrySolution& geom, const ArrayGeometry& array,
                               double wavelength_m, std::size_t num_slots);

/// Throws DimensionError when the switch does not match the array / slot grid.
JammingGains rass_gains(const SwitchRealization& sw, const GeometrySolution& geom,
                        const ArrayGeometry& array, double wavelength_m);

}  // namespace rassim
