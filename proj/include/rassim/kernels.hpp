#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "rassim/types.hpp"

namespace rassim::kernels {

/// Vector primitives behind the per-slot inner loops (covariance rows,
/// projection, circular correlation, synthesis, energy reductions).
/// Each entry has a scalar reference implementation and, on x86-64, an AVX2
/// variant selected at runtime. Variants are equivalence-tested against the
/// scalar reference; results may differ in the last ulps (reassociated sums).
struct Backend {
    const char* name;
    // sum conj(a[i]) * b[i]
    cplx (*cdotc)(const cplx* a, const cplx* b, std::size_t n);
    // sum |a[i]|^2
    double (*norm2)(const cplx* a, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // y[i] = alpha * x[i]
    void (*scale)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*hadamard)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
};

const Backend& scalar_backend();

/// AVX2 backend, or nullptr when unsupported (build or host CPU).
const Backend* avx2_backend();

/// Active backend: RASSIM_KERNELS env (scalar|avx2|auto), else best available.
const Backend& active();

/// Force a backend by name ("scalar", "avx2", "auto"). Throws on an
/// unavailable name. Intended for tests; not safe against concurrent kernel
/// use.
void force(const std::string& name);

inline cplx cdotc(std::span<const cplx> a, std::span<const cplx> b) {
    return active().cdotc(a.data(), b.data(), a.size());
}
inline double norm2(std::span<const cplx> a) { return active().norm2(a.data(), a.size()); }
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
    active().scale(alpha, x.data(), y.data(), x.size());
}
inline void hadamard(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
    active().hadamard(a.data(), b.data(), out.data(), a.size());
}

}  // namespace rassim::kernels
