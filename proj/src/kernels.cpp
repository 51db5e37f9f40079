// Scalar reference kernels and runtime backend selection.

#include "rassim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace rassim::kernels {

namespace {

cplx cdotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p = std::conj(a[i]) * b[i];
        re += p.real();
        im += p.imag();
    }
    return {re, im};
}

double norm2_scalar(const cplx* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(a[i]);
    return s;
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

void hadamard_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

const Backend kScalar{"scalar", cdotc_scalar, norm2_scalar, axpy_scalar, scale_scalar,
                      hadamard_scalar};

std::atomic<const Backend*> g_active{nullptr};

const Backend* pick_default() {
    if (const char* env = std::getenv("RASSIM_KERNELS")) {
        const std::string v = env;
        if (v == "scalar") return &kScalar;
        if (v == "avx2") {
            if (const Backend* b = avx2_backend()) return b;
            throw std::runtime_error("RASSIM_KERNELS=avx2 but AVX2 is unavailable on this host");
        }
        // anything else (incl. "auto") falls through to detection
    }
    if (const Backend* b = avx2_backend()) return b;
    return &kScalar;
}

}  // namespace

const Backend& scalar_backend() { return kScalar; }

#ifndef RASSIM_HAVE_AVX2
const Backend* avx2_backend() { return nullptr; }
#endif

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = pick_default();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void force(const std::string& name) {
    if (name == "scalar") {
        g_active.store(&kScalar, std::memory_order_release);
    } else if (name == "avx2") {
        const Backend* b = avx2_backend();
        if (!b) throw std::runtime_error("AVX2 backend unavailable");
        g_active.store(b, std::memory_order_release);
    } else if (name == "auto") {
        g_active.store(nullptr, std::memory_order_release);
        (void)active();
    } else {
        throw std::runtime_error("unknown kernel backend: " + name);
    }
}

}  // namespace rassim::kernels
