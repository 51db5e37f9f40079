#include "rassim/suppression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rassim/errors.hpp"
#include "rassim/kernels.hpp"

namespace rassim {

CMatrix sample_covariance(const CMatrix& x) {
    const std::size_t k_count = x.rows();
    const std::size_t slots = x.cols();
    CMatrix r(k_count, k_count);
    const double inv_l = 1.0 / static_cast<double>(slots);
    for (std::size_t i = 0; i < k_count; ++i) {
        r(i, i) = kernels::norm2(x.row(i)) * inv_l;
        for (std::size_t j = i + 1; j < k_count; ++j) {
            // R_ij = (1/L) sum_l x_i[l] conj(x_j[l])
            const cplx v = kernels::cdotc(x.row(j), x.row(i)) * inv_l;
            r(i, j) = v;
            r(j, i) = std::conj(v);
        }
    }
    return r;
}

namespace {

double off_diagonal_sq(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

}  // namespace

EigenSystem eig_hermitian(const CMatrix& matrix) {
    const std::size_t n = matrix.rows();
    if (matrix.cols() != n) throw DimensionError("eig_hermitian: matrix must be square");

    double asym_sq = 0.0, scale_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            asym_sq += std::norm(matrix(i, j) - std::conj(matrix(j, i)));
            scale_sq += std::norm(matrix(i, j));
        }
    if (scale_sq > 0.0 && std::sqrt(asym_sq) > 1e-10 * std::sqrt(scale_sq))
        throw NumericError("eig_hermitian: input is not Hermitian within 1e-10 relative");

    // work on the Hermitian part
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (matrix(i, j) + std::conj(matrix(j, i)));

    CMatrix v = identity(n);
    const double tol_sq = 1e-30 * (scale_sq > 0.0 ? scale_sq : 1.0);

    for (int sweep = 0; sweep < 60 && off_diagonal_sq(a) > tol_sq; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq_mag = std::abs(a(p, q));
                if (apq_mag * apq_mag <= tol_sq / static_cast<double>(n * n)) continue;
                const cplx phase = a(p, q) / apq_mag;  // e^{j phi}
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq_mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx spq = s * phase;  // s e^{j phi}

                // columns: col_p' = c col_p - conj(spq) col_q ; col_q' = spq col_p + c col_q
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - std::conj(spq) * aiq;
                    a(i, q) = spq * aip + c * aiq;
                }
                // rows: row_p' = c row_p - spq row_q ; row_q' = conj(spq) row_p + c row_q
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - spq * aqi;
                    a(q, i) = std::conj(spq) * api + c * aqi;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - std::conj(spq) * viq;
                    v(i, q) = spq * vip + c * viq;
                }
            }
        }
    }
    if (off_diagonal_sq(a) > tol_sq * 1e4)
        throw NumericError("eig_hermitian: Jacobi iteration failed to converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem es;
    es.eigenvalues.resize(n);
    es.eigenvectors = CMatrix(n, n);
    for (std::size_t c_out = 0; c_out < n; ++c_out) {
        const std::size_t src = order[c_out];
        es.eigenvalues[c_out] = a(src, src).real();
        // phase convention: largest-modulus entry real positive, lowest index on ties
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(v(i, src));
            if (m > best) {
                best = m;
                imax = i;
            }
        }
        const cplx rot = best > 0.0 ? std::conj(v(imax, src)) / best : cplx(1.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, c_out) = rot * v(i, src);
    }
    return es;
}

SubspaceSplit split_subspaces(const EigenSystem& es, std::size_t num_jammers,
                              std::size_t num_targets) {
    const std::size_t n = es.eigenvalues.size();
    if (num_jammers + num_targets > n)
        throw DimensionError("split_subspaces: J + T exceeds matrix dimension");
    SubspaceSplit sp;
    const std::size_t noise_dim = n - num_jammers - num_targets;
    sp.jamming = CMatrix(n, num_jammers);
    sp.signal = CMatrix(n, num_targets);
    sp.noise = CMatrix(n, noise_dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < num_jammers; ++j) sp.jamming(i, j) = es.eigenvectors(i, j);
        for (std::size_t j = 0; j < num_targets; ++j)
            sp.signal(i, j) = es.eigenvectors(i, num_jammers + j);
        for (std::size_t j = 0; j < noise_dim; ++j)
            sp.noise(i, j) = es.eigenvectors(i, num_jammers + num_targets + j);
    }
    sp.jamming_eigenvalues.assign(es.eigenvalues.begin(), es.eigenvalues.begin() + num_jammers);
    sp.signal_eigenvalues.assign(es.eigenvalues.begin() + num_jammers,
                                 es.eigenvalues.begin() + num_jammers + num_targets);
    sp.noise_eigenvalues.assign(es.eigenvalues.begin() + num_jammers + num_targets,
                                es.eigenvalues.end());
    return sp;
}

CMatrix eigenproject(const CMatrix& x, const CMatrix& basis) {
    const std::size_t k_count = x.rows();
    const std::size_t slots = x.cols();
    const std::size_t j_dim = basis.cols();
    if (basis.rows() != k_count) throw DimensionError("eigenproject: basis rows != snapshot rows");

    // t = U^H x, then y = x - U t
    CMatrix t(j_dim, slots);
    for (std::size_t j = 0; j < j_dim; ++j)
        for (std::size_t k = 0; k < k_count; ++k)
            kernels::axpy(std::conj(basis(k, j)), x.row(k), t.row(j));
    CMatrix y = x;
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t j = 0; j < j_dim; ++j)
            kernels::axpy(-basis(k, j), t.row(j), y.row(k));
    return y;
}

SnapshotMatrix eigenproject(const SnapshotMatrix& snap, const CMatrix& basis) {
    SnapshotMatrix out;
    out.data = eigenproject(snap.data, basis);
    out.signal = eigenproject(snap.signal, basis);
    out.jamming = eigenproject(snap.jamming, basis);
    out.noise = eigenproject(snap.noise, basis);
    return out;
}

RangeProfile range_profile(const CMatrix& snapshots, const BasebandSignal& replica) {
    const std::size_t k_count = snapshots.rows();
    const std::size_t slots = snapshots.cols();
    if (replica.samples.size() != slots)
        throw DimensionError("range_profile: replica length != slot count");

    // doubled replica so each circular lag is one contiguous conjugated dot
    std::vector<cplx> rep2(2 * slots);
    std::copy(replica.samples.begin(), replica.samples.end(), rep2.begin());
    std::copy(replica.samples.begin(), replica.samples.end(), rep2.begin() + slots);

    RangeProfile prof;
    prof.bin_resolution_m = kSpeedOfLight * replica.slot_duration_s / 2.0;
    prof.bins.assign(slots, 0.0);
    prof.per_radar.assign(k_count, std::vector<double>(slots, 0.0));
    for (std::size_t k = 0; k < k_count; ++k) {
        const auto row = snapshots.row(k);
        for (std::size_t m = 0; m < slots; ++m) {
            const cplx c = kernels::active().cdotc(rep2.data() + (slots - m), row.data(), slots);
            prof.per_radar[k][m] = std::abs(c);
            prof.bins[m] += std::norm(c);
        }
    }
    for (auto& b : prof.bins) b = std::sqrt(b);
    return prof;
}

double peak_to_median_db(const RangeProfile& profile) {
    std::vector<double> sorted = profile.bins;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    const double peak = sorted.back();
    return 10.0 * std::log10(peak / median);
}

double output_jsnr_empirical(const SnapshotMatrix& projected) {
    const std::size_t k_count = projected.data.rows();
    const std::size_t slots = projected.data.cols();
    double num = 0.0, den = 0.0;
    std::vector<cplx> sn(slots);
    for (std::size_t k = 0; k < k_count; ++k) {
        num += kernels::norm2(projected.jamming.row(k));
        for (std::size_t l = 0; l < slots; ++l) sn[l] = projected.signal(k, l) + projected.noise(k, l);
        den += kernels::norm2(sn);
    }
    if (den <= 0.0) throw NumericError("output_jsnr_empirical: zero signal+noise energy");
    return num / den;
}

}  // namespace rassim
