#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <cblas.h>
#include <lapacke.h>

#include "ptchain/matrix.hpp"

namespace ptchain {

inline constexpr double kDefaultResidualTolerance = 1e-10;

/// Thrown when the QR iteration fails to converge or the residual check fails.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All eigenvalues of a dense complex matrix with matching right eigenvectors.
///
/// values[k] and vectors[k] belong together; values are sorted ascending by
/// (re, im) with exact float comparison, and every vector has Euclidean norm 1.
/// max_residual is the largest ||M v - lambda v||_inf over all pairs.
struct EigenDecomposition {
    std::vector<Complex> values;
    std::vector<std::vector<Complex>> vectors;
    double max_residual = 0.0;
};

namespace detail {

inline void limit_blas_threads() {
    // Grid cells supply the parallelism; nested BLAS threads would also make
    // reductions depend on the ambient thread count.
    static std::once_flag flag;
    std::call_once(flag, [] { openblas_set_num_threads(1); });
}

}  // namespace detail

/// Full eigendecomposition of a general (non-Hermitian) complex matrix:
/// balancing, Hessenberg reduction, shifted QR with deflation, then
/// eigenvector extraction (LAPACK zgeev). Deterministic: identical input
/// yields bit-identical output.
inline EigenDecomposition eigen_decompose(const ComplexMatrix& m,
                                          double residual_tolerance = kDefaultResidualTolerance) {
    if (residual_tolerance <= 0.0)
        throw std::invalid_argument("eigen_decompose: residual_tolerance must be > 0");
    if (!m.all_finite())
        throw std::invalid_argument("eigen_decompose: matrix contains NaN or Inf entries");
    detail::limit_blas_threads();

    const auto n = static_cast<lapack_int>(m.dim());
    std::vector<Complex> a(m.dim() * m.dim());      // column-major work copy, destroyed
    std::vector<Complex> orig(m.dim() * m.dim());   // pristine copy for the residual check
    for (std::size_t j = 0; j < m.dim(); ++j)
        for (std::size_t i = 0; i < m.dim(); ++i) orig[j * m.dim() + i] = a[j * m.dim() + i] = m(i, j);

    std::vector<Complex> values(m.dim());
    std::vector<Complex> vectors(m.dim() * m.dim());
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n, a.data(), n, values.data(), nullptr, 1,
                      vectors.data(), n);
    if (info < 0)
        throw SolverError("eigen_decompose: invalid argument " + std::to_string(-info) +
                          " passed to zgeev");
    if (info > 0)
        throw SolverError("eigen_decompose: QR iteration did not converge; deflation reached index " +
                          std::to_string(info) + " of " + std::to_string(m.dim()) +
                          " (only trailing eigenvalues resolved)");

    for (std::size_t k = 0; k < m.dim(); ++k) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < m.dim(); ++i) norm_sq += std::norm(vectors[k * m.dim() + i]);
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t i = 0; i < m.dim(); ++i) vectors[k * m.dim() + i] *= inv;
    }

    // ||M v - lambda v||_inf per pair, against the original matrix.
    std::vector<Complex> mv(m.dim() * m.dim());
    const Complex one{1.0, 0.0}, zero{0.0, 0.0};
    cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, &one, orig.data(), n,
                vectors.data(), n, &zero, mv.data(), n);
    double max_res = 0.0;
    for (std::size_t k = 0; k < m.dim(); ++k)
        for (std::size_t i = 0; i < m.dim(); ++i)
            max_res = std::max(max_res,
                               std::abs(mv[k * m.dim() + i] - values[k] * vectors[k * m.dim() + i]));

    const double bound = residual_tolerance * infinity_norm(m);
    if (max_res > bound)
        throw SolverError("eigen_decompose: residual " + std::to_string(max_res) +
                          " exceeds tolerance bound " + std::to_string(bound));

    std::vector<std::size_t> order(m.dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        if (values[l].real() != values[r].real()) return values[l].real() < values[r].real();
        return values[l].imag() < values[r].imag();
    });

    EigenDecomposition out;
    out.values.reserve(m.dim());
    out.vectors.reserve(m.dim());
    for (std::size_t k : order) {
        out.values.push_back(values[k]);
        out.vectors.emplace_back(vectors.begin() + static_cast<std::ptrdiff_t>(k * m.dim()),
                                 vectors.begin() + static_cast<std::ptrdiff_t>((k + 1) * m.dim()));
    }
    out.max_residual = max_res;
    return out;
}

}  // namespace ptchain
