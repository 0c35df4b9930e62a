/* kernels_avx2.cpp
 *
 * AVX2+FMA kernel lane. This translation unit is the only one compiled
 * with -mavx2 -mfma; it must not be entered unless the dispatcher has
 * confirmed CPU support. Loads are unaligned (vectors here are small and
 * live inside std::vector storage).
 */
#include "mimogames/kernels.hpp"

#if defined(MIMOGAMES_HAVE_AVX2_LANE)

#include <immintrin.h>

#include <cstring>

namespace mimogames::kernels {
namespace avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
    for (std::size_t i = 0; i < rows; ++i) y[i] = dot(a + i * cols, x, cols);
}

void syr(double alpha, const double* x, std::size_t n, double* a) {
    for (std::size_t i = 0; i < n; ++i) {
        axpy(alpha * x[i], x, a + i * n, n);
    }
}

void matmul(const double* a, const double* b, double* c,
            std::size_t m, std::size_t k, std::size_t n) {
    std::memset(c, 0, m * n * sizeof(double));
    for (std::size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (std::size_t t = 0; t < k; ++t) {
            axpy(a[i * k + t], b + t * n, crow, n);
        }
    }
}

}  // namespace avx2

namespace {
const KernelTable kAvx2Table = {
    avx2::dot, avx2::axpy, avx2::scal,
    avx2::matvec, avx2::syr, avx2::matmul,
};
}  // namespace

const KernelTable* avx2_kernel_table() { return &kAvx2Table; }

}  // namespace mimogames::kernels

#endif  // MIMOGAMES_HAVE_AVX2_LANE
