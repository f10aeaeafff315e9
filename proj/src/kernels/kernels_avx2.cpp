// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers must check backend availability before dispatching.

#include "sdnc/kernels.hpp"

#if SDNC_KERNELS_HAVE_AVX2

#include <immintrin.h>

#include <cstring>

namespace sdnc::kern::avx2 {

static inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot(const double* a, const double* b, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, size_t n) {
    __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

void vadd(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}

void matmul_nn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    if (!acc) std::memset(c, 0, m * n * sizeof(double));
    for (size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (size_t r = 0; r < k; ++r) {
            axpy(a[i * k + r], b + r * n, crow, n);
        }
    }
}

void matmul_nt(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    for (size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * n;
        for (size_t j = 0; j < n; ++j) {
            double s = dot(arow, b + j * k, k);
            crow[j] = acc ? crow[j] + s : s;
        }
    }
}

void matmul_tn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    if (!acc) std::memset(c, 0, m * n * sizeof(double));
    for (size_t r = 0; r < k; ++r) {
        const double* arow = a + r * m;
        const double* brow = b + r * n;
        for (size_t i = 0; i < m; ++i) {
            axpy(arow[i], brow, c + i * n, n);
        }
    }
}

}  // namespace sdnc::kern::avx2

#endif  // SDNC_KERNELS_HAVE_AVX2
