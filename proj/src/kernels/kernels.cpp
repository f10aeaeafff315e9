#include "sdnc/kernels.hpp"

#include <atomic>
#include <cstring>

#include "sdnc/util.hpp"

namespace sdnc::kern {

namespace scalar {

double dot(const double* a, const double* b, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void vadd(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void matmul_nn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    if (!acc) std::memset(c, 0, m * n * sizeof(double));
    for (size_t i = 0; i < m; ++i) {
        double* crow = c + i * n;
        for (size_t r = 0; r < k; ++r) {
            double av = a[i * k + r];
            const double* brow = b + r * n;
            for (size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
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
            double av = arow[i];
            double* crow = c + i * n;
            for (size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

}  // namespace scalar

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

#if SDNC_KERNELS_HAVE_AVX2
static bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
#if SDNC_KERNELS_HAVE_AVX2
    return cpu_has_avx2();
#else
    return false;
#endif
}

Backend detect_backend() {
    return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

static std::atomic<Backend> g_backend{detect_backend()};

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_available(b))
        throw ConfigError(std::string("kernel backend not available on this host: ") + backend_name(b));
    g_backend.store(b, std::memory_order_relaxed);
}

#if SDNC_KERNELS_HAVE_AVX2
#define SDNC_DISPATCH(fn, ...)                                    \
    do {                                                          \
        if (active_backend() == Backend::avx2)                    \
            return avx2::fn(__VA_ARGS__);                         \
        return scalar::fn(__VA_ARGS__);                           \
    } while (0)
#else
#define SDNC_DISPATCH(fn, ...) return scalar::fn(__VA_ARGS__)
#endif

double dot(const double* a, const double* b, size_t n) { SDNC_DISPATCH(dot, a, b, n); }
void axpy(double alpha, const double* x, double* y, size_t n) { SDNC_DISPATCH(axpy, alpha, x, y, n); }
void scal(double alpha, double* x, size_t n) { SDNC_DISPATCH(scal, alpha, x, n); }
void vadd(const double* a, const double* b, double* out, size_t n) { SDNC_DISPATCH(vadd, a, b, out, n); }
void matmul_nn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    SDNC_DISPATCH(matmul_nn, a, b, c, m, k, n, acc);
}
void matmul_nt(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    SDNC_DISPATCH(matmul_nt, a, b, c, m, k, n, acc);
}
void matmul_tn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc) {
    SDNC_DISPATCH(matmul_tn, a, b, c, m, k, n, acc);
}

#undef SDNC_DISPATCH

}  // namespace sdnc::kern
