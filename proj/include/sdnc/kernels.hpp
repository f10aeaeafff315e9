#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops used by the neural core and the clustering
// baseline. Every kernel has a scalar reference implementation and, on
// x86-64, an AVX2+FMA variant. The active variant is picked once at runtime
// from CPU capabilities and can be forced (tests compare both paths).
//
// Matrix arguments are row-major, dimensions named by the output:
//   matmul_nn: C[m x n] = A[m x k] * B[k x n]
//   matmul_nt: C[m x n] = A[m x k] * B^T   (B is [n x k])
//   matmul_tn: C[m x n] = A^T * B          (A is [k x m], B is [k x n])
// With acc=true the product is added into C instead of overwriting it.

namespace sdnc::kern {

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend detect_backend();          // best available
Backend active_backend();
void set_backend(Backend b);       // throws ConfigError if unavailable

namespace scalar {
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void scal(double alpha, double* x, size_t n);
void vadd(const double* a, const double* b, double* out, size_t n);
void matmul_nn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc);
void matmul_nt(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc);
void matmul_tn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SDNC_KERNELS_HAVE_AVX2 1
namespace avx2 {
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void scal(double alpha, double* x, size_t n);
void vadd(const double* a, const double* b, double* out, size_t n);
void matmul_nn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc);
void matmul_nt(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc);
void matmul_tn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc);
}  // namespace avx2
#else
#define SDNC_KERNELS_HAVE_AVX2 0
#endif

// dispatched entry points
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void scal(double alpha, double* x, size_t n);
void vadd(const double* a, const double* b, double* out, size_t n);
void matmul_nn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc = false);
void matmul_nt(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc = false);
void matmul_tn(const double* a, const double* b, double* c, size_t m, size_t k, size_t n, bool acc = false);

}  // namespace sdnc::kern
