#ifndef PLATEFSI_KERNELS_HPP
#define PLATEFSI_KERNELS_HPP

#include <cstddef>
#include <string>

// Data-parallel double-precision kernels used by the dense linear algebra
// layer. A scalar reference implementation always exists; an AVX2/FMA
// variant is compiled on x86-64 and selected at runtime when the CPU
// supports it. The two variants are equivalence-tested against each other.
namespace platefsi::kernels {

enum class Backend { scalar, avx2 };

// Backend chosen at first use: avx2 if compiled in and supported by the
// CPU, unless the environment variable PLATEFSI_KERNELS=scalar forces the
// reference path.
Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);
// Throws std::invalid_argument if the backend is not available here.
void set_backend(Backend b);

// dot(a,b) over n elements.
double dot(const double* a, const double* b, std::size_t n);
// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, std::size_t n);
// out[i] = a[i] + beta * b[i]   (out may alias a)
void combine(double* out, const double* a, double beta, const double* b,
             std::size_t n);
// x[i] *= alpha
void scale(double alpha, double* x, std::size_t n);
// max_i |x[i]| (0 for n == 0)
double max_abs(const double* x, std::size_t n);
// y = A x with A row-major (rows x cols)
void gemv(const double* a, std::size_t rows, std::size_t cols,
          const double* x, double* y);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void combine(double* out, const double* a, double beta, const double* b,
             std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace scalar

namespace avx2 {
// compiled() is true when this build contains the AVX2 translation unit;
// usable() additionally requires AVX2+FMA support on the running CPU.
bool compiled();
bool usable();
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void combine(double* out, const double* a, double beta, const double* b,
             std::size_t n);
void scale(double alpha, double* x, std::size_t n);
double max_abs(const double* x, std::size_t n);
}  // namespace avx2

}  // namespace platefsi::kernels

#endif
