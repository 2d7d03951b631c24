#include "platefsi/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace platefsi::kernels {

#ifndef PLATEFSI_WITH_AVX2
// Stubs for builds without the AVX2 translation unit (non-x86 targets).
namespace avx2 {
bool compiled() { return false; }
bool usable() { return false; }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { scalar::axpy(alpha, x, y, n); }
void combine(double* out, const double* a, double beta, const double* b, std::size_t n) {
    scalar::combine(out, a, beta, b, n);
}
void scale(double alpha, double* x, std::size_t n) { scalar::scale(alpha, x, n); }
double max_abs(const double* x, std::size_t n) { return scalar::max_abs(x, n); }
}  // namespace avx2
#endif

namespace {

Backend pick_initial() {
    if (const char* env = std::getenv("PLATEFSI_KERNELS")) {
        std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && avx2::usable()) return Backend::avx2;
    }
    return avx2::usable() ? Backend::avx2 : Backend::scalar;
}

Backend& current() {
    static Backend b = pick_initial();
    return b;
}

}  // namespace

Backend active_backend() { return current(); }

const char* backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) {
    return b == Backend::scalar || avx2::usable();
}

void set_backend(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument("kernel backend not available on this CPU: " +
                                    std::string(backend_name(b)));
    current() = b;
}

double dot(const double* a, const double* b, std::size_t n) {
    return current() == Backend::avx2 ? avx2::dot(a, b, n) : scalar::dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    current() == Backend::avx2 ? avx2::axpy(alpha, x, y, n) : scalar::axpy(alpha, x, y, n);
}

void combine(double* out, const double* a, double beta, const double* b, std::size_t n) {
    current() == Backend::avx2 ? avx2::combine(out, a, beta, b, n)
                               : scalar::combine(out, a, beta, b, n);
}

void scale(double alpha, double* x, std::size_t n) {
    current() == Backend::avx2 ? avx2::scale(alpha, x, n) : scalar::scale(alpha, x, n);
}

double max_abs(const double* x, std::size_t n) {
    return current() == Backend::avx2 ? avx2::max_abs(x, n) : scalar::max_abs(x, n);
}

void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

}  // namespace platefsi::kernels
