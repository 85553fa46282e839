#include "factorcert/kernels.hpp"

#include <cstdint>

namespace factorcert {
namespace kernels {

namespace {
// Parallelism only pays off once the flop count clears scheduling overhead.
constexpr std::size_t kParallelWork = std::size_t(1) << 15;
} // namespace

void matmul(const Complex* a, const Complex* b, Complex* c,
            std::size_t m, std::size_t k, std::size_t n) {
    const std::size_t work = m * k * n;
    const std::int64_t mi = static_cast<std::int64_t>(m);
#pragma omp parallel for if (work >= kParallelWork) schedule(static)
    for (std::int64_t i = 0; i < mi; ++i) {
        Complex* crow = c + std::size_t(i) * n;
        const Complex* arow = a + std::size_t(i) * k;
        for (std::size_t j = 0; j < n; ++j) crow[j] = Complex(0.0, 0.0);
        for (std::size_t p = 0; p < k; ++p) {
            const Complex aip = arow[p];
            if (aip == Complex(0.0, 0.0)) continue;
            const Complex* brow = b + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
        }
    }
}

void kron(const Complex* a, std::size_t ar, std::size_t ac,
          const Complex* b, std::size_t br, std::size_t bc, Complex* out) {
    const std::size_t rows = ar * br;
    const std::size_t cols = ac * bc;
    const std::size_t work = rows * cols;
    const std::int64_t rowsi = static_cast<std::int64_t>(rows);
#pragma omp parallel for if (work >= kParallelWork) schedule(static)
    for (std::int64_t row = 0; row < rowsi; ++row) {
        const std::size_t i = std::size_t(row) / br;
        const std::size_t r = std::size_t(row) % br;
        Complex* orow = out + std::size_t(row) * cols;
        const Complex* arow = a + i * ac;
        const Complex* brow = b + r * bc;
        for (std::size_t j = 0; j < ac; ++j) {
            const Complex aij = arow[j];
            Complex* oseg = orow + j * bc;
            for (std::size_t s = 0; s < bc; ++s) oseg[s] = aij * brow[s];
        }
    }
}

void adjoint(const Complex* a, std::size_t r, std::size_t c, Complex* out) {
    const std::size_t work = r * c;
    const std::int64_t ci = static_cast<std::int64_t>(c);
#pragma omp parallel for if (work >= kParallelWork) schedule(static)
    for (std::int64_t j = 0; j < ci; ++j) {
        Complex* orow = out + std::size_t(j) * r;
        for (std::size_t i = 0; i < r; ++i) orow[i] = std::conj(a[i * c + std::size_t(j)]);
    }
}

void partial_trace_right(const Complex* a, std::size_t n, std::size_t k, Complex* out) {
    const std::size_t dim = n * k;
    const double inv_k = 1.0 / static_cast<double>(k);
    const std::size_t work = n * n * k;
    const std::int64_t ni = static_cast<std::int64_t>(n);
#pragma omp parallel for if (work >= kParallelWork) schedule(static)
    for (std::int64_t i = 0; i < ni; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t s = 0; s < k; ++s) {
                acc += a[(std::size_t(i) * k + s) * dim + (j * k + s)];
            }
            out[std::size_t(i) * n + j] = acc * inv_k;
        }
    }
}

} // namespace kernels

namespace reference {

void matmul(const Complex* a, const Complex* b, Complex* c,
            std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t p = 0; p < k; ++p) acc += a[i * k + p] * b[p * n + j];
            c[i * n + j] = acc;
        }
    }
}

void kron(const Complex* a, std::size_t ar, std::size_t ac,
          const Complex* b, std::size_t br, std::size_t bc, Complex* out) {
    const std::size_t cols = ac * bc;
    for (std::size_t i = 0; i < ar; ++i) {
        for (std::size_t j = 0; j < ac; ++j) {
            const Complex aij = a[i * ac + j];
            for (std::size_t r = 0; r < br; ++r) {
                for (std::size_t s = 0; s < bc; ++s) {
                    out[(i * br + r) * cols + (j * bc + s)] = aij * b[r * bc + s];
                }
            }
        }
    }
}

void adjoint(const Complex* a, std::size_t r, std::size_t c, Complex* out) {
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) out[j * r + i] = std::conj(a[i * c + j]);
    }
}

void partial_trace_right(const Complex* a, std::size_t n, std::size_t k, Complex* out) {
    const std::size_t dim = n * k;
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t s = 0; s < k; ++s) acc += a[(i * k + s) * dim + (j * k + s)];
            out[i * n + j] = acc * inv_k;
        }
    }
}

} // namespace reference
} // namespace factorcert
