#ifndef FACTORCERT_KERNELS_HPP
#define FACTORCERT_KERNELS_HPP

#include <complex>
#include <cstddef>

// Low-level dense kernels on raw row-major arrays. factorcert::kernels is
// the OpenMP-parallel production path; factorcert::reference is the plain
// serial implementation kept as the oracle for the kernel tests and the
// baseline for the benchmark target. Both paths produce bit-identical
// output: every output element is owned by one thread and inner
// accumulations run in a fixed order.

namespace factorcert {

using Complex = std::complex<double>;

namespace kernels {

// c(m x n) = a(m x k) * b(k x n)
void matmul(const Complex* a, const Complex* b, Complex* c,
            std::size_t m, std::size_t k, std::size_t n);

// out((ar*br) x (ac*bc)) with the LEFT factor as the coarse block index:
// out[i*br+r, j*bc+s] = a[i,j] * b[r,s]
void kron(const Complex* a, std::size_t ar, std::size_t ac,
          const Complex* b, std::size_t br, std::size_t bc, Complex* out);

// out(c x r) = conj(transpose(a(r x c)))
void adjoint(const Complex* a, std::size_t r, std::size_t c, Complex* out);

// out(n x n) = (id_n (x) tau_k)(a), a of dimension n*k:
// out[i,j] = (1/k) * sum_s a[i*k+s, j*k+s]
void partial_trace_right(const Complex* a, std::size_t n, std::size_t k, Complex* out);

} // namespace kernels

namespace reference {

void matmul(const Complex* a, const Complex* b, Complex* c,
            std::size_t m, std::size_t k, std::size_t n);
void kron(const Complex* a, std::size_t ar, std::size_t ac,
          const Complex* b, std::size_t br, std::size_t bc, Complex* out);
void adjoint(const Complex* a, std::size_t r, std::size_t c, Complex* out);
void partial_trace_right(const Complex* a, std::size_t n, std::size_t k, Complex* out);

} // namespace reference

} // namespace factorcert

#endif
