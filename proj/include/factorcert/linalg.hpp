#ifndef FACTORCERT_LINALG_HPP
#define FACTORCERT_LINALG_HPP

#include <random>
#include <span>
#include <vector>

#include "factorcert/complex_matrix.hpp"
#include "factorcert/errors.hpp"
#include "factorcert/rational.hpp"

namespace factorcert {

// Kronecker product; the LEFT factor is the coarse block index. This is the
// one tensor convention used throughout: partial traces always remove the
// RIGHT (inner) factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const Limits& lim = Limits{});

// Block-diagonal sum of square blocks, in the given order.
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);
ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks);

// m block-diagonal copies of a; equals kron(identity(m), a).
ComplexMatrix block_repeat(const ComplexMatrix& a, std::size_t m, const Limits& lim = Limits{});

// tau_n: trace divided by dimension.
Complex normalized_trace(const ComplexMatrix& a);

// (id_n (x) tau_k): out[i,j] = (1/k) sum_s a[i*k+s, j*k+s].
ComplexMatrix partial_trace_right(const ComplexMatrix& a, std::size_t n, std::size_t k);

// ||a*a - 1||_F <= tol and ||aa* - 1||_F <= tol.
bool is_unitary(const ComplexMatrix& a, double tol);

// Hermitian within tol and spectrum >= -tol, decided by a Cholesky
// factorization of hermitize(a) + tol*1; a failed pivot means not PSD at tol.
bool is_psd(const ComplexMatrix& a, double tol);

struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are the eigenvectors, unitary
};

// Cyclic Jacobi diagonalization of a Hermitian matrix. Internal utility for
// Kraus extraction; not a general eigensolver.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a);

// Haar-like unitary: Gram-Schmidt orthonormalization of a complex Gaussian
// matrix drawn from rng. Deterministic for a fixed seed.
ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng);

// Entrywise complex Gaussian matrix.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

} // namespace factorcert

#endif
