#ifndef FACTORCERT_TEST_SUPPORT_HPP
#define FACTORCERT_TEST_SUPPORT_HPP

// Shared fixtures and independent oracles. The oracles recompute everything
// with plain nested loops so the library's fast paths are always checked
// against a second, dumber implementation.

#include <cstddef>
#include <random>
#include <vector>

#include "factorcert/channel.hpp"
#include "factorcert/free_group.hpp"
#include "factorcert/linalg.hpp"
#include "factorcert/rational.hpp"

namespace factorcert::test {

inline ComplexMatrix pauli_x() {
    return ComplexMatrix::from_rows({{Complex(0.0), Complex(1.0)}, {Complex(1.0), Complex(0.0)}});
}

inline ComplexMatrix pauli_z() {
    return ComplexMatrix::from_rows({{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(-1.0)}});
}

inline ComplexMatrix matmul_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t p = 0; p < a.cols(); ++p) acc += a(i, p) * b(p, j);
            c(i, j) = acc;
        }
    return c;
}

inline ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t s = 0; s < b.cols(); ++s)
                    out(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
    return out;
}

inline ComplexMatrix adjoint_oracle(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline ComplexMatrix ptrace_oracle(const ComplexMatrix& a, std::size_t n, std::size_t k) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Complex acc(0.0, 0.0);
            for (std::size_t s = 0; s < k; ++s) acc += a(i * k + s, j * k + s);
            out(i, j) = acc / Complex(static_cast<double>(k), 0.0);
        }
    return out;
}

inline ComplexMatrix apply_oracle(const QuantumChannel& t, const ComplexMatrix& x) {
    ComplexMatrix acc(t.dim, t.dim);
    for (const auto& a : t.kraus) acc += matmul_oracle(matmul_oracle(adjoint_oracle(a), x), a);
    return acc;
}

inline ComplexMatrix choi_oracle(const QuantumChannel& t) {
    const std::size_t n = t.dim;
    ComplexMatrix c(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c += kron_oracle(ComplexMatrix::unit(n, i, j),
                             apply_oracle(t, ComplexMatrix::unit(n, i, j)));
    return c;
}

inline double choi_distance_oracle(const QuantumChannel& a, const QuantumChannel& b) {
    return frobenius_distance(choi_oracle(a), choi_oracle(b));
}

// x restricted to its diagonal: the action of the diagonal channel sum E_ii x E_ii.
inline ComplexMatrix diagonal_part(const ComplexMatrix& x) {
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) out(i, i) = x(i, i);
    return out;
}

inline QuantumChannel dephasing_channel(std::size_t d) {
    QuantumChannel t;
    t.dim = d;
    for (std::size_t i = 0; i < d; ++i) t.kraus.push_back(ComplexMatrix::unit(d, i, i));
    t.validated = true;
    return t;
}

inline QuantumChannel identity_channel(std::size_t n) {
    QuantumChannel t;
    t.dim = n;
    t.kraus = {ComplexMatrix::identity(n)};
    t.validated = true;
    return t;
}

// d positive rationals with common denominator <= max_den, summing exactly to 1.
inline std::vector<Rational> random_convex_rationals(std::mt19937_64& rng, std::size_t d,
                                                     long long max_den) {
    const long long total =
        static_cast<long long>(d) +
        static_cast<long long>(rng() % static_cast<unsigned long long>(
                                            max_den - static_cast<long long>(d) + 1));
    std::vector<long long> parts(d, 1);
    for (long long extra = total - static_cast<long long>(d); extra > 0; --extra) {
        parts[rng() % d] += 1;
    }
    std::vector<Rational> out;
    out.reserve(d);
    for (long long p : parts) out.emplace_back(p, total);
    return out;
}

inline std::vector<Letter> random_letters(std::mt19937_64& rng, std::size_t len, int gens) {
    std::vector<Letter> raw;
    raw.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        raw.push_back(Letter{static_cast<int>(rng() % static_cast<unsigned>(gens)) + 1,
                             (rng() % 2) ? +1 : -1});
    }
    return raw;
}

// Cancels one adjacent inverse pair at a time, choosing the pair at random,
// until none remain; order-independence of reduction is part of the contract.
inline std::vector<Letter> brute_reduce(std::vector<Letter> w, std::mt19937_64& rng) {
    for (;;) {
        std::vector<std::size_t> hits;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) hits.push_back(i);
        }
        if (hits.empty()) return w;
        const std::size_t at = hits[rng() % hits.size()];
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(at),
                w.begin() + static_cast<std::ptrdiff_t>(at) + 2);
    }
}

} // namespace factorcert::test

#endif
