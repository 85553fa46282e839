#include <doctest.h>

#include <random>

#include "factorcert/kernels.hpp"
#include "factorcert/linalg.hpp"
#include "test_support.hpp"

using namespace factorcert;

namespace {

ComplexMatrix run_matmul(const ComplexMatrix& a, const ComplexMatrix& b, bool parallel) {
    ComplexMatrix c(a.rows(), b.cols());
    if (parallel) {
        kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    } else {
        reference::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
    }
    return c;
}

} // namespace

TEST_CASE("matmul: both paths agree with the loop oracle") {
    std::mt19937_64 rng(101);
    // Shapes straddle the parallel-dispatch threshold (2^15 flops).
    const std::size_t shapes[][3] = {{1, 1, 1}, {3, 4, 5}, {7, 2, 9}, {16, 16, 16}, {40, 33, 40}};
    for (const auto& s : shapes) {
        const ComplexMatrix a = random_matrix(s[0], s[1], rng);
        const ComplexMatrix b = random_matrix(s[1], s[2], rng);
        const ComplexMatrix want = test::matmul_oracle(a, b);
        const ComplexMatrix fast = run_matmul(a, b, true);
        const ComplexMatrix slow = run_matmul(a, b, false);
        CHECK(frobenius_distance(fast, want) <=
              1e-12 * (1.0 + frobenius_norm(a) * frobenius_norm(b)));
        // The two paths accumulate in the same order, so they agree exactly.
        CHECK(fast == slow);
    }
}

TEST_CASE("matmul: zero rows take the skip path without changing the result") {
    std::mt19937_64 rng(102);
    ComplexMatrix a = random_matrix(20, 20, rng);
    for (std::size_t j = 0; j < 20; ++j) {
        a(3, j) = Complex(0.0, 0.0);
        a(j, 7) = Complex(0.0, 0.0);
    }
    const ComplexMatrix b = random_matrix(20, 20, rng);
    CHECK(run_matmul(a, b, true) == run_matmul(a, b, false));
    CHECK(frobenius_distance(run_matmul(a, b, true), test::matmul_oracle(a, b)) <= 1e-10);
}

TEST_CASE("kron: both paths match the quadruple-loop oracle exactly") {
    std::mt19937_64 rng(103);
    const std::size_t shapes[][4] = {{1, 1, 2, 2}, {2, 3, 3, 2}, {4, 4, 5, 5}, {16, 16, 16, 16}};
    for (const auto& s : shapes) {
        const ComplexMatrix a = random_matrix(s[0], s[1], rng);
        const ComplexMatrix b = random_matrix(s[2], s[3], rng);
        ComplexMatrix fast(s[0] * s[2], s[1] * s[3]);
        ComplexMatrix slow(s[0] * s[2], s[1] * s[3]);
        kernels::kron(a.data(), s[0], s[1], b.data(), s[2], s[3], fast.data());
        reference::kron(a.data(), s[0], s[1], b.data(), s[2], s[3], slow.data());
        CHECK(fast == slow);
        CHECK(fast == test::kron_oracle(a, b));
    }
}

TEST_CASE("adjoint: both paths match the loop oracle exactly") {
    std::mt19937_64 rng(104);
    const std::size_t shapes[][2] = {{1, 5}, {4, 4}, {7, 3}, {64, 64}};
    for (const auto& s : shapes) {
        const ComplexMatrix a = random_matrix(s[0], s[1], rng);
        ComplexMatrix fast(s[1], s[0]);
        ComplexMatrix slow(s[1], s[0]);
        kernels::adjoint(a.data(), s[0], s[1], fast.data());
        reference::adjoint(a.data(), s[0], s[1], slow.data());
        CHECK(fast == slow);
        CHECK(fast == test::adjoint_oracle(a));
    }
}

TEST_CASE("partial trace: both paths match the loop oracle exactly") {
    std::mt19937_64 rng(105);
    const std::size_t shapes[][2] = {{1, 1}, {2, 3}, {5, 4}, {24, 8}};
    for (const auto& s : shapes) {
        const ComplexMatrix a = random_matrix(s[0] * s[1], s[0] * s[1], rng);
        ComplexMatrix fast(s[0], s[0]);
        ComplexMatrix slow(s[0], s[0]);
        kernels::partial_trace_right(a.data(), s[0], s[1], fast.data());
        reference::partial_trace_right(a.data(), s[0], s[1], slow.data());
        CHECK(fast == slow);
        // The oracle divides where the kernel multiplies by 1/k; compare at roundoff.
        CHECK(frobenius_distance(fast, test::ptrace_oracle(a, s[0], s[1])) <= 1e-12);
    }
}
