#include <doctest.h>

#include <random>

#include "factorcert/linalg.hpp"
#include "test_support.hpp"

using namespace factorcert;
using test::kron_oracle;
using test::matmul_oracle;

TEST_CASE("kron identities") {
    CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)) ==
          ComplexMatrix::identity(6));
    const ComplexMatrix e11 = ComplexMatrix::unit(2, 0, 0);
    ComplexMatrix want(4, 4);
    want(0, 0) = want(1, 1) = Complex(1.0, 0.0);
    CHECK(kron(e11, ComplexMatrix::identity(2)) == want);
}

TEST_CASE("kron associativity and the mixed-product rule") {
    std::mt19937_64 rng(201);
    for (int it = 0; it < 10; ++it) {
        const ComplexMatrix a = random_matrix(2, 2, rng);
        const ComplexMatrix b = random_matrix(3, 3, rng);
        const ComplexMatrix c = random_matrix(2, 2, rng);
        const ComplexMatrix d = random_matrix(3, 3, rng);
        CHECK(frobenius_distance(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-12);
        CHECK(frobenius_distance(matmul_oracle(kron(a, b), kron(c, d)),
                                 kron(matmul_oracle(a, c), matmul_oracle(b, d))) <= 1e-12);
    }
}

TEST_CASE("kron enforces the dimension bound") {
    Limits tight;
    tight.max_dim = 5;
    CHECK_THROWS_AS(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3), tight),
                    LimitError);
    CHECK_NOTHROW(kron(ComplexMatrix::identity(1), ComplexMatrix::identity(5), tight));
}

TEST_CASE("direct_sum lays out blocks in order") {
    CHECK(direct_sum({ComplexMatrix::identity(2)}) == ComplexMatrix::identity(2));
    ComplexMatrix one(1, 1), two(1, 1);
    one(0, 0) = Complex(1.0, 0.0);
    two(0, 0) = Complex(2.0, 0.0);
    const ComplexMatrix d = direct_sum({one, two});
    CHECK(d.rows() == 2);
    CHECK(d(0, 0) == Complex(1.0, 0.0));
    CHECK(d(1, 1) == Complex(2.0, 0.0));
    CHECK(d(0, 1) == Complex(0.0, 0.0));

    std::mt19937_64 rng(202);
    const ComplexMatrix a = random_matrix(3, 3, rng);
    const ComplexMatrix b = random_matrix(2, 2, rng);
    CHECK(std::abs(trace(direct_sum({a, b})) - (trace(a) + trace(b))) <= 1e-12);
    CHECK_THROWS_AS(direct_sum({random_matrix(2, 3, rng)}), ShapeError);
}

TEST_CASE("block_repeat repeats and preserves the normalized trace") {
    std::mt19937_64 rng(203);
    const ComplexMatrix a = random_matrix(3, 3, rng);
    CHECK(block_repeat(a, 1) == a);
    CHECK(block_repeat(a, 4) == kron(ComplexMatrix::identity(4), a));
    CHECK(std::abs(normalized_trace(block_repeat(a, 5)) - normalized_trace(a)) <= 1e-12);

    const ComplexMatrix z = test::pauli_z();
    const ComplexMatrix zz = block_repeat(z, 2);
    CHECK(zz.rows() == 4);
    CHECK(zz(0, 0) == Complex(1.0, 0.0));
    CHECK(zz(1, 1) == Complex(-1.0, 0.0));
    CHECK(zz(2, 2) == Complex(1.0, 0.0));
    CHECK(zz(3, 3) == Complex(-1.0, 0.0));
    CHECK_THROWS_AS(block_repeat(a, 0), PreconditionError);
}

TEST_CASE("normalized_trace") {
    CHECK(normalized_trace(ComplexMatrix::identity(2)) == Complex(1.0, 0.0));
    CHECK(normalized_trace(test::pauli_z()) == Complex(0.0, 0.0));
    CHECK(normalized_trace(ComplexMatrix::unit(2, 0, 0)) == Complex(0.5, 0.0));
    std::mt19937_64 rng(204);
    CHECK_THROWS_AS(normalized_trace(random_matrix(2, 3, rng)), ShapeError);
}

TEST_CASE("partial_trace_right on tensor products") {
    const ComplexMatrix e11 = ComplexMatrix::unit(2, 0, 0);
    CHECK(partial_trace_right(kron(e11, ComplexMatrix::identity(2)), 2, 2) == e11);
    CHECK(frobenius_norm(partial_trace_right(kron(ComplexMatrix::identity(2), test::pauli_z()),
                                             2, 2)) <= 1e-15);

    std::mt19937_64 rng(205);
    for (int it = 0; it < 20; ++it) {
        const ComplexMatrix x = random_matrix(3, 3, rng);
        const ComplexMatrix y = random_matrix(4, 4, rng);
        const Complex ty = normalized_trace(y);
        ComplexMatrix want = x;
        want *= ty;
        CHECK(frobenius_distance(partial_trace_right(kron(x, y), 3, 4), want) <= 1e-12);

        const ComplexMatrix a = random_matrix(12, 12, rng);
        CHECK(std::abs(normalized_trace(partial_trace_right(a, 3, 4)) - normalized_trace(a)) <=
              1e-12);
    }
    CHECK_THROWS_AS(partial_trace_right(ComplexMatrix::identity(6), 4, 2), ShapeError);
}

TEST_CASE("is_unitary") {
    CHECK(is_unitary(ComplexMatrix::identity(3), 1e-12));
    ComplexMatrix twice = ComplexMatrix::identity(2);
    twice *= Complex(2.0, 0.0);
    CHECK(!is_unitary(twice, 1e-9));

    std::mt19937_64 rng(206);
    for (int it = 0; it < 10; ++it) {
        const ComplexMatrix u = random_unitary(5, rng);
        CHECK(is_unitary(u, 1e-9));
        // Independent confirmation through the loop oracle.
        CHECK(frobenius_distance(matmul_oracle(test::adjoint_oracle(u), u),
                                 ComplexMatrix::identity(5)) <= 1e-12);
    }
}

TEST_CASE("is_psd") {
    CHECK(is_psd(ComplexMatrix::identity(4), 1e-12));
    CHECK(!is_psd(test::pauli_z(), 1e-9));
    std::mt19937_64 rng(207);
    for (int it = 0; it < 10; ++it) {
        const ComplexMatrix v = random_matrix(4, 4, rng);
        CHECK(is_psd(matmul_oracle(test::adjoint_oracle(v), v), 1e-9));
    }
    // Non-Hermitian input is rejected regardless of spectrum.
    ComplexMatrix skew(2, 2);
    skew(0, 1) = Complex(1.0, 0.0);
    skew(1, 0) = Complex(-1.0, 0.0);
    CHECK(!is_psd(skew, 1e-9));
}

TEST_CASE("hermitian_eigensystem diagonalizes and reconstructs") {
    std::mt19937_64 rng(208);
    for (const std::size_t n : {1u, 2u, 5u, 9u}) {
        const ComplexMatrix g = random_matrix(n, n, rng);
        ComplexMatrix h = g + test::adjoint_oracle(g);
        const HermitianEigensystem eig = hermitian_eigensystem(h);
        REQUIRE(eig.values.size() == n);
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(eig.values[i] <= eig.values[i + 1]);
        CHECK(is_unitary(eig.vectors, 1e-9));
        // h v_col = lambda_col v_col for every column.
        const ComplexMatrix hv = matmul_oracle(h, eig.vectors);
        for (std::size_t col = 0; col < n; ++col) {
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                err += std::norm(hv(i, col) - eig.values[col] * eig.vectors(i, col));
            }
            CHECK(std::sqrt(err) <= 1e-9 * (1.0 + frobenius_norm(h)));
        }
    }
}

TEST_CASE("seeded random unitaries are deterministic") {
    std::mt19937_64 a(42), b(42);
    CHECK(random_unitary(6, a) == random_unitary(6, b));
}
