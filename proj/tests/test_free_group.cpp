#include <doctest.h>

#include <random>

#include "factorcert/free_group.hpp"
#include "test_support.hpp"

using namespace factorcert;

TEST_CASE("reduce cancels adjacent inverse pairs") {
    const FreeWord g1 = FreeWord::generator(1);
    CHECK(FreeWord::reduce({{1, +1}, {2, +1}, {2, -1}}) == g1);
    CHECK(FreeWord::reduce({{1, +1}, {1, -1}}) == FreeWord());
    CHECK(FreeWord::reduce({{1, +1}, {1, +1}}).length() == 2);

    std::mt19937_64 rng(401);
    for (int it = 0; it < 200; ++it) {
        const std::vector<Letter> raw = test::random_letters(rng, 1 + rng() % 14, 3);
        const FreeWord w = FreeWord::reduce(raw);
        // Cancellation order never matters; compare against random-order cancellation.
        CHECK(w.letters() == test::brute_reduce(raw, rng));
        CHECK(FreeWord::reduce(w.letters()) == w);
        CHECK(mul(w, inv(w)) == FreeWord());
    }
}

TEST_CASE("generator indices are 1-based") {
    CHECK(FreeWord::generator(1).length() == 1);
    CHECK(FreeWord::generator(7, -1).letters()[0].sign == -1);
    CHECK_THROWS_AS(FreeWord::generator(0), PreconditionError);
    CHECK_THROWS_AS(FreeWord::generator(-2), PreconditionError);
}

TEST_CASE("group operations") {
    std::mt19937_64 rng(402);
    for (int it = 0; it < 100; ++it) {
        const FreeWord a = FreeWord::reduce(test::random_letters(rng, rng() % 8, 3));
        const FreeWord b = FreeWord::reduce(test::random_letters(rng, rng() % 8, 3));
        const FreeWord c = FreeWord::reduce(test::random_letters(rng, rng() % 8, 3));
        CHECK(mul(a, inv(a)) == FreeWord());
        CHECK(inv(inv(a)) == a);
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, FreeWord()) == a);
    }
}

TEST_CASE("canonical_trace is the indicator of the identity") {
    CHECK(canonical_trace(FreeWord()) == 1);
    CHECK(canonical_trace(FreeWord::generator(1)) == 0);
    const FreeWord g1 = FreeWord::generator(1);
    const FreeWord g2 = FreeWord::generator(2);
    CHECK(canonical_trace(mul(mul(g1, g2), mul(inv(g1), inv(g2)))) == 0);
    // Orthonormality of distinct generators under the trace inner product.
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            const int want = (i == j) ? 1 : 0;
            CHECK(canonical_trace(mul(inv(FreeWord::generator(i)), FreeWord::generator(j))) ==
                  want);
        }
    }
}

TEST_CASE("word text format") {
    CHECK(parse_word("g1") == FreeWord::generator(1));
    CHECK(parse_word("g1^-1") == FreeWord::generator(1, -1));
    CHECK(parse_word("g1 g1^-1 g2") == FreeWord::generator(2));
    CHECK(parse_word("e") == FreeWord());
    CHECK(format_word(FreeWord()) == "e");
    CHECK(format_word(mul(FreeWord::generator(2), FreeWord::generator(1, -1))) == "g2 g1^-1");

    std::mt19937_64 rng(403);
    for (int it = 0; it < 100; ++it) {
        const FreeWord w = FreeWord::reduce(test::random_letters(rng, rng() % 10, 4));
        CHECK(parse_word(format_word(w)) == w);
    }

    CHECK_THROWS_AS(parse_word("g0"), ParseError);
    CHECK_THROWS_AS(parse_word("g"), ParseError);
    CHECK_THROWS_AS(parse_word("x1"), ParseError);
    CHECK_THROWS_AS(parse_word("g1^2"), ParseError);
    CHECK_THROWS_AS(parse_word(""), ParseError);
}

TEST_CASE("symbolic check verifies the diagonal-unit witness") {
    for (std::size_t d = 2; d <= 5; ++d) {
        std::vector<ComplexMatrix> a;
        std::vector<FreeWord> g;
        for (std::size_t i = 0; i < d; ++i) {
            a.push_back(ComplexMatrix::unit(d, i, i));
            g.push_back(FreeWord::generator(static_cast<int>(i) + 1));
        }
        const SymbolicCheckReport rep =
            symbolic_factorization_check(a, g, test::dephasing_channel(d), 1e-9);
        CHECK(rep.unitary);
        CHECK(rep.factorizes);
        CHECK(rep.verified());
        CHECK(rep.unitarity_error <= 1e-12);
        CHECK(rep.choi_error <= 1e-12);
        CHECK(rep.offending_word.empty());
    }
}

TEST_CASE("symbolic check separates unitarity from factorization") {
    // Repeating one group element collapses the induced channel to a conjugation.
    const std::vector<ComplexMatrix> a = {ComplexMatrix::unit(2, 0, 0),
                                          ComplexMatrix::unit(2, 1, 1)};
    const std::vector<FreeWord> g = {FreeWord::generator(1), FreeWord::generator(1)};

    const SymbolicCheckReport vs_dephasing =
        symbolic_factorization_check(a, g, test::dephasing_channel(2), 1e-9);
    CHECK(vs_dephasing.unitary);
    CHECK(!vs_dephasing.factorizes);
    CHECK(vs_dephasing.choi_error > 1.0);

    const SymbolicCheckReport vs_identity =
        symbolic_factorization_check(a, g, test::identity_channel(2), 1e-9);
    CHECK(vs_identity.verified());
}

TEST_CASE("symbolic check reports the word that breaks unitarity") {
    const std::vector<ComplexMatrix> a = {ComplexMatrix::unit(2, 0, 0)};
    const std::vector<FreeWord> g = {FreeWord::generator(1)};
    const SymbolicCheckReport rep =
        symbolic_factorization_check(a, g, test::identity_channel(2), 1e-9);
    CHECK(!rep.unitary);
    CHECK(!rep.offending_word.empty());
    CHECK(rep.unitarity_error > 0.5);
}

TEST_CASE("symbolic check rejects malformed witnesses") {
    const QuantumChannel deph = test::dephasing_channel(2);
    CHECK_THROWS_AS(symbolic_factorization_check({}, {}, deph, 1e-9), ShapeError);
    CHECK_THROWS_AS(symbolic_factorization_check({ComplexMatrix::identity(2)},
                                                 {FreeWord::generator(1), FreeWord::generator(2)},
                                                 deph, 1e-9),
                    ShapeError);
    CHECK_THROWS_AS(symbolic_factorization_check({ComplexMatrix::identity(3)},
                                                 {FreeWord::generator(1)}, deph, 1e-9),
                    ShapeError);
}
