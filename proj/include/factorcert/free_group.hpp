#ifndef FACTORCERT_FREE_GROUP_HPP
#define FACTORCERT_FREE_GROUP_HPP

#include <compare>
#include <string>
#include <vector>

#include "factorcert/channel.hpp"
#include "factorcert/complex_matrix.hpp"

namespace factorcert {

// One letter of a free-group word: generator index (1-based) and exponent ±1.
struct Letter {
    int gen = 1;
    int sign = +1;
    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

// Reduced word in a finitely generated free group. The stored letter sequence
// never contains an adjacent inverse pair, so equality of words is equality of
// group elements. Default-constructed = identity e.
class FreeWord {
  public:
    FreeWord() = default;
    static FreeWord generator(int gen, int sign = +1);
    // Cancels adjacent inverse pairs until none remain.
    static FreeWord reduce(const std::vector<Letter>& raw);

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    friend bool operator==(const FreeWord&, const FreeWord&) = default;
    friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

  private:
    std::vector<Letter> letters_;
};

FreeWord mul(const FreeWord& a, const FreeWord& b);
FreeWord inv(const FreeWord& a);

// <lambda_w delta_e, delta_e>: 1 if w = e, else 0.
int canonical_trace(const FreeWord& w);

// Text format: `g1`, `g1^-1`, juxtaposition by whitespace, `e` for identity.
FreeWord parse_word(const std::string& text);
std::string format_word(const FreeWord& w);

// Witness that u = sum_i a_i (x) lambda_{g_i} realizes a channel through
// M_n (x) LF_d with the canonical trace.
struct FreeGroupWitness {
    std::vector<ComplexMatrix> coeffs;
    std::vector<FreeWord> words;
};

struct SymbolicCheckReport {
    bool unitary = false;
    bool factorizes = false;
    double unitarity_error = 0.0; // worst Frobenius deviation among the M_w / N_w sums
    double choi_error = 0.0;      // Choi distance between induced and target channel
    std::string offending_word;   // word whose coefficient sum deviates most (empty if unitary)
    bool verified() const { return unitary && factorizes; }
};

// Checks u*u = uu* = 1 symbolically (word bookkeeping exact, matrix sums to
// tol) and that the induced channel x -> sum_{g_i = g_j} a_i* x a_j matches t.
SymbolicCheckReport symbolic_factorization_check(const std::vector<ComplexMatrix>& a,
                                                 const std::vector<FreeWord>& g,
                                                 const QuantumChannel& t, double tol);

} // namespace factorcert
#endif
