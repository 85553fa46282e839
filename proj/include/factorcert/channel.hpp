#ifndef FACTORCERT_CHANNEL_HPP
#define FACTORCERT_CHANNEL_HPP

#include <functional>
#include <utility>
#include <vector>

#include "factorcert/linalg.hpp"
#include "factorcert/rational.hpp"

namespace factorcert {

// Quantum channel in Kraus form. The action is
//
//     T(x) = sum_i a_i^* x a_i
//
// with the STARS ON THE LEFT. Most of the literature writes a_i x a_i^*;
// this toolkit keeps the adjoint-first convention so that conjugations read
// ad(u)(x) = u^* x u and dephasing has Kraus family {E_11, E_22} verbatim.
struct QuantumChannel {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> kraus;
    // True once the unital + trace-preserving sums have been checked.
    bool validated = false;
};

struct ChoiMatrix {
    std::size_t dim = 0;
    ComplexMatrix matrix; // dim^2 x dim^2, block (i,j) = T(E_ij)
};

ComplexMatrix apply(const QuantumChannel& t, const ComplexMatrix& x);

// sum_ij E_ij (x) T(E_ij); PSD iff T is completely positive.
ChoiMatrix choi(const QuantumChannel& t);

// Choi PSD at tol, and both Kraus sums within tol of the identity.
bool is_cptp_unital(const QuantumChannel& t, double tol);

// Checks is_cptp_unital and sets the validated flag accordingly.
bool validate(QuantumChannel& t, double tol);

// ad(u): x -> u^* x u.
QuantumChannel ad_channel(const ComplexMatrix& u, double tol = 1e-9);

// Completely depolarizing channel S_k: x -> tau_k(x) 1_k, with Kraus family
// {E_ij / sqrt(k)}.
QuantumChannel depolarizing(std::size_t k);

// Kraus family {kron(a_i, b_j)}; realizes T (x) S on M_{nm}.
QuantumChannel tensor_channels(const QuantumChannel& t, const QuantumChannel& s,
                               const Limits& lim = Limits{});

// sum_i c_i ad(u_i) with exact rational coefficients summing to 1.
QuantumChannel mixture_channel(const std::vector<Rational>& coeffs,
                               const std::vector<ComplexMatrix>& unitaries, double tol = 1e-9);

// Discrete Weyl witness for S_k in conv(Aut(M_k)): coefficients 1/k^2 on
// W_ab = X^a Z^b for the cyclic shift X and the phase matrix Z.
std::pair<std::vector<Rational>, std::vector<ComplexMatrix>> weyl_mixture(std::size_t k);

// Choi-distance equality; the Choi matrix is a complete invariant.
bool channels_equal(const QuantumChannel& a, const QuantumChannel& b, double tol);
double choi_distance(const QuantumChannel& a, const QuantumChannel& b);

// Builds a channel from an arbitrary linear action by assembling its Choi
// matrix on the matrix units and extracting a Kraus family from the PSD
// square root (spectral cutoff kraus_cutoff).
QuantumChannel channel_from_action(std::size_t n,
                                   const std::function<ComplexMatrix(const ComplexMatrix&)>& action,
                                   double kraus_cutoff = 1e-9);

// Kraus family of the CP map with the given Choi matrix.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& c, std::size_t n,
                                           double cutoff = 1e-9);

// x -> (id_n (x) tau_k)( m(x (x) 1_k) ): the left tensor factor of a channel
// on M_{n*k}, returned in a Kraus realization extracted from its Choi matrix.
QuantumChannel compress(const QuantumChannel& m, std::size_t n, std::size_t k,
                        double kraus_cutoff = 1e-9);

} // namespace factorcert

#endif
