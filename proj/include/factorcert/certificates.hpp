#ifndef FACTORCERT_CERTIFICATES_HPP
#define FACTORCERT_CERTIFICATES_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "factorcert/channel.hpp"
#include "factorcert/complex_matrix.hpp"
#include "factorcert/errors.hpp"
#include "factorcert/rational.hpp"

namespace factorcert {

// --- certificate kinds -------------------------------------------------------

struct MixtureTerm {
    Rational coeff;
    ComplexMatrix unitary; // dim n*k
};

// Witness that T (x) S_k is the convex combination sum c_i ad(u_i).
struct RationalMixtureCert {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<MixtureTerm> terms;
};

struct RepeatedBlock {
    ComplexMatrix unitary; // dim n*base_k
    long long multiplicity = 1;
};

// U = sum_p u_{i(p)} (x) E_pp over L = sum of multiplicities slots, with the
// slot factor innermost; total ancilla dimension base_k * L. Lets lifted
// certificates stay verifiable without materializing U.
struct BlockRepeatedUnitary {
    std::size_t base_k = 0;
    std::vector<RepeatedBlock> blocks;
    long long slot_count() const;
};

using FactorizationUnitary = std::variant<ComplexMatrix, BlockRepeatedUnitary>;

// Witness of an exact factorization through M_n (x) M_k: x -> (id (x) tau_k)(u*(x (x) 1_k)u).
struct MatrixFactorizationCert {
    std::size_t n = 0;
    std::size_t ancilla_dim = 0;
    FactorizationUnitary unitary;
};

// Finite direct sum of matrix algebras with the weighted trace tau_alpha.
struct DirectSumSpace {
    std::vector<std::size_t> sizes;   // k_1..k_d
    std::vector<Rational> weights;    // alpha_1..alpha_d, positive, sum 1
};

// Witness of an exact factorization through M_n (x) (⊕_i M_{k_i}, tau_alpha).
struct DirectSumFactorizationCert {
    std::size_t n = 0;
    DirectSumSpace space;
    std::vector<ComplexMatrix> blocks; // i-th of dim n*k_i
};

// Structural invariant checks; throw InvalidCertificateError on violation.
void require_valid(const DirectSumSpace& space);
void require_valid_shape(const RationalMixtureCert& cert);
void require_valid_shape(const MatrixFactorizationCert& cert);
void require_valid_shape(const DirectSumFactorizationCert& cert);

// Blockwise unitarity of the certificate's unitary data at tol.
bool cert_unitary(const MatrixFactorizationCert& cert, double tol);
bool cert_unitary(const DirectSumFactorizationCert& cert, double tol);

// Dense U (slot innermost) for a structured unitary, under the dimension bound.
ComplexMatrix materialize(const BlockRepeatedUnitary& u, const Limits& lim = {});
ComplexMatrix materialize(const FactorizationUnitary& u, const Limits& lim = {});

// --- traces and induced channels ---------------------------------------------

// tau_alpha(x_1..x_d) = sum_i alpha_i tau_{k_i}(x_i).
Complex tau_alpha(const DirectSumSpace& space, const std::vector<ComplexMatrix>& element);

// Action of the factorization on one input, computed blockwise for the
// structured form, without materializing U.
ComplexMatrix factorization_action(const MatrixFactorizationCert& cert, const ComplexMatrix& x);
ComplexMatrix factorization_action(const DirectSumFactorizationCert& cert, const ComplexMatrix& x);

// Induced channels in Kraus form (Choi-extracted). Throw InvalidCertificateError
// when unitarity fails at tol.
QuantumChannel induced_channel_matrix(const MatrixFactorizationCert& cert, double tol = 1e-9);
QuantumChannel induced_channel_direct_sum(const DirectSumFactorizationCert& cert,
                                          double tol = 1e-9);

// --- verifiers ----------------------------------------------------------------

struct FactorizationReport {
    bool unitary = false;
    bool verdict = false;
    double max_error = 0.0;      // worst matrix-unit deviation ||t(E_pq) - induced(E_pq)||_F
    std::size_t failing_row = 0; // (p,q) of the worst unit
    std::size_t failing_col = 0;
};

struct DirectSumReport {
    bool unitary = false;
    bool verdict = false;
    double choi_error = 0.0;
};

struct MixtureVerification {
    bool verdict = false;
    QuantumChannel recovered;    // candidate T with mixture = T (x) S_k
    double choi_error = 0.0;     // distance between mixture and recovered (x) S_k
};

// Exhaustive check on the n^2 matrix units (complete by linearity).
FactorizationReport verify_matrix_factorization(const MatrixFactorizationCert& cert,
                                                const QuantumChannel& t, double tol);

MixtureVerification verify_mixture_cert(const RationalMixtureCert& cert, double tol);

DirectSumReport verify_direct_sum_factorization(const DirectSumFactorizationCert& cert,
                                                const QuantumChannel& t, double tol);

} // namespace factorcert
#endif
