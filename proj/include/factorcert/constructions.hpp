#ifndef FACTORCERT_CONSTRUCTIONS_HPP
#define FACTORCERT_CONSTRUCTIONS_HPP

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "factorcert/certificates.hpp"
#include "factorcert/free_group.hpp"

namespace factorcert {

// One block-diagonal run inside a target summand: source summand index,
// repeated `multiplicity` times (each copy entering as kron(x, 1) slotwise).
struct LayoutEntry {
    std::size_t source_index = 0;
    long long multiplicity = 1;
};

// Unital trace-preserving *-homomorphism ⊕_i M_{k_i} -> ⊕_j M_{k'_j}, given by
// a per-target-summand layout of repeated source summands.
struct BlockEmbedding {
    DirectSumSpace source;
    DirectSumSpace target;
    std::vector<std::vector<LayoutEntry>> layout; // one list per target summand
};

// Structural checks: layout/dimension bookkeeping and exact (rational)
// trace preservation. Throws InvalidCertificateError on violation.
void validate_embedding(const BlockEmbedding& emb);

// id_n (x) emb on per-summand elements of M_n (x) M_{k_i}; n = 1 gives the plain
// embedding. Dense output, one matrix per target summand.
std::vector<ComplexMatrix> apply_embedding(const BlockEmbedding& emb, std::size_t n,
                                           const std::vector<ComplexMatrix>& blocks,
                                           const Limits& lim = {});

using AnyFactorizationCert = std::variant<MatrixFactorizationCert, DirectSumFactorizationCert>;

// Transports a factorization certificate along an embedding of its ancilla
// space; the induced channel is preserved (checked, not assumed). Output kind
// follows the target space: single summand -> matrix certificate (structured
// when all layout entries share one source size), otherwise direct-sum.
AnyFactorizationCert pushforward(const AnyFactorizationCert& cert, const BlockEmbedding& emb,
                                 double tol, const Limits& lim = {});

// ⊕_i M_K -> M_{KL}: repeats summand i exactly l_i times, where the weights are
// l_i / L in lowest common terms. Requires all sizes equal.
BlockEmbedding embed_equal_blocks(const DirectSumSpace& space, const Limits& lim = {});

// ⊕_i M_{k_i} -> ⊕_i M_K with K = lcm(k_1..k_d); summand i repeated K/k_i times
// inside its own target summand; weights unchanged.
BlockEmbedding equalize_sizes(const DirectSumSpace& space, const Limits& lim = {});

// Turns a verified mixture T (x) S_k = sum c_i ad(u_i) into an exact
// factorization of T through M_n (x) M_{kL}, structured as one block per term
// with multiplicity C_i where c_i = C_i / L in lowest common terms.
MatrixFactorizationCert lift_rational_mixture(const RationalMixtureCert& cert, double tol,
                                              const Limits& lim = {});

// Collapses a direct-sum factorization into a single-matrix-algebra one:
// equalize sizes to K = lcm(k_i), then embed into M_{KL}; ancilla K*L.
MatrixFactorizationCert collapse_direct_sum(const DirectSumFactorizationCert& cert, double tol,
                                            const Limits& lim = {});

// d self-adjoint unitaries in M_{2^d}, pairwise anticommuting, tau(s_i s_j) =
// delta_ij: s_i = Z (x) ... (x) Z (x) X (x) 1 (x) ... (x) 1.
std::vector<ComplexMatrix> spin_unitaries(std::size_t d, const Limits& lim = {});

// For self-adjoint, pairwise commuting a_i with sum a_i^2 = 1: certificate with
// u = sum a_i (x) s_i through M_n (x) M_{2^d}, inducing x -> sum a_i x a_i.
MatrixFactorizationCert commuting_kraus_factorization(const std::vector<ComplexMatrix>& a,
                                                      double tol, const Limits& lim = {});

// Named example channels with every certificate this toolkit can build for them.
struct ZooBundle {
    std::string name;
    QuantumChannel channel;
    std::optional<RationalMixtureCert> mixture;
    std::optional<MatrixFactorizationCert> lift;  // lifted mixture
    std::optional<MatrixFactorizationCert> spin;  // commuting-Kraus construction
    std::optional<FreeGroupWitness> fg_witness;
};

// Concrete names: dephasing(d), depolarizing(k), paper-m2-example.
std::vector<std::string> zoo_names();
ZooBundle zoo(const std::string& name, const Limits& lim = {});

} // namespace factorcert
#endif
