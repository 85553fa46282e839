#include "factorcert/certificates.hpp"

#include <cstdint>
#include <string>

#include "factorcert/kernels.hpp"
#include "factorcert/linalg.hpp"

namespace factorcert {

long long BlockRepeatedUnitary::slot_count() const {
    long long total = 0;
    for (const auto& b : blocks) {
        if (b.multiplicity < 1) {
            throw InvalidCertificateError("block-repeated unitary: multiplicity must be >= 1");
        }
        total += b.multiplicity;
    }
    return total;
}

void require_valid(const DirectSumSpace& space) {
    if (space.sizes.empty() || space.sizes.size() != space.weights.size()) {
        throw InvalidCertificateError("direct-sum space: need matching nonempty sizes/weights");
    }
    Rational sum(0);
    for (std::size_t i = 0; i < space.sizes.size(); ++i) {
        if (space.sizes[i] < 1) {
            throw InvalidCertificateError("direct-sum space: summand sizes must be >= 1");
        }
        if (!space.weights[i].is_positive()) {
            throw InvalidCertificateError("direct-sum space: weights must be positive");
        }
        sum += space.weights[i];
    }
    if (!sum.is_one()) {
        throw InvalidCertificateError("direct-sum space: weights sum to " + sum.str() +
                                      ", expected 1");
    }
}

void require_valid_shape(const RationalMixtureCert& cert) {
    if (cert.n == 0 || cert.k == 0) {
        throw InvalidCertificateError("mixture certificate: n and k must be >= 1");
    }
    if (cert.terms.empty()) throw InvalidCertificateError("mixture certificate: no terms");
    const std::size_t dim = cert.n * cert.k;
    Rational sum(0);
    for (const auto& term : cert.terms) {
        if (term.unitary.rows() != dim || term.unitary.cols() != dim) {
            throw InvalidCertificateError("mixture certificate: term is " +
                                          std::to_string(term.unitary.rows()) + "x" +
                                          std::to_string(term.unitary.cols()) + ", expected " +
                                          std::to_string(dim));
        }
        if (!term.coeff.is_positive()) {
            throw InvalidCertificateError("mixture certificate: coefficients must be positive");
        }
        sum += term.coeff;
    }
    if (!sum.is_one()) {
        throw InvalidCertificateError("mixture certificate: coefficients sum to " + sum.str() +
                                      ", expected 1");
    }
}

void require_valid_shape(const MatrixFactorizationCert& cert) {
    if (cert.n == 0 || cert.ancilla_dim == 0) {
        throw InvalidCertificateError("matrix certificate: n and ancilla dimension must be >= 1");
    }
    if (const auto* dense = std::get_if<ComplexMatrix>(&cert.unitary)) {
        if (dense->rows() != cert.n * cert.ancilla_dim ||
            dense->cols() != cert.n * cert.ancilla_dim) {
            throw InvalidCertificateError(
                "matrix certificate: unitary is " + std::to_string(dense->rows()) + "x" +
                std::to_string(dense->cols()) + ", expected " +
                std::to_string(cert.n * cert.ancilla_dim));
        }
        return;
    }
    const auto& br = std::get<BlockRepeatedUnitary>(cert.unitary);
    if (br.base_k == 0 || br.blocks.empty()) {
        throw InvalidCertificateError("matrix certificate: structured unitary needs base_k >= 1 "
                                      "and at least one block");
    }
    const std::size_t block_dim = cert.n * br.base_k;
    for (const auto& b : br.blocks) {
        if (b.unitary.rows() != block_dim || b.unitary.cols() != block_dim) {
            throw InvalidCertificateError("matrix certificate: block is " +
                                          std::to_string(b.unitary.rows()) + "x" +
                                          std::to_string(b.unitary.cols()) + ", expected " +
                                          std::to_string(block_dim));
        }
    }
    const long long slots = br.slot_count();
    if (br.base_k * static_cast<unsigned long long>(slots) != cert.ancilla_dim) {
        throw InvalidCertificateError("matrix certificate: ancilla dimension " +
                                      std::to_string(cert.ancilla_dim) + " != base_k*L = " +
                                      std::to_string(br.base_k) + "*" + std::to_string(slots));
    }
}

void require_valid_shape(const DirectSumFactorizationCert& cert) {
    if (cert.n == 0) throw InvalidCertificateError("direct-sum certificate: n must be >= 1");
    require_valid(cert.space);
    if (cert.blocks.size() != cert.space.sizes.size()) {
        throw InvalidCertificateError("direct-sum certificate: " +
                                      std::to_string(cert.blocks.size()) + " blocks for " +
                                      std::to_string(cert.space.sizes.size()) + " summands");
    }
    for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
        const std::size_t dim = cert.n * cert.space.sizes[i];
        if (cert.blocks[i].rows() != dim || cert.blocks[i].cols() != dim) {
            throw InvalidCertificateError("direct-sum certificate: block " + std::to_string(i) +
                                          " is " + std::to_string(cert.blocks[i].rows()) + "x" +
                                          std::to_string(cert.blocks[i].cols()) + ", expected " +
                                          std::to_string(dim));
        }
    }
}

bool cert_unitary(const MatrixFactorizationCert& cert, double tol) {
    if (const auto* dense = std::get_if<ComplexMatrix>(&cert.unitary)) {
        return is_unitary(*dense, tol);
    }
    for (const auto& b : std::get<BlockRepeatedUnitary>(cert.unitary).blocks) {
        if (!is_unitary(b.unitary, tol)) return false;
    }
    return true;
}

bool cert_unitary(const DirectSumFactorizationCert& cert, double tol) {
    for (const auto& b : cert.blocks) {
        if (!is_unitary(b, tol)) return false;
    }
    return true;
}

ComplexMatrix materialize(const BlockRepeatedUnitary& u, const Limits& lim) {
    if (u.base_k == 0 || u.blocks.empty()) {
        throw InvalidCertificateError("materialize: structured unitary needs base_k >= 1 "
                                      "and at least one block");
    }
    const std::size_t m = u.blocks.front().unitary.rows(); // n*base_k
    const long long slots = u.slot_count();
    const unsigned long long total = static_cast<unsigned long long>(m) * slots;
    if (total > lim.max_dim) {
        throw LimitError("materialize: dense dimension " + std::to_string(total) +
                         " exceeds max-dim " + std::to_string(lim.max_dim));
    }
    const std::size_t big = static_cast<std::size_t>(total);
    const std::size_t sl = static_cast<std::size_t>(slots);
    ComplexMatrix out(big, big);
    std::size_t p = 0;
    for (const auto& b : u.blocks) {
        b.unitary.require_square("materialize");
        if (b.unitary.rows() != m) {
            throw InvalidCertificateError("materialize: blocks have mixed dimensions");
        }
        for (long long rep = 0; rep < b.multiplicity; ++rep, ++p) {
            // kron(u, E_pp): entry (r*L+p, s*L+p) = u(r,s), slot factor innermost.
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t s = 0; s < m; ++s) out(r * sl + p, s * sl + p) = b.unitary(r, s);
        }
    }
    return out;
}

ComplexMatrix materialize(const FactorizationUnitary& u, const Limits& lim) {
    if (const auto* dense = std::get_if<ComplexMatrix>(&u)) return *dense;
    return materialize(std::get<BlockRepeatedUnitary>(u), lim);
}

Complex tau_alpha(const DirectSumSpace& space, const std::vector<ComplexMatrix>& element) {
    require_valid(space);
    if (element.size() != space.sizes.size()) {
        throw ShapeError("tau_alpha: element has " + std::to_string(element.size()) +
                         " blocks for " + std::to_string(space.sizes.size()) + " summands");
    }
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < element.size(); ++i) {
        if (element[i].rows() != space.sizes[i] || element[i].cols() != space.sizes[i]) {
            throw ShapeError("tau_alpha: block " + std::to_string(i) + " is " +
                             std::to_string(element[i].rows()) + "x" +
                             std::to_string(element[i].cols()) + ", expected " +
                             std::to_string(space.sizes[i]));
        }
        acc += space.weights[i].to_double() * normalized_trace(element[i]);
    }
    return acc;
}

namespace {

// (id_n (x) tau_k)(u*(x (x) 1_k)u), weighted; one term of a factorization action.
ComplexMatrix compressed_conjugation(const ComplexMatrix& u, const ComplexMatrix& x,
                                     std::size_t n, std::size_t k, double weight) {
    ComplexMatrix big = adjoint(u) * kron(x, ComplexMatrix::identity(k)) * u;
    ComplexMatrix small = partial_trace_right(big, n, k);
    small *= Complex(weight, 0.0);
    return small;
}

} // namespace

ComplexMatrix factorization_action(const MatrixFactorizationCert& cert, const ComplexMatrix& x) {
    require_valid_shape(cert);
    if (x.rows() != cert.n || x.cols() != cert.n) {
        throw ShapeError("factorization action: input is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", expected " + std::to_string(cert.n));
    }
    if (const auto* dense = std::get_if<ComplexMatrix>(&cert.unitary)) {
        return compressed_conjugation(*dense, x, cert.n, cert.ancilla_dim, 1.0);
    }
    const auto& br = std::get<BlockRepeatedUnitary>(cert.unitary);
    const long long slots = br.slot_count();
    ComplexMatrix acc(cert.n, cert.n);
    for (const auto& b : br.blocks) {
        const double weight = Rational(b.multiplicity, slots).to_double();
        acc += compressed_conjugation(b.unitary, x, cert.n, br.base_k, weight);
    }
    return acc;
}

ComplexMatrix factorization_action(const DirectSumFactorizationCert& cert, const ComplexMatrix& x) {
    require_valid_shape(cert);
    if (x.rows() != cert.n || x.cols() != cert.n) {
        throw ShapeError("factorization action: input is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", expected " + std::to_string(cert.n));
    }
    ComplexMatrix acc(cert.n, cert.n);
    for (std::size_t i = 0; i < cert.blocks.size(); ++i) {
        acc += compressed_conjugation(cert.blocks[i], x, cert.n, cert.space.sizes[i],
                                      cert.space.weights[i].to_double());
    }
    return acc;
}

QuantumChannel induced_channel_matrix(const MatrixFactorizationCert& cert, double tol) {
    require_valid_shape(cert);
    if (!cert_unitary(cert, tol)) {
        throw InvalidCertificateError("matrix certificate: unitary data fails unitarity at "
                                      "tolerance " + std::to_string(tol));
    }
    QuantumChannel t = channel_from_action(
        cert.n, [&](const ComplexMatrix& x) { return factorization_action(cert, x); });
    t.validated = true;
    return t;
}

QuantumChannel induced_channel_direct_sum(const DirectSumFactorizationCert& cert, double tol) {
    require_valid_shape(cert);
    if (!cert_unitary(cert, tol)) {
        throw InvalidCertificateError("direct-sum certificate: a block fails unitarity at "
                                      "tolerance " + std::to_string(tol));
    }
    QuantumChannel t = channel_from_action(
        cert.n, [&](const ComplexMatrix& x) { return factorization_action(cert, x); });
    t.validated = true;
    return t;
}

FactorizationReport verify_matrix_factorization(const MatrixFactorizationCert& cert,
                                                const QuantumChannel& t, double tol) {
    require_valid_shape(cert);
    if (t.dim != cert.n) {
        throw ShapeError("verify: channel dimension " + std::to_string(t.dim) +
                         " != certificate n = " + std::to_string(cert.n));
    }
    FactorizationReport report;
    report.unitary = cert_unitary(cert, tol);
    // The n^2 unit checks are independent; each (p,q) error slot is owned by
    // one thread, argmax taken serially for a deterministic report.
    const std::size_t n = cert.n;
    std::vector<double> errors(n * n, 0.0);
    const std::int64_t units = static_cast<std::int64_t>(n * n);
#pragma omp parallel for if (units > 1 && cert.ancilla_dim >= 8) schedule(static)
    for (std::int64_t pq = 0; pq < units; ++pq) {
        const std::size_t p = static_cast<std::size_t>(pq) / n;
        const std::size_t q = static_cast<std::size_t>(pq) % n;
        const ComplexMatrix unit = ComplexMatrix::unit(n, p, q);
        errors[static_cast<std::size_t>(pq)] =
            frobenius_distance(apply(t, unit), factorization_action(cert, unit));
    }
    for (std::size_t pq = 0; pq < errors.size(); ++pq) {
        if (errors[pq] > report.max_error) {
            report.max_error = errors[pq];
            report.failing_row = pq / n;
            report.failing_col = pq % n;
        }
    }
    report.verdict = report.unitary && report.max_error <= tol;
    return report;
}

MixtureVerification verify_mixture_cert(const RationalMixtureCert& cert, double tol) {
    require_valid_shape(cert);
    std::vector<Rational> coeffs;
    std::vector<ComplexMatrix> unitaries;
    coeffs.reserve(cert.terms.size());
    unitaries.reserve(cert.terms.size());
    for (const auto& term : cert.terms) {
        coeffs.push_back(term.coeff);
        unitaries.push_back(term.unitary);
    }
    const QuantumChannel mixture = mixture_channel(coeffs, unitaries, tol);
    MixtureVerification out;
    out.recovered = compress(mixture, cert.n, cert.k);
    const QuantumChannel rebuilt =
        tensor_channels(out.recovered, depolarizing(cert.k), Limits{/*max_dim=*/cert.n * cert.k});
    out.choi_error = choi_distance(mixture, rebuilt);
    out.verdict = out.choi_error <= tol;
    return out;
}

DirectSumReport verify_direct_sum_factorization(const DirectSumFactorizationCert& cert,
                                                const QuantumChannel& t, double tol) {
    require_valid_shape(cert);
    if (t.dim != cert.n) {
        throw ShapeError("verify: channel dimension " + std::to_string(t.dim) +
                         " != certificate n = " + std::to_string(cert.n));
    }
    DirectSumReport report;
    report.unitary = cert_unitary(cert, tol);
    const QuantumChannel induced = channel_from_action(
        cert.n, [&](const ComplexMatrix& x) { return factorization_action(cert, x); });
    report.choi_error = choi_distance(t, induced);
    report.verdict = report.unitary && report.choi_error <= tol;
    return report;
}

} // namespace factorcert
