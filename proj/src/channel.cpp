#include "factorcert/channel.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace factorcert {

namespace {

void require_channel_shapes(const QuantumChannel& t, const char* what) {
    if (t.dim == 0) throw ShapeError(std::string(what) + ": channel dimension is zero");
    if (t.kraus.empty()) throw ShapeError(std::string(what) + ": empty Kraus family");
    for (const auto& a : t.kraus) {
        if (a.rows() != t.dim || a.cols() != t.dim) {
            throw ShapeError(std::string(what) + ": Kraus operator is " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             ", channel dimension " + std::to_string(t.dim));
        }
    }
}

} // namespace

ComplexMatrix apply(const QuantumChannel& t, const ComplexMatrix& x) {
    require_channel_shapes(t, "apply");
    if (x.rows() != t.dim || x.cols() != t.dim) {
        throw ShapeError("apply: input is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", channel dimension " +
                         std::to_string(t.dim));
    }
    ComplexMatrix acc(t.dim, t.dim);
    for (const auto& a : t.kraus) acc += adjoint(a) * x * a;
    return acc;
}

ChoiMatrix choi(const QuantumChannel& t) {
    require_channel_shapes(t, "choi");
    const std::size_t n = t.dim;
    const std::size_t d = n * n;
    ChoiMatrix c;
    c.dim = n;
    c.matrix = ComplexMatrix(d, d);
    // Block (i,j) equals T(E_ij); with the adjoint-first Kraus convention
    // that block is (a^* E_ij a)[r,s] = conj(a[i,r]) a[j,s], summed over the
    // family. Assembled directly, one (i,j) block per iteration.
    const std::int64_t di = static_cast<std::int64_t>(d);
#pragma omp parallel for if (d* d* t.kraus.size() >= (std::size_t(1) << 15)) schedule(static)
    for (std::int64_t blk = 0; blk < di; ++blk) {
        const std::size_t i = std::size_t(blk) / n;
        const std::size_t j = std::size_t(blk) % n;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t s = 0; s < n; ++s) {
                Complex acc(0.0, 0.0);
                for (const auto& a : t.kraus) acc += std::conj(a(i, r)) * a(j, s);
                c.matrix(i * n + r, j * n + s) = acc;
            }
        }
    }
    return c;
}

bool is_cptp_unital(const QuantumChannel& t, double tol) {
    require_channel_shapes(t, "is_cptp_unital");
    const ComplexMatrix id = ComplexMatrix::identity(t.dim);
    ComplexMatrix sum_ad_a(t.dim, t.dim); // sum a_i^* a_i  (unital)
    ComplexMatrix sum_a_ad(t.dim, t.dim); // sum a_i a_i^*  (trace-preserving)
    for (const auto& a : t.kraus) {
        const ComplexMatrix ah = adjoint(a);
        sum_ad_a += ah * a;
        sum_a_ad += a * ah;
    }
    if (frobenius_distance(sum_ad_a, id) > tol) return false;
    if (frobenius_distance(sum_a_ad, id) > tol) return false;
    return is_psd(choi(t).matrix, tol);
}

bool validate(QuantumChannel& t, double tol) {
    t.validated = is_cptp_unital(t, tol);
    return t.validated;
}

QuantumChannel ad_channel(const ComplexMatrix& u, double tol) {
    u.require_square("ad_channel");
    if (!is_unitary(u, tol)) {
        throw InvalidCertificateError("ad_channel: matrix is not unitary at tolerance " +
                                      std::to_string(tol));
    }
    QuantumChannel t;
    t.dim = u.rows();
    t.kraus = {u};
    t.validated = true;
    return t;
}

QuantumChannel depolarizing(std::size_t k) {
    if (k == 0) throw PreconditionError("depolarizing: dimension must be >= 1");
    QuantumChannel t;
    t.dim = k;
    const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
    t.kraus.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            ComplexMatrix e(k, k);
            e(i, j) = Complex(inv_sqrt_k, 0.0);
            t.kraus.push_back(std::move(e));
        }
    }
    t.validated = true;
    return t;
}

QuantumChannel tensor_channels(const QuantumChannel& t, const QuantumChannel& s,
                               const Limits& lim) {
    require_channel_shapes(t, "tensor_channels");
    require_channel_shapes(s, "tensor_channels");
    QuantumChannel out;
    out.dim = t.dim * s.dim;
    if (out.dim > lim.max_dim) {
        throw LimitError("tensor_channels: dimension " + std::to_string(out.dim) +
                         " exceeds max-dim " + std::to_string(lim.max_dim));
    }
    out.kraus.reserve(t.kraus.size() * s.kraus.size());
    for (const auto& a : t.kraus)
        for (const auto& b : s.kraus) out.kraus.push_back(kron(a, b, lim));
    out.validated = t.validated && s.validated;
    return out;
}

QuantumChannel mixture_channel(const std::vector<Rational>& coeffs,
                               const std::vector<ComplexMatrix>& unitaries, double tol) {
    if (coeffs.size() != unitaries.size() || coeffs.empty()) {
        throw PreconditionError("mixture_channel: need matching nonempty coefficient/unitary lists");
    }
    Rational sum(0);
    for (const auto& c : coeffs) {
        if (!c.is_positive()) {
            throw InvalidCertificateError("mixture_channel: coefficients must be positive");
        }
        sum += c;
    }
    if (!sum.is_one()) {
        throw InvalidCertificateError("mixture_channel: coefficients sum to " + sum.str() +
                                      ", expected 1");
    }
    const std::size_t dim = unitaries.front().rows();
    for (const auto& u : unitaries) {
        if (u.rows() != dim || u.cols() != dim) {
            throw ShapeError("mixture_channel: unitaries have mixed dimensions");
        }
        if (!is_unitary(u, tol)) {
            throw InvalidCertificateError("mixture_channel: entry is not unitary at tolerance " +
                                          std::to_string(tol));
        }
    }
    QuantumChannel t;
    t.dim = dim;
    t.kraus.reserve(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        ComplexMatrix a = unitaries[i];
        a *= Complex(std::sqrt(coeffs[i].to_double()), 0.0);
        t.kraus.push_back(std::move(a));
    }
    t.validated = true;
    return t;
}

std::pair<std::vector<Rational>, std::vector<ComplexMatrix>> weyl_mixture(std::size_t k) {
    if (k == 0) throw PreconditionError("weyl_mixture: dimension must be >= 1");
    ComplexMatrix shift(k, k); // X: e_j -> e_{j+1 mod k}
    for (std::size_t j = 0; j < k; ++j) shift((j + 1) % k, j) = Complex(1.0, 0.0);
    ComplexMatrix phase(k, k); // Z = diag(omega^0 .. omega^{k-1})
    for (std::size_t j = 0; j < k; ++j) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k);
        phase(j, j) = Complex(std::cos(ang), std::sin(ang));
    }
    std::vector<Rational> coeffs;
    std::vector<ComplexMatrix> unitaries;
    coeffs.reserve(k * k);
    unitaries.reserve(k * k);
    ComplexMatrix xa = ComplexMatrix::identity(k);
    for (std::size_t a = 0; a < k; ++a) {
        ComplexMatrix w = xa;
        for (std::size_t b = 0; b < k; ++b) {
            coeffs.emplace_back(1, static_cast<std::int64_t>(k * k));
            unitaries.push_back(w);
            w = w * phase;
        }
        xa = xa * shift;
    }
    return {std::move(coeffs), std::move(unitaries)};
}

double choi_distance(const QuantumChannel& a, const QuantumChannel& b) {
    if (a.dim != b.dim) {
        throw ShapeError("choi_distance: channel dimensions " + std::to_string(a.dim) + " vs " +
                         std::to_string(b.dim));
    }
    return frobenius_distance(choi(a).matrix, choi(b).matrix);
}

bool channels_equal(const QuantumChannel& a, const QuantumChannel& b, double tol) {
    return choi_distance(a, b) <= tol;
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& c, std::size_t n, double cutoff) {
    c.require_square("kraus_from_choi");
    if (c.rows() != n * n) {
        throw ShapeError("kraus_from_choi: Choi matrix is " + std::to_string(c.rows()) +
                         "-dimensional, expected " + std::to_string(n * n));
    }
    // With C[(i,r),(j,s)] = sum conj(a[i,r]) a[j,s], the conjugate of C is the
    // Gram matrix of the row-major flattened Kraus operators.
    const HermitianEigensystem eig = hermitian_eigensystem(conjugate(c));
    std::vector<ComplexMatrix> out;
    for (std::size_t col = 0; col < eig.values.size(); ++col) {
        const double lambda = eig.values[col];
        if (lambda <= cutoff) continue;
        const double w = std::sqrt(lambda);
        ComplexMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < n; ++r) a(i, r) = w * eig.vectors(i * n + r, col);
        out.push_back(std::move(a));
    }
    if (out.empty()) out.push_back(ComplexMatrix(n, n));
    return out;
}

QuantumChannel channel_from_action(std::size_t n,
                                   const std::function<ComplexMatrix(const ComplexMatrix&)>& action,
                                   double kraus_cutoff) {
    ComplexMatrix c(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const ComplexMatrix y = action(ComplexMatrix::unit(n, i, j));
            if (y.rows() != n || y.cols() != n) {
                throw ShapeError("channel_from_action: action changed dimension");
            }
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) c(i * n + r, j * n + s) = y(r, s);
        }
    }
    QuantumChannel t;
    t.dim = n;
    t.kraus = kraus_from_choi(c, n, kraus_cutoff);
    return t;
}

QuantumChannel compress(const QuantumChannel& m, std::size_t n, std::size_t k,
                        double kraus_cutoff) {
    require_channel_shapes(m, "compress");
    if (n == 0 || k == 0 || m.dim != n * k) {
        throw PreconditionError("compress: channel dimension " + std::to_string(m.dim) +
                                " is not " + std::to_string(n) + "*" + std::to_string(k));
    }
    const ComplexMatrix id_k = ComplexMatrix::identity(k);
    return channel_from_action(
        n,
        [&](const ComplexMatrix& x) {
            return partial_trace_right(apply(m, kron(x, id_k)), n, k);
        },
        kraus_cutoff);
}

} // namespace factorcert
