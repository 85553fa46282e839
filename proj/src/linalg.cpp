#include "factorcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "factorcert/kernels.hpp"

namespace factorcert {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const Limits& lim) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if ((b.rows() != 0 && rows / b.rows() != a.rows()) || rows > lim.max_dim ||
        (b.cols() != 0 && cols / b.cols() != a.cols()) || cols > lim.max_dim) {
        throw LimitError("kron: result dimension " + std::to_string(a.rows()) + "*" +
                         std::to_string(b.rows()) + " exceeds max-dim " +
                         std::to_string(lim.max_dim));
    }
    ComplexMatrix out(rows, cols);
    kernels::kron(a.data(), a.rows(), a.cols(), b.data(), b.rows(), b.cols(), out.data());
    return out;
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
    std::size_t total = 0;
    for (const auto& b : blocks) {
        b.require_square("direct_sum");
        total += b.rows();
    }
    ComplexMatrix out(total, total);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return out;
}

ComplexMatrix direct_sum(std::initializer_list<ComplexMatrix> blocks) {
    std::vector<ComplexMatrix> v(blocks);
    return direct_sum(std::span<const ComplexMatrix>(v));
}

ComplexMatrix block_repeat(const ComplexMatrix& a, std::size_t m, const Limits& lim) {
    a.require_square("block_repeat");
    if (m == 0) throw PreconditionError("block_repeat: multiplicity must be >= 1");
    return kron(ComplexMatrix::identity(m), a, lim);
}

Complex normalized_trace(const ComplexMatrix& a) {
    a.require_square("normalized_trace");
    return trace(a) / Complex(static_cast<double>(a.rows()), 0.0);
}

ComplexMatrix partial_trace_right(const ComplexMatrix& a, std::size_t n, std::size_t k) {
    a.require_square("partial_trace_right");
    if (n * k != a.rows() || k == 0) {
        throw ShapeError("partial_trace_right: dimension " + std::to_string(a.rows()) +
                         " is not " + std::to_string(n) + "*" + std::to_string(k));
    }
    ComplexMatrix out(n, n);
    kernels::partial_trace_right(a.data(), n, k, out.data());
    return out;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    a.require_square("is_unitary");
    const ComplexMatrix id = ComplexMatrix::identity(a.rows());
    const ComplexMatrix ah = adjoint(a);
    return frobenius_distance(ah * a, id) <= tol && frobenius_distance(a * ah, id) <= tol;
}

bool is_psd(const ComplexMatrix& a, double tol) {
    a.require_square("is_psd");
    const std::size_t n = a.rows();
    if (frobenius_distance(a, adjoint(a)) > tol) return false;
    // Work on the Hermitian part with the +tol shift; a clean pivot sweep
    // then certifies spectrum >= -tol.
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
        }
        h(i, i) += Complex(tol, 0.0);
    }
    // In-place lower Cholesky; fails on a non-positive pivot.
    for (std::size_t j = 0; j < n; ++j) {
        double d = h(j, j).real();
        for (std::size_t p = 0; p < j; ++p) d -= std::norm(h(j, p));
        if (!(d > 0.0)) return false;
        const double ljj = std::sqrt(d);
        h(j, j) = Complex(ljj, 0.0);
        for (std::size_t i = j + 1; i < n; ++i) {
            Complex s = h(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= h(i, p) * std::conj(h(j, p));
            h(i, j) = s / ljj;
        }
    }
    return true;
}

HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a) {
    a.require_square("hermitian_eigensystem");
    const std::size_t n = a.rows();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto offdiag = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += std::norm(h(i, j));
        return s;
    };

    const double scale = std::max(1.0, frobenius_norm(h));
    const double stop = (1e-28) * scale * scale;
    for (int sweep = 0; sweep < 60 && offdiag() > stop; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = h(p, q);
                if (std::abs(apq) == 0.0) continue;
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                // Unitary 2x2 rotation annihilating h(p,q): phase out apq,
                // then a real Jacobi rotation.
                const double absapq = std::abs(apq);
                const Complex phase = apq / absapq;
                const double theta = (aqq - app) / (2.0 * absapq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex sp = s * phase;
                // Columns p and q of H (acting on the right by the rotation).
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex hip = h(i, p);
                    const Complex hiq = h(i, q);
                    h(i, p) = c * hip - std::conj(sp) * hiq;
                    h(i, q) = sp * hip + c * hiq;
                }
                // Rows p and q (acting on the left by the adjoint rotation).
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex hpj = h(p, j);
                    const Complex hqj = h(q, j);
                    h(p, j) = c * hpj - sp * hqj;
                    h(q, j) = std::conj(sp) * hpj + c * hqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex vip = v(i, p);
                    const Complex viq = v(i, q);
                    v(i, p) = c * vip - std::conj(sp) * viq;
                    v(i, q) = sp * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return h(x, x).real() < h(y, y).real(); });

    HermitianEigensystem out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = h(order[col], order[col]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, col) = v(i, order[col]);
    }
    return out;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

ComplexMatrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix g = random_matrix(n, n, rng);
    // Modified Gram-Schmidt on columns, with one re-orthogonalization pass.
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                Complex proj(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, p)) * g(i, j);
                for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, p);
            }
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
    }
    return g;
}

} // namespace factorcert
