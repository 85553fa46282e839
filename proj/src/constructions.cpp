#include "factorcert/constructions.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "factorcert/linalg.hpp"

namespace factorcert {

namespace {

constexpr double kZooTol = 1e-9;

} // namespace

void validate_embedding(const BlockEmbedding& emb) {
    require_valid(emb.source);
    require_valid(emb.target);
    if (emb.layout.size() != emb.target.sizes.size()) {
        throw InvalidCertificateError("embedding: " + std::to_string(emb.layout.size()) +
                                      " layout rows for " + std::to_string(emb.target.sizes.size()) +
                                      " target summands");
    }
    const std::size_t d = emb.source.sizes.size();
    std::vector<Rational> pullback(d, Rational(0));
    for (std::size_t j = 0; j < emb.layout.size(); ++j) {
        unsigned long long filled = 0;
        for (const LayoutEntry& entry : emb.layout[j]) {
            if (entry.source_index >= d) {
                throw InvalidCertificateError("embedding: layout references source summand " +
                                              std::to_string(entry.source_index) + " of " +
                                              std::to_string(d));
            }
            if (entry.multiplicity < 1) {
                throw InvalidCertificateError("embedding: layout multiplicity must be >= 1");
            }
            const std::size_t k_src = emb.source.sizes[entry.source_index];
            filled += static_cast<unsigned long long>(entry.multiplicity) * k_src;
            // Weighted-trace pullback of one run: alpha'_j * (m * k_src) / k'_j.
            pullback[entry.source_index] +=
                emb.target.weights[j] *
                Rational(entry.multiplicity * static_cast<long long>(k_src),
                         static_cast<long long>(emb.target.sizes[j]));
        }
        if (filled != emb.target.sizes[j]) {
            throw InvalidCertificateError("embedding: target summand " + std::to_string(j) +
                                          " of size " + std::to_string(emb.target.sizes[j]) +
                                          " is filled with " + std::to_string(filled));
        }
    }
    for (std::size_t i = 0; i < d; ++i) {
        if (pullback[i] != emb.source.weights[i]) {
            throw InvalidCertificateError("embedding: not trace-preserving; source summand " +
                                          std::to_string(i) + " pulls back weight " +
                                          pullback[i].str() + ", expected " +
                                          emb.source.weights[i].str());
        }
    }
}

std::vector<ComplexMatrix> apply_embedding(const BlockEmbedding& emb, std::size_t n,
                                           const std::vector<ComplexMatrix>& blocks,
                                           const Limits& lim) {
    validate_embedding(emb);
    if (n == 0) throw PreconditionError("apply_embedding: n must be >= 1");
    if (blocks.size() != emb.source.sizes.size()) {
        throw ShapeError("apply_embedding: " + std::to_string(blocks.size()) + " blocks for " +
                         std::to_string(emb.source.sizes.size()) + " source summands");
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::size_t dim = n * emb.source.sizes[i];
        if (blocks[i].rows() != dim || blocks[i].cols() != dim) {
            throw ShapeError("apply_embedding: block " + std::to_string(i) + " is " +
                             std::to_string(blocks[i].rows()) + "x" +
                             std::to_string(blocks[i].cols()) + ", expected " +
                             std::to_string(dim));
        }
    }
    std::vector<ComplexMatrix> out;
    out.reserve(emb.layout.size());
    for (std::size_t j = 0; j < emb.layout.size(); ++j) {
        const std::size_t kp = emb.target.sizes[j];
        if (n * kp > lim.max_dim) {
            throw LimitError("apply_embedding: target block dimension " + std::to_string(n * kp) +
                             " exceeds max-dim " + std::to_string(lim.max_dim));
        }
        ComplexMatrix image(n * kp, n * kp);
        std::size_t offset = 0;
        for (const LayoutEntry& entry : emb.layout[j]) {
            const std::size_t k = emb.source.sizes[entry.source_index];
            const std::size_t m = static_cast<std::size_t>(entry.multiplicity);
            const ComplexMatrix& u = blocks[entry.source_index];
            // One run contributes kron(u, 1_m) at ancilla offset: copy index
            // innermost, so ancilla coordinate = offset + x*m + p.
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t x = 0; x < k; ++x)
                    for (std::size_t s = 0; s < n; ++s)
                        for (std::size_t y = 0; y < k; ++y) {
                            const Complex v = u(r * k + x, s * k + y);
                            if (v == Complex(0.0, 0.0)) continue;
                            for (std::size_t p = 0; p < m; ++p) {
                                image(r * kp + offset + x * m + p,
                                      s * kp + offset + y * m + p) = v;
                            }
                        }
            offset += k * m;
        }
        out.push_back(std::move(image));
    }
    return out;
}

namespace {

ComplexMatrix any_action(const AnyFactorizationCert& cert, const ComplexMatrix& x) {
    return std::visit([&](const auto& c) { return factorization_action(c, x); }, cert);
}

// Choi distance between the two induced channels, accumulated unitwise:
// ||choi(a)-choi(b)||_F^2 = sum_pq ||a(E_pq)-b(E_pq)||_F^2.
double action_choi_distance(const AnyFactorizationCert& a, const AnyFactorizationCert& b,
                            std::size_t n) {
    double sumsq = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const ComplexMatrix unit = ComplexMatrix::unit(n, p, q);
            const double err = frobenius_distance(any_action(a, unit), any_action(b, unit));
            sumsq += err * err;
        }
    }
    return std::sqrt(sumsq);
}

} // namespace

AnyFactorizationCert pushforward(const AnyFactorizationCert& cert, const BlockEmbedding& emb,
                                 double tol, const Limits& lim) {
    validate_embedding(emb);
    std::size_t n = 0;
    std::vector<ComplexMatrix> blocks;
    if (const auto* mc = std::get_if<MatrixFactorizationCert>(&cert)) {
        require_valid_shape(*mc);
        n = mc->n;
        if (emb.source.sizes.size() != 1 || emb.source.sizes[0] != mc->ancilla_dim) {
            throw InvalidCertificateError(
                "pushforward: embedding source does not match the certificate ancilla M_" +
                std::to_string(mc->ancilla_dim));
        }
        if (!cert_unitary(*mc, tol)) {
            throw InvalidCertificateError("pushforward: source certificate fails unitarity");
        }
        blocks.push_back(materialize(mc->unitary, lim));
    } else {
        const auto& dc = std::get<DirectSumFactorizationCert>(cert);
        require_valid_shape(dc);
        n = dc.n;
        if (emb.source.sizes != dc.space.sizes || emb.source.weights != dc.space.weights) {
            throw InvalidCertificateError(
                "pushforward: embedding source does not match the certificate ancilla space");
        }
        if (!cert_unitary(dc, tol)) {
            throw InvalidCertificateError("pushforward: source certificate fails unitarity");
        }
        blocks = dc.blocks;
    }

    AnyFactorizationCert out;
    bool structured = emb.target.sizes.size() == 1;
    if (structured) {
        const std::size_t k0 = emb.source.sizes[emb.layout[0].front().source_index];
        for (const LayoutEntry& entry : emb.layout[0]) {
            if (emb.source.sizes[entry.source_index] != k0) structured = false;
        }
        if (structured) {
            // All runs share one block size: the image is sum_p u_{i(p)} (x) E_pp
            // up to an ancilla permutation, which the induced channel ignores.
            BlockRepeatedUnitary br;
            br.base_k = k0;
            for (const LayoutEntry& entry : emb.layout[0]) {
                br.blocks.push_back({blocks[entry.source_index], entry.multiplicity});
            }
            MatrixFactorizationCert mc;
            mc.n = n;
            mc.ancilla_dim = emb.target.sizes[0];
            mc.unitary = std::move(br);
            out = std::move(mc);
        }
    }
    if (!structured) {
        std::vector<ComplexMatrix> pushed = apply_embedding(emb, n, blocks, lim);
        if (emb.target.sizes.size() == 1) {
            MatrixFactorizationCert mc;
            mc.n = n;
            mc.ancilla_dim = emb.target.sizes[0];
            mc.unitary = std::move(pushed[0]);
            out = std::move(mc);
        } else {
            DirectSumFactorizationCert dc;
            dc.n = n;
            dc.space = emb.target;
            dc.blocks = std::move(pushed);
            out = std::move(dc);
        }
    }

    const double dist = action_choi_distance(cert, out, n);
    if (dist > tol) {
        throw InvalidCertificateError("pushforward: channel not preserved (Choi distance " +
                                      std::to_string(dist) + ")");
    }
    return out;
}

BlockEmbedding embed_equal_blocks(const DirectSumSpace& space, const Limits& lim) {
    require_valid(space);
    const std::size_t k = space.sizes.front();
    for (std::size_t sz : space.sizes) {
        if (sz != k) {
            throw PreconditionError("embed_equal_blocks: summand sizes must all be equal");
        }
    }
    const LcmReduction lr = lcm_reduce(space.weights, lim);
    BlockEmbedding emb;
    emb.source = space;
    emb.target.sizes = {k * static_cast<std::size_t>(lr.lcm)};
    emb.target.weights = {Rational(1)};
    emb.layout.emplace_back();
    for (std::size_t i = 0; i < space.sizes.size(); ++i) {
        emb.layout[0].push_back({i, lr.multiplicities[i]});
    }
    return emb;
}

BlockEmbedding equalize_sizes(const DirectSumSpace& space, const Limits& lim) {
    require_valid(space);
    long long k_lcm = 1;
    for (std::size_t sz : space.sizes) k_lcm = lcm64(k_lcm, static_cast<long long>(sz));
    if (k_lcm > lim.max_lcm) {
        throw LimitError("equalize_sizes: lcm of sizes " + std::to_string(k_lcm) +
                         " exceeds max-lcm " + std::to_string(lim.max_lcm));
    }
    BlockEmbedding emb;
    emb.source = space;
    emb.target.sizes.assign(space.sizes.size(), static_cast<std::size_t>(k_lcm));
    emb.target.weights = space.weights;
    for (std::size_t i = 0; i < space.sizes.size(); ++i) {
        emb.layout.push_back({{i, k_lcm / static_cast<long long>(space.sizes[i])}});
    }
    return emb;
}

MatrixFactorizationCert lift_rational_mixture(const RationalMixtureCert& cert, double tol,
                                              const Limits& lim) {
    const MixtureVerification mv = verify_mixture_cert(cert, tol);
    if (!mv.verdict) {
        throw HypothesisError("lift: mixture does not tensor-factor as T (x) S_k "
                              "(Choi distance " + std::to_string(mv.choi_error) + ")");
    }
    std::vector<Rational> coeffs;
    coeffs.reserve(cert.terms.size());
    for (const auto& term : cert.terms) coeffs.push_back(term.coeff);
    const LcmReduction lr = lcm_reduce(coeffs, lim);

    MatrixFactorizationCert out;
    out.n = cert.n;
    out.ancilla_dim = cert.k * static_cast<std::size_t>(lr.lcm);
    BlockRepeatedUnitary br;
    br.base_k = cert.k;
    for (std::size_t i = 0; i < cert.terms.size(); ++i) {
        br.blocks.push_back({cert.terms[i].unitary, lr.multiplicities[i]});
    }
    out.unitary = std::move(br);

    const FactorizationReport rep = verify_matrix_factorization(out, mv.recovered, tol);
    if (!rep.verdict) {
        throw InvalidCertificateError("lift: output failed re-verification (max unit error " +
                                      std::to_string(rep.max_error) + ")");
    }
    return out;
}

MatrixFactorizationCert collapse_direct_sum(const DirectSumFactorizationCert& cert, double tol,
                                            const Limits& lim) {
    require_valid_shape(cert);
    if (!cert_unitary(cert, tol)) {
        throw InvalidCertificateError("collapse: a block fails unitarity at tolerance " +
                                      std::to_string(tol));
    }
    AnyFactorizationCert cur = cert;
    cur = pushforward(cur, equalize_sizes(cert.space, lim), tol, lim);

    DirectSumSpace mid;
    if (const auto* dc = std::get_if<DirectSumFactorizationCert>(&cur)) {
        mid = dc->space;
    } else {
        const auto& mc = std::get<MatrixFactorizationCert>(cur);
        mid.sizes = {mc.ancilla_dim};
        mid.weights = {Rational(1)};
    }
    cur = pushforward(cur, embed_equal_blocks(mid, lim), tol, lim);

    MatrixFactorizationCert out = std::get<MatrixFactorizationCert>(std::move(cur));
    const FactorizationReport rep =
        verify_matrix_factorization(out, induced_channel_direct_sum(cert, tol), tol);
    if (!rep.verdict) {
        throw InvalidCertificateError("collapse: output does not reproduce the source channel "
                                      "(max unit error " + std::to_string(rep.max_error) + ")");
    }
    return out;
}

std::vector<ComplexMatrix> spin_unitaries(std::size_t d, const Limits& lim) {
    if (d < 1) throw PreconditionError("spin family: d must be >= 1");
    std::size_t dim = 1;
    for (std::size_t i = 0; i < d; ++i) {
        dim *= 2;
        if (dim > lim.max_dim) {
            throw LimitError("spin family: dimension 2^" + std::to_string(d) +
                             " exceeds max-dim " + std::to_string(lim.max_dim));
        }
    }
    ComplexMatrix x(2, 2), z(2, 2);
    x(0, 1) = x(1, 0) = Complex(1.0, 0.0);
    z(0, 0) = Complex(1.0, 0.0);
    z(1, 1) = Complex(-1.0, 0.0);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    std::vector<ComplexMatrix> s;
    s.reserve(d);
    for (std::size_t i = 1; i <= d; ++i) {
        ComplexMatrix acc = (i == 1) ? x : z;
        for (std::size_t pos = 2; pos <= d; ++pos) {
            const ComplexMatrix& factor = (pos < i) ? z : (pos == i ? x : id2);
            acc = kron(acc, factor, lim);
        }
        s.push_back(std::move(acc));
    }
    return s;
}

MatrixFactorizationCert commuting_kraus_factorization(const std::vector<ComplexMatrix>& a,
                                                      double tol, const Limits& lim) {
    if (a.empty()) throw PreconditionError("commuting factorization: empty Kraus list");
    const std::size_t n = a.front().rows();
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i].require_square("commuting factorization");
        if (a[i].rows() != n) {
            throw PreconditionError("commuting factorization: mixed dimensions");
        }
        if (frobenius_distance(a[i], adjoint(a[i])) > tol) {
            throw PreconditionError("commuting factorization: a[" + std::to_string(i) +
                                    "] is not self-adjoint at tolerance " + std::to_string(tol));
        }
    }
    ComplexMatrix square_sum(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        square_sum += a[i] * a[i];
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if (frobenius_distance(a[i] * a[j], a[j] * a[i]) > tol) {
                throw PreconditionError("commuting factorization: a[" + std::to_string(i) +
                                        "] and a[" + std::to_string(j) +
                                        "] do not commute at tolerance " + std::to_string(tol));
            }
        }
    }
    if (frobenius_distance(square_sum, ComplexMatrix::identity(n)) > tol) {
        throw PreconditionError("commuting factorization: sum of squares differs from the "
                                "identity at tolerance " + std::to_string(tol));
    }

    const std::vector<ComplexMatrix> s = spin_unitaries(a.size(), lim);
    const std::size_t ancilla = s.front().rows(); // 2^d
    ComplexMatrix u(n * ancilla, n * ancilla);
    for (std::size_t i = 0; i < a.size(); ++i) u += kron(a[i], s[i], lim);
    if (!is_unitary(u, tol)) {
        throw InvalidCertificateError("commuting factorization: constructed matrix fails "
                                      "unitarity at tolerance " + std::to_string(tol));
    }

    MatrixFactorizationCert cert;
    cert.n = n;
    cert.ancilla_dim = ancilla;
    cert.unitary = std::move(u);

    QuantumChannel target;
    target.dim = n;
    target.kraus = a;
    const FactorizationReport rep = verify_matrix_factorization(cert, target, tol);
    if (!rep.verdict) {
        throw InvalidCertificateError("commuting factorization: induced channel deviates from "
                                      "sum a_i x a_i (max unit error " +
                                      std::to_string(rep.max_error) + ")");
    }
    return cert;
}

namespace {

ComplexMatrix phase_diagonal(std::size_t d) {
    ComplexMatrix z(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d);
        z(j, j) = Complex(std::cos(ang), std::sin(ang));
    }
    return z;
}

ZooBundle dephasing_bundle(std::size_t d, const Limits& lim) {
    ZooBundle b;
    b.channel.dim = d;
    for (std::size_t i = 0; i < d; ++i) b.channel.kraus.push_back(ComplexMatrix::unit(d, i, i));
    b.channel.validated = true;

    RationalMixtureCert mix;
    mix.n = d;
    mix.k = 1;
    const ComplexMatrix z = phase_diagonal(d);
    ComplexMatrix zj = ComplexMatrix::identity(d);
    for (std::size_t j = 0; j < d; ++j) {
        mix.terms.push_back({Rational(1, static_cast<std::int64_t>(d)), zj});
        zj = zj * z;
    }
    const QuantumChannel as_mixture = mixture_channel(
        [&] {
            std::vector<Rational> cs;
            for (const auto& t : mix.terms) cs.push_back(t.coeff);
            return cs;
        }(),
        [&] {
            std::vector<ComplexMatrix> us;
            for (const auto& t : mix.terms) us.push_back(t.unitary);
            return us;
        }(),
        kZooTol);
    if (!channels_equal(as_mixture, b.channel, kZooTol)) {
        throw Error("zoo: phase-power mixture deviates from the diagonal channel");
    }
    b.mixture = std::move(mix);
    b.lift = lift_rational_mixture(*b.mixture, kZooTol, lim);

    try {
        b.spin = commuting_kraus_factorization(b.channel.kraus, kZooTol, lim);
    } catch (const LimitError&) {
        // 2^d exceeds max-dim: bundle simply omits the spin route.
    }

    FreeGroupWitness fg;
    for (std::size_t i = 0; i < d; ++i) {
        fg.coeffs.push_back(ComplexMatrix::unit(d, i, i));
        fg.words.push_back(FreeWord::generator(static_cast<int>(i) + 1));
    }
    b.fg_witness = std::move(fg);
    return b;
}

ZooBundle depolarizing_bundle(std::size_t k, const Limits& lim) {
    ZooBundle b;
    b.channel = depolarizing(k);

    auto [coeffs, unitaries] = weyl_mixture(k);
    if (!channels_equal(mixture_channel(coeffs, unitaries, kZooTol), b.channel, kZooTol)) {
        throw Error("zoo: Weyl mixture deviates from the depolarizing channel");
    }
    RationalMixtureCert mix;
    mix.n = k;
    mix.k = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        mix.terms.push_back({coeffs[i], unitaries[i]});
    }
    b.mixture = std::move(mix);
    b.lift = lift_rational_mixture(*b.mixture, kZooTol, lim);
    return b;
}

} // namespace

std::vector<std::string> zoo_names() {
    return {"dephasing(2)",    "dephasing(3)",    "dephasing(4)",
            "depolarizing(2)", "depolarizing(3)", "paper-m2-example"};
}

ZooBundle zoo(const std::string& name, const Limits& lim) {
    if (name == "paper-m2-example") {
        ZooBundle b = dephasing_bundle(2, lim);
        b.name = name;
        return b;
    }
    for (const char* family : {"dephasing", "depolarizing"}) {
        const std::string prefix = std::string(family) + "(";
        if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 &&
            name.back() == ')') {
            const std::string arg = name.substr(prefix.size(), name.size() - prefix.size() - 1);
            std::size_t param = 0;
            for (char c : arg) {
                if (c < '0' || c > '9') {
                    throw ParseError("zoo: bad parameter in '" + name + "'");
                }
                param = param * 10 + static_cast<std::size_t>(c - '0');
                if (param > lim.max_dim) {
                    throw LimitError("zoo: parameter in '" + name + "' exceeds max-dim");
                }
            }
            if (param == 0) throw ParseError("zoo: parameter in '" + name + "' must be >= 1");
            ZooBundle b = (family[3] == 'h') ? dephasing_bundle(param, lim)
                                             : depolarizing_bundle(param, lim);
            b.name = name;
            return b;
        }
    }
    throw ParseError("zoo: unknown name '" + name + "'; known: dephasing(d), depolarizing(k), "
                     "paper-m2-example");
}

} // namespace factorcert
