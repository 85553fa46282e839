#include "factorcert/free_group.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "factorcert/errors.hpp"
#include "factorcert/linalg.hpp"

namespace factorcert {

namespace {

void require_letter(const Letter& l) {
    if (l.gen < 1) throw PreconditionError("free word: generator index must be >= 1");
    if (l.sign != 1 && l.sign != -1) throw PreconditionError("free word: exponent sign must be +-1");
}

bool cancels(const Letter& a, const Letter& b) { return a.gen == b.gen && a.sign == -b.sign; }

} // namespace

FreeWord FreeWord::generator(int gen, int sign) {
    return reduce({Letter{gen, sign}});
}

FreeWord FreeWord::reduce(const std::vector<Letter>& raw) {
    FreeWord w;
    w.letters_.reserve(raw.size());
    for (const Letter& l : raw) {
        require_letter(l);
        if (!w.letters_.empty() && cancels(w.letters_.back(), l)) {
            w.letters_.pop_back();
        } else {
            w.letters_.push_back(l);
        }
    }
    return w;
}

FreeWord mul(const FreeWord& a, const FreeWord& b) {
    std::vector<Letter> raw = a.letters();
    raw.insert(raw.end(), b.letters().begin(), b.letters().end());
    return FreeWord::reduce(raw);
}

FreeWord inv(const FreeWord& a) {
    std::vector<Letter> raw(a.letters().rbegin(), a.letters().rend());
    for (Letter& l : raw) l.sign = -l.sign;
    return FreeWord::reduce(raw);
}

int canonical_trace(const FreeWord& w) { return w.is_identity() ? 1 : 0; }

FreeWord parse_word(const std::string& text) {
    std::istringstream in(text);
    std::vector<Letter> raw;
    std::string tok;
    bool any = false;
    while (in >> tok) {
        any = true;
        if (tok == "e") continue;
        std::size_t pos = 0;
        if (tok[pos] != 'g') throw ParseError("word token '" + tok + "': expected g<k> or g<k>^-1 or e");
        ++pos;
        std::size_t digits = 0;
        long idx = 0;
        while (pos < tok.size() && tok[pos] >= '0' && tok[pos] <= '9') {
            idx = idx * 10 + (tok[pos] - '0');
            if (idx > 1000000) throw ParseError("word token '" + tok + "': generator index too large");
            ++pos;
            ++digits;
        }
        if (digits == 0 || idx < 1) {
            throw ParseError("word token '" + tok + "': expected positive generator index");
        }
        int sign = +1;
        if (pos < tok.size()) {
            if (tok.substr(pos) != "^-1") {
                throw ParseError("word token '" + tok + "': only exponent ^-1 is supported");
            }
            sign = -1;
        }
        raw.push_back(Letter{static_cast<int>(idx), sign});
    }
    if (!any) throw ParseError("empty word text; use 'e' for the identity");
    return FreeWord::reduce(raw);
}

std::string format_word(const FreeWord& w) {
    if (w.is_identity()) return "e";
    std::string out;
    for (const Letter& l : w.letters()) {
        if (!out.empty()) out += ' ';
        out += 'g';
        out += std::to_string(l.gen);
        if (l.sign < 0) out += "^-1";
    }
    return out;
}

SymbolicCheckReport symbolic_factorization_check(const std::vector<ComplexMatrix>& a,
                                                 const std::vector<FreeWord>& g,
                                                 const QuantumChannel& t, double tol) {
    if (a.empty() || a.size() != g.size()) {
        throw ShapeError("symbolic check: need matching nonempty coefficient/word lists");
    }
    const std::size_t n = t.dim;
    for (const auto& m : a) {
        if (m.rows() != n || m.cols() != n) {
            throw ShapeError("symbolic check: coefficient is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", channel dimension " + std::to_string(n));
        }
    }

    // Since the lambda_w occurring in u*u (resp. uu*) are linearly independent,
    // unitarity is exactly: identity coefficient = 1, every other coefficient = 0.
    std::map<FreeWord, ComplexMatrix> ad_first;  // word -> sum a_i^* a_j over reduce(g_i^-1 g_j)
    std::map<FreeWord, ComplexMatrix> ad_second; // word -> sum a_i a_j^* over reduce(g_i g_j^-1)
    std::vector<ComplexMatrix> adj(a.size());
    std::vector<FreeWord> ginv(g.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        adj[i] = adjoint(a[i]);
        ginv[i] = inv(g[i]);
    }
    const ComplexMatrix zero(n, n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            auto [it1, _1] = ad_first.try_emplace(mul(ginv[i], g[j]), zero);
            it1->second += adj[i] * a[j];
            auto [it2, _2] = ad_second.try_emplace(mul(g[i], ginv[j]), zero);
            it2->second += a[i] * adj[j];
        }
    }

    SymbolicCheckReport report;
    const ComplexMatrix id = ComplexMatrix::identity(n);
    for (const auto* coeffs : {&ad_first, &ad_second}) {
        for (const auto& [word, m] : *coeffs) {
            const double err = frobenius_distance(m, word.is_identity() ? id : zero);
            if (err > report.unitarity_error) {
                report.unitarity_error = err;
                report.offending_word = format_word(word);
            }
        }
    }
    report.unitary = report.unitarity_error <= tol;
    if (report.unitary) report.offending_word.clear();

    // Induced channel under the canonical trace: only pairs with g_i = g_j
    // survive, so the Kraus family is one summed coefficient per distinct word.
    std::map<FreeWord, ComplexMatrix> grouped;
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto [it, _] = grouped.try_emplace(g[i], zero);
        it->second += a[i];
    }
    QuantumChannel induced;
    induced.dim = n;
    for (auto& [word, m] : grouped) induced.kraus.push_back(std::move(m));
    report.choi_error = choi_distance(induced, t);
    report.factorizes = report.choi_error <= tol;
    return report;
}

} // namespace factorcert
