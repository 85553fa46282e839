#include "factorcert/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace factorcert {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 narrow(i128 v, const char* what) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
        throw OverflowError(std::string("rational arithmetic overflow in ") + what);
    }
    return static_cast<i64>(v);
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = abs128(a);
    b = abs128(b);
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace

i64 gcd64(i64 a, i64 b) { return std::gcd(a, b); }

i64 lcm64(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    i128 l = i128(a) / std::gcd(a, b) * i128(b);
    return narrow(abs128(l), "lcm");
}

Rational::Rational(i64 numerator, i64 denominator) {
    if (denominator == 0) {
        throw PreconditionError("rational denominator must be nonzero");
    }
    if (denominator < 0) {
        if (numerator == INT64_MIN || denominator == INT64_MIN) {
            throw OverflowError("rational normalization overflow");
        }
        numerator = -numerator;
        denominator = -denominator;
    }
    i64 g = std::gcd(numerator, denominator);
    if (g > 1) {
        numerator /= g;
        denominator /= g;
    }
    num_ = numerator;
    den_ = denominator;
}

Rational Rational::operator-() const {
    if (num_ == INT64_MIN) throw OverflowError("rational negation overflow");
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    i128 n = i128(num_) * o.den_ + i128(o.num_) * den_;
    i128 d = i128(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n, "addition");
    den_ = narrow(d, "addition");
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    return *this += (-o);
}

Rational& Rational::operator*=(const Rational& o) {
    i128 n = i128(num_) * o.num_;
    i128 d = i128(den_) * o.den_;
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n, "multiplication");
    den_ = narrow(d, "multiplication");
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw PreconditionError("rational division by zero");
    i128 n = i128(num_) * o.den_;
    i128 d = i128(den_) * o.num_;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num_ = narrow(n, "division");
    den_ = narrow(d, "division");
    return *this;
}

bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw ParseError("invalid rational literal: \"" + text + "\"");
    };
    if (text.empty()) return fail();
    std::size_t slash = text.find('/');
    auto parse_int = [&](const std::string& part, bool allow_sign) -> i64 {
        if (part.empty()) fail();
        std::size_t start = 0;
        if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
        if (start == part.size()) fail();
        for (std::size_t i = start; i < part.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) fail();
        }
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(part.c_str(), &end, 10);
        if (errno == ERANGE) throw OverflowError("rational literal out of range: \"" + text + "\"");
        if (end != part.c_str() + part.size()) fail();
        return v;
    };
    if (slash == std::string::npos) {
        return Rational(parse_int(text, true));
    }
    i64 n = parse_int(text.substr(0, slash), true);
    i64 d = parse_int(text.substr(slash + 1), false);
    if (d == 0) throw ParseError("rational denominator is zero: \"" + text + "\"");
    return Rational(n, d);
}

LcmReduction lcm_reduce(const std::vector<Rational>& coeffs, const Limits& lim) {
    if (coeffs.empty()) throw PreconditionError("lcm_reduce: empty coefficient list");
    Rational sum(0);
    for (const auto& c : coeffs) {
        if (!c.is_positive()) throw PreconditionError("lcm_reduce: coefficients must be positive");
        sum += c;
    }
    if (!sum.is_one()) {
        throw PreconditionError("lcm_reduce: coefficients must sum to 1 exactly, got " + sum.str());
    }
    long long L = 1;
    for (const auto& c : coeffs) {
        L = lcm64(L, c.den());
        if (L > lim.max_lcm) {
            throw LimitError("lcm_reduce: common denominator " + std::to_string(L) +
                             " exceeds max-lcm " + std::to_string(lim.max_lcm));
        }
    }
    LcmReduction out;
    out.lcm = L;
    out.multiplicities.reserve(coeffs.size());
    long long check = 0;
    for (const auto& c : coeffs) {
        i128 ci = i128(c.num()) * (L / c.den());
        long long m = narrow(ci, "lcm_reduce");
        out.multiplicities.push_back(m);
        check += m;
    }
    // Sum C_i = L holds identically when sum(c_i) = 1; kept as a hard check.
    if (check != L) throw OverflowError("lcm_reduce: multiplicity sum mismatch");
    return out;
}

} // namespace factorcert
