#ifndef FACTORCERT_RATIONAL_HPP
#define FACTORCERT_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "factorcert/errors.hpp"

namespace factorcert {

// Exact rational with overflow-checked 64-bit components. Always stored
// reduced with positive denominator; every operation that would leave the
// 64-bit range throws OverflowError instead of wrapping.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t numerator, std::int64_t denominator);
    explicit Rational(std::int64_t integer) : num_(integer), den_(1) {}

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_positive() const { return num_ > 0; }
    bool is_one() const { return num_ == 1 && den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);

    // "num/den", or just "num" when the denominator is 1.
    std::string str() const;

    // Accepts "num" and "num/den"; normalizes, so parse("2/6") == parse("1/3").
    static Rational parse(const std::string& text);

private:
    std::int64_t num_;
    std::int64_t den_;
};

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b); // overflow-checked

struct LcmReduction {
    long long lcm;                          // L
    std::vector<long long> multiplicities;  // C_i with sum(C_i) = L
};

// Expands positive rationals summing exactly to 1 over their least common
// denominator L: coefficient l_i/L_i becomes multiplicity C_i = l_i * (L/L_i).
LcmReduction lcm_reduce(const std::vector<Rational>& coeffs, const Limits& lim = Limits{});

} // namespace factorcert

#endif
