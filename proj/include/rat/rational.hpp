#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rat {

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& what, std::size_t p)
        : std::runtime_error(what + " at offset " + std::to_string(p)), pos(p) {}
};

// Canonical arbitrary precision rational. Thin wrapper so the rest of the
// code never sees GMP types directly.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(v) {}
    Rational(long num, long den) : q_(num, den) {
        if (den == 0) throw std::domain_error("zero denominator");
        q_.canonicalize();
    }
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    // Accepts "-12", "3.25", "-.5", "7/4", "-7/4". No exponents, no spaces.
    static Rational parse(std::string_view s) {
        if (s.empty()) throw ParseError("empty number", 0);
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') { neg = s[0] == '-'; ++i; }
        auto digits = [&](std::size_t from) {
            std::size_t j = from;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
            return j;
        };
        std::size_t a = digits(i);
        std::string num(s.substr(i, a - i));
        std::string den = "1";
        if (a < s.size() && s[a] == '/') {
            if (num.empty()) throw ParseError("missing numerator", a);
            std::size_t b = digits(a + 1);
            if (b == a + 1) throw ParseError("missing denominator", a + 1);
            if (b != s.size()) throw ParseError("unexpected character", b);
            den = std::string(s.substr(a + 1, b - a - 1));
            if (mpz_class(den) == 0) throw ParseError("zero denominator", a + 1);
        } else if (a < s.size() && s[a] == '.') {
            std::size_t b = digits(a + 1);
            if (b != s.size()) throw ParseError("unexpected character", b);
            std::string frac(s.substr(a + 1, b - a - 1));
            if (num.empty() && frac.empty()) throw ParseError("no digits", i);
            num += frac;
            den = "1" + std::string(frac.size(), '0');
        } else if (a != s.size()) {
            throw ParseError("unexpected character", a);
        }
        if (num.empty()) throw ParseError("no digits", i);
        mpq_class q{mpz_class(num), mpz_class(den)};
        q.canonicalize();
        if (neg) q = -q;
        return Rational(q);
    }

    std::string str() const { return q_.get_str(); }
    double to_double() const { return q_.get_d(); }
    int sign() const { return sgn(q_); }
    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.sign() == 0) throw std::domain_error("division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

private:
    mpq_class q_{0};
};

using Vec = std::vector<Rational>;

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i].raw() * b[i].raw();
    return Rational(s);
}

inline Rational sq(const Rational& a) { return a * a; }

} // namespace rat
