#ifndef TORIC_RATIONAL_HPP
#define TORIC_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toric {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using Vector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;

/// Thrown when an operation's documented precondition does not hold
/// (non-complete fan, divisor not Q-Cartier, point on a chamber wall, ...).
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Thrown when a configured resource bound (ray cap, m_max) is exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Integer floor(const Rational& q) {
    Integer n = numerator(q), d = denominator(q);
    Integer f = n / d;  // truncates toward zero
    if (f * d != n && n < 0) f -= 1;
    return f;
}

inline Integer ceil(const Rational& q) {
    Integer f = floor(q);
    return Rational(f) == q ? f : f + 1;
}

inline Integer gcd(Integer a, Integer b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::lcm(a, b);
}

inline Rational pow(const Rational& q, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= q;
    return r;
}

inline Integer factorial(unsigned n) {
    Integer r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Parses "p/q", "p", or "-p/q" (surrounding whitespace allowed).
inline Rational parse_rational(std::string_view text) {
    auto first = text.find_first_not_of(" \t");
    auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos) throw std::invalid_argument("empty rational literal");
    std::string s(text.substr(first, last - first + 1));
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    if (den[0] == '+') den.erase(0, 1);
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return Rational(Integer(num), d);
}

/// Lowest-terms "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

/// Decimal rendering with exactly `digits` significant digits, rounded half
/// away from zero, computed without floating point.
inline std::string to_decimal(const Rational& q, int digits = 12) {
    if (q == 0) return "0." + std::string(static_cast<std::size_t>(digits - 1), '0');
    bool negative = q < 0;
    Rational a = negative ? Rational(-q) : q;

    // exponent e with 10^e <= a < 10^(e+1)
    int e = 0;
    Rational p = 1;
    while (a >= p * 10) { p *= 10; ++e; }
    while (a < p) { p /= 10; --e; }

    auto scaled_digits = [&](int exp) {
        // round(a * 10^(digits-1-exp))
        int shift = digits - 1 - exp;
        Rational s = a;
        for (int i = 0; i < shift; ++i) s *= 10;
        for (int i = 0; i > shift; --i) s /= 10;
        return floor(s + Rational(1, 2));
    };
    Integer m = scaled_digits(e);
    std::string ds = m.str();
    if (static_cast<int>(ds.size()) > digits) {  // rounding carried into a new digit
        ++e;
        m = scaled_digits(e);
        ds = m.str();
    }

    std::string out;
    if (e >= digits - 1) {
        out = ds + std::string(static_cast<std::size_t>(e - (digits - 1)), '0');
    } else if (e >= 0) {
        out = ds.substr(0, static_cast<std::size_t>(e + 1)) + "." + ds.substr(static_cast<std::size_t>(e + 1));
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
    }
    return negative ? "-" + out : out;
}

inline Vector to_rational(const IntVector& v) {
    Vector r;
    r.reserve(v.size());
    for (auto x : v) r.emplace_back(x);
    return r;
}

inline Rational dot(const Vector& a, const Vector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const Vector& a, const IntVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational dot(const IntVector& a, const IntVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
    return s;
}

}  // namespace toric

#endif
