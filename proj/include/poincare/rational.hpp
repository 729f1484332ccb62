#ifndef POINCARE_RATIONAL_HPP
#define POINCARE_RATIONAL_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include <poincare/error.hpp>

namespace poincare
{

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline double to_double(const Rational &q)
{
    return q.convert_to<double>();
}

inline double to_double(double x)
{
    return x;
}

// Larger of the numerator and denominator bit lengths.
inline std::size_t bit_size(const Rational &q)
{
    const Integer n = abs(boost::multiprecision::numerator(q));
    const Integer d = boost::multiprecision::denominator(q);
    const std::size_t nb = n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
    const std::size_t db = boost::multiprecision::msb(d) + 1;
    return nb > db ? nb : db;
}

// Accepts "p", "p/q" and plain decimals such as "-2.5" or "1e-3"; decimals are
// converted exactly.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.erase(s.begin());
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    if (s.empty()) {
        throw ConfigError("empty coefficient");
    }
    auto is_int = [](const std::string &t) {
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i >= t.size()) {
            return false;
        }
        for (; i < t.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
                return false;
            }
        }
        return true;
    };
    auto strip_plus = [](std::string t) {
        if (!t.empty() && t[0] == '+') {
            t.erase(t.begin());
        }
        return t;
    };
    if (const auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) {
            throw ConfigError("malformed rational '" + s + "'");
        }
        const Integer dd(strip_plus(den));
        if (dd == 0) {
            throw ConfigError("zero denominator in '" + s + "'");
        }
        return Rational(Integer(strip_plus(num)), dd);
    }
    if (is_int(s)) {
        return Rational(Integer(strip_plus(s)));
    }
    // Decimal literal: mantissa digits with optional '.', optional exponent.
    std::string mant = s;
    long exp10 = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string::npos) {
        const std::string ex = s.substr(e + 1);
        if (!is_int(ex)) {
            throw ConfigError("malformed number '" + s + "'");
        }
        exp10 = std::stol(ex);
        mant = s.substr(0, e);
    }
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
        neg = mant[0] == '-';
        mant.erase(mant.begin());
    }
    const auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || !is_int(digits)) {
        throw ConfigError("malformed number '" + s + "'");
    }
    Rational q{Integer(digits)};
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0) {
        q /= Rational(ten_pow);
    } else {
        q *= Rational(ten_pow);
    }
    return neg ? Rational(-q) : q;
}

inline std::string to_string(const Rational &q)
{
    return q.str();
}

// Exact k-th root of an integer, if it exists.
inline std::optional<Integer> exact_integer_root(const Integer &n, unsigned k)
{
    if (n < 0) {
        if (k % 2 == 0) {
            return std::nullopt;
        }
        auto r = exact_integer_root(Integer(-n), k);
        if (!r) {
            return std::nullopt;
        }
        return Integer(-*r);
    }
    if (n == 0 || n == 1) {
        return n;
    }
    // Newton iteration seeded from the double estimate, then exact check.
    const double est = std::pow(n.convert_to<double>(), 1.0 / k);
    Integer r(static_cast<long long>(std::llround(est)));
    for (int delta = -2; delta <= 2; ++delta) {
        const Integer c = r + delta;
        if (c >= 0 && boost::multiprecision::pow(c, k) == n) {
            return c;
        }
    }
    return std::nullopt;
}

inline std::optional<Rational> exact_rational_root(const Rational &q, unsigned k)
{
    const auto n = exact_integer_root(boost::multiprecision::numerator(q), k);
    const auto d = exact_integer_root(boost::multiprecision::denominator(q), k);
    if (!n || !d) {
        return std::nullopt;
    }
    return Rational(*n, *d);
}

// Best rational approximation with bounded denominator (continued fractions).
inline Rational rationalize(double x, long long max_den = 1000000)
{
    long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(v);
        if (std::abs(a) > 9.0e15) {
            break;
        }
        const long long ai = static_cast<long long>(a);
        const long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den || k2 < 0) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = v - a;
        if (frac < 1e-15) {
            break;
        }
        v = 1.0 / frac;
    }
    return Rational(Integer(h1), Integer(k1));
}

} // namespace poincare

#endif
