#ifndef POINCARE_POLYNOMIAL_HPP
#define POINCARE_POLYNOMIAL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <type_traits>
#include <utility>
#include <vector>

#include <poincare/error.hpp>
#include <poincare/rational.hpp>

namespace poincare
{

using cplx = std::complex<double>;

// Dense univariate polynomial, coefficients in ascending degree. Trailing
// zeros are trimmed on construction so degree() is the true degree.
template <typename T>
class Polynomial
{
public:
    using value_type = T;

    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const std::vector<T> &coefficients() const { return c_; }
    T coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == T(1); }

    template <typename U>
    auto operator()(const U &x) const
    {
        using R = decltype(T() * x);
        R acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * x + R(*it);
        }
        return acc;
    }

    // Value and first derivative in one Horner sweep.
    template <typename U>
    auto value_and_derivative(const U &x) const
    {
        using R = decltype(T() * x);
        R v(0), dv(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            dv = dv * x + v;
            v = v * x + R(*it);
        }
        return std::pair<R, R>(v, dv);
    }

    Polynomial derivative() const
    {
        std::vector<T> d;
        for (std::size_t i = 1; i < c_.size(); ++i) {
            d.push_back(c_[i] * T(static_cast<long>(i)));
        }
        return Polynomial(std::move(d));
    }

    // Coefficients of q(y) = p(a + y).
    Polynomial taylor_shift(const T &a) const
    {
        std::vector<T> c = c_;
        const std::size_t n = c.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = n - 1; j > i; --j) {
                c[j - 1] += a * c[j];
            }
        }
        return Polynomial(std::move(c));
    }

    Polynomial operator-(const Polynomial &o) const
    {
        std::vector<T> r(std::max(c_.size(), o.c_.size()), T(0));
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = coeff(static_cast<int>(i)) - o.coeff(static_cast<int>(i));
        }
        return Polynomial(std::move(r));
    }

    Polynomial operator*(const Polynomial &o) const
    {
        if (c_.empty() || o.c_.empty()) {
            return Polynomial();
        }
        std::vector<T> r(c_.size() + o.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                r[i + j] += c_[i] * o.c_[j];
            }
        }
        return Polynomial(std::move(r));
    }

    // p(q(x)).
    Polynomial compose(const Polynomial &q) const
    {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc = acc * q;
            std::vector<T> c = acc.c_;
            if (c.empty()) {
                c.push_back(T(0));
            }
            c[0] += *it;
            acc = Polynomial(std::move(c));
        }
        return acc;
    }

    template <typename U>
    Polynomial<U> cast() const
    {
        std::vector<U> r;
        r.reserve(c_.size());
        for (const auto &x : c_) {
            if constexpr (std::is_same_v<T, Rational> && std::is_same_v<U, double>) {
                r.push_back(to_double(x));
            } else {
                r.push_back(static_cast<U>(x));
            }
        }
        return Polynomial<U>(std::move(r));
    }

    bool operator==(const Polynomial &o) const { return c_ == o.c_; }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == T(0)) {
            c_.pop_back();
        }
    }

    std::vector<T> c_;
};

template <typename T>
std::ostream &operator<<(std::ostream &os, const Polynomial<T> &p)
{
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const T c = p.coeff(i);
        if (c == T(0)) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << c;
        if (i > 0) {
            os << "*z";
            if (i > 1) {
                os << '^' << i;
            }
        }
    }
    if (first) {
        os << '0';
    }
    return os;
}

// Real polynomial in floating point, the working representation of p.
using RealPolynomial = Polynomial<double>;
using ExactPolynomial = Polynomial<Rational>;

inline RealPolynomial to_real(const ExactPolynomial &p)
{
    return p.cast<double>();
}

// Checks the RealPolynomial invariants (degree >= 2, finite coefficients).
inline void validate_real_polynomial(const RealPolynomial &p)
{
    if (p.degree() < 2) {
        throw ConfigError(detail::concat("polynomial degree must be >= 2, got ", p.degree()));
    }
    for (double c : p.coefficients()) {
        if (!std::isfinite(c)) {
            throw ConfigError("polynomial has non-finite coefficient");
        }
    }
}

} // namespace poincare

#endif
