#ifndef POINCARE_SERIES_HPP
#define POINCARE_SERIES_HPP

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include <poincare/polynomial.hpp>
#include <poincare/rational.hpp>

// Truncated power-series kernels shared by every linearizer in the library.
// A series is a coefficient vector s[0..N]; all operations truncate at the
// length of their output. The coefficient type T is Rational for the exact
// path and double or complex<double> for the float shadow.

namespace poincare::series
{

template <typename T>
using Coeffs = std::vector<T>;

template <typename T>
Coeffs<T> zeros(std::size_t len)
{
    return Coeffs<T>(len, T(0));
}

template <typename T>
Coeffs<T> mul(const Coeffs<T> &a, const Coeffs<T> &b, std::size_t len)
{
    Coeffs<T> r = zeros<T>(len);
    for (std::size_t i = 0; i < a.size() && i < len; ++i) {
        if (a[i] == T(0)) {
            continue;
        }
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// 1/a for a[0] != 0.
template <typename T>
Coeffs<T> inverse(const Coeffs<T> &a, std::size_t len)
{
    if (a.empty() || a[0] == T(0)) {
        throw std::domain_error("series::inverse: zero constant term");
    }
    Coeffs<T> r = zeros<T>(len);
    const T inv0 = T(1) / a[0];
    r[0] = inv0;
    for (std::size_t n = 1; n < len; ++n) {
        T acc(0);
        for (std::size_t j = 1; j <= n && j < a.size(); ++j) {
            acc += a[j] * r[n - j];
        }
        r[n] = -acc * inv0;
    }
    return r;
}

// a^k for a[0] == 1 via the J.C.P. Miller recurrence.
template <typename T>
Coeffs<T> pow_unit(const Coeffs<T> &a, long k, std::size_t len)
{
    Coeffs<T> w = zeros<T>(len);
    w[0] = T(1);
    for (std::size_t n = 1; n < len; ++n) {
        T acc(0);
        for (std::size_t j = 1; j <= n && j < a.size(); ++j) {
            acc += T((k + 1) * static_cast<long>(j) - static_cast<long>(n)) * a[j] * w[n - j];
        }
        w[n] = acc / T(static_cast<long>(n));
    }
    return w;
}

// log(1 + u) for u[0] == 0.
template <typename T>
Coeffs<T> log1p(const Coeffs<T> &u, std::size_t len)
{
    Coeffs<T> l = zeros<T>(len);
    for (std::size_t n = 1; n < len; ++n) {
        T acc(0);
        for (std::size_t j = 1; j < n; ++j) {
            if (n - j < u.size()) {
                acc += T(static_cast<long>(j)) * l[j] * u[n - j];
            }
        }
        const T un = n < u.size() ? u[n] : T(0);
        l[n] = un - acc / T(static_cast<long>(n));
    }
    return l;
}

// outer(inner(z)) with inner[0] == 0, Horner in series arithmetic.
template <typename T>
Coeffs<T> compose(const Coeffs<T> &outer, const Coeffs<T> &inner, std::size_t len)
{
    Coeffs<T> acc = zeros<T>(len);
    for (std::size_t i = outer.size(); i-- > 0;) {
        acc = mul(acc, inner, len);
        acc[0] += outer[i];
    }
    return acc;
}

// Compositional inverse of f with f[0] == 0, f[1] != 0 (Lagrange reversion by
// coefficient matching against the powers of f).
template <typename T>
Coeffs<T> revert(const Coeffs<T> &f, std::size_t len)
{
    if (f.size() < 2 || f[0] != T(0) || f[1] == T(0)) {
        throw std::domain_error("series::revert: need f(0)=0, f'(0)!=0");
    }
    Coeffs<T> g = zeros<T>(len);
    if (len < 2) {
        return g;
    }
    const T inv1 = T(1) / f[1];
    g[1] = inv1;
    // powers[k] = f^k truncated at len.
    std::vector<Coeffs<T>> powers(len);
    Coeffs<T> ftr = zeros<T>(len);
    for (std::size_t i = 0; i < f.size() && i < len; ++i) {
        ftr[i] = f[i];
    }
    powers[1] = ftr;
    for (std::size_t k = 2; k < len; ++k) {
        powers[k] = mul(powers[k - 1], ftr, len);
    }
    T inv_pow = inv1; // f1^{-n}
    for (std::size_t n = 2; n < len; ++n) {
        inv_pow *= inv1;
        T acc(0);
        for (std::size_t k = 1; k < n; ++k) {
            acc += g[k] * powers[k][n];
        }
        g[n] = -acc * inv_pow;
    }
    return g;
}

// Horner evaluation of sum s[n] z^n.
template <typename T, typename U>
auto eval(const Coeffs<T> &s, const U &z)
{
    using R = decltype(T() * z);
    R acc(0);
    for (std::size_t i = s.size(); i-- > 0;) {
        acc = acc * z + R(s[i]);
    }
    return acc;
}

template <typename T, typename U>
auto eval_with_derivative(const Coeffs<T> &s, const U &z)
{
    using R = decltype(T() * z);
    R v(0), dv(0);
    for (std::size_t i = s.size(); i-- > 0;) {
        dv = dv * z + v;
        v = v * z + R(s[i]);
    }
    return std::pair<R, R>(v, dv);
}

// Schroeder-type linearizer: solves Psi(P(y)) = eta * Psi(y) with Psi(y) = y +
// O(y^2), where P(y) = eta*y + O(y^2) is a polynomial and eta^n != eta for
// n >= 2. Covers the Schroeder function at a repelling point and the Koenigs
// function at an attracting one.
template <typename T>
Coeffs<T> solve_schroeder(const Coeffs<T> &P, const T &eta, std::size_t len,
                          const std::function<bool(const T &)> &keep_going = {})
{
    Coeffs<T> psi = zeros<T>(len);
    if (len < 2) {
        return psi;
    }
    psi[1] = T(1);
    std::vector<Coeffs<T>> powers(len); // powers[k] = P^k
    Coeffs<T> Ptr = zeros<T>(len);
    for (std::size_t i = 0; i < P.size() && i < len; ++i) {
        Ptr[i] = P[i];
    }
    powers[1] = Ptr;
    T eta_pow = eta;
    for (std::size_t n = 2; n < len; ++n) {
        powers[n - 1] = n - 1 == 1 ? Ptr : mul(powers[n - 2], Ptr, len);
        eta_pow *= eta;
        T acc(0);
        for (std::size_t k = 1; k < n; ++k) {
            acc += psi[k] * powers[k][n];
        }
        psi[n] = acc / (eta - eta_pow);
        if (keep_going && !keep_going(psi[n])) {
            psi.resize(n + 1);
            return psi;
        }
    }
    return psi;
}

// Boettcher-type linearizer. Solves (1 + beta(y))^k = U(y) * (1 + beta(S(y)))
// for beta(0) = 0, given U(0) = 1 and S(y) = O(y^k), k >= 2. Returns
// beta[0..len-1] with beta[0] = 0.
template <typename T>
Coeffs<T> solve_boettcher(const Coeffs<T> &U, const Coeffs<T> &S, long k, std::size_t len,
                          const std::function<bool(const T &)> &keep_going = {})
{
    Coeffs<T> beta = zeros<T>(len), w = zeros<T>(len), V = zeros<T>(len);
    if (len == 0) {
        return beta;
    }
    w[0] = T(1);
    V[0] = T(1);
    const std::size_t jmax = (len - 1) / static_cast<std::size_t>(k);
    std::vector<Coeffs<T>> spow(jmax + 1);
    if (jmax >= 1) {
        Coeffs<T> Str = zeros<T>(len);
        for (std::size_t i = 0; i < S.size() && i < len; ++i) {
            Str[i] = S[i];
        }
        spow[1] = Str;
        for (std::size_t j = 2; j <= jmax; ++j) {
            spow[j] = mul(spow[j - 1], Str, len);
        }
    }
    auto Ucoef = [&](std::size_t i) { return i < U.size() ? U[i] : T(0); };
    for (std::size_t n = 1; n < len; ++n) {
        // Composition term: beta_j with j*k <= n are already known.
        T t(0);
        for (std::size_t j = 1; j <= jmax && j * static_cast<std::size_t>(k) <= n; ++j) {
            t += beta[j] * spow[j][n];
        }
        V[n] = t;
        T rhs(0);
        for (std::size_t i = 0; i <= n; ++i) {
            rhs += Ucoef(i) * V[n - i];
        }
        T partial(0);
        for (std::size_t j = 1; j < n; ++j) {
            partial += T((k + 1) * static_cast<long>(j) - static_cast<long>(n)) * beta[j] * w[n - j];
        }
        partial /= T(static_cast<long>(n));
        beta[n] = (rhs - partial) / T(k);
        w[n] = partial + T(k) * beta[n];
        if (keep_going && !keep_going(beta[n])) {
            beta.resize(n + 1);
            return beta;
        }
    }
    return beta;
}

template <typename T>
Coeffs<double> to_double(const Coeffs<T> &c)
{
    Coeffs<double> r;
    r.reserve(c.size());
    for (const auto &x : c) {
        r.push_back(poincare::to_double(x));
    }
    return r;
}

} // namespace poincare::series

#endif
