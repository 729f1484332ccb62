#ifndef POINCARE_POINCARE_SERIES_HPP
#define POINCARE_POINCARE_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include <poincare/error.hpp>
#include <poincare/poly_core.hpp>
#include <poincare/rational.hpp>
#include <poincare/series.hpp>

namespace poincare
{

inline constexpr std::size_t default_bit_budget = 4096;
inline constexpr int default_order = 64;

// Taylor data a_0..a_N of a function with a_0 = 0, a_1 = 1. The exact prefix
// holds a_0..a_{exact_order}; coeffs is the float shadow over the full order.
struct PowerSeries
{
    std::vector<Rational> exact;
    std::vector<double> coeffs;
    int order = 0;
    int exact_order = 0;
    bool degraded = false; // exact arithmetic stopped before order
    double r_conv = 0.0;

    bool fully_exact() const { return !degraded; }
};

struct EvalResult
{
    cplx value;
    int lift_depth = 0;
    double residual = 0.0;
    bool warning = false;
};

namespace detail
{

// a_n (lambda^n - lambda) = [z^n] sum_{j>=2} p_j f^j
template <typename T>
std::vector<T> poincare_recursion(const std::vector<T> &p, const T &lambda, int N,
                                  const std::function<bool(const T &)> &keep_going = {})
{
    const int d = static_cast<int>(p.size()) - 1;
    std::vector<std::vector<T>> pw(d + 1, std::vector<T>(N + 1, T(0)));
    std::vector<T> a(N + 1, T(0));
    if (N >= 1) {
        a[1] = T(1);
        pw[1][1] = T(1);
        if (d >= 1) {
            for (int j = 2; j <= d; ++j) {
                pw[j][1] = T(0);
            }
        }
    }
    T lam_pow = lambda;
    for (int n = 2; n <= N; ++n) {
        lam_pow *= lambda;
        T rhs(0);
        for (int j = 2; j <= d; ++j) {
            T acc(0);
            for (int i = 1; i < n; ++i) {
                if (pw[j - 1][n - i] != T(0)) {
                    acc += a[i] * pw[j - 1][n - i];
                }
            }
            pw[j][n] = acc;
            rhs += p[j] * acc;
        }
        a[n] = rhs / (lam_pow - lambda);
        pw[1][n] = a[n];
        if (keep_going && !keep_going(a[n])) {
            a.resize(n + 1);
            return a;
        }
    }
    return a;
}

inline double ratio_radius(const std::vector<double> &a)
{
    const int N = static_cast<int>(a.size()) - 1;
    const int h = N / 2;
    if (N >= 4 && a[h] != 0.0 && a[N] != 0.0) {
        return 0.5 * std::pow(std::abs(a[h] / a[N]), 2.0 / N);
    }
    // Root test over the last quartile.
    double best = std::numeric_limits<double>::infinity();
    for (int n = std::max(1, 3 * N / 4); n <= N; ++n) {
        if (a[n] != 0.0) {
            best = std::min(best, std::pow(std::abs(a[n]), -1.0 / n));
        }
    }
    return std::isfinite(best) ? 0.5 * best : 1.0;
}

inline auto bit_guard(std::size_t budget)
{
    return std::function<bool(const Rational &)>([budget](const Rational &q) { return bit_size(q) <= budget; });
}

} // namespace detail

inline PowerSeries solve_taylor(const NormalizedSystem &sys, int N = default_order,
                                std::size_t bit_budget = default_bit_budget)
{
    if (N < 1) {
        throw ConfigError("series order must be >= 1");
    }
    PowerSeries s;
    s.order = N;
    std::vector<Rational> pe(sys.exact_poly.coefficients());
    const Rational lam = sys.exact_poly.coeff(1);
    s.exact = detail::poincare_recursion<Rational>(pe, lam, N, detail::bit_guard(bit_budget));
    s.exact_order = static_cast<int>(s.exact.size()) - 1;
    s.degraded = s.exact_order < N;
    if (s.degraded) {
        // The coefficient that broke the budget is kept only in float.
        s.exact.pop_back();
        --s.exact_order;
        s.coeffs = detail::poincare_recursion<double>(sys.poly.coefficients(), sys.lambda, N);
        for (int n = 0; n <= s.exact_order; ++n) {
            s.coeffs[n] = to_double(s.exact[n]);
        }
    } else {
        s.coeffs = series::to_double(s.exact);
    }
    s.r_conv = detail::ratio_radius(s.coeffs);
    return s;
}

// Local inverse g_loc of f by formal reversion (the Schroeder function at 0).
inline PowerSeries schroeder_inverse(const PowerSeries &f)
{
    PowerSeries g;
    g.order = f.order;
    g.exact = series::revert(f.exact, f.exact.size());
    g.exact_order = f.exact_order;
    g.degraded = f.degraded;
    if (f.degraded) {
        g.coeffs = series::revert(f.coeffs, f.coeffs.size());
        for (int n = 0; n <= g.exact_order; ++n) {
            g.coeffs[n] = to_double(g.exact[n]);
        }
    } else {
        g.coeffs = series::to_double(g.exact);
    }
    g.r_conv = detail::ratio_radius(g.coeffs);
    return g;
}

namespace detail
{

// Radius below which the float series is summed directly.
inline double lift_radius(const PowerSeries &s)
{
    return std::min(0.5 * s.r_conv, 1.0);
}

inline int lift_depth(const NormalizedSystem &sys, const PowerSeries &s, cplx z)
{
    const double r = lift_radius(s);
    const double a = std::abs(z);
    if (a <= r) {
        return 0;
    }
    return static_cast<int>(std::ceil(std::log(a / r) / std::log(sys.lambda)));
}

// f(z) = p^m(f(z / lambda^m)) with the given depth.
inline cplx lift(const NormalizedSystem &sys, const PowerSeries &s, cplx z, int m)
{
    cplx w = series::eval(s.coeffs, z / std::pow(sys.lambda, m));
    for (int k = 0; k < m; ++k) {
        w = sys.poly(w);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > 1e300) {
            throw OverflowError(detail::concat("f(", z, ") overflows during lifting"), k + 1);
        }
    }
    return w;
}

} // namespace detail

inline cplx eval_f(const NormalizedSystem &sys, const PowerSeries &s, cplx z)
{
    return detail::lift(sys, s, z, detail::lift_depth(sys, s, z));
}

// f(z) with lift depth m and a residual from an independent lift:
// |f(lambda z) - p(f(z))| where f(lambda z) uses depth m + 2.
inline EvalResult evaluate(const NormalizedSystem &sys, const PowerSeries &s, cplx z, double tol = 1e-9)
{
    EvalResult r;
    if (z == cplx(0.0)) {
        r.value = 0.0;
        return r;
    }
    r.lift_depth = detail::lift_depth(sys, s, z);
    r.value = detail::lift(sys, s, z, r.lift_depth);
    try {
        const cplx lhs = detail::lift(sys, s, sys.lambda * z, r.lift_depth + 2);
        const cplx rhs = sys.poly(r.value);
        r.residual = std::abs(lhs - rhs);
        r.warning = r.residual > tol * std::max(1.0, std::abs(rhs));
    } catch (const OverflowError &) {
        r.residual = std::numeric_limits<double>::infinity();
        r.warning = true;
    }
    return r;
}

struct MaxModulusProfile
{
    double r0 = 0.0;
    std::vector<double> u;
    std::vector<double> value; // log M(lambda^u r0) / (lambda^u r0)^rho
};

// max |f| on a 1024-point circle; +inf when some sample overflows.
inline double max_modulus(const NormalizedSystem &sys, const PowerSeries &s, double r, int points = 1024)
{
    if (!(r > 0.0)) {
        throw ConfigError("max_modulus radius must be positive");
    }
    double m = 0.0;
    for (int j = 0; j < points; ++j) {
        const cplx z = std::polar(r, 2.0 * std::numbers::pi * j / points);
        try {
            m = std::max(m, std::abs(eval_f(sys, s, z)));
        } catch (const OverflowError &) {
            return std::numeric_limits<double>::infinity();
        }
    }
    return m;
}

inline double log_max_modulus(const NormalizedSystem &sys, const PowerSeries &s, double r, int points = 1024)
{
    return std::log(max_modulus(sys, s, r, points));
}

inline MaxModulusProfile max_modulus_profile(const NormalizedSystem &sys, const PowerSeries &s, double r0,
                                             int samples = 32, int points = 1024)
{
    MaxModulusProfile out;
    out.r0 = r0;
    for (int j = 0; j < samples; ++j) {
        const double u = static_cast<double>(j) / samples;
        const double r = std::pow(sys.lambda, u) * r0;
        out.u.push_back(u);
        out.value.push_back(log_max_modulus(sys, s, r, points) / std::pow(r, sys.rho));
    }
    return out;
}

} // namespace poincare

#endif
