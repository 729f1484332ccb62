#ifndef POINCARE_BOETTCHER_GREEN_HPP
#define POINCARE_BOETTCHER_GREEN_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <poincare/error.hpp>
#include <poincare/poly_core.hpp>
#include <poincare/rational.hpp>
#include <poincare/series.hpp>

namespace poincare
{

inline constexpr int default_laurent_order = 32;

// g(z) = z + sum_{n>=0} coeffs[n] z^{-n}; the same layout holds the inverse
// coefficients c_n of g^{-1}(w) = w + sum c_n w^{-n}.
struct LaurentSeries
{
    std::vector<Rational> exact;
    std::vector<double> coeffs;
    int order = 0;

    template <typename U>
    U tail(U z) const
    {
        // sum_n coeffs[n] z^{-n}
        const U t = U(1.0) / z;
        U acc(0.0);
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            acc = acc * t + U(coeffs[i]);
        }
        return acc;
    }

    template <typename U>
    U operator()(U z) const
    {
        return z + tail(z);
    }
};

struct GreenValue
{
    cplx G;
    double abs_green = 0.0;
    int branch_path = 0;
    bool escaping = true;
};

inline double escape_radius(const RealPolynomial &p)
{
    double s = 0.0;
    for (double c : p.coefficients()) {
        s += std::abs(c);
    }
    return 1.0 + std::max(2.0, s);
}

// Solves (g(z))^d = g(p(z)) at infinity. With t = 1/z and g(z) = z(1 + beta(t)),
// p(z) = z^d (1 + pi(t)) turns this into (1 + beta)^d = (1 + pi)(1 + beta(t^d/(1 + pi))).
inline LaurentSeries boettcher_coeffs(const NormalizedSystem &sys, int N = default_laurent_order)
{
    const int d = sys.d;
    const std::size_t len = static_cast<std::size_t>(N) + 2;
    std::vector<Rational> U(static_cast<std::size_t>(d) + 1, Rational(0));
    for (int j = 0; j <= d; ++j) {
        U[j] = sys.exact_poly.coeff(d - j);
    }
    std::vector<Rational> td(len, Rational(0));
    if (static_cast<std::size_t>(d) < len) {
        td[d] = 1;
    }
    const auto S = series::mul(td, series::inverse(U, len), len);
    const auto beta = series::solve_boettcher<Rational>(U, S, d, len);
    LaurentSeries out;
    out.order = N;
    for (int n = 0; n <= N; ++n) {
        out.exact.push_back(beta[n + 1]);
    }
    out.coeffs = series::to_double(out.exact);
    return out;
}

// Laurent reversion: with psi(t) = 1/g(1/t) = t/(1 + beta(t)) and phi its
// compositional inverse, g^{-1}(w) = w * s/phi(s) at s = 1/w.
inline LaurentSeries boettcher_inverse_coeffs(const LaurentSeries &b)
{
    const std::size_t len = static_cast<std::size_t>(b.order) + 2;
    std::vector<Rational> onebeta(len, Rational(0));
    onebeta[0] = 1;
    for (int n = 0; n <= b.order && static_cast<std::size_t>(n + 1) < len; ++n) {
        onebeta[n + 1] = b.exact[n];
    }
    std::vector<Rational> t(len, Rational(0));
    t[1] = 1;
    const auto psi = series::mul(t, series::inverse(onebeta, len), len);
    const auto phi = series::revert(psi, len);
    std::vector<Rational> phi_over_s(len, Rational(0));
    for (std::size_t i = 1; i < len; ++i) {
        phi_over_s[i - 1] = phi[i];
    }
    const auto e = series::inverse(phi_over_s, len - 1);
    LaurentSeries out;
    out.order = b.order;
    for (int n = 0; n <= b.order; ++n) {
        out.exact.push_back(static_cast<std::size_t>(n + 1) < e.size() ? e[n + 1] : Rational(0));
    }
    out.coeffs = series::to_double(out.exact);
    return out;
}

namespace detail
{

// log g(w) = Log w + log(1 + sum b_n w^{-n-1}) for large |w|.
inline cplx laurent_log_g(const LaurentSeries &b, cplx w)
{
    return std::log(w) + std::log(1.0 + b.tail(w) / w);
}

struct Orbit
{
    cplx w;
    int steps = 0;
    bool escaped = false;
};

inline Orbit orbit_to(const RealPolynomial &p, cplx z, double radius, int budget = 1000)
{
    Orbit o{z, 0, false};
    while (o.steps < budget) {
        if (std::abs(o.w) >= radius) {
            o.escaped = true;
            return o;
        }
        o.w = p(o.w);
        ++o.steps;
    }
    o.escaped = std::abs(o.w) >= radius;
    return o;
}

} // namespace detail

// Green function (real part only, branch free): d^{-k} log|g(p^k(z))|.
inline double green_real(const NormalizedSystem &sys, const LaurentSeries &b, cplx z)
{
    const double R = escape_radius(sys.poly);
    const double big = 1e6 * R;
    const auto o = detail::orbit_to(sys.poly, z, big);
    if (!o.escaped) {
        return 0.0;
    }
    return std::real(detail::laurent_log_g(b, o.w)) / std::pow(static_cast<double>(sys.d), o.steps);
}

// Laurent-series value of Log g(z) for |z| at least the escape radius.
inline cplx green_laurent(const LaurentSeries &b, cplx z)
{
    return detail::laurent_log_g(b, z);
}

// Limit form Log z + sum_n d^{-(n+1)} Log(p(w_n)/w_n^d) on the principal
// branch, valid for |z| >= escape radius.
inline cplx green_iterative(const NormalizedSystem &sys, cplx z, int max_terms = 200)
{
    const double R = escape_radius(sys.poly);
    if (std::abs(z) < R) {
        throw OutsideValidity("green_iterative needs |z| >= escape radius");
    }
    cplx G = std::log(z), w = z;
    double scale = 1.0;
    for (int n = 0; n < max_terms; ++n) {
        scale /= sys.d;
        // p(w)/w^d = 1 + pi(1/w)
        const cplx t = 1.0 / w;
        cplx pi(0.0);
        for (int j = sys.d; j >= 1; --j) {
            pi = pi * t + sys.poly.coeff(sys.d - j);
        }
        pi *= t;
        const cplx term = scale * std::log(1.0 + pi);
        G += term;
        if (std::abs(term) < 1e-18 * std::abs(G)) {
            break;
        }
        w = sys.poly(w);
        if (std::abs(w) > 1e150) {
            break;
        }
    }
    return G;
}

// Complex Green function G = Log g along the radial path from the Laurent zone
// to z, so that arg g is continuous on the path. Points that do not escape
// return the filled-Julia marker (G = 0, escaping = false).
inline GreenValue green(const NormalizedSystem &sys, const LaurentSeries &b, cplx z)
{
    GreenValue out;
    const double R = escape_radius(sys.poly);
    const double big = 1e6 * R;
    const double d = sys.d;
    const auto o = detail::orbit_to(sys.poly, z, big);
    if (!o.escaped) {
        out.G = 0.0;
        out.abs_green = 0.0;
        out.escaping = false;
        out.branch_path = o.steps;
        return out;
    }
    if (std::abs(z) >= 2.0 * R) {
        out.G = green_laurent(b, z);
        out.abs_green = out.G.real();
        return out;
    }
    // Candidates d^{-k}(Log g(w_k) + 2 pi i j) at a point; pick the j closest
    // to the previous value. Steps are limited so that G moves by well under
    // one branch spacing 2 pi d^{-k}, using |G'| ~ d^{-k} |(p^k)'| / |w_k|.
    struct Probe
    {
        cplx base;
        double spacing;
        double max_step;
        int steps;
    };
    auto probe = [&](cplx pt) {
        cplx w = pt, dw = 1.0;
        int k = 0;
        while (std::abs(w) < big) {
            if (k >= 1000) {
                throw BranchError(detail::concat("continuation path to ", z, " meets the filled Julia set"));
            }
            const auto [v, dv] = sys.poly.value_and_derivative(w);
            dw *= dv;
            w = v;
            ++k;
        }
        const double s = std::pow(d, -k);
        Probe pr;
        pr.base = s * detail::laurent_log_g(b, w);
        pr.spacing = 2.0 * std::numbers::pi * s;
        pr.max_step = 0.1 * std::numbers::pi * std::abs(w) / std::max(std::abs(dw), 1e-300);
        pr.steps = k;
        return pr;
    };
    const double r1 = 2.0 * R, r0 = std::abs(z);
    const cplx dir = z / r0;
    cplx prev = green_laurent(b, dir * r1);
    double r = r1;
    int depth = 0;
    Probe cur = probe(dir * r);
    long guard = 0;
    while (r > r0) {
        double step = std::min(cur.max_step, r - r0);
        Probe nxt;
        double rn;
        for (;;) {
            rn = std::max(r0, r - step);
            nxt = probe(dir * rn);
            if (nxt.max_step >= 0.5 * step || step < 1e-14 * r1) {
                break;
            }
            step = nxt.max_step;
        }
        if (++guard > 10000000) {
            throw BranchError("branch continuation did not settle");
        }
        const double j = std::round((prev.imag() - nxt.base.imag()) / nxt.spacing);
        prev = nxt.base + cplx(0.0, j * nxt.spacing);
        depth = std::max(depth, nxt.steps);
        r = rn;
        cur = nxt;
    }
    out.G = prev;
    out.abs_green = prev.real();
    out.branch_path = depth;
    return out;
}

struct KoenigsSeries
{
    cplx w0;
    cplx eta;
    std::vector<cplx> psi;     // psi[0] = 0, psi[1] = 1
    std::vector<cplx> inverse; // coefficients of Psi^{-1}(u) - w0
    std::vector<Rational> psi_exact; // empty when w0 or eta is not rational
    int order = 0;

    cplx operator()(cplx z) const { return series::eval(psi, z - w0); }
    cplx inv(cplx u) const { return w0 + series::eval(inverse, u); }
};

struct FiniteBoettcher
{
    cplx w0;
    int k = 0;
    cplx A;
    std::vector<cplx> g; // g(z) = sum g[n] (z - w0)^n, g[1] = 1
    std::vector<Rational> g_exact;
    int order = 0;

    cplx operator()(cplx z) const { return series::eval(g, z - w0); }
};

namespace detail
{

inline std::optional<Rational> rational_point(const ExactPolynomial &p, cplx w0)
{
    if (std::abs(w0.imag()) > 1e-14 * std::max(1.0, std::abs(w0))) {
        return std::nullopt;
    }
    const Rational r = rationalize(w0.real(), 1000000);
    if (std::abs(to_double(r) - w0.real()) > 1e-9 * std::max(1.0, std::abs(w0))) {
        return std::nullopt;
    }
    if (p(r) != r) {
        return std::nullopt;
    }
    return r;
}

inline std::vector<cplx> to_complex(const std::vector<double> &v)
{
    return std::vector<cplx>(v.begin(), v.end());
}

} // namespace detail

// Koenigs linearizer at an attracting (not superattracting) fixed point.
inline KoenigsSeries koenigs_psi(const ExactPolynomial &p, cplx w0, int N = default_laurent_order)
{
    const RealPolynomial pr = to_real(p);
    const cplx eta = pr.derivative()(w0);
    const double m = std::abs(eta);
    if (std::abs(pr(w0) - w0) > 1e-9 * std::max(1.0, std::abs(w0))) {
        throw NotApplicable(detail::concat(w0, " is not a fixed point"));
    }
    if (m < 1e-12) {
        throw NotApplicable("multiplier is 0: superattracting point, use finite_boettcher");
    }
    if (m >= 1.0) {
        throw NotApplicable(detail::concat("fixed point is not attracting, |eta| = ", m));
    }
    KoenigsSeries out;
    out.w0 = w0;
    out.eta = eta;
    out.order = N;
    const std::size_t len = static_cast<std::size_t>(N) + 1;
    if (auto r = detail::rational_point(p, w0)) {
        ExactPolynomial P = p.taylor_shift(*r);
        auto c = P.coefficients();
        c[0] -= *r;
        out.psi_exact = series::solve_schroeder<Rational>(c, c[1], len);
        out.psi = detail::to_complex(series::to_double(out.psi_exact));
        out.inverse = detail::to_complex(series::to_double(series::revert(out.psi_exact, len)));
    } else {
        std::vector<cplx> c;
        // complex Taylor shift by hand
        std::vector<cplx> q(pr.coefficients().begin(), pr.coefficients().end());
        for (std::size_t i = 0; i + 1 < q.size(); ++i) {
            for (std::size_t j = q.size() - 1; j > i; --j) {
                q[j - 1] += w0 * q[j];
            }
        }
        q[0] -= w0;
        out.psi = series::solve_schroeder<cplx>(q, q[1], len);
        out.inverse = series::revert(out.psi, len);
    }
    return out;
}

inline int superattracting_order(const RealPolynomial &p, cplx w0)
{
    // first non-vanishing derivative, read off the shifted coefficients
    std::vector<cplx> q(p.coefficients().begin(), p.coefficients().end());
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        for (std::size_t j = q.size() - 1; j > i; --j) {
            q[j - 1] += w0 * q[j];
        }
    }
    double s = 0.0;
    for (const auto &v : q) {
        s = std::max(s, std::abs(v));
    }
    for (std::size_t k = 1; k < q.size(); ++k) {
        if (std::abs(q[k]) > 1e-10 * s) {
            return static_cast<int>(k);
        }
    }
    return static_cast<int>(q.size()) - 1;
}

// Boettcher coordinate at a superattracting fixed point: g(p(z)) = A g(z)^k.
// With y = z - w0 and P(y) = y^k Q(y), A = Q(0) and g = y(1 + beta(y)):
// (1 + beta)^k = (Q/A)(1 + beta(P(y))).
inline FiniteBoettcher finite_boettcher(const ExactPolynomial &p, cplx w0, int N = default_laurent_order)
{
    const RealPolynomial pr = to_real(p);
    if (std::abs(pr(w0) - w0) > 1e-9 * std::max(1.0, std::abs(w0))) {
        throw NotApplicable(detail::concat(w0, " is not a fixed point"));
    }
    if (std::abs(pr.derivative()(w0)) > 1e-12) {
        throw NotApplicable("fixed point is not superattracting");
    }
    const auto r = detail::rational_point(p, w0);
    if (!r) {
        throw NotApplicable("finite_boettcher needs a rational superattracting point");
    }
    FiniteBoettcher out;
    out.w0 = w0;
    out.order = N;
    ExactPolynomial P = p.taylor_shift(*r);
    auto c = P.coefficients();
    c[0] -= *r;
    int k = 1;
    while (k < static_cast<int>(c.size()) && c[k] == 0) {
        ++k;
    }
    out.k = k;
    std::vector<Rational> Q(c.begin() + k, c.end());
    const Rational A = Q[0];
    out.A = to_double(A);
    std::vector<Rational> U;
    for (const auto &v : Q) {
        U.push_back(v / A);
    }
    const std::size_t len = static_cast<std::size_t>(N) + 1;
    const auto beta = series::solve_boettcher<Rational>(U, c, k, len);
    out.g_exact.assign(len, Rational(0));
    for (std::size_t n = 1; n < len; ++n) {
        out.g_exact[n] = n == 1 ? Rational(1) : beta[n - 1];
    }
    out.g = detail::to_complex(series::to_double(out.g_exact));
    return out;
}

} // namespace poincare

#endif
