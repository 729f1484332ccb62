#ifndef POINCARE_ROOTS_HPP
#define POINCARE_ROOTS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include <poincare/error.hpp>
#include <poincare/polynomial.hpp>

namespace poincare
{

namespace detail
{

// Newton polish; only accepts steps that do not increase |p|, so clustered or
// multiple roots degrade to the companion estimate instead of wandering off.
template <typename Poly>
cplx newton_polish(const Poly &p, cplx z, int max_iter = 60)
{
    auto [v, dv] = p.value_and_derivative(z);
    double best = std::abs(v);
    for (int it = 0; it < max_iter && best > 0.0; ++it) {
        if (dv == cplx(0.0)) {
            break;
        }
        const cplx step = v / dv;
        const cplx zn = z - step;
        auto [vn, dvn] = p.value_and_derivative(zn);
        if (!(std::abs(vn) < best) && std::abs(step) > 1e-300) {
            // Allow a final step that does not improve only if it is negligible.
            break;
        }
        z = zn;
        v = vn;
        dv = dvn;
        best = std::abs(vn);
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) {
            break;
        }
    }
    return z;
}

template <typename T>
std::vector<cplx> companion_eigenvalues(const std::vector<T> &c)
{
    // c ascending, leading coefficient c.back() != 0.
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    const cplx lead = cplx(c.back());
    for (int i = 1; i < n; ++i) {
        m(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        m(i, n - 1) = -cplx(c[i]) / lead;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
    if (es.info() != Eigen::Success) {
        throw NumericError("companion eigenvalue solver did not converge");
    }
    std::vector<cplx> r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = es.eigenvalues()(i);
    }
    return r;
}

} // namespace detail

// All complex roots (with multiplicity) of a polynomial with complex or real
// coefficients: companion-matrix eigenvalues followed by Newton polish.
template <typename T>
std::vector<cplx> polynomial_roots(const Polynomial<T> &p)
{
    if (p.degree() < 1) {
        throw NumericError("polynomial_roots: degree < 1");
    }
    const auto est = detail::companion_eigenvalues(p.coefficients());
    const Polynomial<cplx> pc = [&] {
        std::vector<cplx> c;
        for (const auto &x : p.coefficients()) {
            c.emplace_back(cplx(x));
        }
        return Polynomial<cplx>(std::move(c));
    }();
    std::vector<cplx> roots;
    roots.reserve(est.size());
    for (const auto &z : est) {
        roots.push_back(detail::newton_polish(pc, z));
    }
    std::sort(roots.begin(), roots.end(), [](const cplx &a, const cplx &b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

// Numerically stable roots of a*w^2 + b*w + c.
inline std::pair<cplx, cplx> quadratic_roots(cplx a, cplx b, cplx c)
{
    const cplx disc = std::sqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation in b + sign*disc.
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
    if (q == cplx(0.0)) {
        return {cplx(0.0), cplx(0.0)};
    }
    return {q / a, c / q};
}

// The d solutions of p(w) = x (inverse branches of p at x), with multiplicity.
inline std::vector<cplx> preimages(const RealPolynomial &p, cplx x)
{
    const int d = p.degree();
    if (d == 2) {
        auto [r1, r2] = quadratic_roots(p.coeff(2), p.coeff(1), p.coeff(0) - x);
        return {r1, r2};
    }
    std::vector<cplx> c;
    for (double v : p.coefficients()) {
        c.emplace_back(v);
    }
    c[0] -= x;
    return polynomial_roots(Polynomial<cplx>(std::move(c)));
}

} // namespace poincare

#endif
