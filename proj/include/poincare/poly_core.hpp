#ifndef POINCARE_POLY_CORE_HPP
#define POINCARE_POLY_CORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <poincare/error.hpp>
#include <poincare/polynomial.hpp>
#include <poincare/rational.hpp>
#include <poincare/roots.hpp>

namespace poincare
{

// Affine change of variables w = scale*(z - shift) taking the user's polynomial
// to the normalized one: q(w) = scale*(p(shift + w/scale) - shift).
struct Conjugation
{
    double scale = 1.0;
    double shift = 0.0;
    bool exact = true; // scale and shift are exact rationals
    Rational scale_exact{1};
    Rational shift_exact{0};
};

struct NormalizedSystem
{
    ExactPolynomial exact_poly; // monic, zero constant term
    RealPolynomial poly;
    double lambda = 0.0;
    int d = 0;
    double rho = 0.0;
    Conjugation conjugation;
    ExactPolynomial original;

    bool exact() const { return conjugation.exact; }
};

enum class FixedPointClass { repelling, attracting, superattracting, indifferent };

inline const char *to_string(FixedPointClass c)
{
    switch (c) {
    case FixedPointClass::repelling:
        return "repelling";
    case FixedPointClass::attracting:
        return "attracting";
    case FixedPointClass::superattracting:
        return "superattracting";
    case FixedPointClass::indifferent:
        return "indifferent";
    }
    return "?";
}

struct FixedPointRecord
{
    cplx location;
    cplx multiplier;
    FixedPointClass cls = FixedPointClass::repelling;
    int superattract_order = 0;
    double residual = 0.0;
};

enum class JuliaKind { interval, real_cantor, circle, non_real, unknown };

inline const char *to_string(JuliaKind k)
{
    switch (k) {
    case JuliaKind::interval:
        return "interval";
    case JuliaKind::real_cantor:
        return "real-cantor";
    case JuliaKind::circle:
        return "circle";
    case JuliaKind::non_real:
        return "non-real";
    case JuliaKind::unknown:
        return "unknown";
    }
    return "?";
}

struct EndpointDynamics
{
    std::string pattern; // "fixed/fixed", "fixed/preimage", "2-cycle"
    double image_of_a = 0.0;
    double image_of_b = 0.0;
};

struct JuliaGeometry
{
    JuliaKind kind = JuliaKind::unknown;
    std::optional<std::pair<double, double>> hull;
    std::optional<EndpointDynamics> endpoints;
    std::optional<cplx> circle_center;
    double circle_radius = 0.0;
    std::string note;
};

struct AngularSector
{
    double alpha = 0.0;
    double beta = 0.0;

    AngularSector(double a, double b) : alpha(a), beta(b)
    {
        if (!(b > a) || b - a > 2.0 * std::numbers::pi + 1e-15) {
            throw ConfigError("sector needs 0 < beta - alpha <= 2*pi");
        }
    }

    bool contains(cplx z) const
    {
        if (z == cplx(0.0)) {
            return false;
        }
        double t = std::arg(z);
        while (t <= alpha) {
            t += 2.0 * std::numbers::pi;
        }
        while (t > alpha + 2.0 * std::numbers::pi) {
            t -= 2.0 * std::numbers::pi;
        }
        return t < beta;
    }
};

enum class ExceptionalClass { monomial_conjugate, chebyshev_conjugate, generic };

inline const char *to_string(ExceptionalClass c)
{
    switch (c) {
    case ExceptionalClass::monomial_conjugate:
        return "monomial-conjugate";
    case ExceptionalClass::chebyshev_conjugate:
        return "chebyshev-conjugate";
    case ExceptionalClass::generic:
        return "generic";
    }
    return "?";
}

namespace detail
{

// e^w - 1 without cancellation for small w.
inline cplx expm1(cplx w)
{
    const cplx h = 0.5 * w;
    return 2.0 * std::sinh(h) * std::exp(h);
}

inline double coeff_scale(const RealPolynomial &p)
{
    double s = 1.0;
    for (double c : p.coefficients()) {
        s = std::max(s, std::abs(c));
    }
    return s;
}

inline bool is_real(cplx z, double tol = 1e-9)
{
    return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z));
}

inline int superattracting_order(const RealPolynomial &p, double w0)
{
    RealPolynomial q = p.taylor_shift(w0);
    const double s = coeff_scale(q);
    for (int k = 1; k <= q.degree(); ++k) {
        if (std::abs(q.coeff(k)) > 1e-10 * s) {
            return k;
        }
    }
    return q.degree();
}

// Snap a numerically found real fixed point to an exact rational one when
// possible so repeated runs and reports see clean values.
inline std::optional<Rational> exact_fixed_point(const ExactPolynomial &p, double x)
{
    const Rational r = rationalize(x, 1000000);
    if (std::abs(to_double(r) - x) > 1e-8 * std::max(1.0, std::abs(x))) {
        return std::nullopt;
    }
    if (p(r) == r) {
        return r;
    }
    return std::nullopt;
}

inline Polynomial<double> chebyshev_t(int d)
{
    // T_0 = 1, T_1 = x, T_{n+1} = 2x T_n - T_{n-1}
    Polynomial<double> t0{1.0}, t1{0.0, 1.0}, two_x{0.0, 2.0};
    if (d == 0) {
        return t0;
    }
    for (int n = 1; n < d; ++n) {
        Polynomial<double> t2 = two_x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

inline ExactPolynomial chebyshev_t_exact(int d)
{
    ExactPolynomial t0{Rational(1)}, t1{Rational(0), Rational(1)}, two_x{Rational(0), Rational(2)};
    if (d == 0) {
        return t0;
    }
    for (int n = 1; n < d; ++n) {
        ExactPolynomial t2 = two_x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

} // namespace detail

// All d fixed points (roots of p(z) - z with multiplicity), classified by the
// modulus of the multiplier.
inline std::vector<FixedPointRecord> fixed_points(const ExactPolynomial &pe)
{
    const RealPolynomial p = to_real(pe);
    validate_real_polynomial(p);
    const RealPolynomial g = p - RealPolynomial{0.0, 1.0};
    const RealPolynomial dp = p.derivative();
    std::vector<FixedPointRecord> out;
    const double scale = detail::coeff_scale(p);
    for (cplx z : polynomial_roots(g)) {
        if (detail::is_real(z, 1e-10)) {
            z = cplx(z.real(), 0.0);
            if (auto r = detail::exact_fixed_point(pe, z.real())) {
                z = cplx(to_double(*r), 0.0);
            }
        }
        FixedPointRecord rec;
        rec.location = z;
        rec.multiplier = dp(z);
        rec.residual = std::abs(p(z) - z);
        if (rec.residual > 1e-6 * scale * std::max(1.0, std::pow(std::abs(z), p.degree()))) {
            throw NumericError(detail::concat("fixed point solver residual ", rec.residual, " at ", z));
        }
        const double m = std::abs(rec.multiplier);
        if (m < 1e-10) {
            rec.cls = FixedPointClass::superattracting;
            rec.multiplier = 0.0;
            rec.superattract_order = detail::superattracting_order(p, z.real());
        } else if (m < 1.0 - 1e-12) {
            rec.cls = FixedPointClass::attracting;
        } else if (m > 1.0 + 1e-12) {
            rec.cls = FixedPointClass::repelling;
        } else {
            rec.cls = FixedPointClass::indifferent;
        }
        out.push_back(rec);
    }
    std::sort(out.begin(), out.end(), [](const FixedPointRecord &a, const FixedPointRecord &b) {
        if (a.location.real() != b.location.real()) {
            return a.location.real() > b.location.real();
        }
        return a.location.imag() < b.location.imag();
    });
    return out;
}

inline std::vector<FixedPointRecord> fixed_points(const NormalizedSystem &sys)
{
    return fixed_points(sys.exact_poly);
}

// Real repelling fixed point with the largest real multiplier.
inline cplx auto_fixed_point(const ExactPolynomial &p)
{
    std::optional<FixedPointRecord> best;
    for (const auto &fp : fixed_points(p)) {
        if (!detail::is_real(fp.location) || !detail::is_real(fp.multiplier)) {
            continue;
        }
        if (fp.multiplier.real() <= 1.0) {
            continue;
        }
        if (!best || fp.multiplier.real() > best->multiplier.real()) {
            best = fp;
        }
    }
    if (!best) {
        throw NormalizationError("no real fixed point with real multiplier > 1", cplx(0.0));
    }
    return best->location;
}

// Conjugates p so that the chosen fixed point moves to 0 and the result is
// monic: q(w) = c*(p(xi + w/c) - xi) with c^(d-1) = leading coefficient.
inline NormalizedSystem normalize(const ExactPolynomial &p, cplx fixed_point)
{
    const RealPolynomial pr = to_real(p);
    validate_real_polynomial(pr);
    const int d = p.degree();
    const double scale = detail::coeff_scale(pr);
    const double xi_d = fixed_point.real();
    const cplx value = pr(fixed_point);
    const cplx mult = pr.derivative()(fixed_point);
    if (std::abs(value - fixed_point) > 1e-9 * scale * std::max(1.0, std::pow(std::abs(fixed_point), d))) {
        throw NormalizationError(detail::concat("point ", fixed_point, " is not a fixed point (p(x) = ", value, ")"),
                                 mult);
    }
    if (std::abs(fixed_point.imag()) > 1e-12 * std::max(1.0, std::abs(fixed_point))) {
        throw NormalizationError("fixed point is not real", mult);
    }
    if (std::abs(mult.imag()) > 1e-12 || mult.real() <= 1.0) {
        throw NormalizationError(detail::concat("multiplier ", mult.real(), " is not real and > 1"), mult);
    }

    Conjugation conj;
    Rational xi;
    if (auto r = detail::exact_fixed_point(p, xi_d)) {
        xi = *r;
    } else {
        xi = Rational(xi_d);
        conj.exact = false;
    }
    const Rational lead = p.leading();
    Rational c;
    if (auto r = exact_rational_root(lead, static_cast<unsigned>(d - 1))) {
        c = *r;
    } else {
        const double ld = to_double(lead);
        if (ld < 0.0 && (d - 1) % 2 == 0) {
            throw NormalizationError("leading coefficient cannot be scaled to 1 by a real conjugacy", mult);
        }
        const double cd = ld < 0.0 ? -std::pow(-ld, 1.0 / (d - 1)) : std::pow(ld, 1.0 / (d - 1));
        c = Rational(cd);
        conj.exact = false;
    }
    // q(w) = c*(p(xi + w/c) - xi)
    ExactPolynomial shifted = p.taylor_shift(xi);
    std::vector<Rational> q = shifted.coefficients();
    q.resize(static_cast<std::size_t>(d) + 1, Rational(0));
    q[0] -= xi;
    Rational cpow(1);
    for (int i = 0; i <= d; ++i) {
        q[i] = q[i] * c / cpow;
        cpow *= c;
    }
    q[0] = 0; // exact by construction on the rational path
    q[d] = 1;
    NormalizedSystem sys;
    sys.exact_poly = ExactPolynomial(q);
    sys.poly = to_real(sys.exact_poly);
    sys.d = d;
    sys.lambda = to_double(sys.exact_poly.coeff(1));
    if (!(sys.lambda > 1.0)) {
        throw NormalizationError("normalized multiplier is not > 1", cplx(sys.lambda));
    }
    sys.rho = std::log(static_cast<double>(d)) / std::log(sys.lambda);
    conj.scale_exact = c;
    conj.shift_exact = xi;
    conj.scale = to_double(c);
    conj.shift = to_double(xi);
    sys.conjugation = conj;
    sys.original = p;
    return sys;
}

inline NormalizedSystem normalize(const ExactPolynomial &p)
{
    return normalize(p, auto_fixed_point(p));
}

// Inverse of normalize: p(z) = xi + q(c*(z - xi))/c.
inline RealPolynomial denormalize(const NormalizedSystem &sys)
{
    const double c = sys.conjugation.scale, xi = sys.conjugation.shift;
    const RealPolynomial inner{-c * xi, c};
    RealPolynomial q = sys.poly.compose(inner);
    std::vector<double> r = q.coefficients();
    for (double &v : r) {
        v /= c;
    }
    r[0] += xi;
    return RealPolynomial(r);
}

// Builds the system directly from a monic polynomial with p(0)=0.
inline NormalizedSystem make_system(const ExactPolynomial &p)
{
    if (p.coeff(0) != 0 || !p.is_monic()) {
        throw ConfigError("make_system expects a monic polynomial with p(0)=0");
    }
    return normalize(p, cplx(0.0));
}

namespace detail
{

// Centre c when p(z) = (z - c)^d + c.
inline std::optional<double> monomial_center(const NormalizedSystem &sys)
{
    const int d = sys.d;
    const Rational c = -sys.exact_poly.coeff(d - 1) / Rational(d);
    const ExactPolynomial q = sys.exact_poly.taylor_shift(c);
    for (int i = 1; i < d; ++i) {
        if (q.coeff(i) != 0) {
            return std::nullopt;
        }
    }
    if (q.coeff(0) != c) {
        return std::nullopt;
    }
    return to_double(c);
}

// (alpha, beta) with p(z) = (T_d(alpha z + beta) - beta)/alpha, matched
// coefficient by coefficient.
inline std::optional<std::pair<double, double>> chebyshev_parameters(const NormalizedSystem &sys)
{
    const int d = sys.d;
    const ExactPolynomial t = chebyshev_t_exact(d);
    for (int sgn : {1, -1}) {
        if (sgn < 0 && (d - 1) % 2 != 0) {
            continue;
        }
        const Rational alpha = Rational(sgn, 2);
        const Rational beta = alpha * sys.exact_poly.coeff(d - 1) / Rational(d);
        ExactPolynomial cand = t.compose(ExactPolynomial{beta, alpha});
        std::vector<Rational> c = cand.coefficients();
        c[0] -= beta;
        for (auto &v : c) {
            v /= alpha;
        }
        if (ExactPolynomial(c) == sys.exact_poly) {
            return std::make_pair(to_double(alpha), to_double(beta));
        }
    }
    return std::nullopt;
}

inline bool near(double a, double b, double scale)
{
    return std::abs(a - b) <= 1e-9 * std::max(1.0, scale);
}

// p^{-1}([a,b]) within [a,b] and real, checked on a grid of target points.
inline bool backward_invariant(const RealPolynomial &p, double a, double b, int grid = 400)
{
    const double w = b - a;
    const double tol = 1e-7 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    for (int i = 0; i <= grid; ++i) {
        const double x = a + w * i / grid;
        for (const cplx &r : preimages(p, cplx(x))) {
            if (std::abs(r.imag()) > 1e-6 * std::max(1.0, w)) {
                return false;
            }
            if (r.real() < a - tol || r.real() > b + tol) {
                return false;
            }
        }
    }
    return true;
}

inline std::vector<double> real_roots(const RealPolynomial &p)
{
    std::vector<double> r;
    if (p.degree() < 1) {
        return r;
    }
    for (const cplx &z : polynomial_roots(p)) {
        if (is_real(z, 1e-8)) {
            r.push_back(z.real());
        }
    }
    return r;
}

} // namespace detail

inline JuliaGeometry real_julia_interval(const NormalizedSystem &sys)
{
    JuliaGeometry g;
    const RealPolynomial &p = sys.poly;
    const int d = sys.d;
    if (auto c = detail::monomial_center(sys)) {
        g.kind = JuliaKind::circle;
        g.circle_center = cplx(*c);
        g.circle_radius = 1.0;
        return g;
    }
    const double scale = detail::coeff_scale(p);
    if (d == 2) {
        // w = z + b/2 gives w^2 + c with c = b/2 - b^2/4.
        const double b = p.coeff(1);
        const double c = b / 2.0 - b * b / 4.0;
        const double beta = (1.0 + std::sqrt(1.0 - 4.0 * c)) / 2.0;
        const double lo = -beta - b / 2.0, hi = beta - b / 2.0;
        if (c < -2.0 && !detail::near(c, -2.0, 1.0)) {
            g.kind = JuliaKind::real_cantor;
        } else if (detail::near(c, -2.0, 1.0)) {
            g.kind = JuliaKind::interval;
        } else {
            g.kind = JuliaKind::non_real;
            return g;
        }
        g.hull = std::make_pair(lo, hi);
        EndpointDynamics e;
        e.image_of_a = p(lo);
        e.image_of_b = p(hi);
        const bool a_fixed = detail::near(e.image_of_a, lo, scale);
        const bool b_fixed = detail::near(e.image_of_b, hi, scale);
        e.pattern = (a_fixed && b_fixed) ? "fixed/fixed" : (a_fixed || b_fixed) ? "fixed/preimage" : "2-cycle";
        g.endpoints = e;
        return g;
    }

    // Candidate endpoints: real fixed points, real 2-cycles, real preimages of
    // real fixed points.
    std::vector<double> cand;
    const RealPolynomial id{0.0, 1.0};
    const auto fixed = detail::real_roots(p - id);
    cand.insert(cand.end(), fixed.begin(), fixed.end());
    const auto two = detail::real_roots(p.compose(p) - id);
    cand.insert(cand.end(), two.begin(), two.end());
    for (double x : fixed) {
        for (const cplx &r : preimages(p, cplx(x))) {
            if (detail::is_real(r, 1e-8)) {
                cand.push_back(r.real());
            }
        }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end(), [&](double a, double b) { return detail::near(a, b, scale); }),
               cand.end());
    auto in_set = [&](double x, double a, double b) { return detail::near(x, a, scale) || detail::near(x, b, scale); };
    std::optional<std::pair<double, double>> best;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = i + 1; j < cand.size(); ++j) {
            const double a = cand[i], b = cand[j];
            if (!in_set(p(a), a, b) || !in_set(p(b), a, b)) {
                continue;
            }
            if (best && b - a >= best->second - best->first) {
                continue;
            }
            if (detail::backward_invariant(p, a, b)) {
                best = std::make_pair(a, b);
            }
        }
    }
    if (!best) {
        g.kind = JuliaKind::non_real;
        g.note = "no backward-invariant real interval among periodic candidates";
        return g;
    }
    const auto [a, b] = *best;
    g.hull = best;
    EndpointDynamics e;
    e.image_of_a = p(a);
    e.image_of_b = p(b);
    const bool a_fixed = detail::near(e.image_of_a, a, scale);
    const bool b_fixed = detail::near(e.image_of_b, b, scale);
    e.pattern = (a_fixed && b_fixed) ? "fixed/fixed" : (a_fixed || b_fixed) ? "fixed/preimage" : "2-cycle";
    g.endpoints = e;

    // Critical values decide interval vs Cantor; critical orbits are followed
    // for up to 1000 steps to confirm escape.
    const double escape = 1.0 + std::max(2.0, [&] {
        double s = 0.0;
        for (double c : p.coefficients()) {
            s += std::abs(c);
        }
        return s;
    }());
    int on_endpoint = 0, escaping = 0, other = 0;
    for (const cplx &cp : polynomial_roots(p.derivative())) {
        if (!detail::is_real(cp, 1e-8)) {
            ++other;
            continue;
        }
        const double v = p(cp.real());
        if (in_set(v, a, b)) {
            ++on_endpoint;
            continue;
        }
        double z = cp.real();
        bool esc = false;
        for (int it = 0; it < 1000; ++it) {
            z = p(z);
            if (std::abs(z) > escape) {
                esc = true;
                break;
            }
        }
        esc ? ++escaping : ++other;
    }
    if (other == 0 && escaping == 0) {
        g.kind = JuliaKind::interval;
    } else if (other == 0 && on_endpoint == 0) {
        g.kind = JuliaKind::real_cantor;
    } else {
        g.kind = JuliaKind::unknown;
        g.note = "critical orbits neither all on the endpoints nor all escaping";
    }
    return g;
}

inline ExceptionalClass classify_exceptional(const NormalizedSystem &sys)
{
    if (detail::monomial_center(sys)) {
        return ExceptionalClass::monomial_conjugate;
    }
    // Critical points land on the endpoint set in at most two steps and the
    // hull is the whole Julia set.
    const JuliaGeometry g = real_julia_interval(sys);
    if (g.kind != JuliaKind::interval || !g.hull) {
        return ExceptionalClass::generic;
    }
    const auto [a, b] = *g.hull;
    const double scale = detail::coeff_scale(sys.poly);
    for (const cplx &cp : polynomial_roots(sys.poly.derivative())) {
        if (!detail::is_real(cp, 1e-8)) {
            return ExceptionalClass::generic;
        }
        double z = cp.real();
        bool hit = false;
        for (int step = 0; step < 2 && !hit; ++step) {
            z = sys.poly(z);
            hit = detail::near(z, a, scale) || detail::near(z, b, scale);
        }
        if (!hit) {
            return ExceptionalClass::generic;
        }
    }
    return ExceptionalClass::chebyshev_conjugate;
}

// Exact Poincare function for the two exceptional families.
inline std::optional<std::function<cplx(cplx)>> closed_form_oracle(const NormalizedSystem &sys)
{
    if (auto c = detail::monomial_center(sys)) {
        const double cc = *c;
        return std::function<cplx(cplx)>([cc](cplx z) { return -cc * detail::expm1(-z / cc); });
    }
    const auto params = detail::chebyshev_parameters(sys);
    if (!params) {
        return std::nullopt;
    }
    const double alpha = params->first, beta = params->second;
    if (std::abs(std::abs(beta) - 1.0) < 1e-12) {
        const double k = 2.0 * alpha * beta;
        return std::function<cplx(cplx)>([=](cplx z) {
            const cplx r = std::sqrt(k * z);
            // cosh(r) - 1 = 2 sinh^2(r/2), accurate for small r
            const cplx s = std::sinh(0.5 * r);
            return beta * 2.0 * s * s / alpha;
        });
    }
    if (std::abs(beta) < 1.0) {
        const double th = std::acos(beta), st = std::sin(th);
        const double lam = sys.d * std::sin(sys.d * th) / st;
        if (std::abs(lam - sys.lambda) > 1e-9 * sys.lambda) {
            return std::nullopt;
        }
        return std::function<cplx(cplx)>([=](cplx z) {
            // cos(th - u) - cos(th) = 2 sin(u/2) sin(th - u/2)
            const cplx u = alpha * z / st;
            return 2.0 * std::sin(0.5 * u) * std::sin(th - 0.5 * u) / alpha;
        });
    }
    return std::nullopt;
}

struct MultiplierAuditEntry
{
    double location = 0.0;
    double abs_multiplier = 0.0;
    std::string position; // interior, endpoint
    double bound = 0.0;
    std::string verdict; // pass, equality, violation
    bool chebyshev_flag = false;
};

struct AhlforsCheck
{
    int attracting = 0;
    double gamma = 0.0;
    int bound = 0;
    bool holds = true;
};

struct MultiplierAudit
{
    std::vector<MultiplierAuditEntry> entries;
    AhlforsCheck ahlfors;
    bool any_violation = false;
    bool any_equality = false;
};

// Number of attracting fixed points against floor(2 log d / log gamma),
// gamma = max |p'| over the fixed points.
inline AhlforsCheck ahlfors_check(const NormalizedSystem &sys)
{
    AhlforsCheck a;
    for (const auto &fp : fixed_points(sys)) {
        a.gamma = std::max(a.gamma, std::abs(fp.multiplier));
        if (fp.cls == FixedPointClass::attracting || fp.cls == FixedPointClass::superattracting) {
            ++a.attracting;
        }
    }
    const double b = 2.0 * std::log(static_cast<double>(sys.d)) / std::log(a.gamma);
    a.bound = static_cast<int>(std::floor(b + 1e-12));
    a.holds = a.attracting <= a.bound;
    return a;
}

inline MultiplierAudit audit_multipliers(const NormalizedSystem &sys)
{
    const JuliaGeometry g = real_julia_interval(sys);
    if ((g.kind != JuliaKind::interval && g.kind != JuliaKind::real_cantor) || !g.hull) {
        throw NotApplicable(detail::concat("multiplier audit needs a real Julia set, got ", to_string(g.kind)));
    }
    const auto [a, b] = *g.hull;
    const double scale = std::max(std::abs(a), std::abs(b));
    const bool cheb = classify_exceptional(sys) == ExceptionalClass::chebyshev_conjugate;
    MultiplierAudit out;
    for (const auto &fp : fixed_points(sys)) {
        if (!detail::is_real(fp.location)) {
            continue;
        }
        const double x = fp.location.real();
        MultiplierAuditEntry e;
        e.location = x;
        e.abs_multiplier = std::abs(fp.multiplier);
        if (detail::near(x, a, scale) || detail::near(x, b, scale)) {
            e.position = "endpoint";
            e.bound = static_cast<double>(sys.d) * sys.d;
        } else if (x > a && x < b) {
            e.position = "interior";
            e.bound = static_cast<double>(sys.d);
        } else {
            continue;
        }
        if (std::abs(e.abs_multiplier - e.bound) < 1e-9) {
            e.verdict = "equality";
            e.chebyshev_flag = cheb;
            out.any_equality = true;
        } else if (e.abs_multiplier > e.bound) {
            e.verdict = "pass";
        } else {
            e.verdict = "violation";
            out.any_violation = true;
        }
        out.entries.push_back(e);
    }
    out.ahlfors = ahlfors_check(sys);
    return out;
}

} // namespace poincare

#endif
