#ifndef POINCARE_ZEROS_ZETA_HPP
#define POINCARE_ZEROS_ZETA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include <poincare/asymptotics.hpp>
#include <poincare/boettcher_green.hpp>
#include <poincare/harmonic_measure.hpp>
#include <poincare/poincare_series.hpp>
#include <poincare/poly_core.hpp>
#include <poincare/rational.hpp>
#include <poincare/roots.hpp>
#include <poincare/series.hpp>

namespace poincare
{

struct Zero
{
    cplx x;          // f(x) = 0
    double xi = 0.0; // -Re x
    int multiplicity = 1;
    double residual = 0.0;
};

struct ZeroList
{
    std::vector<Zero> zeros; // ascending xi, origin excluded
    double X = 0.0;
    std::string method;
    double univalence_radius = 0.0;
    std::size_t leaves = 0;
    bool self_similar = true;
    int self_similar_misses = 0;
    double max_residual = 0.0;
    std::vector<std::pair<double, double>> gaps; // unresolved brackets (bisection only)
};

struct CountingProfile
{
    std::vector<double> u;
    std::vector<double> x;
    std::vector<long> N;
    std::vector<double> scaled; // x^-rho N
    double oscillation = 0.0;
    double mean = 0.0;
};

struct HadamardData
{
    int k = 0;
    std::vector<Rational> e_exact;
    std::vector<double> e;
    bool exact = true;
};

struct ZetaReport
{
    cplx s;
    cplx partial;
    cplx tail_estimate;
    double tail_bound = 0.0;
    cplx value;
    double X = 0.0;
    std::size_t terms = 0;
    bool multiplicity = false;
    double C_max = 0.0;
    std::pair<double, double> fit_window;
    HadamardData hadamard;
    double sigma = 0.0;
};

struct BridgeReport
{
    double x = 0.0;
    int n = 0;
    double t = 0.0;
    Estimate mass;       // mu(f(B(0,t)))
    double value = 0.0;  // d^n mu(f(B(0,t)))
    double sigma = 0.0;  // d^n stderr
    double value_next = 0.0;
    double sigma_next = 0.0;
    long count_distinct = 0;
    long count_multiplicity = 0;
    long count_preimages = 0; // with multiplicity, origin included
    double exact_tree = 0.0;  // d^n mu_n(f(B)) from the preimages of 0
    double z_score = 0.0;
    double z_next = 0.0;
    bool stable = false;
    bool match = false;
};

struct MellinPoint
{
    cplx s;
    cplx lhs;
    cplx rhs;
    double defect = 0.0; // relative
};

struct MellinIdentityReport
{
    std::vector<MellinPoint> points;
    double max_defect = 0.0;
};

struct PoleApproach
{
    double delta = 0.0;
    cplx s;
    cplx zeta;
    cplx M; // M_mu(-s)
    cplx difference; // zeta - M
    cplx sum;        // zeta + M
};

struct PoleCancellation
{
    int k = 0;
    std::vector<PoleApproach> path;
    double ratio_difference = 0.0;
    double ratio_sum = 0.0;
};

namespace detail
{

// Largest r with sum n |a_n| r^(n-1) <= 3/2, so |f'(x) - 1| <= 1/2 and f is
// injective on |x| <= r.
inline double univalence_radius(const PowerSeries &s)
{
    auto excess = [&](double r) {
        double acc = 0.0, pw = 1.0;
        for (std::size_t n = 2; n < s.coeffs.size(); ++n) {
            pw *= r;
            acc += static_cast<double>(n) * std::abs(s.coeffs[n]) * pw;
        }
        return acc;
    };
    double lo = 0.0, hi = std::min(0.5 * s.r_conv, 64.0);
    if (excess(hi) <= 0.5) {
        return hi;
    }
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) <= 0.5 ? lo : hi) = mid;
    }
    return lo;
}

// Solution of f(x) = w with |x| <= R inside the univalence disc, if any.
inline std::optional<cplx> local_inverse(const PowerSeries &s, cplx w, double R, double r0)
{
    if (std::abs(w) > 1.5 * R * (1.0 + 1e-12) + 1e-300) {
        return std::nullopt;
    }
    cplx x = w;
    for (int it = 0; it < 100; ++it) {
        const auto [v, dv] = series::eval_with_derivative(s.coeffs, x);
        const cplx dx = (v - w) / dv;
        x -= dx;
        if (std::abs(x) > 2.0 * r0) {
            return std::nullopt;
        }
        if (std::abs(dx) <= 1e-16 * std::abs(x) + 1e-300) {
            break;
        }
    }
    if (std::abs(x) > R * (1.0 + 1e-12)) {
        return std::nullopt;
    }
    return x;
}

inline bool real_negative_julia(const NormalizedSystem &sys, JuliaGeometry &geo)
{
    geo = real_julia_interval(sys);
    if (geo.kind != JuliaKind::interval && geo.kind != JuliaKind::real_cantor) {
        return false;
    }
    return geo.hull && geo.hull->second <= 1e-9;
}

inline std::vector<Zero> merge_zeros(std::vector<cplx> raw, double rel)
{
    std::sort(raw.begin(), raw.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
    std::vector<Zero> out;
    for (const cplx &x : raw) {
        if (!out.empty() && std::abs(x - out.back().x) <= rel * std::abs(x)) {
            ++out.back().multiplicity;
            continue;
        }
        Zero z;
        z.x = x;
        z.xi = -x.real();
        out.push_back(z);
    }
    return out;
}

inline void finish_zero_list(const NormalizedSystem &sys, const PowerSeries &s, ZeroList &zl)
{
    for (auto &z : zl.zeros) {
        z.residual = std::abs(eval_f(sys, s, z.x));
        zl.max_residual = std::max(zl.max_residual, z.residual);
    }
    zl.self_similar = true;
    zl.self_similar_misses = 0;
    for (const auto &z : zl.zeros) {
        const double target = sys.lambda * z.xi;
        if (target > zl.X) {
            continue;
        }
        const auto it = std::lower_bound(zl.zeros.begin(), zl.zeros.end(), target * (1.0 - 1e-7),
                                         [](const Zero &a, double v) { return a.xi < v; });
        if (it == zl.zeros.end() || std::abs(it->xi - target) > 1e-7 * target) {
            zl.self_similar = false;
            ++zl.self_similar_misses;
        }
    }
}

} // namespace detail

// Zeros of f in [-X, 0) through the inverse branches of p: f(x) = w with
// |x| <= R holds iff f(x / lambda) = b for a preimage b of w, down to the
// univalence disc where f is inverted by Newton.
inline ZeroList find_real_zeros(const NormalizedSystem &sys, const PowerSeries &s, double X,
                                std::size_t leaf_budget = std::size_t(1) << 22)
{
    JuliaGeometry geo;
    if (!detail::real_negative_julia(sys, geo)) {
        throw NotApplicable(detail::concat("Julia set is ", to_string(geo.kind),
                                           "; zeros are not confined to the negative real axis"));
    }
    if (!(X > 0.0)) {
        throw ConfigError("search bound must be positive");
    }
    ZeroList zl;
    zl.X = X;
    zl.method = "preimage-tree";
    const double r0 = detail::univalence_radius(s);
    zl.univalence_radius = r0;
    const int depth = X <= r0 ? 0 : static_cast<int>(std::ceil(std::log(X / r0) / std::log(sys.lambda)));
    if (std::pow(static_cast<double>(sys.d), depth) > static_cast<double>(leaf_budget)) {
        throw BudgetExceeded(detail::concat("search to X=", X, " needs d^", depth, " leaves"));
    }
    std::vector<cplx> raw;
    std::function<void(cplx, int)> solve = [&](cplx w, int level) {
        const double scale = std::pow(sys.lambda, level);
        const double R = X / scale;
        if (level == depth) {
            ++zl.leaves;
            if (auto x = detail::local_inverse(s, w, R, r0)) {
                const cplx z = *x * scale;
                if (std::abs(z) > 1e-9) {
                    raw.push_back(z);
                }
            }
            return;
        }
        for (const cplx &b : preimages(sys.poly, w)) {
            solve(b, level + 1);
        }
    };
    solve(cplx(0.0), 0);
    for (cplx &z : raw) {
        if (std::abs(z.imag()) <= 1e-9 * std::abs(z)) {
            z = cplx(z.real(), 0.0);
        }
    }
    zl.zeros = detail::merge_zeros(raw, 1e-7);
    detail::finish_zero_list(sys, s, zl);
    return zl;
}

// Cross-check: sign changes of f(-t) on a log-uniform grid, refined by
// bisection. Even-order zeros show up as flagged gaps, not as zeros.
inline ZeroList bisect_real_zeros(const NormalizedSystem &sys, const PowerSeries &s, double X, int levels = 12)
{
    JuliaGeometry geo;
    if (!detail::real_negative_julia(sys, geo)) {
        throw NotApplicable(detail::concat("Julia set is ", to_string(geo.kind),
                                           "; zeros are not confined to the negative real axis"));
    }
    ZeroList zl;
    zl.X = X;
    zl.method = "bisection";
    const double r0 = detail::univalence_radius(s);
    zl.univalence_radius = r0;
    auto F = [&](double t) { return eval_f(sys, s, cplx(-t)).real(); };
    // d|f(-t)|/dt sign by central difference
    auto toward_zero = [&](double t, double ft) {
        const double h = 1e-7 * t;
        const double df = (F(t + h) - F(t - h)) / (2.0 * h);
        return df * ft < 0.0;
    };
    std::vector<cplx> raw;
    std::function<void(double, double, double, double, int)> scan = [&](double a, double b, double fa, double fb,
                                                                        int lvl) {
        if (lvl < 5) {
            const double m = std::sqrt(a * b);
            const double fm = F(m);
            scan(a, m, fa, fm, lvl + 1);
            scan(m, b, fm, fb, lvl + 1);
            return;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
                const double m = 0.5 * (a + b);
                const double fm = F(m);
                if ((fm < 0.0) == (fa < 0.0)) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            raw.push_back(cplx(-0.5 * (a + b), 0.0));
            return;
        }
        // |f| dips inside the bracket: possibly two close crossings or an even zero
        const double m = std::sqrt(a * b);
        const double fm = F(m);
        const bool dip = std::abs(fm) < std::min(std::abs(fa), std::abs(fb));
        if (!dip && !(toward_zero(a, fa) && !toward_zero(b, fb))) {
            return;
        }
        if (lvl >= levels) {
            zl.gaps.emplace_back(a, b);
            return;
        }
        scan(a, m, fa, fm, lvl + 1);
        scan(m, b, fm, fb, lvl + 1);
    };
    // log-uniform grid, ratio 1 + (lambda - 1) / lambda^3
    const double ratio = 1.0 + (sys.lambda - 1.0) / std::pow(sys.lambda, 3);
    double a = r0;
    double fa = F(a);
    while (a < X) {
        const double b = std::min(X, a * ratio);
        const double fb = F(b);
        scan(a, b, fa, fb, 0);
        a = b;
        fa = fb;
    }
    zl.zeros = detail::merge_zeros(raw, 1e-7);
    detail::finish_zero_list(sys, s, zl);
    return zl;
}

inline long count_zeros(const ZeroList &zl, double x, bool multiplicity = false)
{
    long n = 0;
    for (const auto &z : zl.zeros) {
        if (z.xi < x) {
            n += multiplicity ? z.multiplicity : 1;
        }
    }
    return n;
}

// N_f(x) on x = lambda^u over the last `periods` periods below X.
inline CountingProfile zero_counting(const NormalizedSystem &sys, const ZeroList &zl, int periods = 2,
                                     int samples_per_period = 64)
{
    CountingProfile p;
    const double L = std::log(sys.lambda);
    const double u_hi = std::log(zl.X) / L;
    const int n = periods * samples_per_period;
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = u_hi - periods + static_cast<double>(i) / samples_per_period;
        const double x = std::exp(u * L);
        const long N = count_zeros(zl, x);
        const double v = N * std::pow(x, -sys.rho);
        p.u.push_back(u);
        p.x.push_back(x);
        p.N.push_back(N);
        p.scaled.push_back(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sum += v;
    }
    p.oscillation = hi - lo;
    p.mean = sum / (n + 1);
    return p;
}

// k = floor(rho) decided exactly (lambda^k <= d), e_l from the Taylor series
// of log(f(z)/z) = sum (-1)^(l-1) e_l z^l / l.
inline HadamardData hadamard_data(const NormalizedSystem &sys, const PowerSeries &s)
{
    HadamardData h;
    const Rational lam = sys.exact_poly.coefficients()[1];
    Rational pw(1);
    while (true) {
        Rational next = pw * lam;
        if (next > Rational(sys.d)) {
            break;
        }
        pw = next;
        ++h.k;
    }
    if (h.k == 0) {
        return h;
    }
    const std::size_t len = static_cast<std::size_t>(h.k) + 1;
    if (s.exact_order < h.k + 1) {
        h.exact = false;
        std::vector<double> u(len, 0.0);
        for (std::size_t n = 1; n < len; ++n) {
            u[n] = s.coeffs[n + 1];
        }
        const auto l = series::log1p(u, len);
        for (int j = 1; j <= h.k; ++j) {
            h.e.push_back((j % 2 ? 1.0 : -1.0) * j * l[j]);
        }
        return h;
    }
    std::vector<Rational> u(len, Rational(0));
    for (std::size_t n = 1; n < len; ++n) {
        u[n] = s.exact[n + 1];
    }
    const auto l = series::log1p(u, len);
    for (int j = 1; j <= h.k; ++j) {
        Rational e = l[j] * Rational(j);
        if (j % 2 == 0) {
            e = -e;
        }
        h.e_exact.push_back(e);
        h.e.push_back(static_cast<double>(e));
    }
    return h;
}

// zeta_f(s) = sum xi^-s over the zero list plus the tail beyond X, estimated
// by continuing the last period geometrically with ratio lambda^(rho - s).
inline ZetaReport zeta(const NormalizedSystem &sys, const ZeroList &zl, cplx s, const PowerSeries &series_data,
                       bool multiplicity = false)
{
    if (s.real() <= sys.rho) {
        throw DivergenceError(detail::concat("zeta_f needs Re s > rho = ", sys.rho, ", got ", s));
    }
    ZetaReport r;
    r.s = s;
    r.X = zl.X;
    r.multiplicity = multiplicity;
    r.sigma = 1.0 / std::log(sys.lambda);
    r.hadamard = hadamard_data(sys, series_data);
    const double lo = zl.X / sys.lambda;
    cplx last = 0.0;
    for (const auto &z : zl.zeros) {
        const double w = multiplicity ? z.multiplicity : 1.0;
        const cplx term = w * std::exp(-s * std::log(z.xi));
        r.partial += term;
        if (z.xi >= lo) {
            last += term;
        }
        ++r.terms;
    }
    const cplx q = std::exp((sys.rho - s) * std::log(sys.lambda));
    r.tail_estimate = last * q / (1.0 - q);
    // envelope N(x) <= C x^rho over the last two periods
    r.fit_window = {zl.X / (sys.lambda * sys.lambda), zl.X};
    double N = 0.0;
    for (const auto &z : zl.zeros) {
        N += multiplicity ? z.multiplicity : 1.0;
        if (z.xi >= r.fit_window.first) {
            r.C_max = std::max(r.C_max, N * std::pow(z.xi, -sys.rho));
        }
    }
    r.tail_bound = std::abs(s) * r.C_max * std::pow(zl.X, sys.rho - s.real()) / (s.real() - sys.rho);
    r.value = r.partial + r.tail_estimate;
    return r;
}

// d^n mu(f(B(0, x lambda^-n))) against the zero counts, for n and n + 1.
inline BridgeReport counting_measure_bridge(const NormalizedSystem &sys, const PowerSeries &s, const ZeroList &zl,
                                            const MeasureSample &sample, double x, int k = 1)
{
    BridgeReport b;
    b.x = x;
    const double r0 = detail::univalence_radius(s);
    b.n = static_cast<int>(std::floor(std::log(x / r0) / std::log(sys.lambda))) + k;
    b.count_distinct = count_zeros(zl, x);
    b.count_multiplicity = count_zeros(zl, x, true);
    b.count_preimages = b.count_multiplicity + 1;
    auto mass = [&](const MeasureSample &m, int n) {
        const double t = x * std::pow(sys.lambda, -n);
        std::size_t hit = 0;
        for (const cplx &w : m.atoms) {
            hit += detail::local_inverse(s, w, t, r0).has_value();
        }
        const double N = static_cast<double>(m.atoms.size());
        const double p = hit / N;
        return Estimate{p, std::sqrt(std::max(p * (1.0 - p), 0.0) / N)};
    };
    b.t = x * std::pow(sys.lambda, -b.n);
    const double dn = std::pow(static_cast<double>(sys.d), b.n);
    b.mass = mass(sample, b.n);
    b.value = dn * b.mass.value;
    b.sigma = dn * b.mass.stderr_;
    const auto next = mass(sample, b.n + 1);
    b.value_next = sys.d * dn * next.value;
    b.sigma_next = sys.d * dn * next.stderr_;
    if (std::pow(static_cast<double>(sys.d), b.n) <= static_cast<double>(tree_budget)) {
        const auto tree = full_preimage_tree(sys, b.n, cplx(0.0));
        b.exact_tree = dn * mass(tree, b.n).value;
    }
    const double target = static_cast<double>(b.count_preimages);
    b.z_score = (b.value - target) / std::max(b.sigma, 1e-300);
    b.z_next = (b.value_next - target) / std::max(b.sigma_next, 1e-300);
    b.stable = std::abs(b.value_next - b.value) <= 3.0 * std::hypot(b.sigma, b.sigma_next);
    b.match = std::abs(b.z_score) <= 3.0 && std::abs(b.z_next) <= 3.0;
    return b;
}

namespace detail
{

// log f(x) for real x > 0, through G(f(x)) = d^m G(f(x / lambda^m)) once f is large.
inline double log_f_positive(const Pipeline &pl, double x)
{
    const auto &sys = pl.sys;
    int m = 0;
    double y = x;
    cplx fy;
    while (true) {
        try {
            fy = eval_f(sys, pl.series, cplx(y));
            if (std::abs(fy) < 1e150) {
                break;
            }
        } catch (const OverflowError &) {
        }
        y /= sys.lambda;
        ++m;
    }
    if (m == 0 && std::abs(fy) < 1e8) {
        return std::log(fy.real());
    }
    const double G = std::pow(static_cast<double>(sys.d), m) * green_real(sys, pl.boettcher, fy);
    if (G > 700.0) {
        return G;
    }
    const double h = std::exp(G);
    return G + std::log1p(pl.boettcher_inverse.tail(h) / h);
}

template <typename Fn>
cplx gauss_log_segment(const Fn &fn, double a, double b)
{
    using Q = boost::math::quadrature::gauss<double, 30>;
    const auto &xs = Q::abscissa();
    const auto &ws = Q::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] == 0.0) {
            acc += ws[i] * fn(c);
        } else {
            acc += ws[i] * (fn(c - h * xs[i]) + fn(c + h * xs[i]));
        }
    }
    return acc * h;
}

} // namespace detail

// Left side int_0^inf (log f(x) - log x - sum_l (-1)^(l-1) e_l x^l / l) x^(-s-1) dx,
// split into a series part on [0, x0], quadrature on [x0, X1] and the
// self-similar tail G(f(lambda x)) = d G(f(x)) beyond X1.
inline cplx mellin_lhs(const Pipeline &pl, const HadamardData &h, double xi1, cplx s)
{
    const auto &sys = pl.sys;
    if (!(s.real() > sys.rho && s.real() < h.k + 1)) {
        throw OutsideValidity(detail::concat("identity needs rho < Re s < k + 1, got ", s));
    }
    const double L = std::log(sys.lambda);
    const std::size_t len = pl.series.coeffs.size() - 1;
    std::vector<double> u(len, 0.0);
    for (std::size_t n = 1; n < len; ++n) {
        u[n] = pl.series.coeffs[n + 1];
    }
    const auto l = series::log1p(u, len);
    const double x0 = std::min({1.0, 0.25 * xi1, 0.25 * pl.series.r_conv});
    cplx near = 0.0;
    for (std::size_t n = static_cast<std::size_t>(h.k) + 1; n < len; ++n) {
        near += l[n] * std::exp((static_cast<double>(n) - s) * std::log(x0)) / (static_cast<double>(n) - s);
    }
    auto poly = [&](double x) {
        double acc = 0.0, pw = 1.0;
        for (int j = 1; j <= h.k; ++j) {
            pw *= x;
            acc += (j % 2 ? 1.0 : -1.0) * h.e[j - 1] * pw / j;
        }
        return acc;
    };
    // X1: first point of the lambda-grid from x0 with log f > 40
    double X1 = x0;
    while (detail::log_f_positive(pl, X1) < 40.0) {
        X1 *= sys.lambda;
    }
    auto integrand = [&](double t) {
        const double x = std::exp(t);
        return (detail::log_f_positive(pl, x) - t - poly(x)) * std::exp(-s * t);
    };
    cplx mid = 0.0;
    const int per = 8;
    const double t0 = std::log(x0), t1 = std::log(X1);
    const int segs = std::max(1, static_cast<int>(std::ceil((t1 - t0) / L * per)));
    for (int i = 0; i < segs; ++i) {
        mid += detail::gauss_log_segment(integrand, t0 + (t1 - t0) * i / segs, t0 + (t1 - t0) * (i + 1) / segs);
    }
    auto logf_only = [&](double t) { return detail::log_f_positive(pl, std::exp(t)) * std::exp(-s * t); };
    cplx period = 0.0;
    for (int i = 0; i < per; ++i) {
        period += detail::gauss_log_segment(logf_only, t1 + L * i / per, t1 + L * (i + 1) / per);
    }
    const cplx q = std::exp((sys.rho - s) * L);
    cplx far = period / (1.0 - q);
    const cplx X1s = std::exp(-s * t1);
    far -= X1s * (t1 / s + 1.0 / (s * s));
    for (int j = 1; j <= h.k; ++j) {
        far -= (j % 2 ? 1.0 : -1.0) * h.e[j - 1] / j * std::exp((static_cast<double>(j) - s) * t1) /
               (s - static_cast<double>(j));
    }
    return near + mid + far;
}

// Both sides of the Weierstrass-Mellin identity on a grid of s; the zeta side
// counts zeros with multiplicity, as the product does.
inline MellinIdentityReport mellin_identity_check(const Pipeline &pl, const ZeroList &zl, const std::vector<cplx> &s_grid)
{
    if (zl.zeros.empty()) {
        throw NotApplicable("no zeros to sum");
    }
    const auto h = hadamard_data(pl.sys, pl.series);
    MellinIdentityReport r;
    for (const cplx &s : s_grid) {
        MellinPoint m;
        m.s = s;
        m.lhs = mellin_lhs(pl, h, zl.zeros.front().xi, s);
        const auto z = zeta(pl.sys, zl, s, pl.series, true);
        m.rhs = z.value * std::numbers::pi / (s * std::sin(std::numbers::pi * s));
        m.defect = std::abs(m.lhs - m.rhs) / std::abs(m.rhs);
        r.max_defect = std::max(r.max_defect, m.defect);
        r.points.push_back(m);
    }
    return r;
}

// zeta_f(s) and M_mu(-s) approaching rho + 2 pi i k / log lambda from the right.
// ratio_* = |change of the combination| / |change of zeta| along the path.
inline PoleCancellation pole_cancellation(const NormalizedSystem &sys, const PowerSeries &s, const ZeroList &zl,
                                          const MeasureSample &sample, int k,
                                          const std::vector<double> &deltas = {0.1, 0.05, 0.02})
{
    PoleCancellation pc;
    pc.k = k;
    const double tau = 2.0 * std::numbers::pi * k / std::log(sys.lambda);
    for (double d : deltas) {
        PoleApproach a;
        a.delta = d;
        a.s = cplx(sys.rho + d, tau);
        a.zeta = zeta(sys, zl, a.s, s, true).value;
        a.M = mellin_mu(sys, sample, -a.s).M;
        a.difference = a.zeta - a.M;
        a.sum = a.zeta + a.M;
        pc.path.push_back(a);
    }
    const auto &first = pc.path.front();
    const auto &last = pc.path.back();
    const double dz = std::abs(last.zeta - first.zeta);
    pc.ratio_difference = std::abs(last.difference - first.difference) / dz;
    pc.ratio_sum = std::abs(last.sum - first.sum) / dz;
    return pc;
}

} // namespace poincare

#endif
