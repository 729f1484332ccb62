#ifndef POINCARE_ASYMPTOTICS_HPP
#define POINCARE_ASYMPTOTICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <poincare/boettcher_green.hpp>
#include <poincare/error.hpp>
#include <poincare/harmonic_measure.hpp>
#include <poincare/poincare_series.hpp>
#include <poincare/poly_core.hpp>

namespace poincare
{

// Everything needed to evaluate h = g o f for one system.
struct Pipeline
{
    NormalizedSystem sys;
    PowerSeries series;
    LaurentSeries boettcher;
    LaurentSeries boettcher_inverse;

    explicit Pipeline(NormalizedSystem s, int order = default_order, int laurent = default_laurent_order)
        : sys(std::move(s)), series(solve_taylor(sys, order)), boettcher(boettcher_coeffs(sys, laurent)),
          boettcher_inverse(boettcher_inverse_coeffs(boettcher))
    {
    }
};

struct PeriodicProfile
{
    double theta = 0.0;
    int samples_per_period = 0;
    int periods = 0;
    std::vector<double> u; // log_lambda |z|
    std::vector<cplx> F;
    double oscillation = 0.0; // peak-to-peak over all samples
    double noise_floor = 0.0;
    double periodicity_defect = 0.0;
    bool positive = true; // Re(z^rho F) > 0 at every sample
    double r_start = 0.0;
    double log_lambda = 1.0;
};

struct FourierEntry
{
    int k = 0;
    cplx f;
    double uncertainty = 0.0;
    std::string source;
    bool low_confidence = false;
};

struct FourierTable
{
    std::vector<FourierEntry> entries; // k = -K..K
    double alias_bound = 0.0;

    const FourierEntry &at(int k) const
    {
        const int K = static_cast<int>(entries.size() / 2);
        return entries.at(static_cast<std::size_t>(k + K));
    }
};

namespace detail
{

// z^a on the principal branch; profiled sectors never contain the cut.
inline cplx cpow(cplx z, cplx a)
{
    return std::exp(a * std::log(z));
}

inline cplx ray_point(double r, double theta)
{
    return std::polar(r, theta);
}

} // namespace detail

// Log h(z) = G(f(z)) with the branch continued from the positive real axis
// along the arc |z| = const, so that G(f(lambda z)) = d G(f(z)).
inline cplx log_h(const Pipeline &pl, double r, double theta)
{
    const double g0 = green_real(pl.sys, pl.boettcher, eval_f(pl.sys, pl.series, cplx(r)));
    if (!(g0 > 0.0)) {
        throw NotEscaping(detail::concat("f(", r, ") does not escape"));
    }
    cplx prev(g0, 0.0);
    if (theta == 0.0) {
        return prev;
    }
    const int steps = std::max(8, static_cast<int>(std::ceil(std::abs(theta) * std::abs(prev) * 4.0)));
    for (int i = 1; i <= steps; ++i) {
        const cplx z = detail::ray_point(r, theta * i / steps);
        const auto g = green(pl.sys, pl.boettcher, eval_f(pl.sys, pl.series, z));
        if (!g.escaping) {
            throw NotEscaping(detail::concat("f(", z, ") does not escape"));
        }
        const double twopi = 2.0 * std::numbers::pi;
        const double j = std::round((prev.imag() - g.G.imag()) / twopi);
        prev = g.G + cplx(0.0, j * twopi);
    }
    return prev;
}

// Smallest radius on the ray with Re G(f(z)) >= target.
inline double profile_start(const Pipeline &pl, double theta, double target = 1.0)
{
    const double step = std::pow(pl.sys.lambda, 1.0 / 16.0);
    double r = 1e-3;
    double last = -1.0;
    for (int i = 0; i < 4000; ++i) {
        cplx z = detail::ray_point(r, theta);
        double g = 0.0;
        try {
            g = green_real(pl.sys, pl.boettcher, eval_f(pl.sys, pl.series, z));
        } catch (const OverflowError &) {
            g = std::numeric_limits<double>::infinity();
        }
        if (g >= target) {
            return r;
        }
        last = g;
        r *= step;
    }
    throw NotEscaping(detail::concat("ray theta=", theta, " does not escape (last Re G = ", last, ")"));
}

inline double peak_to_peak(const std::vector<cplx> &v)
{
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            m = std::max(m, std::abs(v[i] - v[j]));
        }
    }
    return m;
}

// F(u + i theta/log lambda) = z^{-rho} G(f(z)) at z = lambda^u e^{i theta}.
inline PeriodicProfile extract_F(const Pipeline &pl, double theta = 0.0, int periods = 3,
                                 int samples_per_period = 64, std::optional<double> r_start = std::nullopt)
{
    if (periods < 1 || samples_per_period < 1) {
        throw ConfigError("profile needs periods >= 1 and samples >= 1");
    }
    const auto &sys = pl.sys;
    PeriodicProfile p;
    p.theta = theta;
    p.periods = periods;
    p.samples_per_period = samples_per_period;
    p.r_start = r_start.value_or(profile_start(pl, theta));
    const double L = std::log(sys.lambda);
    p.log_lambda = L;
    const double u0 = std::log(p.r_start) / L;
    const int n = periods * samples_per_period;
    for (int j = 0; j < n; ++j) {
        const double u = u0 + static_cast<double>(j) / samples_per_period;
        const double r = std::exp(u * L);
        const cplx lh = log_h(pl, r, theta);
        if (!(lh.real() > 0.0)) {
            p.positive = false;
        }
        const cplx zr = detail::cpow(detail::ray_point(r, theta), cplx(-sys.rho));
        p.u.push_back(u);
        p.F.push_back(lh * zr);
    }
    p.oscillation = peak_to_peak(p.F);
    for (int j = 0; j + samples_per_period < n; ++j) {
        p.periodicity_defect = std::max(p.periodicity_defect, std::abs(p.F[j] - p.F[j + samples_per_period]));
    }
    return p;
}

// 2(T_d(1 + z/2) - 1): F is identically 1 for every d.
inline NormalizedSystem chebyshev_companion(int d)
{
    auto c = detail::chebyshev_t_exact(d).compose(ExactPolynomial{Rational(1), Rational(1, 2)}).coefficients();
    c[0] -= 1;
    for (auto &v : c) {
        v *= 2;
    }
    return make_system(ExactPolynomial(c));
}

// Noise floor of the profiling procedure: peak-to-peak of the companion's
// (constant) profile at the same start condition and sampling density,
// relative to its mean, scaled to the size of the target profile.
inline double noise_floor(const PeriodicProfile &target, int d)
{
    const Pipeline comp(chebyshev_companion(d));
    const auto cp = extract_F(comp, 0.0, target.periods, target.samples_per_period);
    cplx mean = 0.0;
    for (const auto &v : target.F) {
        mean += v;
    }
    mean /= static_cast<double>(target.F.size());
    return cp.oscillation * std::max(1.0, std::abs(mean));
}

enum class ConstancyVerdict { constant, non_constant, inconclusive };

inline const char *to_string(ConstancyVerdict v)
{
    switch (v) {
    case ConstancyVerdict::constant:
        return "constant";
    case ConstancyVerdict::non_constant:
        return "non-constant";
    case ConstancyVerdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

struct ConstancyReport
{
    ConstancyVerdict verdict = ConstancyVerdict::inconclusive;
    ExceptionalClass algebraic = ExceptionalClass::generic;
    bool consistent = false;
    double oscillation = 0.0;
    double noise_floor = 0.0;
};

inline ConstancyReport classify_constancy(const PeriodicProfile &profile, const NormalizedSystem &sys)
{
    ConstancyReport r;
    r.oscillation = profile.oscillation;
    r.noise_floor = profile.noise_floor;
    const double lo = std::max(profile.noise_floor, 1e-8);
    const double hi = std::max(10.0 * profile.noise_floor, 1e-8);
    if (profile.oscillation < lo) {
        r.verdict = ConstancyVerdict::constant;
    } else if (profile.oscillation > hi) {
        r.verdict = ConstancyVerdict::non_constant;
    } else {
        r.verdict = ConstancyVerdict::inconclusive;
    }
    r.algebraic = classify_exceptional(sys);
    const bool exceptional = r.algebraic != ExceptionalClass::generic;
    r.consistent = (r.verdict == ConstancyVerdict::constant && exceptional) ||
                   (r.verdict == ConstancyVerdict::non_constant && !exceptional);
    return r;
}

// Discrete Fourier transform of the profile, averaged over its periods.
inline FourierTable fourier_coeffs(const PeriodicProfile &profile, int K)
{
    const int n = profile.samples_per_period;
    if (n < 2 * K + 1) {
        throw ConfigError("need at least 2K+1 samples per period");
    }
    const double twopi = 2.0 * std::numbers::pi;
    auto dft = [&](int period, int k) {
        cplx acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const int idx = period * n + j;
            acc += profile.F[idx] * std::exp(cplx(0.0, -twopi * k * profile.u[idx]));
        }
        return acc / static_cast<double>(n);
    };
    FourierTable t;
    // alias bound from the upper half of the spectrum of the first period
    for (int k = n / 4; k <= n / 2; ++k) {
        t.alias_bound = std::max({t.alias_bound, std::abs(dft(0, k)), std::abs(dft(0, -k))});
    }
    for (int k = -K; k <= K; ++k) {
        std::vector<cplx> per;
        cplx mean = 0.0;
        for (int q = 0; q < profile.periods; ++q) {
            per.push_back(dft(q, k));
            mean += per.back();
        }
        mean /= static_cast<double>(profile.periods);
        double spread = 0.0;
        for (const auto &v : per) {
            spread = std::max(spread, std::abs(v - mean));
        }
        // samples sit at u + i theta/log lambda
        const double tilt = std::exp(2.0 * std::numbers::pi * k * profile.theta / profile.log_lambda);
        FourierEntry e;
        e.k = k;
        e.f = mean * tilt;
        e.uncertainty = tilt * std::max({spread, t.alias_bound, profile.noise_floor / std::sqrt(double(n))});
        e.source = "fft";
        t.entries.push_back(e);
    }
    return t;
}

// Fourier coefficient from the Mellin residue at s = -rho - 2 k pi i / log lambda:
// f_k = pi / ((-log d - 2 k pi i) sin(pi s_k)) * H(s_k).
inline FourierEntry residue_fourier(const NormalizedSystem &sys, const MeasureSample &sample, int k)
{
    const double L = std::log(sys.lambda);
    const cplx sk(-sys.rho, -2.0 * std::numbers::pi * k / L);
    const auto H = continuation_H(sys, sample, sk);
    const cplx factor = std::numbers::pi / (cplx(-std::log(static_cast<double>(sys.d)), -2.0 * std::numbers::pi * k) *
                                            std::sin(std::numbers::pi * sk));
    FourierEntry e;
    e.k = k;
    e.f = factor * H.value;
    e.uncertainty = std::abs(factor) * H.stderr_;
    e.source = "residue";
    e.low_confidence = H.stderr_ > 0.5 * std::abs(H.value);
    return e;
}

inline FourierTable residue_fourier_table(const NormalizedSystem &sys, const MeasureSample &sample, int K)
{
    FourierTable t;
    for (int k = -K; k <= K; ++k) {
        t.entries.push_back(residue_fourier(sys, sample, k));
    }
    return t;
}

// F(w) = sum_k f_k e^{2 pi i k w} for complex w.
inline cplx fourier_eval(const FourierTable &t, cplx w)
{
    cplx acc = 0.0;
    for (const auto &e : t.entries) {
        acc += e.f * std::exp(cplx(0.0, 2.0 * std::numbers::pi * e.k) * w);
    }
    return acc;
}

// f(z) = h + sum_{n < terms} c_n h^{-n}, h = exp(z^rho F(log_lambda z)) with F
// taken from a Fourier table and c_n from the inverse Boettcher coefficients.
inline cplx asymptotic_eval(const Pipeline &pl, const FourierTable &F, cplx z, int terms)
{
    const double L = std::log(pl.sys.lambda);
    const cplx w = std::log(z) / L;
    const cplx e = detail::cpow(z, cplx(pl.sys.rho)) * fourier_eval(F, w);
    const cplx h = std::exp(e);
    if (!(std::abs(h) > 1.0)) {
        throw OutsideValidity(detail::concat("|h(", z, ")| <= 1, expansion not valid"));
    }
    cplx acc = h;
    const cplx hinv = 1.0 / h;
    cplx pw = 1.0;
    const int n_max = std::min(terms, static_cast<int>(pl.boettcher_inverse.coeffs.size()));
    for (int n = 0; n < n_max; ++n) {
        acc += pl.boettcher_inverse.coeffs[n] * pw;
        pw *= hinv;
    }
    return acc;
}

struct AttractingAsymptotics
{
    cplx w0;
    cplx eta;
    double theta = 0.0;
    bool superattracting = false;
    cplx exponent; // log_lambda eta, or log_lambda k in the superattracting case
    std::vector<double> u;
    std::vector<cplx> profile; // H(u) or L(u)
    double oscillation = 0.0;
    ConstancyVerdict verdict = ConstancyVerdict::inconclusive;
    double residual = 0.0;    // sup |j(lambda z) - eta j(z)| (relative)
    double fitted_slope = 0.0; // d log|j| / d log|z|
    bool sign_condition = true; // superattracting: Re(z^{log_lambda k} L) < 0
};

namespace detail
{

// y = f(z) - w0 computed in the local coordinate y -> p(w0 + y) - w0 once the
// orbit is near w0, so that y keeps full relative precision as it shrinks.
struct LocalMap
{
    cplx w0;
    std::vector<cplx> c; // ascending coefficients of P(y)

    LocalMap(const RealPolynomial &p, cplx w)
        : w0(w), c(p.coefficients().begin(), p.coefficients().end())
    {
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            for (std::size_t j = c.size() - 1; j > i; --j) {
                c[j - 1] += w0 * c[j];
            }
        }
        c[0] = 0.0;
    }

    cplx operator()(cplx y) const
    {
        cplx acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) {
            acc = acc * y + c[i];
        }
        return acc;
    }
};

inline cplx local_offset(const Pipeline &pl, const LocalMap &P, cplx z, double radius)
{
    const int m = lift_depth(pl.sys, pl.series, z);
    cplx v = series::eval(pl.series.coeffs, z / std::pow(pl.sys.lambda, m));
    int k = 0;
    for (; k < m && std::abs(v - P.w0) > 0.25; ++k) {
        v = pl.sys.poly(v);
        if (!std::isfinite(std::abs(v)) || std::abs(v) > 1e200) {
            throw NotAttracted(detail::concat("f(", z, ") escapes"));
        }
    }
    cplx y = v - P.w0;
    for (; k < m; ++k) {
        y = P(y);
    }
    if (!(std::abs(y) <= radius)) {
        throw NotAttracted(detail::concat("f(", z, ") = ", P.w0 + y, " not near ", P.w0));
    }
    return y;
}

inline bool ray_attracted(const Pipeline &pl, const LocalMap &P, double theta, double r0)
{
    try {
        for (int m = 0; m < 4; ++m) {
            local_offset(pl, P, std::polar(r0 * std::pow(pl.sys.lambda, m), theta), 0.05);
        }
    } catch (const error &) {
        return false;
    }
    return true;
}

// Least-squares slope of y against x with periodic nuisance terms
// cos/sin(2 pi k u), k = 1..harmonics.
inline double periodic_slope(const std::vector<double> &x, const std::vector<double> &u,
                             const std::vector<double> &y, int harmonics = 4)
{
    const int n = static_cast<int>(x.size());
    const int cols = 2 + 2 * harmonics;
    Eigen::MatrixXd A(n, cols);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1.0;
        A(i, 1) = x[i];
        for (int k = 1; k <= harmonics; ++k) {
            A(i, 2 * k) = std::cos(2.0 * std::numbers::pi * k * u[i]);
            A(i, 2 * k + 1) = std::sin(2.0 * std::numbers::pi * k * u[i]);
        }
        b(i) = y[i];
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
    return sol(1);
}

} // namespace detail

// Finds a ray angle along which f tends to w0: a quarter of the way into the
// longest run of attracted angles on a grid over (0, 2 pi). The centre of the
// run is avoided because for real systems it is the real axis, where
// f - w0 changes sign and j has zeros on the ray.
inline std::optional<double> find_attracted_ray(const Pipeline &pl, cplx w0, int grid = 720)
{
    const detail::LocalMap P(pl.sys.poly, w0);
    const double r0 = std::pow(pl.sys.lambda, 6.0);
    std::optional<double> best;
    int best_run = 0, run = 0;
    double run_start = 0.0;
    for (int i = 1; i < grid; ++i) {
        const double th = 2.0 * std::numbers::pi * i / grid;
        if (detail::ray_attracted(pl, P, th, r0)) {
            if (run == 0) {
                run_start = th;
            }
            ++run;
            if (run > best_run) {
                best_run = run;
                best = run_start + 0.25 * (th - run_start);
            }
        } else {
            run = 0;
        }
    }
    return best;
}

inline AttractingAsymptotics attracting_asymptotics(const Pipeline &pl, cplx w0, double theta, int periods = 4,
                                                    int samples_per_period = 32)
{
    const auto &sys = pl.sys;
    const detail::LocalMap P(sys.poly, w0);
    AttractingAsymptotics out;
    out.w0 = w0;
    out.theta = theta;
    out.eta = sys.poly.derivative()(w0);
    const double L = std::log(sys.lambda);
    double r0 = 1.0;
    const double rmax = 1e8;
    while (!detail::ray_attracted(pl, P, theta, r0) && r0 < rmax) {
        r0 *= sys.lambda;
    }
    if (r0 >= rmax) {
        throw NotAttracted(detail::concat("ray theta=", theta, " is not attracted to ", w0));
    }
    const int n = periods * samples_per_period;
    std::vector<double> lx, lu, ly;
    auto point = [&](int i, double &u) {
        u = std::log(r0) / L + static_cast<double>(i) / samples_per_period;
        return std::polar(std::exp(u * L), theta);
    };
    if (std::abs(out.eta) > 1e-12) {
        const auto K = koenigs_psi(sys.exact_poly, w0);
        out.exponent = std::log(out.eta) / L;
        auto j_of = [&](cplx z) {
            cplx y = detail::local_offset(pl, P, z, 0.05);
            cplx scale = 1.0;
            while (std::abs(y) > 1e-3) {
                y = P(y);
                scale /= out.eta;
            }
            return scale * series::eval(K.psi, y);
        };
        for (int i = 0; i < n; ++i) {
            double u;
            const cplx z = point(i, u);
            const cplx j = j_of(z);
            const cplx jl = j_of(sys.lambda * z);
            out.residual = std::max(out.residual, std::abs(jl - out.eta * j) / std::abs(jl));
            out.u.push_back(u);
            out.profile.push_back(j * detail::cpow(z, -out.exponent));
            lx.push_back(std::log(std::abs(z)));
            lu.push_back(u);
            ly.push_back(std::log(std::abs(j)));
        }
    } else {
        out.superattracting = true;
        const auto B = finite_boettcher(sys.exact_poly, w0);
        out.exponent = std::log(static_cast<double>(B.k)) / L;
        // ell = log g(f(z)) + log A/(k-1) satisfies ell(lambda z) = k ell(z)
        const cplx shift = std::log(B.A) / static_cast<double>(B.k - 1);
        cplx prev = 0.0;
        for (int i = 0; i < n; ++i) {
            double u;
            const cplx z = point(i, u);
            const cplx y = detail::local_offset(pl, P, z, 0.05);
            // g(w0 + y) = y (1 + beta(y)); log taken piecewise to avoid underflow
            cplx ell = std::log(y) + std::log(series::eval(B.g, y) / y) + shift;
            if (i > 0) {
                const double twopi = 2.0 * std::numbers::pi;
                ell += cplx(0.0, twopi * std::round((prev.imag() - ell.imag()) / twopi));
            }
            prev = ell;
            const cplx zk = detail::cpow(z, out.exponent);
            const cplx Lu = ell / zk;
            if (!(ell.real() < 0.0)) {
                out.sign_condition = false;
            }
            const cplx lam_ell = [&] {
                const cplx yl = detail::local_offset(pl, P, sys.lambda * z, 0.05);
                return std::log(yl) + std::log(series::eval(B.g, yl) / yl) + shift;
            }();
            out.residual = std::max(out.residual, std::abs(std::real(lam_ell) - B.k * ell.real()) /
                                                      std::abs(std::real(lam_ell)));
            out.u.push_back(u);
            out.profile.push_back(Lu);
            lx.push_back(std::log(std::abs(z)));
            lu.push_back(u);
            ly.push_back(std::log(std::abs(ell)));
        }
    }
    out.oscillation = peak_to_peak(out.profile);
    out.verdict = out.oscillation > 1e-8 * std::abs(out.profile.front()) ? ConstancyVerdict::non_constant
                                                                        : ConstancyVerdict::constant;
    out.fitted_slope = detail::periodic_slope(lx, lu, ly, samples_per_period / 4);
    return out;
}

} // namespace poincare

#endif
