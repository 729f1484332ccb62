#ifndef POINCARE_HARMONIC_MEASURE_HPP
#define POINCARE_HARMONIC_MEASURE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <poincare/error.hpp>
#include <poincare/poly_core.hpp>
#include <poincare/roots.hpp>

namespace poincare
{

enum class SampleMode { full_tree, random_backward };

inline const char *to_string(SampleMode m)
{
    return m == SampleMode::full_tree ? "full-tree" : "random-backward";
}

struct MeasureSample
{
    std::vector<cplx> atoms; // uniform weights 1/size
    int depth = 0;
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::random_backward;
    cplx start;

    std::size_t size() const { return atoms.size(); }
    double weight() const { return atoms.empty() ? 0.0 : 1.0 / static_cast<double>(atoms.size()); }
};

struct Estimate
{
    double value = 0.0;
    double stderr_ = 0.0;
};

struct ComplexEstimate
{
    cplx value;
    double stderr_ = 0.0;
};

inline constexpr int burn_in_steps = 20;
inline constexpr std::size_t sample_block = 1 << 16;
inline constexpr std::size_t tree_budget = std::size_t(1) << 20;

// p(eps) for a small real offset from the repelling fixed point 0.
inline cplx default_start(const NormalizedSystem &sys, double eps = 0.01)
{
    return sys.poly(cplx(eps));
}

namespace detail
{

inline unsigned worker_count()
{
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1u : h;
}

// Runs fn(block) for every block index; blocks are independent so the result
// does not depend on the number of workers.
inline void for_blocks(std::size_t blocks, const std::function<void(std::size_t)> &fn)
{
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), blocks));
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            fn(b);
        }
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t b = w; b < blocks; b += workers) {
                fn(b);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
}

} // namespace detail

// count endpoints of (burn-in + n)-step walks along uniformly chosen inverse
// branches, started at xi. Block b of 2^16 atoms uses its own mt19937_64
// stream seeded by (seed, b).
inline MeasureSample backward_orbit_sample(const NormalizedSystem &sys, int n, std::size_t count,
                                           std::uint64_t seed, std::optional<cplx> xi = std::nullopt)
{
    if (n < 0) {
        throw ConfigError("depth must be >= 0");
    }
    MeasureSample out;
    out.depth = n;
    out.seed = seed;
    out.mode = SampleMode::random_backward;
    out.start = xi.value_or(default_start(sys));
    out.atoms.resize(count);
    const std::size_t blocks = (count + sample_block - 1) / sample_block;
    const int d = sys.d;
    detail::for_blocks(blocks, [&](std::size_t b) {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
        std::mt19937_64 rng(ss);
        std::uniform_int_distribution<int> pick(0, d - 1);
        const std::size_t lo = b * sample_block, hi = std::min(count, lo + sample_block);
        for (std::size_t i = lo; i < hi; ++i) {
            cplx x = out.start;
            for (int step = 0; step < burn_in_steps + n; ++step) {
                const auto pre = preimages(sys.poly, x);
                x = pre[static_cast<std::size_t>(pick(rng))];
            }
            out.atoms[i] = x;
        }
    });
    return out;
}

// All d^n solutions of p^n(x) = xi, with multiplicity.
inline MeasureSample full_preimage_tree(const NormalizedSystem &sys, int n, std::optional<cplx> xi = std::nullopt)
{
    if (n < 0) {
        throw ConfigError("depth must be >= 0");
    }
    const double total = std::pow(static_cast<double>(sys.d), n);
    if (total > static_cast<double>(tree_budget)) {
        throw BudgetExceeded(detail::concat("d^n = ", total, " exceeds the 2^20 preimage budget"));
    }
    MeasureSample out;
    out.depth = n;
    out.mode = SampleMode::full_tree;
    out.start = xi.value_or(default_start(sys));
    std::vector<cplx> level{out.start};
    for (int k = 0; k < n; ++k) {
        std::vector<cplx> next;
        next.reserve(level.size() * sys.d);
        for (const cplx &x : level) {
            for (const cplx &w : preimages(sys.poly, x)) {
                next.push_back(w);
            }
        }
        level.swap(next);
    }
    out.atoms = std::move(level);
    return out;
}

// mu(B(0,t)) as the fraction of atoms with |x| < t, binomial stderr.
inline Estimate ball_mass(const MeasureSample &s, double t)
{
    if (!(t > 0.0)) {
        throw ConfigError("ball radius must be positive");
    }
    std::size_t hit = 0;
    for (const cplx &x : s.atoms) {
        hit += std::abs(x) < t;
    }
    const double N = static_cast<double>(s.atoms.size());
    const double p = hit / N;
    return {p, std::sqrt(std::max(p * (1.0 - p), 0.0) / N)};
}

// Mean of an arbitrary complex statistic with its standard error.
inline ComplexEstimate sample_mean(const MeasureSample &s, const std::function<cplx(cplx)> &phi)
{
    const double N = static_cast<double>(s.atoms.size());
    cplx sum = 0.0;
    std::vector<cplx> v;
    v.reserve(s.atoms.size());
    for (const cplx &x : s.atoms) {
        v.push_back(phi(x));
        sum += v.back();
    }
    const cplx mean = sum / N;
    double var = 0.0;
    for (const cplx &y : v) {
        var += std::norm(y - mean);
    }
    var /= std::max(1.0, N - 1.0);
    return {mean, std::sqrt(var / N)};
}

// (-x)^s on the principal branch of log(-x); the cut lies on the positive
// real x axis, away from real-negative Julia sets.
inline cplx neg_pow(cplx x, cplx s)
{
    if (x == cplx(0.0)) {
        return 0.0;
    }
    return std::exp(s * std::log(-x));
}

struct MellinReport
{
    cplx s;
    cplx M;
    cplx H;
    double stderr_M = 0.0;
    double stderr_H = 0.0;
    bool at_pole = false;
    cplx residue; // of M at s when at_pole
    std::optional<ComplexEstimate> direct;
    std::string branch_note;
};

namespace detail
{

// Integrand of H(s) = (d lambda^s - 1) M(s):
// (-x)^s expm1(s delta(x)) + lambda^s sum_{k>=2} (-b_k(x))^s, where b_1 is the
// inverse branch through 0 and delta = Log(-b_1) + log lambda - Log(-x).
inline cplx h_integrand(const NormalizedSystem &sys, cplx x, cplx s)
{
    if (x == cplx(0.0)) {
        // b_1(0) = 0 contributes nothing; the other branches still do.
        auto pre = preimages(sys.poly, x);
        std::sort(pre.begin(), pre.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
        cplx acc = 0.0;
        for (std::size_t k = 1; k < pre.size(); ++k) {
            acc += neg_pow(pre[k], s);
        }
        return std::pow(cplx(sys.lambda), s) * acc;
    }
    auto pre = preimages(sys.poly, x);
    std::size_t i1 = 0;
    for (std::size_t k = 1; k < pre.size(); ++k) {
        if (std::abs(pre[k]) < std::abs(pre[i1])) {
            i1 = k;
        }
    }
    const cplx b1 = pre[i1];
    const double loglam = std::log(sys.lambda);
    const cplx raw = std::log(-b1) + loglam - std::log(-x);
    const cplx small = std::log(sys.lambda * b1 / x);
    const double wind = std::round((raw.imag() - small.imag()) / (2.0 * std::numbers::pi));
    const cplx delta = small + cplx(0.0, 2.0 * std::numbers::pi * wind);
    const cplx first = neg_pow(x, s) * expm1(s * delta);
    cplx rest = 0.0;
    for (std::size_t k = 0; k < pre.size(); ++k) {
        if (k != i1) {
            rest += neg_pow(pre[k], s);
        }
    }
    return first + std::exp(s * loglam) * rest;
}

} // namespace detail

inline ComplexEstimate continuation_H(const NormalizedSystem &sys, const MeasureSample &sample, cplx s)
{
    return sample_mean(sample, [&](cplx x) { return detail::h_integrand(sys, x, s); });
}

// Poles of the continuation: d lambda^s = 1.
inline cplx mellin_pole(const NormalizedSystem &sys, int k)
{
    const double L = std::log(sys.lambda);
    return cplx(-sys.rho, 2.0 * std::numbers::pi * k / L);
}

inline MellinReport mellin_mu(const NormalizedSystem &sys, const MeasureSample &sample, cplx s)
{
    MellinReport r;
    r.s = s;
    r.branch_note = "principal Log(-x), cut along the positive real x axis";
    if (s.real() <= -sys.rho - 1.0) {
        throw OutsideValidity("continuation needs Re s > -rho - 1");
    }
    const auto H = continuation_H(sys, sample, s);
    r.H = H.value;
    r.stderr_H = H.stderr_;
    const cplx denom = static_cast<double>(sys.d) * std::exp(s * std::log(sys.lambda)) - 1.0;
    const double L = std::log(sys.lambda);
    if (std::abs(denom) < 1e-12) {
        r.at_pole = true;
        r.residue = H.value / L;
        r.M = cplx(std::numeric_limits<double>::infinity(), 0.0);
        r.stderr_M = std::numeric_limits<double>::infinity();
        return r;
    }
    r.M = H.value / denom;
    r.stderr_M = H.stderr_ / std::abs(denom);
    if (s.real() > 0.0) {
        r.direct = sample_mean(sample, [&](cplx x) { return neg_pow(x, s); });
        // the direct average is the better estimator where it converges
        r.M = r.direct->value;
        r.stderr_M = r.direct->stderr_;
    }
    return r;
}

// Self-similarity defect: E[phi] - (1/d) sum_branches E[phi o branch].
inline ComplexEstimate invariance_defect(const NormalizedSystem &sys, const MeasureSample &sample,
                                         const std::function<cplx(cplx)> &phi)
{
    return sample_mean(sample, [&](cplx x) {
        cplx acc = 0.0;
        for (const cplx &w : preimages(sys.poly, x)) {
            acc += phi(w);
        }
        return phi(x) - acc / static_cast<double>(sys.d);
    });
}

// Kolmogorov-Smirnov distance to the arcsine law on [a,b] (real parts).
inline double arcsine_ks(const MeasureSample &sample, double a, double b)
{
    std::vector<double> xs;
    xs.reserve(sample.atoms.size());
    for (const cplx &x : sample.atoms) {
        xs.push_back(x.real());
    }
    std::sort(xs.begin(), xs.end());
    const double N = static_cast<double>(xs.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = std::clamp((xs[i] - a) / (b - a), 0.0, 1.0);
        const double F = 2.0 / std::numbers::pi * std::asin(std::sqrt(u));
        ks = std::max({ks, std::abs(F - i / N), std::abs(F - (i + 1) / N)});
    }
    return ks;
}

} // namespace poincare

#endif
