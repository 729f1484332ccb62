#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/zeta.hpp>

#include <poincare/zeros_zeta.hpp>

#include "oracles.hpp"

using namespace poincare;
using Catch::Approx;

namespace
{

constexpr double pi = std::numbers::pi;

} // namespace

TEST_CASE("z^2+4z zeros are -4 pi^2 k^2, double")
{
    const auto sys = make_system(oracles::z2_4z());
    const auto s = solve_taylor(sys);
    const auto zl = find_real_zeros(sys, s, 1e5);
    REQUIRE(zl.zeros.size() == static_cast<std::size_t>(std::floor(std::sqrt(1e5) / (2 * pi))));
    CHECK(zl.zeros.front().x.real() == Approx(-39.4784176).epsilon(1e-9));
    int k = 1;
    for (const auto &z : zl.zeros) {
        const double ex = 4 * pi * pi * k * k;
        CHECK(std::abs(z.xi - ex) < 1e-8 * ex);
        CHECK(z.multiplicity == 2);
        CHECK(z.x.imag() == 0.0);
        CHECK(z.residual < 1e-8);
        ++k;
    }
    CHECK(zl.self_similar);
}

TEST_CASE("zero search is gated on a real negative Julia set")
{
    const auto sys = make_system(oracles::z2_2z());
    const auto s = solve_taylor(sys);
    CHECK_THROWS_AS(find_real_zeros(sys, s, 100.0), NotApplicable);
    CHECK_THROWS_AS(bisect_real_zeros(sys, s, 100.0), NotApplicable);
}

TEST_CASE("z^2+5z zeros: self-similar, simple, bisection agrees")
{
    const auto sys = make_system(oracles::z2_5z());
    const auto s = solve_taylor(sys);
    const auto tree = find_real_zeros(sys, s, 1e5);
    CHECK(tree.self_similar);
    CHECK(tree.self_similar_misses == 0);
    CHECK(tree.max_residual < 1e-8);
    for (const auto &z : tree.zeros) {
        CHECK(z.multiplicity == 1);
    }
    const auto bis = bisect_real_zeros(sys, s, 1e5);
    CHECK(bis.gaps.empty());
    REQUIRE(bis.zeros.size() == tree.zeros.size());
    for (std::size_t i = 0; i < bis.zeros.size(); ++i) {
        CHECK(std::abs(bis.zeros[i].xi - tree.zeros[i].xi) < 1e-10 * tree.zeros[i].xi);
    }
    // double zeros have no sign change: bisection reports them as gaps
    const auto sys4 = make_system(oracles::z2_4z());
    const auto b4 = bisect_real_zeros(sys4, solve_taylor(sys4), 1e4);
    CHECK(b4.zeros.empty());
    CHECK(b4.gaps.size() == 15);
}

TEST_CASE("counting function")
{
    const auto sys = make_system(oracles::z2_4z());
    const auto s = solve_taylor(sys);
    const auto zl = find_real_zeros(sys, s, 1e5);
    CHECK(count_zeros(zl, 39.0) == 0);
    CHECK(count_zeros(zl, 1.0) == 0);
    const auto prof = zero_counting(sys, zl, 2, 64);
    CHECK(prof.u.back() - prof.u.front() == Approx(2.0));
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        CHECK(prof.N[i] == static_cast<long>(std::floor(std::sqrt(prof.x[i]) / (2 * pi))));
    }
    CHECK(prof.mean == Approx(1.0 / (2 * pi)).epsilon(0.05));

    const auto sys5 = make_system(oracles::z2_5z());
    const auto zl5 = find_real_zeros(sys5, solve_taylor(sys5), 1e6);
    const auto p5 = zero_counting(sys5, zl5, 2, 64);
    CHECK(p5.oscillation > 0.1 * p5.mean);
}

TEST_CASE("zeta values")
{
    const auto sys = make_system(oracles::z2_4z());
    const auto s = solve_taylor(sys);
    const auto zl = find_real_zeros(sys, s, 1e7);
    const auto z1 = zeta(sys, zl, 1.0, s);
    const auto z2 = zeta(sys, zl, 2.0, s);
    CHECK(std::abs(z1.value.real() - 1.0 / 24) < 1e-6);
    CHECK(std::abs(z2.value.real() - 1.0 / 1440) < 1e-6);
    CHECK(z1.partial.real() < 1.0 / 24);
    CHECK(1.0 / 24 - z1.partial.real() < z1.tail_bound);
    CHECK(z1.hadamard.k == 0);
    CHECK(z1.sigma == Approx(1.0 / std::log(4.0)));
    CHECK_THROWS_AS(zeta(sys, zl, 0.5, s), DivergenceError);
    CHECK_THROWS_AS(zeta(sys, zl, cplx(0.5, 3.0), s), DivergenceError);

    const auto small = find_real_zeros(sys, s, 1e5);
    const auto zs = zeta(sys, small, 1.0, s);
    CHECK(std::abs(zs.tail_estimate) > std::abs(z1.tail_estimate));
    CHECK(zs.tail_bound > z1.tail_bound);
    CHECK(zs.partial.real() < z1.partial.real());
    // with multiplicity every term doubles
    CHECK(zeta(sys, zl, 2.0, s, true).value.real() == Approx(2.0 / 1440).epsilon(1e-9));
}

TEST_CASE("Hadamard genus and e_l")
{
    for (const auto &p : {oracles::z2_4z(), oracles::z2_5z()}) {
        const auto sys = make_system(p);
        const auto h = hadamard_data(sys, solve_taylor(sys));
        CHECK(h.k == 0);
        CHECK(h.e.empty());
    }
    for (const auto &p : {oracles::z2_2z(), oracles::cubic_exp()}) {
        const auto sys = make_system(p);
        const auto h = hadamard_data(sys, solve_taylor(sys));
        REQUIRE(h.k == 1);
        REQUIRE(h.e_exact.size() == 1);
        CHECK(h.e_exact[0] == Rational(1, 2));
    }
}

TEST_CASE("Mellin identity")
{
    const Pipeline pl(make_system(oracles::z2_4z()));
    const auto zl = find_real_zeros(pl.sys, pl.series, 1e7);
    const auto h = hadamard_data(pl.sys, pl.series);
    // both sides in closed form: 2 zeta(2s) (4 pi^2)^-s pi / (s sin pi s)
    const double s = 0.75;
    const double oracle =
        2.0 * boost::math::zeta(2.0 * s) * std::pow(4 * pi * pi, -s) * pi / (s * std::sin(pi * s));
    CHECK(mellin_lhs(pl, h, zl.zeros.front().xi, s).real() == Approx(oracle).epsilon(1e-12));
    const auto r4 = mellin_identity_check(pl, zl, {cplx(0.75)});
    CHECK(r4.max_defect < 1e-4);
    CHECK_THROWS_AS(mellin_lhs(pl, h, zl.zeros.front().xi, 1.2), OutsideValidity);

    const Pipeline p5(make_system(oracles::z2_5z()));
    const auto z5 = find_real_zeros(p5.sys, p5.series, 1e7);
    const auto r5 = mellin_identity_check(p5, z5, {cplx(0.5), cplx(0.7), cplx(0.9), cplx(0.7, 1.0)});
    CHECK(r5.max_defect < 0.01);
}

TEST_CASE("pole cancellation across Re s = rho")
{
    const auto sys = make_system(oracles::z2_5z());
    const auto s = solve_taylor(sys);
    const auto zl = find_real_zeros(sys, s, 1e7);
    const auto sample = backward_orbit_sample(sys, 10, 200000, 7);
    for (int k : {0, 1}) {
        const auto pc = pole_cancellation(sys, s, zl, sample, k);
        REQUIRE(pc.path.size() == 3);
        CHECK(std::abs(pc.path.back().zeta) > 3.0 * std::abs(pc.path.front().zeta));
        // the bounded combination is zeta_f(s) + M_mu(-s)
        CHECK(pc.ratio_sum < 0.2);
        CHECK(pc.ratio_difference > 1.0);
    }
}

TEST_CASE("counting-measure bridge")
{
    const auto sys = make_system(oracles::z2_4z());
    const auto s = solve_taylor(sys);
    const auto zl = find_real_zeros(sys, s, 1e4);
    const auto sample = backward_orbit_sample(sys, 10, 200000, 3);
    const auto b = counting_measure_bridge(sys, s, zl, sample, 1e3);
    CHECK(b.count_distinct == 5);
    CHECK(b.count_multiplicity == 10);
    CHECK(b.count_preimages == 11);
    // the finite-level identity is exact
    CHECK(b.exact_tree == 11.0);
    // Brolin measure of f(B(0,t)) is sqrt(t)/pi on [-4,0]
    CHECK(std::abs(b.value - std::sqrt(1e3) / pi) < 3.0 * b.sigma);
    CHECK(b.stable);

    const auto sys5 = make_system(oracles::z2_5z());
    const auto s5 = solve_taylor(sys5);
    const auto zl5 = find_real_zeros(sys5, s5, 1e4);
    const auto b5 = counting_measure_bridge(sys5, s5, zl5, backward_orbit_sample(sys5, 10, 200000, 3), 1e3);
    CHECK(b5.exact_tree == static_cast<double>(b5.count_preimages));
    CHECK(std::abs(b5.value - b5.count_preimages) < 0.05 * b5.count_preimages);
}
