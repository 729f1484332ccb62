#include <catch_amalgamated.hpp>

#include <poincare/series.hpp>

using namespace poincare;
using Catch::Approx;

namespace
{

std::vector<Rational> exp_minus_one(int N)
{
    std::vector<Rational> a(N + 1, Rational(0));
    Rational f(1);
    for (int n = 1; n <= N; ++n) {
        f /= n;
        a[n] = f;
    }
    return a;
}

} // namespace

TEST_CASE("reversion of e^z-1 is log(1+w)")
{
    const auto g = series::revert(exp_minus_one(20), 21);
    for (int n = 1; n <= 20; ++n) {
        CHECK(g[n] == Rational(n % 2 ? 1 : -1, n));
    }
}

TEST_CASE("log1p and pow_unit")
{
    auto a = exp_minus_one(15);
    // log(1 + (e^z - 1)) = z
    const auto l = series::log1p(a, 16);
    CHECK(l[1] == 1);
    for (int n = 2; n <= 15; ++n) {
        CHECK(l[n] == 0);
    }
    a[0] = 1; // e^z
    const auto w = series::pow_unit(a, 3, 16);
    Rational f(1);
    for (int n = 1; n <= 15; ++n) {
        f *= Rational(3, n);
        CHECK(w[n] == f);
    }
}

TEST_CASE("inverse and compose")
{
    std::vector<Rational> a{Rational(1), Rational(-1)}; // 1 - z
    const auto r = series::inverse(a, 10);
    for (int n = 0; n < 10; ++n) {
        CHECK(r[n] == 1);
    }
    // (1/(1-z)) o (z^2) = 1/(1-z^2)
    const auto c = series::compose(r, std::vector<Rational>{Rational(0), Rational(0), Rational(1)}, 10);
    for (int n = 0; n < 10; ++n) {
        CHECK(c[n] == Rational(n % 2 ? 0 : 1));
    }
}

TEST_CASE("schroeder solver on z^2+2z gives log(1+z)")
{
    const std::vector<Rational> P{Rational(0), Rational(2), Rational(1)};
    const auto psi = series::solve_schroeder<Rational>(P, Rational(2), 12);
    for (int n = 1; n < 12; ++n) {
        CHECK(psi[n] == Rational(n % 2 ? 1 : -1, n));
    }
}

TEST_CASE("boettcher solver trivial case")
{
    // (1+beta)^2 = (1 + 2t)(1 + beta(t^2/(1+2t))) solved by beta = t
    std::vector<Rational> U{Rational(1), Rational(2)};
    const auto S = series::mul(std::vector<Rational>{Rational(0), Rational(0), Rational(1)},
                               series::inverse(U, 12), 12);
    const auto beta = series::solve_boettcher<Rational>(U, S, 2, 12);
    CHECK(beta[1] == 1);
    for (int n = 2; n < 12; ++n) {
        CHECK(beta[n] == 0);
    }
}

TEST_CASE("float evaluation")
{
    const auto a = series::to_double(exp_minus_one(30));
    CHECK(std::abs(series::eval(a, cplx(0.5, 0.5)) - (std::exp(cplx(0.5, 0.5)) - 1.0)) < 1e-14);
    auto [v, dv] = series::eval_with_derivative(a, 0.3);
    CHECK(dv == Approx(std::exp(0.3)));
    CHECK(v == Approx(std::expm1(0.3)));
}
