#ifndef POINCARE_TESTS_ORACLES_HPP
#define POINCARE_TESTS_ORACLES_HPP

#include <poincare/poly_core.hpp>

// Reference systems and hand-derived values used across the suites.
namespace oracles
{

using poincare::ExactPolynomial;
using poincare::Rational;

inline ExactPolynomial poly(std::initializer_list<long> ascending)
{
    std::vector<Rational> c;
    for (long v : ascending) {
        c.emplace_back(v);
    }
    return ExactPolynomial(c);
}

inline ExactPolynomial z2_5z() { return poly({0, 5, 1}); }
inline ExactPolynomial z2_4z() { return poly({0, 4, 1}); }
inline ExactPolynomial z2_2z() { return poly({0, 2, 1}); }
inline ExactPolynomial cubic_exp() { return poly({0, 3, 3, 1}); }

inline ExactPolynomial z2_25z()
{
    return ExactPolynomial(std::vector<Rational>{Rational(0), Rational(5, 2), Rational(1)});
}

} // namespace oracles

#endif
