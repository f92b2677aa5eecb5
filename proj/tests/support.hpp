#ifndef CFORGE_TESTS_SUPPORT_HPP
#define CFORGE_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <cforge/elliptic_polynomial.hpp>
#include <cforge/product_spec.hpp>

namespace testing_support
{

using cforge::BigInt;
using cforge::EllipticPolynomial;

// Sum of c * zeta^k with zeta = e(z / denom).
inline EllipticPolynomial poly(std::int64_t denom, std::initializer_list<std::pair<std::int64_t, long>> terms)
{
    std::vector<std::pair<std::int64_t, BigInt>> v;
    for (const auto &[k, c] : terms) {
        v.emplace_back(k, BigInt(c));
    }
    return EllipticPolynomial::from_terms(denom, v);
}

// Polynomial in x = e(z): exponents are integers.
inline EllipticPolynomial px(std::initializer_list<std::pair<std::int64_t, long>> terms)
{
    std::vector<std::pair<std::int64_t, BigInt>> v;
    for (const auto &[k, c] : terms) {
        v.emplace_back(2 * k, BigInt(c));
    }
    return EllipticPolynomial::from_terms(2, v);
}

inline EllipticPolynomial random_poly(std::mt19937_64 &rng, std::int64_t denom, int max_terms, long max_coeff,
                                      std::int64_t span)
{
    std::uniform_int_distribution<int> count(0, max_terms);
    std::uniform_int_distribution<std::int64_t> exp(-span, span);
    std::uniform_int_distribution<long> coeff(-max_coeff, max_coeff);
    std::vector<std::pair<std::int64_t, BigInt>> v;
    for (int i = count(rng); i > 0; --i) {
        v.emplace_back(exp(rng), BigInt(coeff(rng)));
    }
    return EllipticPolynomial::from_terms(denom, v);
}

// Floating-point value at z; independent of all exact machinery.
inline std::complex<double> evaluate(const EllipticPolynomial &p, double z)
{
    std::complex<double> s = 0;
    for (const auto &[k, c] : p.terms()) {
        const double angle = 2 * M_PI * z * static_cast<double>(k) / static_cast<double>(p.denom());
        s += c.get_d() * std::polar(1.0, angle);
    }
    return s;
}

// Numerical test of vanishing at all z = j / ell, 0 < j < ell * denom, j not divisible by ell.
inline bool numerically_vanishes(const EllipticPolynomial &p, std::int64_t ell, double tol = 1e-6)
{
    for (std::int64_t j = 1; j < ell * p.denom(); ++j) {
        if (j % ell == 0) {
            continue;
        }
        if (std::abs(evaluate(p, static_cast<double>(j) / static_cast<double>(ell))) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace testing_support

#endif
