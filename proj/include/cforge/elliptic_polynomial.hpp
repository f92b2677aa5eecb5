#ifndef CFORGE_ELLIPTIC_POLYNOMIAL_HPP
#define CFORGE_ELLIPTIC_POLYNOMIAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <cforge/rational.hpp>

namespace cforge
{

using BigInt = mpz_class;

// Laurent polynomial with integer coefficients in zeta = e(z / denom).
//
// Storage is a dense window [low, low + size) of coefficients whose first and
// last entries are nonzero; the zero polynomial owns no storage. The
// denominator is always even so that e(+-z/2) is representable. Values with
// different denominators compare equal when they describe the same function
// of z.
class EllipticPolynomial
{
public:
    EllipticPolynomial() = default;
    explicit EllipticPolynomial(BigInt constant, std::int64_t denom = 2);

    // c * zeta^exponent with zeta = e(z / denom).
    static EllipticPolynomial monomial(std::int64_t exponent, BigInt c, std::int64_t denom = 2);
    // c * e(z_exponent * z); the denominator is lcm(2, den(z_exponent)).
    static EllipticPolynomial monomial_z(const Rational &z_exponent, BigInt c);
    // Takes ownership of a dense window starting at zeta^low; zero ends are trimmed.
    static EllipticPolynomial from_window(std::int64_t denom, std::int64_t low, std::vector<BigInt> window);
    // Sum of c * zeta^k over the given pairs; repeated exponents accumulate.
    static EllipticPolynomial from_terms(std::int64_t denom,
                                         const std::vector<std::pair<std::int64_t, BigInt>> &terms);

    [[nodiscard]] std::int64_t denom() const noexcept { return denom_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    // Lowest/highest exponent in units of 1/denom; undefined for zero.
    [[nodiscard]] std::int64_t min_exponent() const noexcept { return low_; }
    [[nodiscard]] std::int64_t max_exponent() const noexcept
    {
        return low_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
    }
    [[nodiscard]] std::size_t term_count() const;
    [[nodiscard]] BigInt coefficient(std::int64_t exponent) const;
    // Nonzero (exponent, coefficient) pairs in ascending exponent order.
    [[nodiscard]] std::vector<std::pair<std::int64_t, BigInt>> terms() const;
    // The raw window; coeffs()[i] is the coefficient of zeta^(min_exponent() + i).
    [[nodiscard]] const std::vector<BigInt> &coeffs() const noexcept { return coeffs_; }

    // Same function of z with exponents expressed over `new_denom`.
    [[nodiscard]] EllipticPolynomial with_denom(std::int64_t new_denom) const;
    // True for +-zeta^k.
    [[nodiscard]] bool is_unit_monomial() const;

    // this += sign * zeta^shift * other; denominators must match.
    void add_shifted(const EllipticPolynomial &other, std::int64_t shift, int sign);
    // this += factor * zeta^shift * other; denominators must match.
    void add_scaled_shifted(const EllipticPolynomial &other, std::int64_t shift, const BigInt &factor);
    // this += sign * sum_{|j| <= radius} zeta^(j * stride) * other, in O(size + radius * stride).
    void add_window_sum(const EllipticPolynomial &other, std::int64_t stride, std::int64_t radius, int sign);
    // zeta^shift * this.
    [[nodiscard]] EllipticPolynomial shifted(std::int64_t shift) const;

    EllipticPolynomial operator-() const;
    EllipticPolynomial &operator*=(const BigInt &k);

    friend EllipticPolynomial operator+(const EllipticPolynomial &a, const EllipticPolynomial &b);
    friend EllipticPolynomial operator-(const EllipticPolynomial &a, const EllipticPolynomial &b);
    friend EllipticPolynomial operator*(const EllipticPolynomial &a, const EllipticPolynomial &b);
    friend bool operator==(const EllipticPolynomial &a, const EllipticPolynomial &b);

    // Human-readable form in x = e(z), e.g. "x^(1/2) - x^(-1/2)".
    [[nodiscard]] std::string to_string() const;

private:
    void trim();
    void reserve_window(std::int64_t lo, std::int64_t hi);

    std::int64_t denom_ = 2;
    std::int64_t low_ = 0;
    std::vector<BigInt> coeffs_;
};

[[nodiscard]] EllipticPolynomial ep_add(const EllipticPolynomial &a, const EllipticPolynomial &b);
[[nodiscard]] EllipticPolynomial ep_mul(const EllipticPolynomial &a, const EllipticPolynomial &b);
// Value at z = 0, i.e. the sum of all coefficients.
[[nodiscard]] BigInt ep_eval_at_zero(const EllipticPolynomial &p);

// Exact quotient p / divisor in the Laurent ring over Z, or nullopt.
[[nodiscard]] std::optional<EllipticPolynomial> ep_exact_divide(const EllipticPolynomial &p,
                                                              const EllipticPolynomial &divisor);

// Phi_ell(e(z)) = 1 + e(z) + ... + e((ell-1) z) written over zeta = e(z/denom).
[[nodiscard]] EllipticPolynomial cyclotomic_in_z(std::int64_t ell, std::int64_t denom = 2);

// Exact quotient p / Phi_ell(e(z)) or nullopt when the division leaves a remainder.
// Throws std::invalid_argument if ell is not prime.
[[nodiscard]] std::optional<EllipticPolynomial> ep_cyclotomic_divide(const EllipticPolynomial &p, std::int64_t ell);

// Whether p vanishes at every z in (1/ell)Z \ Z. Works by reducing modulo
// zeta^(ell*denom) - 1 and testing membership in the ideal of Phi_ell(zeta^denom),
// independently of the long division in ep_cyclotomic_divide.
[[nodiscard]] bool ep_vanishes_at_ell_torsion(const EllipticPolynomial &p, std::int64_t ell);

[[nodiscard]] bool is_prime(std::int64_t n) noexcept;

} // namespace cforge

#endif
