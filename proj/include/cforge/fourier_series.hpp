#ifndef CFORGE_FOURIER_SERIES_HPP
#define CFORGE_FOURIER_SERIES_HPP

#include <cstdint>
#include <map>
#include <optional>

#include <cforge/elliptic_polynomial.hpp>
#include <cforge/product_spec.hpp>
#include <cforge/rational.hpp>

namespace cforge
{

// Truncated series sum_k c_k(z) q^(k / denom_q) with Laurent-polynomial coefficients.
//
// Keys are integers in units of 1/denom_q. Only keys strictly below
// truncation() are meaningful; the series is known modulo q^(truncation()/denom_q).
class FourierSeries
{
public:
    FourierSeries(std::int64_t denom_q, std::int64_t truncation);

    [[nodiscard]] std::int64_t denom_q() const noexcept { return denom_q_; }
    [[nodiscard]] std::int64_t truncation() const noexcept { return truncation_; }
    [[nodiscard]] Rational truncation_exponent() const { return {truncation_, denom_q_}; }
    [[nodiscard]] Rational exponent(std::int64_t key) const { return {key, denom_q_}; }

    // Least key with a nonzero coefficient; nullopt for the zero series.
    [[nodiscard]] std::optional<std::int64_t> valuation() const;
    [[nodiscard]] const std::map<std::int64_t, EllipticPolynomial> &terms() const noexcept { return terms_; }
    [[nodiscard]] EllipticPolynomial coefficient(std::int64_t key) const;
    // Coefficient of q^n; zero when n is off the 1/denom_q lattice.
    [[nodiscard]] EllipticPolynomial coefficient_at(const Rational &n) const;

    // Stores c at key (erasing when c is zero). Throws OutOfRange if key >= truncation().
    void set(std::int64_t key, EllipticPolynomial c);

    // Same series over a finer lattice; new_denom must be a multiple of denom_q().
    [[nodiscard]] FourierSeries with_denom_q(std::int64_t new_denom) const;
    // Lower the truncation bound, dropping keys at or above it.
    [[nodiscard]] FourierSeries truncated(std::int64_t new_truncation) const;

    friend bool operator==(const FourierSeries &a, const FourierSeries &b);

private:
    std::int64_t denom_q_;
    std::int64_t truncation_;
    std::map<std::int64_t, EllipticPolynomial> terms_;
};

// Result precision: min(trunc(a) + val(b), trunc(b) + val(a)), with the
// valuation of a zero series taken to be its truncation.
[[nodiscard]] FourierSeries fs_mul(const FourierSeries &a, const FourierSeries &b);
[[nodiscard]] FourierSeries fs_add(const FourierSeries &a, const FourierSeries &b);

// Multiplicative inverse. The lowest coefficient must be +-zeta^k, otherwise
// NonUnitLeadingTerm is thrown. For a = q^v u with u known to relative
// precision B - v, the result has truncation B - 2v.
[[nodiscard]] FourierSeries fs_invert(const FourierSeries &a);

// prod_{n>=0} (1 - q^(m + d n) e(a z))^e over integer q-exponents below `terms`.
// For m = 0 and e < 0 the constant factor (1 - e(a z)) is not invertible and
// NonUnitLeadingTerm is thrown.
[[nodiscard]] FourierSeries build_pochhammer(std::int64_t m, std::int64_t d, std::int64_t a, std::int64_t e,
                                             std::int64_t terms);

// Output of elaborate_spec: `series` holds the leading coefficients
// (e(z/2) - e(-z/2))^pole_order * phi over q-exponents in q_shift + Z.
struct Elaboration {
    FourierSeries series;
    std::int64_t pole_order = 0;
    Rational q_shift;
    std::int64_t denom_z = 2;
    std::int64_t terms = 0;
    std::optional<std::pair<Rational, Rational>> weight_index;
};

// Expands a product spec to `terms` integer q-steps past q_shift.
// Throws SemanticError for invalid specs and SpecHasResidualPole when the
// quotient has poles off Z + tau Z.
[[nodiscard]] Elaboration elaborate_spec(const ProductSpec &spec, std::int64_t terms);

} // namespace cforge

#endif
