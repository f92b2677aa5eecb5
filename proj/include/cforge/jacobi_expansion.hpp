#ifndef CFORGE_JACOBI_EXPANSION_HPP
#define CFORGE_JACOBI_EXPANSION_HPP

#include <cstdint>
#include <map>
#include <optional>

#include <cforge/elliptic_polynomial.hpp>
#include <cforge/fourier_series.hpp>
#include <cforge/product_spec.hpp>
#include <cforge/rational.hpp>

namespace cforge
{

// An arithmetic progression M Z + beta of rational exponents.
struct Progression {
    std::int64_t modulus = 1;
    Rational offset;

    // Whether n lies in the progression.
    [[nodiscard]] bool contains(const Rational &n) const;
    // Set inclusion: every element of *this lies in `other`.
    [[nodiscard]] bool subset_of(const Progression &other) const;
    // Representative of the class in [base, base + modulus); requires offset - base integral.
    [[nodiscard]] Progression normalized_from(const Rational &base) const;

    friend bool operator==(const Progression &, const Progression &) = default;
};

// The leading Fourier coefficients c~(phi; n; z) of a theta/eta quotient,
// i.e. the q-coefficients of (e(z/2) - e(-z/2))^pole_order * phi.
class JacobiExpansion
{
public:
    // window_start is the least exponent the expansion covers (zero coefficients
    // included); it defaults to the valuation, or support_offset for a zero series.
    JacobiExpansion(FourierSeries series, std::int64_t pole_order, Rational support_offset, std::int64_t denom_z,
                    std::optional<Rational> window_start = {});

    static JacobiExpansion from_spec(const ProductSpec &spec, std::int64_t terms);
    static JacobiExpansion from_elaboration(Elaboration elaboration);

    [[nodiscard]] const FourierSeries &series() const noexcept { return series_; }
    [[nodiscard]] std::int64_t pole_order() const noexcept { return pole_order_; }
    // beta0 in [0, 1) with every exponent in beta0 + Z.
    [[nodiscard]] const Rational &support_offset() const noexcept { return support_offset_; }
    [[nodiscard]] std::int64_t denom_z() const noexcept { return denom_z_; }
    [[nodiscard]] Rational truncation_exponent() const { return series_.truncation_exponent(); }
    [[nodiscard]] const Rational &window_start() const noexcept { return window_start_; }

    // c~(phi; n; z). Zero when n is off the support coset; OutOfRange if n >= truncation.
    [[nodiscard]] EllipticPolynomial leading_coefficient(const Rational &n) const;
    // Terms with n in the progression, exponents unchanged.
    [[nodiscard]] JacobiExpansion restrict_progression(const Progression &p) const;

private:
    FourierSeries series_;
    std::int64_t pole_order_;
    Rational support_offset_;
    std::int64_t denom_z_;
    Rational window_start_;
};

// The modular form f obtained at z = 0: c(f; n) = c~(phi; n; 0).
class Specialization
{
public:
    Specialization(std::int64_t denom_q, std::int64_t truncation, Rational support_offset, Rational window_start);

    [[nodiscard]] std::int64_t denom_q() const noexcept { return denom_q_; }
    [[nodiscard]] std::int64_t truncation() const noexcept { return truncation_; }
    [[nodiscard]] Rational truncation_exponent() const { return {truncation_, denom_q_}; }
    [[nodiscard]] const Rational &support_offset() const noexcept { return support_offset_; }
    [[nodiscard]] const Rational &window_start() const noexcept { return window_start_; }
    // Nonzero coefficients by key (units of 1/denom_q).
    [[nodiscard]] const std::map<std::int64_t, BigInt> &coeffs() const noexcept { return coeffs_; }

    [[nodiscard]] BigInt coefficient_at(const Rational &n) const;
    void set(std::int64_t key, BigInt value);
    [[nodiscard]] Specialization restrict_progression(const Progression &p) const;

    friend bool operator==(const Specialization &, const Specialization &) = default;

private:
    std::int64_t denom_q_;
    std::int64_t truncation_;
    Rational support_offset_;
    Rational window_start_;
    std::map<std::int64_t, BigInt> coeffs_;
};

[[nodiscard]] EllipticPolynomial leading_coefficient(const JacobiExpansion &exp, const Rational &n);
[[nodiscard]] Specialization specialize(const JacobiExpansion &exp);
[[nodiscard]] JacobiExpansion restrict_progression(const JacobiExpansion &exp, std::int64_t modulus,
                                                   const Rational &beta);
[[nodiscard]] Specialization restrict_progression(const Specialization &f, std::int64_t modulus,
                                                  const Rational &beta);

// Fractional part in [0, 1).
[[nodiscard]] Rational fractional_part(const Rational &x);

} // namespace cforge

#endif
