#ifndef CFORGE_PRODUCT_SPEC_HPP
#define CFORGE_PRODUCT_SPEC_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <cforge/rational.hpp>

namespace cforge
{

// prod_{n >= 0} (1 - q^(offset + step*n) e(shift*z))^exponent
struct PochhammerFactor {
    std::int64_t offset = 1;
    std::int64_t step = 1;
    std::int64_t shift = 0;
    std::int64_t exponent = 1;

    friend bool operator==(const PochhammerFactor &, const PochhammerFactor &) = default;
};

// eta(arg*tau)^exponent or theta(tau, arg*z)^exponent.
struct NamedFactor {
    enum class Kind { eta, theta };
    Kind kind = Kind::eta;
    std::int64_t arg = 1;
    std::int64_t exponent = 1;

    friend bool operator==(const NamedFactor &, const NamedFactor &) = default;
};

// A quotient of eta, theta and Pochhammer factors times q^alpha e(delta*z).
struct ProductSpec {
    Rational q_prefactor;
    Rational z_prefactor;
    std::vector<PochhammerFactor> pochhammer_factors;
    std::vector<NamedFactor> named_factors;

    // Throws SemanticError on identically vanishing factors (poch(0,d;0), theta(0))
    // or non-positive steps/arguments.
    void validate() const;

    // Weight and index tally of the eta/theta part; nullopt when raw
    // Pochhammer factors are present (they carry no modular weight).
    [[nodiscard]] std::optional<std::pair<Rational, Rational>> weight_and_index() const;

    friend bool operator==(const ProductSpec &, const ProductSpec &) = default;
};

// Convenience constructors used throughout tests and tools.
[[nodiscard]] NamedFactor eta_factor(std::int64_t d, std::int64_t e);
[[nodiscard]] NamedFactor theta_factor(std::int64_t a, std::int64_t e);

// eta(1)^2 * theta(1)^-1
[[nodiscard]] ProductSpec crank_spec();

} // namespace cforge

#endif
