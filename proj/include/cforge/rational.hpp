#ifndef CFORGE_RATIONAL_HPP
#define CFORGE_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

namespace cforge
{

// Small exact rational used for q- and z-exponents and progression offsets.
// Always normalized: den > 0 and gcd(num, den) == 1.
class Rational
{
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d);

    [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }

    // Largest integer <= *this.
    [[nodiscard]] std::int64_t floor() const noexcept;
    // Numerator after scaling to denominator `d`; requires den() | d.
    [[nodiscard]] std::int64_t scaled_to(std::int64_t d) const;

    friend Rational operator+(const Rational &a, const Rational &b);
    friend Rational operator-(const Rational &a, const Rational &b);
    friend Rational operator*(const Rational &a, const Rational &b);
    friend Rational operator/(const Rational &a, const Rational &b);
    Rational operator-() const { return Rational(-num_, den_); }
    Rational &operator+=(const Rational &o) { return *this = *this + o; }
    Rational &operator-=(const Rational &o) { return *this = *this - o; }
    Rational &operator*=(const Rational &o) { return *this = *this * o; }

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

    // "n" or "n/d".
    [[nodiscard]] std::string to_string() const;
    // Accepts "n", "-n", "n/d"; throws std::invalid_argument otherwise.
    static Rational parse(std::string_view text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::ostream &operator<<(std::ostream &os, const Rational &r);

// Non-negative representative of a modulo m (m > 0).
[[nodiscard]] constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept
{
    const auto r = a % m;
    return r < 0 ? r + m : r;
}

[[nodiscard]] constexpr std::int64_t floor_div(std::int64_t a, std::int64_t m) noexcept
{
    return (a - mod_floor(a, m)) / m;
}

} // namespace cforge

#endif
