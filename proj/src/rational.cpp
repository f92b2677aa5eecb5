#include <cforge/rational.hpp>

#include <charconv>
#include <stdexcept>

namespace cforge
{

Rational::Rational(std::int64_t n, std::int64_t d)
{
    if (d == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (d < 0) {
        n = -n;
        d = -d;
    }
    const auto g = std::gcd(n, d);
    num_ = n / g;
    den_ = d / g;
}

std::int64_t Rational::floor() const noexcept
{
    return floor_div(num_, den_);
}

std::int64_t Rational::scaled_to(std::int64_t d) const
{
    if (d <= 0 || d % den_ != 0) {
        throw std::invalid_argument("Rational::scaled_to: denominator " + std::to_string(den_)
                                    + " does not divide " + std::to_string(d));
    }
    return num_ * (d / den_);
}

Rational operator+(const Rational &a, const Rational &b)
{
    const auto l = std::lcm(a.den_, b.den_);
    return Rational(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Rational operator-(const Rational &a, const Rational &b)
{
    return a + (-b);
}

Rational operator*(const Rational &a, const Rational &b)
{
    const auto g1 = std::gcd(a.num_, b.den_);
    const auto g2 = std::gcd(b.num_, a.den_);
    return Rational((a.num_ / (g1 ? g1 : 1)) * (b.num_ / (g2 ? g2 : 1)),
                    (a.den_ / (g2 ? g2 : 1)) * (b.den_ / (g1 ? g1 : 1)));
}

Rational operator/(const Rational &a, const Rational &b)
{
    if (b.num_ == 0) {
        throw std::domain_error("Rational: division by zero");
    }
    return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b)
{
    // Denominators are positive, so cross-multiplication preserves order.
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::to_string() const
{
    if (den_ == 1) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace
{

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
    std::int64_t v = 0;
    const auto *first = s.data();
    const auto *last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text, text));
    }
    return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
}

std::ostream &operator<<(std::ostream &os, const Rational &r)
{
    return os << r.to_string();
}

} // namespace cforge
