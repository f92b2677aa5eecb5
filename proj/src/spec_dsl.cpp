#include <cforge/spec_dsl.hpp>

#include <cctype>
#include <charconv>
#include <limits>

#include <cforge/errors.hpp>

namespace cforge
{

namespace
{

std::string describe(std::size_t position, const std::string &message, const std::vector<std::string> &expected)
{
    std::string s = "parse error at byte " + std::to_string(position) + ": " + message;
    if (!expected.empty()) {
        s += " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            s += (i == 0 ? "" : i + 1 == expected.size() ? " or " : ", ") + expected[i];
        }
        s += ")";
    }
    return s;
}

} // namespace

ParseError::ParseError(std::size_t position, const std::string &message, std::vector<std::string> expected)
    : Error(describe(position, message, expected)), position(position), message(message), expected(std::move(expected))
{
}

namespace
{

class Parser
{
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ProductSpec run()
    {
        ProductSpec spec;
        skip_ws();
        if (pos_ == text_.size()) {
            fail("empty spec", {"factor"});
        }
        factor(spec);
        skip_ws();
        while (pos_ < text_.size()) {
            expect('*');
            factor(spec);
            skip_ws();
        }
        return spec;
    }

private:
    [[noreturn]] void fail(const std::string &message, std::vector<std::string> expected) const
    {
        throw ParseError(pos_, message, std::move(expected));
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c)
    {
        if (!peek(c)) {
            fail(pos_ == text_.size() ? "unexpected end of input" : "unexpected character", {std::string("'") + c + "'"});
        }
        ++pos_;
    }

    std::string word()
    {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer()
    {
        skip_ws();
        const auto start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            negative = text_[pos_] == '-';
            ++pos_;
        }
        const auto digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (digits == pos_) {
            pos_ = start;
            fail("expected an integer", {"integer"});
        }
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, v);
        (void)ptr;
        // one bit of headroom keeps later arithmetic on exponents safe
        if (ec != std::errc() || v > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
            pos_ = start;
            fail("integer out of range", {"integer"});
        }
        return negative ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
    }

    std::int64_t optional_exponent()
    {
        if (!peek('^')) {
            return 1;
        }
        ++pos_;
        return integer();
    }

    Rational rational_exponent()
    {
        expect('^');
        if (!peek('(')) {
            return Rational(integer());
        }
        ++pos_;
        const auto num = integer();
        std::int64_t den = 1;
        if (peek('/')) {
            ++pos_;
            skip_ws();
            const auto at = pos_;
            den = integer();
            if (den <= 0) {
                pos_ = at;
                fail("denominator must be positive", {"positive integer"});
            }
        }
        expect(')');
        return Rational(num, den);
    }

    void factor(ProductSpec &spec)
    {
        skip_ws();
        const auto start = pos_;
        if (peek('1')) {
            ++pos_;
            return;
        }
        const auto name = word();
        if (name == "eta" || name == "theta") {
            expect('(');
            const auto arg = integer();
            expect(')');
            const auto e = optional_exponent();
            spec.named_factors.push_back(name == "eta" ? eta_factor(arg, e) : theta_factor(arg, e));
        } else if (name == "poch") {
            expect('(');
            const auto m = integer();
            expect(',');
            const auto d = integer();
            expect(';');
            const auto a = integer();
            expect(')');
            spec.pochhammer_factors.push_back(PochhammerFactor{m, d, a, optional_exponent()});
        } else if (name == "q") {
            spec.q_prefactor += rational_exponent();
        } else if (name == "zeta") {
            spec.z_prefactor += rational_exponent();
        } else {
            pos_ = start;
            fail(name.empty() ? "expected a factor" : "unknown factor '" + name + "'",
                 {"eta", "theta", "poch", "q", "zeta", "1"});
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string rational_power(const Rational &r)
{
    return "^(" + r.to_string() + ")";
}

} // namespace

ProductSpec parse_spec(std::string_view text)
{
    auto spec = Parser(text).run();
    spec.validate();
    return spec;
}

std::string format_spec(const ProductSpec &spec)
{
    std::vector<std::string> parts;
    if (!spec.q_prefactor.is_zero()) {
        parts.push_back("q" + rational_power(spec.q_prefactor));
    }
    if (!spec.z_prefactor.is_zero()) {
        parts.push_back("zeta" + rational_power(spec.z_prefactor));
    }
    for (const auto &f : spec.named_factors) {
        parts.push_back(std::string(f.kind == NamedFactor::Kind::eta ? "eta(" : "theta(") + std::to_string(f.arg)
                        + ")^" + std::to_string(f.exponent));
    }
    for (const auto &f : spec.pochhammer_factors) {
        parts.push_back("poch(" + std::to_string(f.offset) + "," + std::to_string(f.step) + ";"
                        + std::to_string(f.shift) + ")^" + std::to_string(f.exponent));
    }
    if (parts.empty()) {
        return "1";
    }
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        out += " * " + parts[i];
    }
    return out;
}

} // namespace cforge
