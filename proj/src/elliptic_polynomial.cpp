#include <cforge/elliptic_polynomial.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cforge
{

namespace
{

std::int64_t even_denom(std::int64_t d)
{
    if (d <= 0) {
        throw std::invalid_argument("EllipticPolynomial: denominator must be positive");
    }
    return std::lcm<std::int64_t>(2, d);
}

} // namespace

bool is_prime(std::int64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

EllipticPolynomial::EllipticPolynomial(BigInt constant, std::int64_t denom) : denom_(even_denom(denom))
{
    if (constant != 0) {
        coeffs_.push_back(std::move(constant));
    }
}

EllipticPolynomial EllipticPolynomial::monomial(std::int64_t exponent, BigInt c, std::int64_t denom)
{
    const auto d = even_denom(denom);
    EllipticPolynomial p;
    p.denom_ = d;
    if (c != 0) {
        p.low_ = exponent * (d / denom);
        p.coeffs_.push_back(std::move(c));
    }
    return p;
}

EllipticPolynomial EllipticPolynomial::monomial_z(const Rational &z_exponent, BigInt c)
{
    const auto d = even_denom(z_exponent.den());
    return monomial(z_exponent.scaled_to(d), std::move(c), d);
}

EllipticPolynomial EllipticPolynomial::from_terms(std::int64_t denom,
                                                  const std::vector<std::pair<std::int64_t, BigInt>> &terms)
{
    const auto d = even_denom(denom);
    const auto scale = d / denom;
    EllipticPolynomial p;
    p.denom_ = d;
    if (terms.empty()) {
        return p;
    }
    std::int64_t lo = terms.front().first;
    std::int64_t hi = lo;
    for (const auto &[e, c] : terms) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
    }
    p.low_ = lo * scale;
    p.coeffs_.assign(static_cast<std::size_t>((hi - lo) * scale + 1), BigInt(0));
    for (const auto &[e, c] : terms) {
        p.coeffs_[static_cast<std::size_t>((e - lo) * scale)] += c;
    }
    p.trim();
    return p;
}

std::size_t EllipticPolynomial::term_count() const
{
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const BigInt &c) { return c != 0; }));
}

BigInt EllipticPolynomial::coefficient(std::int64_t exponent) const
{
    if (coeffs_.empty() || exponent < low_ || exponent > max_exponent()) {
        return 0;
    }
    return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

std::vector<std::pair<std::int64_t, BigInt>> EllipticPolynomial::terms() const
{
    std::vector<std::pair<std::int64_t, BigInt>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) {
            out.emplace_back(low_ + static_cast<std::int64_t>(i), coeffs_[i]);
        }
    }
    return out;
}

EllipticPolynomial EllipticPolynomial::with_denom(std::int64_t new_denom) const
{
    if (new_denom <= 0 || new_denom % denom_ != 0) {
        throw std::invalid_argument("EllipticPolynomial::with_denom: " + std::to_string(new_denom)
                                    + " is not a multiple of " + std::to_string(denom_));
    }
    if (new_denom == denom_) {
        return *this;
    }
    const auto scale = new_denom / denom_;
    EllipticPolynomial p;
    p.denom_ = new_denom;
    if (coeffs_.empty()) {
        return p;
    }
    p.low_ = low_ * scale;
    p.coeffs_.assign((coeffs_.size() - 1) * static_cast<std::size_t>(scale) + 1, BigInt(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        p.coeffs_[i * static_cast<std::size_t>(scale)] = coeffs_[i];
    }
    return p;
}

bool EllipticPolynomial::is_unit_monomial() const
{
    return coeffs_.size() == 1 && (coeffs_[0] == 1 || coeffs_[0] == -1);
}

void EllipticPolynomial::trim()
{
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const BigInt &c) { return c != 0; });
    if (first == coeffs_.end()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](const BigInt &c) { return c != 0; });
    coeffs_.erase(last.base(), coeffs_.end());
    const auto lead = first - coeffs_.begin();
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), first);
        low_ += lead;
    }
}

void EllipticPolynomial::reserve_window(std::int64_t lo, std::int64_t hi)
{
    if (coeffs_.empty()) {
        low_ = lo;
        coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), BigInt(0));
        return;
    }
    if (lo < low_) {
        coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(low_ - lo), BigInt(0));
        low_ = lo;
    }
    if (hi > max_exponent()) {
        coeffs_.resize(static_cast<std::size_t>(hi - low_ + 1), BigInt(0));
    }
}

void EllipticPolynomial::add_shifted(const EllipticPolynomial &other, std::int64_t shift, int sign)
{
    if (coeffs_.empty()) {
        denom_ = other.denom_;
    }
    if (other.denom_ != denom_) {
        throw std::invalid_argument("EllipticPolynomial::add_shifted: denominator mismatch");
    }
    if (other.coeffs_.empty() || sign == 0) {
        return;
    }
    const auto olo = other.low_ + shift;
    reserve_window(std::min(coeffs_.empty() ? olo : low_, olo),
                   std::max(coeffs_.empty() ? other.max_exponent() + shift : max_exponent(),
                            other.max_exponent() + shift));
    auto *dst = coeffs_.data() + (olo - low_);
    if (sign > 0) {
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
            dst[i] += other.coeffs_[i];
        }
    } else {
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
            dst[i] -= other.coeffs_[i];
        }
    }
    if (coeffs_.front() == 0 || coeffs_.back() == 0) {
        trim();
    }
}

EllipticPolynomial EllipticPolynomial::from_window(std::int64_t denom, std::int64_t low, std::vector<BigInt> window)
{
    EllipticPolynomial r(BigInt(0), denom);
    r.low_ = low;
    r.coeffs_ = std::move(window);
    r.trim();
    return r;
}

void EllipticPolynomial::add_window_sum(const EllipticPolynomial &other, std::int64_t stride, std::int64_t radius,
                                        int sign)
{
    if (radius == 0 || stride == 0) {
        add_shifted(other, 0, sign);
        return;
    }
    if (stride < 0) {
        stride = -stride;
    }
    if (other.coeffs_.empty() || sign == 0) {
        return;
    }
    if (coeffs_.empty()) {
        denom_ = other.denom_;
    }
    if (other.denom_ != denom_) {
        throw std::invalid_argument("EllipticPolynomial::add_window_sum: denominator mismatch");
    }
    // Running sums along each residue class mod stride; the window has 2 * radius + 1 slots.
    const auto width = static_cast<std::int64_t>(other.coeffs_.size());
    const auto span = (2 * radius + 1) * stride;
    const auto total = width + 2 * radius * stride;
    const auto olo = other.low_ - radius * stride;
    reserve_window(std::min(coeffs_.empty() ? olo : low_, olo),
                   std::max(coeffs_.empty() ? olo + total - 1 : max_exponent(), olo + total - 1));
    std::vector<BigInt> run(static_cast<std::size_t>(total));
    auto *dst = coeffs_.data() + (olo - low_);
    for (std::int64_t i = 0; i < total; ++i) {
        auto &r = run[static_cast<std::size_t>(i)];
        if (i >= stride) {
            r = run[static_cast<std::size_t>(i - stride)];
        }
        if (i < width) {
            r += other.coeffs_[static_cast<std::size_t>(i)];
        }
        if (i >= span && i - span < width) {
            r -= other.coeffs_[static_cast<std::size_t>(i - span)];
        }
        if (sign > 0) {
            dst[i] += r;
        } else {
            dst[i] -= r;
        }
    }
    if (coeffs_.front() == 0 || coeffs_.back() == 0) {
        trim();
    }
}

void EllipticPolynomial::add_scaled_shifted(const EllipticPolynomial &other, std::int64_t shift,
                                            const BigInt &factor)
{
    if (coeffs_.empty()) {
        denom_ = other.denom_;
    }
    if (other.denom_ != denom_) {
        throw std::invalid_argument("EllipticPolynomial::add_scaled_shifted: denominator mismatch");
    }
    if (other.coeffs_.empty() || factor == 0) {
        return;
    }
    const auto olo = other.low_ + shift;
    reserve_window(std::min(coeffs_.empty() ? olo : low_, olo),
                   std::max(coeffs_.empty() ? other.max_exponent() + shift : max_exponent(),
                            other.max_exponent() + shift));
    auto *dst = coeffs_.data() + (olo - low_);
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
        mpz_addmul(dst[i].get_mpz_t(), other.coeffs_[i].get_mpz_t(), factor.get_mpz_t());
    }
    if (coeffs_.front() == 0 || coeffs_.back() == 0) {
        trim();
    }
}

EllipticPolynomial EllipticPolynomial::shifted(std::int64_t shift) const
{
    auto p = *this;
    if (!p.coeffs_.empty()) {
        p.low_ += shift;
    }
    return p;
}

EllipticPolynomial EllipticPolynomial::operator-() const
{
    auto p = *this;
    for (auto &c : p.coeffs_) {
        c = -c;
    }
    return p;
}

EllipticPolynomial &EllipticPolynomial::operator*=(const BigInt &k)
{
    if (k == 0) {
        coeffs_.clear();
        low_ = 0;
        return *this;
    }
    for (auto &c : coeffs_) {
        c *= k;
    }
    return *this;
}

EllipticPolynomial operator+(const EllipticPolynomial &a, const EllipticPolynomial &b)
{
    const auto d = std::lcm(a.denom_, b.denom_);
    auto r = a.with_denom(d);
    r.add_shifted(b.with_denom(d), 0, 1);
    return r;
}

EllipticPolynomial operator-(const EllipticPolynomial &a, const EllipticPolynomial &b)
{
    const auto d = std::lcm(a.denom_, b.denom_);
    auto r = a.with_denom(d);
    r.add_shifted(b.with_denom(d), 0, -1);
    return r;
}

EllipticPolynomial operator*(const EllipticPolynomial &a, const EllipticPolynomial &b)
{
    const auto d = std::lcm(a.denom_, b.denom_);
    EllipticPolynomial r;
    r.denom_ = d;
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        return r;
    }
    const auto x = a.with_denom(d);
    const auto y = b.with_denom(d);
    r.low_ = x.low_ + y.low_;
    r.coeffs_.assign(x.coeffs_.size() + y.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
        if (x.coeffs_[i] == 0) {
            continue;
        }
        auto *dst = r.coeffs_.data() + i;
        for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
            mpz_addmul(dst[j].get_mpz_t(), x.coeffs_[i].get_mpz_t(), y.coeffs_[j].get_mpz_t());
        }
    }
    r.trim();
    return r;
}

bool operator==(const EllipticPolynomial &a, const EllipticPolynomial &b)
{
    if (a.denom_ == b.denom_) {
        return a.coeffs_ == b.coeffs_ && (a.coeffs_.empty() || a.low_ == b.low_);
    }
    const auto d = std::lcm(a.denom_, b.denom_);
    return a.with_denom(d) == b.with_denom(d);
}

std::string EllipticPolynomial::to_string() const
{
    if (coeffs_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto &[e, c] : terms()) {
        const Rational zexp(e, denom_);
        BigInt mag = abs(c);
        if (first) {
            if (c < 0) {
                os << "-";
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (zexp.is_zero()) {
            os << mag;
            continue;
        }
        if (mag != 1) {
            os << mag << "*";
        }
        os << "x";
        if (zexp != Rational(1)) {
            if (zexp.is_integer() && zexp.num() > 0) {
                os << "^" << zexp.num();
            } else {
                os << "^(" << zexp << ")";
            }
        }
    }
    return os.str();
}

EllipticPolynomial ep_add(const EllipticPolynomial &a, const EllipticPolynomial &b)
{
    return a + b;
}

EllipticPolynomial ep_mul(const EllipticPolynomial &a, const EllipticPolynomial &b)
{
    return a * b;
}

BigInt ep_eval_at_zero(const EllipticPolynomial &p)
{
    BigInt s = 0;
    for (const auto &c : p.coeffs()) {
        s += c;
    }
    return s;
}

std::optional<EllipticPolynomial> ep_exact_divide(const EllipticPolynomial &p, const EllipticPolynomial &divisor)
{
    if (divisor.is_zero()) {
        throw std::domain_error("ep_exact_divide: division by zero");
    }
    const auto d = std::lcm(p.denom(), divisor.denom());
    if (p.is_zero()) {
        return EllipticPolynomial(BigInt(0), d);
    }
    const auto num = p.with_denom(d);
    const auto den = divisor.with_denom(d);
    const auto &dc = den.coeffs();
    const auto dn = dc.size();
    std::vector<BigInt> rem = num.coeffs();
    if (rem.size() < dn) {
        return std::nullopt;
    }
    std::vector<std::pair<std::int64_t, BigInt>> quotient;
    BigInt c;
    for (std::size_t top = rem.size(); top >= dn; --top) {
        const auto i = top - 1;
        if (rem[i] == 0) {
            continue;
        }
        if (!mpz_divisible_p(rem[i].get_mpz_t(), dc.back().get_mpz_t())) {
            return std::nullopt;
        }
        mpz_divexact(c.get_mpz_t(), rem[i].get_mpz_t(), dc.back().get_mpz_t());
        const auto base = top - dn;
        for (std::size_t j = 0; j < dn; ++j) {
            mpz_submul(rem[base + j].get_mpz_t(), c.get_mpz_t(), dc[j].get_mpz_t());
        }
        quotient.emplace_back(num.min_exponent() - den.min_exponent() + static_cast<std::int64_t>(base), c);
    }
    for (const auto &r : rem) {
        if (r != 0) {
            return std::nullopt;
        }
    }
    return EllipticPolynomial::from_terms(d, quotient);
}

EllipticPolynomial cyclotomic_in_z(std::int64_t ell, std::int64_t denom)
{
    const auto d = even_denom(denom);
    std::vector<std::pair<std::int64_t, BigInt>> terms;
    for (std::int64_t j = 0; j < ell; ++j) {
        terms.emplace_back(j * d, BigInt(1));
    }
    return EllipticPolynomial::from_terms(d, terms);
}

std::optional<EllipticPolynomial> ep_cyclotomic_divide(const EllipticPolynomial &p, std::int64_t ell)
{
    if (!is_prime(ell)) {
        throw std::invalid_argument("ep_cyclotomic_divide: " + std::to_string(ell) + " is not prime");
    }
    if (p.is_zero()) {
        return p;
    }
    // p = zeta^low * R(zeta); divide R by the monic Phi_ell(zeta^D) from the top.
    const auto d = p.denom();
    const auto step = static_cast<std::size_t>(d);
    const auto divisor_degree = static_cast<std::size_t>((ell - 1) * d);
    std::vector<BigInt> rem = p.coeffs();
    if (rem.size() <= divisor_degree) {
        return std::nullopt;
    }
    std::vector<std::pair<std::int64_t, BigInt>> quotient;
    for (std::size_t i = rem.size(); i-- > divisor_degree;) {
        if (rem[i] == 0) {
            continue;
        }
        const BigInt c = rem[i];
        const auto base = i - divisor_degree;
        for (std::size_t j = 0; j < static_cast<std::size_t>(ell); ++j) {
            rem[base + j * step] -= c;
        }
        quotient.emplace_back(p.min_exponent() + static_cast<std::int64_t>(base), c);
    }
    for (std::size_t i = 0; i < divisor_degree; ++i) {
        if (rem[i] != 0) {
            return std::nullopt;
        }
    }
    return EllipticPolynomial::from_terms(d, quotient);
}

bool ep_vanishes_at_ell_torsion(const EllipticPolynomial &p, std::int64_t ell)
{
    if (!is_prime(ell)) {
        throw std::invalid_argument("ep_vanishes_at_ell_torsion: " + std::to_string(ell) + " is not prime");
    }
    if (p.is_zero()) {
        return true;
    }
    // Z[x]/(x^(ell*D) - 1) splits as Z[x]/(x^D - 1) x Z[x]/(Phi_ell(x^D)); the second
    // component vanishes iff the folded coefficients are periodic with period D.
    const auto d = p.denom();
    const auto period = ell * d;
    std::vector<BigInt> folded(static_cast<std::size_t>(period), BigInt(0));
    const auto &cs = p.coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (cs[i] != 0) {
            folded[static_cast<std::size_t>(mod_floor(p.min_exponent() + static_cast<std::int64_t>(i), period))]
                += cs[i];
        }
    }
    for (std::int64_t r = 0; r < d; ++r) {
        for (std::int64_t j = 1; j < ell; ++j) {
            if (folded[static_cast<std::size_t>(r + j * d)] != folded[static_cast<std::size_t>(r)]) {
                return false;
            }
        }
    }
    return true;
}

} // namespace cforge
