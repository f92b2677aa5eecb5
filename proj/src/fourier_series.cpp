#include <cforge/fourier_series.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <cforge/errors.hpp>

namespace cforge
{

FourierSeries::FourierSeries(std::int64_t denom_q, std::int64_t truncation)
    : denom_q_(denom_q), truncation_(truncation)
{
    if (denom_q < 1) {
        throw std::invalid_argument("FourierSeries: denom_q must be positive");
    }
}

std::optional<std::int64_t> FourierSeries::valuation() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.begin()->first;
}

EllipticPolynomial FourierSeries::coefficient(std::int64_t key) const
{
    if (key >= truncation_) {
        throw OutOfRange("coefficient at " + exponent(key).to_string() + " is beyond truncation "
                         + truncation_exponent().to_string());
    }
    const auto it = terms_.find(key);
    return it == terms_.end() ? EllipticPolynomial() : it->second;
}

EllipticPolynomial FourierSeries::coefficient_at(const Rational &n) const
{
    if (n >= truncation_exponent()) {
        throw OutOfRange("coefficient at " + n.to_string() + " is beyond truncation "
                         + truncation_exponent().to_string());
    }
    if (denom_q_ % n.den() != 0) {
        return {};
    }
    return coefficient(n.scaled_to(denom_q_));
}

void FourierSeries::set(std::int64_t key, EllipticPolynomial c)
{
    if (key >= truncation_) {
        throw OutOfRange("key " + std::to_string(key) + " at or beyond truncation " + std::to_string(truncation_));
    }
    if (c.is_zero()) {
        terms_.erase(key);
    } else {
        terms_.insert_or_assign(key, std::move(c));
    }
}

FourierSeries FourierSeries::with_denom_q(std::int64_t new_denom) const
{
    if (new_denom < 1 || new_denom % denom_q_ != 0) {
        throw std::invalid_argument("FourierSeries::with_denom_q: " + std::to_string(new_denom)
                                    + " is not a multiple of " + std::to_string(denom_q_));
    }
    const auto scale = new_denom / denom_q_;
    FourierSeries r(new_denom, truncation_ * scale);
    for (const auto &[k, c] : terms_) {
        r.terms_.emplace(k * scale, c);
    }
    return r;
}

FourierSeries FourierSeries::truncated(std::int64_t new_truncation) const
{
    FourierSeries r(denom_q_, std::min(new_truncation, truncation_));
    for (const auto &[k, c] : terms_) {
        if (k < r.truncation_) {
            r.terms_.emplace(k, c);
        }
    }
    return r;
}

bool operator==(const FourierSeries &a, const FourierSeries &b)
{
    if (a.denom_q_ != b.denom_q_) {
        const auto d = std::lcm(a.denom_q_, b.denom_q_);
        return a.with_denom_q(d) == b.with_denom_q(d);
    }
    return a.truncation_ == b.truncation_ && a.terms_ == b.terms_;
}

namespace
{

// acc += u * w, using the cheap scalar path when u is a single monomial.
void accumulate_product(EllipticPolynomial &acc, const EllipticPolynomial &u, const EllipticPolynomial &w)
{
    if (u.is_zero() || w.is_zero()) {
        return;
    }
    if (u.coeffs().size() == 1 && u.denom() == w.denom() && (acc.is_zero() || acc.denom() == w.denom())) {
        acc.add_scaled_shifted(w, u.min_exponent(), u.coeffs().front());
        return;
    }
    acc = acc + u * w;
}

} // namespace

FourierSeries fs_mul(const FourierSeries &a, const FourierSeries &b)
{
    const auto d = std::lcm(a.denom_q(), b.denom_q());
    const auto x = a.with_denom_q(d);
    const auto y = b.with_denom_q(d);
    const auto vx = x.valuation().value_or(x.truncation());
    const auto vy = y.valuation().value_or(y.truncation());
    FourierSeries r(d, std::min(x.truncation() + vy, y.truncation() + vx));
    std::map<std::int64_t, EllipticPolynomial> acc;
    for (const auto &[kx, cx] : x.terms()) {
        for (const auto &[ky, cy] : y.terms()) {
            if (kx + ky >= r.truncation()) {
                break;
            }
            accumulate_product(acc[kx + ky], cx, cy);
        }
    }
    for (auto &[k, c] : acc) {
        r.set(k, std::move(c));
    }
    return r;
}

FourierSeries fs_add(const FourierSeries &a, const FourierSeries &b)
{
    const auto d = std::lcm(a.denom_q(), b.denom_q());
    const auto x = a.with_denom_q(d);
    const auto y = b.with_denom_q(d);
    FourierSeries r(d, std::min(x.truncation(), y.truncation()));
    for (const auto *s : {&x, &y}) {
        for (const auto &[k, c] : s->terms()) {
            if (k < r.truncation()) {
                r.set(k, r.coefficient(k) + c);
            }
        }
    }
    return r;
}

FourierSeries fs_invert(const FourierSeries &a)
{
    const auto v = a.valuation();
    if (!v) {
        throw NonUnitLeadingTerm("cannot invert the zero series");
    }
    const auto &lead = a.terms().begin()->second;
    if (!lead.is_unit_monomial()) {
        throw NonUnitLeadingTerm("leading coefficient " + lead.to_string() + " at q^" + a.exponent(*v).to_string()
                                 + " is not a unit monomial");
    }
    const auto precision = a.truncation() - *v;
    FourierSeries r(a.denom_q(), precision - *v);
    if (precision <= 0) {
        return r;
    }

    std::int64_t dz = 2;
    for (const auto &[k, c] : a.terms()) {
        dz = std::lcm(dz, c.denom());
    }
    // Relative offsets of the unit part u = q^-v a, excluding the constant term.
    std::vector<std::pair<std::int64_t, EllipticPolynomial>> tail;
    std::int64_t step = 0;
    for (const auto &[k, c] : a.terms()) {
        if (k == *v) {
            continue;
        }
        tail.emplace_back(k - *v, c.with_denom(dz));
        step = std::gcd(step, k - *v);
    }
    const auto lead_z = lead.with_denom(dz);
    const auto lead_shift = lead_z.min_exponent();
    const int lead_sign = lead_z.coeffs().front() > 0 ? 1 : -1;
    auto times_inverse_lead = [&](const EllipticPolynomial &p) {
        auto q = p.shifted(-lead_shift);
        return lead_sign > 0 ? q : -q;
    };

    if (step == 0) {
        r.set(-*v, times_inverse_lead(EllipticPolynomial(BigInt(1), dz)));
        return r;
    }
    const auto count = (precision + step - 1) / step;
    std::vector<EllipticPolynomial> w(static_cast<std::size_t>(count));
    w[0] = times_inverse_lead(EllipticPolynomial(BigInt(1), dz));
    for (std::int64_t i = 1; i < count; ++i) {
        EllipticPolynomial acc(BigInt(0), dz);
        for (const auto &[off, u] : tail) {
            const auto j = off / step;
            if (j > i) {
                break;
            }
            accumulate_product(acc, u, w[static_cast<std::size_t>(i - j)]);
        }
        w[static_cast<std::size_t>(i)] = -times_inverse_lead(acc);
    }
    for (std::int64_t i = 0; i < count; ++i) {
        r.set(-*v + i * step, std::move(w[static_cast<std::size_t>(i)]));
    }
    return r;
}

} // namespace cforge
