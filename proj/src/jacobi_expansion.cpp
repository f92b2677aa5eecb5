#include <cforge/jacobi_expansion.hpp>

#include <stdexcept>

#include <cforge/errors.hpp>

namespace cforge
{

Rational fractional_part(const Rational &x)
{
    return x - Rational(x.floor());
}

bool Progression::contains(const Rational &n) const
{
    return ((n - offset) / Rational(modulus)).is_integer();
}

bool Progression::subset_of(const Progression &other) const
{
    return modulus % other.modulus == 0 && other.contains(offset);
}

Progression Progression::normalized_from(const Rational &base) const
{
    const auto t = (offset - base) / Rational(modulus);
    return {modulus, offset - Rational(modulus * t.floor())};
}

JacobiExpansion::JacobiExpansion(FourierSeries series, std::int64_t pole_order, Rational support_offset,
                                 std::int64_t denom_z, std::optional<Rational> window_start)
    : series_(std::move(series)), pole_order_(pole_order), support_offset_(support_offset), denom_z_(denom_z)
{
    if (window_start) {
        window_start_ = *window_start;
    } else if (const auto v = series_.valuation()) {
        window_start_ = series_.exponent(*v);
    } else {
        window_start_ = support_offset_;
    }
    if (pole_order_ < 0) {
        throw std::invalid_argument("JacobiExpansion: negative pole order");
    }
    for (const auto &[k, c] : series_.terms()) {
        if (!(series_.exponent(k) - support_offset_).is_integer()) {
            throw std::invalid_argument("JacobiExpansion: exponent " + series_.exponent(k).to_string()
                                        + " is off the support coset " + support_offset_.to_string() + " + Z");
        }
    }
}

JacobiExpansion JacobiExpansion::from_elaboration(Elaboration e)
{
    const auto offset = fractional_part(e.q_shift);
    return JacobiExpansion(std::move(e.series), e.pole_order, offset, e.denom_z, e.q_shift);
}

JacobiExpansion JacobiExpansion::from_spec(const ProductSpec &spec, std::int64_t terms)
{
    return from_elaboration(elaborate_spec(spec, terms));
}

EllipticPolynomial JacobiExpansion::leading_coefficient(const Rational &n) const
{
    return series_.coefficient_at(n);
}

namespace
{

// Keys k (units of 1/denom) with k/denom in p satisfy k ≡ r (mod denom * M); nullopt when none do.
std::optional<std::pair<std::int64_t, std::int64_t>> key_class(const Progression &p, std::int64_t denom)
{
    if (p.modulus < 1) {
        throw std::invalid_argument("progression modulus must be positive");
    }
    if (denom % p.offset.den() != 0) {
        return std::nullopt;
    }
    const auto m = denom * p.modulus;
    return std::make_pair(mod_floor(p.offset.scaled_to(denom), m), m);
}

} // namespace

JacobiExpansion JacobiExpansion::restrict_progression(const Progression &p) const
{
    FourierSeries out(series_.denom_q(), series_.truncation());
    if (const auto cls = key_class(p, series_.denom_q())) {
        for (const auto &[k, c] : series_.terms()) {
            if (mod_floor(k, cls->second) == cls->first) {
                out.set(k, c);
            }
        }
    }
    return JacobiExpansion(std::move(out), pole_order_, support_offset_, denom_z_, window_start_);
}

Specialization::Specialization(std::int64_t denom_q, std::int64_t truncation, Rational support_offset,
                               Rational window_start)
    : denom_q_(denom_q), truncation_(truncation), support_offset_(support_offset), window_start_(window_start)
{
}

BigInt Specialization::coefficient_at(const Rational &n) const
{
    if (n >= truncation_exponent()) {
        throw OutOfRange("coefficient at " + n.to_string() + " is beyond truncation "
                         + truncation_exponent().to_string());
    }
    if (denom_q_ % n.den() != 0) {
        return 0;
    }
    const auto it = coeffs_.find(n.scaled_to(denom_q_));
    return it == coeffs_.end() ? BigInt(0) : it->second;
}

void Specialization::set(std::int64_t key, BigInt value)
{
    if (key >= truncation_) {
        throw OutOfRange("key beyond truncation");
    }
    if (value == 0) {
        coeffs_.erase(key);
    } else {
        coeffs_.insert_or_assign(key, std::move(value));
    }
}

Specialization Specialization::restrict_progression(const Progression &p) const
{
    Specialization out(denom_q_, truncation_, support_offset_, window_start_);
    if (const auto cls = key_class(p, denom_q_)) {
        for (const auto &[k, c] : coeffs_) {
            if (mod_floor(k, cls->second) == cls->first) {
                out.coeffs_.emplace(k, c);
            }
        }
    }
    return out;
}

EllipticPolynomial leading_coefficient(const JacobiExpansion &exp, const Rational &n)
{
    return exp.leading_coefficient(n);
}

Specialization specialize(const JacobiExpansion &exp)
{
    Specialization f(exp.series().denom_q(), exp.series().truncation(), exp.support_offset(), exp.window_start());
    for (const auto &[k, c] : exp.series().terms()) {
        f.set(k, ep_eval_at_zero(c));
    }
    return f;
}

JacobiExpansion restrict_progression(const JacobiExpansion &exp, std::int64_t modulus, const Rational &beta)
{
    return exp.restrict_progression(Progression{modulus, beta}.normalized_from(exp.support_offset()));
}

Specialization restrict_progression(const Specialization &f, std::int64_t modulus, const Rational &beta)
{
    return f.restrict_progression(Progression{modulus, beta}.normalized_from(f.support_offset()));
}

} // namespace cforge
