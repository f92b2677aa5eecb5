#include <cforge/fourier_series.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <numeric>
#include <tuple>
#include <vector>

#include <cforge/errors.hpp>

namespace cforge
{

namespace
{

// Power series in q over integer exponents [0, size) with integer coefficients.
using IntegerSeries = std::vector<BigInt>;

// s <- s * (1 - q^k)
void mul_binomial(IntegerSeries &s, std::size_t k)
{
    for (std::size_t n = s.size(); n-- > k;) {
        if (s[n - k] != 0) {
            s[n] -= s[n - k];
        }
    }
}

// s <- s / den with den[0] == 1, by forward substitution over the nonzero tail of den.
void divide_integer_series(IntegerSeries &s, const IntegerSeries &den)
{
    std::vector<std::size_t> support;
    for (std::size_t j = 1; j < den.size(); ++j) {
        if (den[j] != 0) {
            support.push_back(j);
        }
    }
    for (std::size_t n = 1; n < s.size(); ++n) {
        for (const auto j : support) {
            if (j > n) {
                break;
            }
            if (s[n - j] != 0) {
                mpz_submul(s[n].get_mpz_t(), den[j].get_mpz_t(), s[n - j].get_mpz_t());
            }
        }
    }
}

// Sparse pentagonal form of prod_{k>=1} (1 - q^(step k)) below `size`: (index, sign) pairs, index 0 excluded.
std::vector<std::pair<std::size_t, int>> euler_terms(std::size_t size, std::int64_t step)
{
    std::vector<std::pair<std::size_t, int>> out;
    for (std::int64_t k = 1;; ++k) {
        const int sign = k % 2 == 0 ? 1 : -1;
        const auto lo = static_cast<std::size_t>(step * (k * (3 * k - 1) / 2));
        const auto hi = static_cast<std::size_t>(step * (k * (3 * k + 1) / 2));
        if (lo >= size) {
            break;
        }
        out.emplace_back(lo, sign);
        if (hi < size) {
            out.emplace_back(hi, sign);
        }
    }
    return out;
}

// s <- s * (1 + sum sign q^j)
void mul_sparse(IntegerSeries &s, const std::vector<std::pair<std::size_t, int>> &f)
{
    for (std::size_t n = s.size(); n-- > 1;) {
        for (const auto &[j, sign] : f) {
            if (j > n) {
                break;
            }
            if (sign > 0) {
                s[n] += s[n - j];
            } else {
                s[n] -= s[n - j];
            }
        }
    }
}

// s <- s / (1 + sum sign q^j)
void div_sparse(IntegerSeries &s, const std::vector<std::pair<std::size_t, int>> &f)
{
    for (std::size_t n = 1; n < s.size(); ++n) {
        for (const auto &[j, sign] : f) {
            if (j > n) {
                break;
            }
            if (sign > 0) {
                s[n] -= s[n - j];
            } else {
                s[n] += s[n - j];
            }
        }
    }
}

// Power series in q over integer exponents with Laurent-polynomial coefficients.
class EllipticSeries
{
public:
    EllipticSeries(const EllipticPolynomial &constant, const IntegerSeries &scalar)
        : coeffs_(scalar.size()), denom_(constant.denom())
    {
        for (std::size_t n = 0; n < scalar.size(); ++n) {
            if (scalar[n] != 0) {
                coeffs_[n] = constant;
                coeffs_[n] *= scalar[n];
            }
        }
    }

    // this <- this * (1 - zeta^shift q^k)
    void mul_binomial(std::size_t k, std::int64_t shift)
    {
        for (std::size_t n = coeffs_.size(); n-- > k;) {
            coeffs_[n].add_shifted(coeffs_[n - k], shift, -1);
        }
    }

    // this <- this / (1 - zeta^shift q^k)
    void div_binomial(std::size_t k, std::int64_t shift)
    {
        for (std::size_t n = k; n < coeffs_.size(); ++n) {
            coeffs_[n].add_shifted(coeffs_[n - k], shift, 1);
        }
    }

    // this <- this * P or this / P, P = (q^d; q^d)(zeta^shift q^d; q^d)(zeta^-shift q^d; q^d)
    //      = sum_{n>=0} (-1)^n q^(d n(n+1)/2) (zeta^(-n shift) + ... + zeta^(n shift)).
    void apply_triple(std::size_t d, std::int64_t shift, bool divide)
    {
        std::vector<std::pair<std::size_t, std::int64_t>> tail;
        for (std::size_t n = 1; d * n * (n + 1) / 2 < coeffs_.size(); ++n) {
            tail.emplace_back(d * n * (n + 1) / 2, static_cast<std::int64_t>(n));
        }
        auto step = [&](std::size_t n, int dir) {
            for (const auto &[j, k] : tail) {
                if (j > n) {
                    break;
                }
                const int sign = (k % 2 == 0 ? 1 : -1) * dir;
                coeffs_[n].add_window_sum(coeffs_[n - j], shift, k, sign);
            }
        };
        if (divide) {
            for (std::size_t n = 1; n < coeffs_.size(); ++n) {
                divide_step(n, tail, shift);
            }
        } else {
            for (std::size_t n = coeffs_.size(); n-- > 1;) {
                step(n, 1);
            }
        }
    }

    // c_n <- (c_n - sum_k (-1)^k S_k c_{n - j_k}) computed as
    // ((x - 1) c_n - sum_k (-1)^k (x^(k+1) - x^(-k)) c_{n - j_k}) / (x - 1), x = zeta^shift,
    // which avoids forming the window sums S_k.
    void divide_step(std::size_t n, const std::vector<std::pair<std::size_t, std::int64_t>> &tail,
                     std::int64_t shift)
    {
        const auto s = std::abs(shift);
        auto &target = coeffs_[n];
        bool any = false;
        std::int64_t lo = 0;
        std::int64_t hi = 0;
        auto widen = [&](std::int64_t a, std::int64_t b) {
            lo = any ? std::min(lo, a) : a;
            hi = any ? std::max(hi, b) : b;
            any = true;
        };
        if (!target.is_zero()) {
            widen(target.min_exponent(), target.max_exponent() + s);
        }
        for (const auto &[j, k] : tail) {
            if (j > n) {
                break;
            }
            const auto &c = coeffs_[n - j];
            if (!c.is_zero()) {
                widen(c.min_exponent() - k * s, c.max_exponent() + (k + 1) * s);
            }
        }
        if (!any) {
            return;
        }
        std::vector<BigInt> acc(static_cast<std::size_t>(hi - lo + 1));
        auto add_into = [&](const EllipticPolynomial &c, std::int64_t offset, bool negate) {
            auto *dst = acc.data() + (c.min_exponent() + offset - lo);
            const auto &src = c.coeffs();
            if (negate) {
                for (std::size_t i = 0; i < src.size(); ++i) {
                    dst[i] -= src[i];
                }
            } else {
                for (std::size_t i = 0; i < src.size(); ++i) {
                    dst[i] += src[i];
                }
            }
        };
        if (!target.is_zero()) {
            add_into(target, s, false);
            add_into(target, 0, true);
        }
        for (const auto &[j, k] : tail) {
            if (j > n) {
                break;
            }
            const auto &c = coeffs_[n - j];
            if (c.is_zero()) {
                continue;
            }
            // subtract (-1)^k (x^(k+1) - x^(-k)) c
            const bool odd = k % 2 != 0;
            add_into(c, (k + 1) * s, !odd);
            add_into(c, -k * s, odd);
        }
        // exact division by (x - 1): acc[i] = c[i - s] - c[i]
        const auto size = static_cast<std::int64_t>(acc.size());
        for (std::int64_t i = 0; i < size; ++i) {
            BigInt &cur = acc[static_cast<std::size_t>(i)];
            cur = -cur;
            if (i >= s) {
                cur += acc[static_cast<std::size_t>(i - s)];
            }
        }
        for (auto i = std::max<std::int64_t>(size - s, 0); i < size; ++i) {
            if (acc[static_cast<std::size_t>(i)] != 0) {
                throw std::logic_error("apply_triple: inexact division by x - 1");
            }
        }
        acc.resize(static_cast<std::size_t>(std::max<std::int64_t>(size - s, 0)));
        target = EllipticPolynomial::from_window(denom_, lo, std::move(acc));
    }

    [[nodiscard]] std::vector<EllipticPolynomial> &coeffs() noexcept { return coeffs_; }

private:
    std::vector<EllipticPolynomial> coeffs_;
    std::int64_t denom_ = 2;
};

// Net exponent per (offset, step, shift) with offset >= 1.
using FactorTally = std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::int64_t>;

void add_factor(FactorTally &tally, std::int64_t m, std::int64_t d, std::int64_t a, std::int64_t e)
{
    tally[{m, d, a}] += e;
}

// Expands prod over tally entries of (1 - q^(m+dn) zeta_z^a)^e times `constant`
// over integer q-exponents below `terms`.
std::vector<EllipticPolynomial> expand_products(const FactorTally &tally, const EllipticPolynomial &constant,
                                                std::int64_t terms)
{
    const auto size = static_cast<std::size_t>(std::max<std::int64_t>(terms, 0));
    // Pull out triple-product blocks (q^d)(zeta^a q^d)(zeta^-a q^d) with matching exponents;
    // the leftover (q^d; q^d) power stays in the tally.
    FactorTally rest = tally;
    std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> triples;
    for (const auto &[key, e] : tally) {
        const auto [m, d, a] = key;
        if (m != d || a <= 0 || e == 0) {
            continue;
        }
        const auto mirror = tally.find({m, d, -a});
        if (mirror == tally.end() || mirror->second != e) {
            continue;
        }
        triples.emplace_back(d, a, e);
        rest.erase({m, d, a});
        rest.erase({m, d, -a});
        rest[{m, d, 0}] -= e;
    }
    IntegerSeries numerator(size, BigInt(0));
    IntegerSeries denominator(size, BigInt(0));
    if (size > 0) {
        numerator[0] = 1;
        denominator[0] = 1;
    }
    bool has_denominator = false;
    for (const auto &[key, e] : rest) {
        const auto [m, d, a] = key;
        if (a != 0 || e == 0) {
            continue;
        }
        if (m == d) {
            // (q^d; q^d)_inf is sparse; O(N sqrt N) instead of O(N^2)
            const auto f = euler_terms(size, d);
            for (std::int64_t i = 0; i < std::abs(e); ++i) {
                if (e > 0) {
                    mul_sparse(numerator, f);
                } else {
                    div_sparse(numerator, f);
                }
            }
            continue;
        }
        auto &target = e > 0 ? numerator : denominator;
        has_denominator = has_denominator || e < 0;
        for (auto p = m; p < terms; p += d) {
            for (std::int64_t i = 0; i < std::abs(e); ++i) {
                mul_binomial(target, static_cast<std::size_t>(p));
            }
        }
    }
    if (has_denominator) {
        divide_integer_series(numerator, denominator);
    }

    EllipticSeries series(constant, numerator);
    const auto dz = constant.denom();
    for (const auto &[key, e] : rest) {
        const auto [m, d, a] = key;
        if (a == 0 || e == 0) {
            continue;
        }
        for (auto p = m; p < terms; p += d) {
            for (std::int64_t i = 0; i < std::abs(e); ++i) {
                if (e > 0) {
                    series.mul_binomial(static_cast<std::size_t>(p), a * dz);
                } else {
                    series.div_binomial(static_cast<std::size_t>(p), a * dz);
                }
            }
        }
    }
    for (const auto &[d, a, e] : triples) {
        for (std::int64_t i = 0; i < std::abs(e); ++i) {
            series.apply_triple(static_cast<std::size_t>(d), a * dz, e < 0);
        }
    }
    return std::move(series.coeffs());
}

// (zeta_z^(a/2) - zeta_z^(-a/2)) / (zeta_z^(1/2) - zeta_z^(-1/2)) = sum_{j<a} zeta_z^((a-1)/2 - j), a >= 1.
EllipticPolynomial theta_cofactor(std::int64_t a, std::int64_t dz)
{
    std::vector<std::pair<std::int64_t, BigInt>> terms;
    for (std::int64_t j = 0; j < a; ++j) {
        // exponent ((a-1)/2 - j) in z-units, i.e. ((a-1) - 2j) * dz/2 in zeta-units
        terms.emplace_back(((a - 1) - 2 * j) * (dz / 2), BigInt(1));
    }
    return EllipticPolynomial::from_terms(dz, terms);
}

EllipticPolynomial power(const EllipticPolynomial &base, std::int64_t e, std::int64_t dz)
{
    EllipticPolynomial r(BigInt(1), dz);
    for (std::int64_t i = 0; i < e; ++i) {
        r = r * base;
    }
    return r;
}

} // namespace

FourierSeries build_pochhammer(std::int64_t m, std::int64_t d, std::int64_t a, std::int64_t e, std::int64_t terms)
{
    ProductSpec check;
    check.pochhammer_factors.push_back({m, d, a, e});
    check.validate();

    constexpr std::int64_t dz = 2;
    EllipticPolynomial constant(BigInt(1), dz);
    FactorTally tally;
    auto first = m;
    if (m == 0 && e != 0) {
        if (e < 0) {
            throw NonUnitLeadingTerm("poch(0," + std::to_string(d) + ";" + std::to_string(a)
                                     + ") has non-unit constant factor 1 - e(" + std::to_string(a)
                                     + "z); route it through pole bookkeeping");
        }
        const auto one_minus = EllipticPolynomial(BigInt(1), dz) - EllipticPolynomial::monomial(a * dz, 1, dz);
        constant = power(one_minus, e, dz);
        first = d;
    }
    add_factor(tally, first, d, a, e);
    FourierSeries r(1, terms);
    auto coeffs = expand_products(tally, constant, terms);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        r.set(static_cast<std::int64_t>(n), std::move(coeffs[n]));
    }
    return r;
}

Elaboration elaborate_spec(const ProductSpec &spec, std::int64_t terms)
{
    spec.validate();

    const auto dz = std::lcm<std::int64_t>(2, spec.z_prefactor.den());
    std::int64_t dq = spec.q_prefactor.den();
    Rational q_shift = spec.q_prefactor;
    FactorTally tally;

    // Prefactors (zeta_z^(a/2) - zeta_z^(-a/2))^e, keyed by a >= 1, plus a unit +-e(z * unit_z).
    std::map<std::int64_t, std::int64_t> vanishing;
    int unit_sign = 1;
    Rational unit_z = spec.z_prefactor;

    for (const auto &f : spec.named_factors) {
        if (f.kind == NamedFactor::Kind::eta) {
            dq = std::lcm<std::int64_t>(dq, 24);
            q_shift += Rational(f.arg * f.exponent, 24);
            add_factor(tally, f.arg, f.arg, 0, f.exponent);
        } else {
            dq = std::lcm<std::int64_t>(dq, 8);
            q_shift += Rational(f.exponent, 8);
            vanishing[std::abs(f.arg)] += f.exponent;
            if (f.arg < 0 && f.exponent % 2 != 0) {
                unit_sign = -unit_sign;
            }
            add_factor(tally, 1, 1, 0, f.exponent);
            add_factor(tally, 1, 1, f.arg, f.exponent);
            add_factor(tally, 1, 1, -f.arg, f.exponent);
        }
    }
    for (const auto &f : spec.pochhammer_factors) {
        if (f.offset > 0) {
            add_factor(tally, f.offset, f.step, f.shift, f.exponent);
            continue;
        }
        // 1 - e(az) = -sgn(a) e(az/2) (e(|a|z/2) - e(-|a|z/2))
        vanishing[std::abs(f.shift)] += f.exponent;
        if (f.exponent % 2 != 0 && f.shift > 0) {
            unit_sign = -unit_sign;
        }
        unit_z += Rational(f.shift * f.exponent, 2);
        add_factor(tally, f.step, f.step, f.shift, f.exponent);
    }

    std::int64_t order = 0;
    EllipticPolynomial cofactor_num(BigInt(1), dz);
    EllipticPolynomial cofactor_den(BigInt(1), dz);
    for (const auto &[a, e] : vanishing) {
        order += e;
        if (a == 1 || e == 0) {
            continue;
        }
        const auto u = theta_cofactor(a, dz);
        if (e > 0) {
            cofactor_num = cofactor_num * power(u, e, dz);
        } else {
            cofactor_den = cofactor_den * power(u, -e, dz);
        }
    }
    const auto cofactor = ep_exact_divide(cofactor_num, cofactor_den);
    if (!cofactor) {
        throw SpecHasResidualPole("the spec has poles at torsion points off Z + tau Z: (" + cofactor_num.to_string()
                                  + ") / (" + cofactor_den.to_string() + ") is not a Laurent polynomial");
    }
    const auto pole_order = std::max<std::int64_t>(0, -order);
    const auto half_diff = EllipticPolynomial::monomial(dz / 2, 1, dz) - EllipticPolynomial::monomial(-dz / 2, 1, dz);
    auto constant = power(half_diff, std::max<std::int64_t>(order, 0), dz) * *cofactor;
    constant = constant * EllipticPolynomial::monomial(unit_z.scaled_to(dz), unit_sign, dz);

    auto coeffs = expand_products(tally, constant.with_denom(dz), terms);
    const auto key0 = q_shift.scaled_to(dq);
    FourierSeries series(dq, key0 + terms * dq);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        series.set(key0 + static_cast<std::int64_t>(n) * dq, std::move(coeffs[n]));
    }
    return Elaboration{std::move(series), pole_order, q_shift, dz, terms, spec.weight_and_index()};
}

} // namespace cforge
