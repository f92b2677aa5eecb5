#include <cforge/oracle.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include <cforge/errors.hpp>

namespace cforge::oracle
{

PartitionStream::PartitionStream(std::int64_t n) : n_(n)
{
    if (n < 0) {
        throw std::invalid_argument("PartitionStream: n must be non-negative");
    }
}

std::optional<Partition> PartitionStream::next()
{
    if (done_) {
        return std::nullopt;
    }
    if (!started_) {
        started_ = true;
        if (n_ > 0) {
            current_ = {n_};
        }
        if (n_ <= 1) {
            done_ = true;
        }
        return current_;
    }
    // drop the trailing ones, lower the last part > 1, refill greedily
    std::int64_t freed = 0;
    while (!current_.empty() && current_.back() == 1) {
        current_.pop_back();
        ++freed;
    }
    if (current_.empty()) {
        done_ = true;
        return std::nullopt;
    }
    const auto v = --current_.back();
    ++freed;
    while (freed > 0) {
        const auto part = std::min(v, freed);
        current_.push_back(part);
        freed -= part;
    }
    if (current_.front() == 1) {
        done_ = true;
    }
    return current_;
}

std::vector<Partition> enumerate_partitions(std::int64_t n)
{
    std::vector<Partition> out;
    PartitionStream s(n);
    while (auto p = s.next()) {
        out.push_back(std::move(*p));
    }
    return out;
}

std::int64_t dyson_rank(const Partition &p)
{
    if (p.empty()) {
        return 0;
    }
    return p.front() - static_cast<std::int64_t>(p.size());
}

std::int64_t crank(const Partition &p)
{
    if (p.empty()) {
        return 0;
    }
    const auto ones = std::count(p.begin(), p.end(), 1);
    if (ones == 0) {
        return p.front();
    }
    const auto larger = std::count_if(p.begin(), p.end(), [&](auto part) { return part > ones; });
    return larger - ones;
}

std::string to_string(Statistic s)
{
    switch (s) {
    case Statistic::rank:
        return "rank";
    case Statistic::crank:
        return "crank";
    case Statistic::colored_residual:
        return "colored-residual";
    }
    return "?";
}

Statistic parse_statistic(const std::string &s)
{
    if (s == "rank") {
        return Statistic::rank;
    }
    if (s == "crank") {
        return Statistic::crank;
    }
    if (s == "colored-residual") {
        return Statistic::colored_residual;
    }
    throw std::invalid_argument("unknown statistic '" + s + "' (expected rank, crank or colored-residual)");
}

bool RankTable::equidistributed() const
{
    return std::adjacent_find(counts.begin(), counts.end(), std::not_equal_to<>()) == counts.end();
}

std::uint64_t RankTable::total() const
{
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace
{

// Colored parts (part, color) in non-increasing lexicographic order; calls fn(color sum).
void colored_partitions(std::int64_t remaining, std::int64_t max_part, std::int64_t max_color, std::int64_t colors,
                        std::int64_t color_sum, const std::function<void(std::int64_t)> &fn)
{
    if (remaining == 0) {
        fn(color_sum);
        return;
    }
    for (auto part = std::min(remaining, max_part); part >= 1; --part) {
        const auto top = part == max_part ? max_color : colors - 1;
        for (auto c = top; c >= 0; --c) {
            colored_partitions(remaining - part, part, c, colors, color_sum + c, fn);
        }
    }
}

} // namespace

RankTable rank_table(std::int64_t n, std::int64_t ell, Statistic statistic, std::int64_t colors)
{
    if (n < 0 || ell < 1) {
        throw std::invalid_argument("rank_table: need n >= 0 and ell >= 1");
    }
    RankTable t;
    t.n = n;
    t.ell = ell;
    t.statistic = statistic;
    t.counts.assign(static_cast<std::size_t>(ell), 0);
    if (statistic == Statistic::colored_residual) {
        if (colors < 1) {
            throw std::invalid_argument("rank_table: colors must be positive");
        }
        t.colors = colors;
        colored_partitions(n, n, colors - 1, colors, 0,
                           [&](std::int64_t s) { ++t.counts[static_cast<std::size_t>(mod_floor(s, ell))]; });
        return t;
    }
    PartitionStream stream(n);
    while (const auto p = stream.next()) {
        const auto s = statistic == Statistic::rank ? dyson_rank(*p) : crank(*p);
        ++t.counts[static_cast<std::size_t>(mod_floor(s, ell))];
    }
    return t;
}

std::vector<BigInt> partition_numbers(std::int64_t n_max)
{
    std::vector<BigInt> p(static_cast<std::size_t>(n_max + 1), 0);
    p[0] = 1;
    // allow parts 1, 2, ..., m in turn
    for (std::int64_t m = 1; m <= n_max; ++m) {
        for (auto j = m; j <= n_max; ++j) {
            p[static_cast<std::size_t>(j)] += p[static_cast<std::size_t>(j - m)];
        }
    }
    return p;
}

BigInt colored_partition_count(std::int64_t k, std::int64_t n)
{
    if (k < 1 || n < 0) {
        throw std::invalid_argument("colored_partition_count: need k >= 1 and n >= 0");
    }
    const auto p = partition_numbers(n);
    auto acc = p;
    for (std::int64_t round = 1; round < k; ++round) {
        std::vector<BigInt> next(acc.size(), 0);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            for (std::size_t j = 0; i + j < acc.size(); ++j) {
                next[i + j] += acc[i] * p[j];
            }
        }
        acc = std::move(next);
    }
    return acc[static_cast<std::size_t>(n)];
}

std::vector<std::int64_t> partition_mod_table(std::int64_t n, std::int64_t ell)
{
    if (n < 0 || ell < 1) {
        throw std::invalid_argument("partition_mod_table: need n >= 0 and ell >= 1");
    }
    std::vector<std::int64_t> p(static_cast<std::size_t>(n + 1), 0);
    p[0] = 1 % ell;
    for (std::int64_t m = 1; m <= n; ++m) {
        std::int64_t s = 0;
        for (std::int64_t k = 1;; ++k) {
            const auto g1 = k * (3 * k - 1) / 2;
            if (g1 > m) {
                break;
            }
            const auto sign = (k % 2 == 1) ? 1 : ell - 1;
            s += sign * p[static_cast<std::size_t>(m - g1)];
            const auto g2 = k * (3 * k + 1) / 2;
            if (g2 <= m) {
                s += sign * p[static_cast<std::size_t>(m - g2)];
            }
            s %= ell;
        }
        p[static_cast<std::size_t>(m)] = s;
    }
    return p;
}

std::int64_t partition_mod_recurrence(std::int64_t n, std::int64_t ell)
{
    return partition_mod_table(n, ell).back();
}

namespace
{

// Laurent polynomial in x = e(z/2), keyed by exponent.
using ZPoly = std::map<std::int64_t, BigInt>;

void zpoly_add(ZPoly &acc, std::int64_t k, const BigInt &c)
{
    auto &slot = acc[k];
    slot += c;
    if (slot == 0) {
        acc.erase(k);
    }
}

ZPoly zpoly_mul(const ZPoly &a, const ZPoly &b)
{
    ZPoly out;
    for (const auto &[i, x] : a) {
        for (const auto &[j, y] : b) {
            zpoly_add(out, i + j, x * y);
        }
    }
    return out;
}

// Schoolbook division from the top; nullopt on a remainder.
std::optional<ZPoly> zpoly_divide(ZPoly num, const ZPoly &den)
{
    if (den.empty()) {
        throw std::domain_error("division by the zero polynomial");
    }
    const auto [dtop, dlead] = *den.rbegin();
    const auto dlow = den.begin()->first;
    ZPoly quot;
    while (!num.empty()) {
        const auto [ntop, nlead] = *num.rbegin();
        if (ntop - dtop < num.begin()->first - dlow) {
            return std::nullopt;
        }
        if (!mpz_divisible_p(nlead.get_mpz_t(), dlead.get_mpz_t())) {
            return std::nullopt;
        }
        const BigInt c = nlead / dlead;
        const auto shift = ntop - dtop;
        quot[shift] = c;
        for (const auto &[k, d] : den) {
            zpoly_add(num, k + shift, -c * d);
        }
    }
    return quot;
}

// Order of vanishing at x = 1 (i.e. at z = 0), by repeated division by x - 1.
std::int64_t order_at_one(ZPoly p)
{
    const ZPoly x_minus_1{{0, -1}, {1, 1}};
    std::int64_t k = 0;
    while (!p.empty()) {
        auto q = zpoly_divide(p, x_minus_1);
        if (!q) {
            break;
        }
        p = std::move(*q);
        ++k;
    }
    return k;
}

ZPoly zpoly_pow(const ZPoly &base, std::int64_t e)
{
    ZPoly out{{0, 1}};
    for (std::int64_t i = 0; i < e; ++i) {
        out = zpoly_mul(out, base);
    }
    return out;
}

// e(a z / 2) - e(-a z / 2) over x = e(z/2)
ZPoly half_difference(std::int64_t a)
{
    ZPoly p;
    zpoly_add(p, a, 1);
    zpoly_add(p, -a, -1);
    return p;
}

// 1 - e(a z)
ZPoly one_minus(std::int64_t a)
{
    ZPoly p;
    zpoly_add(p, 0, 1);
    zpoly_add(p, 2 * a, -1);
    return p;
}

// Truncated bivariate series: row i is the coefficient of q^i.
struct Naive {
    std::int64_t terms;
    std::vector<ZPoly> rows;

    explicit Naive(std::int64_t t) : terms(t), rows(static_cast<std::size_t>(t))
    {
        if (t > 0) {
            rows[0][0] = 1;
        }
    }

    // multiply by sum_k c_k q^(p k) x^(s k)
    void times(std::int64_t p, std::int64_t s, const std::vector<BigInt> &c)
    {
        std::vector<ZPoly> out(rows.size());
        for (std::int64_t i = 0; i < terms; ++i) {
            for (const auto &[zk, v] : rows[static_cast<std::size_t>(i)]) {
                for (std::size_t k = 0; k < c.size(); ++k) {
                    const auto qi = i + p * static_cast<std::int64_t>(k);
                    if (qi >= terms) {
                        break;
                    }
                    if (c[k] != 0) {
                        zpoly_add(out[static_cast<std::size_t>(qi)], zk + s * static_cast<std::int64_t>(k), v * c[k]);
                    }
                }
            }
        }
        rows = std::move(out);
    }

    // multiply by (1 - q^p x^s)^e, p >= 1
    void times_binomial(std::int64_t p, std::int64_t s, std::int64_t e)
    {
        if (e == 0 || p >= terms) {
            return;
        }
        std::vector<BigInt> c;
        const auto kmax = (terms - 1) / p;
        for (std::int64_t k = 0; k <= kmax; ++k) {
            BigInt b;
            if (e > 0) {
                if (k > e) {
                    break;
                }
                mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
                if (k % 2 == 1) {
                    b = -b;
                }
            } else {
                // (1 - y)^-m = sum C(m + k - 1, k) y^k
                mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(-e + k - 1), static_cast<unsigned long>(k));
            }
            c.push_back(b);
        }
        times(p, s, c);
    }
};

std::int64_t lcm(std::int64_t a, std::int64_t b)
{
    return std::lcm(a, b);
}

} // namespace

OracleExpansion oracle_product_coefficients(const ProductSpec &spec, std::int64_t terms)
{
    spec.validate();
    if (terms < 1) {
        throw std::invalid_argument("oracle_product_coefficients: terms must be positive");
    }
    Naive body(terms);
    ZPoly num_z{{0, 1}};
    ZPoly den_z{{0, 1}};
    auto absorb = [&](const ZPoly &p, std::int64_t e) {
        if (e > 0) {
            num_z = zpoly_mul(num_z, zpoly_pow(p, e));
        } else if (e < 0) {
            den_z = zpoly_mul(den_z, zpoly_pow(p, -e));
        }
    };

    Rational shift = spec.q_prefactor;
    std::int64_t dq = spec.q_prefactor.den();
    for (const auto &f : spec.pochhammer_factors) {
        for (auto p = f.offset; p < terms; p += f.step) {
            if (p == 0) {
                absorb(one_minus(f.shift), f.exponent);
            } else {
                body.times_binomial(p, 2 * f.shift, f.exponent);
            }
        }
    }
    for (const auto &f : spec.named_factors) {
        if (f.kind == NamedFactor::Kind::eta) {
            shift += Rational(f.arg * f.exponent, 24);
            dq = lcm(dq, 24);
            for (auto p = f.arg; p < terms; p += f.arg) {
                body.times_binomial(p, 0, f.exponent);
            }
        } else {
            shift += Rational(f.exponent, 8);
            dq = lcm(dq, 8);
            absorb(half_difference(f.arg), f.exponent);
            for (std::int64_t p = 1; p < terms; ++p) {
                body.times_binomial(p, 0, f.exponent);
                body.times_binomial(p, 2 * f.arg, f.exponent);
                body.times_binomial(p, -2 * f.arg, f.exponent);
            }
        }
    }

    const auto nu = std::max<std::int64_t>(0, order_at_one(den_z) - order_at_one(num_z));
    const auto lifted = zpoly_mul(num_z, zpoly_pow(half_difference(1), nu));
    const auto z_pre = EllipticPolynomial::monomial_z(spec.z_prefactor, 1);

    const auto key0 = shift.scaled_to(dq);
    OracleExpansion out{FourierSeries(dq, key0 + terms * dq), nu};
    for (std::int64_t i = 0; i < terms; ++i) {
        const auto &row = body.rows[static_cast<std::size_t>(i)];
        if (row.empty()) {
            continue;
        }
        auto c = zpoly_divide(zpoly_mul(row, lifted), den_z);
        if (!c) {
            throw SpecHasResidualPole("quotient has a pole away from z in Z (q-step " + std::to_string(i) + ")");
        }
        std::vector<std::pair<std::int64_t, BigInt>> pairs(c->begin(), c->end());
        out.series.set(key0 + i * dq, EllipticPolynomial::from_terms(2, pairs) * z_pre);
    }
    return out;
}

FourierSeries theta_triple_product_sum(const Rational &bound)
{
    if (8 % bound.den() != 0) {
        throw std::invalid_argument("theta_triple_product_sum: bound must lie in (1/8)Z");
    }
    FourierSeries out(8, bound.scaled_to(8));
    for (std::int64_t n = 0;; ++n) {
        // n and -1 - n share the exponent (2n+1)^2 / 8
        const auto odd = 2 * n + 1;
        const auto key = odd * odd;
        if (key >= out.truncation()) {
            break;
        }
        const BigInt sign = n % 2 == 0 ? 1 : -1;
        out.set(key, EllipticPolynomial::monomial(odd, sign, 2) + EllipticPolynomial::monomial(-odd, -sign, 2));
    }
    return out;
}

FourierSeries eta_pentagonal_sum(const Rational &bound)
{
    if (24 % bound.den() != 0) {
        throw std::invalid_argument("eta_pentagonal_sum: bound must lie in (1/24)Z");
    }
    FourierSeries out(24, bound.scaled_to(24));
    // exponent 1/24 + k(3k-1)/2, i.e. key 1 + 12 k (3k - 1)
    for (std::int64_t k = 0;; ++k) {
        bool any = false;
        for (const auto kk : k == 0 ? std::vector<std::int64_t>{0} : std::vector<std::int64_t>{k, -k}) {
            const auto key = 1 + 12 * kk * (3 * kk - 1);
            if (key < out.truncation()) {
                out.set(key, EllipticPolynomial(k % 2 == 0 ? 1 : -1));
                any = true;
            }
        }
        if (!any) {
            break;
        }
    }
    return out;
}

} // namespace cforge::oracle
