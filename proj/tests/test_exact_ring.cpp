#include <doctest.h>

#include <random>

#include <cforge/elliptic_polynomial.hpp>

#include "support.hpp"

using namespace cforge;
using testing_support::poly;
using testing_support::px;

TEST_CASE("ep_add")
{
    CHECK(ep_add(px({{1, 1}, {-1, -1}}), px({{-1, 1}})) == px({{1, 1}}));
    const auto p = px({{0, 3}, {2, -7}});
    CHECK(ep_add(EllipticPolynomial(), p) == p);
    CHECK(ep_add(px({{0, 1}, {1, 1}}), px({{0, 1}, {1, -1}})) == EllipticPolynomial(2));
    CHECK(ep_add(p, -p).is_zero());
}

TEST_CASE("ep_mul")
{
    const auto half = poly(2, {{1, 1}, {-1, -1}});
    CHECK(ep_mul(half, half) == px({{1, 1}, {0, -2}, {-1, 1}}));
    CHECK(ep_mul(half, half).denom() == 2);
    const auto p = px({{3, 5}, {-2, 1}});
    CHECK(ep_mul(p, EllipticPolynomial(1)) == p);
    CHECK(ep_mul(px({{0, 1}, {1, 1}}), px({{0, 1}, {1, -1}})) == px({{0, 1}, {2, -1}}));
    CHECK(ep_mul(p, EllipticPolynomial()).is_zero());
}

TEST_CASE("denominators unify by lcm")
{
    const auto a = poly(2, {{1, 1}});  // e(z/2)
    const auto b = poly(6, {{2, 1}});  // e(z/3)
    const auto s = ep_add(a, b);
    CHECK(s.denom() == 6);
    CHECK(s.coefficient(3) == 1);
    CHECK(s.coefficient(2) == 1);
    CHECK(ep_mul(a, b) == poly(6, {{5, 1}}));
    // same function of z, different lattices
    CHECK(poly(2, {{2, 4}}) == poly(4, {{4, 4}}));
    CHECK(EllipticPolynomial::monomial_z(Rational(1, 3), 2).denom() == 6);
}

TEST_CASE("no stored zeros and trimming")
{
    auto p = px({{0, 1}, {5, 2}, {5, -2}});
    CHECK(p.term_count() == 1);
    CHECK(p.min_exponent() == 0);
    CHECK(p.max_exponent() == 0);
    p = px({{2, 0}});
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
}

TEST_CASE("to_string")
{
    CHECK(px({{-1, 1}, {0, -1}, {1, 1}}).to_string() == "x^(-1) - 1 + x");
    CHECK(poly(2, {{1, 1}, {-1, -1}}).to_string() == "-x^(-1/2) + x^(1/2)");
    CHECK(EllipticPolynomial().to_string() == "0");
}

TEST_CASE("ep_eval_at_zero")
{
    CHECK(ep_eval_at_zero(px({{1, 1}, {0, -2}, {-1, 1}})) == 0);
    CHECK(ep_eval_at_zero(px({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}})) == 5);
    CHECK(ep_eval_at_zero(ep_mul(cyclotomic_in_z(5), px({{-1, 3}}))) == 15);
}

TEST_CASE("ep_cyclotomic_divide")
{
    const auto phi5 = px({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
    CHECK(phi5 == cyclotomic_in_z(5));
    auto q = ep_cyclotomic_divide(phi5, 5);
    REQUIRE(q);
    CHECK(*q == EllipticPolynomial(1));
    q = ep_cyclotomic_divide(ep_mul(px({{-1, 1}}), phi5), 5);
    REQUIRE(q);
    CHECK(*q == px({{-1, 1}}));
    CHECK_FALSE(ep_cyclotomic_divide(px({{0, 1}, {1, 1}}), 5));
    // 1 + x at a primitive fifth root is nonzero
    CHECK(std::abs(testing_support::evaluate(px({{0, 1}, {1, 1}}), 0.2)) > 0.5);
    CHECK(ep_cyclotomic_divide(EllipticPolynomial(), 7)->is_zero());
    CHECK_THROWS_AS((void)ep_cyclotomic_divide(phi5, 4), std::invalid_argument);
    CHECK_THROWS_AS((void)ep_vanishes_at_ell_torsion(phi5, 9), std::invalid_argument);
}

TEST_CASE("division on a finer lattice")
{
    // Phi_3(e(z)) times e(z/2) - e(-z/2), written over zeta = e(z/4)
    const auto p = ep_mul(cyclotomic_in_z(3, 4), poly(4, {{2, 1}, {-2, -1}}));
    const auto q = ep_cyclotomic_divide(p, 3);
    REQUIRE(q);
    CHECK(*q == poly(2, {{1, 1}, {-1, -1}}));
    CHECK(ep_vanishes_at_ell_torsion(p, 3));
    // e(z/4) vanishes nowhere
    CHECK_FALSE(ep_vanishes_at_ell_torsion(poly(4, {{1, 1}}), 3));
    // 1 + e(z/2) only vanishes on odd integers
    CHECK_FALSE(ep_vanishes_at_ell_torsion(poly(2, {{0, 1}, {1, 1}}), 3));
}

TEST_CASE("ep_vanishes_at_ell_torsion")
{
    CHECK(ep_vanishes_at_ell_torsion(EllipticPolynomial(), 2));
    CHECK(ep_vanishes_at_ell_torsion(cyclotomic_in_z(5), 5));
    CHECK_FALSE(ep_vanishes_at_ell_torsion(cyclotomic_in_z(5), 7));
    const auto p = px({{1, 1}, {0, -2}, {-1, 1}});
    CHECK_FALSE(ep_vanishes_at_ell_torsion(p, 3));
    // value at z = 1/3 is 2 cos(2 pi / 3) - 2 = -3
    CHECK(testing_support::evaluate(p, 1.0 / 3).real() == doctest::Approx(-3.0));
}

TEST_CASE("division and torsion vanishing agree on random input")
{
    std::mt19937_64 rng(20240611);
    for (const std::int64_t ell : {2, 3, 5, 7, 13}) {
        int divisible = 0;
        for (int i = 0; i < 1000; ++i) {
            const std::int64_t denom = (i % 3 == 0) ? 4 : 2;
            auto p = testing_support::random_poly(rng, denom, 6, 9, 3 * ell);
            if (i % 2 == 0) {
                p = ep_mul(p, cyclotomic_in_z(ell, denom));
            }
            if (i % 10 == 1) {
                p = ep_add(p, EllipticPolynomial::monomial(static_cast<std::int64_t>(i % 7), 1, denom));
            }
            const auto q = ep_cyclotomic_divide(p, ell);
            const bool vanishes = ep_vanishes_at_ell_torsion(p, ell);
            REQUIRE(q.has_value() == vanishes);
            REQUIRE(vanishes == testing_support::numerically_vanishes(p, ell));
            if (q) {
                ++divisible;
                REQUIRE(ep_mul(*q, cyclotomic_in_z(ell, denom)) == p);
            }
        }
        CHECK(divisible >= 400);
    }
}

TEST_CASE("ring laws")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const std::int64_t da = 2 * (1 + i % 3);
        const auto a = testing_support::random_poly(rng, da, 5, 1000, 8);
        const auto b = testing_support::random_poly(rng, 2, 5, 1000, 8);
        const auto c = testing_support::random_poly(rng, 4, 5, 1000, 8);
        REQUIRE(ep_add(a, b) == ep_add(b, a));
        REQUIRE(ep_mul(a, b) == ep_mul(b, a));
        REQUIRE(ep_add(ep_add(a, b), c) == ep_add(a, ep_add(b, c)));
        REQUIRE(ep_mul(ep_mul(a, b), c) == ep_mul(a, ep_mul(b, c)));
        REQUIRE(ep_mul(a, ep_add(b, c)) == ep_add(ep_mul(a, b), ep_mul(a, c)));
        REQUIRE(ep_eval_at_zero(ep_mul(a, b)) == ep_eval_at_zero(a) * ep_eval_at_zero(b));
    }
}

TEST_CASE("eval of p * Phi_ell is ell * eval p")
{
    std::mt19937_64 rng(11);
    for (const std::int64_t ell : {2, 3, 5, 7, 11, 13}) {
        for (int i = 0; i < 200; ++i) {
            const auto p = testing_support::random_poly(rng, 2 * (1 + i % 2), 7, 50, 20);
            REQUIRE(ep_eval_at_zero(ep_mul(p, cyclotomic_in_z(ell, p.denom()))) == ell * ep_eval_at_zero(p));
        }
    }
}

TEST_CASE("exact division")
{
    const auto a = px({{0, 1}, {1, 1}});
    const auto b = px({{-2, 3}, {4, -1}, {0, 2}});
    auto q = ep_exact_divide(ep_mul(a, b), a);
    REQUIRE(q);
    CHECK(*q == b);
    CHECK_FALSE(ep_exact_divide(px({{0, 1}}), px({{0, 2}})));
    CHECK_FALSE(ep_exact_divide(b, a));
}

TEST_CASE("is_prime")
{
    CHECK(is_prime(2));
    CHECK(is_prime(13));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("add_window_sum matches repeated shifts")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        const auto a = testing_support::random_poly(rng, 2, 6, 40, 12);
        const auto b = testing_support::random_poly(rng, 2, 6, 40, 12);
        const std::int64_t stride = 1 + i % 4;
        const std::int64_t radius = i % 5;
        const int sign = i % 2 == 0 ? 1 : -1;
        auto expected = a;
        for (std::int64_t j = -radius; j <= radius; ++j) {
            expected.add_shifted(b, j * stride, sign);
        }
        auto got = a;
        got.add_window_sum(b, stride, radius, sign);
        REQUIRE(got == expected);
    }
    CHECK(EllipticPolynomial::from_window(2, -3, {BigInt(0), BigInt(1), BigInt(0)}) == poly(2, {{-2, 1}}));
    CHECK(EllipticPolynomial::from_window(2, 0, {BigInt(0)}).is_zero());
}
