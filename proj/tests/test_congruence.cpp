#include <doctest.h>

#include <random>
#include <set>

#include <cforge/congruence.hpp>
#include <cforge/errors.hpp>
#include <cforge/oracle.hpp>

using namespace cforge;

namespace
{

const JacobiExpansion &crank_phi()
{
    static const auto phi = JacobiExpansion::from_spec(crank_spec(), 500);
    return phi;
}

const Specialization &inverse_eta(std::int64_t terms)
{
    static std::map<std::int64_t, Specialization> cache;
    auto it = cache.find(terms);
    if (it == cache.end()) {
        ProductSpec s;
        s.named_factors = {eta_factor(1, -1)};
        it = cache.emplace(terms, specialize(JacobiExpansion::from_spec(s, terms))).first;
    }
    return it->second;
}

Rational shifted(std::int64_t n)
{
    return Rational(n) - Rational(1, 24);
}

} // namespace

TEST_CASE("detect_congruence on 1/eta")
{
    const auto &f = inverse_eta(2000);
    for (const auto &[ell, beta] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 4}, {7, 5}, {11, 6}}) {
        const auto r = detect_congruence(f, {ell, ell, shifted(beta), std::nullopt});
        CHECK(r.holds_plain);
        CHECK_FALSE(r.first_counterexample);
        CHECK_FALSE(r.vacuous);
        CHECK(r.checked_count >= 2000 / ell);
    }
    const auto bad = detect_congruence(f, {5, 5, shifted(1), std::nullopt});
    CHECK_FALSE(bad.holds_plain);
    CHECK(bad.first_counterexample == shifted(1));
    CHECK(bad.checked_count == 1);

    // n_max cuts evidence
    const auto cut = detect_congruence(f, {5, 5, shifted(4), shifted(4) + Rational(50)});
    CHECK(cut.checked_count == 10);
    CHECK_THROWS_AS((void)detect_congruence(f, {5, 5, shifted(4), Rational(40)}), InsufficientRange);
    try {
        (void)detect_congruence(f, {5, 5, shifted(4), Rational(40)});
    } catch (const InsufficientRange &e) {
        CHECK(e.found == 8);
        CHECK(e.required == 10);
    }

    // off the support coset: vacuous, no evidence needed
    const auto vac = detect_congruence(f, {5, 5, Rational(1, 3), Rational(2)});
    CHECK(vac.vacuous);
    CHECK(vac.holds_plain);
    CHECK(vac.checked_count == 0);

    CHECK_THROWS_AS((void)detect_congruence(f, {6, 5, shifted(4), std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS((void)detect_congruence(f, {5, 0, shifted(4), std::nullopt}), std::invalid_argument);
}

TEST_CASE("check_explainable on the crank form")
{
    const auto &phi = crank_phi();
    for (const auto &[ell, beta] : std::vector<std::pair<std::int64_t, std::int64_t>>{{5, 4}, {7, 5}, {11, 6}}) {
        const auto r = check_explainable(phi, {ell, ell, shifted(beta), std::nullopt});
        CHECK(r.explainable);
        CHECK(r.holds_plain);
        CHECK(r.explainability_tested);
        CHECK_FALSE(r.failing_n);
    }
    const auto r0 = check_explainable(phi, {5, 5, shifted(0), std::nullopt});
    CHECK_FALSE(r0.explainable);
    CHECK(r0.failing_n == Rational(-1, 24));
    CHECK_FALSE(r0.holds_plain);

    const auto r1 = check_explainable(phi, {5, 5, shifted(1), std::nullopt});
    CHECK_FALSE(r1.explainable);
    CHECK_FALSE(r1.vacuous);
}

TEST_CASE("explainable implies plain")
{
    const auto &phi = crank_phi();
    for (const std::int64_t ell : {2, 3, 5, 7, 11, 13}) {
        for (std::int64_t m = 1; m <= 2 * ell; ++m) {
            for (std::int64_t j = 0; j < m; ++j) {
                const auto r = check_explainable(phi, {ell, m, shifted(j), std::nullopt});
                if (r.explainable && !r.vacuous) {
                    REQUIRE(r.holds_plain);
                }
                REQUIRE(r.holds_plain == detect_congruence(specialize(phi), r.query).holds_plain);
            }
        }
    }
}

TEST_CASE("square_class_orbit")
{
    const auto sq = square_class_orbit(13, Rational(1));
    CHECK(sq == std::vector<Rational>{1, 3, 4, 9, 10, 12});
    CHECK(square_class_orbit(5, Rational(95, 24)) == std::vector<Rational>{Rational(95, 24)});
    CHECK(square_class_orbit(7, Rational(0)) == std::vector<Rational>{0});
    CHECK(square_class_orbit(1, Rational(5, 3)) == std::vector<Rational>{Rational(2, 3)});

    // literal coprimality lets u^2 beta leave beta + Z
    const auto lit = square_class_orbit(5, Rational(95, 24), true);
    CHECK(lit.size() > 1);
    CHECK(std::find(lit.begin(), lit.end(), Rational(95, 24)) != lit.end());

    // closed under multiplication by unit squares
    for (const std::int64_t m : {5, 7, 12, 13, 24, 25, 30}) {
        for (const auto &beta : {Rational(1), Rational(95, 24), Rational(3, 8), Rational(2)}) {
            const auto orbit = square_class_orbit(m, beta);
            const std::set<Rational> set(orbit.begin(), orbit.end());
            for (const auto &b : orbit) {
                const auto again = square_class_orbit(m, b);
                for (const auto &c : again) {
                    REQUIRE(set.count(c) == 1);
                }
                REQUIRE(b >= Rational(0));
                REQUIRE(b < Rational(m));
            }
        }
    }
}

TEST_CASE("verify_square_class_theorem")
{
    const auto &phi = crank_phi();
    const auto v5 = verify_square_class_theorem(phi, {5, 5, shifted(4), std::nullopt});
    CHECK(v5.violations() == 0);
    CHECK(v5.orbit.size() == 1);
    CHECK(v5.orbit.front().report.explainable);

    const auto v7 = verify_square_class_theorem(phi, {7, 7, shifted(5), std::nullopt});
    CHECK(v7.violations() == 0);
    for (const auto &e : v7.orbit) {
        CHECK(e.report.explainable);
    }

    AnalysisOptions literal;
    literal.literal_coprimality = true;
    const auto vl = verify_square_class_theorem(phi, {5, 5, shifted(4), std::nullopt}, literal);
    CHECK(vl.violations() == 0);
    CHECK(vl.vacuous_count() == vl.orbit.size() - 1);
    for (const auto &e : vl.orbit) {
        CHECK(e.violation == false);
        if (e.report.vacuous) {
            CHECK(e.report.checked_count == 0);
        }
    }

    CHECK_THROWS_AS((void)verify_square_class_theorem(phi, {5, 5, shifted(1), std::nullopt}), std::invalid_argument);
    CHECK_THROWS_AS((void)verify_square_class_theorem(phi, {5, 5, Rational(1, 2), std::nullopt}),
                    std::invalid_argument);

    AnalysisOptions threaded;
    threaded.threads = 4;
    const auto vt = verify_square_class_theorem(phi, {11, 22, shifted(6), std::nullopt}, threaded);
    const auto vs = verify_square_class_theorem(phi, {11, 22, shifted(6), std::nullopt});
    REQUIRE(vt.orbit.size() == vs.orbit.size());
    CHECK(vt.orbit.size() == 2);
    CHECK(vt.violations() == 0);
    for (std::size_t i = 0; i < vt.orbit.size(); ++i) {
        CHECK(vt.orbit[i].report.query.beta == vs.orbit[i].report.query.beta);
        CHECK(vt.orbit[i].report.explainable == vs.orbit[i].report.explainable);
    }
}

TEST_CASE("ord_p and maximality bounds")
{
    CHECK(ord_p(Rational(99), 3) == 2);
    CHECK(ord_p(Rational(5, 24), 2) == -3);
    CHECK(ord_p(Rational(-50, 3), 5) == 2);
    CHECK_THROWS_AS((void)ord_p(Rational(0), 5), std::domain_error);

    const auto m = check_maximality_bounds(125, Rational(99));
    CHECK_FALSE(m.ok);
    REQUIRE(m.primes.size() == 1);
    CHECK(m.primes[0].prime == 5);
    CHECK(m.primes[0].ord_modulus == 3);
    CHECK(m.primes[0].bound == 1);
    CHECK_FALSE(m.primes[0].ok);

    CHECK(check_maximality_bounds(8, Rational(1)).ok);
    CHECK_FALSE(check_maximality_bounds(16, Rational(1)).ok);
    CHECK(check_maximality_bounds(1, Rational(7, 3)).ok);
    CHECK(check_maximality_bounds(1, Rational(7, 3)).primes.empty());
    const auto zero = check_maximality_bounds(3125, Rational(0));
    CHECK(zero.ok);
    CHECK_FALSE(zero.primes[0].ord_beta);
    // negative ord clamps at zero
    CHECK_FALSE(check_maximality_bounds(5, Rational(1, 25)).ok);
    CHECK(check_maximality_bounds(5, Rational(95, 24)).ok);
    // representative independence: beta and beta + M give the same verdict
    for (std::int64_t m2 = 1; m2 <= 60; ++m2) {
        for (std::int64_t b = 1; b < 30; ++b) {
            REQUIRE(check_maximality_bounds(m2, Rational(b, 24)).ok
                    == check_maximality_bounds(m2, Rational(b, 24) + Rational(m2)).ok);
        }
    }
}

TEST_CASE("maximal_elements")
{
    const std::vector<Progression> hits{{5, Rational(4)}, {25, Rational(24)}, {10, Rational(9)}, {7, Rational(5)}};
    const auto max = maximal_elements(hits);
    CHECK(max == std::vector<Progression>{{5, Rational(4)}, {7, Rational(5)}});
    CHECK(maximal_elements({}).empty());
    // equal sets are both kept
    CHECK(maximal_elements({{5, Rational(4)}, {5, Rational(9)}}).size() == 2);
}

TEST_CASE("scan_maximal_progressions")
{
    const auto &f = inverse_eta(2000);
    const auto s5 = scan_maximal_progressions(f, 5, 30);
    bool found = false;
    for (const auto &m : s5.plain) {
        found = found || m.progression == Progression{5, shifted(4)};
        const bool strictly_coarser = Progression{5, shifted(4)}.subset_of(m.progression)
                                      && !(m.progression == Progression{5, shifted(4)});
        CHECK_FALSE(strictly_coarser);
        CHECK(m.progression.modulus % 25 != 0);
    }
    CHECK(found);
    CHECK(s5.cells_skipped == 0);
    CHECK(s5.cells_checked == 30 * 31 / 2);

    CHECK(scan_maximal_progressions(f, 3, 10).plain.empty());

    // cross-check every cell against the partition oracle
    const auto table = oracle::partition_mod_table(1999, 7);
    const auto s7 = scan_maximal_progressions(f, 7, 14);
    for (const auto &m : s7.plain) {
        for (auto n = m.progression.offset + Rational(1, 24); n < Rational(2000); n += Rational(m.progression.modulus)) {
            REQUIRE(table[static_cast<std::size_t>(n.num())] == 0);
        }
    }
    CHECK(s7.plain.size() == 1);

    const Specialization zero(24, 24 * 100, Rational(23, 24), Rational(-1, 24));
    const auto z = scan_maximal_progressions(zero, 5, 12);
    REQUIRE(z.plain.size() == 1);
    CHECK(z.plain[0].progression == Progression{1, Rational(23, 24)});

    CHECK_THROWS_AS((void)scan_maximal_progressions(inverse_eta(5), 5, 3), InsufficientRange);
}

TEST_CASE("scan with an explaining form")
{
    AnalysisOptions opts;
    opts.threads = 2;
    const auto s = scan_maximal_progressions(crank_phi(), 5, 30, std::nullopt, opts);
    REQUIRE(s.explained.size() >= 1);
    CHECK(s.explained[0].progression == Progression{5, shifted(4)});
    for (const auto &m : s.explained) {
        CHECK(m.explained);
        CHECK(m.bounds.ok);
    }
    const auto serial = scan_maximal_progressions(crank_phi(), 5, 30);
    REQUIRE(serial.explained.size() == s.explained.size());
    REQUIRE(serial.plain.size() == s.plain.size());
    for (std::size_t i = 0; i < s.plain.size(); ++i) {
        CHECK(serial.plain[i].progression == s.plain[i].progression);
    }
}
