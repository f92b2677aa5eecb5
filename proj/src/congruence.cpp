#include <cforge/congruence.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <mutex>
#include <thread>

#include <cforge/errors.hpp>

namespace cforge
{

void CongruenceQuery::validate() const
{
    if (!is_prime(ell)) {
        throw std::invalid_argument("ell = " + std::to_string(ell) + " is not prime");
    }
    if (modulus < 1) {
        throw std::invalid_argument("M = " + std::to_string(modulus) + " must be positive");
    }
}

namespace
{

struct ProgressionPoints {
    bool vacuous = false;
    std::vector<Rational> points;
};

ProgressionPoints progression_points(const Rational &support_offset, const Rational &window_start,
                                     const Rational &truncation, const CongruenceQuery &q)
{
    q.validate();
    ProgressionPoints out;
    if (!(q.beta - support_offset).is_integer()) {
        out.vacuous = true;
        return out;
    }
    const auto bound = std::min(q.n_max.value_or(truncation), truncation);
    const Rational step(q.modulus);
    for (auto n = Progression{q.modulus, q.beta}.normalized_from(window_start).offset; n < bound; n += step) {
        out.points.push_back(n);
    }
    return out;
}

void require_evidence(const ProgressionPoints &pts, const CongruenceQuery &q, const AnalysisOptions &opts)
{
    if (!pts.vacuous && pts.points.size() < opts.min_evidence) {
        throw InsufficientRange("progression " + std::to_string(q.modulus) + "Z + " + q.beta.to_string() + " has only "
                                    + std::to_string(pts.points.size()) + " exponents below the evidence bound, need "
                                    + std::to_string(opts.min_evidence),
                                pts.points.size(), opts.min_evidence);
    }
}

bool divisible(const BigInt &v, std::int64_t ell)
{
    return mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(ell)) != 0;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the first exception.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn)
{
    const auto workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (auto i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    pool.clear();
    if (error) {
        std::rethrow_exception(error);
    }
}

std::vector<std::int64_t> prime_divisors(std::int64_t n)
{
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

std::int64_t ord_int(std::int64_t x, std::int64_t p)
{
    std::int64_t k = 0;
    x = x < 0 ? -x : x;
    while (x != 0 && x % p == 0) {
        x /= p;
        ++k;
    }
    return k;
}

} // namespace

CongruenceReport detect_congruence(const Specialization &f, const CongruenceQuery &q, const AnalysisOptions &opts)
{
    const auto pts = progression_points(f.support_offset(), f.window_start(), f.truncation_exponent(), q);
    require_evidence(pts, q, opts);
    CongruenceReport r;
    r.query = q;
    r.vacuous = pts.vacuous;
    for (const auto &n : pts.points) {
        ++r.checked_count;
        if (!divisible(f.coefficient_at(n), q.ell)) {
            r.holds_plain = false;
            r.first_counterexample = n;
            break;
        }
    }
    return r;
}

CongruenceReport check_explainable(const JacobiExpansion &phi, const CongruenceQuery &q, const AnalysisOptions &opts)
{
    const auto pts = progression_points(phi.support_offset(), phi.window_start(), phi.truncation_exponent(), q);
    require_evidence(pts, q, opts);
    CongruenceReport r;
    r.query = q;
    r.vacuous = pts.vacuous;
    r.explainability_tested = true;
    r.explainable = true;
    for (const auto &n : pts.points) {
        ++r.checked_count;
        const auto c = phi.leading_coefficient(n);
        const bool plain = divisible(ep_eval_at_zero(c), q.ell);
        if (!plain && r.holds_plain) {
            r.holds_plain = false;
            r.first_counterexample = n;
        }
        if (r.explainable) {
            const bool divides = ep_cyclotomic_divide(c, q.ell).has_value();
            if (divides != ep_vanishes_at_ell_torsion(c, q.ell)) {
                throw std::logic_error("cyclotomic division and torsion vanishing disagree at n = " + n.to_string());
            }
            if (divides && !plain) {
                throw std::logic_error("Phi_ell divides c~ but ell does not divide c(f; n) at n = " + n.to_string());
            }
            if (!divides) {
                r.explainable = false;
                r.failing_n = n;
            }
        }
        if (!r.explainable && !r.holds_plain) {
            break;
        }
    }
    return r;
}

std::vector<Rational> square_class_orbit(std::int64_t modulus, const Rational &beta, bool literal_coprimality)
{
    if (modulus < 1) {
        throw std::invalid_argument("square_class_orbit: M must be positive");
    }
    // u^2 beta mod M depends on u modulo M * den(beta).
    const auto d = beta.den();
    const auto period = modulus * d;
    const auto coprime_to = literal_coprimality ? modulus : period;
    const auto b = mod_floor(beta.num(), period);
    std::set<std::int64_t> classes;
    for (std::int64_t u = 1; u <= period; ++u) {
        if (std::gcd(u, coprime_to) != 1) {
            continue;
        }
        const auto u2 = static_cast<__int128>(u) * u % period;
        classes.insert(static_cast<std::int64_t>(u2 * b % period));
    }
    std::vector<Rational> out;
    out.reserve(classes.size());
    for (const auto c : classes) {
        out.emplace_back(c, d);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t OrbitVerification::violations() const
{
    return static_cast<std::size_t>(std::count_if(orbit.begin(), orbit.end(), [](const auto &e) { return e.violation; }));
}

std::size_t OrbitVerification::vacuous_count() const
{
    return static_cast<std::size_t>(
        std::count_if(orbit.begin(), orbit.end(), [](const auto &e) { return e.report.vacuous; }));
}

OrbitVerification verify_square_class_theorem(const JacobiExpansion &phi, const CongruenceQuery &q,
                                              const AnalysisOptions &opts)
{
    OrbitVerification out;
    out.base = check_explainable(phi, q, opts);
    if (out.base.vacuous || !out.base.explainable) {
        throw std::invalid_argument("verify_square_class_theorem: the congruence on " + std::to_string(q.modulus)
                                    + "Z + " + q.beta.to_string() + " is not explained by the given form");
    }
    const auto classes = square_class_orbit(q.modulus, q.beta, opts.literal_coprimality);
    out.orbit.resize(classes.size());
    parallel_for(classes.size(), opts.threads, [&](std::size_t i) {
        auto sub = q;
        sub.beta = classes[i];
        auto report = check_explainable(phi, sub, opts);
        const bool violation = !report.vacuous && !report.explainable;
        out.orbit[i] = OrbitEntry{std::move(report), violation};
    });
    return out;
}

std::int64_t ord_p(const Rational &x, std::int64_t p)
{
    if (x.is_zero()) {
        throw std::domain_error("ord_p(0) is infinite");
    }
    return ord_int(x.num(), p) - ord_int(x.den(), p);
}

MaximalityCheck check_maximality_bounds(std::int64_t modulus, const Rational &beta)
{
    if (modulus < 1) {
        throw std::invalid_argument("check_maximality_bounds: M must be positive");
    }
    MaximalityCheck out;
    for (const auto p : prime_divisors(modulus)) {
        PrimeBound b;
        b.prime = p;
        b.ord_modulus = ord_int(modulus, p);
        const auto slack = p == 2 ? 3 : 1;
        if (beta.is_zero()) {
            b.bound = b.ord_modulus;
        } else {
            b.ord_beta = ord_p(beta, p);
            b.bound = std::max<std::int64_t>(0, *b.ord_beta + slack);
        }
        b.ok = b.ord_modulus <= b.bound;
        out.ok = out.ok && b.ok;
        out.primes.push_back(b);
    }
    return out;
}

std::vector<Progression> maximal_elements(const std::vector<Progression> &hits)
{
    std::vector<Progression> out;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        bool strictly_contained = false;
        for (std::size_t j = 0; j < hits.size() && !strictly_contained; ++j) {
            strictly_contained = i != j && hits[i].subset_of(hits[j]) && !hits[j].subset_of(hits[i]);
        }
        if (!strictly_contained) {
            out.push_back(hits[i]);
        }
    }
    return out;
}

namespace
{

struct Cell {
    Progression progression;
    bool skipped = false;
    bool plain = false;
    bool explained = false;
};

std::vector<Cell> support_cells(const Rational &support_offset, std::int64_t max_modulus)
{
    std::vector<Cell> cells;
    for (std::int64_t m = 1; m <= max_modulus; ++m) {
        for (std::int64_t j = 0; j < m; ++j) {
            cells.push_back(Cell{Progression{m, support_offset + Rational(j)}});
        }
    }
    return cells;
}

ScanResult collect(std::vector<Cell> &cells, std::int64_t ell, std::int64_t max_modulus, bool with_phi)
{
    ScanResult r;
    r.ell = ell;
    r.max_modulus = max_modulus;
    std::vector<Progression> plain_hits;
    std::vector<Progression> explained_hits;
    for (const auto &c : cells) {
        if (c.skipped) {
            ++r.cells_skipped;
            continue;
        }
        ++r.cells_checked;
        if (c.plain) {
            plain_hits.push_back(c.progression);
        }
        if (c.explained) {
            explained_hits.push_back(c.progression);
        }
    }
    if (r.cells_checked == 0) {
        throw InsufficientRange("no progression with M <= " + std::to_string(max_modulus)
                                    + " has enough exponents below the evidence bound",
                                0, 1);
    }
    for (const auto &p : maximal_elements(plain_hits)) {
        r.plain.push_back(MaximalProgression{p, false, check_maximality_bounds(p.modulus, p.offset)});
    }
    if (with_phi) {
        for (const auto &p : maximal_elements(explained_hits)) {
            r.explained.push_back(MaximalProgression{p, true, check_maximality_bounds(p.modulus, p.offset)});
        }
    }
    return r;
}

} // namespace

ScanResult scan_maximal_progressions(const Specialization &f, std::int64_t ell, std::int64_t max_modulus,
                                     std::optional<Rational> n_max, const AnalysisOptions &opts)
{
    auto cells = support_cells(f.support_offset(), max_modulus);
    parallel_for(cells.size(), opts.threads, [&](std::size_t i) {
        auto &cell = cells[i];
        try {
            cell.plain = detect_congruence(f, {ell, cell.progression.modulus, cell.progression.offset, n_max}, opts)
                             .holds_plain;
        } catch (const InsufficientRange &) {
            cell.skipped = true;
        }
    });
    return collect(cells, ell, max_modulus, false);
}

ScanResult scan_maximal_progressions(const JacobiExpansion &phi, std::int64_t ell, std::int64_t max_modulus,
                                     std::optional<Rational> n_max, const AnalysisOptions &opts)
{
    const auto f = specialize(phi);
    auto cells = support_cells(phi.support_offset(), max_modulus);
    parallel_for(cells.size(), opts.threads, [&](std::size_t i) {
        auto &cell = cells[i];
        const CongruenceQuery q{ell, cell.progression.modulus, cell.progression.offset, n_max};
        try {
            cell.plain = detect_congruence(f, q, opts).holds_plain;
            cell.explained = cell.plain && check_explainable(phi, q, opts).explainable;
        } catch (const InsufficientRange &) {
            cell.skipped = true;
        }
    });
    return collect(cells, ell, max_modulus, true);
}

} // namespace cforge
