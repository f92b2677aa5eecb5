#ifndef CFORGE_CONGRUENCE_HPP
#define CFORGE_CONGRUENCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <cforge/jacobi_expansion.hpp>
#include <cforge/rational.hpp>

namespace cforge
{

struct CongruenceQuery {
    std::int64_t ell = 5;
    std::int64_t modulus = 1;
    Rational beta;
    // Exclusive exponent bound for evidence; defaults to the expansion's truncation.
    std::optional<Rational> n_max;

    void validate() const;
};

// All verdicts hold only for exponents below n_max.
//
// A vacuous report has a progression disjoint from the support coset; it is
// trivially congruent (holds_plain and explainable are true) but carries no evidence.
struct CongruenceReport {
    CongruenceQuery query;
    bool holds_plain = true;
    std::optional<Rational> first_counterexample;
    bool explainable = false;
    bool explainability_tested = false;
    std::optional<Rational> failing_n;
    bool vacuous = false;
    std::size_t checked_count = 0;
};

struct AnalysisOptions {
    // Minimum number of exponents a non-vacuous progression must contain.
    std::size_t min_evidence = 10;
    unsigned threads = 1;
    // Orbit units u range over gcd(u, M) = 1 instead of gcd(u, M * den(beta)) = 1.
    bool literal_coprimality = false;
};

// Plain Ramanujan-type congruence: ell | c(f; n) for n in M Z + beta, n < n_max.
[[nodiscard]] CongruenceReport detect_congruence(const Specialization &f, const CongruenceQuery &q,
                                                 const AnalysisOptions &opts = {});

// Explainability: Phi_ell(e(z)) | c~(phi; n; z) on the progression. Also fills the
// plain fields from c~(phi; n; 0) and cross-checks the torsion-vanishing test;
// a disagreement throws std::logic_error.
[[nodiscard]] CongruenceReport check_explainable(const JacobiExpansion &phi, const CongruenceQuery &q,
                                                 const AnalysisOptions &opts = {});

// { u^2 beta mod M } over units u, as representatives in [0, M), ascending.
[[nodiscard]] std::vector<Rational> square_class_orbit(std::int64_t modulus, const Rational &beta,
                                                       bool literal_coprimality = false);

struct OrbitEntry {
    CongruenceReport report;
    // Non-vacuous and not explainable: contradicts the square-class theorem.
    bool violation = false;
};

struct OrbitVerification {
    CongruenceReport base;
    std::vector<OrbitEntry> orbit;
    [[nodiscard]] std::size_t violations() const;
    [[nodiscard]] std::size_t vacuous_count() const;
};

// Runs check_explainable on every orbit element of q.beta. Throws
// std::invalid_argument if phi does not explain the base congruence.
[[nodiscard]] OrbitVerification verify_square_class_theorem(const JacobiExpansion &phi, const CongruenceQuery &q,
                                                            const AnalysisOptions &opts = {});

struct PrimeBound {
    std::int64_t prime = 2;
    std::int64_t ord_modulus = 0;
    // nullopt encodes ord_p(0) = +infinity.
    std::optional<std::int64_t> ord_beta;
    std::int64_t bound = 0;
    bool ok = true;
};

struct MaximalityCheck {
    bool ok = true;
    std::vector<PrimeBound> primes;
};

// ord_p(M) <= max(0, ord_p(beta) + 1) for odd p and <= max(0, ord_2(beta) + 3) for p = 2,
// over the primes dividing M.
[[nodiscard]] MaximalityCheck check_maximality_bounds(std::int64_t modulus, const Rational &beta);

// Largest n with p^n | x, for x != 0.
[[nodiscard]] std::int64_t ord_p(const Rational &x, std::int64_t p);

struct MaximalProgression {
    Progression progression;
    // Certified by an explaining Jacobi form (only set by the Jacobi-form scan).
    bool explained = false;
    MaximalityCheck bounds;
};

struct ScanResult {
    std::int64_t ell = 0;
    std::int64_t max_modulus = 0;
    std::vector<MaximalProgression> plain;
    std::vector<MaximalProgression> explained;
    std::size_t cells_checked = 0;
    std::size_t cells_skipped = 0;
};

// Maximal (by inclusion) progressions M Z + beta, M <= max_modulus, on which f
// has a plain congruence mod ell below n_max. Cells with less than
// opts.min_evidence exponents are skipped; InsufficientRange is thrown when
// every cell is skipped.
[[nodiscard]] ScanResult scan_maximal_progressions(const Specialization &f, std::int64_t ell,
                                                   std::int64_t max_modulus, std::optional<Rational> n_max = {},
                                                   const AnalysisOptions &opts = {});

// As above for the specialization of phi, and additionally the maximal
// progressions whose congruence phi explains, each checked against the
// maximality bounds.
[[nodiscard]] ScanResult scan_maximal_progressions(const JacobiExpansion &phi, std::int64_t ell,
                                                   std::int64_t max_modulus, std::optional<Rational> n_max = {},
                                                   const AnalysisOptions &opts = {});

// Keeps the elements not strictly contained in another element. Order is preserved.
[[nodiscard]] std::vector<Progression> maximal_elements(const std::vector<Progression> &hits);

} // namespace cforge

#endif
