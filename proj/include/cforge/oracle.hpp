#ifndef CFORGE_ORACLE_HPP
#define CFORGE_ORACLE_HPP

// Brute-force ground truth. Nothing here uses the series arithmetic of the
// expansion engine; products are re-expanded term by term.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <cforge/elliptic_polynomial.hpp>
#include <cforge/fourier_series.hpp>
#include <cforge/product_spec.hpp>

namespace cforge::oracle
{

// Parts in non-increasing order.
using Partition = std::vector<std::int64_t>;

// Streams the partitions of n in reverse lexicographic order, starting at {n}.
class PartitionStream
{
public:
    explicit PartitionStream(std::int64_t n);
    // Next partition, or nullopt when exhausted.
    std::optional<Partition> next();

private:
    std::int64_t n_;
    Partition current_;
    bool started_ = false;
    bool done_ = false;
};

[[nodiscard]] std::vector<Partition> enumerate_partitions(std::int64_t n);

// largest part - number of parts; 0 for the empty partition.
[[nodiscard]] std::int64_t dyson_rank(const Partition &p);
// Andrews-Garvan crank: the largest part if there are no ones, otherwise
// (number of parts larger than the number of ones) - (number of ones).
[[nodiscard]] std::int64_t crank(const Partition &p);

enum class Statistic { rank, crank, colored_residual };

[[nodiscard]] std::string to_string(Statistic s);
[[nodiscard]] Statistic parse_statistic(const std::string &s);

struct RankTable {
    std::int64_t n = 0;
    std::int64_t ell = 0;
    Statistic statistic = Statistic::rank;
    // Number of colors; only meaningful for colored_residual.
    std::int64_t colors = 1;
    std::vector<std::uint64_t> counts;

    [[nodiscard]] bool equidistributed() const;
    [[nodiscard]] std::uint64_t total() const;
};

// Counts of partitions of n by statistic mod ell. For colored_residual the
// objects are `colors`-colored partitions (each part carries a color in
// [0, colors)) and the statistic is the sum of the colors.
[[nodiscard]] RankTable rank_table(std::int64_t n, std::int64_t ell, Statistic statistic, std::int64_t colors = 2);

// Number of k-colored partitions of n, by k-fold convolution of p(n).
[[nodiscard]] BigInt colored_partition_count(std::int64_t k, std::int64_t n);
// p(0..n_max) by the bounded-part recurrence (no pentagonal numbers).
[[nodiscard]] std::vector<BigInt> partition_numbers(std::int64_t n_max);
// p(n) mod ell by Euler's pentagonal recurrence.
[[nodiscard]] std::int64_t partition_mod_recurrence(std::int64_t n, std::int64_t ell);
// p(0..n) mod ell.
[[nodiscard]] std::vector<std::int64_t> partition_mod_table(std::int64_t n, std::int64_t ell);

// Independent expansion of (e(z/2) - e(-z/2))^nu * phi for the spec, with the
// same coordinates as elaborate_spec: `terms` integer q-steps past the q-shift.
struct OracleExpansion {
    FourierSeries series;
    std::int64_t pole_order = 0;
};
[[nodiscard]] OracleExpansion oracle_product_coefficients(const ProductSpec &spec, std::int64_t terms);

// sum_{n in Z} (-1)^n q^((2n+1)^2/8) e((2n+1) z / 2), the triple-product sum for theta(1),
// with exponents below `bound`.
[[nodiscard]] FourierSeries theta_triple_product_sum(const Rational &bound);
// q^(1/24) sum_k (-1)^k q^(k(3k-1)/2), exponents below `bound`.
[[nodiscard]] FourierSeries eta_pentagonal_sum(const Rational &bound);

} // namespace cforge::oracle

#endif
