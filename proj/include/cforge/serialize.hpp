#ifndef CFORGE_SERIALIZE_HPP
#define CFORGE_SERIALIZE_HPP

// JSON and CSV views of engine results. Big integers are written as decimal
// strings; object keys come out sorted, so equal inputs give equal bytes.

#include <string>

#include <json.hpp>

#include <cforge/congruence.hpp>
#include <cforge/fourier_series.hpp>
#include <cforge/jacobi_expansion.hpp>
#include <cforge/oracle.hpp>

namespace cforge
{

using Json = nlohmann::json;

[[nodiscard]] Json rational_json(const Rational &r);
[[nodiscard]] Json polynomial_json(const EllipticPolynomial &p);
// [{num, den, coeff: [{zexp, zden, int}]}] in ascending exponent order.
[[nodiscard]] Json series_json(const FourierSeries &s);
[[nodiscard]] Json expansion_json(const JacobiExpansion &phi);
[[nodiscard]] Json specialization_json(const Specialization &f);
[[nodiscard]] Json query_json(const CongruenceQuery &q);
[[nodiscard]] Json report_json(const CongruenceReport &r);
[[nodiscard]] Json orbit_json(const OrbitVerification &v);
[[nodiscard]] Json maximality_json(const MaximalityCheck &m);
[[nodiscard]] Json scan_json(const ScanResult &s);
[[nodiscard]] Json rank_table_json(const oracle::RankTable &t);

// CSV with a header line: num,den,zexp,zden,coeff (one row per monomial).
[[nodiscard]] std::string series_csv(const FourierSeries &s);
// num,den,value
[[nodiscard]] std::string specialization_csv(const Specialization &f);
// One row per report; orbit rows follow the base row.
[[nodiscard]] std::string report_csv(const CongruenceReport &r);
[[nodiscard]] std::string orbit_csv(const OrbitVerification &v);
// kind,M,beta,explained,bounds_ok
[[nodiscard]] std::string scan_csv(const ScanResult &s);
// prime,ord_M,ord_beta,bound,ok
[[nodiscard]] std::string maximality_csv(const MaximalityCheck &m);
// residue,count
[[nodiscard]] std::string rank_table_csv(const oracle::RankTable &t);

} // namespace cforge

#endif
