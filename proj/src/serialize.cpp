#include <cforge/serialize.hpp>

#include <sstream>

namespace cforge
{

namespace
{

Json optional_rational(const std::optional<Rational> &r)
{
    return r ? rational_json(*r) : Json(nullptr);
}

std::string opt_string(const std::optional<Rational> &r)
{
    return r ? r->to_string() : "";
}

const char *flag(bool b)
{
    return b ? "true" : "false";
}

} // namespace

Json rational_json(const Rational &r)
{
    return Json{{"num", r.num()}, {"den", r.den()}};
}

Json polynomial_json(const EllipticPolynomial &p)
{
    auto out = Json::array();
    for (const auto &[k, c] : p.terms()) {
        const Rational z(k, p.denom());
        out.push_back(Json{{"zexp", z.num()}, {"zden", z.den()}, {"int", c.get_str()}});
    }
    return out;
}

Json series_json(const FourierSeries &s)
{
    auto out = Json::array();
    for (const auto &[k, c] : s.terms()) {
        const auto n = s.exponent(k);
        out.push_back(Json{{"num", n.num()}, {"den", n.den()}, {"coeff", polynomial_json(c)}});
    }
    return out;
}

Json expansion_json(const JacobiExpansion &phi)
{
    return Json{{"pole_order", phi.pole_order()},
                {"support_offset", rational_json(phi.support_offset())},
                {"window_start", rational_json(phi.window_start())},
                {"truncation", rational_json(phi.truncation_exponent())},
                {"series", series_json(phi.series())}};
}

Json specialization_json(const Specialization &f)
{
    auto coeffs = Json::array();
    for (const auto &[k, c] : f.coeffs()) {
        const Rational n(k, f.denom_q());
        coeffs.push_back(Json{{"num", n.num()}, {"den", n.den()}, {"int", c.get_str()}});
    }
    return Json{{"support_offset", rational_json(f.support_offset())},
                {"window_start", rational_json(f.window_start())},
                {"truncation", rational_json(f.truncation_exponent())},
                {"coefficients", coeffs}};
}

Json query_json(const CongruenceQuery &q)
{
    return Json{{"ell", q.ell},
                {"M", q.modulus},
                {"beta_num", q.beta.num()},
                {"beta_den", q.beta.den()},
                {"n_max", optional_rational(q.n_max)}};
}

Json report_json(const CongruenceReport &r)
{
    Json j{{"query", query_json(r.query)},
           {"holds_plain", r.holds_plain},
           {"first_counterexample", optional_rational(r.first_counterexample)},
           {"vacuous", r.vacuous},
           {"checked_count", r.checked_count}};
    if (r.explainability_tested) {
        j["explainable"] = r.explainable;
        j["failing_n"] = optional_rational(r.failing_n);
    } else {
        j["explainable"] = nullptr;
        j["failing_n"] = nullptr;
    }
    return j;
}

Json orbit_json(const OrbitVerification &v)
{
    auto j = report_json(v.base);
    auto orbit = Json::array();
    for (const auto &e : v.orbit) {
        auto entry = report_json(e.report);
        entry["violation"] = e.violation;
        orbit.push_back(std::move(entry));
    }
    j["orbit"] = std::move(orbit);
    j["violations"] = v.violations();
    j["vacuous_count"] = v.vacuous_count();
    return j;
}

Json maximality_json(const MaximalityCheck &m)
{
    auto primes = Json::array();
    for (const auto &p : m.primes) {
        primes.push_back(Json{{"p", p.prime},
                              {"ord_M", p.ord_modulus},
                              {"ord_beta", p.ord_beta ? Json(*p.ord_beta) : Json("inf")},
                              {"bound", p.bound},
                              {"ok", p.ok}});
    }
    return Json{{"ok", m.ok}, {"primes", primes}};
}

Json scan_json(const ScanResult &s)
{
    auto list = [](const std::vector<MaximalProgression> &v) {
        auto out = Json::array();
        for (const auto &m : v) {
            out.push_back(Json{{"M", m.progression.modulus},
                               {"beta", rational_json(m.progression.offset)},
                               {"explained", m.explained},
                               {"bounds", maximality_json(m.bounds)}});
        }
        return out;
    };
    return Json{{"ell", s.ell},
                {"M_max", s.max_modulus},
                {"cells_checked", s.cells_checked},
                {"cells_skipped", s.cells_skipped},
                {"plain", list(s.plain)},
                {"explained", list(s.explained)}};
}

Json rank_table_json(const oracle::RankTable &t)
{
    Json j{{"n", t.n}, {"ell", t.ell}, {"statistic", oracle::to_string(t.statistic)}, {"counts", t.counts}};
    if (t.statistic == oracle::Statistic::colored_residual) {
        j["colors"] = t.colors;
    }
    return j;
}

std::string series_csv(const FourierSeries &s)
{
    std::ostringstream os;
    os << "num,den,zexp,zden,coeff\n";
    for (const auto &[k, c] : s.terms()) {
        const auto n = s.exponent(k);
        for (const auto &[zk, v] : c.terms()) {
            const Rational z(zk, c.denom());
            os << n.num() << ',' << n.den() << ',' << z.num() << ',' << z.den() << ',' << v.get_str() << '\n';
        }
    }
    return os.str();
}

std::string specialization_csv(const Specialization &f)
{
    std::ostringstream os;
    os << "num,den,value\n";
    for (const auto &[k, c] : f.coeffs()) {
        const Rational n(k, f.denom_q());
        os << n.num() << ',' << n.den() << ',' << c.get_str() << '\n';
    }
    return os.str();
}

namespace
{

const char *report_header = "ell,M,beta,holds_plain,first_counterexample,explainable,failing_n,vacuous,checked_count";

std::string report_row(const CongruenceReport &r)
{
    std::ostringstream os;
    os << r.query.ell << ',' << r.query.modulus << ',' << r.query.beta << ',' << flag(r.holds_plain) << ','
       << opt_string(r.first_counterexample) << ',' << (r.explainability_tested ? flag(r.explainable) : "") << ','
       << opt_string(r.failing_n) << ',' << flag(r.vacuous) << ',' << r.checked_count;
    return os.str();
}

} // namespace

std::string report_csv(const CongruenceReport &r)
{
    return std::string(report_header) + '\n' + report_row(r) + '\n';
}

std::string orbit_csv(const OrbitVerification &v)
{
    std::string out = std::string("role,") + report_header + ",violation\n";
    out += "base," + report_row(v.base) + ",false\n";
    for (const auto &e : v.orbit) {
        out += "orbit," + report_row(e.report) + ',' + flag(e.violation) + '\n';
    }
    return out;
}

std::string scan_csv(const ScanResult &s)
{
    std::ostringstream os;
    os << "kind,M,beta,explained,bounds_ok\n";
    for (const auto *list : {&s.plain, &s.explained}) {
        for (const auto &m : *list) {
            os << (list == &s.plain ? "plain" : "explained") << ',' << m.progression.modulus << ','
               << m.progression.offset << ',' << flag(m.explained) << ',' << flag(m.bounds.ok) << '\n';
        }
    }
    return os.str();
}

std::string maximality_csv(const MaximalityCheck &m)
{
    std::ostringstream os;
    os << "prime,ord_M,ord_beta,bound,ok\n";
    for (const auto &p : m.primes) {
        os << p.prime << ',' << p.ord_modulus << ',' << (p.ord_beta ? std::to_string(*p.ord_beta) : "inf") << ','
           << p.bound << ',' << flag(p.ok) << '\n';
    }
    return os.str();
}

std::string rank_table_csv(const oracle::RankTable &t)
{
    std::ostringstream os;
    os << "residue,count\n";
    for (std::size_t r = 0; r < t.counts.size(); ++r) {
        os << r << ',' << t.counts[r] << '\n';
    }
    return os.str();
}

} // namespace cforge
