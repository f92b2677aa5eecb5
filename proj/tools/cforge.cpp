// cforge: command-line front end for the expansion and congruence engine.
//
// Exit codes: 0 clean verdict, 2 negative verdict, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <cforge/congruence.hpp>
#include <cforge/errors.hpp>
#include <cforge/oracle.hpp>
#include <cforge/serialize.hpp>
#include <cforge/spec_dsl.hpp>

using namespace cforge;

namespace
{

constexpr int exit_clean = 0;
constexpr int exit_error = 1;
constexpr int exit_verdict = 2;

struct Settings {
    std::int64_t terms = 500;
    unsigned threads = 1;
    std::size_t min_evidence = 10;
};

// key = value per line; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file " + path);
    }
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        auto value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        kv[trim(line.substr(0, eq))] = value;
    }
    return kv;
}

std::int64_t to_int(const std::string &key, const std::string &v)
{
    try {
        std::size_t used = 0;
        const auto x = std::stoll(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return x;
    } catch (const std::exception &) {
        throw std::runtime_error("config: " + key + " must be an integer, got '" + v + "'");
    }
}

class App
{
public:
    int run(int argc, char **argv);

private:
    void resolve_settings();
    AnalysisOptions options() const
    {
        AnalysisOptions o;
        o.threads = settings_.threads;
        o.min_evidence = settings_.min_evidence;
        o.literal_coprimality = literal_;
        return o;
    }
    void emit(const Json &j, const std::string &csv) const
    {
        if (csv_) {
            std::cout << csv;
        } else {
            std::cout << j.dump(2) << '\n';
        }
    }
    Elaboration elaborate() const { return elaborate_spec(parse_spec(spec_text_), settings_.terms); }
    Rational beta_for(const Elaboration &e) const;
    CongruenceQuery query_for(const Elaboration &e) const;

    int cmd_expand();
    int cmd_scan();
    int cmd_explain();
    int cmd_orbit();
    int cmd_bounds();
    int cmd_oracle();

    Settings settings_;
    std::string config_path_;
    std::optional<std::int64_t> terms_flag_;
    std::optional<unsigned> threads_flag_;
    std::optional<std::size_t> evidence_flag_;
    bool csv_ = false;
    bool json_ = false;

    std::string spec_text_;
    std::int64_t ell_ = 5;
    std::int64_t modulus_ = 1;
    std::int64_t mmax_ = 30;
    std::string beta_text_;
    std::string beta_comb_text_;
    std::string n_max_text_;
    bool literal_ = false;
    bool specialize_ = false;

    std::string statistic_;
    std::int64_t stat_n_ = 0;
    std::int64_t colors_ = 2;
    std::optional<std::int64_t> p_mod_n_;
};

void App::resolve_settings()
{
    if (!config_path_.empty()) {
        for (const auto &[k, v] : read_config(config_path_)) {
            if (k == "terms") {
                settings_.terms = to_int(k, v);
            } else if (k == "threads") {
                settings_.threads = static_cast<unsigned>(to_int(k, v));
            } else if (k == "min_evidence") {
                settings_.min_evidence = static_cast<std::size_t>(to_int(k, v));
            } else {
                throw std::runtime_error("config: unknown key '" + k + "'");
            }
        }
    }
    if (const char *env = std::getenv("CONGRUENCE_FORGE_THREADS"); env != nullptr && *env != '\0') {
        settings_.threads = static_cast<unsigned>(to_int("CONGRUENCE_FORGE_THREADS", env));
    }
    if (terms_flag_) {
        settings_.terms = *terms_flag_;
    }
    if (threads_flag_) {
        settings_.threads = *threads_flag_;
    }
    if (evidence_flag_) {
        settings_.min_evidence = *evidence_flag_;
    }
    if (settings_.terms < 1) {
        throw std::invalid_argument("terms must be positive");
    }
    settings_.threads = std::max(1u, settings_.threads);
}

Rational App::beta_for(const Elaboration &e) const
{
    if (!beta_text_.empty() && !beta_comb_text_.empty()) {
        throw std::invalid_argument("--beta and --beta-combinatorial are mutually exclusive");
    }
    if (!beta_comb_text_.empty()) {
        return Rational::parse(beta_comb_text_) + e.q_shift;
    }
    if (beta_text_.empty()) {
        throw std::invalid_argument("one of --beta or --beta-combinatorial is required");
    }
    return Rational::parse(beta_text_);
}

CongruenceQuery App::query_for(const Elaboration &e) const
{
    CongruenceQuery q{ell_, modulus_, beta_for(e), std::nullopt};
    if (!n_max_text_.empty()) {
        q.n_max = Rational::parse(n_max_text_);
    }
    q.validate();
    return q;
}

int App::cmd_expand()
{
    auto e = elaborate();
    const auto spec = parse_spec(spec_text_);
    Json j{{"spec", format_spec(spec)},
           {"terms", settings_.terms},
           {"q_shift", rational_json(e.q_shift)},
           {"weight", e.weight_index ? rational_json(e.weight_index->first) : Json(nullptr)},
           {"index", e.weight_index ? rational_json(e.weight_index->second) : Json(nullptr)}};
    const auto phi = JacobiExpansion::from_elaboration(std::move(e));
    if (specialize_) {
        const auto f = specialize(phi);
        j["specialization"] = specialization_json(f);
        emit(j, specialization_csv(f));
    } else {
        j["expansion"] = expansion_json(phi);
        emit(j, series_csv(phi.series()));
    }
    return exit_clean;
}

int App::cmd_scan()
{
    const auto phi = JacobiExpansion::from_elaboration(elaborate());
    std::optional<Rational> n_max;
    if (!n_max_text_.empty()) {
        n_max = Rational::parse(n_max_text_);
    }
    const auto r = scan_maximal_progressions(phi, ell_, mmax_, n_max, options());
    auto j = scan_json(r);
    j["spec"] = format_spec(parse_spec(spec_text_));
    emit(j, scan_csv(r));
    const bool bounds_ok = std::all_of(r.explained.begin(), r.explained.end(), [](const auto &m) { return m.bounds.ok; });
    return bounds_ok ? exit_clean : exit_verdict;
}

int App::cmd_explain()
{
    auto e = elaborate();
    const auto q = query_for(e);
    const auto phi = JacobiExpansion::from_elaboration(std::move(e));
    const auto r = check_explainable(phi, q, options());
    auto j = report_json(r);
    j["spec"] = format_spec(parse_spec(spec_text_));
    emit(j, report_csv(r));
    return r.explainable && r.holds_plain ? exit_clean : exit_verdict;
}

int App::cmd_orbit()
{
    auto e = elaborate();
    const auto q = query_for(e);
    const auto phi = JacobiExpansion::from_elaboration(std::move(e));
    const auto opts = options();
    const auto base = check_explainable(phi, q, opts);
    if (base.vacuous || !base.explainable) {
        // nothing to propagate; report the base verdict alone
        OrbitVerification v;
        v.base = base;
        auto j = orbit_json(v);
        j["spec"] = format_spec(parse_spec(spec_text_));
        j["base_explained"] = false;
        emit(j, orbit_csv(v));
        return exit_verdict;
    }
    const auto v = verify_square_class_theorem(phi, q, opts);
    auto j = orbit_json(v);
    j["spec"] = format_spec(parse_spec(spec_text_));
    j["base_explained"] = true;
    emit(j, orbit_csv(v));
    return v.violations() == 0 ? exit_clean : exit_verdict;
}

int App::cmd_bounds()
{
    if (beta_text_.empty()) {
        throw std::invalid_argument("--beta is required");
    }
    const auto m = check_maximality_bounds(modulus_, Rational::parse(beta_text_));
    auto j = maximality_json(m);
    j["M"] = modulus_;
    j["beta"] = rational_json(Rational::parse(beta_text_));
    emit(j, maximality_csv(m));
    return m.ok ? exit_clean : exit_verdict;
}

int App::cmd_oracle()
{
    if (!statistic_.empty()) {
        const auto t = oracle::rank_table(stat_n_, ell_, oracle::parse_statistic(statistic_), colors_);
        auto j = rank_table_json(t);
        j["equidistributed"] = t.equidistributed();
        emit(j, rank_table_csv(t));
        return exit_clean;
    }
    if (p_mod_n_) {
        const auto r = oracle::partition_mod_recurrence(*p_mod_n_, ell_);
        emit(Json{{"n", *p_mod_n_}, {"ell", ell_}, {"p_mod_ell", r}},
             "n,ell,p_mod_ell\n" + std::to_string(*p_mod_n_) + ',' + std::to_string(ell_) + ',' + std::to_string(r)
                 + '\n');
        return exit_clean;
    }
    if (spec_text_.empty()) {
        throw std::invalid_argument("oracle needs a spec, --statistic or --p-mod");
    }
    const auto spec = parse_spec(spec_text_);
    const auto engine = elaborate_spec(spec, settings_.terms);
    const auto naive = oracle::oracle_product_coefficients(spec, settings_.terms);
    const bool agree = engine.series == naive.series && engine.pole_order == naive.pole_order;
    Json j{{"spec", format_spec(spec)},
           {"terms", settings_.terms},
           {"agree", agree},
           {"pole_order", naive.pole_order},
           {"series", series_json(naive.series)}};
    emit(j, series_csv(naive.series));
    return agree ? exit_clean : exit_verdict;
}

int App::run(int argc, char **argv)
{
    CLI::App app{"Expansion and congruence analysis for eta/theta quotients"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cforge 0.1");

    auto common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path_, "key = value file (terms, threads, min_evidence)");
        sub->add_option("--terms", terms_flag_, "integer q-steps to expand");
        sub->add_option("--threads", threads_flag_, "worker threads");
        sub->add_option("--min-evidence", evidence_flag_, "minimum exponents per progression");
        auto *j = sub->add_flag("--json", json_, "JSON output (default)");
        auto *c = sub->add_flag("--csv", csv_, "CSV output");
        j->excludes(c);
    };
    auto query = [&](CLI::App *sub) {
        sub->add_option("--ell", ell_, "prime modulus of the congruence")->required();
        sub->add_option("--M", modulus_, "progression modulus")->required();
        sub->add_option("--beta", beta_text_, "progression offset in exponent coordinates, num/den");
        sub->add_option("--beta-combinatorial", beta_comb_text_, "offset before the q-shift, e.g. 4 for 4 - 1/24");
        sub->add_option("--n-max", n_max_text_, "exclusive exponent bound");
    };

    auto *expand = app.add_subcommand("expand", "expand a spec");
    expand->add_option("spec", spec_text_)->required();
    expand->add_flag("--specialize", specialize_, "emit c(f; n) instead of the leading coefficients");
    common(expand);

    auto *scan = app.add_subcommand("scan", "maximal congruent progressions");
    scan->add_option("spec", spec_text_)->required();
    scan->add_option("--ell", ell_)->required();
    scan->add_option("--mmax", mmax_, "largest modulus")->default_val(30);
    scan->add_option("--n-max", n_max_text_, "exclusive exponent bound");
    common(scan);

    auto *explain = app.add_subcommand("explain", "test explainability on a progression");
    explain->add_option("spec", spec_text_)->required();
    query(explain);
    common(explain);

    auto *orbit = app.add_subcommand("orbit", "check the square-class orbit of an explained congruence");
    orbit->add_option("spec", spec_text_)->required();
    orbit->add_flag("--literal-coprimality", literal_, "units u with gcd(u, M) = 1 only");
    query(orbit);
    common(orbit);

    auto *bounds = app.add_subcommand("bounds", "maximality bounds for M Z + beta");
    bounds->add_option("--M", modulus_)->required();
    bounds->add_option("--beta", beta_text_)->required();
    common(bounds);

    auto *orc = app.add_subcommand("oracle", "brute-force cross-checks");
    orc->add_option("spec", spec_text_, "spec to re-expand naively and compare");
    orc->add_option("--statistic", statistic_, "rank, crank or colored-residual");
    orc->add_option("--n", stat_n_, "partition size for --statistic");
    orc->add_option("--ell", ell_, "residue modulus");
    orc->add_option("--colors", colors_, "colors for colored-residual")->default_val(2);
    orc->add_option("--p-mod", p_mod_n_, "p(N) mod ell by the pentagonal recurrence");
    common(orc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_error;
    }

    try {
        resolve_settings();
        if (*expand) {
            return cmd_expand();
        }
        if (*scan) {
            return cmd_scan();
        }
        if (*explain) {
            return cmd_explain();
        }
        if (*orbit) {
            return cmd_orbit();
        }
        if (*bounds) {
            return cmd_bounds();
        }
        return cmd_oracle();
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
}

} // namespace

int main(int argc, char **argv)
{
    return App().run(argc, argv);
}
