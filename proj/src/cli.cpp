#include "react/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "react/bayes.hpp"
#include "react/decision.hpp"
#include "react/error.hpp"
#include "react/io.hpp"
#include "react/meta.hpp"
#include "react/simulate.hpp"

namespace react::cli {
namespace {

using io::Json;

struct Config {
    std::string command;
    double alpha = 0.05;
    std::optional<double> delta;
    std::optional<double> nnt;
    std::optional<double> level;
    std::optional<std::uint64_t> seed;
    std::size_t reps = 10000;
    std::size_t draws = kDefaultDraws;
    std::string format = "json";
    std::string out;
    std::string pooling = "both";
    std::string prior;
    std::string hypotheses;
    bool no_cc = false;
    std::vector<std::string> inputs;
};

void check_alpha(const Config& c) {
    if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("--alpha", "must lie in (0,1)");
}

double region_level(const Config& c) {
    if (c.level) {
        if (!(*c.level > 0.0 && *c.level < 1.0)) throw ConfigError("--level", "must lie in (0,1)");
        return *c.level;
    }
    return 1.0 - c.alpha;
}

std::optional<double> resolve_delta(const Config& c, bool required) {
    if (c.delta && c.nnt) throw ConfigError("--delta", "give either --delta or --nnt, not both");
    if (c.nnt) {
        if (!(*c.nnt > 0.0)) throw ConfigError("--nnt", "must be positive");
        return nnt_to_delta(*c.nnt);
    }
    if (c.delta) {
        if (!(*c.delta >= 0.0)) throw ConfigError("--delta", "must be non-negative");
        return *c.delta;
    }
    if (required) throw ConfigError("--delta", "one of --delta or --nnt is required");
    return std::nullopt;
}

std::uint64_t resolve_seed(const Config& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("REACT_SEED")) {
        std::uint64_t v = 0;
        const std::string s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            throw ConfigError("REACT_SEED", "must be a non-negative integer");
        return v;
    }
    return 1;
}

void require_format(const Config& c, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (c.format == f) return;
    throw ConfigError("--format", "'" + c.format + "' is not available for '" + c.command + "'");
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw ConfigError("--out", "cannot write '" + c.out + "'");
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

io::GroupData load_groups(const Config& c, std::size_t min_groups) {
    if (c.inputs.empty()) throw ConfigError("inputs", "no data files given");
    io::GroupData data;
    if (c.inputs.size() == 1) {
        data = io::parse_groups_csv(io::read_file(c.inputs[0]), c.inputs[0]);
    } else {
        for (const auto& path : c.inputs) {
            auto g = io::parse_groups_csv(io::read_file(path), path);
            if (g.values.size() != 1)
                throw ConfigError("inputs", "'" + path + "' must hold one group when several files are given");
            data.labels.push_back(path);
            data.values.push_back(std::move(g.values[0]));
        }
    }
    if (data.values.size() < min_groups)
        throw ConfigError("inputs", "need at least " + std::to_string(min_groups) + " groups, got " +
                                        std::to_string(data.values.size()));
    return data;
}

std::vector<HypothesisRegion> load_hypotheses(const Config& c) {
    const auto j = io::parse_json(io::read_file(c.hypotheses), c.hypotheses);
    std::vector<HypothesisRegion> out;
    try {
        if (j.is_array()) {
            for (const auto& h : j) out.push_back(io::hypothesis_from_json(h));
        } else {
            out.push_back(io::hypothesis_from_json(j));
        }
    } catch (const io::ParseError& e) {
        throw io::ParseError(c.hypotheses, 0, 0, e.what());
    }
    if (out.empty()) throw ConfigError("--hypotheses", "no hypotheses in '" + c.hypotheses + "'");
    return out;
}

std::string fmt_num(double x) {
    std::ostringstream s;
    s.precision(4);
    s << x;
    return s.str();
}

std::vector<std::string> pairwise_ids(const std::vector<std::string>& labels, double delta) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            ids.push_back("|" + labels[i] + " - " + labels[j] + "| <= " + fmt_num(delta));
    ids.push_back("max pairwise <= " + fmt_num(delta));
    return ids;
}

std::string results_csv(const std::vector<TestResult>& results) {
    std::ostringstream out;
    out.precision(17);
    out << "hypothesis_id,decision,extent_lo,extent_hi\n";
    for (const auto& r : results) {
        out << '"' << r.hypothesis_id << "\"," << to_string(r.decision) << ',';
        if (r.extent_used) out << r.extent_used->lower << ',' << r.extent_used->upper;
        else out << ',';
        out << '\n';
    }
    return out.str();
}

int cmd_test(const Config& c, std::ostream& out) {
    check_alpha(c);
    require_format(c, {"json", "csv"});
    const double level = region_level(c);
    const auto data = load_groups(c, 2);
    if (data.values.size() != 2) throw ConfigError("inputs", "test compares exactly two groups");
    const auto region = welch_mean_diff_interval(data.values[0], data.values[1], level);
    std::vector<HypothesisRegion> hs;
    if (!c.hypotheses.empty()) {
        resolve_delta(c, false);
        hs = load_hypotheses(c);
    } else {
        hs.push_back(HypothesisRegion::band(Vector::Ones(1), 0.0, *resolve_delta(c, true)));
    }
    const auto results = decide_family(region, hs);
    if (c.format == "csv") {
        emit(c, results_csv(results), out);
        return kExitOk;
    }
    Json j;
    j["command"] = "test";
    j["groups"] = data.labels;
    j["region"] = io::to_json(region);
    if (results.size() == 1) j["decision"] = std::string(to_string(results[0].decision));
    j["results"] = Json::array();
    for (const auto& r : results) j["results"].push_back(io::to_json(r));
    emit(c, dump(j), out);
    return kExitOk;
}

int cmd_family(const Config& c, std::ostream& out) {
    check_alpha(c);
    require_format(c, {"json", "csv", "svg"});
    const double level = region_level(c);
    const auto data = load_groups(c, 2);
    const auto region = mean_vector_ellipsoid(data.values, level);
    std::vector<HypothesisRegion> hs;
    std::vector<std::string> ids;
    double delta = 0.0;
    if (!c.hypotheses.empty()) {
        delta = resolve_delta(c, false).value_or(0.0);
        hs = load_hypotheses(c);
    } else {
        delta = *resolve_delta(c, true);
        hs = pairwise_family(data.values.size(), delta);
        ids = pairwise_ids(data.labels, delta);
    }
    const auto results = decide_family(region, hs, ids);
    const auto coherence = check_coherence(results);
    if (c.format == "csv") {
        emit(c, results_csv(results), out);
    } else if (c.format == "svg") {
        emit(c, io::family_svg(region, data.labels, results, delta), out);
    } else {
        Json j;
        j["command"] = "family";
        j["groups"] = data.labels;
        j["region"] = io::to_json(region);
        j["results"] = Json::array();
        for (const auto& r : results) j["results"].push_back(io::to_json(r));
        j["coherence"] = io::to_json(coherence);
        emit(c, dump(j), out);
    }
    return kExitOk;
}

int cmd_meta(const Config& c, std::ostream& out) {
    check_alpha(c);
    require_format(c, {"json", "csv", "svg"});
    if (c.inputs.size() != 1) throw ConfigError("inputs", "meta takes exactly one study CSV");
    const double delta = *resolve_delta(c, true);
    Pooling pooling = Pooling::Both;
    if (c.pooling == "fixed") pooling = Pooling::Fixed;
    else if (c.pooling == "random") pooling = Pooling::Random;
    else if (c.pooling != "both") throw ConfigError("--pooling", "must be fixed, random or both");
    const auto studies = io::parse_studies_csv(io::read_file(c.inputs[0]), c.inputs[0]);
    const auto forest_data = forest(studies, delta, c.alpha, pooling, !c.no_cc);
    if (c.format == "svg") {
        emit(c, io::forest_svg(forest_data), out);
    } else if (c.format == "csv") {
        std::ostringstream s;
        s.precision(17);
        s << "label,kind,effect,variance,lower,upper,decision,marker_size\n";
        for (const auto& r : forest_data.rows) {
            s << '"' << r.label << "\"," << (r.kind == RowKind::Study ? "study" : r.kind == RowKind::PooledFixed ? "pooled_fixed" : "pooled_random")
              << ',' << r.effect << ',' << r.variance << ',' << r.interval.lower << ',' << r.interval.upper << ','
              << to_string(r.decision) << ',' << r.marker_size << '\n';
        }
        emit(c, s.str(), out);
    } else {
        Json j = io::to_json(forest_data);
        emit(c, dump(j), out);
    }
    return kExitOk;
}

int cmd_simulate(const Config& c, std::ostream& out) {
    require_format(c, {"json", "csv"});
    if (c.inputs.size() != 1) throw ConfigError("inputs", "simulate takes exactly one scenario JSON");
    const auto j = io::parse_json(io::read_file(c.inputs[0]), c.inputs[0]);
    Scenario s;
    try {
        s = io::scenario_from_json(j);
    } catch (const io::ParseError& e) {
        throw io::ParseError(c.inputs[0], 0, 0, e.what());
    }
    if (auto d = resolve_delta(c, false)) s.delta = *d;
    if (c.alpha != 0.05) {
        check_alpha(c);
        s.alpha = c.alpha;
    }
    const auto seed = resolve_seed(c);
    std::string kind = j.value("kind", std::string(s.groups() == 2 ? "error_rates" : "fwer"));
    Json report;
    report["command"] = "simulate";
    report["kind"] = kind;
    report["scenario"] = io::to_json(s);
    report["reps"] = c.reps;
    report["seed"] = seed;
    if (kind == "curve") {
        if (!j.contains("n_grid") || !j.at("n_grid").is_array())
            throw io::ParseError(c.inputs[0], 0, 0, "curve scenarios need an 'n_grid' array");
        std::vector<long> grid;
        for (const auto& n : j.at("n_grid")) {
            if (!n.is_number_integer()) throw io::ParseError(c.inputs[0], 0, 0, "'n_grid' must hold integers");
            grid.push_back(n.get<long>());
        }
        const auto curve = consistency_curve(s, grid, c.reps, seed);
        if (c.format == "csv") {
            emit(c, io::curve_csv(curve), out);
            return kExitOk;
        }
        report["curve"] = Json::array();
        for (const auto& p : curve)
            report["curve"].push_back({{"n", p.n}, {"accept_rate", p.accept_rate}, {"reject_rate", p.reject_rate},
                                       {"agnostic_rate", p.agnostic_rate}});
    } else if (kind == "error_rates" || kind == "fwer") {
        if (c.format == "csv") throw ConfigError("--format", "csv output is only available for curve scenarios");
        report["report"] = io::to_json(kind == "fwer" ? simulate_fwer(s, c.reps, seed)
                                                      : simulate_error_rates(s, c.reps, seed));
    } else {
        throw io::ParseError(c.inputs[0], 0, 0, "unknown scenario kind '" + kind + "'");
    }
    emit(c, dump(report), out);
    return kExitOk;
}

int cmd_bayes(const Config& c, std::ostream& out) {
    check_alpha(c);
    require_format(c, {"json"});
    if (c.prior.empty()) throw ConfigError("--prior", "a prior JSON file is required");
    io::Prior prior;
    try {
        prior = io::prior_from_json(io::parse_json(io::read_file(c.prior), c.prior));
    } catch (const io::ParseError& e) {
        throw io::ParseError(c.prior, e.line(), e.column(), e.what());
    }
    const double level = region_level(c);
    const auto seed = resolve_seed(c);
    Json j;
    j["command"] = "bayes";
    j["level"] = level;
    j["draws"] = c.draws;
    j["seed"] = seed;

    if (std::holds_alternative<io::BetaJeffreysPrior>(prior)) {
        if (c.inputs.size() != 1) throw ConfigError("inputs", "beta-jeffreys prior takes exactly one study CSV");
        const double delta = *resolve_delta(c, true);
        const auto studies = io::parse_studies_csv(io::read_file(c.inputs[0]), c.inputs[0]);
        const auto null = HypothesisRegion::interval(-1.0, delta);
        j["prior"] = {{"family", "beta-jeffreys"}};
        j["region"] = Json::array({-1.0, delta});
        j["studies"] = Json::array();
        for (std::size_t k = 0; k < studies.size(); ++k) {
            const auto& s = studies[k];
            s.validate();
            const auto pt = beta_jeffreys_posterior(s.events_treatment, s.n_treatment);
            const auto pc = beta_jeffreys_posterior(s.events_control, s.n_control);
            const auto hpd = risk_difference_hpd(pt, pc, c.draws, level, seed + k);
            const auto [lo, hi] = hpd_hull(hpd);
            j["studies"].push_back({{"id", s.id},
                                    {"treatment", {pt.a, pt.b}},
                                    {"control", {pc.a, pc.b}},
                                    {"hpd_hull", {lo, hi}},
                                    {"decision", std::string(to_string(breact_decide(hpd, null)))},
                                    {"posterior_prob", posterior_prob(null, hpd.samples)}});
        }
        emit(c, dump(j), out);
        return kExitOk;
    }

    const auto& nig = std::get<NIGPosterior>(prior);
    const auto data = load_groups(c, 2);
    std::vector<NIGPosterior> posteriors;
    for (const auto& g : data.values) posteriors.push_back(nig_update(nig, g));
    std::vector<HypothesisRegion> hs;
    std::vector<std::string> ids;
    if (!c.hypotheses.empty()) {
        resolve_delta(c, false);
        hs = load_hypotheses(c);
        for (const auto& h : hs) ids.push_back(describe(h));
    } else {
        const double delta = *resolve_delta(c, true);
        hs = pairwise_family(data.values.size(), delta);
        ids = pairwise_ids(data.labels, delta);
    }
    const auto hpd = hpd_region(sample_means(posteriors, c.draws, seed), mean_vector_log_density(posteriors), level);
    j["prior"] = {{"family", "nig"}, {"m", nig.m}, {"k", nig.k}, {"a", nig.a}, {"b", nig.b}};
    j["groups"] = data.labels;
    j["posteriors"] = Json::array();
    for (const auto& p : posteriors) j["posteriors"].push_back({{"m", p.m}, {"k", p.k}, {"a", p.a}, {"b", p.b}});
    j["results"] = Json::array();
    for (std::size_t k = 0; k < hs.size(); ++k) {
        j["results"].push_back({{"hypothesis_id", ids[k]},
                                {"hypothesis", io::to_json(hs[k])},
                                {"decision", std::string(to_string(breact_decide(hpd, hs[k])))},
                                {"posterior_prob", posterior_prob(hs[k], hpd.samples)}});
    }
    emit(c, dump(j), out);
    return kExitOk;
}

bool is_validation(ErrorKind k) {
    switch (k) {
        case ErrorKind::InsufficientData:
        case ErrorKind::InvalidArgument:
        case ErrorKind::DimensionMismatch:
        case ErrorKind::NegativeDelta:
        case ErrorKind::NonpositiveNNT:
        case ErrorKind::MixedRegions:
        case ErrorKind::EmptySample:
        case ErrorKind::TooFewDraws:
        case ErrorKind::InvalidCounts:
        case ErrorKind::EmptyArm:
        case ErrorKind::NoStudies:
        case ErrorKind::SingleStudy:
        case ErrorKind::TooFewReps:
            return true;
        default:
            return false;
    }
}

void add_common(CLI::App* sub, Config& c, bool delta, bool region_level_flag) {
    sub->add_option("--alpha", c.alpha, "test level alpha");
    if (delta) {
        sub->add_option("--delta", c.delta, "equivalence margin");
        sub->add_option("--nnt", c.nnt, "number-needed-to-treat bound; margin = 1/nnt");
    }
    if (region_level_flag) sub->add_option("--level", c.level, "region level (default 1 - alpha)");
    sub->add_option("--format", c.format, "json, csv or svg");
    sub->add_option("--out", c.out, "output path (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config c;
    CLI::App app{"Three-way region-based tests of pragmatic hypotheses", "react"};
    app.require_subcommand(1);

    auto* test = app.add_subcommand("test", "Welch interval for two groups against |mu1 - mu2| <= delta");
    add_common(test, c, true, true);
    test->add_option("--hypotheses", c.hypotheses, "JSON file with a hypothesis or a list of them");
    test->add_option("inputs", c.inputs, "a long-format CSV with two groups, or two single-column CSVs")->required();

    auto* family = app.add_subcommand("family", "Confidence ellipsoid for several group means against a family");
    add_common(family, c, true, true);
    family->add_option("--hypotheses", c.hypotheses, "JSON file with a list of hypotheses");
    family->add_option("inputs", c.inputs, "a long-format CSV, or one single-column CSV per group")->required();

    auto* meta = app.add_subcommand("meta", "Risk-difference meta-analysis with a forest plot");
    add_common(meta, c, true, false);
    meta->add_option("--pooling", c.pooling, "fixed, random or both");
    meta->add_flag("--no-continuity-correction", c.no_cc, "do not correct zero cells");
    meta->add_option("inputs", c.inputs, "study CSV")->required();

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo error rates or consistency curves");
    add_common(simulate, c, true, false);
    simulate->add_option("--seed", c.seed, "random seed (falls back to REACT_SEED)");
    simulate->add_option("--reps", c.reps, "replications");
    simulate->add_option("inputs", c.inputs, "scenario JSON")->required();

    auto* bayes = app.add_subcommand("bayes", "Posterior HPD decisions");
    add_common(bayes, c, true, true);
    bayes->add_option("--seed", c.seed, "random seed (falls back to REACT_SEED)");
    bayes->add_option("--prior", c.prior, "prior JSON");
    bayes->add_option("--draws", c.draws, "posterior draws");
    bayes->add_option("--hypotheses", c.hypotheses, "JSON file with a list of hypotheses");
    bayes->add_option("inputs", c.inputs, "data CSV(s); a study CSV for beta-jeffreys")->required();

    std::vector<std::string> argv_store{"react"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitValidation;
    }

    try {
        c.command = app.get_subcommands().front()->get_name();
        if (c.command == "test") return cmd_test(c, out);
        if (c.command == "family") return cmd_family(c, out);
        if (c.command == "meta") return cmd_meta(c, out);
        if (c.command == "simulate") return cmd_simulate(c, out);
        return cmd_bayes(c, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const io::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_validation(e.kind()) ? kExitValidation : kExitComputation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitComputation;
    }
}

}  // namespace react::cli
