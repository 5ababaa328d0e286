#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "react/bayes.hpp"
#include "react/cli.hpp"
#include "react/decision.hpp"
#include "react/error.hpp"
#include "react/io.hpp"
#include "react/meta.hpp"
#include "react/simulate.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace react;

namespace {

std::string dump(const io::Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-way decisions about pragmatic hypotheses";

    py::register_exception<Error>(m, "ReactError", PyExc_ValueError);
    py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);

    py::enum_<Decision>(m, "Decision")
        .value("ACCEPT", Decision::Accept)
        .value("AGNOSTIC", Decision::Agnostic)
        .value("REJECT", Decision::Reject)
        .def_property_readonly("value_", &decision_value)
        .def("__str__", [](Decision d) { return std::string(to_string(d)); });

    py::enum_<Direction>(m, "Direction").value("AT_MOST", Direction::AtMost).value("AT_LEAST", Direction::AtLeast);

    // regions
    py::class_<IntervalRegion>(m, "IntervalRegion")
        .def(py::init([](double lo, double hi, double level, double estimate) {
                 return IntervalRegion{lo, hi, level, estimate};
             }),
             "lower"_a, "upper"_a, "level"_a = 0.95, "point_estimate"_a = 0.0)
        .def_readwrite("lower", &IntervalRegion::lower)
        .def_readwrite("upper", &IntervalRegion::upper)
        .def_readwrite("level", &IntervalRegion::level)
        .def_readwrite("point_estimate", &IntervalRegion::point_estimate)
        .def("to_json", [](const IntervalRegion& r) { return dump(io::to_json(r)); })
        .def("__repr__", [](const IntervalRegion& r) {
            std::ostringstream s;
            s << "IntervalRegion(" << r.lower << ", " << r.upper << ", level=" << r.level << ")";
            return s.str();
        });

    py::class_<EllipsoidRegion>(m, "EllipsoidRegion")
        .def(py::init([](Vector center, Matrix precision, double radius_sq, double level) {
                 EllipsoidRegion e{std::move(center), std::move(precision), radius_sq, level};
                 validate(e);
                 return e;
             }),
             "center"_a, "precision"_a, "radius_sq"_a, "level"_a = 0.95)
        .def_readonly("center", &EllipsoidRegion::center)
        .def_readonly("precision", &EllipsoidRegion::precision)
        .def_readonly("radius_sq", &EllipsoidRegion::radius_sq)
        .def_readonly("level", &EllipsoidRegion::level)
        .def("contains", &EllipsoidRegion::contains)
        .def("to_json", [](const EllipsoidRegion& r) { return dump(io::to_json(r)); });

    m.def("welch_interval", [](std::vector<double> a, std::vector<double> b, double level) {
        return welch_mean_diff_interval(a, b, level);
    }, "a"_a, "b"_a, "level"_a = 0.95);
    m.def("mean_vector_ellipsoid", &mean_vector_ellipsoid, "groups"_a, "level"_a = 0.95);
    m.def("project_ellipsoid", &project_ellipsoid, "region"_a, "indices"_a);
    m.def("contrast_extent",
          py::overload_cast<const EllipsoidRegion&, const Vector&, double>(&contrast_extent),
          "region"_a, "weights"_a, "offset"_a = 0.0);

    // hypotheses
    py::class_<HypothesisRegion>(m, "Hypothesis")
        .def_static("band", &HypothesisRegion::band, "weights"_a, "offset"_a, "delta"_a, "closed"_a = true)
        .def_static("half_space", &HypothesisRegion::half_space, "weights"_a, "bound"_a, "direction"_a,
                    "closed"_a = true)
        .def_static("interval", &HypothesisRegion::interval, "lo"_a, "hi"_a, "closed"_a = true)
        .def_static("max_pairwise", &HypothesisRegion::max_pairwise, "delta"_a, "dimension"_a, "closed"_a = true)
        .def_static("whole_space", &HypothesisRegion::whole_space, "dimension"_a)
        .def_static("from_json", [](const std::string& text) {
            return io::hypothesis_from_json(io::parse_json(text));
        })
        .def("complement", [](const HypothesisRegion& h) { return complement(h); })
        .def("contains", &HypothesisRegion::contains)
        .def_property_readonly("closed", &HypothesisRegion::closed)
        .def_property_readonly("dimension", &HypothesisRegion::dimension)
        .def("to_json", [](const HypothesisRegion& h) { return dump(io::to_json(h)); })
        .def("__eq__", [](const HypothesisRegion& a, const HypothesisRegion& b) { return a == b; })
        .def("__repr__", [](const HypothesisRegion& h) { return describe(h); });

    m.def("is_subset", [](const HypothesisRegion& a, const HypothesisRegion& b) -> py::object {
        switch (is_subset(a, b)) {
            case Subset::True: return py::bool_(true);
            case Subset::False: return py::bool_(false);
            default: return py::none();
        }
    });
    m.def("nnt_to_delta", &nnt_to_delta);

    // decisions
    py::class_<TestResult>(m, "TestResult")
        .def_readonly("hypothesis_id", &TestResult::hypothesis_id)
        .def_readonly("hypothesis", &TestResult::hypothesis)
        .def_readonly("decision", &TestResult::decision)
        .def_readonly("extent", &TestResult::extent_used)
        .def_readonly("level", &TestResult::level)
        .def("to_json", [](const TestResult& r) { return dump(io::to_json(r)); });

    m.def("decide", [](const IntervalRegion& r, const HypothesisRegion& h) { return decide(r, h); });
    m.def("decide", [](const EllipsoidRegion& r, const HypothesisRegion& h) { return decide(r, h); });
    m.def("decide_family", [](const EllipsoidRegion& r, const std::vector<HypothesisRegion>& hs) {
        return decide_family(r, hs);
    });
    m.def("decide_family", [](const IntervalRegion& r, const std::vector<HypothesisRegion>& hs) {
        return decide_family(r, hs);
    });
    m.def("coherence_violations", [](const std::vector<TestResult>& results) {
        std::vector<std::pair<std::string, std::vector<std::string>>> out;
        for (const auto& v : check_coherence(results).violations)
            out.emplace_back(std::string(to_string(v.rule)), v.hypotheses);
        return out;
    });
    m.def("tost", [](std::vector<double> a, std::vector<double> b, double delta, double alpha) {
        return tost_decision(a, b, delta, alpha) == TostOutcome::EquivalenceEstablished;
    }, "a"_a, "b"_a, "delta"_a, "alpha"_a = 0.05);
    m.def("pairwise_family", &pairwise_family, "groups"_a, "delta"_a);

    // meta-analysis
    py::class_<StudySummary>(m, "Study")
        .def(py::init([](std::string id, long et, long nt, long ec, long nc) {
                 StudySummary s{std::move(id), et, nt, ec, nc};
                 s.validate();
                 return s;
             }),
             "id"_a, "events_t"_a, "n_t"_a, "events_c"_a, "n_c"_a)
        .def_readonly("id", &StudySummary::id);

    py::class_<PooledResult>(m, "PooledResult")
        .def_readonly("effect", &PooledResult::effect)
        .def_readonly("variance", &PooledResult::variance)
        .def_readonly("tau_sq", &PooledResult::tau_sq)
        .def_readonly("q_statistic", &PooledResult::q_statistic)
        .def_readonly("level", &PooledResult::level);

    m.def("risk_difference", [](const StudySummary& s, bool cc) {
        const auto e = risk_difference(s, cc);
        return std::make_pair(e.effect, e.variance);
    }, "study"_a, "continuity_correction"_a = true);
    m.def("fixed_effects", py::overload_cast<const std::vector<StudySummary>&, double, bool>(&fixed_effects_pool),
          "studies"_a, "level"_a = 0.95, "continuity_correction"_a = true);
    m.def("random_effects", py::overload_cast<const std::vector<StudySummary>&, double, bool>(&random_effects_pool),
          "studies"_a, "level"_a = 0.95, "continuity_correction"_a = true);
    m.def("wald_interval", &wald_interval, "effect"_a, "variance"_a, "level"_a = 0.95);
    m.def("forest_json", [](const std::vector<StudySummary>& studies, double delta, double alpha,
                            const std::string& pooling, bool cc) {
        const Pooling p = pooling == "fixed" ? Pooling::Fixed : pooling == "random" ? Pooling::Random : Pooling::Both;
        return dump(io::to_json(forest(studies, delta, alpha, p, cc)));
    }, "studies"_a, "delta"_a, "alpha"_a = 0.05, "pooling"_a = "both", "continuity_correction"_a = true);

    // simulation
    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](std::vector<double> means, std::vector<double> sds, std::vector<long> ns, double delta,
                         double alpha) {
                 Scenario s{std::move(means), std::move(sds), std::move(ns), delta, alpha};
                 s.validate();
                 return s;
             }),
             "means"_a, "sds"_a, "ns"_a, "delta"_a, "alpha"_a = 0.05)
        .def("to_json", [](const Scenario& s) { return dump(io::to_json(s)); });

    py::class_<ErrorRateReport>(m, "ErrorRateReport")
        .def_readonly("type_i", &ErrorRateReport::type_i)
        .def_readonly("type_ii", &ErrorRateReport::type_ii)
        .def_readonly("accept_rate", &ErrorRateReport::accept_rate)
        .def_readonly("reject_rate", &ErrorRateReport::reject_rate)
        .def_readonly("agnostic_rate", &ErrorRateReport::agnostic_rate)
        .def_readonly("fwer_i", &ErrorRateReport::fwer_i)
        .def_readonly("fwer_ii", &ErrorRateReport::fwer_ii)
        .def_readonly("fwer_any", &ErrorRateReport::fwer_any)
        .def("to_json", [](const ErrorRateReport& r) { return dump(io::to_json(r)); });

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("n", &CurvePoint::n)
        .def_readonly("accept_rate", &CurvePoint::accept_rate)
        .def_readonly("reject_rate", &CurvePoint::reject_rate)
        .def_readonly("agnostic_rate", &CurvePoint::agnostic_rate);

    m.def("simulate_error_rates", &simulate_error_rates, "scenario"_a, "reps"_a = 10000, "seed"_a = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("simulate_fwer", &simulate_fwer, "scenario"_a, "reps"_a = 10000, "seed"_a = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("consistency_curve", &consistency_curve, "scenario"_a, "n_grid"_a, "reps"_a = 1000, "seed"_a = 1,
          py::call_guard<py::gil_scoped_release>());

    // bayes
    py::class_<NIGPosterior>(m, "NIG")
        .def(py::init([](double mean, double k, double a, double b) {
                 NIGPosterior n{mean, k, a, b};
                 n.validate();
                 return n;
             }),
             "m"_a, "k"_a, "a"_a, "b"_a)
        .def_readonly("m", &NIGPosterior::m)
        .def_readonly("k", &NIGPosterior::k)
        .def_readonly("a", &NIGPosterior::a)
        .def_readonly("b", &NIGPosterior::b);
    m.def("nig_update", [](const NIGPosterior& prior, std::vector<double> sample) { return nig_update(prior, sample); });

    // Posterior HPD decision for every hypothesis, with its posterior probability.
    m.def("bayes_decide", [](const std::vector<NIGPosterior>& posteriors, const std::vector<HypothesisRegion>& hs,
                             double level, std::size_t draws, std::uint64_t seed) {
        std::vector<std::pair<Decision, double>> out;
        {
            py::gil_scoped_release release;
            auto samples = sample_means(posteriors, draws, seed);
            const auto hpd = hpd_region(samples, mean_vector_log_density(posteriors), level);
            for (const auto& h : hs) out.emplace_back(breact_decide(hpd, h), posterior_prob(h, hpd.samples));
        }
        return out;
    }, "posteriors"_a, "hypotheses"_a, "level"_a = 0.95, "draws"_a = kDefaultDraws, "seed"_a = 1);

    m.def("risk_difference_hpd", [](long et, long nt, long ec, long nc, double level, std::size_t draws,
                                    std::uint64_t seed) {
        py::gil_scoped_release release;
        const auto hpd = risk_difference_hpd(beta_jeffreys_posterior(et, nt), beta_jeffreys_posterior(ec, nc), draws,
                                             level, seed);
        return hpd_hull(hpd);
    }, "events_t"_a, "n_t"_a, "events_c"_a, "n_c"_a, "level"_a = 0.95, "draws"_a = kDefaultDraws, "seed"_a = 1);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "args"_a);
}
