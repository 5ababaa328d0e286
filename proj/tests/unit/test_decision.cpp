#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "react/decision.hpp"
#include "react/distributions.hpp"
#include "react/error.hpp"

using namespace react;

namespace {

Vector v2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

const HypothesisRegion kBand = HypothesisRegion::band(Vector::Ones(1), 0.0, 0.5);

}  // namespace

TEST_CASE("decision values and inversion") {
    CHECK(decision_value(Decision::Accept) == 0.0);
    CHECK(decision_value(Decision::Agnostic) == 0.5);
    CHECK(decision_value(Decision::Reject) == 1.0);
    CHECK(invert(Decision::Accept) == Decision::Reject);
    CHECK(invert(Decision::Agnostic) == Decision::Agnostic);
    for (auto d : {Decision::Accept, Decision::Agnostic, Decision::Reject})
        CHECK(decision_from_string(to_string(d)) == d);
    CHECK_THROWS_AS(decision_from_string("maybe"), Error);
}

TEST_CASE("containment, disjoint and straddling intervals") {
    CHECK(decide(IntervalRegion{-0.2, 0.3, 0.95, 0.05}, kBand) == Decision::Accept);
    CHECK(decide(IntervalRegion{0.6, 1.2, 0.95, 0.9}, kBand) == Decision::Reject);
    CHECK(decide(IntervalRegion{0.2, 0.9, 0.95, 0.55}, kBand) == Decision::Agnostic);
}

TEST_CASE("boundaries: closed null, open complement") {
    CHECK(decide(IntervalRegion{-0.5, 0.5, 0.95, 0.0}, kBand) == Decision::Accept);
    CHECK(decide(IntervalRegion{0.5, 1.0, 0.95, 0.75}, kBand) == Decision::Agnostic);
    CHECK(decide(IntervalRegion{0.5 + 1e-9, 1.0, 0.95, 0.75}, kBand) == Decision::Reject);
    const auto comp = complement(kBand);
    CHECK(decide(IntervalRegion{0.5, 1.0, 0.95, 0.75}, comp) == Decision::Agnostic);
    CHECK(decide(IntervalRegion{-0.5, 0.5, 0.95, 0.0}, comp) == Decision::Reject);
}

TEST_CASE("ellipsoid against band matches a dense grid") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    std::normal_distribution<double> z;
    int checked = 0;
    while (checked < 150) {
        const auto e = oracle::random_ellipsoid(rng, 2);
        const Vector w = v2(z(rng), z(rng));
        const double offset = z(rng), delta = u(rng);
        const auto g = oracle::grid_extent_2d(e, w, 301);
        const double lo = g.lo - offset, hi = g.hi - offset;
        const double slack = 2.0 * g.spacing * w.lpNorm<1>();
        // Skip instances the grid cannot resolve.
        if (std::abs(std::abs(lo) - delta) < slack || std::abs(std::abs(hi) - delta) < slack) continue;
        Decision expect = Decision::Agnostic;
        if (lo >= -delta && hi <= delta) expect = Decision::Accept;
        else if (lo > delta || hi < -delta) expect = Decision::Reject;
        CHECK(decide(e, HypothesisRegion::band(w, offset, delta)) == expect);
        ++checked;
    }
}

TEST_CASE("max-pairwise minimum matches an independent QP oracle") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int trial = 0; trial < 150; ++trial) {
        const int p = 3 + trial % 2;
        const auto e = oracle::random_ellipsoid(rng, p, 1.5);
        const double delta = u(rng);
        const double got = min_form_over_max_pairwise(e, delta);
        const double expect = oracle::min_form_max_pairwise(e, delta);
        CHECK(got == doctest::Approx(expect).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("max-pairwise decisions are consistent with sampled ellipsoid points") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    int seen[3] = {0, 0, 0};
    for (int trial = 0; trial < 200; ++trial) {
        auto e = oracle::random_ellipsoid(rng, 3, 1.5);
        if (trial % 3 == 0) {
            e.precision *= 40.0;
            e.center *= 0.2;
        }
        const double delta = u(rng);
        const auto h = HypothesisRegion::max_pairwise(delta, 3);
        const auto d = decide(e, h);
        ++seen[static_cast<int>(d)];
        const auto pts = oracle::ellipsoid_points(e, rng, 400);
        if (d == Decision::Accept) {
            for (const auto& x : pts) CHECK(oracle::max_pairwise(x) <= delta + 1e-9);
        }
        const double qmin = oracle::min_form_max_pairwise(e, delta);
        if (d == Decision::Reject) CHECK(qmin > e.radius_sq * (1.0 - 1e-6));
        if (d == Decision::Agnostic) CHECK(qmin <= e.radius_sq * (1.0 + 1e-6));
    }
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
    CHECK(seen[2] > 0);
}

TEST_CASE("max-pairwise beyond six coordinates is unsupported when fast paths fail") {
    EllipsoidRegion e;
    e.center = Vector::LinSpaced(7, 0.0, 0.6);
    e.precision = Matrix::Identity(7, 7);
    e.radius_sq = 0.1;
    try {
        decide(e, HypothesisRegion::max_pairwise(0.55, 7));
        FAIL("expected UnsupportedPair");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::UnsupportedPair);
    }
}

TEST_CASE("grid regions decide by member points") {
    GridRegion g;
    for (int k = -10; k <= 10; ++k) g.grid_points.push_back(Vector::Constant(1, k * 0.1));
    g.membership.assign(g.grid_points.size(), false);
    for (int k = 8; k <= 12; ++k) g.membership[k] = true;  // [-0.2, 0.2]
    CHECK(decide(g, kBand) == Decision::Accept);
    CHECK(decide(g, complement(kBand)) == Decision::Reject);
    std::fill(g.membership.begin(), g.membership.end(), false);
    try {
        decide(g, kBand);
        FAIL("expected EmptyRegion");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::EmptyRegion);
    }
}

TEST_CASE("p-value route agrees with the inverted region") {
    const double est = 0.3, se = 0.2, df = 20;
    const PValueFunction p = [&](const Vector& t) {
        return 2.0 * (1.0 - dist::student_t_cdf(std::abs(est - t(0)) / se, df));
    };
    std::vector<Vector> grid;
    for (int k = -3000; k <= 3000; ++k) grid.push_back(Vector::Constant(1, k * 0.001));
    for (double delta : {0.05, 0.3, 0.9, 1.5}) {
        const auto h = HypothesisRegion::band(Vector::Ones(1), 0.0, delta);
        const auto via_p = decide_via_pvalues(p, grid, 0.05, h);
        CHECK(via_p == decide(invert_pvalue_region(p, grid, 0.05), h));
        const auto half = se * dist::student_t_quantile(0.975, df);
        CHECK(via_p == decide(IntervalRegion{est - half, est + half, 0.95, est}, h));
    }
    CHECK_THROWS_AS(decide_via_pvalues(p, {}, 0.05, kBand), Error);
    const std::vector<Vector> inside{Vector::Constant(1, 0.0), Vector::Constant(1, 0.1)};
    try {
        decide_via_pvalues(p, inside, 0.05, kBand);
        FAIL("expected GridNotStraddling");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::GridNotStraddling);
    }
    try {
        decide_via_pvalues([](const Vector&) { return 0.0; }, grid, 0.05, kBand);
        FAIL("expected EmptyRegion");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::EmptyRegion);
    }
}

TEST_CASE("tost agrees with the 1 - 2 alpha interval") {
    std::mt19937_64 rng(24);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int established = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> a(5 + trial % 30), b(4 + trial % 17);
        const double shift = 0.6 * z(rng);
        for (auto& v : a) v = shift + z(rng);
        for (auto& v : b) v = z(rng);
        const double delta = 0.2 + u(rng), alpha = 0.01 + 0.2 * u(rng);
        const auto t = tost_decision(a, b, delta, alpha);
        const auto d = decide(welch_mean_diff_interval(a, b, 1.0 - 2.0 * alpha),
                              HypothesisRegion::band(Vector::Ones(1), 0.0, delta));
        CHECK((t == TostOutcome::EquivalenceEstablished) == (d == Decision::Accept));
        established += t == TostOutcome::EquivalenceEstablished;
    }
    CHECK(established > 10);
    CHECK_THROWS_AS(tost_decision(std::vector<double>{1, 2}, std::vector<double>{1, 3}, 0.5, 0.5), Error);
}

TEST_CASE("decide_family shares one region") {
    const IntervalRegion r{0.1, 0.4, 0.9, 0.25};
    const std::vector<HypothesisRegion> hs{kBand, complement(kBand), HypothesisRegion::interval(0.3, 2.0)};
    const auto res = decide_family(r, hs, {"a", "b", "c"});
    REQUIRE(res.size() == 3);
    CHECK(res[0].hypothesis_id == "a");
    CHECK(res[0].decision == Decision::Accept);
    CHECK(res[1].decision == Decision::Reject);
    CHECK(res[2].decision == Decision::Agnostic);
    CHECK(res[0].level == 0.9);
    CHECK(res[0].region_fingerprint == res[2].region_fingerprint);
    REQUIRE(res[0].extent_used);
    CHECK(res[0].extent_used->lower == doctest::Approx(0.1));
    CHECK(decide_family(r, hs)[0].hypothesis_id == describe(kBand));
    CHECK_THROWS_AS(decide_family(r, hs, {"only one"}), Error);
}

TEST_CASE("coherence checks flag planted violations") {
    const IntervalRegion r{0.1, 0.4, 0.9, 0.25};
    auto result = [&](const HypothesisRegion& h, Decision d, std::string id) {
        return TestResult{std::move(id), h, d, std::nullopt, 0.9, fingerprint(r)};
    };
    const auto narrow = HypothesisRegion::band(Vector::Ones(1), 0.0, 0.5);
    const auto wide = HypothesisRegion::band(Vector::Ones(1), 0.0, 1.0);
    CHECK(check_coherence(decide_family(r, {narrow, wide, complement(narrow)})).coherent());

    auto rep = check_coherence({result(narrow, Decision::Accept, "n"), result(wide, Decision::Reject, "w")});
    REQUIRE(rep.violations.size() >= 1);
    CHECK(rep.violations[0].rule == CoherenceRule::Monotonicity);

    rep = check_coherence({result(narrow, Decision::Accept, "n"), result(complement(narrow), Decision::Accept, "c")});
    bool invert_flagged = false;
    for (const auto& v : rep.violations) invert_flagged |= v.rule == CoherenceRule::Invertibility;
    CHECK(invert_flagged);

    rep = check_coherence({result(HypothesisRegion::whole_space(1), Decision::Agnostic, "all")});
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].rule == CoherenceRule::Propriety);

    // Accepting |t| <= 1 and t >= 0.2 forces acceptance of [0.2, 1].
    rep = check_coherence({result(wide, Decision::Accept, "w"),
                           result(HypothesisRegion::half_space(Vector::Ones(1), 0.2, Direction::AtLeast), Decision::Accept, "h"),
                           result(HypothesisRegion::interval(0.2, 1.0), Decision::Agnostic, "i")});
    bool consonance = false;
    for (const auto& v : rep.violations) consonance |= v.rule == CoherenceRule::Consonance;
    CHECK(consonance);

    // Pairwise bands accepted, max-pairwise not.
    const EllipsoidRegion e{Vector::Zero(3), Matrix::Identity(3, 3), 1.0, 0.9};
    std::vector<TestResult> fam;
    int k = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Vector w = Vector::Zero(3);
            w(i) = 1;
            w(j) = -1;
            fam.push_back({"b" + std::to_string(k++), HypothesisRegion::band(w, 0.0, 1.0), Decision::Accept,
                           std::nullopt, 0.9, fingerprint(e)});
        }
    fam.push_back({"max", HypothesisRegion::max_pairwise(1.0, 3), Decision::Agnostic, std::nullopt, 0.9, fingerprint(e)});
    rep = check_coherence(fam);
    consonance = false;
    for (const auto& v : rep.violations) consonance |= v.rule == CoherenceRule::Consonance && v.hypotheses.back() == "max";
    CHECK(consonance);

    auto mixed = fam;
    mixed.back().region_fingerprint ^= 1;
    CHECK_THROWS_AS(check_coherence(mixed), Error);
}

TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(decide(IntervalRegion{0, 1, 0.95, 0.5}, HypothesisRegion::max_pairwise(1.0, 3)), Error);
}
