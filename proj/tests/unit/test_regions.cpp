#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <random>

#include "../support/oracles.hpp"
#include "react/error.hpp"
#include "react/regions.hpp"

using namespace react;

TEST_CASE("welch interval on a hand-computed example") {
    const std::vector<double> a{1, 1, 1, 3, 3, 3};
    const std::vector<double> b{0, 0, 0, 2, 2, 2};
    const auto m = welch_moments(a, b);
    CHECK(m.difference == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.standard_error == doctest::Approx(std::sqrt(0.4)).epsilon(1e-14));
    CHECK(m.df == doctest::Approx(10.0).epsilon(1e-12));
    const double t = boost::math::quantile(boost::math::students_t(10.0), 0.975);
    const auto r = welch_mean_diff_interval(a, b, 0.95);
    CHECK(r.lower == doctest::Approx(1.0 - t * std::sqrt(0.4)).epsilon(1e-12));
    CHECK(r.upper == doctest::Approx(1.0 + t * std::sqrt(0.4)).epsilon(1e-12));
    CHECK(r.point_estimate == 1.0);
    CHECK(r.level == 0.95);
}

TEST_CASE("welch interval errors") {
    const std::vector<double> one{1.0};
    const std::vector<double> two{1.0, 2.0};
    const std::vector<double> flat{3.0, 3.0, 3.0};
    CHECK_THROWS_AS(welch_mean_diff_interval(one, two, 0.95), Error);
    try {
        welch_mean_diff_interval(flat, flat, 0.95);
        FAIL("expected DegenerateVariance");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateVariance);
    }
    CHECK_THROWS_AS(welch_mean_diff_interval(two, two, 1.0), Error);
}

TEST_CASE("welch interval coverage and nesting") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> za(0.3, 1.0), zb(0.0, 2.0);
    const int reps = 4000;
    int covered = 0;
    for (int r = 0; r < reps; ++r) {
        std::vector<double> a(8), b(15);
        for (auto& v : a) v = za(rng);
        for (auto& v : b) v = zb(rng);
        const auto i95 = welch_mean_diff_interval(a, b, 0.95);
        const auto i99 = welch_mean_diff_interval(a, b, 0.99);
        CHECK(i99.lower <= i95.lower);
        CHECK(i99.upper >= i95.upper);
        covered += i95.contains(0.3);
    }
    const double rate = static_cast<double>(covered) / reps;
    CHECK(std::abs(rate - 0.95) < 3.0 * std::sqrt(0.95 * 0.05 / reps) + 0.005);
}

TEST_CASE("mean vector ellipsoid construction and coverage") {
    const std::vector<std::vector<double>> groups{{1, 2, 3, 4}, {2, 2, 4, 4, 6, 6}, {0, 1}};
    const auto e = mean_vector_ellipsoid(groups, 0.9);
    CHECK(e.center(0) == doctest::Approx(2.5));
    CHECK(e.center(1) == doctest::Approx(4.0));
    CHECK(e.precision(0, 0) == doctest::Approx(4.0 / (5.0 / 3.0)));
    CHECK(e.precision(1, 1) == doctest::Approx(6.0 / 3.2));
    CHECK(e.precision(2, 2) == doctest::Approx(2.0 / 0.5));
    CHECK(e.precision(0, 1) == 0.0);
    CHECK(e.radius_sq == doctest::Approx(boost::math::quantile(boost::math::chi_squared(3.0), 0.9)).epsilon(1e-10));

    // Known-variance coverage is chi-square exact; with n = 200 per group the
    // plug-in variance barely moves it.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> z;
    const int reps = 2000;
    int covered = 0;
    for (int r = 0; r < reps; ++r) {
        std::vector<std::vector<double>> g(3, std::vector<double>(200));
        for (int i = 0; i < 3; ++i)
            for (auto& v : g[i]) v = i + (i + 1) * z(rng);
        Vector mu(3);
        mu << 0, 1, 2;
        covered += mean_vector_ellipsoid(g, 0.95).contains(mu);
    }
    const double rate = static_cast<double>(covered) / reps;
    CHECK(std::abs(rate - 0.95) < 3.0 * std::sqrt(0.95 * 0.05 / reps) + 0.01);
}

TEST_CASE("contrast extent matches lagrange oracle and bounds sampled points") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 2 + trial % 4;
        const auto e = oracle::random_ellipsoid(rng, p);
        Vector w(p);
        for (int i = 0; i < p; ++i) w(i) = z(rng);
        const double offset = z(rng);
        const auto ext = contrast_extent(e, w, offset);
        const auto [lo, hi] = oracle::lagrange_extent(e, w);
        CHECK(ext.lower == doctest::Approx(lo + offset).epsilon(1e-9));
        CHECK(ext.upper == doctest::Approx(hi + offset).epsilon(1e-9));
        for (const auto& x : oracle::ellipsoid_points(e, rng, 50)) {
            CHECK(w.dot(x) + offset >= ext.lower - 1e-9);
            CHECK(w.dot(x) + offset <= ext.upper + 1e-9);
        }
    }
    CHECK_THROWS_AS(contrast_extent(oracle::random_ellipsoid(rng, 2), Vector::Zero(2)), Error);
    CHECK_THROWS_AS(contrast_extent(oracle::random_ellipsoid(rng, 2), Vector::Ones(3)), Error);
}

TEST_CASE("contrast extent of an interval") {
    const IntervalRegion r{-1.0, 2.0, 0.9, 0.5};
    const auto a = contrast_extent(r, Vector::Constant(1, -2.0), 1.0);
    CHECK(a.lower == doctest::Approx(-3.0));
    CHECK(a.upper == doctest::Approx(3.0));
}

TEST_CASE("projection agrees with the schur complement") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const auto e = oracle::random_ellipsoid(rng, 4);
        const auto proj = project_ellipsoid(e, {1, 3});
        // Schur complement of the precision onto coordinates (1, 3).
        Eigen::PermutationMatrix<Eigen::Dynamic> perm(4);
        perm.indices() << 1, 3, 0, 2;
        const Matrix q = perm.transpose() * e.precision * perm;
        const Matrix schur =
            q.topLeftCorner(2, 2) - q.topRightCorner(2, 2) * q.bottomRightCorner(2, 2).inverse() * q.bottomLeftCorner(2, 2);
        CHECK((proj.precision - schur).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + schur.cwiseAbs().maxCoeff()));
        CHECK(proj.center(0) == e.center(1));
        CHECK(proj.center(1) == e.center(3));
        CHECK(proj.radius_sq == e.radius_sq);
    }
}

TEST_CASE("cohen's d interval") {
    const std::vector<double> a{2, 4, 6};
    const std::vector<double> b{1, 3, 5};
    const auto r = cohens_d_interval(a, b, 0.95);
    const double d = 1.0 / 2.0;
    const double se = std::sqrt(6.0 / 9.0 + d * d / 12.0);
    const double t = boost::math::quantile(boost::math::students_t(4.0), 0.975);
    CHECK(r.point_estimate == doctest::Approx(d));
    CHECK(r.lower == doctest::Approx(d - t * se).epsilon(1e-12));
    CHECK(r.upper == doctest::Approx(d + t * se).epsilon(1e-12));
}

TEST_CASE("p-value inversion keeps only strictly larger p-values") {
    std::vector<Vector> grid;
    for (int k = -5; k <= 5; ++k) grid.push_back(Vector::Constant(1, k * 0.1));
    const auto g = invert_pvalue_region([](const Vector& t) { return 0.1 - std::abs(t(0)) * 0.1; }, grid, 0.05);
    // p = 0.1 - 0.1|t| > 0.05  <=>  |t| < 0.5; the |t| = 0.5 points have p = 0.05 exactly.
    CHECK(g.member_count() == 9);
    CHECK_FALSE(g.membership.front());
    CHECK(g.level == doctest::Approx(0.95));
    CHECK_THROWS_AS(invert_pvalue_region([](const Vector&) { return 1.0; }, {}, 0.05), Error);
}

TEST_CASE("ellipsoid validation") {
    EllipsoidRegion e;
    e.center = Vector::Zero(2);
    e.precision = Matrix::Identity(2, 2);
    e.precision(1, 1) = -1.0;
    e.radius_sq = 1.0;
    CHECK_THROWS_AS(validate(e), Error);
    e.precision = Matrix::Identity(3, 3);
    CHECK_THROWS_AS(validate(e), Error);
}
