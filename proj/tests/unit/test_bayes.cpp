#include <doctest.h>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "react/bayes.hpp"
#include "react/error.hpp"

using namespace react;

namespace {

std::vector<Vector> normal_draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<Vector> out(n, Vector(1));
    for (auto& v : out) v(0) = z(rng);
    return out;
}

const LogDensity kStdNormal = [](const Vector& x) { return -0.5 * x(0) * x(0); };

}  // namespace

TEST_CASE("nig update by hand") {
    const std::vector<double> y{1, 2, 3};
    const auto post = nig_update({0.0, 1.0, 1.0, 1.0}, y);
    CHECK(post.k == doctest::Approx(4.0));
    CHECK(post.m == doctest::Approx(1.5));
    CHECK(post.a == doctest::Approx(2.5));
    CHECK(post.b == doctest::Approx(3.5));
    CHECK_THROWS_AS(nig_update({0.0, 1.0, 1.0, 1.0}, std::vector<double>{}), Error);
    CHECK_THROWS_AS(NIGPosterior({0.0, -1.0, 1.0, 1.0}).validate(), Error);
}

TEST_CASE("nig posterior mean converges with lots of data") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> z(3.0, 1.0);
    std::vector<double> y(100000);
    for (auto& v : y) v = z(rng);
    const auto post = nig_update({80.0, 1.0, 3.0, 3.0}, y);
    CHECK(std::abs(post.m - 3.0) < 0.02);
}

TEST_CASE("student t marginal density") {
    const NIGPosterior p{1.0, 2.0, 3.0, 4.0};
    const auto t = mu_marginal(p);
    CHECK(t.df == 6.0);
    CHECK(t.scale == doctest::Approx(std::sqrt(4.0 / 6.0)));
    const boost::math::students_t ref(6.0);
    for (double x : {-2.0, 0.0, 1.0, 3.5}) {
        const double z = (x - 1.0) / t.scale;
        CHECK(t.log_pdf(x) == doctest::Approx(std::log(boost::math::pdf(ref, z) / t.scale)).epsilon(1e-12));
    }
}

TEST_CASE("sampled means follow the marginal t and are seed-deterministic") {
    const std::vector<NIGPosterior> groups{{0.0, 2.0, 5.0, 4.0}, {1.0, 10.0, 8.0, 2.0}};
    const auto a = sample_means(groups, 40000, 99);
    const auto b = sample_means(groups, 40000, 99);
    const auto c = sample_means(groups, 40000, 100);
    REQUIRE(a.size() == 40000);
    CHECK(a == b);
    CHECK_FALSE(a == c);
    for (int g = 0; g < 2; ++g) {
        const auto t = mu_marginal(groups[g]);
        double mean = 0.0, sq = 0.0;
        for (const auto& v : a) mean += v(g);
        mean /= a.size();
        for (const auto& v : a) sq += (v(g) - mean) * (v(g) - mean);
        const double var = sq / (a.size() - 1);
        const double want = t.scale * t.scale * t.df / (t.df - 2.0);
        CHECK(std::abs(mean - t.location) < 4.0 * std::sqrt(want / a.size()));
        CHECK(var == doctest::Approx(want).epsilon(0.03));
    }
}

TEST_CASE("hpd of a standard normal") {
    const auto hpd = hpd_region(normal_draws(100000, 2), kStdNormal, 0.95);
    const auto [lo, hi] = hpd_hull(hpd);
    CHECK(std::abs(lo + 1.959964) < 0.05);
    CHECK(std::abs(hi - 1.959964) < 0.05);
    CHECK(std::abs(hpd.retained_fraction() - 0.95) <= 1.0 / std::sqrt(100000.0));
    CHECK(std::abs(lo + hi) < 0.05);
    CHECK_THROWS_AS(hpd_region(normal_draws(999, 2), kStdNormal, 0.95), Error);
}

TEST_CASE("hpd is no longer than the equal-tailed interval for a skewed posterior") {
    std::mt19937_64 rng(3);
    std::gamma_distribution<double> g(2.0, 1.0);
    std::vector<Vector> draws(100000, Vector(1));
    for (auto& v : draws) v(0) = g(rng);
    std::vector<double> sorted;
    for (const auto& v : draws) sorted.push_back(v(0));
    std::sort(sorted.begin(), sorted.end());
    const double et = sorted[static_cast<std::size_t>(0.975 * sorted.size())] - sorted[static_cast<std::size_t>(0.025 * sorted.size())];
    const auto hpd = hpd_region(draws, [](const Vector& x) { return std::log(x(0)) - x(0); }, 0.95);
    const auto [lo, hi] = hpd_hull(hpd);
    CHECK(hi - lo <= et);
}

TEST_CASE("e-values") {
    const auto draws = normal_draws(100000, 4);
    CHECK(e_value(Vector::Zero(1), draws, kStdNormal) > 0.999);
    CHECK(e_value(Vector::Constant(1, 6.0), draws, kStdNormal) < 1e-4);
    CHECK(std::abs(e_value(Vector::Constant(1, 1.959964), draws, kStdNormal) - 0.05) < 0.01);
    for (double x : {0.3, 1.0, 2.5}) {
        CHECK(e_value(Vector::Zero(1), draws, kStdNormal) >= e_value(Vector::Constant(1, x), draws, kStdNormal));
    }
}

TEST_CASE("posterior probabilities") {
    const auto draws = normal_draws(100000, 5);
    const auto h = HypothesisRegion::band(Vector::Ones(1), 0.0, 1.959964);
    CHECK(posterior_prob(HypothesisRegion::whole_space(1), draws) == 1.0);
    CHECK(posterior_prob(h, draws) + posterior_prob(complement(h), draws) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(posterior_prob(h, draws) - 0.95) < 0.01);
    CHECK_THROWS_AS(posterior_prob(h, std::vector<Vector>{}), Error);
}

TEST_CASE("breact decisions and their posterior probabilities") {
    const auto draws = normal_draws(50000, 6);
    const auto hpd = hpd_region(draws, kStdNormal, 0.95);
    const auto wide = HypothesisRegion::band(Vector::Ones(1), 0.0, 3.0);
    const auto far = HypothesisRegion::interval(5.0, 9.0);
    const auto mid = HypothesisRegion::interval(0.0, 9.0);
    CHECK(breact_decide(hpd, wide) == Decision::Accept);
    CHECK(posterior_prob(wide, draws) > 0.95 - 2.0 / std::sqrt(50000.0));
    CHECK(breact_decide(hpd, far) == Decision::Reject);
    CHECK(posterior_prob(far, draws) < 0.05 + 2.0 / std::sqrt(50000.0));
    CHECK(breact_decide(hpd, mid) == Decision::Agnostic);
    CHECK_THROWS_AS(breact_decide(hpd, HypothesisRegion::max_pairwise(1.0, 2)), Error);
}

TEST_CASE("jeffreys beta posterior") {
    const auto p0 = beta_jeffreys_posterior(0, 0);
    CHECK(p0.a == 0.5);
    CHECK(p0.b == 0.5);
    const auto p = beta_jeffreys_posterior(5, 10);
    CHECK(p.a == 5.5);
    CHECK(p.b == 5.5);
    CHECK_THROWS_AS(beta_jeffreys_posterior(11, 10), Error);
    CHECK_THROWS_AS(beta_jeffreys_posterior(-1, 10), Error);
    const auto s = sample_beta({2.0, 5.0}, 50000, 7, 1);
    const double mean = std::accumulate(s.begin(), s.end(), 0.0) / s.size();
    CHECK(mean == doctest::Approx(2.0 / 7.0).epsilon(0.01));
}

TEST_CASE("risk difference density against a midpoint-rule convolution") {
    const BetaParams t{12.5, 30.5}, c{6.5, 37.5};
    const boost::math::beta_distribution<> bt(t.a, t.b), bc(c.a, c.b);
    for (double x : {-0.2, 0.0, 0.1, 0.3, 0.6}) {
        // f(x) = int f_t(y) f_c(y - x) dy over max(0, x) < y < min(1, 1 + x).
        const double lo = std::max(0.0, x), hi = std::min(1.0, 1.0 + x);
        const int n = 200000;
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double y = lo + (hi - lo) * (k + 0.5) / n;
            s += boost::math::pdf(bt, y) * boost::math::pdf(bc, y - x);
        }
        s *= (hi - lo) / n;
        CHECK(std::exp(risk_difference_log_density(t, c, x)) == doctest::Approx(s).epsilon(1e-6));
    }
    CHECK(std::isinf(risk_difference_log_density(t, c, 1.5)));
    // Jeffreys posteriors with zero events have unbounded densities at the edge.
    const BetaParams z{0.5, 20.5};
    double mass = 0.0;
    const int n = 20000;
    for (int k = 0; k < n; ++k) {
        const double x = -1.0 + 2.0 * (k + 0.5) / n;
        mass += std::exp(risk_difference_log_density(z, z, x)) * 2.0 / n;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("risk difference hpd matches a brute-force shortest interval") {
    const auto t = beta_jeffreys_posterior(30, 100);
    const auto c = beta_jeffreys_posterior(20, 100);
    std::mt19937_64 rng(8);
    auto beta = [&](const BetaParams& p) {
        std::gamma_distribution<double> ga(p.a, 1.0), gb(p.b, 1.0);
        const double x = ga(rng), y = gb(rng);
        return x / (x + y);
    };
    std::vector<double> d(1000000);
    for (auto& v : d) v = beta(t) - beta(c);
    std::sort(d.begin(), d.end());
    const std::size_t keep = static_cast<std::size_t>(0.95 * d.size());
    double best = 1e9, blo = 0, bhi = 0;
    for (std::size_t i = 0; i + keep < d.size(); ++i) {
        if (d[i + keep] - d[i] < best) {
            best = d[i + keep] - d[i];
            blo = d[i];
            bhi = d[i + keep];
        }
    }
    const auto hpd = risk_difference_hpd(t, c, 200000, 0.95, 9);
    const auto [lo, hi] = hpd_hull(hpd);
    CHECK(std::abs(lo - blo) < 0.01);
    CHECK(std::abs(hi - bhi) < 0.01);
}
