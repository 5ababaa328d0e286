#include "react/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "react/distributions.hpp"
#include "react/error.hpp"
#include "react/parallel.hpp"

namespace react {
namespace {

constexpr std::size_t kChunk = 4096;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_draws(std::size_t n) {
    require(n >= kMinDraws, ErrorKind::TooFewDraws,
            "need at least " + std::to_string(kMinDraws) + " draws, got " + std::to_string(n));
}

}  // namespace

void NIGPosterior::validate() const {
    require(k > 0.0 && a > 0.0 && b > 0.0 && std::isfinite(m), ErrorKind::InvalidArgument,
            "normal-inverse-gamma requires k, a, b > 0");
}

NIGPosterior nig_update(const NIGPosterior& prior, std::span<const double> sample) {
    prior.validate();
    require(!sample.empty(), ErrorKind::EmptySample, "cannot update with an empty sample");
    const double n = static_cast<double>(sample.size());
    const double mean = sample_mean(sample);
    double ss = 0.0;
    for (double y : sample) ss += (y - mean) * (y - mean);
    NIGPosterior post;
    post.k = prior.k + n;
    post.m = (prior.k * prior.m + n * mean) / post.k;
    post.a = prior.a + 0.5 * n;
    post.b = prior.b + 0.5 * ss + prior.k * n * (mean - prior.m) * (mean - prior.m) / (2.0 * post.k);
    return post;
}

StudentT::StudentT(double df_, double location_, double scale_)
    : df(df_),
      location(location_),
      scale(scale_),
      log_norm(std::lgamma(0.5 * (df_ + 1.0)) - std::lgamma(0.5 * df_) - 0.5 * std::log(df_ * std::numbers::pi) -
               std::log(scale_)) {}

double StudentT::log_pdf(double x) const {
    const double z = (x - location) / scale;
    return log_norm - 0.5 * (df + 1.0) * std::log1p(z * z / df);
}

StudentT mu_marginal(const NIGPosterior& posterior) {
    posterior.validate();
    return StudentT(2.0 * posterior.a, posterior.m, std::sqrt(posterior.b / (posterior.a * posterior.k)));
}

std::vector<Vector> sample_means(const std::vector<NIGPosterior>& groups, std::size_t draws, std::uint64_t seed) {
    require(!groups.empty(), ErrorKind::DimensionMismatch, "no groups supplied");
    for (const auto& g : groups) g.validate();
    const auto p = static_cast<Eigen::Index>(groups.size());
    std::vector<Vector> out(draws, Vector(p));
    const std::size_t chunks = (draws + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        Philox rng(seed, c);
        std::normal_distribution<double> normal;
        std::vector<std::gamma_distribution<double>> shapes;
        for (const auto& g : groups) shapes.emplace_back(g.a, 1.0);
        const std::size_t end = std::min(draws, (c + 1) * kChunk);
        for (std::size_t d = c * kChunk; d < end; ++d) {
            for (Eigen::Index i = 0; i < p; ++i) {
                const auto& g = groups[static_cast<std::size_t>(i)];
                const double sigma_sq = g.b / shapes[static_cast<std::size_t>(i)](rng);
                out[d](i) = g.m + std::sqrt(sigma_sq / g.k) * normal(rng);
            }
        }
    });
    return out;
}

LogDensity mean_vector_log_density(const std::vector<NIGPosterior>& groups) {
    std::vector<StudentT> marginals;
    for (const auto& g : groups) marginals.push_back(mu_marginal(g));
    return [marginals](const Vector& mu) {
        double total = 0.0;
        for (std::size_t i = 0; i < marginals.size(); ++i) total += marginals[i].log_pdf(mu(static_cast<Eigen::Index>(i)));
        return total;
    };
}

std::size_t HPDRegion::dimension() const {
    return samples.empty() ? 0 : static_cast<std::size_t>(samples.front().size());
}

double HPDRegion::retained_fraction() const {
    if (retained.empty()) return 0.0;
    return static_cast<double>(std::count(retained.begin(), retained.end(), true)) /
           static_cast<double>(retained.size());
}

GridRegion HPDRegion::as_grid() const { return GridRegion{samples, retained, level}; }

HPDRegion hpd_region(std::vector<Vector> draws, const LogDensity& log_density, double level) {
    check_draws(draws.size());
    require(level > 0.0 && level < 1.0, ErrorKind::InvalidArgument, "level must lie in (0,1)");
    HPDRegion hpd;
    hpd.level = level;
    hpd.log_density_at_sample.resize(draws.size());
    // log_density must be safe to call concurrently; each slot is written once.
    const std::size_t chunks = (draws.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(draws.size(), (c + 1) * kChunk);
        for (std::size_t d = c * kChunk; d < end; ++d) hpd.log_density_at_sample[d] = log_density(draws[d]);
    });
    std::vector<double> sorted = hpd.log_density_at_sample;
    const auto cut = static_cast<std::size_t>(std::floor((1.0 - level) * static_cast<double>(sorted.size())));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(cut), sorted.end());
    hpd.log_threshold = sorted[cut];
    hpd.retained.resize(draws.size());
    for (std::size_t d = 0; d < draws.size(); ++d) hpd.retained[d] = hpd.log_density_at_sample[d] >= hpd.log_threshold;
    hpd.samples = std::move(draws);
    return hpd;
}

double e_value(const Vector& theta0, std::span<const Vector> draws, const LogDensity& log_density) {
    check_draws(draws.size());
    const double reference = log_density(theta0);
    std::size_t at_least = 0;
    for (const auto& d : draws) {
        if (log_density(d) >= reference) ++at_least;
    }
    return 1.0 - static_cast<double>(at_least) / static_cast<double>(draws.size());
}

Decision breact_decide(const HPDRegion& hpd, const HypothesisRegion& h) {
    require(hpd.dimension() == h.dimension(), ErrorKind::DimensionMismatch,
            "HPD region dimension differs from hypothesis");
    return decide_point_cloud(hpd.samples, hpd.retained, h);
}

double posterior_prob(const HypothesisRegion& h, std::span<const Vector> draws) {
    require(!draws.empty(), ErrorKind::EmptySample, "no posterior draws");
    std::size_t inside = 0;
    for (const auto& d : draws) {
        if (h.contains(d)) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(draws.size());
}

BetaParams beta_jeffreys_posterior(long successes, long trials) {
    require(successes >= 0 && trials >= 0 && successes <= trials, ErrorKind::InvalidCounts,
            "need 0 <= successes <= trials");
    return {static_cast<double>(successes) + 0.5, static_cast<double>(trials - successes) + 0.5};
}

std::vector<double> sample_beta(const BetaParams& params, std::size_t draws, std::uint64_t seed, std::uint64_t stream) {
    require(params.a > 0.0 && params.b > 0.0, ErrorKind::InvalidArgument, "beta parameters must be positive");
    std::vector<double> out(draws);
    const std::size_t chunks = (draws + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        // Substreams are keyed by (stream, chunk) so two arms never share one.
        Philox rng(seed, (stream << 32) ^ c);
        std::gamma_distribution<double> ga(params.a, 1.0);
        std::gamma_distribution<double> gb(params.b, 1.0);
        const std::size_t end = std::min(draws, (c + 1) * kChunk);
        for (std::size_t d = c * kChunk; d < end; ++d) {
            const double x = ga(rng);
            const double y = gb(rng);
            out[d] = x / (x + y);
        }
    });
    return out;
}

namespace {

struct QuadratureNode {
    double weight;
    double from_lo;
    double from_hi;
};

// Tanh-sinh rule on (-1, 1): y = tanh(pi/2 sinh u), with distances to both
// ends kept separately. Scaled by the half-width at the call site.
const std::vector<QuadratureNode>& tanh_sinh_nodes() {
    static const std::vector<QuadratureNode> nodes = [] {
        constexpr double step = 1.0 / 64.0;
        constexpr int count = 205;  // |u| <= 3.2
        std::vector<QuadratureNode> out;
        for (int k = -count; k <= count; ++k) {
            const double u = k * step;
            const double s = 0.5 * std::numbers::pi * std::sinh(u);
            const double ch = std::cosh(s);
            const double weight = 0.5 * std::numbers::pi * std::cosh(u) / (ch * ch) * step;
            const double from_lo = 2.0 / (1.0 + std::exp(-2.0 * s));
            const double from_hi = 2.0 / (1.0 + std::exp(2.0 * s));
            if (from_lo <= 0.0 || from_hi <= 0.0 || weight == 0.0) continue;
            out.push_back({weight, from_lo, from_hi});
        }
        return out;
    }();
    return nodes;
}

}  // namespace

double risk_difference_log_density(const BetaParams& treatment, const BetaParams& control, double x) {
    if (!(x > -1.0 && x < 1.0)) return kNegInf;
    // f(x) = int f_t(x + y) f_c(y) dy over y in (lo, hi) = (max(0, -x), min(1, 1 - x)).
    const double lo = std::max(0.0, -x);
    const double hi = std::min(1.0, 1.0 - x);
    const double half = 0.5 * (hi - lo);
    const double lbt = std::lgamma(treatment.a) + std::lgamma(treatment.b) - std::lgamma(treatment.a + treatment.b);
    const double lbc = std::lgamma(control.a) + std::lgamma(control.b) - std::lgamma(control.a + control.b);
    // The integrand is written through the distances of y from both ends so
    // that the beta-density singularities at 0 and 1 are resolved accurately.
    auto log_integrand = [&](double from_lo, double from_hi) {
        double log_y, log_1my, log_t, log_1mt;
        if (x >= 0.0) {
            log_y = std::log(from_lo);
            log_1my = std::log(x + from_hi);
            log_t = std::log(x + from_lo);
            log_1mt = std::log(from_hi);
        } else {
            log_y = std::log(from_lo - x);
            log_1my = std::log(from_hi);
            log_t = std::log(from_lo);
            log_1mt = std::log(from_hi - x);
        }
        return (treatment.a - 1.0) * log_t + (treatment.b - 1.0) * log_1mt - lbt + (control.a - 1.0) * log_y +
               (control.b - 1.0) * log_1my - lbc;
    };
    double total = 0.0;
    for (const auto& node : tanh_sinh_nodes()) {
        total += half * node.weight * std::exp(log_integrand(half * node.from_lo, half * node.from_hi));
    }
    return total > 0.0 ? std::log(total) : kNegInf;
}

HPDRegion risk_difference_hpd(const BetaParams& treatment, const BetaParams& control, std::size_t draws,
                              double level, std::uint64_t seed) {
    check_draws(draws);
    const auto pt = sample_beta(treatment, draws, seed, 1);
    const auto pc = sample_beta(control, draws, seed, 2);
    std::vector<Vector> diffs(draws, Vector(1));
    for (std::size_t d = 0; d < draws; ++d) diffs[d](0) = pt[d] - pc[d];
    return hpd_region(std::move(diffs),
                      [&](const Vector& v) { return risk_difference_log_density(treatment, control, v(0)); }, level);
}

std::pair<double, double> hpd_hull(const HPDRegion& hpd, std::size_t axis) {
    require(axis < hpd.dimension(), ErrorKind::DimensionMismatch, "axis out of range");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const auto a = static_cast<Eigen::Index>(axis);
    for (std::size_t d = 0; d < hpd.samples.size(); ++d) {
        if (!hpd.retained[d]) continue;
        lo = std::min(lo, hpd.samples[d](a));
        hi = std::max(hi, hpd.samples[d](a));
    }
    require(lo <= hi, ErrorKind::EmptyRegion, "HPD region retains no draws");
    return {lo, hi};
}

}  // namespace react
