#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "react/decision.hpp"
#include "react/hypotheses.hpp"
#include "react/random.hpp"
#include "react/types.hpp"

namespace react {

// Normal-inverse-gamma over (mu, sigma^2): sigma^2 ~ IG(a, b), mu | sigma^2 ~ N(m, sigma^2 / k).
struct NIGPosterior {
    double m = 0.0;
    double k = 1.0;
    double a = 1.0;
    double b = 1.0;

    void validate() const;
};

NIGPosterior nig_update(const NIGPosterior& prior, std::span<const double> sample);

// Location-scale Student t; the marginal of mu under an NIG.
struct StudentT {
    double df;
    double location;
    double scale;
    // log of the density's normalizing constant, including 1 / scale.
    double log_norm;

    StudentT(double df, double location, double scale);
    double log_pdf(double x) const;
};

StudentT mu_marginal(const NIGPosterior& posterior);

// Draws of the mean vector (mu_1, ..., mu_p) from independent NIG posteriors.
// Draws are generated in fixed-size chunks, each on its own counter-based
// substream of `seed`, so the output does not depend on thread count.
std::vector<Vector> sample_means(const std::vector<NIGPosterior>& groups, std::size_t draws, std::uint64_t seed);

using LogDensity = std::function<double(const Vector&)>;

// Sum of Student-t marginal log densities of mu, one per group.
LogDensity mean_vector_log_density(const std::vector<NIGPosterior>& groups);

// {theta : f(theta | D) >= t}, represented by the posterior draws whose
// density clears the threshold. Densities are stored on the log scale.
struct HPDRegion {
    std::vector<Vector> samples;
    std::vector<double> log_density_at_sample;
    std::vector<bool> retained;
    double log_threshold = 0.0;
    double level = 0.95;

    std::size_t dimension() const;
    double retained_fraction() const;
    GridRegion as_grid() const;
};

inline constexpr std::size_t kMinDraws = 1000;
inline constexpr std::size_t kDefaultDraws = 50000;

// log_density is evaluated from several threads at once.
HPDRegion hpd_region(std::vector<Vector> draws, const LogDensity& log_density, double level);

// Pereira-Stern evidence value: 1 - P(f(theta) >= f(theta0) | D), estimated from draws.
double e_value(const Vector& theta0, std::span<const Vector> draws, const LogDensity& log_density);

Decision breact_decide(const HPDRegion& hpd, const HypothesisRegion& h);

// Fraction of draws inside h.
double posterior_prob(const HypothesisRegion& h, std::span<const Vector> draws);

struct BetaParams {
    double a;
    double b;
};

// Beta(1/2, 1/2) prior updated with binomial counts.
BetaParams beta_jeffreys_posterior(long successes, long trials);

std::vector<double> sample_beta(const BetaParams& params, std::size_t draws, std::uint64_t seed, std::uint64_t stream);

// Density of p_t - p_c for independent Beta posteriors, by tanh-sinh quadrature
// of the convolution integral. Returns -inf outside (-1, 1).
double risk_difference_log_density(const BetaParams& treatment, const BetaParams& control, double x);

// Posterior HPD region for the risk difference of two arms, as a 1-D draw cloud.
HPDRegion risk_difference_hpd(const BetaParams& treatment, const BetaParams& control, std::size_t draws,
                              double level, std::uint64_t seed);

// Smallest and largest retained draw along coordinate `axis`.
std::pair<double, double> hpd_hull(const HPDRegion& hpd, std::size_t axis = 0);

}  // namespace react
