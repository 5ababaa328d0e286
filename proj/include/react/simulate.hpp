#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "react/bayes.hpp"
#include "react/decision.hpp"
#include "react/regions.hpp"

namespace react {

// Independent Gaussian groups Y_ik = mu_i + eps_ik, eps_ik ~ N(0, sd_i^2).
struct Scenario {
    std::vector<double> group_means;
    std::vector<double> group_sds;
    std::vector<long> group_ns;
    double delta = 0.0;
    double alpha = 0.05;

    std::size_t groups() const { return group_means.size(); }
    void validate() const;
};

struct ErrorRateReport {
    double type_i = 0.0;
    double type_ii = 0.0;
    double agnostic_rate = 0.0;
    double accept_rate = 0.0;
    double reject_rate = 0.0;
    double fwer_i = 0.0;
    double fwer_ii = 0.0;
    double fwer_any = 0.0;
    std::size_t reps = 0;
    std::uint64_t seed = 0;
};

inline constexpr std::size_t kMinReps = 1000;

// Draws one data set for replication `rep`; the stream depends only on (seed, rep).
std::vector<std::vector<double>> simulate_groups(const Scenario& scenario, std::uint64_t seed, std::uint64_t rep);

/// Two groups: Welch interval at level 1 - alpha against |mu_1 - mu_2| <= delta.
/// Boundary truths count as null.
ErrorRateReport simulate_error_rates(const Scenario& scenario, std::size_t reps, std::uint64_t seed);

/// Three or more groups: one chi-square ellipsoid per replication, decided
/// against every pairwise band and the max-pairwise band with no correction.
/// Per-hypothesis rates in the report are the worst (type I/II) or the mean
/// (accept/reject/agnostic) over the family.
ErrorRateReport simulate_fwer(const Scenario& scenario, std::size_t reps, std::uint64_t seed);

// The family tested by simulate_fwer: bands |mu_i - mu_j| <= delta, then the max-pairwise band.
std::vector<HypothesisRegion> pairwise_family(std::size_t groups, double delta);

struct CurvePoint {
    long n = 0;
    double accept_rate = 0.0;
    double reject_rate = 0.0;
    double agnostic_rate = 0.0;
};

/// Decision rates as every group size is replaced by each n in n_grid. Two
/// groups use the Welch band test; more use the ellipsoid and max-pairwise band.
std::vector<CurvePoint> consistency_curve(const Scenario& scenario, const std::vector<long>& n_grid, std::size_t reps,
                                          std::uint64_t seed);

struct PathStep {
    long n_first = 0;
    long n_second = 0;
    IntervalRegion interval;
    Decision decision = Decision::Agnostic;
};

/// A single sequentially growing two-group data set: starting from two
/// observations per group, each step adds one observation to a group chosen
/// uniformly at random, and the Welch test is recomputed.
std::vector<PathStep> sequential_path(const Scenario& scenario, long total_observations, std::uint64_t seed);

// Prior-predictive check of the credible-region decision rule.
struct BayesScenario {
    std::vector<NIGPosterior> priors;
    std::vector<long> group_ns;
    double delta = 1.0;
    double alpha = 0.05;
};

struct BayesFamilyReport {
    std::size_t sims = 0;
    std::size_t draws = 0;
    std::size_t decisions = 0;
    std::size_t accepts = 0;
    std::size_t rejects = 0;
    // Accepts whose posterior probability is <= 1 - alpha - tolerance, and
    // rejects whose posterior probability is >= alpha + tolerance.
    std::size_t accept_violations = 0;
    std::size_t reject_violations = 0;
    double min_accept_prob = 1.0;
    double max_reject_prob = 0.0;
    // Fraction of simulations with a true hypothesis rejected or a false one accepted.
    double false_conclusion_rate = 0.0;
    double tolerance = 0.0;
};

BayesFamilyReport simulate_bayes_family(const BayesScenario& scenario, std::size_t sims, std::size_t draws,
                                        std::uint64_t seed, double tolerance = 0.01);

// Three binomial standard errors around a nominal rate.
double mc_bound(double rate, std::size_t reps);

}  // namespace react
