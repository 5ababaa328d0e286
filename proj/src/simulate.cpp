#include "react/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "react/error.hpp"
#include "react/parallel.hpp"

namespace react {
namespace {

void check_reps(std::size_t reps) {
    require(reps >= kMinReps, ErrorKind::TooFewReps,
            "need at least " + std::to_string(kMinReps) + " replications, got " + std::to_string(reps));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Vector pair_weights(std::size_t p, std::size_t i, std::size_t j) {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(p));
    w(static_cast<Eigen::Index>(i)) = 1.0;
    w(static_cast<Eigen::Index>(j)) = -1.0;
    return w;
}

Vector truth_of(const Scenario& s) {
    return Eigen::Map<const Vector>(s.group_means.data(), static_cast<Eigen::Index>(s.group_means.size()));
}

// Per-replication outcome counts for one hypothesis.
struct Tally {
    std::size_t accept = 0;
    std::size_t reject = 0;
    std::size_t agnostic = 0;

    void add(Decision d) {
        if (d == Decision::Accept) {
            ++accept;
        } else if (d == Decision::Reject) {
            ++reject;
        } else {
            ++agnostic;
        }
    }
};

Decision two_group_decision(const std::vector<std::vector<double>>& data, double level, const HypothesisRegion& band) {
    return decide(welch_mean_diff_interval(data[0], data[1], level), band);
}

}  // namespace

void Scenario::validate() const {
    require(!group_means.empty() && group_means.size() == group_sds.size() && group_means.size() == group_ns.size(),
            ErrorKind::DimensionMismatch, "scenario vectors must have equal, positive length");
    for (double sd : group_sds) require(sd > 0.0, ErrorKind::InvalidArgument, "group sds must be positive");
    for (long n : group_ns) require(n >= 2, ErrorKind::InsufficientData, "group sizes must be at least 2");
    require(delta >= 0.0, ErrorKind::NegativeDelta, "delta must be non-negative");
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidArgument, "alpha must lie in (0,1)");
}

double mc_bound(double rate, std::size_t reps) {
    return rate + 3.0 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(reps));
}

std::vector<std::vector<double>> simulate_groups(const Scenario& scenario, std::uint64_t seed, std::uint64_t rep) {
    Philox rng(seed, rep);
    std::normal_distribution<double> normal;
    std::vector<std::vector<double>> data(scenario.groups());
    for (std::size_t i = 0; i < scenario.groups(); ++i) {
        data[i].resize(static_cast<std::size_t>(scenario.group_ns[i]));
        for (auto& y : data[i]) y = scenario.group_means[i] + scenario.group_sds[i] * normal(rng);
    }
    return data;
}

std::vector<HypothesisRegion> pairwise_family(std::size_t groups, double delta) {
    std::vector<HypothesisRegion> family;
    for (std::size_t i = 0; i < groups; ++i)
        for (std::size_t j = i + 1; j < groups; ++j)
            family.push_back(HypothesisRegion::band(pair_weights(groups, i, j), 0.0, delta));
    family.push_back(HypothesisRegion::max_pairwise(delta, groups));
    return family;
}

ErrorRateReport simulate_error_rates(const Scenario& scenario, std::size_t reps, std::uint64_t seed) {
    scenario.validate();
    check_reps(reps);
    require(scenario.groups() == 2, ErrorKind::DimensionMismatch, "simulate_error_rates needs exactly two groups");
    const auto band = HypothesisRegion::band(Vector::Ones(1), 0.0, scenario.delta);
    const bool null_true = band.contains(Vector::Constant(1, scenario.group_means[0] - scenario.group_means[1]));

    std::vector<Decision> outcomes(reps);
    parallel_for(reps, [&](std::size_t r) {
        outcomes[r] = two_group_decision(simulate_groups(scenario, seed, r), 1.0 - scenario.alpha, band);
    });
    Tally tally;
    for (auto d : outcomes) tally.add(d);

    const double n = static_cast<double>(reps);
    ErrorRateReport report;
    report.reps = reps;
    report.seed = seed;
    report.accept_rate = static_cast<double>(tally.accept) / n;
    report.reject_rate = static_cast<double>(tally.reject) / n;
    report.agnostic_rate = static_cast<double>(tally.agnostic) / n;
    report.type_i = null_true ? report.reject_rate : 0.0;
    report.type_ii = null_true ? 0.0 : report.accept_rate;
    report.fwer_i = report.type_i;
    report.fwer_ii = report.type_ii;
    report.fwer_any = report.type_i + report.type_ii;
    return report;
}

ErrorRateReport simulate_fwer(const Scenario& scenario, std::size_t reps, std::uint64_t seed) {
    scenario.validate();
    check_reps(reps);
    require(scenario.groups() >= 3, ErrorKind::DimensionMismatch, "simulate_fwer needs at least three groups");
    const auto family = pairwise_family(scenario.groups(), scenario.delta);
    const Vector truth = truth_of(scenario);
    std::vector<bool> truly_null;
    for (const auto& h : family) truly_null.push_back(h.contains(truth));

    struct Outcome {
        std::vector<Decision> decisions;
    };
    std::vector<Outcome> outcomes(reps);
    parallel_for(reps, [&](std::size_t r) {
        const Region region = mean_vector_ellipsoid(simulate_groups(scenario, seed, r), 1.0 - scenario.alpha);
        auto& out = outcomes[r].decisions;
        out.reserve(family.size());
        for (const auto& h : family) out.push_back(decide(region, h));
    });

    std::vector<Tally> tallies(family.size());
    std::size_t any_i = 0, any_ii = 0, any_either = 0;
    for (const auto& o : outcomes) {
        bool false_reject = false;
        bool false_accept = false;
        for (std::size_t h = 0; h < family.size(); ++h) {
            tallies[h].add(o.decisions[h]);
            false_reject = false_reject || (truly_null[h] && o.decisions[h] == Decision::Reject);
            false_accept = false_accept || (!truly_null[h] && o.decisions[h] == Decision::Accept);
        }
        any_i += false_reject;
        any_ii += false_accept;
        any_either += (false_reject || false_accept);
    }

    const double n = static_cast<double>(reps);
    const double m = static_cast<double>(family.size());
    ErrorRateReport report;
    report.reps = reps;
    report.seed = seed;
    for (std::size_t h = 0; h < family.size(); ++h) {
        const double acc = static_cast<double>(tallies[h].accept) / n;
        const double rej = static_cast<double>(tallies[h].reject) / n;
        report.accept_rate += acc / m;
        report.reject_rate += rej / m;
        report.agnostic_rate += static_cast<double>(tallies[h].agnostic) / n / m;
        if (truly_null[h]) {
            report.type_i = std::max(report.type_i, rej);
        } else {
            report.type_ii = std::max(report.type_ii, acc);
        }
    }
    report.fwer_i = static_cast<double>(any_i) / n;
    report.fwer_ii = static_cast<double>(any_ii) / n;
    report.fwer_any = static_cast<double>(any_either) / n;
    return report;
}

std::vector<CurvePoint> consistency_curve(const Scenario& scenario, const std::vector<long>& n_grid, std::size_t reps,
                                          std::uint64_t seed) {
    scenario.validate();
    check_reps(reps);
    require(!n_grid.empty(), ErrorKind::InvalidArgument, "n_grid is empty");
    require(std::is_sorted(n_grid.begin(), n_grid.end()) &&
                std::adjacent_find(n_grid.begin(), n_grid.end()) == n_grid.end(),
            ErrorKind::InvalidArgument, "n_grid must be strictly increasing");
    const std::size_t p = scenario.groups();
    require(p >= 2, ErrorKind::DimensionMismatch, "consistency_curve needs at least two groups");
    const auto hypothesis = p == 2 ? HypothesisRegion::band(Vector::Ones(1), 0.0, scenario.delta)
                                   : HypothesisRegion::max_pairwise(scenario.delta, p);

    std::vector<CurvePoint> curve;
    for (std::size_t g = 0; g < n_grid.size(); ++g) {
        Scenario at_n = scenario;
        std::fill(at_n.group_ns.begin(), at_n.group_ns.end(), n_grid[g]);
        at_n.validate();
        // Each grid point gets its own family of replication streams.
        const std::uint64_t point_seed = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(n_grid[g])));
        std::vector<Decision> outcomes(reps);
        parallel_for(reps, [&](std::size_t r) {
            const auto data = simulate_groups(at_n, point_seed, r);
            if (p == 2) {
                outcomes[r] = two_group_decision(data, 1.0 - at_n.alpha, hypothesis);
            } else {
                outcomes[r] = decide(Region{mean_vector_ellipsoid(data, 1.0 - at_n.alpha)}, hypothesis);
            }
        });
        Tally tally;
        for (auto d : outcomes) tally.add(d);
        const double n = static_cast<double>(reps);
        curve.push_back({n_grid[g], static_cast<double>(tally.accept) / n, static_cast<double>(tally.reject) / n,
                         static_cast<double>(tally.agnostic) / n});
    }
    return curve;
}

std::vector<PathStep> sequential_path(const Scenario& scenario, long total_observations, std::uint64_t seed) {
    scenario.validate();
    require(scenario.groups() == 2, ErrorKind::DimensionMismatch, "sequential_path needs exactly two groups");
    require(total_observations >= 4, ErrorKind::InsufficientData, "need at least four observations in total");
    Philox rng(seed, 0);
    std::normal_distribution<double> normal;
    std::bernoulli_distribution coin(0.5);
    std::vector<std::vector<double>> data(2);
    auto draw = [&](std::size_t g) {
        data[g].push_back(scenario.group_means[g] + scenario.group_sds[g] * normal(rng));
    };
    for (int k = 0; k < 2; ++k) {
        draw(0);
        draw(1);
    }
    const auto band = HypothesisRegion::band(Vector::Ones(1), 0.0, scenario.delta);
    std::vector<PathStep> path;
    while (true) {
        const auto interval = welch_mean_diff_interval(data[0], data[1], 1.0 - scenario.alpha);
        path.push_back({static_cast<long>(data[0].size()), static_cast<long>(data[1].size()), interval,
                        decide(interval, band)});
        if (static_cast<long>(data[0].size() + data[1].size()) >= total_observations) break;
        draw(coin(rng) ? 1 : 0);
    }
    return path;
}

BayesFamilyReport simulate_bayes_family(const BayesScenario& scenario, std::size_t sims, std::size_t draws,
                                        std::uint64_t seed, double tolerance) {
    const std::size_t p = scenario.priors.size();
    require(p >= 2 && scenario.group_ns.size() == p, ErrorKind::DimensionMismatch,
            "need at least two groups with one size per prior");
    for (const auto& prior : scenario.priors) prior.validate();
    for (long n : scenario.group_ns) require(n >= 1, ErrorKind::InsufficientData, "group sizes must be positive");
    require(sims >= 1, ErrorKind::TooFewReps, "need at least one simulation");
    const auto family = pairwise_family(p, scenario.delta);
    const double level = 1.0 - scenario.alpha;

    struct SimOutcome {
        std::vector<Decision> decisions;
        std::vector<double> probs;
        bool false_conclusion = false;
    };
    std::vector<SimOutcome> outcomes(sims);
    // Simulations run serially; draw generation inside sample_means is chunk-parallel.
    for (std::size_t s = 0; s < sims; ++s) {
        Philox rng(seed, s);
        std::normal_distribution<double> normal;
        Vector truth(static_cast<Eigen::Index>(p));
        std::vector<NIGPosterior> posteriors;
        for (std::size_t i = 0; i < p; ++i) {
            const auto& prior = scenario.priors[i];
            std::gamma_distribution<double> shape(prior.a, 1.0);
            const double sigma_sq = prior.b / shape(rng);
            const double mu = prior.m + std::sqrt(sigma_sq / prior.k) * normal(rng);
            truth(static_cast<Eigen::Index>(i)) = mu;
            std::vector<double> y(static_cast<std::size_t>(scenario.group_ns[i]));
            for (auto& v : y) v = mu + std::sqrt(sigma_sq) * normal(rng);
            posteriors.push_back(nig_update(prior, y));
        }
        auto samples = sample_means(posteriors, draws, splitmix64(seed ^ splitmix64(s + 1)));
        const auto hpd = hpd_region(std::move(samples), mean_vector_log_density(posteriors), level);
        auto& out = outcomes[s];
        for (const auto& h : family) {
            const auto d = breact_decide(hpd, h);
            out.decisions.push_back(d);
            out.probs.push_back(posterior_prob(h, hpd.samples));
            const bool is_true = h.contains(truth);
            out.false_conclusion =
                out.false_conclusion || (is_true && d == Decision::Reject) || (!is_true && d == Decision::Accept);
        }
    }

    BayesFamilyReport report;
    report.sims = sims;
    report.draws = draws;
    report.tolerance = tolerance;
    std::size_t false_conclusions = 0;
    for (const auto& o : outcomes) {
        false_conclusions += o.false_conclusion;
        for (std::size_t h = 0; h < o.decisions.size(); ++h) {
            ++report.decisions;
            if (o.decisions[h] == Decision::Accept) {
                ++report.accepts;
                report.min_accept_prob = std::min(report.min_accept_prob, o.probs[h]);
                if (o.probs[h] <= level - tolerance) ++report.accept_violations;
            } else if (o.decisions[h] == Decision::Reject) {
                ++report.rejects;
                report.max_reject_prob = std::max(report.max_reject_prob, o.probs[h]);
                if (o.probs[h] >= scenario.alpha + tolerance) ++report.reject_violations;
            }
        }
    }
    report.false_conclusion_rate = static_cast<double>(false_conclusions) / static_cast<double>(sims);
    return report;
}

}  // namespace react
