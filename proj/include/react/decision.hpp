#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "react/hypotheses.hpp"
#include "react/regions.hpp"

namespace react {

// Three-way outcome; numeric values 0, 1/2 and 1 respectively.
enum class Decision { Accept, Agnostic, Reject };

double decision_value(Decision d);
Decision invert(Decision d);
std::string_view to_string(Decision d);
Decision decision_from_string(std::string_view s);

struct TestResult {
    std::string hypothesis_id;
    HypothesisRegion hypothesis;
    Decision decision = Decision::Agnostic;
    // Range of the hypothesis' linear functional over the region, when the
    // decision was made from a single contrast.
    std::optional<IntervalRegion> extent_used;
    double level = 0.0;
    std::uint64_t region_fingerprint = 0;
};

struct Evaluation {
    Decision decision;
    std::optional<IntervalRegion> extent;
};

// Accept when the region lies inside the hypothesis, Reject when it lies in
// the complement, Agnostic otherwise. Interval and ellipsoid regions are
// tested exactly through contrast extents (plus a quadratic program for the
// max-pairwise null); grid regions through the membership of every member.
Evaluation evaluate(const Region& region, const HypothesisRegion& h);
Decision decide(const Region& region, const HypothesisRegion& h);

// Membership-based decision over an explicit point set (grid regions and
// posterior draw clouds). Points whose flag is false are ignored.
Decision decide_point_cloud(std::span<const Vector> points, const std::vector<bool>& membership,
                            const HypothesisRegion& h);

// Same region for every hypothesis, no level adjustment. When `ids` is empty
// the identifiers are generated by describe().
std::vector<TestResult> decide_family(const Region& region, const std::vector<HypothesisRegion>& hypotheses,
                                      const std::vector<std::string>& ids = {});

/// Three-way decision straight from point-null p-values on a grid:
/// Accept if max p over the complement is <= alpha, Reject if max p over the
/// hypothesis is <= alpha, Agnostic otherwise.
Decision decide_via_pvalues(const PValueFunction& pvalue, const std::vector<Vector>& grid, double alpha,
                            const HypothesisRegion& h);

enum class TostOutcome { EquivalenceEstablished, NotEstablished };

/// Two one-sided Welch t-tests of |mean(a) - mean(b)| <= delta at level alpha.
TostOutcome tost_decision(std::span<const double> sample_a, std::span<const double> sample_b, double delta,
                          double alpha);

// min (x - c)' P (x - c) over {x : max_i x_i - min_i x_i <= delta}. Exact, by
// enumeration of active constraint sets; supports up to 6 coordinates.
double min_form_over_max_pairwise(const EllipsoidRegion& region, double delta);

enum class CoherenceRule { Propriety, Monotonicity, Invertibility, Consonance };
std::string_view to_string(CoherenceRule rule);

struct CoherenceViolation {
    CoherenceRule rule;
    std::vector<std::string> hypotheses;
};

struct CoherenceReport {
    std::vector<CoherenceViolation> violations;
    bool coherent() const { return violations.empty(); }
};

using SubsetOracle = std::function<Subset(const HypothesisRegion&, const HypothesisRegion&)>;

CoherenceReport check_coherence(const std::vector<TestResult>& results, const SubsetOracle& subset_oracle = is_subset);

// Content hash identifying a region; results sharing it came from one region.
std::uint64_t fingerprint(const Region& region);

}  // namespace react
