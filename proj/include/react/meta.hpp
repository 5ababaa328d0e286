#pragma once

#include <optional>
#include <string>
#include <vector>

#include "react/decision.hpp"
#include "react/regions.hpp"

namespace react {

// Two-arm binary-outcome study.
struct StudySummary {
    std::string id;
    long events_treatment = 0;
    long n_treatment = 0;
    long events_control = 0;
    long n_control = 0;

    void validate() const;
};

struct EffectEstimate {
    double effect;
    double variance;
};

/// Risk difference p_t - p_c with its Wald variance. When a cell is zero and
/// `continuity_correction` is set, 0.5 is added to all four cells for the
/// variance only; the effect is always the raw difference.
EffectEstimate risk_difference(const StudySummary& study, bool continuity_correction = true);

enum class PoolingMethod { Fixed, Random };

struct PooledResult {
    double effect = 0.0;
    double variance = 0.0;
    PoolingMethod method = PoolingMethod::Fixed;
    double tau_sq = 0.0;
    double level = 0.95;
    // Cochran's Q around the fixed-effects mean.
    double q_statistic = 0.0;
};

PooledResult fixed_effects_pool(const std::vector<EffectEstimate>& estimates, double level = 0.95);
PooledResult fixed_effects_pool(const std::vector<StudySummary>& studies, double level = 0.95,
                                bool continuity_correction = true);

/// DerSimonian-Laird random-effects pooling.
PooledResult random_effects_pool(const std::vector<EffectEstimate>& estimates, double level = 0.95);
PooledResult random_effects_pool(const std::vector<StudySummary>& studies, double level = 0.95,
                                 bool continuity_correction = true);

// effect +/- z_{(1+level)/2} sqrt(variance), clipped to the risk-difference
// parameter space [-1, 1].
IntervalRegion wald_interval(double effect, double variance, double level);

enum class Pooling { Fixed, Random, Both };

enum class RowKind { Study, PooledFixed, PooledRandom };

struct ForestRow {
    std::string label;
    RowKind kind = RowKind::Study;
    double effect = 0.0;
    double variance = 0.0;
    IntervalRegion interval;
    Decision decision = Decision::Agnostic;
    // Proportional to 1 / variance, scaled so the most precise study is 1.
    double marker_size = 0.0;
};

struct ForestData {
    std::vector<ForestRow> rows;
    double region_lo = -1.0;
    double region_hi = 0.0;
    double alpha = 0.05;
    std::optional<double> tau_sq;
    bool continuity_correction = true;
};

/// Per-study and pooled (1 - alpha) intervals decided against the null
/// risk-difference region [-1, delta_hi]; pooled rows come last.
ForestData forest(const std::vector<StudySummary>& studies, double delta_hi, double alpha, Pooling pooling,
                  bool continuity_correction = true);

}  // namespace react
