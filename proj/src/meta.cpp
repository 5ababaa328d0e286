#include "react/meta.hpp"

#include <algorithm>
#include <cmath>

#include "react/distributions.hpp"
#include "react/error.hpp"

namespace react {

void StudySummary::validate() const {
    require(n_treatment >= 1 && n_control >= 1, ErrorKind::EmptyArm, "study '" + id + "' has an empty arm");
    require(events_treatment >= 0 && events_treatment <= n_treatment && events_control >= 0 &&
                events_control <= n_control,
            ErrorKind::InvalidCounts, "study '" + id + "' has events outside [0, n]");
}

EffectEstimate risk_difference(const StudySummary& study, bool continuity_correction) {
    study.validate();
    const double et = static_cast<double>(study.events_treatment);
    const double nt = static_cast<double>(study.n_treatment);
    const double ec = static_cast<double>(study.events_control);
    const double nc = static_cast<double>(study.n_control);
    const double effect = et / nt - ec / nc;
    const bool zero_cell = et == 0.0 || et == nt || ec == 0.0 || ec == nc;
    const double shift = continuity_correction && zero_cell ? 0.5 : 0.0;
    const double pt = (et + shift) / (nt + 2.0 * shift);
    const double pc = (ec + shift) / (nc + 2.0 * shift);
    const double variance = pt * (1.0 - pt) / (nt + 2.0 * shift) + pc * (1.0 - pc) / (nc + 2.0 * shift);
    return {effect, variance};
}

namespace {

std::vector<EffectEstimate> estimates_of(const std::vector<StudySummary>& studies, bool cc) {
    std::vector<EffectEstimate> out;
    out.reserve(studies.size());
    for (const auto& s : studies) out.push_back(risk_difference(s, cc));
    return out;
}

}  // namespace

PooledResult fixed_effects_pool(const std::vector<EffectEstimate>& estimates, double level) {
    require(!estimates.empty(), ErrorKind::NoStudies, "no studies to pool");
    double sw = 0.0;
    double swy = 0.0;
    for (const auto& e : estimates) {
        require(e.variance > 0.0, ErrorKind::DegenerateVariance, "study variance must be positive");
        sw += 1.0 / e.variance;
        swy += e.effect / e.variance;
    }
    PooledResult out;
    out.effect = swy / sw;
    out.variance = 1.0 / sw;
    out.method = PoolingMethod::Fixed;
    out.level = level;
    for (const auto& e : estimates) out.q_statistic += (e.effect - out.effect) * (e.effect - out.effect) / e.variance;
    return out;
}

PooledResult fixed_effects_pool(const std::vector<StudySummary>& studies, double level, bool continuity_correction) {
    require(!studies.empty(), ErrorKind::NoStudies, "no studies to pool");
    return fixed_effects_pool(estimates_of(studies, continuity_correction), level);
}

PooledResult random_effects_pool(const std::vector<EffectEstimate>& estimates, double level) {
    require(!estimates.empty(), ErrorKind::NoStudies, "no studies to pool");
    require(estimates.size() >= 2, ErrorKind::SingleStudy, "random-effects pooling needs at least two studies");
    const auto fixed = fixed_effects_pool(estimates, level);
    const double k = static_cast<double>(estimates.size());
    double sw = 0.0;
    double sw2 = 0.0;
    for (const auto& e : estimates) {
        sw += 1.0 / e.variance;
        sw2 += 1.0 / (e.variance * e.variance);
    }
    const double tau_sq = std::max(0.0, (fixed.q_statistic - (k - 1.0)) / (sw - sw2 / sw));
    if (tau_sq == 0.0) {
        PooledResult out = fixed;
        out.method = PoolingMethod::Random;
        return out;
    }
    double rw = 0.0;
    double rwy = 0.0;
    for (const auto& e : estimates) {
        rw += 1.0 / (e.variance + tau_sq);
        rwy += e.effect / (e.variance + tau_sq);
    }
    PooledResult out;
    out.effect = rwy / rw;
    out.variance = 1.0 / rw;
    out.method = PoolingMethod::Random;
    out.tau_sq = tau_sq;
    out.level = level;
    out.q_statistic = fixed.q_statistic;
    return out;
}

PooledResult random_effects_pool(const std::vector<StudySummary>& studies, double level, bool continuity_correction) {
    require(!studies.empty(), ErrorKind::NoStudies, "no studies to pool");
    return random_effects_pool(estimates_of(studies, continuity_correction), level);
}

IntervalRegion wald_interval(double effect, double variance, double level) {
    require(level > 0.0 && level < 1.0, ErrorKind::InvalidArgument, "level must lie in (0,1)");
    require(variance > 0.0, ErrorKind::DegenerateVariance, "variance must be positive");
    const double half = dist::normal_quantile(0.5 * (1.0 + level)) * std::sqrt(variance);
    return {std::max(-1.0, effect - half), std::min(1.0, effect + half), level, effect};
}

ForestData forest(const std::vector<StudySummary>& studies, double delta_hi, double alpha, Pooling pooling,
                  bool continuity_correction) {
    require(!studies.empty(), ErrorKind::NoStudies, "no studies supplied");
    require(delta_hi > 0.0 && delta_hi <= 1.0, ErrorKind::InvalidArgument, "delta_hi must lie in (0, 1]");
    require(alpha > 0.0 && alpha < 1.0, ErrorKind::InvalidArgument, "alpha must lie in (0,1)");
    const double level = 1.0 - alpha;
    const auto null = HypothesisRegion::interval(-1.0, delta_hi);
    const auto estimates = estimates_of(studies, continuity_correction);

    ForestData data;
    data.region_hi = delta_hi;
    data.alpha = alpha;
    data.continuity_correction = continuity_correction;

    double max_precision = 0.0;
    for (const auto& e : estimates) {
        require(e.variance > 0.0, ErrorKind::DegenerateVariance, "study variance must be positive");
        max_precision = std::max(max_precision, 1.0 / e.variance);
    }
    auto make_row = [&](std::string label, RowKind kind, double effect, double variance) {
        ForestRow row;
        row.label = std::move(label);
        row.kind = kind;
        row.effect = effect;
        row.variance = variance;
        row.interval = wald_interval(effect, variance, level);
        row.decision = decide(row.interval, null);
        row.marker_size = (1.0 / variance) / max_precision;
        return row;
    };
    for (std::size_t k = 0; k < studies.size(); ++k) {
        data.rows.push_back(make_row(studies[k].id, RowKind::Study, estimates[k].effect, estimates[k].variance));
    }
    if (pooling == Pooling::Fixed || pooling == Pooling::Both) {
        const auto pooled = fixed_effects_pool(estimates, level);
        data.rows.push_back(make_row("Pooled (fixed)", RowKind::PooledFixed, pooled.effect, pooled.variance));
    }
    if (pooling == Pooling::Random || pooling == Pooling::Both) {
        const auto pooled = random_effects_pool(estimates, level);
        data.tau_sq = pooled.tau_sq;
        data.rows.push_back(make_row("Pooled (random)", RowKind::PooledRandom, pooled.effect, pooled.variance));
    }
    return data;
}

}  // namespace react
