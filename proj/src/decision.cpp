#include "react/decision.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "react/distributions.hpp"
#include "react/error.hpp"

namespace react {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Decision classify(const Slab& slab, const IntervalRegion& extent) {
    if (slab.range_inside(extent.lower, extent.upper)) return Decision::Accept;
    if (slab.range_disjoint(extent.lower, extent.upper)) return Decision::Reject;
    return Decision::Agnostic;
}

Decision classify_members(const GridRegion& grid, const HypothesisRegion& h) {
    return decide_point_cloud(grid.grid_points, grid.membership, h);
}

Decision classify_max_pairwise(const EllipsoidRegion& region, const MaxPairwiseBand& m, bool closed) {
    const auto p = region.dimension();
    const Slab pair_slab{Vector(), {-m.delta, closed}, {m.delta, closed}};
    bool all_inside = true;
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i + 1; j < p; ++j) {
            Vector w = Vector::Zero(static_cast<Eigen::Index>(p));
            w(static_cast<Eigen::Index>(i)) = 1.0;
            w(static_cast<Eigen::Index>(j)) = -1.0;
            const auto ext = contrast_extent(region, w);
            // Outside one pairwise band means outside their intersection.
            if (pair_slab.range_disjoint(ext.lower, ext.upper)) return Decision::Reject;
            all_inside = all_inside && pair_slab.range_inside(ext.lower, ext.upper);
        }
    }
    if (all_inside) return Decision::Accept;
    const double closest = min_form_over_max_pairwise(region, m.delta);
    const double slack = kBoundaryTolerance * std::max(1.0, region.radius_sq);
    const bool disjoint = closed ? closest > region.radius_sq + slack : closest >= region.radius_sq - slack;
    return disjoint ? Decision::Reject : Decision::Agnostic;
}

std::uint64_t fnv1a(std::uint64_t hash, const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < size; ++k) {
        hash ^= bytes[k];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t mix(std::uint64_t hash, double v) { return fnv1a(hash, &v, sizeof v); }

}  // namespace

double decision_value(Decision d) {
    switch (d) {
        case Decision::Accept: return 0.0;
        case Decision::Agnostic: return 0.5;
        case Decision::Reject: return 1.0;
    }
    return 0.5;
}

Decision invert(Decision d) {
    if (d == Decision::Accept) return Decision::Reject;
    if (d == Decision::Reject) return Decision::Accept;
    return Decision::Agnostic;
}

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::Accept: return "accept";
        case Decision::Agnostic: return "agnostic";
        case Decision::Reject: return "reject";
    }
    return "agnostic";
}

Decision decision_from_string(std::string_view s) {
    if (s == "accept") return Decision::Accept;
    if (s == "reject") return Decision::Reject;
    if (s == "agnostic") return Decision::Agnostic;
    throw Error(ErrorKind::InvalidArgument, "unknown decision '" + std::string(s) + "'");
}

Evaluation evaluate(const Region& region, const HypothesisRegion& h) {
    require(region_dimension(region) == h.dimension(), ErrorKind::DimensionMismatch,
            "region dimension " + std::to_string(region_dimension(region)) + " differs from hypothesis dimension " +
                std::to_string(h.dimension()));

    if (const auto* c = std::get_if<Complement>(&h.variant())) {
        auto inner = evaluate(region, *c->inner);
        return {invert(inner.decision), inner.extent};
    }
    if (const auto* grid = std::get_if<GridRegion>(&region)) return {classify_members(*grid, h), std::nullopt};

    if (const auto slab = as_slab(h)) {
        const auto extent = std::visit(
            [&](const auto& r) -> IntervalRegion {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, GridRegion>) {
                    throw Error(ErrorKind::UnsupportedPair, "grid regions are handled by membership");
                } else {
                    return contrast_extent(r, slab->weights);
                }
            },
            region);
        return {classify(*slab, extent), extent};
    }

    if (const auto* m = std::get_if<MaxPairwiseBand>(&h.variant())) {
        if (const auto* e = std::get_if<EllipsoidRegion>(&region)) {
            return {classify_max_pairwise(*e, *m, h.closed()), std::nullopt};
        }
    }
    throw Error(ErrorKind::UnsupportedPair, "no exact containment test for this region/hypothesis pair");
}

Decision decide_point_cloud(std::span<const Vector> points, const std::vector<bool>& membership,
                            const HypothesisRegion& h) {
    require(membership.size() == points.size(), ErrorKind::DimensionMismatch,
            "membership flags do not match points");
    bool any_in = false;
    bool any_out = false;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!membership[k]) continue;
        if (h.contains(points[k])) {
            any_in = true;
        } else {
            any_out = true;
        }
        if (any_in && any_out) return Decision::Agnostic;
    }
    require(any_in || any_out, ErrorKind::EmptyRegion, "region has no member points");
    return any_in ? Decision::Accept : Decision::Reject;
}

Decision decide(const Region& region, const HypothesisRegion& h) { return evaluate(region, h).decision; }

std::vector<TestResult> decide_family(const Region& region, const std::vector<HypothesisRegion>& hypotheses,
                                      const std::vector<std::string>& ids) {
    require(ids.empty() || ids.size() == hypotheses.size(), ErrorKind::InvalidArgument,
            "hypothesis ids must match hypotheses one to one");
    const auto tag = fingerprint(region);
    const double level = region_level(region);
    std::vector<TestResult> results;
    results.reserve(hypotheses.size());
    for (std::size_t k = 0; k < hypotheses.size(); ++k) {
        auto eval = evaluate(region, hypotheses[k]);
        results.push_back(TestResult{ids.empty() ? describe(hypotheses[k]) : ids[k], hypotheses[k], eval.decision,
                                     eval.extent, level, tag});
    }
    return results;
}

Decision decide_via_pvalues(const PValueFunction& pvalue, const std::vector<Vector>& grid, double alpha,
                            const HypothesisRegion& h) {
    require(!grid.empty(), ErrorKind::EmptyGrid, "grid has no points");
    double max_inside = -kInf;
    double max_outside = -kInf;
    for (const auto& theta : grid) {
        const double p = pvalue(theta);
        if (h.contains(theta)) {
            max_inside = std::max(max_inside, p);
        } else {
            max_outside = std::max(max_outside, p);
        }
    }
    require(max_inside > -kInf && max_outside > -kInf, ErrorKind::GridNotStraddling,
            "grid must contain points both inside and outside the hypothesis");
    const bool accept = max_outside <= alpha;
    const bool reject = max_inside <= alpha;
    require(!(accept && reject), ErrorKind::EmptyRegion, "every grid point has p-value <= alpha");
    if (accept) return Decision::Accept;
    if (reject) return Decision::Reject;
    return Decision::Agnostic;
}

TostOutcome tost_decision(std::span<const double> sample_a, std::span<const double> sample_b, double delta,
                          double alpha) {
    require(delta >= 0.0, ErrorKind::NegativeDelta, "delta must be non-negative");
    require(alpha > 0.0 && alpha < 0.5, ErrorKind::InvalidArgument, "alpha must lie in (0, 0.5)");
    const auto m = welch_moments(sample_a, sample_b);
    // H01: diff <= -delta, H02: diff >= delta.
    const double p_lower = 1.0 - dist::student_t_cdf((m.difference + delta) / m.standard_error, m.df);
    const double p_upper = dist::student_t_cdf((m.difference - delta) / m.standard_error, m.df);
    return std::max(p_lower, p_upper) <= alpha ? TostOutcome::EquivalenceEstablished : TostOutcome::NotEstablished;
}

double min_form_over_max_pairwise(const EllipsoidRegion& region, double delta) {
    const auto p = static_cast<Eigen::Index>(region.dimension());
    require(p >= 2, ErrorKind::DimensionMismatch, "max-pairwise needs at least two coordinates");
    require(p <= 6, ErrorKind::UnsupportedPair, "max-pairwise containment is limited to 6 coordinates");
    const Vector& c = region.center;
    if (c.maxCoeff() - c.minCoeff() <= delta) return 0.0;

    const Matrix shape = region.shape();
    struct Row {
        Eigen::Index i, j;
    };
    std::vector<Row> pairs;
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = i + 1; j < p; ++j) pairs.push_back({i, j});

    // The minimizer is the equality-constrained minimizer of its own active
    // set, and some linearly independent subset (at most p - 1 rows, since every
    // row is orthogonal to the ones vector) spans the same affine space.
    double best = kInf;
    const double feas_tol = 1e-9 * (1.0 + std::abs(delta));
    std::vector<std::pair<std::size_t, double>> active;
    auto solve_active = [&]() {
        const auto s = static_cast<Eigen::Index>(active.size());
        Matrix a = Matrix::Zero(s, p);
        Vector b(s);
        for (Eigen::Index r = 0; r < s; ++r) {
            const auto& row = pairs[active[static_cast<std::size_t>(r)].first];
            a(r, row.i) = 1.0;
            a(r, row.j) = -1.0;
            b(r) = active[static_cast<std::size_t>(r)].second;
        }
        const Matrix gram = a * shape * a.transpose();
        Eigen::FullPivLU<Matrix> lu(gram);
        if (lu.rank() < s) return;
        const Vector gap = b - a * c;
        const Vector lambda = lu.solve(gap);
        const Vector x = c + shape * a.transpose() * lambda;
        if (x.maxCoeff() - x.minCoeff() > delta + feas_tol) return;
        best = std::min(best, gap.dot(lambda));
    };
    auto recurse = [&](auto&& self, std::size_t next) -> void {
        if (!active.empty()) solve_active();
        if (static_cast<Eigen::Index>(active.size()) == p - 1) return;
        for (std::size_t k = next; k < pairs.size(); ++k) {
            for (double sign : {1.0, -1.0}) {
                if (delta == 0.0 && sign < 0.0) continue;
                active.emplace_back(k, sign * delta);
                self(self, k + 1);
                active.pop_back();
            }
        }
    };
    recurse(recurse, 0);
    return best;
}

std::string_view to_string(CoherenceRule rule) {
    switch (rule) {
        case CoherenceRule::Propriety: return "propriety";
        case CoherenceRule::Monotonicity: return "monotonicity";
        case CoherenceRule::Invertibility: return "invertibility";
        case CoherenceRule::Consonance: return "consonance";
    }
    return "unknown";
}

CoherenceReport check_coherence(const std::vector<TestResult>& results, const SubsetOracle& subset_oracle) {
    CoherenceReport report;
    if (results.empty()) return report;
    for (const auto& r : results) {
        require(r.region_fingerprint == results.front().region_fingerprint, ErrorKind::MixedRegions,
                "results were produced from different regions");
    }
    auto flag = [&](CoherenceRule rule, std::vector<std::string> ids) {
        report.violations.push_back({rule, std::move(ids)});
    };

    for (const auto& r : results) {
        if (const auto slab = as_slab(r.hypothesis)) {
            if (slab->universal() && r.decision != Decision::Accept) flag(CoherenceRule::Propriety, {r.hypothesis_id});
            if (slab->empty() && r.decision != Decision::Reject) flag(CoherenceRule::Propriety, {r.hypothesis_id});
        }
    }

    for (std::size_t a = 0; a < results.size(); ++a) {
        for (std::size_t b = 0; b < results.size(); ++b) {
            if (a == b) continue;
            const auto& small = results[a];
            const auto& big = results[b];
            if (subset_oracle(small.hypothesis, big.hypothesis) == Subset::True &&
                decision_value(big.decision) > decision_value(small.decision)) {
                flag(CoherenceRule::Monotonicity, {small.hypothesis_id, big.hypothesis_id});
            }
            if (a < b && big.hypothesis == complement(small.hypothesis) &&
                decision_value(small.decision) != 1.0 - decision_value(big.decision)) {
                flag(CoherenceRule::Invertibility, {small.hypothesis_id, big.hypothesis_id});
            }
        }
    }

    // Intersection consonance for parallel slabs: accepted hypotheses whose
    // common 1-D intersection sits inside another slab force its acceptance.
    for (const auto& target : results) {
        const auto t = as_slab(target.hypothesis);
        if (!t || target.decision == Decision::Accept) continue;
        Endpoint lo{-kInf, false};
        Endpoint hi{kInf, false};
        std::vector<std::string> ids;
        for (const auto& r : results) {
            if (&r == &target || r.decision != Decision::Accept) continue;
            const auto s = as_slab(r.hypothesis);
            if (!s) continue;
            const auto on_t = restate_on(*s, t->weights);
            if (!on_t) continue;
            if (on_t->lo.value > lo.value || (on_t->lo.value == lo.value && !on_t->lo.inclusive)) lo = on_t->lo;
            if (on_t->hi.value < hi.value || (on_t->hi.value == hi.value && !on_t->hi.inclusive)) hi = on_t->hi;
            ids.push_back(r.hypothesis_id);
        }
        if (ids.size() < 2) continue;
        const Slab meet{t->weights, lo, hi};
        bool inside = meet.empty();
        if (!inside) {
            const bool lo_ok = t->lo.value == -kInf ||
                               (lo.value != -kInf && (lo.value > t->lo.value + kBoundaryTolerance ||
                                                      (lo.value >= t->lo.value - kBoundaryTolerance &&
                                                       (t->lo.inclusive || !lo.inclusive))));
            const bool hi_ok = t->hi.value == kInf ||
                               (hi.value != kInf && (hi.value < t->hi.value - kBoundaryTolerance ||
                                                     (hi.value <= t->hi.value + kBoundaryTolerance &&
                                                      (t->hi.inclusive || !hi.inclusive))));
            inside = lo_ok && hi_ok;
        }
        if (inside) {
            ids.push_back(target.hypothesis_id);
            flag(CoherenceRule::Consonance, std::move(ids));
        }
    }

    // Pairwise bands versus the max-pairwise global null.
    for (const auto& target : results) {
        const auto* m = std::get_if<MaxPairwiseBand>(&target.hypothesis.variant());
        if (!m || target.decision == Decision::Accept) continue;
        std::vector<std::string> ids;
        bool covered = true;
        for (std::size_t i = 0; i < m->dimension && covered; ++i) {
            for (std::size_t j = i + 1; j < m->dimension && covered; ++j) {
                Vector w = Vector::Zero(static_cast<Eigen::Index>(m->dimension));
                w(static_cast<Eigen::Index>(i)) = 1.0;
                w(static_cast<Eigen::Index>(j)) = -1.0;
                const auto band = HypothesisRegion::band(w, 0.0, m->delta, target.hypothesis.closed());
                const auto found = std::find_if(results.begin(), results.end(), [&](const TestResult& r) {
                    return r.decision == Decision::Accept && subset_oracle(r.hypothesis, band) == Subset::True;
                });
                if (found == results.end()) {
                    covered = false;
                } else {
                    ids.push_back(found->hypothesis_id);
                }
            }
        }
        if (covered) {
            ids.push_back(target.hypothesis_id);
            flag(CoherenceRule::Consonance, std::move(ids));
        }
    }
    return report;
}

std::uint64_t fingerprint(const Region& region) {
    std::uint64_t h = 14695981039346656037ull;
    const auto index = static_cast<std::uint64_t>(region.index());
    h = fnv1a(h, &index, sizeof index);
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            h = mix(h, r.level);
            if constexpr (std::is_same_v<T, IntervalRegion>) {
                h = mix(mix(mix(h, r.lower), r.upper), r.point_estimate);
            } else if constexpr (std::is_same_v<T, EllipsoidRegion>) {
                for (Eigen::Index k = 0; k < r.center.size(); ++k) h = mix(h, r.center(k));
                for (Eigen::Index k = 0; k < r.precision.size(); ++k) h = mix(h, r.precision.data()[k]);
                h = mix(h, r.radius_sq);
            } else {
                for (std::size_t k = 0; k < r.grid_points.size(); ++k) {
                    for (Eigen::Index d = 0; d < r.grid_points[k].size(); ++d) h = mix(h, r.grid_points[k](d));
                    const unsigned char flag = r.membership[k] ? 1 : 0;
                    h = fnv1a(h, &flag, 1);
                }
            }
        },
        region);
    return h;
}

}  // namespace react
