#include "react/hypotheses.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "react/error.hpp"

namespace react {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = kBoundaryTolerance;

void check_weights(const Vector& w) {
    require(w.size() > 0 && w.cwiseAbs().maxCoeff() > 0.0, ErrorKind::ZeroContrast, "weights are all zero");
}

// Lower-end test for value against an endpoint.
bool above(double value, const Endpoint& lo) {
    if (lo.value == -kInf) return true;
    return lo.inclusive ? value >= lo.value - kTol : value > lo.value + kTol;
}

bool below(double value, const Endpoint& hi) {
    if (hi.value == kInf) return true;
    return hi.inclusive ? value <= hi.value + kTol : value < hi.value - kTol;
}

// Endpoint `inner` is at least as restrictive as `outer` on the lower side.
bool lower_within(const Endpoint& inner, const Endpoint& outer) {
    if (outer.value == -kInf) return true;
    if (inner.value == -kInf) return false;
    if (inner.value > outer.value + kTol) return true;
    if (inner.value < outer.value - kTol) return false;
    return outer.inclusive || !inner.inclusive;
}

bool upper_within(const Endpoint& inner, const Endpoint& outer) {
    if (outer.value == kInf) return true;
    if (inner.value == kInf) return false;
    if (inner.value < outer.value - kTol) return true;
    if (inner.value > outer.value + kTol) return false;
    return outer.inclusive || !inner.inclusive;
}

// Rewrites a slab on weights `target` into the coordinate t = base . theta,
// when target = c * base. Returns nullopt when not parallel.
std::optional<std::pair<Endpoint, Endpoint>> rescale_onto(const Slab& s, const Vector& base) {
    if (s.weights.size() != base.size()) return std::nullopt;
    const double c = s.weights.dot(base) / base.squaredNorm();
    if (c == 0.0 || (s.weights - c * base).norm() > 1e-12 * s.weights.norm()) return std::nullopt;
    // {theta : c t in [lo, hi]}
    Endpoint lo{s.lo.value / c, s.lo.inclusive};
    Endpoint hi{s.hi.value / c, s.hi.inclusive};
    if (c < 0) std::swap(lo, hi);
    return std::make_pair(lo, hi);
}

Vector pair_contrast(std::size_t dimension, std::size_t i, std::size_t j) {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(dimension));
    w(static_cast<Eigen::Index>(i)) = 1.0;
    w(static_cast<Eigen::Index>(j)) = -1.0;
    return w;
}

// If the slab's weights are a multiple of e_i - e_j, the matching pair.
std::optional<std::pair<std::size_t, std::size_t>> pairwise_axis(const Vector& w) {
    std::optional<std::size_t> pos, neg;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        if (w(k) == 0.0) continue;
        if (!pos) {
            pos = static_cast<std::size_t>(k);
        } else if (!neg) {
            neg = static_cast<std::size_t>(k);
        } else {
            return std::nullopt;
        }
    }
    if (!pos || !neg) return std::nullopt;
    if (w(static_cast<Eigen::Index>(*pos)) != -w(static_cast<Eigen::Index>(*neg))) return std::nullopt;
    return std::make_pair(*pos, *neg);
}

Subset from_bool(bool b) { return b ? Subset::True : Subset::False; }

}  // namespace

HypothesisRegion HypothesisRegion::band(Vector weights, double offset, double delta, bool closed) {
    check_weights(weights);
    require(delta >= 0.0, ErrorKind::NegativeDelta, "band half-width must be non-negative");
    return {Band{std::move(weights), offset, delta}, closed};
}

HypothesisRegion HypothesisRegion::half_space(Vector weights, double bound, Direction direction, bool closed) {
    check_weights(weights);
    return {HalfSpace{std::move(weights), bound, direction}, closed};
}

HypothesisRegion HypothesisRegion::interval(double lo, double hi, bool closed) {
    require(lo <= hi, ErrorKind::InvalidArgument, "interval requires lo <= hi");
    return {IntervalSet{lo, hi}, closed};
}

HypothesisRegion HypothesisRegion::max_pairwise(double delta, std::size_t dimension, bool closed) {
    require(delta >= 0.0, ErrorKind::NegativeDelta, "max-pairwise delta must be non-negative");
    require(dimension >= 2, ErrorKind::DimensionMismatch, "max-pairwise band needs at least two coordinates");
    return {MaxPairwiseBand{delta, dimension}, closed};
}

HypothesisRegion HypothesisRegion::whole_space(std::size_t dimension) {
    require(dimension >= 1, ErrorKind::DimensionMismatch, "dimension must be positive");
    Vector w = Vector::Zero(static_cast<Eigen::Index>(dimension));
    w(0) = 1.0;
    return half_space(std::move(w), kInf, Direction::AtMost, true);
}

std::size_t HypothesisRegion::dimension() const {
    return std::visit(
        [](const auto& v) -> std::size_t {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Band> || std::is_same_v<T, HalfSpace>) {
                return static_cast<std::size_t>(v.weights.size());
            } else if constexpr (std::is_same_v<T, IntervalSet>) {
                return 1;
            } else if constexpr (std::is_same_v<T, MaxPairwiseBand>) {
                return v.dimension;
            } else {
                return v.inner->dimension();
            }
        },
        variant_);
}

bool HypothesisRegion::contains(const Vector& theta) const {
    require(static_cast<std::size_t>(theta.size()) == dimension(), ErrorKind::DimensionMismatch,
            "point dimension differs from hypothesis");
    if (const auto* c = std::get_if<Complement>(&variant_)) return !c->inner->contains(theta);
    if (const auto* m = std::get_if<MaxPairwiseBand>(&variant_)) {
        const double spread = theta.maxCoeff() - theta.minCoeff();
        return closed_ ? spread <= m->delta + kTol : spread < m->delta - kTol;
    }
    // Inline slab test; this sits on the hot path of draw-cloud decisions.
    const bool c = closed_;
    if (const auto* b = std::get_if<Band>(&variant_)) {
        const double v = b->weights.dot(theta);
        return above(v, {b->offset - b->delta, c}) && below(v, {b->offset + b->delta, c});
    }
    if (const auto* hs = std::get_if<HalfSpace>(&variant_)) {
        const double v = hs->weights.dot(theta);
        if (hs->direction == Direction::AtMost) return below(v, {hs->bound, c});
        return above(v, {hs->bound, c});
    }
    const auto& iv = std::get<IntervalSet>(variant_);
    return above(theta(0), {iv.lo, c}) && below(theta(0), {iv.hi, c});
}

bool operator==(const HypothesisRegion& a, const HypothesisRegion& b) {
    if (a.closed_ != b.closed_ || a.variant_.index() != b.variant_.index()) return false;
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.variant_);
            if constexpr (std::is_same_v<T, Band>) {
                return x.weights == y.weights && x.offset == y.offset && x.delta == y.delta;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                return x.weights == y.weights && x.bound == y.bound && x.direction == y.direction;
            } else if constexpr (std::is_same_v<T, IntervalSet>) {
                return x.lo == y.lo && x.hi == y.hi;
            } else if constexpr (std::is_same_v<T, MaxPairwiseBand>) {
                return x.delta == y.delta && x.dimension == y.dimension;
            } else {
                return *x.inner == *y.inner;
            }
        },
        a.variant_);
}

HypothesisRegion complement(const HypothesisRegion& h) {
    if (const auto* c = std::get_if<Complement>(&h.variant_)) return *c->inner;
    if (const auto* hs = std::get_if<HalfSpace>(&h.variant_)) {
        const auto flipped = hs->direction == Direction::AtMost ? Direction::AtLeast : Direction::AtMost;
        return {HalfSpace{hs->weights, hs->bound, flipped}, !h.closed_};
    }
    return {Complement{std::make_shared<const HypothesisRegion>(h)}, !h.closed_};
}

bool Slab::empty() const {
    if (lo.value == kInf || hi.value == -kInf) return true;
    if (lo.value == -kInf || hi.value == kInf) return false;
    if (lo.value < hi.value) return false;
    return !(lo.value == hi.value && lo.inclusive && hi.inclusive);
}

bool Slab::universal() const { return lo.value == -kInf && hi.value == kInf; }

bool Slab::holds(double value) const { return above(value, lo) && below(value, hi); }

bool Slab::range_inside(double a, double b) const { return !empty() && above(a, lo) && below(b, hi); }

bool Slab::range_disjoint(double a, double b) const {
    if (empty()) return true;
    // Strictly left of the lower end, or strictly right of the upper end.
    const bool left = lo.value != -kInf && !above(b, lo);
    const bool right = hi.value != kInf && !below(a, hi);
    return left || right;
}

std::optional<Slab> as_slab(const HypothesisRegion& h) {
    const bool c = h.closed();
    return std::visit(
        [c](const auto& v) -> std::optional<Slab> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Band>) {
                return Slab{v.weights, {v.offset - v.delta, c}, {v.offset + v.delta, c}};
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                if (v.direction == Direction::AtMost) return Slab{v.weights, {-kInf, false}, {v.bound, c}};
                return Slab{v.weights, {v.bound, c}, {kInf, false}};
            } else if constexpr (std::is_same_v<T, IntervalSet>) {
                return Slab{Vector::Ones(1), {v.lo, c}, {v.hi, c}};
            } else {
                return std::nullopt;
            }
        },
        h.variant());
}

std::optional<Slab> restate_on(const Slab& s, const Vector& base) {
    const auto r = rescale_onto(s, base);
    if (!r) return std::nullopt;
    return Slab{base, r->first, r->second};
}

Subset is_subset(const HypothesisRegion& h1, const HypothesisRegion& h2) {
    if (h1.dimension() != h2.dimension()) return Subset::Undecidable;
    const auto s1 = as_slab(h1);
    const auto s2 = as_slab(h2);
    if (s2 && s2->universal()) return Subset::True;
    if (s1 && s1->empty()) return Subset::True;

    if (s1 && s2) {
        const auto rescaled = rescale_onto(*s2, s1->weights);
        if (!rescaled) return s1->universal() ? Subset::False : Subset::Undecidable;
        return from_bool(lower_within(s1->lo, rescaled->first) && upper_within(s1->hi, rescaled->second));
    }

    const auto* m1 = std::get_if<MaxPairwiseBand>(&h1.variant());
    const auto* m2 = std::get_if<MaxPairwiseBand>(&h2.variant());
    if (m1 && m2) {
        return from_bool(lower_within({-m1->delta, h1.closed()}, {-m2->delta, h2.closed()}));
    }
    if (m1 && s2) {
        const auto axis = pairwise_axis(s2->weights);
        if (!axis) return Subset::Undecidable;
        const auto rescaled = rescale_onto(*s2, pair_contrast(m1->dimension, axis->first, axis->second));
        const Endpoint lo{-m1->delta, h1.closed()};
        const Endpoint hi{m1->delta, h1.closed()};
        return from_bool(lower_within(lo, rescaled->first) && upper_within(hi, rescaled->second));
    }
    if (s1 && m2) {
        const auto axis = pairwise_axis(s1->weights);
        if (!axis) return Subset::Undecidable;
        // A single pairwise constraint leaves the other pairs free once p >= 3.
        if (m2->dimension >= 3) return Subset::False;
        const auto rescaled = rescale_onto(*s1, pair_contrast(2, axis->first, axis->second));
        const Endpoint lo{-m2->delta, h2.closed()};
        const Endpoint hi{m2->delta, h2.closed()};
        return from_bool(lower_within(rescaled->first, lo) && upper_within(rescaled->second, hi));
    }

    const auto* c1 = std::get_if<Complement>(&h1.variant());
    const auto* c2 = std::get_if<Complement>(&h2.variant());
    if (c1 && c2) return is_subset(*c2->inner, *c1->inner);
    if (s1 && c2) {
        // Parallel slabs: subset of the complement means disjoint.
        const auto inner = as_slab(*c2->inner);
        if (!inner) return Subset::Undecidable;
        const auto rescaled = rescale_onto(*inner, s1->weights);
        if (!rescaled) return Subset::Undecidable;
        const Slab other{s1->weights, rescaled->first, rescaled->second};
        if (other.empty()) return Subset::True;
        const bool left = other.lo.value != -kInf && upper_within(s1->hi, {other.lo.value, !other.lo.inclusive});
        const bool right = other.hi.value != kInf && lower_within(s1->lo, {other.hi.value, !other.hi.inclusive});
        return from_bool(left || right);
    }
    if (c1 && s2) {
        // The complement of a parallel slab is up to two rays; each must fit.
        const auto inner = as_slab(*c1->inner);
        if (!inner) return Subset::Undecidable;
        if (inner->universal()) return Subset::True;
        if (inner->empty()) return Subset::False;
        const auto rescaled = rescale_onto(*s2, inner->weights);
        if (!rescaled) return Subset::Undecidable;
        const auto& [lo, hi] = *rescaled;
        const bool left = inner->lo.value == -kInf ||
                          (lo.value == -kInf && upper_within({inner->lo.value, !inner->lo.inclusive}, hi));
        const bool right = inner->hi.value == kInf ||
                           (hi.value == kInf && lower_within({inner->hi.value, !inner->hi.inclusive}, lo));
        return from_bool(left && right);
    }
    return Subset::Undecidable;
}

HypothesisRegion build_pragmatic(const Vector& anchor, const Dissimilarity& dissimilarity, double delta) {
    require(delta >= 0.0, ErrorKind::NegativeDelta, "delta must be non-negative");
    if (const auto* ac = std::get_if<AbsContrast>(&dissimilarity)) {
        require(ac->weights.size() == anchor.size(), ErrorKind::DimensionMismatch,
                "contrast length differs from anchor dimension");
        return HypothesisRegion::band(ac->weights, ac->weights.dot(anchor), delta);
    }
    require(anchor.size() >= 2, ErrorKind::DimensionMismatch, "max-pairwise needs at least two coordinates");
    require(anchor.maxCoeff() == anchor.minCoeff(), ErrorKind::InvalidArgument,
            "max-pairwise anchor must have equal coordinates");
    return HypothesisRegion::max_pairwise(delta, static_cast<std::size_t>(anchor.size()));
}

double nnt_to_delta(double nnt) {
    require(nnt > 0.0 && std::isfinite(nnt), ErrorKind::NonpositiveNNT, "NNT must be positive");
    return 1.0 / nnt;
}

namespace {

std::string linear_form(const Vector& w) {
    std::ostringstream out;
    bool first = true;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        const double c = w(k);
        if (c == 0.0) continue;
        if (!first) out << (c < 0 ? " - " : " + ");
        else if (c < 0) out << "-";
        const double mag = std::abs(c);
        if (mag != 1.0) out << mag << "*";
        out << "theta" << (k + 1);
        first = false;
    }
    return out.str();
}

}  // namespace

std::string describe(const HypothesisRegion& h) {
    const char* le = h.closed() ? " <= " : " < ";
    const char* ge = h.closed() ? " >= " : " > ";
    std::ostringstream out;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Band>) {
                out << "|" << linear_form(v.weights);
                if (v.offset != 0.0) out << (v.offset < 0 ? " + " : " - ") << std::abs(v.offset);
                out << "|" << le << v.delta;
            } else if constexpr (std::is_same_v<T, HalfSpace>) {
                out << linear_form(v.weights) << (v.direction == Direction::AtMost ? le : ge) << v.bound;
            } else if constexpr (std::is_same_v<T, IntervalSet>) {
                out << v.lo << le << "theta1" << le << v.hi;
            } else if constexpr (std::is_same_v<T, MaxPairwiseBand>) {
                out << "max_ij |theta_i - theta_j|" << le << v.delta << " (p=" << v.dimension << ")";
            } else {
                out << "not(" << describe(*v.inner) << ")";
            }
        },
        h.variant());
    return out.str();
}

}  // namespace react
