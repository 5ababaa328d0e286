#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "react/types.hpp"

namespace react {

class HypothesisRegion;

// |weights . theta - offset| <= delta
struct Band {
    Vector weights;
    double offset = 0.0;
    double delta = 0.0;
};

enum class Direction { AtMost, AtLeast };

// weights . theta <= bound (AtMost) or >= bound (AtLeast); strict when open.
struct HalfSpace {
    Vector weights;
    double bound = 0.0;
    Direction direction = Direction::AtMost;
};

// lo <= phi <= hi for a scalar parameter.
struct IntervalSet {
    double lo = 0.0;
    double hi = 0.0;
};

// max_{i,j} |theta_i - theta_j| <= delta
struct MaxPairwiseBand {
    double delta = 0.0;
    std::size_t dimension = 0;
};

struct Complement {
    std::shared_ptr<const HypothesisRegion> inner;
};

// A pragmatic null hypothesis. Null regions are closed by default; the
// complement of a closed set is open and vice versa.
class HypothesisRegion {
public:
    using Variant = std::variant<Band, HalfSpace, IntervalSet, MaxPairwiseBand, Complement>;

    static HypothesisRegion band(Vector weights, double offset, double delta, bool closed = true);
    static HypothesisRegion half_space(Vector weights, double bound, Direction direction, bool closed = true);
    static HypothesisRegion interval(double lo, double hi, bool closed = true);
    static HypothesisRegion max_pairwise(double delta, std::size_t dimension, bool closed = true);
    // The whole parameter space of the given dimension.
    static HypothesisRegion whole_space(std::size_t dimension);

    const Variant& variant() const { return variant_; }
    bool closed() const { return closed_; }
    std::size_t dimension() const;

    bool contains(const Vector& theta) const;

    friend bool operator==(const HypothesisRegion& a, const HypothesisRegion& b);

private:
    HypothesisRegion(Variant v, bool closed) : variant_(std::move(v)), closed_(closed) {}
    friend HypothesisRegion complement(const HypothesisRegion& h);

    Variant variant_;
    bool closed_ = true;
};

HypothesisRegion complement(const HypothesisRegion& h);

// One end of a one-dimensional set; infinite values are unbounded ends.
struct Endpoint {
    double value;
    bool inclusive;
};

// {theta : weights . theta in [lo, hi]} with per-end inclusivity. Bands,
// half-spaces and scalar intervals all reduce to this form.
struct Slab {
    Vector weights;
    Endpoint lo;
    Endpoint hi;

    bool empty() const;
    bool universal() const;
    bool holds(double value) const;
    // Whether the closed range [a, b] lies inside / outside the slab's 1-D set.
    bool range_inside(double a, double b) const;
    bool range_disjoint(double a, double b) const;
};

std::optional<Slab> as_slab(const HypothesisRegion& h);

// The same set expressed on `base` (weights = base) when the slab's weights are
// a nonzero multiple of base; nullopt otherwise.
std::optional<Slab> restate_on(const Slab& s, const Vector& base);

enum class Subset { True, False, Undecidable };

Subset is_subset(const HypothesisRegion& h1, const HypothesisRegion& h2);

struct AbsContrast {
    Vector weights;
};
struct MaxPairwise {};
using Dissimilarity = std::variant<AbsContrast, MaxPairwise>;

/// Pg(anchor, d, delta) = {phi : d(anchor, phi) <= delta}. For MaxPairwise the
/// anchor must have equal coordinates (zero pairwise differences).
HypothesisRegion build_pragmatic(const Vector& anchor, const Dissimilarity& dissimilarity, double delta);

/// Risk-difference threshold implied by a number-needed-to-treat bound.
double nnt_to_delta(double nnt);

// Human-readable form, e.g. "|theta1 - theta2| <= 0.5".
std::string describe(const HypothesisRegion& h);

}  // namespace react
