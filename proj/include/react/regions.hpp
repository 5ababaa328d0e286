#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "react/types.hpp"

namespace react {

// A one-dimensional confidence set [lower, upper] around a point estimate.
struct IntervalRegion {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    double point_estimate = 0.0;

    double width() const { return upper - lower; }
    bool contains(double value) const { return lower <= value && value <= upper; }
};

// {mu : (center - mu)' precision (center - mu) <= radius_sq}
struct EllipsoidRegion {
    Vector center;
    Matrix precision;
    double radius_sq = 0.0;
    double level = 0.95;

    std::size_t dimension() const { return static_cast<std::size_t>(center.size()); }
    // Inverse of the precision matrix, via Cholesky.
    Matrix shape() const;
    double quadratic_form(const Vector& point) const;
    bool contains(const Vector& point) const;
};

// Finite set of parameter points with a membership flag per point, as
// produced by inverting a family of point-null p-values.
struct GridRegion {
    std::vector<Vector> grid_points;
    std::vector<bool> membership;
    double level = 0.95;

    std::size_t dimension() const;
    std::size_t member_count() const;
};

using Region = std::variant<IntervalRegion, EllipsoidRegion, GridRegion>;

std::size_t region_dimension(const Region& region);
double region_level(const Region& region);

// Throws NotPositiveDefinite / DimensionMismatch when the ellipsoid is malformed.
void validate(const EllipsoidRegion& region);

/// Welch interval for mean(a) - mean(b); degrees of freedom by Welch-Satterthwaite.
IntervalRegion welch_mean_diff_interval(std::span<const double> sample_a, std::span<const double> sample_b,
                                        double level);

/// Welch-Satterthwaite degrees of freedom and standard error for mean(a) - mean(b).
struct WelchMoments {
    double difference;
    double standard_error;
    double df;
};
WelchMoments welch_moments(std::span<const double> sample_a, std::span<const double> sample_b);

/// Simultaneous chi-square ellipsoid for a vector of independent group means.
/// The precision is diag(n_i / s_i^2) and the radius is the chi-square
/// quantile with p = groups.size() degrees of freedom at probability `level`.
EllipsoidRegion mean_vector_ellipsoid(const std::vector<std::vector<double>>& groups, double level);

/// Standardized mean difference with the large-sample standard error
/// sqrt((na+nb)/(na nb) + d^2/(2(na+nb))) and a t quantile on na+nb-2 df.
IntervalRegion cohens_d_interval(std::span<const double> sample_a, std::span<const double> sample_b,
                                 double level);

using PValueFunction = std::function<double(const Vector&)>;

/// {theta in grid : pvalue(theta) > alpha}; the boundary is excluded.
GridRegion invert_pvalue_region(const PValueFunction& pvalue, std::vector<Vector> grid, double alpha);

/// Range of weights . mu + offset over the region, carrying the region's level.
IntervalRegion contrast_extent(const EllipsoidRegion& region, const Vector& weights, double offset = 0.0);
IntervalRegion contrast_extent(const IntervalRegion& region, const Vector& weights, double offset = 0.0);

/// Shadow of the ellipsoid on coordinates (i, j).
EllipsoidRegion project_ellipsoid(const EllipsoidRegion& region, std::pair<std::size_t, std::size_t> indices);

double sample_mean(std::span<const double> values);
// Unbiased (n - 1) variance.
double sample_variance(std::span<const double> values);

}  // namespace react
