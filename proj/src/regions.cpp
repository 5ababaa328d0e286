#include "react/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "react/distributions.hpp"
#include "react/error.hpp"

namespace react {
namespace {

void check_level(double level) {
    require(level > 0.0 && level < 1.0, ErrorKind::InvalidArgument, "level must lie in (0,1)");
}

}  // namespace

double sample_mean(std::span<const double> values) {
    require(!values.empty(), ErrorKind::InsufficientData, "empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_variance(std::span<const double> values) {
    require(values.size() >= 2, ErrorKind::InsufficientData, "variance needs at least two observations");
    const double mean = sample_mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return ss / static_cast<double>(values.size() - 1);
}

Matrix EllipsoidRegion::shape() const {
    Eigen::LLT<Matrix> llt(precision);
    require(llt.info() == Eigen::Success, ErrorKind::NotPositiveDefinite, "precision matrix is not positive definite");
    return llt.solve(Matrix::Identity(precision.rows(), precision.cols()));
}

double EllipsoidRegion::quadratic_form(const Vector& point) const {
    require(point.size() == center.size(), ErrorKind::DimensionMismatch, "point dimension differs from ellipsoid");
    const Vector diff = center - point;
    return diff.dot(precision * diff);
}

bool EllipsoidRegion::contains(const Vector& point) const { return quadratic_form(point) <= radius_sq; }

std::size_t GridRegion::dimension() const {
    return grid_points.empty() ? 0 : static_cast<std::size_t>(grid_points.front().size());
}

std::size_t GridRegion::member_count() const {
    return static_cast<std::size_t>(std::count(membership.begin(), membership.end(), true));
}

std::size_t region_dimension(const Region& region) {
    return std::visit(
        [](const auto& r) -> std::size_t {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, IntervalRegion>) {
                return 1;
            } else {
                return r.dimension();
            }
        },
        region);
}

double region_level(const Region& region) {
    return std::visit([](const auto& r) { return r.level; }, region);
}

void validate(const EllipsoidRegion& region) {
    const auto p = region.center.size();
    require(p > 0, ErrorKind::DimensionMismatch, "ellipsoid has no coordinates");
    require(region.precision.rows() == p && region.precision.cols() == p, ErrorKind::DimensionMismatch,
            "precision matrix does not match center dimension");
    require((region.precision - region.precision.transpose()).cwiseAbs().maxCoeff() <= 1e-10,
            ErrorKind::NotPositiveDefinite, "precision matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(region.precision, Eigen::EigenvaluesOnly);
    require(eig.eigenvalues().minCoeff() > 0.0, ErrorKind::NotPositiveDefinite,
            "precision matrix has a non-positive eigenvalue");
    require(region.radius_sq > 0.0, ErrorKind::InvalidArgument, "radius_sq must be positive");
}

WelchMoments welch_moments(std::span<const double> sample_a, std::span<const double> sample_b) {
    require(sample_a.size() >= 2 && sample_b.size() >= 2, ErrorKind::InsufficientData,
            "each sample needs at least two observations");
    const double na = static_cast<double>(sample_a.size());
    const double nb = static_cast<double>(sample_b.size());
    const double va = sample_variance(sample_a) / na;
    const double vb = sample_variance(sample_b) / nb;
    require(va + vb > 0.0, ErrorKind::DegenerateVariance, "both samples have zero variance");
    const double df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    return {sample_mean(sample_a) - sample_mean(sample_b), std::sqrt(va + vb), df};
}

IntervalRegion welch_mean_diff_interval(std::span<const double> sample_a, std::span<const double> sample_b,
                                        double level) {
    check_level(level);
    const auto m = welch_moments(sample_a, sample_b);
    const double half = dist::student_t_quantile(0.5 * (1.0 + level), m.df) * m.standard_error;
    return {m.difference - half, m.difference + half, level, m.difference};
}

EllipsoidRegion mean_vector_ellipsoid(const std::vector<std::vector<double>>& groups, double level) {
    check_level(level);
    require(!groups.empty(), ErrorKind::InsufficientData, "no groups supplied");
    const auto p = static_cast<Eigen::Index>(groups.size());
    EllipsoidRegion region;
    region.center.resize(p);
    region.precision = Matrix::Zero(p, p);
    for (Eigen::Index i = 0; i < p; ++i) {
        const auto& g = groups[static_cast<std::size_t>(i)];
        require(g.size() >= 2, ErrorKind::InsufficientData, "group " + std::to_string(i) + " has fewer than two values");
        const double var = sample_variance(g);
        require(var > 0.0, ErrorKind::DegenerateVariance, "group " + std::to_string(i) + " has zero variance");
        region.center(i) = sample_mean(g);
        region.precision(i, i) = static_cast<double>(g.size()) / var;
    }
    region.radius_sq = dist::chi_squared_quantile(level, static_cast<double>(p));
    region.level = level;
    return region;
}

IntervalRegion cohens_d_interval(std::span<const double> sample_a, std::span<const double> sample_b, double level) {
    check_level(level);
    require(!sample_a.empty() && !sample_b.empty() && sample_a.size() + sample_b.size() >= 3,
            ErrorKind::InsufficientData, "Cohen's d needs n_a + n_b >= 3");
    const double na = static_cast<double>(sample_a.size());
    const double nb = static_cast<double>(sample_b.size());
    auto sum_sq = [](std::span<const double> s) {
        const double m = sample_mean(s);
        double ss = 0.0;
        for (double v : s) ss += (v - m) * (v - m);
        return ss;
    };
    const double pooled_sd = std::sqrt((sum_sq(sample_a) + sum_sq(sample_b)) / (na + nb - 2.0));
    require(pooled_sd > 0.0, ErrorKind::DegenerateVariance, "pooled standard deviation is zero");
    const double d = (sample_mean(sample_a) - sample_mean(sample_b)) / pooled_sd;
    const double se = std::sqrt((na + nb) / (na * nb) + d * d / (2.0 * (na + nb)));
    const double half = se * dist::student_t_quantile(0.5 * (1.0 + level), na + nb - 2.0);
    return {d - half, d + half, level, d};
}

GridRegion invert_pvalue_region(const PValueFunction& pvalue, std::vector<Vector> grid, double alpha) {
    require(!grid.empty(), ErrorKind::EmptyGrid, "grid has no points");
    check_level(alpha);
    GridRegion region;
    region.membership.reserve(grid.size());
    for (const auto& theta : grid) {
        require(theta.size() == grid.front().size(), ErrorKind::DimensionMismatch, "grid points differ in dimension");
        region.membership.push_back(pvalue(theta) > alpha);
    }
    region.grid_points = std::move(grid);
    region.level = 1.0 - alpha;
    return region;
}

IntervalRegion contrast_extent(const EllipsoidRegion& region, const Vector& weights, double offset) {
    require(weights.size() == region.center.size(), ErrorKind::DimensionMismatch,
            "contrast length differs from region dimension");
    require(weights.cwiseAbs().maxCoeff() > 0.0, ErrorKind::ZeroContrast, "contrast weights are all zero");
    Eigen::LLT<Matrix> llt(region.precision);
    require(llt.info() == Eigen::Success, ErrorKind::NotPositiveDefinite, "precision matrix is not positive definite");
    const double spread = weights.dot(llt.solve(weights));
    const double mid = weights.dot(region.center) + offset;
    const double half = std::sqrt(region.radius_sq * spread);
    return {mid - half, mid + half, region.level, mid};
}

IntervalRegion contrast_extent(const IntervalRegion& region, const Vector& weights, double offset) {
    require(weights.size() == 1, ErrorKind::DimensionMismatch, "interval regions take a single contrast weight");
    const double w = weights(0);
    require(w != 0.0, ErrorKind::ZeroContrast, "contrast weight is zero");
    const double a = w * region.lower + offset;
    const double b = w * region.upper + offset;
    return {std::min(a, b), std::max(a, b), region.level, w * region.point_estimate + offset};
}

EllipsoidRegion project_ellipsoid(const EllipsoidRegion& region, std::pair<std::size_t, std::size_t> indices) {
    const auto [i, j] = indices;
    const auto p = region.dimension();
    require(i < p && j < p && i != j, ErrorKind::DimensionMismatch, "projection indices must be distinct and in range");
    const Matrix full = region.shape();
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    Matrix sub(2, 2);
    sub << full(ii, ii), full(ii, jj), full(jj, ii), full(jj, jj);
    EllipsoidRegion projected;
    projected.center = Vector(2);
    projected.center << region.center(ii), region.center(jj);
    projected.precision = sub.inverse();
    projected.radius_sq = region.radius_sq;
    projected.level = region.level;
    return projected;
}

}  // namespace react
