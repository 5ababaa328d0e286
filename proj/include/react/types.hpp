#pragma once

#include <Eigen/Dense>

namespace react {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Boundary comparisons between regions and closed/open hypothesis sets.
inline constexpr double kBoundaryTolerance = 1e-12;

}  // namespace react
