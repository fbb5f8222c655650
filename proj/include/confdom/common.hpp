#pragma once

#include <Eigen/Dense>

namespace confdom {

using Vec4 = Eigen::Vector4d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Default absolute tolerance. Approximate comparisons scale it by
/// (1 + squared Euclidean norm of the participating values), since the
/// quadratic forms mix squares of coordinates.
inline constexpr double kDefaultTol = 1e-9;

}  // namespace confdom
