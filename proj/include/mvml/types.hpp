#pragma once

#include <Eigen/Dense>

namespace mvml {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr const char* kToolVersion = "mvml 0.1.0";

}  // namespace mvml
