#pragma once

#include <Eigen/Dense>

namespace pareto_qn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace pareto_qn
