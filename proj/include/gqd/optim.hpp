// optim.hpp - derivative-free simplex minimizer

#pragma once

#include <Eigen/Dense>

#include <functional>

namespace gqd {

struct SimplexOptions {
    double initial_step = 0.2;
    double f_tolerance = 1e-8; // stop when the simplex value spread drops below
    int max_evaluations = 2000;
};

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false; // false when the evaluation budget ran out first
};

// Nelder-Mead with standard reflection/expansion/contraction/shrink
// coefficients. Fully deterministic for a fixed starting point.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start, const SimplexOptions& options = {});

} // namespace gqd
