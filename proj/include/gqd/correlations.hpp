// correlations.hpp - von Neumann entropy and global quantum discord

#pragma once

#include <Eigen/Dense>

#include <vector>

#include "gqd/model.hpp"

namespace gqd {

// Local measurement directions: one (theta, phi) pair per atom. The induced
// projectors are R|k><k|R^dagger with R = tensor product of the single-qubit
// rotations; theta and theta+pi give the same projector set, so angles are
// wrapped into [0,pi) x [0,2pi) on construction.
struct MeasurementFrame {
    Eigen::VectorXd thetas;
    Eigen::VectorXd phis;

    int n_atoms() const { return static_cast<int>(thetas.size()); }

    static MeasurementFrame zero(int n_atoms);
    static MeasurementFrame wrapped(Eigen::VectorXd thetas, Eigen::VectorXd phis);
    // Layout: N thetas followed by N phis.
    static MeasurementFrame from_flat(const Eigen::VectorXd& flat);
    Eigen::VectorXd flat() const;
};

struct OptimizerOptions {
    int multistarts = 8;
    int theta_grid = 5; // coarse-grid points over [0, pi/2]
    int phi_grid = 8;   // coarse-grid points over [0, 2pi)
    double tolerance = 1e-8;
    int max_evaluations = 2000; // per simplex refinement
    // Cap on the Cartesian stage-1 grid; per-atom resolution is reduced when
    // (theta_grid*phi_grid)^N would exceed it.
    long grid_budget = 20000;
    // Always scan frames with identical angles on every atom at full
    // resolution; cheap and effective for permutation-symmetric states.
    bool symmetric_scan = true;
};

struct GqdResult {
    double value = 0.0; // bits, clamped at 0 from below
    MeasurementFrame argmin;
    long evaluations = 0;
    bool converged = false;
};

// S(rho) = -Tr[rho log2 rho]. Throws std::runtime_error when an eigenvalue
// falls below -1e-6 (upstream state corruption).
double von_neumann_entropy(const DensityMatrix& rho);

// cos(theta) 1 + i sin(theta) cos(phi) sigma_y + i sin(theta) sin(phi) sigma_x
Eigen::Matrix2cd rotation_matrix_1q(double theta, double phi);

// Tensor product over atoms, atom 0 on the most significant bit.
Eigen::MatrixXcd rotation_matrix(const MeasurementFrame& frame);

struct MeasuredDiagonals {
    Eigen::VectorXd totals;                // <k| R^dag rho_T R |k>
    std::vector<Eigen::Vector2d> singles;  // diag of R_j^dag rho_j R_j
};

MeasuredDiagonals measured_diagonals(const DensityMatrix& rho_T, const MeasurementFrame& frame);

// Frame-independent data for repeated objective evaluations: the single-atom
// reductions and their entropies are fixed during the minimization.
class GqdProblem {
public:
    explicit GqdProblem(const DensityMatrix& rho_T);

    double objective(const MeasurementFrame& frame) const;
    // Same objective on the flat angle layout; accepts unwrapped angles.
    double objective_flat(const Eigen::VectorXd& flat) const;

    int n_atoms() const { return n_atoms_; }
    const DensityMatrix& state() const { return rho_; }
    const DensityMatrix& reduction(int j) const { return reductions_[static_cast<std::size_t>(j)]; }
    double state_entropy() const { return entropy_total_; }
    double reduction_entropy(int j) const { return entropy_single_[static_cast<std::size_t>(j)]; }

private:
    DensityMatrix rho_;
    std::vector<DensityMatrix> reductions_;
    double entropy_total_ = 0.0;
    std::vector<double> entropy_single_;
    int n_atoms_ = 0;
};

// The measured-diagonal form of the GQD objective at a fixed frame (bits).
double gqd_objective(const DensityMatrix& rho_T, const MeasurementFrame& frame);

// Relative-entropy form S(rho_T || Pi(rho_T)) - sum_j S(rho_j || Pi_j(rho_j)),
// evaluated through explicit dephasing maps and matrix logarithms; agrees
// with gqd_objective for every frame and serves as its cross-check.
double gqd_relative_entropy_form(const DensityMatrix& rho_T, const MeasurementFrame& frame);

// Two-stage minimization: deterministic coarse grid over the fundamental
// angle domain, then simplex refinement from the best distinct starts.
GqdResult minimize_gqd(const DensityMatrix& rho_T, const OptimizerOptions& options = {});

} // namespace gqd
