// dynamics.hpp - intrinsic-decoherence evolution in the Hamiltonian eigenbasis

#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "gqd/hamiltonian.hpp"
#include "gqd/model.hpp"

namespace gqd {

// Precomputed evolution data: the density matrix never needs to be
// re-diagonalized, every time point is an elementwise product in the
// eigenbasis.
struct EvolutionKernel {
    Spectrum spectrum;
    double gamma = 0.0;
    Eigen::MatrixXcd rho0_eigenbasis; // V^T rho(0) V
};

struct TimeSeries {
    std::vector<double> times; // scaled time g*t, strictly increasing
    std::vector<double> values;
    std::string quantifier_name;
};

EvolutionKernel make_kernel(const Spectrum& spectrum, double gamma, const DensityMatrix& rho0);

// rho(t)_{ij} = exp(-(gamma t / 2)(E_i - E_j)^2 - i (E_i - E_j) t) rho(0)_{ij}
// in the eigenbasis (all i, j; the diagonal factor is exactly 1), rotated
// back to the sector basis.
DensityMatrix evolve(const EvolutionKernel& kernel, double t);

// Max-norm residual of the finite-difference check that the kernel solves
// d rho/dt = -i[H,rho] - (gamma/2)[H,[H,rho]]; O(dt) by construction.
double check_master_equation(const EvolutionKernel& kernel, double dt);

// Partial trace over the field. Coherences between different excitation
// blocks vanish by Fock-state orthogonality; the surviving entries carry
// over at the same bitstring indices.
DensityMatrix trace_out_field(const DensityMatrix& rho, const SectorBasis& basis);

// Partial trace down to atom j (0-based, atom 0 = most significant bit).
DensityMatrix reduce_to_qubit(const DensityMatrix& rho_atoms, int j);

// Tr rho^2
double purity(const DensityMatrix& rho);

} // namespace gqd
