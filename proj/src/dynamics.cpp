#include "gqd/dynamics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gqd {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

EvolutionKernel make_kernel(const Spectrum& spectrum, double gamma, const DensityMatrix& rho0) {
    if (gamma < 0.0) {
        throw std::invalid_argument("make_kernel: gamma must be >= 0");
    }
    if (rho0.entries.rows() != spectrum.eigenvectors.rows()) {
        throw std::invalid_argument("make_kernel: dimension mismatch");
    }
    EvolutionKernel kernel;
    kernel.spectrum = spectrum;
    kernel.gamma = gamma;
    const auto& v = spectrum.eigenvectors;
    kernel.rho0_eigenbasis = v.transpose() * rho0.entries * v;
    return kernel;
}

DensityMatrix evolve(const EvolutionKernel& kernel, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("evolve: t must be >= 0");
    }
    const auto& e = kernel.spectrum.eigenvalues;
    const int dim = static_cast<int>(e.size());
    Eigen::MatrixXcd rho_t(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double gap = e(i) - e(j);
            const double damping = 0.5 * kernel.gamma * t * gap * gap;
            rho_t(i, j) = kernel.rho0_eigenbasis(i, j) * std::exp(-damping - kI * gap * t);
        }
    }
    const auto& v = kernel.spectrum.eigenvectors;
    DensityMatrix out;
    out.label = StateLabel::FullSector;
    out.entries = v * rho_t * v.transpose();
    return out;
}

double check_master_equation(const EvolutionKernel& kernel, double dt) {
    if (!(dt > 0.0) || dt > 1e-4) {
        throw std::invalid_argument("check_master_equation: dt must be in (0, 1e-4]");
    }
    const auto& v = kernel.spectrum.eigenvectors;
    const Eigen::MatrixXd h =
        v * kernel.spectrum.eigenvalues.asDiagonal() * v.transpose();
    const Eigen::MatrixXcd rho0 = v * kernel.rho0_eigenbasis * v.transpose();
    const Eigen::MatrixXcd rho_dt = evolve(kernel, dt).entries;

    const Eigen::MatrixXcd comm = h * rho0 - rho0 * h;
    const Eigen::MatrixXcd double_comm = h * comm - comm * h;
    const Eigen::MatrixXcd rhs = -kI * comm - 0.5 * kernel.gamma * double_comm;
    const Eigen::MatrixXcd lhs = (rho_dt - rho0) / dt;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

DensityMatrix trace_out_field(const DensityMatrix& rho, const SectorBasis& basis) {
    const int dim = basis.dim();
    if (rho.entries.rows() != dim) {
        throw std::invalid_argument("trace_out_field: dimension mismatch");
    }
    DensityMatrix out;
    out.label = StateLabel::AtomsOnly;
    out.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (basis.photons(i) == basis.photons(j)) {
                out.entries(i, j) = rho.entries(i, j);
            }
        }
    }
    return out;
}

DensityMatrix reduce_to_qubit(const DensityMatrix& rho_atoms, int j) {
    const int dim = rho_atoms.dim();
    int n_atoms = 0;
    while ((1 << n_atoms) < dim) {
        ++n_atoms;
    }
    if ((1 << n_atoms) != dim) {
        throw std::invalid_argument("reduce_to_qubit: dimension is not a power of two");
    }
    if (j < 0 || j >= n_atoms) {
        throw std::out_of_range("reduce_to_qubit: atom index out of range");
    }
    const int bit = n_atoms - 1 - j; // atom 0 owns the most significant bit
    const int mask = 1 << bit;

    DensityMatrix out;
    out.label = StateLabel::SingleQubit;
    out.entries = Eigen::MatrixXcd::Zero(2, 2);
    for (int rest = 0; rest < dim; ++rest) {
        if (rest & mask) {
            continue;
        }
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                out.entries(a, b) += rho_atoms.entries(rest | (a * mask), rest | (b * mask));
            }
        }
    }
    return out;
}

double purity(const DensityMatrix& rho) {
    // Tr rho^2 equals the squared Frobenius norm for Hermitian rho
    return rho.entries.squaredNorm();
}

} // namespace gqd
