#include "gqd/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gqd {

void SystemConfig::validate() const {
    if (n_atoms < 1 || n_atoms > 12) {
        throw std::invalid_argument("SystemConfig: n_atoms must be in [1,12], got " +
                                    std::to_string(n_atoms));
    }
    if (n_photons < 0) {
        throw std::invalid_argument("SystemConfig: n_photons must be >= 0");
    }
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw std::invalid_argument("SystemConfig: coupling must be > 0");
    }
    if (atom_freq < 0.0 || field_freq < 0.0) {
        throw std::invalid_argument("SystemConfig: frequencies must be >= 0");
    }
    if (decoherence < 0.0 || !std::isfinite(decoherence)) {
        throw std::invalid_argument("SystemConfig: decoherence must be >= 0");
    }
}

void InitialStateParams::validate() const {
    if (mixing_prob < 0.0 || mixing_prob > 1.0) {
        throw std::invalid_argument("InitialStateParams: mixing_prob must be in [0,1]");
    }
    const double pi = 3.14159265358979323846;
    if (superposition_angle < 0.0 || superposition_angle > pi) {
        throw std::invalid_argument("InitialStateParams: superposition_angle must be in [0,pi]");
    }
}

StateCheck check_state(const DensityMatrix& rho) {
    StateCheck out;
    const auto& m = rho.entries;
    out.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    out.trace_error = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    return out;
}

void require_valid(const DensityMatrix& rho) {
    const StateCheck c = check_state(rho);
    if (!c.ok()) {
        std::ostringstream msg;
        msg << "density matrix invariant violated: hermiticity=" << c.hermiticity_error
            << " trace_error=" << c.trace_error << " min_eigenvalue=" << c.min_eigenvalue;
        throw std::runtime_error(msg.str());
    }
}

SectorBasis build_basis(const SystemConfig& config) {
    config.validate();
    SectorBasis basis;
    basis.n_atoms = config.n_atoms;
    basis.n_photons = config.n_photons;
    const int dim = 1 << config.n_atoms;
    basis.states.reserve(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        const auto bits = static_cast<std::uint32_t>(i);
        const int excited = std::popcount(bits);
        basis.states.push_back({bits, config.n_photons + config.n_atoms - excited});
    }
    return basis;
}

DensityMatrix initial_state(const SectorBasis& basis, const InitialStateParams& params) {
    params.validate();
    const int dim = basis.dim();
    const int last = dim - 1;
    const double p = params.mixing_prob;
    const double c = std::cos(params.superposition_angle);
    const double s = std::sin(params.superposition_angle);

    DensityMatrix rho;
    rho.label = StateLabel::FullSector;
    rho.entries = Eigen::MatrixXcd::Zero(dim, dim);
    rho.entries(0, 0) = (1.0 - p) * c * c + p;
    rho.entries(last, last) += (1.0 - p) * s * s;
    rho.entries(0, last) += (1.0 - p) * c * s;
    rho.entries(last, 0) += (1.0 - p) * c * s;
    return rho;
}

} // namespace gqd
