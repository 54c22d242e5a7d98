// model.hpp - system configuration, excitation-sector basis, density matrices

#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cstdint>
#include <vector>

namespace gqd {

// Physical parameters of N identical two-level atoms coupled to one field mode.
// Energies are in units of the coupling g; time is reported as the scaled
// product g*t throughout.
struct SystemConfig {
    int n_atoms = 2;
    int n_photons = 0;        // Fock label of the excitation sector
    double coupling = 1.0;    // g > 0
    double atom_freq = 1.0;   // omega_0
    double field_freq = 1.0;  // omega
    double decoherence = 0.0; // gamma >= 0

    double detuning() const { return atom_freq - field_freq; }
    bool on_resonance() const { return detuning() == 0.0; }
    int dim() const { return 1 << n_atoms; }

    // Throws std::invalid_argument when any bound is violated.
    void validate() const;
};

// Initial-state knobs: rho(0) = (1-p)|psi><psi| + p|b0><b0| with
// |psi> = cos(alpha)|b0> + sin(alpha)|b_last>.
struct InitialStateParams {
    double mixing_prob = 0.0;         // p in [0,1]
    double superposition_angle = 0.0; // alpha in [0,pi]

    void validate() const;
};

// One atom-field product state: atomic bitstring (bit set = excited,
// most significant bit = atom 1) plus the Fock label that conserves the
// total excitation number.
struct BasisState {
    std::uint32_t bits = 0;
    int photons = 0;
};

// The 2^N excitation-conserving basis states, in canonical binary order of
// the atomic bitstring. Index 0 is all-ground with n+N photons, index
// 2^N-1 is all-excited with n photons.
struct SectorBasis {
    int n_atoms = 0;
    int n_photons = 0;
    std::vector<BasisState> states;

    int dim() const { return static_cast<int>(states.size()); }
    int excitations(int index) const {
        return std::popcount(states[static_cast<std::size_t>(index)].bits);
    }
    int photons(int index) const { return states[static_cast<std::size_t>(index)].photons; }
};

enum class StateLabel { FullSector, AtomsOnly, SingleQubit };

struct DensityMatrix {
    StateLabel label = StateLabel::FullSector;
    Eigen::MatrixXcd entries;

    int dim() const { return static_cast<int>(entries.rows()); }
};

// Diagnostics for the density-matrix invariants. Tolerances: hermiticity and
// trace within 1e-10, smallest eigenvalue above -1e-9.
struct StateCheck {
    double hermiticity_error = 0.0; // max |rho - rho^dagger|
    double trace_error = 0.0;       // |Tr rho - 1|
    double min_eigenvalue = 0.0;

    bool ok() const {
        return hermiticity_error <= 1e-10 && trace_error <= 1e-10 && min_eigenvalue >= -1e-9;
    }
};

StateCheck check_state(const DensityMatrix& rho);

// Throws std::runtime_error with diagnostics when check_state fails.
void require_valid(const DensityMatrix& rho);

// Enumerates the sector basis for the configured N and n.
SectorBasis build_basis(const SystemConfig& config);

// Builds rho(0) in the sector basis. The two atomic branches are embedded as
// the extreme basis states: all-ground carries n+N photons, all-excited
// carries n photons.
DensityMatrix initial_state(const SectorBasis& basis, const InitialStateParams& params);

} // namespace gqd
