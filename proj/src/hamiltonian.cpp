#include "gqd/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gqd {

HamiltonianMatrix build_hamiltonian(const SectorBasis& basis, const SystemConfig& config) {
    config.validate();
    if (basis.n_atoms != config.n_atoms || basis.n_photons != config.n_photons) {
        throw std::invalid_argument("build_hamiltonian: basis does not match config");
    }
    const int dim = basis.dim();
    const int n = config.n_photons;
    const double g = config.coupling;
    const double delta = config.detuning();

    HamiltonianMatrix h;
    h.detuning_included = delta != 0.0;
    h.entries = Eigen::MatrixXd::Zero(dim, dim);

    for (int i = 0; i < dim; ++i) {
        const int k_i = basis.excitations(i);
        if (delta != 0.0) {
            h.entries(i, i) = (k_i - 0.5 * config.n_atoms) * delta;
        }
        // couplings to states one excitation above i
        for (int bit = 0; bit < config.n_atoms; ++bit) {
            const std::uint32_t mask = 1u << bit;
            if (basis.states[static_cast<std::size_t>(i)].bits & mask) {
                continue;
            }
            const int j = i | static_cast<int>(mask);
            const double value = g * std::sqrt(static_cast<double>(n + k_i + 1));
            h.entries(i, j) = value;
            h.entries(j, i) = value;
        }
    }
    return h;
}

Spectrum eigendecompose(const HamiltonianMatrix& h) {
    if (h.entries.rows() != h.entries.cols() || h.entries.rows() == 0) {
        throw std::invalid_argument("eigendecompose: matrix must be square and non-empty");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries);
    if (solver.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigendecompose: solver failed to converge (dim=" << h.entries.rows()
            << ", max|H|=" << h.entries.cwiseAbs().maxCoeff()
            << ", frobenius=" << h.entries.norm() << ")";
        throw std::runtime_error(msg.str());
    }
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

// Printed lists, one unordered pair per published a_{ij} = a_{ji} = sqrt(arg+m).
const std::vector<AppendixEntry> kAppendixN3 = {
    {1, 2, 1}, {1, 3, 1}, {1, 5, 1},
    {2, 4, 2}, {3, 4, 2}, {2, 6, 2}, {3, 7, 2}, {5, 6, 2}, {5, 7, 2},
    {4, 8, 3}, {6, 8, 3}, {7, 8, 3},
};

const std::vector<AppendixEntry> kAppendixN4 = {
    {1, 2, 1}, {1, 3, 1}, {1, 5, 1}, {1, 9, 1},
    {2, 4, 2}, {3, 4, 2}, {2, 6, 2}, {3, 7, 2}, {5, 6, 2}, {5, 7, 2},
    {2, 10, 2}, {3, 11, 2}, {5, 13, 2}, {9, 10, 2}, {9, 11, 2},
    {4, 8, 3}, {6, 8, 3}, {7, 8, 3}, {4, 12, 3}, {6, 14, 3}, {7, 15, 3},
    {10, 12, 3}, {11, 12, 3}, {10, 14, 3}, {11, 15, 3}, {13, 14, 3}, {13, 15, 3},
    {8, 16, 4}, {12, 16, 4}, {12, 14, 4}, {12, 15, 4},
};

const std::vector<AppendixEntry> kAppendixN5 = {
    {1, 2, 1}, {1, 3, 1}, {1, 5, 1}, {1, 9, 1}, {1, 17, 1},
    {2, 4, 2}, {3, 4, 2}, {2, 6, 2}, {3, 7, 2}, {5, 6, 2}, {5, 7, 2},
    {2, 10, 2}, {3, 11, 2}, {5, 13, 2}, {9, 10, 2}, {9, 11, 2},
    {2, 18, 2}, {3, 19, 2}, {5, 21, 2}, {9, 25, 2}, {17, 25, 2},
    {17, 18, 2}, {17, 19, 2}, {17, 21, 2},
    {4, 8, 3}, {6, 8, 3}, {7, 8, 3}, {4, 12, 3}, {6, 14, 3}, {7, 15, 3},
    {10, 12, 3}, {11, 12, 3}, {10, 14, 3}, {11, 15, 3}, {13, 14, 3}, {13, 15, 3},
    {4, 20, 3}, {6, 22, 3}, {7, 23, 3}, {10, 26, 3}, {11, 27, 3}, {13, 29, 3},
    {18, 26, 3}, {19, 27, 3}, {12, 29, 3}, {18, 20, 3}, {19, 20, 3},
    {18, 22, 3}, {19, 23, 3}, {21, 22, 3}, {21, 23, 3},
    {25, 26, 3}, {25, 27, 3}, {25, 29, 3},
    {8, 16, 4}, {12, 16, 4}, {12, 14, 4}, {12, 15, 4},
    {8, 24, 4}, {12, 28, 4}, {14, 30, 4}, {15, 31, 4},
    {20, 28, 4}, {22, 30, 4}, {23, 31, 4}, {20, 24, 4}, {22, 24, 4}, {23, 24, 4},
    {26, 28, 4}, {27, 28, 4}, {26, 30, 4}, {27, 31, 4}, {29, 30, 4}, {29, 31, 4},
    {16, 32, 5}, {24, 32, 5}, {28, 32, 5}, {30, 32, 5}, {31, 32, 5},
};

// Transcription errors found by diffing the printed lists against the
// general builder. The {12,14}/{12,15} entries pair bitstrings two flips
// apart; they were evidently meant to be {14,16}/{15,16}. The {12,29} entry
// for N=5 connects equal excitation levels; {21,29} is the coupling the list
// omits. a_{9,13} is simply missing from both the N=4 and N=5 lists.
const std::vector<Erratum> kErrataN3 = {};

const std::vector<Erratum> kErrataN4 = {
    {12, 14, MismatchKind::ListedDisagrees},
    {12, 15, MismatchKind::ListedDisagrees},
    {9, 13, MismatchKind::MissingFromList},
    {14, 16, MismatchKind::MissingFromList},
    {15, 16, MismatchKind::MissingFromList},
};

const std::vector<Erratum> kErrataN5 = {
    {12, 29, MismatchKind::ListedDisagrees},
    {12, 14, MismatchKind::ListedDisagrees},
    {12, 15, MismatchKind::ListedDisagrees},
    {9, 13, MismatchKind::MissingFromList},
    {21, 29, MismatchKind::MissingFromList},
    {14, 16, MismatchKind::MissingFromList},
    {15, 16, MismatchKind::MissingFromList},
};

void require_supported_n(int n_atoms) {
    if (n_atoms < 3 || n_atoms > 5) {
        throw std::invalid_argument("appendix fixtures exist only for N in {3,4,5}");
    }
}

} // namespace

const std::vector<AppendixEntry>& appendix_entries(int n_atoms) {
    require_supported_n(n_atoms);
    switch (n_atoms) {
    case 3: return kAppendixN3;
    case 4: return kAppendixN4;
    default: return kAppendixN5;
    }
}

const std::vector<Erratum>& documented_errata(int n_atoms) {
    require_supported_n(n_atoms);
    switch (n_atoms) {
    case 3: return kErrataN3;
    case 4: return kErrataN4;
    default: return kErrataN5;
    }
}

bool ValidationReport::within_documented_errata() const {
    const auto& errata = documented_errata(n_atoms);
    for (const auto& mm : mismatches) {
        const bool known = std::any_of(errata.begin(), errata.end(), [&](const Erratum& e) {
            return e.row == mm.row && e.col == mm.col && e.kind == mm.kind;
        });
        if (!known) {
            return false;
        }
    }
    return true;
}

ValidationReport validate_against_appendix(const HamiltonianMatrix& h, int n_atoms, int m) {
    require_supported_n(n_atoms);
    if (m < 0) {
        throw std::invalid_argument("validate_against_appendix: m must be >= 0");
    }
    const int dim = 1 << n_atoms;
    if (h.dim() != dim) {
        throw std::invalid_argument("validate_against_appendix: dimension mismatch");
    }

    Eigen::MatrixXd printed = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& e : appendix_entries(n_atoms)) {
        const double v = std::sqrt(static_cast<double>(e.sqrt_arg + m));
        printed(e.row - 1, e.col - 1) = v;
        printed(e.col - 1, e.row - 1) = v;
    }

    ValidationReport report;
    report.n_atoms = n_atoms;
    report.m = m;
    const double tol = 1e-12;
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double printed_v = printed(i, j);
            const double builder_v = h.entries(i, j);
            if (std::abs(printed_v - builder_v) <= tol) {
                continue;
            }
            AppendixMismatch mm;
            mm.row = i + 1;
            mm.col = j + 1;
            mm.appendix_value = printed_v;
            mm.builder_value = builder_v;
            mm.kind = printed_v != 0.0 ? MismatchKind::ListedDisagrees
                                       : MismatchKind::MissingFromList;
            report.mismatches.push_back(mm);
        }
    }
    return report;
}

} // namespace gqd
