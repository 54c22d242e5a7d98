#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gqd/dynamics.hpp"
#include "gqd/model.hpp"

using namespace gqd;

namespace {
constexpr double kPi = 3.14159265358979323846;

SystemConfig config_for(int n_atoms, int n_photons) {
    SystemConfig c;
    c.n_atoms = n_atoms;
    c.n_photons = n_photons;
    return c;
}
} // namespace

TEST_CASE("basis for two atoms, n=0") {
    const SectorBasis basis = build_basis(config_for(2, 0));
    REQUIRE(basis.dim() == 4);
    // (gg,2), (ge,1), (eg,1), (ee,0) in canonical binary order, MSB = atom 1
    CHECK(basis.states[0].bits == 0b00);
    CHECK(basis.states[0].photons == 2);
    CHECK(basis.states[1].bits == 0b01);
    CHECK(basis.states[1].photons == 1);
    CHECK(basis.states[2].bits == 0b10);
    CHECK(basis.states[2].photons == 1);
    CHECK(basis.states[3].bits == 0b11);
    CHECK(basis.states[3].photons == 0);
}

TEST_CASE("basis for a single atom, n=5") {
    const SectorBasis basis = build_basis(config_for(1, 5));
    REQUIRE(basis.dim() == 2);
    CHECK(basis.states[0].photons == 6);
    CHECK(basis.states[1].photons == 5);
}

TEST_CASE("basis photon counts follow n + N - k") {
    const SectorBasis basis = build_basis(config_for(3, 0));
    REQUIRE(basis.dim() == 8);
    CHECK(basis.states[0b011].photons == 1); // two excited atoms
    for (int i = 0; i < basis.dim(); ++i) {
        CHECK(basis.photons(i) + basis.excitations(i) == 3);
    }
}

TEST_CASE("basis size and distinctness across the supported range") {
    for (int n_atoms = 1; n_atoms <= 12; ++n_atoms) {
        const SectorBasis basis = build_basis(config_for(n_atoms, 1));
        CHECK(basis.dim() == (1 << n_atoms));
        for (int i = 1; i < basis.dim(); ++i) {
            CHECK(basis.states[i].bits != basis.states[i - 1].bits);
        }
    }
}

TEST_CASE("config bounds are enforced") {
    CHECK_THROWS_AS(build_basis(config_for(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(config_for(13, 0)), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(config_for(2, -1)), std::invalid_argument);
    SystemConfig bad = config_for(2, 0);
    bad.coupling = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = config_for(2, 0);
    bad.decoherence = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("initial state special points") {
    const SectorBasis basis = build_basis(config_for(2, 0));

    SUBCASE("p=0, alpha=0 is the ground projector") {
        const DensityMatrix rho = initial_state(basis, {0.0, 0.0});
        CHECK(rho.entries(0, 0).real() == doctest::Approx(1.0));
        CHECK(rho.entries.cwiseAbs().sum() == doctest::Approx(1.0));
    }
    SUBCASE("p=1 collapses to the ground projector for any alpha") {
        const DensityMatrix rho = initial_state(basis, {1.0, 1.1});
        CHECK(rho.entries(0, 0).real() == doctest::Approx(1.0));
        CHECK(rho.entries.cwiseAbs().sum() == doctest::Approx(1.0));
    }
    SUBCASE("p=0, alpha=pi/4 puts 1/2 on the four corners") {
        const DensityMatrix rho = initial_state(basis, {0.0, kPi / 4.0});
        CHECK(rho.entries(0, 0).real() == doctest::Approx(0.5));
        CHECK(rho.entries(0, 3).real() == doctest::Approx(0.5));
        CHECK(rho.entries(3, 0).real() == doctest::Approx(0.5));
        CHECK(rho.entries(3, 3).real() == doctest::Approx(0.5));
        CHECK(rho.entries(1, 1).real() == doctest::Approx(0.0));
    }
    SUBCASE("p=1/2, alpha=pi/2 is an even end-state mixture") {
        const DensityMatrix rho = initial_state(basis, {0.5, kPi / 2.0});
        CHECK(rho.entries(0, 0).real() == doctest::Approx(0.5));
        CHECK(rho.entries(3, 3).real() == doctest::Approx(0.5));
        CHECK(std::abs(rho.entries(0, 3)) == doctest::Approx(0.0));
    }
}

TEST_CASE("initial state rejects out-of-range parameters") {
    const SectorBasis basis = build_basis(config_for(2, 0));
    CHECK_THROWS_AS(initial_state(basis, {-0.1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(initial_state(basis, {0.0, 3.3}), std::invalid_argument);
}

TEST_CASE("initial state invariants and purity on a parameter grid") {
    const SectorBasis basis = build_basis(config_for(3, 2));
    for (const double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (int k = 0; k <= 8; ++k) {
            const double alpha = kPi * static_cast<double>(k) / 8.0;
            const DensityMatrix rho = initial_state(basis, {p, alpha});
            const StateCheck check = check_state(rho);
            CAPTURE(p);
            CAPTURE(alpha);
            CHECK(check.ok());
            const double c = std::cos(alpha);
            const double expected =
                (1.0 - p) * (1.0 - p) + p * p + 2.0 * p * (1.0 - p) * c * c;
            CHECK(purity(rho) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("state check flags broken matrices") {
    DensityMatrix bad;
    bad.entries = Eigen::MatrixXcd::Zero(2, 2);
    bad.entries(0, 0) = 0.7; // trace != 1
    CHECK_FALSE(check_state(bad).ok());
    CHECK_THROWS_AS(require_valid(bad), std::runtime_error);

    bad.entries(1, 1) = 0.3;
    bad.entries(0, 1) = std::complex<double>(0.0, 0.4); // not Hermitian
    bad.entries(1, 0) = std::complex<double>(0.0, 0.4);
    CHECK_FALSE(check_state(bad).ok());

    bad.entries(0, 1) = 0.7; // Hermitian but indefinite
    bad.entries(1, 0) = 0.7;
    CHECK(check_state(bad).min_eigenvalue < -1e-9);
}
