#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gqd/correlations.hpp"
#include "gqd/dynamics.hpp"
#include "oracles.hpp"

using namespace gqd;

namespace {

constexpr double kPi = 3.14159265358979323846;

DensityMatrix atoms_state(const Eigen::MatrixXcd& entries) {
    DensityMatrix rho;
    rho.label = StateLabel::AtomsOnly;
    rho.entries = entries;
    return rho;
}

DensityMatrix bell_state() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = v(3) = 1.0 / std::sqrt(2.0);
    return atoms_state(v * v.adjoint());
}

DensityMatrix ghz_state(int n_atoms) {
    const int dim = 1 << n_atoms;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = v(dim - 1) = 1.0 / std::sqrt(2.0);
    return atoms_state(v * v.adjoint());
}

MeasurementFrame frame_of(std::initializer_list<double> thetas,
                          std::initializer_list<double> phis) {
    Eigen::VectorXd t(static_cast<Eigen::Index>(thetas.size()));
    Eigen::VectorXd p(static_cast<Eigen::Index>(phis.size()));
    int i = 0;
    for (const double v : thetas) t(i++) = v;
    i = 0;
    for (const double v : phis) p(i++) = v;
    return MeasurementFrame::wrapped(std::move(t), std::move(p));
}

} // namespace

TEST_CASE("entropy of reference states") {
    DensityMatrix rho = atoms_state(Eigen::MatrixXcd::Zero(4, 4));
    rho.entries(0, 0) = 1.0;
    CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0));

    rho.entries = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
    CHECK(von_neumann_entropy(rho) == doctest::Approx(1.0));

    rho.entries = Eigen::MatrixXcd::Zero(3, 3);
    rho.entries(0, 0) = 0.5;
    rho.entries(1, 1) = 0.25;
    rho.entries(2, 2) = 0.25;
    CHECK(von_neumann_entropy(rho) == doctest::Approx(1.5));
}

TEST_CASE("entropy rejects corrupted states") {
    DensityMatrix rho = atoms_state(Eigen::MatrixXcd::Zero(2, 2));
    rho.entries(0, 0) = 1.5;
    rho.entries(1, 1) = -0.5;
    CHECK_THROWS_AS(von_neumann_entropy(rho), std::runtime_error);
}

TEST_CASE("rotation matrices") {
    SUBCASE("zero angles give the identity") {
        const Eigen::MatrixXcd r = rotation_matrix(MeasurementFrame::zero(3));
        CHECK((r - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("theta=pi/2, phi=0 gives i sigma_y") {
        const Eigen::Matrix2cd r = rotation_matrix_1q(kPi / 2.0, 0.0);
        // i sigma_y = [[0,1],[-1,0]]
        CHECK(std::abs(r(0, 0)) <= 1e-15);
        CHECK(std::abs(r(0, 1) - 1.0) <= 1e-15);
        CHECK(std::abs(r(1, 0) + 1.0) <= 1e-15);
        CHECK(std::abs(r(1, 1)) <= 1e-15);
    }
    SUBCASE("two-atom frame factorizes") {
        const MeasurementFrame f = frame_of({kPi / 4.0, 0.0}, {kPi / 2.0, 0.0});
        const Eigen::MatrixXcd r = rotation_matrix(f);
        // [cos(pi/4) 1 + i sin(pi/4) sigma_x] tensor identity
        const std::complex<double> c{std::cos(kPi / 4.0), 0.0};
        const std::complex<double> is{0.0, std::sin(kPi / 4.0)};
        CHECK(std::abs(r(0, 0) - c) <= 1e-15);
        CHECK(std::abs(r(0, 2) - is) <= 1e-15);
        CHECK(std::abs(r(2, 0) - is) <= 1e-15);
        CHECK(std::abs(r(1, 3) - is) <= 1e-15);
        CHECK(std::abs(r(0, 1)) <= 1e-15);
    }
    SUBCASE("unitarity for random frames") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
        for (int trial = 0; trial < 25; ++trial) {
            Eigen::VectorXd thetas(3);
            Eigen::VectorXd phis(3);
            for (int j = 0; j < 3; ++j) {
                thetas(j) = uniform(rng);
                phis(j) = uniform(rng);
            }
            const Eigen::MatrixXcd r =
                rotation_matrix(MeasurementFrame::wrapped(thetas, phis));
            const Eigen::MatrixXcd gram = r.adjoint() * r - Eigen::MatrixXcd::Identity(8, 8);
            CHECK(gram.cwiseAbs().maxCoeff() <= 1e-12);
        }
    }
}

TEST_CASE("measured diagonals") {
    SUBCASE("identity frame returns the plain diagonals") {
        std::mt19937 rng(5);
        const DensityMatrix rho = atoms_state(oracles::random_density_matrix(4, rng));
        const MeasuredDiagonals md = measured_diagonals(rho, MeasurementFrame::zero(2));
        for (int k = 0; k < 4; ++k) {
            CHECK(md.totals(k) == doctest::Approx(rho.entries(k, k).real()));
        }
        const DensityMatrix q0 = reduce_to_qubit(rho, 0);
        CHECK(md.singles[0](0) == doctest::Approx(q0.entries(0, 0).real()));
        CHECK(md.singles[0](1) == doctest::Approx(q0.entries(1, 1).real()));
    }
    SUBCASE("maximally mixed state is frame independent") {
        const DensityMatrix rho = atoms_state(Eigen::MatrixXcd::Identity(4, 4) * 0.25);
        const MeasuredDiagonals md =
            measured_diagonals(rho, frame_of({0.3, 1.2}, {2.2, 0.4}));
        for (int k = 0; k < 4; ++k) {
            CHECK(md.totals(k) == doctest::Approx(0.25));
        }
    }
    SUBCASE("Bell state at the zero frame") {
        const MeasuredDiagonals md = measured_diagonals(bell_state(), MeasurementFrame::zero(2));
        CHECK(md.totals(0) == doctest::Approx(0.5));
        CHECK(md.totals(1) == doctest::Approx(0.0));
        CHECK(md.totals(2) == doctest::Approx(0.0));
        CHECK(md.totals(3) == doctest::Approx(0.5));
    }
    SUBCASE("outputs are probability vectors") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const DensityMatrix rho = atoms_state(oracles::random_density_matrix(8, rng));
            Eigen::VectorXd thetas(3);
            Eigen::VectorXd phis(3);
            for (int j = 0; j < 3; ++j) {
                thetas(j) = 0.1 + 0.4 * j + 0.01 * trial;
                phis(j) = 0.2 + 1.1 * j;
            }
            const MeasuredDiagonals md =
                measured_diagonals(rho, MeasurementFrame::wrapped(thetas, phis));
            CHECK(md.totals.minCoeff() >= -1e-10);
            CHECK(md.totals.sum() == doctest::Approx(1.0).epsilon(1e-9));
            for (const auto& s : md.singles) {
                CHECK(s.minCoeff() >= -1e-10);
                CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("objective values at fixed frames") {
    SUBCASE("computational-diagonal state at the zero frame") {
        std::mt19937 rng(3);
        const DensityMatrix rho = atoms_state(oracles::random_diagonal_state(4, rng));
        CHECK(gqd_objective(rho, MeasurementFrame::zero(2)) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("Bell state at the zero frame") {
        CHECK(gqd_objective(bell_state(), MeasurementFrame::zero(2)) == doctest::Approx(1.0));
    }
    SUBCASE("maximally mixed state vanishes for any frame") {
        const DensityMatrix rho = atoms_state(Eigen::MatrixXcd::Identity(8, 8) / 8.0);
        CHECK(gqd_objective(rho, frame_of({0.4, 1.0, 0.2}, {0.0, 2.0, 4.0})) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("objective is invariant under theta -> theta + pi") {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const DensityMatrix rho = atoms_state(oracles::random_density_matrix(4, rng));
        const GqdProblem problem(rho);
        Eigen::VectorXd flat(4);
        flat << 0.3 + 0.1 * trial, 1.1, 0.7, 2.9;
        Eigen::VectorXd shifted = flat;
        shifted(0) += kPi;
        CHECK(std::abs(problem.objective_flat(flat) - problem.objective_flat(shifted)) <= 1e-10);
    }
}

TEST_CASE("relative-entropy form matches the measured-diagonal form") {
    SUBCASE("diagonal state, zero frame") {
        std::mt19937 rng(9);
        const DensityMatrix rho = atoms_state(oracles::random_diagonal_state(4, rng));
        CHECK(gqd_relative_entropy_form(rho, MeasurementFrame::zero(2)) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("Bell state, zero frame") {
        CHECK(gqd_relative_entropy_form(bell_state(), MeasurementFrame::zero(2)) ==
              doctest::Approx(1.0));
    }
    SUBCASE("random states and frames agree to 1e-9") {
        std::mt19937 rng(17);
        std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
        for (int trial = 0; trial < 100; ++trial) {
            const DensityMatrix rho = atoms_state(oracles::random_density_matrix(4, rng));
            Eigen::VectorXd thetas(2);
            Eigen::VectorXd phis(2);
            for (int j = 0; j < 2; ++j) {
                thetas(j) = uniform(rng);
                phis(j) = uniform(rng);
            }
            const MeasurementFrame frame = MeasurementFrame::wrapped(thetas, phis);
            const double a = gqd_objective(rho, frame);
            const double b = gqd_relative_entropy_form(rho, frame);
            CAPTURE(trial);
            CHECK(std::abs(a - b) <= 1e-9);
        }
    }
}

TEST_CASE("minimization lands on the known values") {
    SUBCASE("computational-diagonal states have zero discord") {
        std::mt19937 rng(13);
        for (int trial = 0; trial < 10; ++trial) {
            const DensityMatrix rho = atoms_state(oracles::random_diagonal_state(4, rng));
            const GqdResult r = minimize_gqd(rho);
            CHECK(r.value >= 0.0);
            CHECK(r.value <= 1e-9);
        }
    }
    SUBCASE("Bell state") {
        const GqdResult r = minimize_gqd(bell_state());
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.converged);
    }
    SUBCASE("three-atom GHZ state") {
        const GqdResult r = minimize_gqd(ghz_state(3));
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("pure product states have zero discord") {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
        // (cos 0.4 |g> + sin 0.4 |e>) tensor (cos 1.1 |g> + i sin 1.1 |e>)
        const std::complex<double> i{0.0, 1.0};
        Eigen::Vector2cd q1(std::cos(0.4), std::sin(0.4));
        Eigen::Vector2cd q2(std::cos(1.1), i * std::sin(1.1));
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                v(2 * a + b) = q1(a) * q2(b);
            }
        }
        const GqdResult r = minimize_gqd(atoms_state(v * v.adjoint()));
        CHECK(r.value <= 1e-9);
    }
}

TEST_CASE("minimization is deterministic") {
    std::mt19937 rng(29);
    const DensityMatrix rho = atoms_state(oracles::random_density_matrix(4, rng));
    const GqdResult a = minimize_gqd(rho);
    const GqdResult b = minimize_gqd(rho);
    CHECK(a.value == b.value);
    CHECK(a.evaluations == b.evaluations);
    CHECK((a.argmin.flat() - b.argmin.flat()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("minimum is unchanged by local rotations from the measurement family") {
    std::mt19937 rng(31);
    const DensityMatrix rho = atoms_state(oracles::random_density_matrix(4, rng));
    const double base = minimize_gqd(rho).value;
    const Eigen::Matrix2cd u = rotation_matrix_1q(0.6, 1.9);
    Eigen::Matrix4cd big = Eigen::Matrix4cd::Identity();
    big.block<2, 2>(0, 0) = u(0, 0) * Eigen::Matrix2cd::Identity();
    big.block<2, 2>(0, 2) = u(0, 1) * Eigen::Matrix2cd::Identity();
    big.block<2, 2>(2, 0) = u(1, 0) * Eigen::Matrix2cd::Identity();
    big.block<2, 2>(2, 2) = u(1, 1) * Eigen::Matrix2cd::Identity();
    const DensityMatrix rotated = atoms_state(big * rho.entries * big.adjoint());
    CHECK(minimize_gqd(rotated).value == doctest::Approx(base).epsilon(2e-6));
}

TEST_CASE("non-negativity over random states") {
    std::mt19937 rng(37);
    OptimizerOptions light;
    light.multistarts = 2;
    light.grid_budget = 600;
    light.max_evaluations = 400;
    for (const int n_atoms : {2, 3}) {
        for (int trial = 0; trial < 200; ++trial) {
            const DensityMatrix rho =
                atoms_state(oracles::random_density_matrix(1 << n_atoms, rng));
            const GqdResult r = minimize_gqd(rho, light);
            CAPTURE(n_atoms);
            CAPTURE(trial);
            CHECK(r.value >= 0.0);
            CHECK(std::isfinite(r.value));
        }
    }
}

TEST_CASE("multistart result tracks a dense-grid reference") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXcd m = oracles::random_density_matrix(4, rng);
        const DensityMatrix rho = atoms_state(m);
        const double ours = minimize_gqd(rho).value;
        const double reference = oracles::dense_grid_gqd_min(Eigen::Matrix4cd(m), 16);
        CAPTURE(trial);
        CHECK(ours <= reference + 1e-3);
    }
}
