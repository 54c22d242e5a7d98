#include "gqd/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "gqd/dynamics.hpp"
#include "gqd/optim.hpp"

namespace gqd {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

double wrap_angle(double x, double period) {
    double w = std::fmod(x, period);
    if (w < 0.0) {
        w += period;
    }
    return w;
}

// sum p log2 p with 0 log 0 = 0; probabilities clamped into [0,1]
double plogp_sum(const double* p, int count) {
    double acc = 0.0;
    for (int i = 0; i < count; ++i) {
        const double v = std::clamp(p[i], 0.0, 1.0);
        if (v > 0.0) {
            acc += v * std::log2(v);
        }
    }
    return acc;
}

// lexicographic order on wrapped (value-identical) frames, for deterministic ties
bool frame_less(const MeasurementFrame& a, const MeasurementFrame& b) {
    for (int i = 0; i < a.n_atoms(); ++i) {
        if (a.thetas(i) != b.thetas(i)) return a.thetas(i) < b.thetas(i);
    }
    for (int i = 0; i < a.n_atoms(); ++i) {
        if (a.phis(i) != b.phis(i)) return a.phis(i) < b.phis(i);
    }
    return false;
}

} // namespace

MeasurementFrame MeasurementFrame::zero(int n_atoms) {
    MeasurementFrame f;
    f.thetas = Eigen::VectorXd::Zero(n_atoms);
    f.phis = Eigen::VectorXd::Zero(n_atoms);
    return f;
}

MeasurementFrame MeasurementFrame::wrapped(Eigen::VectorXd thetas, Eigen::VectorXd phis) {
    if (thetas.size() != phis.size()) {
        throw std::invalid_argument("MeasurementFrame: theta/phi count mismatch");
    }
    for (int i = 0; i < thetas.size(); ++i) {
        thetas(i) = wrap_angle(thetas(i), kPi);
        phis(i) = wrap_angle(phis(i), 2.0 * kPi);
    }
    MeasurementFrame f;
    f.thetas = std::move(thetas);
    f.phis = std::move(phis);
    return f;
}

MeasurementFrame MeasurementFrame::from_flat(const Eigen::VectorXd& flat) {
    const int n = static_cast<int>(flat.size()) / 2;
    if (flat.size() != 2 * n || n == 0) {
        throw std::invalid_argument("MeasurementFrame: flat vector must hold N thetas + N phis");
    }
    return wrapped(flat.head(n), flat.tail(n));
}

Eigen::VectorXd MeasurementFrame::flat() const {
    Eigen::VectorXd out(2 * n_atoms());
    out.head(n_atoms()) = thetas;
    out.tail(n_atoms()) = phis;
    return out;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    if (lambda.minCoeff() < -1e-6) {
        throw std::runtime_error("von_neumann_entropy: eigenvalue below -1e-6, invalid state");
    }
    return -plogp_sum(lambda.data(), static_cast<int>(lambda.size()));
}

Eigen::Matrix2cd rotation_matrix_1q(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const std::complex<double> e_plus{std::cos(phi), std::sin(phi)};
    Eigen::Matrix2cd r;
    r(0, 0) = c;
    r(0, 1) = s * e_plus;
    r(1, 0) = -s * std::conj(e_plus);
    r(1, 1) = c;
    return r;
}

Eigen::MatrixXcd rotation_matrix(const MeasurementFrame& frame) {
    // atom 0 owns the most significant bit, so it must be the outer factor
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Ones(1, 1);
    for (int j = frame.n_atoms() - 1; j >= 0; --j) {
        const Eigen::Matrix2cd rj = rotation_matrix_1q(frame.thetas(j), frame.phis(j));
        Eigen::MatrixXcd next(r.rows() * 2, r.cols() * 2);
        next.topLeftCorner(r.rows(), r.cols()) = rj(0, 0) * r;
        next.topRightCorner(r.rows(), r.cols()) = rj(0, 1) * r;
        next.bottomLeftCorner(r.rows(), r.cols()) = rj(1, 0) * r;
        next.bottomRightCorner(r.rows(), r.cols()) = rj(1, 1) * r;
        r = std::move(next);
    }
    return r;
}

GqdProblem::GqdProblem(const DensityMatrix& rho_T) : rho_(rho_T) {
    const int dim = rho_T.dim();
    int n = 0;
    while ((1 << n) < dim) {
        ++n;
    }
    if ((1 << n) != dim || n < 1) {
        throw std::invalid_argument("GqdProblem: state dimension must be 2^N");
    }
    n_atoms_ = n;
    entropy_total_ = von_neumann_entropy(rho_T);
    reductions_.reserve(static_cast<std::size_t>(n));
    entropy_single_.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        reductions_.push_back(reduce_to_qubit(rho_T, j));
        entropy_single_.push_back(von_neumann_entropy(reductions_.back()));
    }
}

double GqdProblem::objective_flat(const Eigen::VectorXd& flat) const {
    const int n = n_atoms_;
    if (flat.size() != 2 * n) {
        throw std::invalid_argument("GqdProblem: wrong angle count");
    }
    const int dim = 1 << n;

    Eigen::MatrixXcd r = Eigen::MatrixXcd::Ones(1, 1);
    double singles_plogp = 0.0;
    for (int j = n - 1; j >= 0; --j) { // atom 0 on the most significant bit
        const Eigen::Matrix2cd rj = rotation_matrix_1q(flat(j), flat(n + j));
        Eigen::MatrixXcd next(r.rows() * 2, r.cols() * 2);
        next.topLeftCorner(r.rows(), r.cols()) = rj(0, 0) * r;
        next.topRightCorner(r.rows(), r.cols()) = rj(0, 1) * r;
        next.bottomLeftCorner(r.rows(), r.cols()) = rj(1, 0) * r;
        next.bottomRightCorner(r.rows(), r.cols()) = rj(1, 1) * r;
        r = std::move(next);

        const Eigen::Matrix2cd measured =
            rj.adjoint() * reductions_[static_cast<std::size_t>(j)].entries * rj;
        const double p[2] = {measured(0, 0).real(), measured(1, 1).real()};
        singles_plogp += plogp_sum(p, 2) + entropy_single_[static_cast<std::size_t>(j)];
    }

    const Eigen::MatrixXcd x = rho_.entries * r;
    Eigen::VectorXd totals(dim);
    for (int k = 0; k < dim; ++k) {
        totals(k) = r.col(k).dot(x.col(k)).real(); // dot conjugates the left side
    }
    const double totals_plogp = plogp_sum(totals.data(), dim);

    // [sum_j sum_l p~_j log2 p~_j + sum_j S(rho_j)] - sum_k p~_T log2 p~_T - S(rho_T)
    return singles_plogp - totals_plogp - entropy_total_;
}

double GqdProblem::objective(const MeasurementFrame& frame) const {
    return objective_flat(frame.flat());
}

MeasuredDiagonals measured_diagonals(const DensityMatrix& rho_T, const MeasurementFrame& frame) {
    GqdProblem problem(rho_T);
    const int n = problem.n_atoms();
    if (frame.n_atoms() != n) {
        throw std::invalid_argument("measured_diagonals: frame size mismatch");
    }
    MeasuredDiagonals out;
    const Eigen::MatrixXcd r = rotation_matrix(frame);
    const Eigen::MatrixXcd measured = r.adjoint() * rho_T.entries * r;
    out.totals = measured.diagonal().real();
    out.singles.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Eigen::Matrix2cd rj = rotation_matrix_1q(frame.thetas(j), frame.phis(j));
        const Eigen::Matrix2cd mj = rj.adjoint() * problem.reduction(j).entries * rj;
        out.singles.emplace_back(mj(0, 0).real(), mj(1, 1).real());
    }
    return out;
}

double gqd_objective(const DensityMatrix& rho_T, const MeasurementFrame& frame) {
    return GqdProblem(rho_T).objective(frame);
}

namespace {

// Tr[rho1 ln rho1] - Tr[rho1 ln rho2] in nats, by eigendecomposition of both
// arguments; eigenvalues at or below tol are treated as outside the support.
double relative_entropy_nats(const Eigen::MatrixXcd& rho1, const Eigen::MatrixXcd& rho2) {
    const double tol = 1e-12;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s1(rho1, Eigen::EigenvaluesOnly);
    double tr_rho1_ln_rho1 = 0.0;
    for (int i = 0; i < s1.eigenvalues().size(); ++i) {
        const double lambda = s1.eigenvalues()(i);
        if (lambda > tol) {
            tr_rho1_ln_rho1 += lambda * std::log(lambda);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s2(rho2);
    double tr_rho1_ln_rho2 = 0.0;
    for (int i = 0; i < s2.eigenvalues().size(); ++i) {
        const double mu = s2.eigenvalues()(i);
        if (mu > tol) {
            const Eigen::VectorXcd u = s2.eigenvectors().col(i);
            tr_rho1_ln_rho2 += std::log(mu) * (u.dot(rho1 * u)).real();
        }
    }
    return tr_rho1_ln_rho1 - tr_rho1_ln_rho2;
}

// Pi(rho) = sum_k Pi_k rho Pi_k with Pi_k = R|k><k|R^dagger
Eigen::MatrixXcd dephase_in_frame(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& r) {
    const int dim = static_cast<int>(rho.rows());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
        const Eigen::VectorXcd rk = r.col(k);
        const std::complex<double> weight = rk.dot(rho * rk);
        out += weight * (rk * rk.adjoint());
    }
    return out;
}

} // namespace

double gqd_relative_entropy_form(const DensityMatrix& rho_T, const MeasurementFrame& frame) {
    GqdProblem problem(rho_T);
    const int n = problem.n_atoms();
    if (frame.n_atoms() != n) {
        throw std::invalid_argument("gqd_relative_entropy_form: frame size mismatch");
    }
    const Eigen::MatrixXcd r = rotation_matrix(frame);
    const Eigen::MatrixXcd dephased = dephase_in_frame(rho_T.entries, r);
    double result = relative_entropy_nats(rho_T.entries, dephased);
    for (int j = 0; j < n; ++j) {
        const Eigen::Matrix2cd rj = rotation_matrix_1q(frame.thetas(j), frame.phis(j));
        const Eigen::MatrixXcd rho_j = problem.reduction(j).entries;
        const Eigen::MatrixXcd dephased_j = dephase_in_frame(rho_j, rj);
        result -= relative_entropy_nats(rho_j, dephased_j);
    }
    return result / kLn2;
}

namespace {

struct GridAxes {
    std::vector<double> thetas;
    std::vector<double> phis;
};

GridAxes make_axes(int theta_points, int phi_points) {
    GridAxes axes;
    axes.thetas.reserve(static_cast<std::size_t>(theta_points));
    for (int i = 0; i < theta_points; ++i) {
        axes.thetas.push_back(theta_points == 1
                                  ? 0.0
                                  : 0.5 * kPi * static_cast<double>(i) /
                                        static_cast<double>(theta_points - 1));
    }
    axes.phis.reserve(static_cast<std::size_t>(phi_points));
    for (int i = 0; i < phi_points; ++i) {
        axes.phis.push_back(2.0 * kPi * static_cast<double>(i) / static_cast<double>(phi_points));
    }
    return axes;
}

} // namespace

GqdResult minimize_gqd(const DensityMatrix& rho_T, const OptimizerOptions& options) {
    if (options.multistarts < 1 || options.theta_grid < 1 || options.phi_grid < 1) {
        throw std::invalid_argument("minimize_gqd: invalid optimizer options");
    }
    const GqdProblem problem(rho_T);
    const int n = problem.n_atoms();
    long evaluations = 0;

    struct Candidate {
        double value;
        Eigen::VectorXd flat;
    };
    std::vector<Candidate> candidates;

    auto push = [&](const Eigen::VectorXd& flat) {
        candidates.push_back({problem.objective_flat(flat), flat});
        ++evaluations;
    };

    push(Eigen::VectorXd::Zero(2 * n));

    // stage 1a: Cartesian grid, per-atom resolution reduced to fit the budget
    int theta_points = options.theta_grid;
    int phi_points = options.phi_grid;
    while (theta_points > 2 || phi_points > 2) {
        const double total = std::pow(static_cast<double>(theta_points * phi_points), n);
        if (total <= static_cast<double>(options.grid_budget)) {
            break;
        }
        if (phi_points >= theta_points && phi_points > 2) {
            --phi_points;
        } else {
            --theta_points;
        }
    }
    const bool grid_feasible =
        std::pow(static_cast<double>(theta_points * phi_points), n) <=
        static_cast<double>(options.grid_budget);
    if (grid_feasible) {
        const GridAxes axes = make_axes(theta_points, phi_points);
        const int combos = theta_points * phi_points;
        std::vector<int> digits(static_cast<std::size_t>(n), 0);
        Eigen::VectorXd flat(2 * n);
        while (true) {
            for (int j = 0; j < n; ++j) {
                const int c = digits[static_cast<std::size_t>(j)];
                flat(j) = axes.thetas[static_cast<std::size_t>(c / phi_points)];
                flat(n + j) = axes.phis[static_cast<std::size_t>(c % phi_points)];
            }
            push(flat);
            int pos = n - 1;
            while (pos >= 0 && ++digits[static_cast<std::size_t>(pos)] == combos) {
                digits[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) {
                break;
            }
        }
    }

    // stage 1b: identical-angle frames at full resolution
    if (options.symmetric_scan) {
        const GridAxes axes = make_axes(options.theta_grid, options.phi_grid);
        Eigen::VectorXd flat(2 * n);
        for (const double theta : axes.thetas) {
            for (const double phi : axes.phis) {
                flat.head(n).setConstant(theta);
                flat.tail(n).setConstant(phi);
                push(flat);
            }
        }
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

    // pick the best distinct starting frames
    std::vector<Candidate> starts;
    for (const auto& c : candidates) {
        if (static_cast<int>(starts.size()) >= options.multistarts) {
            break;
        }
        const bool duplicate = std::any_of(starts.begin(), starts.end(), [&](const Candidate& s) {
            return s.flat == c.flat;
        });
        if (!duplicate) {
            starts.push_back(c);
        }
    }

    // stage 2: simplex refinement
    SimplexOptions simplex;
    simplex.initial_step = 0.2;
    simplex.f_tolerance = options.tolerance;
    simplex.max_evaluations = options.max_evaluations;

    struct Refined {
        double value;
        MeasurementFrame frame;
    };
    std::vector<Refined> refined;
    refined.reserve(starts.size());
    for (const auto& s : starts) {
        const SimplexResult r = nelder_mead(
            [&](const Eigen::VectorXd& x) { return problem.objective_flat(x); }, s.flat, simplex);
        evaluations += r.evaluations;
        refined.push_back({r.value, MeasurementFrame::from_flat(r.x)});
    }

    std::stable_sort(refined.begin(), refined.end(), [](const Refined& a, const Refined& b) {
        if (a.value != b.value) return a.value < b.value;
        return frame_less(a.frame, b.frame);
    });

    GqdResult result;
    result.value = std::max(0.0, refined.front().value);
    result.argmin = refined.front().frame;
    result.evaluations = evaluations;
    result.converged = refined.size() < 2 ||
                       std::abs(refined[0].value - refined[1].value) <= 1e-6;
    return result;
}

} // namespace gqd
