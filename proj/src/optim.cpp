#include "gqd/optim.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gqd {

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start, const SimplexOptions& options) {
    const int n = static_cast<int>(start.size());
    if (n < 1) {
        throw std::invalid_argument("nelder_mead: empty start vector");
    }

    std::vector<Eigen::VectorXd> xs(static_cast<std::size_t>(n) + 1, start);
    std::vector<double> fs(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i) + 1](i) += options.initial_step;
    }
    int evals = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fs[i] = f(xs[i]);
        ++evals;
    }

    std::vector<int> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    auto sort_order = [&] {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return fs[static_cast<std::size_t>(a)] < fs[static_cast<std::size_t>(b)];
        });
    };

    bool converged = false;
    while (evals < options.max_evaluations) {
        sort_order();
        const int best = order.front();
        const int worst = order.back();
        const int second_worst = order[order.size() - 2];
        if (fs[static_cast<std::size_t>(worst)] - fs[static_cast<std::size_t>(best)] <=
            options.f_tolerance) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            centroid += xs[static_cast<std::size_t>(order[i])];
        }
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd direction = centroid - xs[static_cast<std::size_t>(worst)];
        const Eigen::VectorXd reflected = centroid + direction;
        const double f_reflected = f(reflected);
        ++evals;

        if (f_reflected < fs[static_cast<std::size_t>(best)]) {
            const Eigen::VectorXd expanded = centroid + 2.0 * direction;
            const double f_expanded = f(expanded);
            ++evals;
            if (f_expanded < f_reflected) {
                xs[static_cast<std::size_t>(worst)] = expanded;
                fs[static_cast<std::size_t>(worst)] = f_expanded;
            } else {
                xs[static_cast<std::size_t>(worst)] = reflected;
                fs[static_cast<std::size_t>(worst)] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fs[static_cast<std::size_t>(second_worst)]) {
            xs[static_cast<std::size_t>(worst)] = reflected;
            fs[static_cast<std::size_t>(worst)] = f_reflected;
            continue;
        }

        Eigen::VectorXd contracted;
        if (f_reflected < fs[static_cast<std::size_t>(worst)]) {
            contracted = centroid + 0.5 * direction; // outside contraction
        } else {
            contracted = centroid - 0.5 * direction; // inside contraction
        }
        const double f_contracted = f(contracted);
        ++evals;
        if (f_contracted < std::min(f_reflected, fs[static_cast<std::size_t>(worst)])) {
            xs[static_cast<std::size_t>(worst)] = contracted;
            fs[static_cast<std::size_t>(worst)] = f_contracted;
            continue;
        }

        // shrink towards the best vertex
        for (std::size_t i = 1; i < order.size(); ++i) {
            const auto idx = static_cast<std::size_t>(order[i]);
            xs[idx] = xs[static_cast<std::size_t>(best)] +
                      0.5 * (xs[idx] - xs[static_cast<std::size_t>(best)]);
            fs[idx] = f(xs[idx]);
            ++evals;
            if (evals >= options.max_evaluations) {
                break;
            }
        }
    }

    sort_order();
    SimplexResult result;
    result.x = xs[static_cast<std::size_t>(order.front())];
    result.value = fs[static_cast<std::size_t>(order.front())];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

} // namespace gqd
