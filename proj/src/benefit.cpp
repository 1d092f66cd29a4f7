#include "echelon/benefit.hpp"

#include <string>

namespace echelon {

namespace {

void check_index(const FormationState& state, int i) {
    if (i < 0 || i > state.n)
        throw std::out_of_range("agent index " + std::to_string(i) +
                                " outside [0, " + std::to_string(state.n) + "]");
}

void check_deriv_point(const BenefitFunction& f, double x_ij, int i, int j) {
    if (!f.deriv_valid(x_ij))
        throw std::domain_error("deriv_x undefined at x_" + std::to_string(i) +
                                std::to_string(j) + " = " + std::to_string(x_ij));
}

template <class Fn>
void for_each_neighbor(const FormationState& state, int i, Fn&& fn) {
    for (int j = i - kNeighborHops; j <= i + kNeighborHops; ++j) {
        if (j == i || j < 0 || j > state.n) continue;
        fn(j);
    }
}

}  // namespace

double per_agent_benefit(const FormationState& state, const BenefitFunction& f, int i) {
    check_index(state, i);
    double total = 0.0;
    for_each_neighbor(state, i, [&](int j) {
        total += f.value(state.x_of(i) - state.x_of(j), state.y_of(i) - state.y_of(j));
    });
    return total;
}

double total_benefit(const FormationState& state, const BenefitFunction& f) {
    double total = 0.0;
    for (int i = 0; i <= state.n; ++i) total += per_agent_benefit(state, f, i);
    return total;
}

Eigen::VectorXd ne_stationarity_residual(const FormationState& state,
                                         const BenefitFunction& f) {
    Eigen::VectorXd r(state.n);
    for (int i = 1; i <= state.n; ++i) {
        double sum = 0.0;
        for_each_neighbor(state, i, [&](int j) {
            const double x_ij = state.x_of(i) - state.x_of(j);
            check_deriv_point(f, x_ij, i, j);
            sum += f.deriv_x(x_ij, state.y_of(i) - state.y_of(j));
        });
        r[i - 1] = sum;
    }
    return r;
}

Eigen::VectorXd ce_gradient(const FormationState& state, const BenefitFunction& f) {
    Eigen::VectorXd g(state.n);
    for (int i = 1; i <= state.n; ++i) {
        double sum = 0.0;
        for_each_neighbor(state, i, [&](int j) {
            const double x_ij = state.x_of(i) - state.x_of(j);
            const double y_ij = state.y_of(i) - state.y_of(j);
            check_deriv_point(f, x_ij, i, j);
            check_deriv_point(f, -x_ij, j, i);
            sum += f.deriv_x(x_ij, y_ij) - f.deriv_x(-x_ij, -y_ij);
        });
        g[i - 1] = sum;
    }
    return g;
}

}  // namespace echelon
