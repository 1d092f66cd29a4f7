#pragma once

#include <Eigen/Core>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace echelon {

/// Interaction radius of the benefit decomposition: each agent receives a
/// benefit from its 1- and 2-hop neighbors only. Fixed, not a parameter,
/// so the condition checkers and the gradients always agree.
inline constexpr int kNeighborHops = 2;

/// Inter-agent benefit f(x, y): value and analytic x-derivative.
/// Implementations must be laterally symmetric, f(x, y) = f(x, -y).
/// deriv_valid declares where deriv_x may be evaluated (the wake model
/// excludes x = 0, where the derivative has a kink).
class BenefitFunction {
public:
    virtual ~BenefitFunction() = default;
    virtual double value(double x, double y) const = 0;
    virtual double deriv_x(double x, double y) const = 0;
    virtual bool deriv_valid(double /*x*/) const { return true; }
};

/// Separable test family f(x, y) = g(x) h(y) with analytic derivative
/// g'(x) h(y). h must be even in y to keep lateral symmetry.
class SeparableTestBenefit final : public BenefitFunction {
public:
    using Fn = std::function<double(double)>;

    SeparableTestBenefit(Fn g, Fn dg, Fn h) :
        g_(std::move(g)), dg_(std::move(dg)), h_(std::move(h)) {}

    double value(double x, double y) const override { return g_(x) * h_(y); }
    double deriv_x(double x, double y) const override { return dg_(x) * h_(y); }

    /// g(x) = x^2, h = 1.
    static SeparableTestBenefit quadratic() {
        return {[](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                [](double) { return 1.0; }};
    }
    /// Gaussian bump in x centered at `center`, h = 1. An even g requires
    /// center = 0; off-center bumps are used for best-response fixtures.
    static SeparableTestBenefit gaussian(double center, double sigma = 1.0) {
        auto g = [center, sigma](double x) {
            double t = (x - center) / sigma;
            return std::exp(-0.5 * t * t);
        };
        auto dg = [center, sigma](double x) {
            double t = (x - center) / sigma;
            return -t / sigma * std::exp(-0.5 * t * t);
        };
        return {g, dg, [](double) { return 1.0; }};
    }
    /// g(x) = x^2 with an even, strictly positive lateral factor.
    static SeparableTestBenefit quadratic_with_lateral() {
        return {[](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                [](double y) { return 1.0 / (1.0 + y * y); }};
    }
    static SeparableTestBenefit constant(double c) {
        return {[c](double) { return c; }, [](double) { return 0.0; },
                [](double) { return 1.0; }};
    }

private:
    Fn g_, dg_, h_;
};

/// Echelon formation: leader pinned at the origin, follower i at
/// (X[i-1], -i * beta) for i = 1..n.
struct FormationState {
    int n = 1;                 // follower count, >= 1
    Eigen::VectorXd X;         // follower longitudinal positions, m
    double beta = 1.0;         // lateral neighbor spacing, m, > 0

    FormationState(int n_, Eigen::VectorXd X_, double beta_) :
        n(n_), X(std::move(X_)), beta(beta_) {
        if (n < 1) throw std::invalid_argument("FormationState: n must be >= 1");
        if (beta <= 0) throw std::invalid_argument("FormationState: beta must be > 0");
        if (X.size() != n) throw std::invalid_argument("FormationState: X size != n");
    }

    double x_of(int i) const { return i == 0 ? 0.0 : X[i - 1]; }
    double y_of(int i) const { return -static_cast<double>(i) * beta; }
};

/// f^(i): sum of f over the 1- and 2-hop neighbors of agent i (0 = leader).
double per_agent_benefit(const FormationState& state, const BenefitFunction& f, int i);

/// Group benefit J: sum of f^(i) over all agents including the leader.
double total_benefit(const FormationState& state, const BenefitFunction& f);

/// First-order condition of the selfish game: component i is
/// d f^(i) / d x_i. A Nash equilibrium zeroes every component.
Eigen::VectorXd ne_stationarity_residual(const FormationState& state,
                                         const BenefitFunction& f);

/// Gradient of the group benefit J with respect to the follower positions.
Eigen::VectorXd ce_gradient(const FormationState& state, const BenefitFunction& f);

}  // namespace echelon
