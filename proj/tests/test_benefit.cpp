#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "echelon/benefit.hpp"
#include "echelon/wake.hpp"

using namespace echelon;

namespace {

FormationState random_state(int n, double beta, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> gap(-14.0, -0.5);
    Eigen::VectorXd X(n);
    double pos = 0.0;
    for (int i = 0; i < n; ++i) {
        pos += gap(rng);
        X[i] = pos;
    }
    return FormationState(n, X, beta);
}

double fd(const std::function<double(double)>& f, double x, double h = 1e-5) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

TEST_CASE("per-agent benefit sums over the 1- and 2-hop neighborhood") {
    const auto f = SeparableTestBenefit::quadratic();
    Eigen::VectorXd X(4);
    X << -2.0, -5.0, -6.5, -9.0;
    const FormationState s(4, X, 1.0);

    // agent 2 sees agents 0, 1, 3, 4 with g(x) = x^2, h = 1
    double expected = 0.0;
    for (int j : {0, 1, 3, 4}) {
        const double d = s.x_of(2) - s.x_of(j);
        expected += d * d;
    }
    CHECK(per_agent_benefit(s, f, 2) == doctest::Approx(expected).epsilon(1e-14));

    // the leader only has followers 1 and 2 in range
    const double lead = s.x_of(0) - s.x_of(1), lead2 = s.x_of(0) - s.x_of(2);
    CHECK(per_agent_benefit(s, f, 0) ==
          doctest::Approx(lead * lead + lead2 * lead2).epsilon(1e-14));
}

TEST_CASE("group benefit is the sum of the per-agent benefits") {
    const WakeBenefit f(WakeParams(36.75, 0.75, 18.0, 1.112));
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const FormationState s = random_state(4, f.params().beta(), rng);
        double total = 0.0;
        for (int i = 0; i <= 4; ++i) total += per_agent_benefit(s, f, i);
        CHECK(total_benefit(s, f) == doctest::Approx(total).epsilon(1e-13));
    }
}

TEST_CASE("stationarity residual matches finite differences of own benefit") {
    const WakeBenefit f(WakeParams(36.75, 0.75, 18.0, 1.112));
    std::mt19937_64 rng(5);
    for (int n : {2, 5}) {
        for (int rep = 0; rep < 100; ++rep) {
            FormationState s = random_state(n, f.params().beta(), rng);
            const Eigen::VectorXd r = ne_stationarity_residual(s, f);
            for (int i = 1; i <= n; ++i) {
                auto own = [&](double x) {
                    FormationState t = s;
                    t.X[i - 1] = x;
                    return per_agent_benefit(t, f, i);
                };
                const double d = fd(own, s.X[i - 1]);
                CHECK(r[i - 1] ==
                      doctest::Approx(d).epsilon(1e-6).scale(1e-4));
            }
        }
    }
}

TEST_CASE("cooperative gradient matches finite differences of J") {
    const WakeBenefit f(WakeParams(36.75, 0.75, 18.0, 1.112));
    std::mt19937_64 rng(9);
    for (int n : {2, 5}) {
        for (int rep = 0; rep < 100; ++rep) {
            FormationState s = random_state(n, f.params().beta(), rng);
            const Eigen::VectorXd g = ce_gradient(s, f);
            for (int i = 1; i <= n; ++i) {
                auto J = [&](double x) {
                    FormationState t = s;
                    t.X[i - 1] = x;
                    return total_benefit(t, f);
                };
                const double d = fd(J, s.X[i - 1]);
                CHECK(g[i - 1] ==
                      doctest::Approx(d).epsilon(1e-6).scale(1e-4));
            }
        }
    }
}

TEST_CASE("separable antisymmetric family zeroes the cooperative gradient pairs") {
    // g odd-derivative-free case: g(x) = x^2 gives f_x(x,y) + f_x(-x,-y) = 0,
    // so each gradient component collapses to 0 at symmetric configurations
    const auto f = SeparableTestBenefit::quadratic_with_lateral();
    for (double x : {0.5, 2.0, 13.0})
        for (double y : {0.7, 1.34, 4.0})
            CHECK(f.deriv_x(x, y) + f.deriv_x(-x, -y) ==
                  doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("formation state validation") {
    Eigen::VectorXd X(2);
    X << -1.0, -2.0;
    CHECK_THROWS_AS(FormationState(0, X, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FormationState(3, X, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(FormationState(2, X, -1.0), std::invalid_argument);

    const FormationState s(2, X, 1.5);
    CHECK(s.x_of(0) == 0.0);
    CHECK(s.y_of(2) == doctest::Approx(-3.0));
    const auto f = SeparableTestBenefit::quadratic();
    CHECK_THROWS_AS(per_agent_benefit(s, f, 3), std::out_of_range);
}

TEST_CASE("derivative evaluation at a kink is rejected") {
    const WakeBenefit f(WakeParams(36.75, 0.75, 18.0, 1.112));
    Eigen::VectorXd X(2);
    X << -2.0, -2.0;  // followers vertically aligned: x_21 = 0
    const FormationState s(2, X, f.params().beta());
    CHECK_THROWS_AS(ne_stationarity_residual(s, f), std::domain_error);
}
