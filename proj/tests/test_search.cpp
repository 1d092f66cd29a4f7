#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "echelon/search.hpp"
#include "echelon/wake.hpp"

using namespace echelon;

namespace {

WakeParams goose() { return WakeParams(36.75, 0.75, 18.0, 1.112); }

// C^1 separable benefit with an engineered interior joint stationarity
// zero: g'(x) = sin(pi x / 2) makes both n = 2 residuals vanish at
// x_10 = x_21 = -4/3.
SeparableTestBenefit sine_fixture() {
    return SeparableTestBenefit(
        [](double x) { return -2.0 / M_PI * std::cos(M_PI * x / 2.0); },
        [](double x) { return std::sin(M_PI * x / 2.0); },
        [](double) { return 1.0; });
}

}  // namespace

TEST_CASE("best response maximizes the unilateral benefit") {
    // single follower behind the leader: the optimum is the bump center
    const auto f = SeparableTestBenefit::gaussian(-3.0, 0.8);
    Eigen::VectorXd X(1);
    X << -1.0;
    const FormationState s(1, X, 1.0);
    const ScalarMax br = best_response(f, s, 1, -10.0, -0.1);
    CHECK(br.x == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK_FALSE(br.on_boundary);
    CHECK_THROWS_AS(best_response(f, s, 2, -10.0, -0.1), std::out_of_range);
}

TEST_CASE("best response against the wake benefit finds the curve peak") {
    const WakeBenefit f(goose());
    Eigen::VectorXd X(1);
    X << -5.0;
    const FormationState s(1, X, f.params().beta());
    const ScalarMax br = best_response(f, s, 1, -15.0, -0.01, 0.01);
    CHECK(br.x == doctest::Approx(-2.587742).epsilon(1e-3));
}

TEST_CASE("best-response iteration converges on a synthetic single-bump game") {
    const auto f = SeparableTestBenefit::gaussian(-3.0, 30.0);
    Eigen::VectorXd init(1);
    init << -2.0;
    SearchOptions opts;
    opts.window_halfwidth = 20.0;
    const SearchResult r =
        find_ne(f, 1, 1.0, init, IntervalSpec(0.5, 14.0), IterationMode::cyclic, opts);
    CHECK(r.converged);
    CHECK(r.residual <= 1e-6);
    CHECK(r.neighbor_gaps[0] == doctest::Approx(-3.0).epsilon(1e-4));
    CHECK(r.all_gaps_in_P());
}

TEST_CASE("converged results re-verify through the residual") {
    const auto f = sine_fixture();
    Eigen::VectorXd init(2);
    init << -4.0 / 3.0, -8.0 / 3.0;  // start exactly at the engineered zero
    SearchOptions opts;
    opts.window_halfwidth = 2.0;  // covers one period peak ahead of each agent
    opts.grid_step = 0.01;
    const SearchResult r = find_ne(f, 2, 1.0, init, IntervalSpec(0.5, 3.5),
                                   IterationMode::cyclic, opts);
    CHECK(r.converged);
    CHECK(r.residual <= 1e-6);
    FormationState s(2, r.X_final, 1.0);
    CHECK(ne_stationarity_residual(s, f).cwiseAbs().maxCoeff() ==
          doctest::Approx(r.residual).epsilon(1e-12));
    CHECK(r.all_gaps_in_P());
}

TEST_CASE("wake best-response dynamics never settle with gaps in P") {
    const WakeBenefit f(goose());
    const IntervalSpec P(0.5, 14.0);
    for (auto mode : {IterationMode::cyclic, IterationMode::simultaneous}) {
        Eigen::VectorXd init(2);
        init << -3.0, -6.0;
        const SearchResult r = find_ne(f, 2, f.params().beta(), init, P, mode);
        const bool in_P_equilibrium = r.converged && r.all_gaps_in_P();
        CHECK_FALSE(in_P_equilibrium);
        CHECK_FALSE(r.diagnostic.empty());
    }
}

TEST_CASE("cooperative ascent on an unbounded benefit trips the drift guard") {
    const auto f = SeparableTestBenefit::quadratic();
    Eigen::VectorXd init(2);
    init << -2.0, -4.0;
    SearchOptions opts;
    opts.max_iters = 100000;
    const SearchResult r = find_ce(f, 2, 1.0, init, IntervalSpec(0.5, 3.5), opts);
    CHECK_FALSE(r.converged);
    CHECK(r.diagnostic.find("drift") != std::string::npos);
}

TEST_CASE("cooperative ascent converges on a concave synthetic benefit") {
    const auto f = SeparableTestBenefit::gaussian(-3.0, 2.0);
    Eigen::VectorXd init(2);
    init << -2.8, -5.9;
    SearchOptions opts;
    opts.max_iters = 5000;
    const SearchResult r = find_ce(f, 2, 1.0, init, IntervalSpec(0.5, 14.0), opts);
    CHECK(r.converged);
    CHECK(r.residual <= opts.gradient_tol);
    CHECK(r.second_order_ok);
    FormationState s(2, r.X_final, 1.0);
    CHECK(ce_gradient(s, f).cwiseAbs().maxCoeff() <= opts.gradient_tol);
}

TEST_CASE("NE residual scan recovers an engineered interior zero") {
    const auto f = sine_fixture();
    const IntervalSpec P(0.5, 3.5);
    const double step = 1e-3;
    const ScanMinimum m = scan_ne_residual(f, 1.0, P, step);
    CHECK(m.min_value <= 5e-3);  // within one grid step of an exact zero

    // restricted to a window around the known zero, the scan pins it down
    const ScanMinimum local =
        scan_ne_residual(f, 1.0, IntervalSpec(4.0 / 3.0 - 0.05, 4.0 / 3.0 + 0.05), step);
    CHECK(local.min_value <= 5e-3);
    CHECK(local.at_gap_front == doctest::Approx(-4.0 / 3.0).epsilon(2.0 * step));
    CHECK(local.at_gap_back == doctest::Approx(-4.0 / 3.0).epsilon(2.0 * step));
}

TEST_CASE("NE residual scan is strictly positive for the goose case") {
    const WakeBenefit f(goose());
    const double beta = f.params().beta();

    const ScanMinimum narrow = scan_ne_residual(f, beta, IntervalSpec(0.5, 3.5), 1e-3);
    CHECK(narrow.min_value > 1e-4);

    const ScanMinimum wide = scan_ne_residual(f, beta, IntervalSpec(0.5, 14.0), 1e-3);
    CHECK(wide.min_value > 1e-4);
    CHECK(wide.min_value == doctest::Approx(7.5037e-4).epsilon(1e-3));

    // refinement never raises the minimum beyond local slack
    const ScanMinimum coarse = scan_ne_residual(f, beta, IntervalSpec(0.5, 14.0), 1e-2);
    CHECK(wide.min_value <= coarse.min_value + 1e-6);
}

TEST_CASE("CE gradient scan matches a direct gradient evaluation") {
    const WakeBenefit f(goose());
    const double beta = f.params().beta();
    const IntervalSpec P(0.5, 14.0);

    const ScanMinimum m = scan_ce_gradient_n(f, beta, P, 1e-3, 3);
    CHECK(m.min_value > 1e-4);
    CHECK(m.min_value == doctest::Approx(3.247e-3).epsilon(1e-3));

    // rebuild the reported state and evaluate dJ/dx_n independently
    Eigen::VectorXd X(3);
    X << -5.0, -5.0 + m.at_gap_front, -5.0 + m.at_gap_front + m.at_gap_back;
    FormationState s(3, X, beta);
    CHECK(std::abs(ce_gradient(s, f)[2]) == doctest::Approx(m.min_value).epsilon(1e-9));

    CHECK_THROWS_AS(scan_ce_gradient_n(f, beta, P, 1e-3, 1), std::invalid_argument);
}

TEST_CASE("CE gradient scan agrees with a hand computation") {
    // g(x) = x^2, h(y) = 1/(1+y^2), beta = 1: the last component is
    // u (2 + 4 h2) + w 4 h2 with h2 = 1/5, minimized in magnitude at the
    // corner u = w = -1/2 where it equals -1.8
    const auto f = SeparableTestBenefit::quadratic_with_lateral();
    const ScanMinimum m = scan_ce_gradient_n(f, 1.0, IntervalSpec(0.5, 3.5), 1e-3, 3);
    CHECK(m.min_value == doctest::Approx(1.8).epsilon(1e-9));
    CHECK(m.at_gap_front == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(m.at_gap_back == doctest::Approx(-0.5).epsilon(1e-9));
}
