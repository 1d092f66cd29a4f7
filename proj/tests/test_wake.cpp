#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "echelon/scalar_opt.hpp"
#include "echelon/wake.hpp"

using namespace echelon;

namespace {

WakeParams goose() { return WakeParams(36.75, 0.75, 18.0, 1.112); }

// Independent transcription of the upwash model, kept deliberately naive.
double upwash_naive(double x, double y, const WakeParams& p) {
    const double G = p.gamma(), a = p.a(), r0sq = p.r0() * p.r0();
    const double R = r0sq + p.df() * std::abs(x) / p.airspeed;
    const double vb = G / (4.0 * M_PI) * x / (x * x + r0sq) *
                      ((y + a) / std::sqrt((y + a) * (y + a) + x * x + r0sq) -
                       (y - a) / std::sqrt((y - a) * (y - a) + x * x + r0sq));
    auto tip = [&](double d) {
        return G / (4.0 * M_PI) * d / (d * d + R) *
               (1.0 - x / std::sqrt(d * d + x * x + R));
    };
    return vb + tip(y - a) - tip(y + a);
}

// 5-point Richardson extrapolated central difference.
double fd_deriv(double x, double y, const WakeParams& p, double h = 1e-4) {
    auto f = [&](double xx) { return benefit_closed_form(xx, y, p); };
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

TEST_CASE("derived parameters for the goose case") {
    const WakeParams p = goose();
    CHECK(p.a() == doctest::Approx(0.5890486225480862).epsilon(1e-14));
    CHECK(p.gamma() == doctest::Approx(1.5584716649685995).epsilon(1e-14));
    CHECK(p.r0() == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(p.df() == doctest::Approx(0.0014175).epsilon(1e-14));
    CHECK(p.beta() == doctest::Approx(1.3390486225480862).epsilon(1e-14));
}

TEST_CASE("core radius grows from 0.04b to 0.1b over 80b") {
    const WakeParams p = goose();
    const double b = p.half_span;
    CHECK(std::sqrt(p.core_radius_sq(0.0)) == doctest::Approx(0.04 * b).epsilon(1e-12));
    CHECK(std::sqrt(p.core_radius_sq(80.0 * b)) ==
          doctest::Approx(0.1 * b).epsilon(1e-12));
    CHECK(p.core_radius_sq(-5.0) == p.core_radius_sq(5.0));
}

TEST_CASE("upwash matches an independent transcription") {
    const WakeParams p = goose();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> xd(-20.0, 20.0), yd(-5.0, 5.0);
    for (int k = 0; k < 500; ++k) {
        const double x = xd(rng), y = yd(rng);
        CHECK(upwash(x, y, p) == doctest::Approx(upwash_naive(x, y, p)).epsilon(1e-12));
    }
}

TEST_CASE("closed form equals quadrature on the reference grid") {
    const WakeParams p = goose();
    const double b = p.half_span, beta = p.beta();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double x = -30.0 * b + 60.0 * b * i / 199.0;
        if (std::abs(x) < 0.01 * b) continue;
        for (int j = 0; j < 50; ++j) {
            const double y = -4.0 * beta + 8.0 * beta * j / 49.0;
            const double cf = benefit_closed_form(x, y, p);
            const double q = benefit_quadrature(x, y, p);
            const double rel = std::abs(cf - q) / std::max(std::abs(q), 1e-12);
            worst = std::max(worst, rel);
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("lateral symmetry of the benefit") {
    const WakeParams p = goose();
    for (double x : {-10.0, -2.6, -0.3, 0.4, 7.0})
        for (double y : {0.3, 1.34, 2.7, 5.0})
            CHECK(benefit_closed_form(x, y, p) ==
                  doctest::Approx(benefit_closed_form(x, -y, p)).epsilon(1e-12));
}

TEST_CASE("appendix identities at scale Gamma/(8 pi b)") {
    const WakeParams p = goose();
    const double scale = p.gamma() / (8.0 * M_PI * p.half_span);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> xd(0.05, 25.0), yd(-5.0, 5.0);
    for (int k = 0; k < 1000; ++k) {
        const double x = xd(rng), y = yd(rng);

        // f_t2 is odd under (x, y) -> (-x, -y)
        CHECK(std::abs(ft2_term(x, y, p) + ft2_term(-x, -y, p)) <= 1e-10 * scale);

        // the bound-vortex integrals cancel pairwise
        CHECK(std::abs(vb_integral_term(x, y, p) + vb_integral_term(-x, -y, p)) <=
              1e-10 * scale);

        // pair sum reduces to the single logarithm expression
        const ClosedFormTerms t(y, p);
        const double R = p.core_radius_sq(x);
        const double expected =
            scale * std::log((t.c1 + R) * (t.c2 + R) / ((t.c3 + R) * (t.c4 + R)));
        CHECK(std::abs(benefit_closed_form(x, y, p) +
                       benefit_closed_form(-x, -y, p) - expected) <= 1e-10 * scale);
    }
}

TEST_CASE("analytic derivative against Richardson finite differences") {
    const WakeParams p = goose();
    const double beta = p.beta();
    for (double x : {-19.94, -12.0, -3.5, -2.59, -0.7, 0.4, 2.0, 15.0}) {
        for (double y : {-2.0 * beta, -beta, -0.8, 0.9, beta}) {
            const double fd = fd_deriv(x, y, p);
            CHECK(benefit_deriv_x(x, y, p) ==
                  doctest::Approx(fd).epsilon(1e-7).scale(1e-4));
        }
    }
    CHECK_THROWS_AS(benefit_deriv_x(0.0, -beta, p), std::domain_error);
}

TEST_CASE("benefit peak location on the front line") {
    const WakeParams p = goose();
    const BenefitPeak peak = find_benefit_peak(p, p.beta(), -15.0, -1e-3);
    CHECK(peak.reliable);
    CHECK(peak.x == doctest::Approx(-2.587742).epsilon(5e-4));
    CHECK(peak.value == doctest::Approx(benefit_quadrature(peak.x, -p.beta(), p))
                            .epsilon(1e-8));
}

TEST_CASE("frozen derivative extrema on P = [-3.5, -0.5]") {
    const WakeParams p = goose();
    const WakeBenefit f(p);
    const double beta = p.beta();
    auto max_on = [&](double lo, double hi) {
        return grid_golden_max([&](double x) { return f.deriv_x(x, -beta); }, lo, hi,
                               1e-4)
            .value;
    };
    CHECK(max_on(-3.5, -0.5) == doctest::Approx(2.7907073934e-3).epsilon(1e-6));
    CHECK(max_on(0.5, 3.5) == doctest::Approx(-2.74095976982e-3).epsilon(1e-6));
}

TEST_CASE("g(R) sign function and its positive root") {
    const WakeParams p = goose();
    const double a = p.a(), b = p.half_span;

    const double y_star = std::sqrt(a * a + b * b);
    const double root = g_positive_root(y_star, p);
    CHECK(std::abs(root - 2.0 * a * b) <= 1e-9 * 2.0 * a * b);
    CHECK(g_of_R(root, y_star, p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));

    // sign of g(R(x)) matches the sign of d/dx [f(x,y) + f(-x,-y)] for x > 0
    auto pair_sum = [&](double x, double y) {
        return benefit_closed_form(x, y, p) + benefit_closed_form(-x, -y, p);
    };
    for (double y : {1.0, y_star + 0.05, 1.5, 2.5}) {
        for (double x : {0.5, 2.0, 10.0}) {
            const double h = 1e-6;
            const double slope = (pair_sum(x + h, y) - pair_sum(x - h, y)) / (2.0 * h);
            const double g = g_of_R(p.core_radius_sq(x), y, p);
            if (std::abs(slope) > 1e-12) CHECK(slope * g > 0.0);
        }
    }
}

TEST_CASE("quadrature rejects an unreachable tolerance gracefully") {
    const WakeParams p = goose();
    CHECK(benefit_quadrature(-2.6, -p.beta(), p, 1e-6) ==
          doctest::Approx(benefit_quadrature(-2.6, -p.beta(), p)).epsilon(1e-6));
    CHECK_THROWS_AS(benefit_quadrature(-2.6, -p.beta(), p, 1e-16), std::runtime_error);
}
