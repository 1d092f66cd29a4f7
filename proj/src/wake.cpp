#include "echelon/wake.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "echelon/scalar_opt.hpp"

namespace echelon {

namespace {

// ln((sqrt(c + x^2 + R) - x) / (sqrt(c + x^2 + R) + x)) without the
// catastrophic cancellation of sqrt(x^2 + ...) - x at large |x|:
// (q - x)(q + x) = c + R, so the log reduces to ln(c+R) - 2 ln(q + |x|)
// up to the sign of x.
double tip_log(double c, double x, double R) {
    const double q = std::sqrt(c + x * x + R);
    const double l = std::log(c + R) - 2.0 * std::log(q + std::abs(x));
    return x >= 0.0 ? l : -l;
}

// d/dx of tip_log at fixed c; Rp = dR/dx.
double tip_log_deriv(double c, double x, double R, double Rp) {
    const double q = std::sqrt(c + x * x + R);
    return (x * Rp - 2.0 * (c + R)) / ((c + R) * q);
}

}  // namespace

double upwash(double x, double y, const WakeParams& params) {
    const double a = params.a();
    const double gam = params.gamma();
    const double r0sq = params.r0() * params.r0();
    const double s = x * x + r0sq;
    const double R = params.core_radius_sq(x);

    const double vb = gam / (4.0 * M_PI) * x / s *
                      ((y + a) / std::sqrt((y + a) * (y + a) + s) -
                       (y - a) / std::sqrt((y - a) * (y - a) + s));

    const double ym = y - a, yp = y + a;
    const double vt = gam / (4.0 * M_PI) *
                      (ym / (ym * ym + R) * (1.0 - x / std::sqrt(ym * ym + x * x + R)) -
                       yp / (yp * yp + R) * (1.0 - x / std::sqrt(yp * yp + x * x + R)));
    return vb + vt;
}

double benefit_quadrature(double x, double y, const WakeParams& params,
                          double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    const double b = params.half_span;
    double error = 0.0;
    const double integral = gauss_kronrod<double, 15>::integrate(
        [&](double eta) { return upwash(x, eta, params); }, y - b, y + b, 15, 1e-12,
        &error);
    if (error > abs_tol * 2.0 * b)
        throw std::runtime_error("benefit_quadrature: tolerance not met, achieved " +
                                 std::to_string(error / (2.0 * b)));
    return integral / (2.0 * b);
}

double vb_integral_term(double x, double y, const WakeParams& params) {
    const ClosedFormTerms c(y, params);
    const double r0sq = params.r0() * params.r0();
    const double s = x * x + r0sq;
    const double K = params.gamma() / (8.0 * M_PI * params.half_span);
    return K * x / s *
           (std::sqrt(c.c3 + s) + std::sqrt(c.c4 + s) - std::sqrt(c.c1 + s) -
            std::sqrt(c.c2 + s));
}

double ft1_term(double x, double y, const WakeParams& params) {
    const ClosedFormTerms c(y, params);
    const double R = params.core_radius_sq(x);
    return 0.5 * std::log((c.c1 + R) * (c.c2 + R) / ((c.c3 + R) * (c.c4 + R)));
}

double ft2_term(double x, double y, const WakeParams& params) {
    const ClosedFormTerms c(y, params);
    const double R = params.core_radius_sq(x);
    return tip_log(c.c3, x, R) + tip_log(c.c4, x, R) - tip_log(c.c1, x, R) -
           tip_log(c.c2, x, R);
}

double benefit_closed_form(double x, double y, const WakeParams& params) {
    const double K = params.gamma() / (8.0 * M_PI * params.half_span);
    return vb_integral_term(x, y, params) + K * ft1_term(x, y, params) +
           0.5 * K * ft2_term(x, y, params);
}

double benefit_deriv_x(double x, double y, const WakeParams& params) {
    if (x == 0.0)
        throw std::domain_error("benefit_deriv_x: undefined at x = 0 (kink of R)");

    const ClosedFormTerms c(y, params);
    const double K = params.gamma() / (8.0 * M_PI * params.half_span);
    const double r0sq = params.r0() * params.r0();
    const double s = x * x + r0sq;
    const double R = params.core_radius_sq(x);
    const double Rp = (x > 0 ? 1.0 : -1.0) * params.df() / params.airspeed;

    const double B = std::sqrt(c.c3 + s) + std::sqrt(c.c4 + s) -
                     std::sqrt(c.c1 + s) - std::sqrt(c.c2 + s);
    const double dB = 1.0 / std::sqrt(c.c3 + s) + 1.0 / std::sqrt(c.c4 + s) -
                      1.0 / std::sqrt(c.c1 + s) - 1.0 / std::sqrt(c.c2 + s);
    const double d_vb = K * ((s - 2.0 * x * x) / (s * s) * B + x * x / s * dB);

    const double d_ft1 = K * 0.5 * Rp *
                         (1.0 / (c.c1 + R) + 1.0 / (c.c2 + R) - 1.0 / (c.c3 + R) -
                          1.0 / (c.c4 + R));

    const double d_ft2 =
        0.5 * K *
        (tip_log_deriv(c.c3, x, R, Rp) + tip_log_deriv(c.c4, x, R, Rp) -
         tip_log_deriv(c.c1, x, R, Rp) - tip_log_deriv(c.c2, x, R, Rp));

    return d_vb + d_ft1 + d_ft2;
}

double g_of_R(double R, double y, const WakeParams& params) {
    if (R <= 0.0) throw std::invalid_argument("g_of_R: R must be positive");
    const ClosedFormTerms c(y, params);
    return 8.0 * params.a() * params.half_span * (R * R + c.c6 * R + c.c7);
}

double g_positive_root(double y, const WakeParams& params) {
    const ClosedFormTerms c(y, params);
    const double disc = c.c6 * c.c6 - 4.0 * c.c7;
    if (disc < 0.0)
        throw std::invalid_argument("g_positive_root: no real root at this y");
    return 0.5 * (-c.c6 + std::sqrt(disc));
}

BenefitPeak find_benefit_peak(const WakeParams& params, double beta,
                              double window_lo, double window_hi, double grid_step) {
    if (window_hi >= 0.0)
        throw std::invalid_argument("find_benefit_peak: window must be negative");
    auto f = [&](double x) { return benefit_closed_form(x, -beta, params); };
    const ScalarMax m = grid_golden_max(f, window_lo, window_hi, grid_step);
    return {m.x, m.value, !m.on_boundary};
}

}  // namespace echelon
