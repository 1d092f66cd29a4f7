#pragma once

#include <stdexcept>
#include <string>

#include "echelon/benefit.hpp"

namespace echelon {

/// Physical parameters of the fixed-wing horseshoe-vortex wake model.
/// Derived quantities (a, Gamma, r0, D_f) are computed on demand from the
/// primary fields so they can never go stale.
struct WakeParams {
    double weight = 36.75;       // W, N
    double half_span = 0.75;     // b, m (wingspan = 2b)
    double airspeed = 18.0;      // U, m/s
    double air_density = 1.112;  // rho, kg/m^3

    // Calibration coefficients; defaults give r0 = 0.04 b and
    // D_f = 1.05e-4 U b (sqrt(R) grows from 0.04 b to 0.1 b over 80 b).
    double r0_coeff = 0.04;
    double df_coeff = 1.05e-4;

    WakeParams() = default;
    WakeParams(double W, double b, double U, double rho) :
        weight(W), half_span(b), airspeed(U), air_density(rho) {
        validate();
    }

    void validate() const {
        if (weight <= 0 || half_span <= 0 || airspeed <= 0 || air_density <= 0 ||
            r0_coeff <= 0 || df_coeff <= 0)
            throw std::invalid_argument("WakeParams: all fields must be positive");
    }

    double a() const { return 0.25 * M_PI * half_span; }             // bound-vortex half-width
    double gamma() const { return weight / (2.0 * air_density * a() * airspeed); }
    double r0() const { return r0_coeff * half_span; }               // core radius at x = 0
    double df() const { return df_coeff * airspeed * half_span; }    // diffusion coefficient
    double core_radius_sq(double x) const {                          // R(x) = r0^2 + D_f |x| / U
        return r0() * r0() + df() * std::abs(x) / airspeed;
    }
    /// Default lateral spacing: the benefit's peak line y = -(a + b).
    double beta() const { return a() + half_span; }
    /// Longitudinal validity window of the model, in meters.
    double validity_limit() const { return 100.0 * half_span; }
};

/// y-dependent constants of the closed-form span integrals.
struct ClosedFormTerms {
    double c1, c2, c3, c4;  // squared span-edge offsets, m^2
    double c6, c7;          // coefficients of the quadratic g(R)/(8ab)

    ClosedFormTerms(double y, const WakeParams& p) {
        const double a = p.a(), b = p.half_span;
        c1 = (y + b - a) * (y + b - a);
        c2 = (y - b + a) * (y - b + a);
        c3 = (y + b + a) * (y + b + a);
        c4 = (y - b - a) * (y - b - a);
        c6 = 2.0 * (a * a + b * b - y * y);
        c7 = -3.0 * y * y * y * y + 2.0 * (a * a + b * b) * y * y +
             (a * a - b * b) * (a * a - b * b);
    }
};

/// Vertical air velocity induced at (x, y) by a wing at the origin:
/// bound-vortex part plus the two diffusing tip vortices.
double upwash(double x, double y, const WakeParams& params);

/// Span-averaged wake benefit via adaptive quadrature of the upwash over
/// [y - b, y + b]. Absolute tolerance 1e-10; throws on non-convergence.
/// This is the slow cross-validation path; production code uses the
/// closed form below.
double benefit_quadrature(double x, double y, const WakeParams& params,
                          double abs_tol = 1e-10);

/// Closed-form span integral of the upwash.
double benefit_closed_form(double x, double y, const WakeParams& params);

/// Tip-vortex log terms of the closed form, exposed for identity checks.
double ft1_term(double x, double y, const WakeParams& params);
double ft2_term(double x, double y, const WakeParams& params);
/// Bound-vortex contribution of the closed form.
double vb_integral_term(double x, double y, const WakeParams& params);

/// Analytic x-derivative of benefit_closed_form. Throws std::domain_error
/// at x = 0, where R(x) has a kink.
double benefit_deriv_x(double x, double y, const WakeParams& params);

/// The quadratic 8ab (R^2 + c6 R + c7) whose sign matches the sign of
/// d/dx [f(x,y) + f(-x,-y)] for x > 0.
double g_of_R(double R, double y, const WakeParams& params);

/// Positive root of R^2 + c6 R + c7 (largest real root), for |y| >= sqrt(a^2+b^2).
double g_positive_root(double y, const WakeParams& params);

/// Location and value of the maximum of f(., -beta) on the window.
struct BenefitPeak {
    double x;        // argmax, m
    double value;    // f at the argmax
    bool reliable;   // false when the maximum sits on the window boundary
};
BenefitPeak find_benefit_peak(const WakeParams& params, double beta,
                              double window_lo, double window_hi,
                              double grid_step = 1e-3);

/// BenefitFunction adapter over the closed-form wake benefit.
class WakeBenefit final : public BenefitFunction {
public:
    explicit WakeBenefit(WakeParams params) : params_(params) { params_.validate(); }

    double value(double x, double y) const override {
        return benefit_closed_form(x, y, params_);
    }
    double deriv_x(double x, double y) const override {
        return benefit_deriv_x(x, y, params_);
    }
    bool deriv_valid(double x) const override { return x != 0.0; }

    const WakeParams& params() const { return params_; }

private:
    WakeParams params_;
};

}  // namespace echelon
