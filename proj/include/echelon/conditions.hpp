#pragma once

#include <limits>
#include <string>
#include <vector>

#include "echelon/benefit.hpp"
#include "echelon/wake.hpp"

namespace echelon {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool empty() const { return hi < lo; }
    double length() const { return hi - lo; }
};

/// The echelon gap interval P = [-alpha_l, -alpha_s] and its derived images.
struct IntervalSpec {
    double alpha_s;  // m, > 0
    double alpha_l;  // m, >= alpha_s

    IntervalSpec(double alpha_s_, double alpha_l_) : alpha_s(alpha_s_), alpha_l(alpha_l_) {
        if (!(0.0 < alpha_s && alpha_s <= alpha_l))
            throw std::invalid_argument("IntervalSpec: need 0 < alpha_s <= alpha_l");
    }

    Interval P() const { return {-alpha_l, -alpha_s}; }
    Interval negP() const { return {alpha_s, alpha_l}; }
    Interval twoP() const { return {-2.0 * alpha_l, -2.0 * alpha_s}; }
    /// The interval [-2 alpha_l, -2 alpha] used by the third theorem,
    /// where -alpha is the benefit peak.
    Interval doubled_tail(double alpha) const { return {-2.0 * alpha_l, -2.0 * alpha}; }
};

enum class Verdict { holds, fails, inconclusive };

std::string to_string(Verdict v);

/// Numerically verified assumption status, attached to reports that rely on it.
struct AssumptionReport {
    bool checked = false;
    bool ok = false;
    double alpha = std::numeric_limits<double>::quiet_NaN();  // located peak, -alpha
    std::string note;
};

struct ConditionReport {
    std::string name;
    Verdict verdict = Verdict::inconclusive;

    static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
    double delta1 = kUnset;   // max over P of f_x(., -beta)
    double delta2 = kUnset;   // max over -P of f_x(., -beta)
    double delta3 = kUnset;   // max over -Q(I) of f_x(., -beta)
    double epsilon = kUnset;  // max over I of |f_x(., -2 beta)|
    std::vector<Interval> q_intervals;
    double margin = kUnset;   // signed slack of the strict inequality
    double lemma_bound = kUnset;  // (U / D_f)(2ab - r0^2), wake CE check only

    double grid_resolution = 0.0;
    double tolerance = 0.0;

    AssumptionReport assumption2;
    AssumptionReport assumption3;
    std::string note;
};

/// Scan and tolerance knobs shared by the checkers.
struct CheckOptions {
    double grid_step = 7.5e-4;  // m; default 1e-3 * b for the goose case
    double tol = 1e-8;          // inconclusive band for strict inequalities
    double scan_lo = -15.0;     // m; assumption-verification window
    double scan_hi = 15.0;      // m
    double y_max_factor = 10.0; // truncation of the unbounded |y| range
    double x_margin = 1e-3;     // m; exclusion margin around the x = 0 kink
};

/// Stable-ordered plain-text serialization of a report.
std::string report_to_text(const ConditionReport& r);

/// max over I of |f_x(x, -2 beta)|.
double compute_epsilon(const BenefitFunction& f, Interval I, double beta,
                       double grid_step);

/// Subset of P where |f_x(x, -beta)| <= epsilon, as a union of intervals
/// (a single interval under the peak-monotonicity assumption). Endpoints
/// are refined by bisection beyond grid resolution.
std::vector<Interval> compute_Q(const BenefitFunction& f, double epsilon,
                                Interval P, double beta, double grid_step);

/// Numeric verification of the single-peak assumption for f(., -beta):
/// locates the peak on the scan window and checks strict monotonicity on
/// both sides; also checks that the peak lies inside P.
AssumptionReport verify_assumption2(const BenefitFunction& f, Interval P, double beta,
                                    const CheckOptions& opts);

/// Numeric verification that f(x, -2 beta) is strictly decreasing for
/// x >= -2 alpha on the scan window.
AssumptionReport verify_assumption3(const BenefitFunction& f, double beta,
                                    double alpha, const CheckOptions& opts);

ConditionReport check_theorem1(const BenefitFunction& f, const IntervalSpec& P,
                               double beta, const CheckOptions& opts = {});
ConditionReport check_theorem2(const BenefitFunction& f, const IntervalSpec& P,
                               double beta, const CheckOptions& opts = {});
ConditionReport check_theorem3(const BenefitFunction& f, const IntervalSpec& P,
                               double beta, const CheckOptions& opts = {});

/// Propositions for n >= 3 followers; `which` selects 1, 2 or 3.
ConditionReport check_proposition(const BenefitFunction& f, const IntervalSpec& P,
                                  double beta, int which,
                                  const CheckOptions& opts = {});

/// Pairing condition for cooperative-equilibrium nonexistence:
/// |f_x(x, y) + f_x(-x, -y)| > 0 on (0, alpha_l] x {|y| >= beta_lower}.
/// Wake benefits take the interval-exact route through lemma1_check;
/// anything else is sampled on a truncated grid.
ConditionReport check_ce_condition(const BenefitFunction& f, const IntervalSpec& P,
                                   double beta, double beta_lower,
                                   const CheckOptions& opts = {});

/// Wake-model bound alpha_l <= (U / D_f)(2ab - r0^2), with a numeric
/// confirmation that g(R) < 0 on the implied (R, y) domain.
ConditionReport lemma1_check(const WakeParams& params, double alpha_l,
                             double beta_lower, const CheckOptions& opts = {});

}  // namespace echelon
