#include "echelon/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "echelon/scalar_opt.hpp"

namespace echelon {

namespace {

Verdict classify(double margin, double tol) {
    if (margin > tol) return Verdict::holds;
    if (margin < -tol) return Verdict::fails;
    return Verdict::inconclusive;
}

/// max over [I.lo, I.hi] of f_x(x, y_level).
double max_deriv(const BenefitFunction& f, Interval I, double y_level,
                 double grid_step) {
    return grid_golden_max(
               [&](double x) { return f.deriv_x(x, y_level); }, I.lo, I.hi, grid_step)
        .value;
}

double max_deriv_over_reflected(const BenefitFunction& f,
                                const std::vector<Interval>& q, double beta,
                                double grid_step) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Interval& iv : q) {
        const Interval neg{-iv.hi, -iv.lo};
        best = std::max(best, max_deriv(f, neg, -beta, grid_step));
    }
    return best;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        default: return "inconclusive";
    }
}

std::string report_to_text(const ConditionReport& r) {
    std::ostringstream os;
    os << "check: " << r.name << "\n";
    os << "verdict: " << to_string(r.verdict) << "\n";
    auto put = [&](const char* key, double v) {
        if (!std::isnan(v)) os << key << ": " << fmt(v) << "\n";
    };
    put("delta1", r.delta1);
    put("delta2", r.delta2);
    put("delta3", r.delta3);
    put("epsilon", r.epsilon);
    if (!r.q_intervals.empty()) {
        os << "Q:";
        for (const Interval& iv : r.q_intervals)
            os << " [" << fmt(iv.lo) << ", " << fmt(iv.hi) << "]";
        os << "\n";
    }
    put("margin", r.margin);
    put("lemma_bound", r.lemma_bound);
    os << "grid_resolution: " << fmt(r.grid_resolution) << "\n";
    os << "tolerance: " << fmt(r.tolerance) << "\n";
    if (r.assumption2.checked)
        os << "assumption2: " << (r.assumption2.ok ? "verified" : "violated")
           << " (peak " << fmt(r.assumption2.alpha) << ")"
           << (r.assumption2.note.empty() ? "" : " " + r.assumption2.note) << "\n";
    if (r.assumption3.checked)
        os << "assumption3: " << (r.assumption3.ok ? "verified" : "violated")
           << (r.assumption3.note.empty() ? "" : " " + r.assumption3.note) << "\n";
    if (!r.note.empty()) os << "note: " << r.note << "\n";
    return os.str();
}

double compute_epsilon(const BenefitFunction& f, Interval I, double beta,
                       double grid_step) {
    if (I.empty()) throw std::invalid_argument("compute_epsilon: empty interval");
    return grid_golden_max(
               [&](double x) { return std::abs(f.deriv_x(x, -2.0 * beta)); }, I.lo,
               I.hi, grid_step)
        .value;
}

std::vector<Interval> compute_Q(const BenefitFunction& f, double epsilon, Interval P,
                                double beta, double grid_step) {
    const long n =
        std::max(2L, static_cast<long>(std::ceil(P.length() / grid_step)) + 1);
    const double h = P.length() / static_cast<double>(n - 1);

    auto below = [&](double x) { return std::abs(f.deriv_x(x, -beta)) <= epsilon; };
    auto excess = [&](double x) { return std::abs(f.deriv_x(x, -beta)) - epsilon; };

    std::vector<Interval> runs;
    bool inside = false;
    double run_lo = 0.0;
    double prev_x = P.lo;
    for (long k = 0; k < n; ++k) {
        const double x = (k == n - 1) ? P.hi : P.lo + h * static_cast<double>(k);
        const bool in = below(x);
        if (in && !inside) {
            // refine the left edge between prev_x (outside) and x (inside)
            run_lo = (k == 0) ? P.lo : bisect_root(excess, prev_x, x);
            inside = true;
        } else if (!in && inside) {
            runs.push_back({run_lo, bisect_root(excess, prev_x, x)});
            inside = false;
        }
        prev_x = x;
    }
    if (inside) runs.push_back({run_lo, P.hi});
    return runs;
}

AssumptionReport verify_assumption2(const BenefitFunction& f, Interval P, double beta,
                                    const CheckOptions& opts) {
    AssumptionReport rep;
    rep.checked = true;

    const double neg_hi = -opts.x_margin;
    const ScalarMax peak = grid_golden_max(
        [&](double x) { return f.value(x, -beta); }, opts.scan_lo, neg_hi,
        opts.grid_step);
    rep.alpha = peak.x;
    if (peak.on_boundary) {
        rep.ok = false;
        rep.note = "peak on scan-window boundary; widen the window";
        return rep;
    }

    // strict monotonicity on both sides of the peak, sampled on the window
    const long n = 2000;
    for (long k = 0; k <= n; ++k) {
        const double x =
            opts.scan_lo + (opts.scan_hi - opts.scan_lo) * static_cast<double>(k) /
                               static_cast<double>(n);
        if (std::abs(x) < opts.x_margin || std::abs(x - peak.x) < 10.0 * opts.grid_step)
            continue;
        const double d = f.deriv_x(x, -beta);
        if ((x < peak.x && d <= 0.0) || (x > peak.x && d >= 0.0)) {
            rep.ok = false;
            rep.note = "monotonicity violated at x = " + fmt(x);
            return rep;
        }
    }

    if (!P.contains(peak.x)) {
        rep.ok = false;
        rep.note = "Assumption 2(b) violated: peak not inside P";
        return rep;
    }
    rep.ok = true;
    return rep;
}

AssumptionReport verify_assumption3(const BenefitFunction& f, double beta,
                                    double alpha, const CheckOptions& opts) {
    AssumptionReport rep;
    rep.checked = true;
    const double lo = 2.0 * alpha;  // alpha is the (negative) peak location
    const long n = 2000;
    for (long k = 0; k <= n; ++k) {
        const double x =
            lo + (opts.scan_hi - lo) * static_cast<double>(k) / static_cast<double>(n);
        if (std::abs(x) < opts.x_margin) continue;
        if (f.deriv_x(x, -2.0 * beta) >= 0.0) {
            rep.ok = false;
            rep.note = "f_x(x, -2 beta) >= 0 at x = " + fmt(x);
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

ConditionReport check_theorem1(const BenefitFunction& f, const IntervalSpec& P,
                               double beta, const CheckOptions& opts) {
    ConditionReport r;
    r.name = "theorem1";
    r.grid_resolution = opts.grid_step;
    r.tolerance = opts.tol;
    r.delta1 = max_deriv(f, P.P(), -beta, opts.grid_step);
    r.delta2 = max_deriv(f, P.negP(), -beta, opts.grid_step);
    r.margin = -r.delta1 - r.delta2;
    r.verdict = classify(r.margin, opts.tol);
    return r;
}

namespace {

ConditionReport q_based_check(const BenefitFunction& f, const IntervalSpec& P,
                              double beta, const CheckOptions& opts, Interval I,
                              const std::string& name, bool need_assumption3,
                              double extra_epsilon_penalty) {
    ConditionReport r;
    r.name = name;
    r.grid_resolution = opts.grid_step;
    r.tolerance = opts.tol;

    r.assumption2 = verify_assumption2(f, P.P(), beta, opts);
    if (!r.assumption2.ok) {
        r.verdict = Verdict::inconclusive;
        r.note = "precondition failed: " + (r.assumption2.note.empty()
                                                ? std::string("Assumption 2 violated")
                                                : r.assumption2.note);
        return r;
    }
    if (need_assumption3) {
        r.assumption3 = verify_assumption3(f, beta, r.assumption2.alpha, opts);
        if (!r.assumption3.ok) {
            r.verdict = Verdict::inconclusive;
            r.note = "precondition failed: Assumption 3 violated, " +
                     r.assumption3.note;
            return r;
        }
    }

    r.epsilon = compute_epsilon(f, I, beta, opts.grid_step);
    r.q_intervals = compute_Q(f, r.epsilon, P.P(), beta, opts.grid_step);
    r.delta1 = max_deriv(f, P.P(), -beta, opts.grid_step);
    if (r.q_intervals.empty()) {
        // no x in P can satisfy the back agent's stationarity: trivial case
        r.verdict = Verdict::holds;
        r.note = "Q empty (trivial case): back-agent stationarity unsatisfiable in P";
        return r;
    }
    r.delta3 = max_deriv_over_reflected(f, r.q_intervals, beta, opts.grid_step);
    r.margin = -r.delta1 - r.delta3 - extra_epsilon_penalty;
    r.verdict = classify(r.margin, opts.tol);
    return r;
}

}  // namespace

ConditionReport check_theorem2(const BenefitFunction& f, const IntervalSpec& P,
                               double beta, const CheckOptions& opts) {
    return q_based_check(f, P, beta, opts, P.twoP(), "theorem2", false, 0.0);
}

ConditionReport check_theorem3(const BenefitFunction& f, const IntervalSpec& P,
                               double beta, const CheckOptions& opts) {
    // I depends on the located peak; verify Assumption 2 up front to get it
    AssumptionReport asm2 = verify_assumption2(f, P.P(), beta, opts);
    if (!asm2.ok) {
        ConditionReport r;
        r.name = "theorem3";
        r.grid_resolution = opts.grid_step;
        r.tolerance = opts.tol;
        r.assumption2 = asm2;
        r.verdict = Verdict::inconclusive;
        r.note = "precondition failed: " + asm2.note;
        return r;
    }
    ConditionReport r = q_based_check(f, P, beta, opts, P.doubled_tail(-asm2.alpha),
                                      "theorem3", true, 0.0);
    return r;
}

ConditionReport check_proposition(const BenefitFunction& f, const IntervalSpec& P,
                                  double beta, int which, const CheckOptions& opts) {
    switch (which) {
        case 1: {
            ConditionReport r = check_theorem1(f, P, beta, opts);
            r.name = "proposition1";
            r.epsilon = compute_epsilon(f, P.twoP(), beta, opts.grid_step);
            r.margin -= r.epsilon;
            r.verdict = classify(r.margin, opts.tol);
            return r;
        }
        case 2: {
            ConditionReport r = q_based_check(f, P, beta, opts, P.twoP(),
                                              "proposition2", false, 0.0);
            if (r.verdict != Verdict::inconclusive && !std::isnan(r.margin)) {
                r.margin -= r.epsilon;
                r.verdict = classify(r.margin, opts.tol);
            }
            return r;
        }
        case 3: {
            ConditionReport r = check_theorem3(f, P, beta, opts);
            r.name = "proposition3";
            return r;
        }
        default:
            throw std::invalid_argument("check_proposition: which must be 1, 2 or 3");
    }
}

ConditionReport check_ce_condition(const BenefitFunction& f, const IntervalSpec& P,
                                   double beta, double beta_lower,
                                   const CheckOptions& opts) {
    if (beta_lower > beta)
        throw std::invalid_argument("check_ce_condition: beta_lower must be <= beta");

    if (const auto* wake = dynamic_cast<const WakeBenefit*>(&f)) {
        ConditionReport r = lemma1_check(wake->params(), P.alpha_l, beta_lower, opts);
        return r;
    }

    ConditionReport r;
    r.name = "ce_condition";
    r.grid_resolution = opts.grid_step;
    r.tolerance = opts.tol;

    const double y_max = opts.y_max_factor * beta;
    const long nx = std::max(
        2L, static_cast<long>(std::ceil(P.alpha_l / opts.grid_step)) + 1);
    const long ny = 200;
    double min_abs = std::numeric_limits<double>::infinity();
    for (long i = 1; i <= nx; ++i) {
        const double x = P.alpha_l * static_cast<double>(i) / static_cast<double>(nx);
        for (long j = 0; j <= ny; ++j) {
            const double y = beta_lower + (y_max - beta_lower) * static_cast<double>(j) /
                                              static_cast<double>(ny);
            min_abs = std::min(
                min_abs, std::abs(f.deriv_x(x, y) + f.deriv_x(-x, -y)));
        }
    }
    // the condition is a strict inequality; a sampled exact zero fails it
    r.margin = min_abs;
    r.verdict = min_abs > opts.tol ? Verdict::holds : Verdict::fails;
    r.note = "sampled domain x in (0, " + fmt(P.alpha_l) + "], |y| in [" +
             fmt(beta_lower) + ", " + fmt(y_max) + "]; min |f_x(x,y)+f_x(-x,-y)| = " +
             fmt(min_abs);
    return r;
}

ConditionReport lemma1_check(const WakeParams& params, double alpha_l,
                             double beta_lower, const CheckOptions& opts) {
    const double a = params.a(), b = params.half_span;
    const double lat = std::sqrt(a * a + b * b);
    if (!(beta_lower > lat && beta_lower < a + b))
        throw std::invalid_argument(
            "lemma1_check: beta_lower must lie in (sqrt(a^2+b^2), a+b)");
    if (alpha_l <= 0.0)
        throw std::invalid_argument("lemma1_check: alpha_l must be positive");

    ConditionReport r;
    r.name = "lemma1";
    r.grid_resolution = opts.grid_step;
    r.tolerance = opts.tol;
    r.lemma_bound = params.airspeed / params.df() *
                    (2.0 * a * b - params.r0() * params.r0());
    r.margin = r.lemma_bound - alpha_l;
    r.verdict = classify(r.margin, opts.tol);

    // numeric confirmation: g(R) < 0 on (r0^2, r0^2 + D_f alpha_eff / U]
    // for sampled |y| >= beta_lower
    const double alpha_eff = std::min(alpha_l, r.lemma_bound);
    const double r0sq = params.r0() * params.r0();
    const double R_hi = r0sq + params.df() * alpha_eff / params.airspeed;
    const double y_max = opts.y_max_factor * params.beta();
    const int nR = 100, nY = 100;
    for (int i = 1; i <= nR; ++i) {
        const double R = r0sq + (R_hi - r0sq) * static_cast<double>(i) / nR;
        for (int j = 0; j <= nY; ++j) {
            const double y =
                beta_lower + (y_max - beta_lower) * static_cast<double>(j) / nY;
            if (g_of_R(R, y, params) >= 0.0) {
                r.verdict = Verdict::fails;
                r.note = "g(R) >= 0 at R = " + fmt(R) + ", y = " + fmt(y);
                return r;
            }
        }
    }
    r.note = "g(R) < 0 confirmed on sampled (R, y) domain";
    return r;
}

}  // namespace echelon
