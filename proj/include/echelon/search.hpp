#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "echelon/benefit.hpp"
#include "echelon/conditions.hpp"
#include "echelon/scalar_opt.hpp"

namespace echelon {

enum class SearchKind { NE, CE };

/// Outcome of an equilibrium search run.
struct SearchResult {
    SearchKind kind = SearchKind::NE;
    bool converged = false;
    Eigen::VectorXd X_final;
    double residual = std::numeric_limits<double>::infinity();  // max-norm of the
                                                                // first-order condition
    Eigen::VectorXd neighbor_gaps;          // x_{i(i-1)}, m
    std::vector<bool> in_P;                 // per-gap membership
    int iterations = 0;
    bool second_order_ok = false;           // CE only: FD Hessian NSD at X_final
    std::string diagnostic;
    std::vector<Eigen::VectorXd> trajectory;  // filled when requested

    bool all_gaps_in_P() const {
        for (bool b : in_P)
            if (!b) return false;
        return !in_P.empty();
    }
};

enum class IterationMode { cyclic, simultaneous };

struct SearchOptions {
    double position_tol = 1e-7;   // m; convergence threshold on position change
    double gradient_tol = 1e-8;   // CE: max-norm gradient threshold
    int max_iters = 200;
    double window_halfwidth = 37.5;  // m; best-response window around the front
                                     // neighbor (50 b for the goose case)
    double grid_step = 0.05;         // m; coarse step of the best-response scan
    double kink_margin = 0.0075;     // m; 0.01 b perturbation away from x_ij = 0
    bool record_trajectory = false;
};

/// Unilateral maximizer of agent i's own benefit over the window, other
/// positions fixed.
ScalarMax best_response(const BenefitFunction& f, const FormationState& state, int i,
                        double window_lo, double window_hi,
                        double grid_step = 0.05);

/// Best-response iteration from `init` until positions settle or the
/// iteration cycles/expires. The residual is re-verified through
/// ne_stationarity_residual at the final point.
SearchResult find_ne(const BenefitFunction& f, int n, double beta,
                     const Eigen::VectorXd& init, const IntervalSpec& P,
                     IterationMode mode = IterationMode::cyclic,
                     const SearchOptions& opts = {});

/// Backtracking gradient ascent on the group benefit J. Divergence
/// (unbounded ascent) is reported as nonconvergence with a diagnostic.
SearchResult find_ce(const BenefitFunction& f, int n, double beta,
                     const Eigen::VectorXd& init, const IntervalSpec& P,
                     const SearchOptions& opts = {});

/// Brute-force oracle for n = 2: minimum over (x_10, x_21) in P^2 of the
/// max-norm of the two stationarity residuals.
struct ScanMinimum {
    double min_value = std::numeric_limits<double>::infinity();
    double at_gap_front = 0.0;  // x_10 (NE) or x_(n-1)(n-2) (CE)
    double at_gap_back = 0.0;   // x_21 (NE) or x_n(n-1) (CE)
};
ScanMinimum scan_ne_residual(const BenefitFunction& f, double beta,
                             const IntervalSpec& P, double grid_step);

/// Minimum over P^2 of |dJ/dx_n| as a function of the last two neighbor
/// gaps; a strictly positive minimum certifies the last agent can never be
/// stationary with gaps in P.
ScanMinimum scan_ce_gradient_n(const BenefitFunction& f, double beta,
                               const IntervalSpec& P, double grid_step, int n);

}  // namespace echelon
