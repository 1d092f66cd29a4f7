#include "echelon/search.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace echelon {

namespace {

Eigen::VectorXd gaps_of(const Eigen::VectorXd& X) {
    Eigen::VectorXd g(X.size());
    for (int i = 0; i < X.size(); ++i) g[i] = X[i] - (i == 0 ? 0.0 : X[i - 1]);
    return g;
}

std::vector<bool> classify_gaps(const Eigen::VectorXd& gaps, const IntervalSpec& P) {
    std::vector<bool> in(static_cast<size_t>(gaps.size()));
    for (int i = 0; i < gaps.size(); ++i) in[static_cast<size_t>(i)] = P.P().contains(gaps[i]);
    return in;
}

/// Nudge x_i off any exact coincidence with a neighbor position.
void avoid_kinks(FormationState& state, int i, double margin) {
    for (int pass = 0; pass < 4; ++pass) {
        bool clean = true;
        for (int j = std::max(0, i - kNeighborHops);
             j <= std::min(state.n, i + kNeighborHops); ++j) {
            if (j == i) continue;
            if (std::abs(state.x_of(i) - state.x_of(j)) < 1e-12) {
                state.X[i - 1] += margin;
                clean = false;
            }
        }
        if (clean) return;
    }
}

double residual_max_norm(const BenefitFunction& f, const FormationState& state,
                         SearchKind kind, std::string* diag) {
    try {
        Eigen::VectorXd r = (kind == SearchKind::NE) ? ne_stationarity_residual(state, f)
                                                     : ce_gradient(state, f);
        return r.cwiseAbs().maxCoeff();
    } catch (const std::domain_error& e) {
        if (diag && diag->empty()) *diag = std::string("residual undefined: ") + e.what();
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

ScalarMax best_response(const BenefitFunction& f, const FormationState& state, int i,
                        double window_lo, double window_hi, double grid_step) {
    if (i < 1 || i > state.n) throw std::out_of_range("best_response: follower index");
    FormationState trial = state;
    auto objective = [&](double x) {
        trial.X[i - 1] = x;
        return per_agent_benefit(trial, f, i);
    };
    return grid_golden_max(objective, window_lo, window_hi, grid_step);
}

SearchResult find_ne(const BenefitFunction& f, int n, double beta,
                     const Eigen::VectorXd& init, const IntervalSpec& P,
                     IterationMode mode, const SearchOptions& opts) {
    SearchResult result;
    result.kind = SearchKind::NE;

    FormationState state(n, init, beta);
    for (int i = 1; i <= n; ++i) avoid_kinks(state, i, opts.kink_margin);
    if (opts.record_trajectory) result.trajectory.push_back(state.X);

    std::vector<Eigen::VectorXd> history;
    bool boundary_hit = false;
    bool settled = false;

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        result.iterations = iter + 1;
        Eigen::VectorXd updates = state.X;
        double max_change = 0.0;
        boundary_hit = false;

        for (int i = 1; i <= n; ++i) {
            const double front = state.x_of(i - 1);
            const FormationState& base = state;  // cyclic reads fresh positions
            FormationState snapshot = state;     // simultaneous reads the sweep start
            const FormationState& src =
                (mode == IterationMode::cyclic) ? base : snapshot;
            ScalarMax br = best_response(f, src, i, front - opts.window_halfwidth,
                                         front + opts.window_halfwidth, opts.grid_step);
            boundary_hit = boundary_hit || br.on_boundary;
            max_change = std::max(max_change, std::abs(br.x - state.x_of(i)));
            if (mode == IterationMode::cyclic) {
                state.X[i - 1] = br.x;
                avoid_kinks(state, i, opts.kink_margin);
            } else {
                updates[i - 1] = br.x;
            }
        }
        if (mode == IterationMode::simultaneous) {
            state.X = updates;
            for (int i = 1; i <= n; ++i) avoid_kinks(state, i, opts.kink_margin);
        }
        if (opts.record_trajectory) result.trajectory.push_back(state.X);

        if (max_change < opts.position_tol) {
            settled = true;
            break;
        }
        // cycle detection on a position_tol-rounded trace
        Eigen::VectorXd rounded =
            (state.X / opts.position_tol).array().round().matrix();
        for (const auto& h : history) {
            if ((h - rounded).cwiseAbs().maxCoeff() < 0.5) {
                result.diagnostic = "oscillation: position cycle detected";
                break;
            }
        }
        if (!result.diagnostic.empty()) break;
        history.push_back(rounded);
    }

    result.X_final = state.X;
    result.neighbor_gaps = gaps_of(state.X);
    result.in_P = classify_gaps(result.neighbor_gaps, P);
    result.residual = residual_max_norm(f, state, SearchKind::NE, &result.diagnostic);

    if (settled && boundary_hit && result.diagnostic.empty())
        result.diagnostic = "best response pinned to window boundary";
    result.converged = settled && !boundary_hit &&
                       result.residual <= std::max(opts.gradient_tol, 1e-6);
    if (!settled && result.diagnostic.empty())
        result.diagnostic = "iteration budget exhausted";
    return result;
}

SearchResult find_ce(const BenefitFunction& f, int n, double beta,
                     const Eigen::VectorXd& init, const IntervalSpec& P,
                     const SearchOptions& opts) {
    SearchResult result;
    result.kind = SearchKind::CE;

    FormationState state(n, init, beta);
    for (int i = 1; i <= n; ++i) avoid_kinks(state, i, opts.kink_margin);
    if (opts.record_trajectory) result.trajectory.push_back(state.X);

    const double drift_limit = init.cwiseAbs().maxCoeff() + 50.0 * P.alpha_l;
    const double max_step = 0.5;  // m per iteration, keeps the ascent sane
    double J = total_benefit(state, f);

    for (int iter = 0; iter < opts.max_iters; ++iter) {
        result.iterations = iter + 1;

        Eigen::VectorXd grad;
        try {
            grad = ce_gradient(state, f);
        } catch (const std::domain_error&) {
            for (int i = 1; i <= n; ++i) avoid_kinks(state, i, opts.kink_margin);
            grad = ce_gradient(state, f);
        }
        const double gnorm = grad.cwiseAbs().maxCoeff();
        if (gnorm < opts.gradient_tol) {
            result.converged = true;
            break;
        }

        double t = max_step / gnorm;
        bool accepted = false;
        FormationState trial = state;
        while (t * gnorm > 1e-14) {
            trial.X = state.X + t * grad;
            const double Jt = total_benefit(trial, f);
            if (Jt >= J + 1e-4 * t * grad.squaredNorm()) {
                state.X = trial.X;
                J = Jt;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (opts.record_trajectory) result.trajectory.push_back(state.X);
        if (!accepted) {
            result.diagnostic = "line search stalled (nonsmooth point or flat ridge)";
            break;
        }
        if (state.X.cwiseAbs().maxCoeff() > drift_limit) {
            result.diagnostic = "cohesion/dispersion drift: unbounded ascent";
            break;
        }
    }
    if (!result.converged && result.diagnostic.empty())
        result.diagnostic = "iteration budget exhausted";

    result.X_final = state.X;
    result.neighbor_gaps = gaps_of(state.X);
    result.in_P = classify_gaps(result.neighbor_gaps, P);
    result.residual = residual_max_norm(f, state, SearchKind::CE, &result.diagnostic);
    if (result.converged && result.residual > opts.gradient_tol)
        result.converged = false;

    if (result.converged) {
        // second-order confirmation: FD Hessian of J must be negative
        // semidefinite at the candidate
        const double h = 1e-4;
        Eigen::MatrixXd H(n, n);
        FormationState s = state;
        auto Jat = [&](const Eigen::VectorXd& X) {
            s.X = X;
            return total_benefit(s, f);
        };
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) {
                Eigen::VectorXd Xpp = state.X, Xpm = state.X, Xmp = state.X,
                                Xmm = state.X;
                Xpp[i] += h; Xpp[j] += h;
                Xpm[i] += h; Xpm[j] -= h;
                Xmp[i] -= h; Xmp[j] += h;
                Xmm[i] -= h; Xmm[j] -= h;
                H(i, j) = H(j, i) =
                    (Jat(Xpp) - Jat(Xpm) - Jat(Xmp) + Jat(Xmm)) / (4.0 * h * h);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        result.second_order_ok = es.eigenvalues().maxCoeff() <= 1e-8;
    }
    return result;
}

ScanMinimum scan_ne_residual(const BenefitFunction& f, double beta,
                             const IntervalSpec& P, double grid_step) {
    const Interval p = P.P();
    const long n =
        std::max(2L, static_cast<long>(std::ceil(p.length() / grid_step)) + 1);
    const double h = p.length() / static_cast<double>(n - 1);

    std::vector<double> d_front(static_cast<size_t>(n));   // f_x(x10, -beta)
    std::vector<double> d_back_refl(static_cast<size_t>(n));  // f_x(-x21, beta)
    for (long k = 0; k < n; ++k) {
        const double x = p.lo + h * static_cast<double>(k);
        d_front[static_cast<size_t>(k)] = f.deriv_x(x, -beta);
        d_back_refl[static_cast<size_t>(k)] = f.deriv_x(-x, beta);
    }
    std::vector<double> d_sum(static_cast<size_t>(2 * n - 1));  // f_x(x20, -2 beta)
    for (long m = 0; m < 2 * n - 1; ++m)
        d_sum[static_cast<size_t>(m)] =
            f.deriv_x(2.0 * p.lo + h * static_cast<double>(m), -2.0 * beta);

    ScanMinimum best;
    for (long i = 0; i < n; ++i) {
        const double r1_front = d_front[static_cast<size_t>(i)];
        for (long j = 0; j < n; ++j) {
            const double r1 = r1_front + d_back_refl[static_cast<size_t>(j)];
            const double r2 = d_sum[static_cast<size_t>(i + j)] +
                              d_front[static_cast<size_t>(j)];
            const double m = std::max(std::abs(r1), std::abs(r2));
            if (m < best.min_value) {
                best.min_value = m;
                best.at_gap_front = p.lo + h * static_cast<double>(i);
                best.at_gap_back = p.lo + h * static_cast<double>(j);
            }
        }
    }
    return best;
}

ScanMinimum scan_ce_gradient_n(const BenefitFunction& f, double beta,
                               const IntervalSpec& P, double grid_step, int n_agents) {
    if (n_agents < 2)
        throw std::invalid_argument("scan_ce_gradient_n: need n >= 2");
    const Interval p = P.P();
    const long n =
        std::max(2L, static_cast<long>(std::ceil(p.length() / grid_step)) + 1);
    const double h = p.length() / static_cast<double>(n - 1);

    // dJ/dx_n depends only on u = x_{n(n-1)} and u + w with w = x_{(n-1)(n-2)}:
    //   f_x(u+w, -2b) - f_x(-(u+w), 2b) + f_x(u, -b) - f_x(-u, b)
    std::vector<double> pair_two(static_cast<size_t>(2 * n - 1));
    for (long m = 0; m < 2 * n - 1; ++m) {
        const double x = 2.0 * p.lo + h * static_cast<double>(m);
        pair_two[static_cast<size_t>(m)] =
            f.deriv_x(x, -2.0 * beta) - f.deriv_x(-x, 2.0 * beta);
    }
    std::vector<double> pair_one(static_cast<size_t>(n));
    for (long k = 0; k < n; ++k) {
        const double x = p.lo + h * static_cast<double>(k);
        pair_one[static_cast<size_t>(k)] = f.deriv_x(x, -beta) - f.deriv_x(-x, beta);
    }

    ScanMinimum best;
    for (long i = 0; i < n; ++i) {      // w index
        for (long j = 0; j < n; ++j) {  // u index
            const double comp = pair_two[static_cast<size_t>(i + j)] +
                                pair_one[static_cast<size_t>(j)];
            const double m = std::abs(comp);
            if (m < best.min_value) {
                best.min_value = m;
                best.at_gap_front = p.lo + h * static_cast<double>(i);
                best.at_gap_back = p.lo + h * static_cast<double>(j);
            }
        }
    }
    return best;
}

}  // namespace echelon
