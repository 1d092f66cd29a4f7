#include "echelon/commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "echelon/conditions.hpp"
#include "echelon/wake.hpp"

namespace echelon {

namespace {

namespace fs = std::filesystem;

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.14e", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

/// '#'-prefixed parameter echo, enough to re-run the command.
void write_header(std::ostream& out, const RunConfig& config,
                  const std::string& extra) {
    std::istringstream cfg(config.serialize());
    std::string line;
    while (std::getline(cfg, line)) out << "# " << line << "\n";
    if (!extra.empty()) out << "# " << extra << "\n";
}

/// Midpoint of the admissible lateral-bound interval (sqrt(a^2+b^2), a+b).
double default_beta_lower(const WakeParams& p) {
    const double a = p.a(), b = p.half_span;
    return 0.5 * (std::sqrt(a * a + b * b) + (a + b));
}

int verdict_exit_code(Verdict v) {
    switch (v) {
        case Verdict::holds: return 0;
        case Verdict::fails: return 1;
        default: return 2;
    }
}

ConditionReport run_check(const RunConfig& config, const std::string& which) {
    const WakeBenefit f(config.wake_params());
    const IntervalSpec P = config.interval();
    const double beta = config.effective_beta();
    const CheckOptions opts = config.check_options();
    if (which == "thm1") return check_theorem1(f, P, beta, opts);
    if (which == "thm2") return check_theorem2(f, P, beta, opts);
    if (which == "thm3") return check_theorem3(f, P, beta, opts);
    if (which == "prop1") return check_proposition(f, P, beta, 1, opts);
    if (which == "prop2") return check_proposition(f, P, beta, 2, opts);
    if (which == "prop3") return check_proposition(f, P, beta, 3, opts);
    if (which == "ce")
        return check_ce_condition(f, P, beta, default_beta_lower(f.params()), opts);
    if (which == "lemma1")
        return lemma1_check(f.params(), P.alpha_l, default_beta_lower(f.params()), opts);
    throw std::invalid_argument("check: unknown condition '" + which + "'");
}

std::string gaps_csv(const Eigen::VectorXd& gaps) {
    std::string s;
    for (Eigen::Index i = 0; i < gaps.size(); ++i) {
        if (i) s += ',';
        s += sci(gaps[i]);
    }
    return s;
}

void write_trajectory(const std::string& path, const RunConfig& config,
                      const SearchResult& res) {
    auto out = open_out(path);
    write_header(out, config, "columns: iter,x_1..x_n");
    for (std::size_t it = 0; it < res.trajectory.size(); ++it) {
        out << it;
        for (Eigen::Index i = 0; i < res.trajectory[it].size(); ++i)
            out << ',' << sci(res.trajectory[it][i]);
        out << "\n";
    }
}

}  // namespace

int cmd_curve(const RunConfig& config, CurveKind kind, int y_multiple, double x_lo,
              double x_hi, double step, const std::string& out_path) {
    if (!(step > 0.0 && x_lo < x_hi))
        throw std::invalid_argument("curve: need step > 0 and x_lo < x_hi");
    const WakeBenefit f(config.wake_params());
    const double y = -static_cast<double>(y_multiple) * config.effective_beta();

    auto out = open_out(out_path);
    std::ostringstream extra;
    extra << "curve = " << (kind == CurveKind::value ? "f" : "fx")
          << ", y = " << sci(y) << ", step = " << sci(step);
    write_header(out, config, extra.str());
    out << "# columns: x," << (kind == CurveKind::value ? "f" : "fx") << "\n";

    const auto rows = static_cast<long>(std::llround((x_hi - x_lo) / step));
    for (long i = 0; i <= rows; ++i) {
        const double x = (i == rows) ? x_hi : x_lo + static_cast<double>(i) * step;
        if (kind == CurveKind::deriv && !f.deriv_valid(x)) {
            out << sci(x) << ",\n";  // gap row at the derivative kink
            continue;
        }
        const double v = kind == CurveKind::value ? f.value(x, y) : f.deriv_x(x, y);
        out << sci(x) << ',' << sci(v) << "\n";
    }
    return 0;
}

int cmd_check(const RunConfig& config, const std::string& which,
              const std::string& out_path) {
    const ConditionReport report = run_check(config, which);
    auto out = open_out(out_path);
    write_header(out, config, "check = " + which);
    out << report_to_text(report);
    return verdict_exit_code(report.verdict);
}

int cmd_search(const RunConfig& config, SearchKind kind, bool dump_trajectories,
               const std::string& out_path) {
    const WakeBenefit f(config.wake_params());
    const IntervalSpec P = config.interval();
    const double beta = config.effective_beta();
    const int n = config.n;

    SearchOptions opts;
    opts.record_trajectory = dump_trajectories;

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> gap_dist(P.P().lo, P.P().hi);

    auto out = open_out(out_path);
    std::ostringstream extra;
    extra << "search = " << (kind == SearchKind::NE ? "ne" : "ce")
          << ", restarts = " << config.restarts;
    write_header(out, config, extra.str());
    out << "# columns: restart,converged,residual,all_gaps_in_P,iterations,"
           "gap_1..gap_n,diagnostic\n";

    int converged_in_P = 0;
    for (int r = 0; r < config.restarts; ++r) {
        Eigen::VectorXd X(n);
        double pos = 0.0;
        for (int i = 0; i < n; ++i) {
            pos += gap_dist(rng);
            X[i] = pos;
        }
        const SearchResult res =
            kind == SearchKind::NE
                ? find_ne(f, n, beta, X, P, IterationMode::cyclic, opts)
                : find_ce(f, n, beta, X, P, opts);
        const bool bad = res.converged && res.all_gaps_in_P();
        if (bad) ++converged_in_P;
        out << r << ',' << (res.converged ? 1 : 0) << ',' << sci(res.residual) << ','
            << (res.all_gaps_in_P() ? 1 : 0) << ',' << res.iterations << ','
            << gaps_csv(res.neighbor_gaps) << ','
            << (res.diagnostic.empty() ? "ok" : res.diagnostic) << "\n";
        if (dump_trajectories || bad) {
            const fs::path p(out_path);
            fs::path traj = p.parent_path() /
                            (p.stem().string() + "_traj_" + std::to_string(r) + ".csv");
            write_trajectory(traj.string(), config, res);
        }
    }
    out << "# converged_in_P = " << converged_in_P << "\n";
    return converged_in_P == 0 ? 0 : 1;
}

int cmd_scan(const RunConfig& config, SearchKind kind, const std::string& out_path) {
    const WakeBenefit f(config.wake_params());
    const IntervalSpec P = config.interval();
    const double beta = config.effective_beta();

    const ScanMinimum m = kind == SearchKind::NE
                              ? scan_ne_residual(f, beta, P, config.grid_step)
                              : scan_ce_gradient_n(f, beta, P, config.grid_step, config.n);

    auto out = open_out(out_path);
    std::ostringstream extra;
    extra << "scan = " << (kind == SearchKind::NE ? "ne" : "ce");
    write_header(out, config, extra.str());
    out << "min_value = " << sci(m.min_value) << "\n"
        << "at_gap_front = " << sci(m.at_gap_front) << "\n"
        << "at_gap_back = " << sci(m.at_gap_back) << "\n"
        << "strictly_positive = " << (m.min_value > config.tol ? "yes" : "no") << "\n";
    return m.min_value > config.tol ? 0 : 1;
}

int cmd_reproduce(const RunConfig& config) {
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);

    struct Entry {
        std::string file;
        std::string what;
        std::string status;
    };
    std::vector<Entry> manifest;

    auto record = [&](const std::string& file, const std::string& what,
                      const std::string& status) {
        manifest.push_back({file, what, status});
    };

    config.save((dir / "config.txt").string());
    record("config.txt", "run configuration echo", "ok");

    // Benefit and derivative curves along both lateral lines.
    const double curve_step = 0.01;
    for (int m = 1; m <= 2; ++m) {
        const std::string fval = "curve_f_y" + std::to_string(m) + ".csv";
        cmd_curve(config, CurveKind::value, m, -15.0, 15.0, curve_step,
                  (dir / fval).string());
        record(fval, "benefit curve at y = -" + std::to_string(m) + "*beta", "ok");

        const std::string fder = "curve_fx_y" + std::to_string(m) + ".csv";
        cmd_curve(config, CurveKind::deriv, m, -15.0, 15.0, curve_step,
                  (dir / fder).string());
        record(fder, "benefit x-derivative at y = -" + std::to_string(m) + "*beta",
               "ok");
    }

    // Condition checks over the case study's three echelon intervals.
    struct CheckCase {
        std::string which;
        double alpha_s, alpha_l;
    };
    const std::vector<CheckCase> checks = {
        {"thm1", 0.5, 3.5},  {"thm2", 2.5, 7.0},  {"thm3", 0.5, 14.0},
        {"prop1", 0.5, 3.5}, {"prop2", 2.5, 7.0}, {"prop3", 0.5, 14.0},
        {"ce", 0.5, 14.0},   {"lemma1", 0.5, 14.0}};
    for (const auto& c : checks) {
        RunConfig cc = config;
        cc.alpha_s = c.alpha_s;
        cc.alpha_l = c.alpha_l;
        const std::string file = "check_" + c.which + ".txt";
        const int code = cmd_check(cc, c.which, (dir / file).string());
        const char* status = code == 0 ? "holds" : code == 1 ? "fails" : "inconclusive";
        std::ostringstream what;
        what << "condition " << c.which << " on P = [" << -c.alpha_l << ", "
             << -c.alpha_s << "]";
        record(file, what.str(), status);
    }

    // Exhaustive n = 2 residual-scan oracles.
    struct ScanCase {
        SearchKind kind;
        std::string file;
        double alpha_s, alpha_l;
        int n;
    };
    const std::vector<ScanCase> scans = {
        {SearchKind::NE, "scan_ne_narrow.txt", 0.5, 3.5, 2},
        {SearchKind::NE, "scan_ne_wide.txt", 0.5, 14.0, 2},
        {SearchKind::CE, "scan_ce_wide.txt", 0.5, 14.0, 3}};
    for (const auto& s : scans) {
        RunConfig cc = config;
        cc.alpha_s = s.alpha_s;
        cc.alpha_l = s.alpha_l;
        cc.n = s.n;
        cc.grid_step = 1e-3;
        const int code = cmd_scan(cc, s.kind, (dir / s.file).string());
        std::ostringstream what;
        what << (s.kind == SearchKind::NE ? "NE residual scan" : "CE gradient scan")
             << " on P = [" << -s.alpha_l << ", " << -s.alpha_s << "]";
        record(s.file, what.str(), code == 0 ? "positive" : "zero found");
    }

    auto out = open_out((dir / "manifest.txt").string());
    write_header(out, config, "reproduce manifest");
    for (const auto& e : manifest)
        out << e.file << " | " << e.what << " | " << e.status << "\n";
    return 0;
}

}  // namespace echelon
