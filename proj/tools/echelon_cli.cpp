// Command-line front end: curve / check / search / scan / reproduce.

#include <CLI11.hpp>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "echelon/commands.hpp"

namespace {

echelon::RunConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return {};
    return echelon::RunConfig::load(config_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Echelon wake-benefit model and equilibrium condition checker"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    double grid_step = -1.0;
    double tol = -1.0;
    unsigned long long seed = 0;
    bool seed_set = false;

    app.add_option("--config", config_path, "path to a key = value config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--grid-step", grid_step, "scan grid step, m");
    app.add_option("--tol", tol, "inconclusive-band tolerance");
    app.add_option("--seed", seed, "restart RNG seed")->each([&](const std::string&) {
        seed_set = true;
    });

    auto* curve = app.add_subcommand("curve", "tabulate f or fx along a lateral line");
    std::string which_curve = "f";
    int y_multiple = 1;
    double x_lo = -15.0, x_hi = 15.0, step = 0.01;
    std::string curve_out = "curve.csv";
    curve->add_option("--which", which_curve, "f or fx")
        ->check(CLI::IsMember({"f", "fx"}));
    curve->add_option("--y-multiple", y_multiple, "1 => y = -beta, 2 => y = -2 beta")
        ->check(CLI::IsMember({1, 2}));
    curve->add_option("--x-lo", x_lo, "window start, m");
    curve->add_option("--x-hi", x_hi, "window end, m");
    curve->add_option("--step", step, "tabulation step, m");
    curve->add_option("--file", curve_out, "output CSV name");

    auto* check = app.add_subcommand("check", "run one equilibrium condition check");
    std::string which_check;
    std::string check_out = "check.txt";
    check->add_option("which", which_check, "thm1|thm2|thm3|prop1|prop2|prop3|ce|lemma1")
        ->required()
        ->check(CLI::IsMember(
            {"thm1", "thm2", "thm3", "prop1", "prop2", "prop3", "ce", "lemma1"}));
    check->add_option("--file", check_out, "output report name");

    auto* search = app.add_subcommand("search", "seeded random-restart search");
    std::string search_kind = "ne";
    bool trajectories = false;
    std::string search_out = "search.csv";
    search->add_option("kind", search_kind, "ne or ce")
        ->required()
        ->check(CLI::IsMember({"ne", "ce"}));
    search->add_flag("--trajectories", trajectories, "dump per-restart trajectories");
    search->add_option("--file", search_out, "output summary name");

    auto* scan = app.add_subcommand("scan", "exhaustive residual scan over P^2");
    std::string scan_kind = "ne";
    std::string scan_out = "scan.txt";
    scan->add_option("kind", scan_kind, "ne or ce")
        ->required()
        ->check(CLI::IsMember({"ne", "ce"}));
    scan->add_option("--file", scan_out, "output report name");

    auto* repro = app.add_subcommand(
        "reproduce", "batch: curves, every condition check, scan oracles, manifest");
    (void)repro;

    CLI11_PARSE(app, argc, argv);

    try {
        echelon::RunConfig config = load_config(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (grid_step > 0.0) config.grid_step = grid_step;
        if (tol > 0.0) config.tol = tol;
        if (seed_set) config.seed = seed;
        config.validate();

        const std::filesystem::path dir(config.out_dir);
        auto in_dir = [&](const std::string& name) { return (dir / name).string(); };

        if (curve->parsed()) {
            const auto kind = which_curve == "f" ? echelon::CurveKind::value
                                                 : echelon::CurveKind::deriv;
            return echelon::cmd_curve(config, kind, y_multiple, x_lo, x_hi, step,
                                      in_dir(curve_out));
        }
        if (check->parsed())
            return echelon::cmd_check(config, which_check, in_dir(check_out));
        if (search->parsed()) {
            const auto kind = search_kind == "ne" ? echelon::SearchKind::NE
                                                  : echelon::SearchKind::CE;
            return echelon::cmd_search(config, kind, trajectories, in_dir(search_out));
        }
        if (scan->parsed()) {
            const auto kind = scan_kind == "ne" ? echelon::SearchKind::NE
                                                : echelon::SearchKind::CE;
            return echelon::cmd_scan(config, kind, in_dir(scan_out));
        }
        return echelon::cmd_reproduce(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
