#pragma once

#include <iosfwd>
#include <string>

#include "echelon/conditions.hpp"
#include "echelon/wake.hpp"

namespace echelon {

/// Flat key = value run configuration with SI units throughout.
/// Serialization round-trips losslessly (17 significant digits).
struct RunConfig {
    double weight = 36.75;        // N
    double wingspan = 1.5;        // m (2b)
    double airspeed = 18.0;       // m/s
    double air_density = 1.112;   // kg/m^3
    double df_coeff = 1.05e-4;
    double r0_coeff = 0.04;
    double beta = -1.0;           // m; <= 0 means "use the peak line a + b"
    double alpha_s = 0.5;         // m
    double alpha_l = 14.0;        // m
    int n = 2;
    double grid_step = 7.5e-4;    // m
    double tol = 1e-8;
    int restarts = 100;
    unsigned long long seed = 42;
    std::string out_dir = "out";

    WakeParams wake_params() const;
    double effective_beta() const;
    IntervalSpec interval() const { return {alpha_s, alpha_l}; }
    CheckOptions check_options() const;

    void validate() const;

    std::string serialize() const;
    static RunConfig parse(std::istream& in);
    static RunConfig load(const std::string& path);
    void save(const std::string& path) const;
};

}  // namespace echelon
