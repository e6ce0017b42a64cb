#pragma once

#include "gbhe/timestepper.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace gbhe {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Line-oriented key=value run configuration. Unknown keys are rejected;
/// '#' starts a comment. dump() writes every effective key so that a
/// dump-then-parse round trip reproduces the configuration.
struct RunConfig {
    std::string case_name = "sol1"; // sol1 | sol2 | decay1d | predator
    int mesh_n = 8;
    std::string space_scheme = "cg"; // cg | dg
    int space_degree = 1;
    int time_steps = 8;
    int time_degree = 0;
    double eta = 0.0;
    double sigma = 0.5;
    double caputo_mu = 0.0;
    double sigma0 = 10.0;
    double newton_abs_tol = 1e-10;
    double newton_rel_tol = 1e-10;
    int newton_max_iter = 25;
    std::string output = "out";

    // problem coefficients
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.5;
    int delta = 1;
    double nu = 1.0;
    double final_time = 1.0;

    // prey-predator extras
    double dt = 0.1;
    int snapshot_stride = 50;
    std::string memory_species = "both"; // both | prey
    double prey_growth = 1.0;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse(std::istream& in);
    void dump(std::ostream& os) const;
    void validate() const;

    NewtonOptions newton() const
    {
        return {newton_abs_tol, newton_rel_tol, newton_max_iter};
    }
};

} // namespace gbhe
