#pragma once

#include "gbhe/analysis.hpp"
#include "gbhe/config.hpp"
#include "gbhe/manufactured.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace gbhe {

/// Problem bound to a manufactured case with forcing and initial datum.
ProblemSpec make_problem(const RunConfig& config, const ManufacturedCase& mc);

struct SingleRunResult {
    ErrorNorms errors;
    long dof = 0;       // (p+1) * spatial dofs, the tabulated convention
    double h = 0.0;
    double k = 0.0;
    StepDiagnostics diagnostics;
};

/// One manufactured-solution run on an n x n mesh with N = time_steps steps.
SingleRunResult run_single(const RunConfig& config, int mesh_n, int time_steps);

struct ConvergenceRow {
    int mesh_n = 0;
    long dof = 0;
    double h = 0.0;
    double l2 = 0.0, h1 = 0.0, h1semi = 0.0, dg = 0.0;
    double l2_rate, h1_rate, h1semi_rate, dg_rate; // NaN where undefined
};

struct ConvergenceReport {
    bool dg_scheme = false;
    std::vector<ConvergenceRow> rows;
};

/// The refinement ladder: each mesh n runs with N = n time intervals (space
/// and time refined together). Rates are attached between consecutive rows.
ConvergenceReport run_convergence(const RunConfig& config, const std::vector<int>& meshes,
                                  std::ostream* log = nullptr);

/// CSV emission with the fixed header
/// mesh,dof,l2_error,l2_rate,h1_error,h1_rate,h1semi_error,h1semi_rate
/// plus dg_error,dg_rate for the DG scheme. Undefined rates print empty.
void write_csv(const ConvergenceReport& report, std::ostream& os);

} // namespace gbhe
