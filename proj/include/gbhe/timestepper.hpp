#pragma once

#include "gbhe/memory_weights.hpp"
#include "gbhe/spatial.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gbhe {

struct NewtonOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 25;
};

struct StepperOptions {
    NewtonOptions newton;
    TemporalBasisKind temporal_basis = TemporalBasisKind::legendre;
    int nonlinear_quad_points = 0; // 0: p_n + 2 Gauss points
    int forcing_quad_points = 0;   // 0: p_n + 3 Gauss points
};

class NewtonDivergence : public std::runtime_error {
public:
    NewtonDivergence(int interval, double residual_norm);
    int interval;
    double residual_norm;
};

struct StepDiagnostics {
    std::vector<int> newton_iterations;                // per interval
    std::vector<std::vector<double>> residual_history; // per interval, per iteration
};

/// Space-time history: coefficient block per interval (columns are the
/// temporal coefficients U_m) plus the initial coefficient vector.
struct DiscreteSolution {
    TimePartition partition;
    TemporalBasisKind basis_kind = TemporalBasisKind::legendre;
    Vec initial;
    std::vector<Eigen::MatrixXd> blocks;

    /// left-limit trace U^n at t_n; n = 0 returns the initial vector
    Vec trace(int n) const;
    /// value at reference time tref in [-1,1] within interval n (1-based)
    Vec evaluate(int n, double tref) const;
};

/// Jump-plus-derivative coupling matrix C and the mapped temporal mass T of
/// the DG-in-time scheme on one interval:
///   C_lm = int_{-1}^{1} phi_m' phi_l dt + phi_m(-1) phi_l(-1),  T = (k/2) * ref mass.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd>
temporal_coupling_matrices(int p, double k, const TemporalBasis& basis);

/// DG-in-time stepping engine. Each step solves the (p_n+1)-block nonlinear
/// system with Newton, drawing the memory term from the stored history.
class TimeStepper {
public:
    TimeStepper(const ProblemSpec& problem, const TimePartition& partition,
                const SpatialDiscretization& spatial, StepperOptions options = {});

    /// solve interval n (1-based); intervals 1..n-1 must already be solved
    const Eigen::MatrixXd& solve_step(int n);

    /// run all remaining steps and return the completed solution
    const DiscreteSolution& run();

    const DiscreteSolution& solution() const { return solution_; }
    const StepDiagnostics& diagnostics() const { return diagnostics_; }

private:
    struct Triplets;
    void build_linear_part(int n, const TemporalBasis& basis, std::vector<Eigen::Triplet<double>>& out,
                           Eigen::MatrixXd& mass_weights, Eigen::MatrixXd& stiff_weights) const;
    std::vector<Vec> assemble_history(int n, const TemporalBasis& basis) const;

    const ProblemSpec* problem_;
    const SpatialDiscretization* spatial_;
    StepperOptions options_;
    DiscreteSolution solution_;
    StepDiagnostics diagnostics_;
    std::vector<char> constrained_mask_;
    int next_step_ = 1;
};

/// Interpolate the initial datum, then advance through every interval.
DiscreteSolution run_simulation(const ProblemSpec& problem, const TimePartition& partition,
                                const SpatialDiscretization& spatial, StepperOptions options = {},
                                StepDiagnostics* diagnostics = nullptr);

} // namespace gbhe
