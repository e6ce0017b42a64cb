#include "gbhe/timestepper.hpp"

#include <Eigen/SparseLU>

#include <cmath>

namespace gbhe {

NewtonDivergence::NewtonDivergence(int interval_, double residual_norm_)
    : std::runtime_error("Newton diverged on interval " + std::to_string(interval_) +
                         " (residual " + std::to_string(residual_norm_) + ")"),
      interval(interval_),
      residual_norm(residual_norm_)
{
}

Vec DiscreteSolution::trace(int n) const
{
    if (n == 0) return initial;
    const Eigen::MatrixXd& b = blocks.at(n - 1);
    const TemporalBasis basis(static_cast<int>(b.cols()) - 1, basis_kind);
    return b * basis.right_values();
}

Vec DiscreteSolution::evaluate(int n, double tref) const
{
    const Eigen::MatrixXd& b = blocks.at(n - 1);
    const TemporalBasis basis(static_cast<int>(b.cols()) - 1, basis_kind);
    return b * basis.values(tref);
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd>
temporal_coupling_matrices(int p, double k, const TemporalBasis& basis)
{
    Eigen::MatrixXd C = basis.left_values() * basis.left_values().transpose();
    const QuadratureRule gl = gauss_legendre(p + 1);
    Eigen::VectorXd v, d;
    for (int q = 0; q < gl.size(); ++q) {
        basis.eval(gl.points[q].x, v, d);
        C.noalias() += gl.weights[q] * v * d.transpose(); // C_lm += int phi_m' phi_l
    }
    Eigen::MatrixXd T = 0.5 * k * basis.reference_mass();
    return {C, T};
}

TimeStepper::TimeStepper(const ProblemSpec& problem, const TimePartition& partition,
                         const SpatialDiscretization& spatial, StepperOptions options)
    : problem_(&problem), spatial_(&spatial), options_(options)
{
    problem.validate();
    partition.validate();
    solution_.partition = partition;
    solution_.basis_kind = options.temporal_basis;
    solution_.initial = spatial.initial_coefficients();
    constrained_mask_.assign(spatial.n_dof(), 0);
    for (int b : spatial.constrained_dofs()) constrained_mask_[b] = 1;
    for (int b : spatial.constrained_dofs()) solution_.initial(b) = 0.0;
}

void TimeStepper::build_linear_part(int n, const TemporalBasis& basis,
                                    std::vector<Eigen::Triplet<double>>& out,
                                    Eigen::MatrixXd& mass_weights,
                                    Eigen::MatrixXd& stiff_weights) const
{
    const TimePartition& part = solution_.partition;
    const int p = basis.degree();
    const double k = part.step(n);
    const KernelSpec& kernel = problem_->kernel;

    auto [C, T] = temporal_coupling_matrices(p, k, basis);

    // temporal weights of the mass pairing: classical jump+derivative, or the
    // Caputo operator (distributional derivative, diagonal block + jump column)
    if (kernel.caputo()) {
        mass_weights = caputo_smooth_block(part, n, n, kernel.caputo_mu, basis, basis);
        const Eigen::VectorXd jump = caputo_jump_coeffs(part, n, n, kernel.caputo_mu, basis);
        mass_weights.noalias() += jump * basis.left_values().transpose();
    } else {
        mass_weights = C;
    }

    stiff_weights = problem_->nu * T;
    if (kernel.has_memory())
        stiff_weights.noalias() +=
            kernel.eta * moment_block(part, n, n, kernel.sigma, basis, basis);

    const int S = spatial_->n_dof();
    const SpMat& M = spatial_->mass();
    const SpMat& A = spatial_->diffusion();
    out.clear();
    for (int l = 0; l <= p; ++l)
        for (int m = 0; m <= p; ++m) {
            const double cm = mass_weights(l, m);
            const double ca = stiff_weights(l, m);
            for (int col = 0; col < M.outerSize(); ++col)
                for (SpMat::InnerIterator it(M, col); it; ++it)
                    if (!constrained_mask_[it.row()])
                        out.emplace_back(l * S + int(it.row()), m * S + col, cm * it.value());
            for (int col = 0; col < A.outerSize(); ++col)
                for (SpMat::InnerIterator it(A, col); it; ++it)
                    if (!constrained_mask_[it.row()])
                        out.emplace_back(l * S + int(it.row()), m * S + col, ca * it.value());
        }
    for (int l = 0; l <= p; ++l)
        for (int b : spatial_->constrained_dofs()) out.emplace_back(l * S + b, l * S + b, 1.0);
}

std::vector<Vec> TimeStepper::assemble_history(int n, const TemporalBasis& basis) const
{
    const TimePartition& part = solution_.partition;
    const int p = basis.degree();
    const int S = spatial_->n_dof();
    const KernelSpec& kernel = problem_->kernel;
    std::vector<Vec> H(p + 1, Vec::Zero(S));

    if (kernel.has_memory() && n > 1) {
        // eta * sum_{j<n} W^{(n,j)} acting through the diffusion operator
        std::vector<Eigen::MatrixXd> blocks(n - 1);
        for (int j = 1; j < n; ++j) {
            const TemporalBasis src(part.degrees[j - 1], options_.temporal_basis);
            blocks[j - 1] = moment_block(part, n, j, kernel.sigma, basis, src);
        }
        const auto agg =
            history_accumulate(blocks, {solution_.blocks.begin(), solution_.blocks.begin() + (n - 1)},
                               1.0, p, S);
        for (int l = 0; l <= p; ++l) H[l] += kernel.eta * (spatial_->diffusion() * agg[l]);
    }

    if (kernel.caputo() && n > 1) {
        // smooth part against phi' of each past interval, plus jump terms
        Vec agg_l;
        for (int l = 0; l <= p; ++l) {
            agg_l = Vec::Zero(S);
            for (int j = 1; j < n; ++j) {
                const TemporalBasis src(part.degrees[j - 1], options_.temporal_basis);
                if (src.degree() > 0) {
                    const Eigen::MatrixXd Wc =
                        caputo_smooth_block(part, n, j, kernel.caputo_mu, basis, src);
                    for (int m = 0; m <= src.degree(); ++m)
                        agg_l += Wc(l, m) * solution_.blocks[j - 1].col(m);
                }
                const Eigen::VectorXd jc =
                    caputo_jump_coeffs(part, n, j, kernel.caputo_mu, basis);
                const Vec jump = solution_.blocks[j - 1] * src.left_values() -
                                 (j == 1 ? solution_.initial : solution_.trace(j - 1));
                agg_l += jc(l) * jump;
            }
            H[l] += spatial_->mass() * agg_l;
        }
    }
    return H;
}

const Eigen::MatrixXd& TimeStepper::solve_step(int n)
{
    if (n != next_step_)
        throw std::logic_error("TimeStepper: steps must be solved in order");
    const TimePartition& part = solution_.partition;
    const int p = part.degrees[n - 1];
    const double k = part.step(n);
    const int S = spatial_->n_dof();
    const TemporalBasis basis(p, options_.temporal_basis);
    const KernelSpec& kernel = problem_->kernel;

    std::vector<Eigen::Triplet<double>> linear_trips;
    Eigen::MatrixXd mass_weights, stiff_weights;
    build_linear_part(n, basis, linear_trips, mass_weights, stiff_weights);

    const std::vector<Vec> history = assemble_history(n, basis);

    // right-hand side: coupling to U^{n-1} plus the forcing moments
    const Vec prev = solution_.trace(n - 1);
    const Vec mass_prev = spatial_->mass() * prev;
    Eigen::VectorXd prev_weights;
    if (kernel.caputo())
        prev_weights = caputo_jump_coeffs(part, n, n, kernel.caputo_mu, basis);
    else
        prev_weights = basis.left_values();

    std::vector<Vec> rhs(p + 1, Vec::Zero(S));
    for (int l = 0; l <= p; ++l) rhs[l] = prev_weights(l) * mass_prev;
    if (problem_->forcing) {
        const int nf = options_.forcing_quad_points > 0 ? options_.forcing_quad_points : p + 3;
        const QuadratureRule gl = gauss_legendre(nf);
        for (int q = 0; q < gl.size(); ++q) {
            const double tref = gl.points[q].x;
            const double t = part.nodes[n - 1] + 0.5 * k * (tref + 1.0);
            const Vec F = spatial_->load(t);
            const Eigen::VectorXd phi = basis.values(tref);
            for (int l = 0; l <= p; ++l) rhs[l] += (0.5 * k * gl.weights[q] * phi(l)) * F;
        }
    }

    // Newton on the (p+1)*S block system
    const int nq = options_.nonlinear_quad_points > 0 ? options_.nonlinear_quad_points : p + 2;
    const QuadratureRule glq = gauss_legendre(nq);
    std::vector<Eigen::VectorXd> phi_q(glq.size());
    for (int q = 0; q < glq.size(); ++q) phi_q[q] = basis.values(glq.points[q].x);

    Eigen::VectorXd x = Eigen::VectorXd::Zero((p + 1) * S);
    x.segment(0, S) = prev; // flat-in-time initial guess
    for (int b : spatial_->constrained_dofs())
        for (int l = 0; l <= p; ++l) x(l * S + b) = 0.0;

    Eigen::SparseLU<SpMat> lu;
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<double> res_history;
    double res0 = -1.0;
    int iterations = 0;
    bool converged = false;

    Vec u_q(S), g_q(S);
    SpMat G_q;
    for (int iter = 0; iter <= options_.newton.max_iter; ++iter) {
        // residual and Jacobian triplets at the current state
        trips = linear_trips;
        Eigen::VectorXd R = Eigen::VectorXd::Zero((p + 1) * S);
        for (int l = 0; l <= p; ++l) {
            Vec Rl = history[l] - rhs[l];
            for (int m = 0; m <= p; ++m) {
                const Vec um = x.segment(m * S, S);
                Rl += mass_weights(l, m) * (spatial_->mass() * um);
                Rl += stiff_weights(l, m) * (spatial_->diffusion() * um);
            }
            R.segment(l * S, S) = Rl;
        }
        for (int q = 0; q < glq.size(); ++q) {
            u_q.setZero();
            for (int m = 0; m <= p; ++m) u_q += phi_q[q](m) * x.segment(m * S, S);
            spatial_->nonlinear_terms(u_q, g_q, &G_q);
            const double wq = 0.5 * k * glq.weights[q];
            for (int l = 0; l <= p; ++l) {
                R.segment(l * S, S) += (wq * phi_q[q](l)) * g_q;
                for (int m = 0; m <= p; ++m) {
                    const double c = wq * phi_q[q](l) * phi_q[q](m);
                    for (int col = 0; col < G_q.outerSize(); ++col)
                        for (SpMat::InnerIterator it(G_q, col); it; ++it)
                            if (!constrained_mask_[it.row()])
                                trips.emplace_back(l * S + int(it.row()), m * S + col,
                                                   c * it.value());
                }
            }
        }
        for (int l = 0; l <= p; ++l)
            for (int b : spatial_->constrained_dofs()) R(l * S + b) = x(l * S + b);

        const double rnorm = R.norm();
        res_history.push_back(rnorm);
        if (res0 < 0.0) res0 = rnorm;
        if (rnorm <= std::max(options_.newton.abs_tol, options_.newton.rel_tol * res0)) {
            converged = true;
            iterations = iter;
            break;
        }
        if (iter == options_.newton.max_iter) break;

        SpMat J((p + 1) * S, (p + 1) * S);
        J.setFromTriplets(trips.begin(), trips.end());
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw std::runtime_error("TimeStepper: singular linear system on interval " +
                                     std::to_string(n));
        x -= lu.solve(R);
        ++iterations;
    }
    if (!converged) throw NewtonDivergence(n, res_history.back());

    diagnostics_.newton_iterations.push_back(iterations);
    diagnostics_.residual_history.push_back(res_history);

    Eigen::MatrixXd block(S, p + 1);
    for (int m = 0; m <= p; ++m) block.col(m) = x.segment(m * S, S);
    solution_.blocks.push_back(std::move(block));
    ++next_step_;
    return solution_.blocks.back();
}

const DiscreteSolution& TimeStepper::run()
{
    while (next_step_ <= solution_.partition.n_intervals()) solve_step(next_step_);
    return solution_;
}

DiscreteSolution run_simulation(const ProblemSpec& problem, const TimePartition& partition,
                                const SpatialDiscretization& spatial, StepperOptions options,
                                StepDiagnostics* diagnostics)
{
    TimeStepper stepper(problem, partition, spatial, options);
    stepper.run();
    if (diagnostics) *diagnostics = stepper.diagnostics();
    return stepper.solution();
}

} // namespace gbhe
