#pragma once

#include "gbhe/polybasis.hpp"
#include "gbhe/problem.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

namespace gbhe {

/// Partition of (0,T] into intervals J_n = (t_{n-1}, t_n] with a temporal
/// polynomial degree per interval.
struct TimePartition {
    std::vector<double> nodes;   // t_0 < t_1 < ... < t_N
    std::vector<int> degrees;    // p_1 .. p_N

    static TimePartition uniform(int n_steps, double t_end, int degree, double t_begin = 0.0);

    int n_intervals() const { return static_cast<int>(degrees.size()); }
    double step(int n) const { return nodes[n] - nodes[n - 1]; }  // 1-based
    double t_end() const { return nodes.back(); }
    double max_step() const;
    void validate() const;
};

/// Moment block W^{(n,j)} of the weakly singular kernel K(t) = t^-sigma:
///   W_{lm} = int_{J_n} int_{J_j cap [0,t]} K(t-s) phi_m^{(j)}(s) phi_l^{(n)}(t) ds dt,
/// 1 <= j <= n. With src_derivative the source basis is differentiated in s
/// (used by the Caputo smooth part). Exact for the polynomial factors; the
/// singular tau-piece integrates by Gauss-Jacobi, regular pieces by
/// geometrically composited Gauss-Legendre.
Eigen::MatrixXd moment_block(const TimePartition& partition, int n, int j, double sigma,
                             const TemporalBasis& test_basis, const TemporalBasis& src_basis,
                             bool src_derivative = false);

/// Convenience: the degree-0 weight omega_{nj} = W^{(n,j)}_{00} / (k_n k_j).
double omega_weight(const TimePartition& partition, int n, int j, double sigma);

/// Caputo jump coefficients (1/Gamma(1-mu)) int_{J_n} (t - t_{j-1})^-mu phi_l(t) dt,
/// multiplying the solution jump at t_{j-1}.
Eigen::VectorXd caputo_jump_coeffs(const TimePartition& partition, int n, int j, double mu,
                                   const TemporalBasis& test_basis);

/// Smooth Caputo moment block: moment_block with kernel t^-mu / Gamma(1-mu)
/// applied to the time derivative of the source interval's polynomial.
Eigen::MatrixXd caputo_smooth_block(const TimePartition& partition, int n, int j, double mu,
                                    const TemporalBasis& test_basis, const TemporalBasis& src_basis);

/// History sum eta * sum_j sum_m W^{(n,j)}_{lm} v_m^{(j)} for precomputed
/// stiffness actions v_m^{(j)} = A U_m^{(j)}; returns one vector per test
/// index l. blocks[j-1] pairs with actions[j-1].
std::vector<Eigen::VectorXd> history_accumulate(const std::vector<Eigen::MatrixXd>& blocks,
                                                const std::vector<Eigen::MatrixXd>& actions,
                                                double eta, int p_n, Eigen::Index n_dof);

} // namespace gbhe
