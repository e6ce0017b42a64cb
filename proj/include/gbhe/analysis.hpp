#pragma once

#include "gbhe/timestepper.hpp"

#include <functional>

namespace gbhe {

/// hp projection onto P_p on [-1,1] in the Legendre basis: endpoint match at
/// the right end plus orthogonality to P_{p-1}. Coefficients below p are the
/// truncated Legendre coefficients; coefficient p is fixed by the endpoint.
Eigen::VectorXd hp_project_scalar(const std::function<double(double)>& u_ref, int p);

/// Same projection for a dof-vector-valued function on a physical interval
/// [a,b]; returns an S x (p+1) coefficient block.
Eigen::MatrixXd hp_project(const std::function<Vec(double)>& u, double a, double b, int p);

/// Piecewise hp interpolant of a dof-valued time function.
struct PiecewisePolynomialInTime {
    TimePartition partition;
    std::vector<Eigen::MatrixXd> blocks;

    static PiecewisePolynomialInTime project(const std::function<Vec(double)>& u,
                                             const TimePartition& partition);
    Vec evaluate(int n, double tref) const;
};

struct ErrorNorms {
    double l2_final = 0.0;
    double h1_final = 0.0;        // full norm
    double h1semi_final = 0.0;    // seminorm (broken for DG)
    double dg_final = 0.0;        // DG norm; equals h1semi for conforming
    double l2h1_spacetime = 0.0;  // sqrt(int_0^T |e|_{H1}^2 dt)
    double linf_l2 = 0.0;         // sup-in-time L2, sampled at Chebyshev points
};

/// Error measures of a discrete solution against a closed-form solution.
/// Space-time integrals use p+2 Gauss points per interval; the sup norm is
/// sampled at p+3 Chebyshev points per interval.
ErrorNorms error_norms(const DiscreteSolution& solution, const SpatialDiscretization& spatial,
                       const SpaceTimeFn& u, const SpaceTimeFn& ux, const SpaceTimeFn& uy);

/// r = log(e1/e2) / log(h1/h2) per refinement pair; NaN where an error
/// underflows 1e-14 or the mesh sizes do not decrease.
std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& h);

struct InterpolationStudyRow {
    double k = 0.0;
    int p = 0;
    double sup_error = 0.0;   // sup-in-time L2 distance of Pi u from u
    double l2h1_error = 0.0;  // sqrt(int |Pi u - u|_{H1}^2 dt)
};

/// Temporal-projection error decay of the hp interpolant for a dof-valued
/// u(t), one row per partition.
std::vector<InterpolationStudyRow>
interpolation_error_study(const std::function<Vec(double)>& u, const SpatialDiscretization& spatial,
                          const std::vector<TimePartition>& partitions);

} // namespace gbhe
