#include "gbhe/analysis.hpp"

#include <cmath>
#include <limits>

namespace gbhe {

Eigen::VectorXd hp_project_scalar(const std::function<double(double)>& u_ref, int p)
{
    auto wrapped = [&](double t) { return Vec::Constant(1, u_ref(t)); };
    return hp_project(wrapped, -1.0, 1.0, p).row(0);
}

Eigen::MatrixXd hp_project(const std::function<Vec(double)>& u, double a, double b, int p)
{
    const QuadratureRule gl = gauss_legendre(p + 4);
    auto to_phys = [&](double tref) { return 0.5 * (a + b) + 0.5 * (b - a) * tref; };

    Vec u_right = u(b);
    Eigen::MatrixXd block(u_right.size(), p + 1);
    block.setZero();
    Eigen::VectorXd leg, dleg;
    for (int q = 0; q < gl.size(); ++q) {
        legendre_eval(p, gl.points[q].x, leg, dleg);
        const Vec uq = u(to_phys(gl.points[q].x));
        for (int m = 0; m < p; ++m)
            block.col(m) += (gl.weights[q] * leg(m) * (2.0 * m + 1.0) / 2.0) * uq;
    }
    // endpoint condition: phi_m(1) = 1 for Legendre
    Vec tail = u_right;
    for (int m = 0; m < p; ++m) tail -= block.col(m);
    block.col(p) = tail;
    return block;
}

PiecewisePolynomialInTime PiecewisePolynomialInTime::project(const std::function<Vec(double)>& u,
                                                             const TimePartition& partition)
{
    PiecewisePolynomialInTime out;
    out.partition = partition;
    for (int n = 1; n <= partition.n_intervals(); ++n)
        out.blocks.push_back(
            hp_project(u, partition.nodes[n - 1], partition.nodes[n], partition.degrees[n - 1]));
    return out;
}

Vec PiecewisePolynomialInTime::evaluate(int n, double tref) const
{
    const Eigen::MatrixXd& b = blocks.at(n - 1);
    Eigen::VectorXd leg, dleg;
    legendre_eval(static_cast<int>(b.cols()) - 1, tref, leg, dleg);
    return b * leg;
}

ErrorNorms error_norms(const DiscreteSolution& solution, const SpatialDiscretization& spatial,
                       const SpaceTimeFn& u, const SpaceTimeFn& ux, const SpaceTimeFn& uy)
{
    const TimePartition& part = solution.partition;
    const int N = part.n_intervals();
    ErrorNorms out;

    auto at_time = [](const SpaceTimeFn& f, double t) {
        return [&f, t](double x, double y) { return f(x, y, t); };
    };

    const double T = part.t_end();
    const SpatialErrors fin = spatial.errors_against(solution.trace(N), at_time(u, T),
                                                     at_time(ux, T), at_time(uy, T));
    out.l2_final = fin.l2;
    out.h1semi_final = fin.h1_seminorm;
    out.h1_final = fin.h1();
    out.dg_final = fin.dg();

    double st = 0.0;
    double sup = 0.0;
    for (int n = 1; n <= N; ++n) {
        const double k = part.step(n);
        const int p = part.degrees[n - 1];
        const QuadratureRule gl = gauss_legendre(p + 2);
        for (int q = 0; q < gl.size(); ++q) {
            const double t = part.nodes[n - 1] + 0.5 * k * (gl.points[q].x + 1.0);
            const SpatialErrors e = spatial.errors_against(
                solution.evaluate(n, gl.points[q].x), at_time(u, t), at_time(ux, t), at_time(uy, t));
            st += 0.5 * k * gl.weights[q] * e.h1_seminorm * e.h1_seminorm;
        }
        for (int i = 0; i < p + 3; ++i) {
            const double tref = std::cos(M_PI * i / (p + 2));
            const double t = part.nodes[n - 1] + 0.5 * k * (tref + 1.0);
            const SpatialErrors e = spatial.errors_against(
                solution.evaluate(n, tref), at_time(u, t), at_time(ux, t), at_time(uy, t));
            sup = std::max(sup, e.l2);
        }
    }
    out.l2h1_spacetime = std::sqrt(st);
    out.linf_l2 = sup;
    return out;
}

std::vector<double> convergence_rates(const std::vector<double>& errors,
                                      const std::vector<double>& h)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> rates;
    for (size_t i = 1; i < errors.size(); ++i) {
        if (errors[i - 1] < 1e-14 || errors[i] < 1e-14 || !(h[i] < h[i - 1])) {
            rates.push_back(nan);
            continue;
        }
        rates.push_back(std::log(errors[i - 1] / errors[i]) / std::log(h[i - 1] / h[i]));
    }
    return rates;
}

std::vector<InterpolationStudyRow>
interpolation_error_study(const std::function<Vec(double)>& u, const SpatialDiscretization& spatial,
                          const std::vector<TimePartition>& partitions)
{
    std::vector<InterpolationStudyRow> rows;
    for (const TimePartition& part : partitions) {
        const PiecewisePolynomialInTime pi = PiecewisePolynomialInTime::project(u, part);
        InterpolationStudyRow row;
        row.k = part.max_step();
        row.p = part.degrees.front();
        double st = 0.0, sup = 0.0;
        for (int n = 1; n <= part.n_intervals(); ++n) {
            const double k = part.step(n);
            const int p = part.degrees[n - 1];
            const QuadratureRule gl = gauss_legendre(p + 4);
            for (int q = 0; q < gl.size(); ++q) {
                const double t = part.nodes[n - 1] + 0.5 * k * (gl.points[q].x + 1.0);
                const Vec diff = pi.evaluate(n, gl.points[q].x) - u(t);
                const double semi = spatial.energy_seminorm(diff);
                st += 0.5 * k * gl.weights[q] * semi * semi;
            }
            for (int i = 0; i < p + 4; ++i) {
                const double tref = std::cos(M_PI * i / (p + 3));
                const double t = part.nodes[n - 1] + 0.5 * k * (tref + 1.0);
                const Vec diff = pi.evaluate(n, tref) - u(t);
                sup = std::max(sup, std::sqrt(diff.dot(spatial.mass() * diff)));
            }
        }
        row.l2h1_error = std::sqrt(st);
        row.sup_error = sup;
        rows.push_back(row);
    }
    return rows;
}

} // namespace gbhe
