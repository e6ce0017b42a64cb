#include "gbhe/memory_weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gbhe {

TimePartition TimePartition::uniform(int n_steps, double t_end, int degree, double t_begin)
{
    if (n_steps < 1) throw std::invalid_argument("TimePartition: need at least one step");
    TimePartition p;
    p.nodes.resize(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i)
        p.nodes[i] = t_begin + (t_end - t_begin) * i / n_steps;
    p.degrees.assign(n_steps, degree);
    p.validate();
    return p;
}

double TimePartition::max_step() const
{
    double k = 0.0;
    for (int n = 1; n <= n_intervals(); ++n) k = std::max(k, step(n));
    return k;
}

void TimePartition::validate() const
{
    if (nodes.size() != degrees.size() + 1)
        throw std::invalid_argument("TimePartition: node/degree size mismatch");
    for (size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("TimePartition: nodes must be strictly increasing");
    for (int p : degrees)
        if (p < 0) throw std::invalid_argument("TimePartition: negative degree");
}

namespace {

// Integrates int tau^-sigma Q(tau) dtau over [0, hi] split at the given
// breakpoints, where Q is supplied per tau (piecewise polynomial). The piece
// touching zero uses Gauss-Jacobi (exact for polynomial Q); pieces away from
// zero use Gauss-Legendre on geometrically refined segments.
template <typename QFn>
void integrate_singular_pieces(const std::vector<double>& breaks, double sigma, int poly_degree,
                               double scale_hint, const QFn& accumulate_q)
{
    const double tiny = 1e-14 * std::max(scale_hint, 1.0);
    const int nq_jacobi = poly_degree / 2 + 2;
    const QuadratureRule jac = gauss_jacobi_01(nq_jacobi, 0.0, -sigma);
    const QuadratureRule gl = gauss_legendre(16);

    for (size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double t0 = breaks[p], t1 = breaks[p + 1];
        if (t1 - t0 < tiny) continue;
        if (t0 < tiny) {
            // tau = t1 * x, kernel weight folded into the rule
            const double fac = std::pow(t1, 1.0 - sigma);
            for (int q = 0; q < jac.size(); ++q)
                accumulate_q(t1 * jac.points[q].x, fac * jac.weights[q]);
        } else {
            double c = t0;
            while (c < t1 - tiny) {
                const double d = std::min(2.0 * c, t1);
                for (int q = 0; q < gl.size(); ++q) {
                    const double tau = 0.5 * (c + d) + 0.5 * (d - c) * gl.points[q].x;
                    const double w = 0.5 * (d - c) * gl.weights[q] * std::pow(tau, -sigma);
                    accumulate_q(tau, w);
                }
                c = d;
            }
        }
    }
}

std::vector<double> tau_breakpoints(double tn1, double tn, double tj1, double tj)
{
    const double lo = std::max(0.0, tn1 - tj);
    const double hi = tn - tj1;
    std::vector<double> b{lo, tn1 - tj1, tn - tj, hi};
    for (double& v : b) v = std::clamp(v, lo, hi);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [hi](double a, double c) { return std::abs(a - c) < 1e-15 * std::max(hi, 1.0); }),
            b.end());
    return b;
}

} // namespace

Eigen::MatrixXd moment_block(const TimePartition& partition, int n, int j, double sigma,
                             const TemporalBasis& test_basis, const TemporalBasis& src_basis,
                             bool src_derivative)
{
    if (j < 1 || j > n || n > partition.n_intervals())
        throw std::invalid_argument("moment_block: need 1 <= j <= n <= N");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("moment_block: sigma must lie in (0,1)");

    const double tn1 = partition.nodes[n - 1], tn = partition.nodes[n];
    const double tj1 = partition.nodes[j - 1], tj = partition.nodes[j];
    const double kn = tn - tn1, kj = tj - tj1;
    const int pl = test_basis.degree(), pm = src_basis.degree();

    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(pl + 1, pm + 1);
    const QuadratureRule gl_inner = gauss_legendre((pl + pm) / 2 + 2);

    const std::vector<double> breaks = tau_breakpoints(tn1, tn, tj1, tj);
    Eigen::VectorXd phi_l, dphi_l, phi_m, dphi_m;

    // accumulate W += w * Q(tau), Q(tau)_{lm} = int_{tlo}^{thi} phi_l(t) src_m(t - tau) dt
    auto accumulate = [&](double tau, double w) {
        const double tlo = std::max(tn1, tj1 + tau);
        const double thi = std::min(tn, tj + tau);
        if (thi <= tlo) return;
        for (int q = 0; q < gl_inner.size(); ++q) {
            const double t = 0.5 * (tlo + thi) + 0.5 * (thi - tlo) * gl_inner.points[q].x;
            const double wt = 0.5 * (thi - tlo) * gl_inner.weights[q] * w;
            test_basis.eval(2.0 * (t - tn1) / kn - 1.0, phi_l, dphi_l);
            src_basis.eval(2.0 * (t - tau - tj1) / kj - 1.0, phi_m, dphi_m);
            const Eigen::VectorXd& src = src_derivative ? dphi_m : phi_m;
            const double dscale = src_derivative ? 2.0 / kj : 1.0;
            W.noalias() += (wt * dscale) * phi_l * src.transpose();
        }
    };

    integrate_singular_pieces(breaks, sigma, pl + pm + 1, partition.t_end(), accumulate);
    return W;
}

double omega_weight(const TimePartition& partition, int n, int j, double sigma)
{
    const TemporalBasis p0(0);
    return moment_block(partition, n, j, sigma, p0, p0)(0, 0) /
           (partition.step(n) * partition.step(j));
}

Eigen::VectorXd caputo_jump_coeffs(const TimePartition& partition, int n, int j, double mu,
                                   const TemporalBasis& test_basis)
{
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("caputo_jump_coeffs: mu must lie in (0,1)");
    if (j < 1 || j > n || n > partition.n_intervals())
        throw std::invalid_argument("caputo_jump_coeffs: need 1 <= j <= n <= N");

    const double tn1 = partition.nodes[n - 1], tn = partition.nodes[n];
    const double tj1 = partition.nodes[j - 1];
    const double kn = tn - tn1;
    const int pl = test_basis.degree();

    Eigen::VectorXd out = Eigen::VectorXd::Zero(pl + 1);
    Eigen::VectorXd phi, dphi;
    // tau = t - t_{j-1} ranges over [tn1 - tj1, tn - tj1]
    std::vector<double> breaks{tn1 - tj1, tn - tj1};
    auto accumulate = [&](double tau, double w) {
        const double t = tau + tj1;
        test_basis.eval(2.0 * (t - tn1) / kn - 1.0, phi, dphi);
        out += w * phi;
    };
    integrate_singular_pieces(breaks, mu, pl, partition.t_end(), accumulate);
    return out / std::tgamma(1.0 - mu);
}

Eigen::MatrixXd caputo_smooth_block(const TimePartition& partition, int n, int j, double mu,
                                    const TemporalBasis& test_basis, const TemporalBasis& src_basis)
{
    if (!(mu > 0.0 && mu < 1.0))
        throw std::invalid_argument("caputo_smooth_block: mu must lie in (0,1)");
    return moment_block(partition, n, j, mu, test_basis, src_basis, true) /
           std::tgamma(1.0 - mu);
}

std::vector<Eigen::VectorXd> history_accumulate(const std::vector<Eigen::MatrixXd>& blocks,
                                                const std::vector<Eigen::MatrixXd>& actions,
                                                double eta, int p_n, Eigen::Index n_dof)
{
    if (blocks.size() != actions.size())
        throw std::invalid_argument("history_accumulate: blocks/actions size mismatch");
    std::vector<Eigen::VectorXd> out(p_n + 1, Eigen::VectorXd::Zero(n_dof));
    if (eta == 0.0) return out;
    for (size_t j = 0; j < blocks.size(); ++j) {
        const Eigen::MatrixXd& W = blocks[j];
        const Eigen::MatrixXd& V = actions[j];
        if (W.rows() != p_n + 1 || W.cols() != V.cols())
            throw std::invalid_argument("history_accumulate: block shape mismatch");
        for (int l = 0; l <= p_n; ++l)
            for (int m = 0; m < W.cols(); ++m) out[l].noalias() += (eta * W(l, m)) * V.col(m);
    }
    return out;
}

} // namespace gbhe
