#include "gbhe/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace gbhe {

namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
// matrix, weights are mu0 * (first eigenvector component)^2.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag,
                            double mu0)
{
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag(i);
        if (i + 1 < n) {
            J(i, i + 1) = offdiag(i);
            J(i + 1, i) = offdiag(i);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadratureRule rule;
    rule.dim = 1;
    rule.points.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.points[i].x = es.eigenvalues()(i);
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    rule.exactness = 2 * n - 1;
    return rule;
}

double log_beta(double a, double b)
{
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

} // namespace

QuadratureRule gauss_legendre(int n)
{
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd e(n > 1 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) e(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
    return golub_welsch(d, e, 2.0);
}

QuadratureRule gauss_jacobi_01(int n, double alpha, double beta)
{
    if (n < 1) throw std::invalid_argument("gauss_jacobi_01: need n >= 1");
    if (alpha <= -1.0 || beta <= -1.0)
        throw std::invalid_argument("gauss_jacobi_01: exponents must be > -1");

    const double ab = alpha + beta;
    Eigen::VectorXd d(n);
    Eigen::VectorXd e(n > 1 ? n - 1 : 0);
    d(0) = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        d(k) = (beta * beta - alpha * alpha) / den;
        const double t = 2.0 * k + ab;
        const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        e(k - 1) = std::sqrt(num / (t * t * (t + 1.0) * (t - 1.0)));
    }
    // total mass on [-1,1] of (1-x)^alpha (1+x)^beta
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_beta(alpha + 1.0, beta + 1.0));

    QuadratureRule rule = golub_welsch(d, e, mu0);
    // map [-1,1] -> [0,1]: s = (1+x)/2, weight (1-s)^alpha s^beta
    const double scale = std::pow(2.0, -ab - 1.0);
    for (int i = 0; i < rule.size(); ++i) {
        rule.points[i].x = 0.5 * (1.0 + rule.points[i].x);
        rule.weights[i] *= scale;
    }
    return rule;
}

QuadratureRule gauss_jacobi_singular(int n, double sigma)
{
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::invalid_argument("gauss_jacobi_singular: sigma must lie in (0,1)");
    return gauss_jacobi_01(n, 0.0, -sigma);
}

QuadratureRule simplex_quadrature(ElementFamily family, int degree)
{
    if (degree < 0) throw std::invalid_argument("simplex_quadrature: negative degree");

    if (family == ElementFamily::interval) {
        QuadratureRule gl = gauss_legendre(degree / 2 + 1);
        QuadratureRule rule;
        rule.dim = 1;
        rule.exactness = gl.exactness;
        rule.points.resize(gl.size());
        rule.weights.resize(gl.size());
        for (int i = 0; i < gl.size(); ++i) {
            rule.points[i].x = 0.5 * (1.0 + gl.points[i].x);
            rule.weights[i] = 0.5 * gl.weights[i];
        }
        return rule;
    }

    if (degree > 20) throw std::invalid_argument("simplex_quadrature: triangle degree > 20");

    QuadratureRule rule;
    rule.dim = 2;
    if (degree <= 1) {
        rule.points = {{1.0 / 3.0, 1.0 / 3.0}};
        rule.weights = {0.5};
        rule.exactness = 1;
        return rule;
    }
    if (degree == 2) {
        // edge-midpoint rule
        rule.points = {{0.5, 0.0}, {0.5, 0.5}, {0.0, 0.5}};
        rule.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
        rule.exactness = 2;
        return rule;
    }

    // Conical product: int_T f = int_0^1 int_0^1 f(xi*(1-eta), eta) (1-eta) dxi deta
    const int n = degree / 2 + 1;
    const QuadratureRule gx = simplex_quadrature(ElementFamily::interval, degree);
    const QuadratureRule gy = gauss_jacobi_01(n, 1.0, 0.0);
    for (int j = 0; j < gy.size(); ++j) {
        const double eta = gy.points[j].x;
        for (int i = 0; i < gx.size(); ++i) {
            const double xi = gx.points[i].x;
            rule.points.push_back({xi * (1.0 - eta), eta});
            rule.weights.push_back(gx.weights[i] * gy.weights[j]);
        }
    }
    rule.exactness = degree;
    return rule;
}

} // namespace gbhe
