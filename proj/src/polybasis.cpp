#include "gbhe/polybasis.hpp"

#include <cmath>
#include <stdexcept>

namespace gbhe {

void legendre_eval(int p, double t, Eigen::VectorXd& values, Eigen::VectorXd& derivatives)
{
    values.resize(p + 1);
    derivatives.resize(p + 1);
    values(0) = 1.0;
    derivatives(0) = 0.0;
    if (p == 0) return;
    values(1) = t;
    derivatives(1) = 1.0;
    for (int k = 1; k < p; ++k) {
        values(k + 1) = ((2.0 * k + 1.0) * t * values(k) - k * values(k - 1)) / (k + 1.0);
        // P'_{k+1} = P'_{k-1} + (2k+1) P_k
        derivatives(k + 1) = derivatives(k - 1) + (2.0 * k + 1.0) * values(k);
    }
}

TemporalBasis::TemporalBasis(int degree, TemporalBasisKind kind)
    : degree_(degree), kind_(kind)
{
    if (degree < 0) throw std::invalid_argument("TemporalBasis: negative degree");
    Eigen::VectorXd d;
    left_.resize(size());
    right_.resize(size());
    Eigen::VectorXd v;
    eval(-1.0, v, d);
    left_ = v;
    eval(1.0, v, d);
    right_ = v;

    mass_ = Eigen::MatrixXd::Zero(size(), size());
    const QuadratureRule gl = gauss_legendre(degree + 1);
    for (int q = 0; q < gl.size(); ++q) {
        eval(gl.points[q].x, v, d);
        mass_ += gl.weights[q] * v * v.transpose();
    }
}

void TemporalBasis::eval(double t, Eigen::VectorXd& values, Eigen::VectorXd& derivatives) const
{
    if (kind_ == TemporalBasisKind::legendre) {
        legendre_eval(degree_, t, values, derivatives);
        return;
    }
    values.resize(size());
    derivatives.resize(size());
    const double theta = 0.5 * (t + 1.0);
    for (int j = 0; j <= degree_; ++j) {
        values(j) = std::pow(theta, j);
        derivatives(j) = j == 0 ? 0.0 : 0.5 * j * std::pow(theta, j - 1);
    }
}

Eigen::VectorXd TemporalBasis::values(double t) const
{
    Eigen::VectorXd v, d;
    eval(t, v, d);
    return v;
}

Eigen::MatrixXd monomial_to_legendre(int p)
{
    Eigen::MatrixXd S(p + 1, p + 1);
    const QuadratureRule gl = gauss_legendre(p + 1);
    Eigen::VectorXd leg, dleg;
    for (int j = 0; j <= p; ++j) {
        Eigen::VectorXd acc = Eigen::VectorXd::Zero(p + 1);
        for (int q = 0; q < gl.size(); ++q) {
            const double t = gl.points[q].x;
            legendre_eval(p, t, leg, dleg);
            acc += gl.weights[q] * std::pow(0.5 * (t + 1.0), j) * leg;
        }
        for (int m = 0; m <= p; ++m) S(m, j) = acc(m) * (2.0 * m + 1.0) / 2.0;
    }
    return S;
}

SpatialBasis::SpatialBasis(ElementFamily family, int degree)
    : family_(family), degree_(degree)
{
    if (degree < 1 || degree > 3)
        throw std::invalid_argument("SpatialBasis: degree must be 1..3");

    const double r = degree;
    if (family == ElementFamily::interval) {
        nodes_.push_back({0.0, 0.0});
        nodes_.push_back({1.0, 0.0});
        for (int i = 1; i < degree; ++i) nodes_.push_back({i / r, 0.0});
        for (int a = 0; a <= degree; ++a) monomials_.push_back({double(a), 0.0});
    } else {
        // vertices, then edges (v0-v1, v1-v2, v2-v0), then interior
        nodes_.push_back({0.0, 0.0});
        nodes_.push_back({1.0, 0.0});
        nodes_.push_back({0.0, 1.0});
        for (int i = 1; i < degree; ++i) nodes_.push_back({i / r, 0.0});
        for (int i = 1; i < degree; ++i) nodes_.push_back({1.0 - i / r, i / r});
        for (int i = 1; i < degree; ++i) nodes_.push_back({0.0, 1.0 - i / r});
        for (int a = 1; a < degree; ++a)
            for (int b = 1; a + b < degree; ++b) nodes_.push_back({a / r, b / r});
        for (int a = 0; a <= degree; ++a)
            for (int b = 0; a + b <= degree; ++b) monomials_.push_back({double(a), double(b)});
    }

    const int n = size();
    Eigen::MatrixXd V(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            V(i, j) = std::pow(nodes_[i].x, monomials_[j].x) * std::pow(nodes_[i].y, monomials_[j].y);
    coeffs_ = V.fullPivLu().solve(Eigen::MatrixXd::Identity(n, n));
}

void SpatialBasis::eval(double x, double y, Eigen::VectorXd& N, Eigen::MatrixXd& dN) const
{
    const int n = size();
    Eigen::VectorXd mono(n), dmx(n), dmy(n);
    for (int j = 0; j < n; ++j) {
        const double a = monomials_[j].x, b = monomials_[j].y;
        mono(j) = std::pow(x, a) * std::pow(y, b);
        dmx(j) = a == 0 ? 0.0 : a * std::pow(x, a - 1) * std::pow(y, b);
        dmy(j) = b == 0 ? 0.0 : b * std::pow(x, a) * std::pow(y, b - 1);
    }
    N = coeffs_.transpose() * mono;
    dN.resize(n, 2);
    dN.col(0) = coeffs_.transpose() * dmx;
    dN.col(1) = coeffs_.transpose() * dmy;
}

} // namespace gbhe
