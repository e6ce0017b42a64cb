#pragma once

#include "gbhe/quadrature.hpp"

#include <Eigen/Dense>

namespace gbhe {

/// Legendre polynomial values and first derivatives P_0..P_p at t in [-1,1],
/// by the three-term recurrence.
void legendre_eval(int p, double t, Eigen::VectorXd& values, Eigen::VectorXd& derivatives);

enum class TemporalBasisKind { legendre, monomial };

/// Polynomial basis of P_p on the reference interval [-1,1] used for the
/// DG-in-time trial and test spaces. The default is the Legendre basis
/// (phi_m(1) = 1, orthogonal); the monomial basis ((t+1)/2)^m spans the same
/// space and exists for cross-checking the solver against the coefficient
/// form of the scheme.
class TemporalBasis {
public:
    explicit TemporalBasis(int degree, TemporalBasisKind kind = TemporalBasisKind::legendre);

    int degree() const { return degree_; }
    int size() const { return degree_ + 1; }
    TemporalBasisKind kind() const { return kind_; }

    /// values(m) = phi_m(t), derivatives(m) = phi_m'(t), t in [-1,1]
    void eval(double t, Eigen::VectorXd& values, Eigen::VectorXd& derivatives) const;
    Eigen::VectorXd values(double t) const;

    /// traces at the interval ends
    const Eigen::VectorXd& left_values() const { return left_; }
    const Eigen::VectorXd& right_values() const { return right_; }

    /// reference mass matrix int_{-1}^{1} phi_m phi_l dt
    const Eigen::MatrixXd& reference_mass() const { return mass_; }

private:
    int degree_;
    TemporalBasisKind kind_;
    Eigen::VectorXd left_, right_;
    Eigen::MatrixXd mass_;
};

/// Change of basis: column j holds the Legendre coefficients of the
/// reference monomial ((t+1)/2)^j, so that psi_j = sum_m S(m,j) phi_m.
Eigen::MatrixXd monomial_to_legendre(int p);

/// Nodal Lagrange shape functions of degree r on the reference simplex
/// (interval [0,1] or unit triangle), equispaced lattice nodes. Degrees
/// 1..3 are supported; the node layout is vertices first, then edge nodes
/// in local edge order, then interior nodes.
class SpatialBasis {
public:
    SpatialBasis(ElementFamily family, int degree);

    ElementFamily family() const { return family_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(nodes_.size()); }

    const std::vector<QuadPoint>& nodes() const { return nodes_; }

    /// Shape values and reference gradients at (x,y); y ignored for intervals.
    void eval(double x, double y, Eigen::VectorXd& N, Eigen::MatrixXd& dN) const;

private:
    ElementFamily family_;
    int degree_;
    std::vector<QuadPoint> nodes_;
    std::vector<QuadPoint> monomials_; // exponents (a,b) per monomial
    Eigen::MatrixXd coeffs_;           // column i: monomial coefficients of N_i
};

} // namespace gbhe
