#pragma once

#include "gbhe/mesh.hpp"
#include "gbhe/polybasis.hpp"
#include "gbhe/problem.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace gbhe {

using Vec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

/// Conforming Lagrange finite element space of degree r on a simplicial
/// mesh: shared vertex/edge dofs, element-local interior dofs. Immutable
/// after construction.
class FunctionSpace {
public:
    FunctionSpace(const Mesh& mesh, int degree);

    const Mesh& mesh() const { return *mesh_; }
    int degree() const { return degree_; }
    int n_dof() const { return n_dof_; }
    const SpatialBasis& basis() const { return basis_; }

    const std::vector<int>& element_dofs(int e) const { return element_dofs_[e]; }
    const std::vector<int>& boundary_dofs() const { return boundary_dofs_; }
    const std::vector<Vertex>& dof_points() const { return dof_points_; }

private:
    const Mesh* mesh_;
    int degree_;
    int n_dof_;
    SpatialBasis basis_;
    std::vector<std::vector<int>> element_dofs_;
    std::vector<int> boundary_dofs_;
    std::vector<Vertex> dof_points_;
};

SpMat assemble_mass(const FunctionSpace& space);
SpMat assemble_stiffness(const FunctionSpace& space);

/// residual_i = int u_h^delta (sum_d du_h/dx_d) N_i dx and its Jacobian.
/// Quadrature exact to degree (delta+1) r + (r-1).
void advection_residual(const FunctionSpace& space, const Vec& coeffs, int delta,
                        Vec& residual, SpMat* jacobian);

/// residual_i = int c(u_h) N_i dx with c(u) = u (1-u^delta)(u^delta-gamma);
/// Jacobian from c'(u) = (1+delta)(1+gamma)u^delta - (2delta+1)u^{2delta} - gamma.
void reaction_residual(const FunctionSpace& space, const Vec& coeffs, int delta,
                       double gamma_r, Vec& residual, SpMat* jacobian);

/// Symmetric Dirichlet elimination: zero rows and columns, unit diagonal,
/// right-hand side adjusted for the prescribed values.
void apply_dirichlet(SpMat& matrix, Vec& rhs, const std::vector<int>& dofs, const Vec& values);

/// Nodal interpolation.
Vec interpolate(const FunctionSpace& space, const SpaceFn& fn);

/// load_i = int f(x, t) N_i dx, spatial quadrature exact to quad_degree.
Vec load_vector(const FunctionSpace& space, const SpaceTimeFn& f, double t, int quad_degree);

double l2_error(const FunctionSpace& space, const Vec& coeffs, const SpaceFn& exact,
                int quad_degree = 0);
double h1_seminorm_error(const FunctionSpace& space, const Vec& coeffs,
                         const SpaceFn& exact_dx, const SpaceFn& exact_dy, int quad_degree = 0);

} // namespace gbhe
