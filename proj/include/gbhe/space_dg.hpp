#pragma once

#include "gbhe/mesh.hpp"
#include "gbhe/polybasis.hpp"
#include "gbhe/problem.hpp"
#include "gbhe/space_fem.hpp"

namespace gbhe {

/// Discontinuous Lagrange space for the interior-penalty method: dofs are
/// element-local (n_dof = #elements * local size). Per-facet data follows
/// the maximum rule, r_E = max of adjacent degrees and h_E = max of
/// adjacent element diameters. 2D meshes only.
class DgSpace {
public:
    DgSpace(const Mesh& mesh, int degree, double sigma0 = 10.0);

    const Mesh& mesh() const { return *mesh_; }
    int degree() const { return degree_; }
    int n_dof() const { return n_dof_; }
    int n_local() const { return basis_.size(); }
    double sigma0() const { return sigma0_; }
    const SpatialBasis& basis() const { return basis_; }

    int dof(int element, int local) const { return element * n_local() + local; }

    /// penalty weight gamma_h = sigma0 * r_E^2 / h_E of a facet
    double facet_penalty(int f) const { return sigma0_ * degree_ * degree_ / facet_h_[f]; }
    double facet_h(int f) const { return facet_h_[f]; }

private:
    const Mesh* mesh_;
    int degree_;
    int n_dof_;
    double sigma0_;
    SpatialBasis basis_;
    std::vector<double> facet_h_;
};

/// Block-diagonal L2 mass matrix.
SpMat assemble_mass_dg(const DgSpace& space);

/// Symmetric interior penalty form: volume gradients, the two
/// consistency/symmetry facet terms, and the penalty (sigma0 r_E^2/h_E) jump
/// term. Homogeneous Dirichlet data enters weakly through boundary facets.
SpMat assemble_a_dg(const DgSpace& space);

/// alpha * b_DG(w; u, .) with w = u_h^delta (1,1)^T, upwind facet fluxes and
/// the skew four-term structure; returns residual and Jacobian (|w.n|
/// subdifferentiated with sign(0) = 0).
void convection_residual_dg(const DgSpace& space, const Vec& coeffs, int delta, double alpha,
                            Vec& residual, SpMat* jacobian);

/// residual_i = int c(u_h) N_i over elements (same reaction as the
/// conforming space, element-local dofs).
void reaction_residual_dg(const DgSpace& space, const Vec& coeffs, int delta, double gamma_r,
                          Vec& residual, SpMat* jacobian);

/// Broken H1 seminorm plus penalty-weighted jump norms.
double dg_norm(const DgSpace& space, const Vec& coeffs);

Vec interpolate_dg(const DgSpace& space, const SpaceFn& fn);
Vec load_vector_dg(const DgSpace& space, const SpaceTimeFn& f, double t, int quad_degree);

double l2_error_dg(const DgSpace& space, const Vec& coeffs, const SpaceFn& exact,
                   int quad_degree = 0);
double h1_broken_seminorm_error_dg(const DgSpace& space, const Vec& coeffs,
                                   const SpaceFn& exact_dx, const SpaceFn& exact_dy,
                                   int quad_degree = 0);
/// sqrt(sum_E gamma_h || [[u_h]] ||^2): the jump part of the DG error norm
/// (the exact solution is continuous, so its jumps vanish).
double jump_seminorm(const DgSpace& space, const Vec& coeffs);

} // namespace gbhe
