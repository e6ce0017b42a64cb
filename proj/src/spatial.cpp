#include "gbhe/spatial.hpp"

#include <cmath>

namespace gbhe {

double SpatialErrors::h1() const { return std::sqrt(l2 * l2 + h1_seminorm * h1_seminorm); }
double SpatialErrors::dg() const { return std::sqrt(h1_seminorm * h1_seminorm + jumps * jumps); }

CgDiscretization::CgDiscretization(const FunctionSpace& space, const ProblemSpec& problem)
    : space_(&space), problem_(&problem)
{
    problem.validate();
    mass_ = assemble_mass(space);
    stiffness_ = assemble_stiffness(space);
    if (problem.boundary == SpatialBoundary::dirichlet0) constrained_ = space.boundary_dofs();
}

void CgDiscretization::nonlinear_terms(const Vec& u, Vec& residual, SpMat* jacobian) const
{
    Vec r_adv, r_reac;
    SpMat j_adv, j_reac;
    advection_residual(*space_, u, problem_->delta, r_adv, jacobian ? &j_adv : nullptr);
    reaction_residual(*space_, u, problem_->delta, problem_->gamma, r_reac,
                      jacobian ? &j_reac : nullptr);
    residual = problem_->alpha * r_adv - problem_->beta * r_reac;
    if (jacobian) *jacobian = problem_->alpha * j_adv - problem_->beta * j_reac;
}

Vec CgDiscretization::load(double t) const
{
    if (!problem_->forcing) return Vec::Zero(space_->n_dof());
    return load_vector(*space_, problem_->forcing, t, 2 * space_->degree() + 2);
}

Vec CgDiscretization::initial_coefficients() const
{
    if (!problem_->initial) return Vec::Zero(space_->n_dof());
    return interpolate(*space_, problem_->initial);
}

SpatialErrors CgDiscretization::errors_against(const Vec& coeffs, const SpaceFn& u,
                                               const SpaceFn& ux, const SpaceFn& uy) const
{
    SpatialErrors e;
    e.l2 = l2_error(*space_, coeffs, u);
    e.h1_seminorm = h1_seminorm_error(*space_, coeffs, ux, uy);
    e.jumps = 0.0;
    return e;
}

double CgDiscretization::energy_seminorm(const Vec& coeffs) const
{
    auto zero = [](double, double) { return 0.0; };
    return h1_seminorm_error(*space_, coeffs, zero, zero);
}

DgDiscretization::DgDiscretization(const DgSpace& space, const ProblemSpec& problem)
    : space_(&space), problem_(&problem)
{
    problem.validate();
    mass_ = assemble_mass_dg(space);
    a_dg_ = assemble_a_dg(space);
}

void DgDiscretization::nonlinear_terms(const Vec& u, Vec& residual, SpMat* jacobian) const
{
    Vec r_reac;
    SpMat j_reac;
    convection_residual_dg(*space_, u, problem_->delta, problem_->alpha, residual, jacobian);
    reaction_residual_dg(*space_, u, problem_->delta, problem_->gamma, r_reac,
                         jacobian ? &j_reac : nullptr);
    residual -= problem_->beta * r_reac;
    if (jacobian) *jacobian -= problem_->beta * j_reac;
}

Vec DgDiscretization::load(double t) const
{
    if (!problem_->forcing) return Vec::Zero(space_->n_dof());
    return load_vector_dg(*space_, problem_->forcing, t, 2 * space_->degree() + 2);
}

Vec DgDiscretization::initial_coefficients() const
{
    if (!problem_->initial) return Vec::Zero(space_->n_dof());
    return interpolate_dg(*space_, problem_->initial);
}

SpatialErrors DgDiscretization::errors_against(const Vec& coeffs, const SpaceFn& u,
                                               const SpaceFn& ux, const SpaceFn& uy) const
{
    SpatialErrors e;
    e.l2 = l2_error_dg(*space_, coeffs, u);
    e.h1_seminorm = h1_broken_seminorm_error_dg(*space_, coeffs, ux, uy);
    e.jumps = jump_seminorm(*space_, coeffs);
    return e;
}

double DgDiscretization::energy_seminorm(const Vec& coeffs) const
{
    return dg_norm(*space_, coeffs);
}

} // namespace gbhe
