#pragma once

#include "gbhe/problem.hpp"
#include "gbhe/space_dg.hpp"
#include "gbhe/space_fem.hpp"

#include <memory>

namespace gbhe {

struct SpatialErrors {
    double l2 = 0.0;
    double h1_seminorm = 0.0;
    double jumps = 0.0; // penalty-weighted jump seminorm; zero for conforming

    double h1() const;
    double dg() const;
};

/// What the time stepper needs from a spatial discretization: the L2 mass
/// pairing, the diffusion operator (conforming stiffness or the interior
/// penalty form), the combined nonlinear term alpha*B(u) - beta*c(u) with
/// Jacobian, load vectors, and Dirichlet-constrained dofs (empty for DG and
/// Neumann problems).
class SpatialDiscretization {
public:
    virtual ~SpatialDiscretization() = default;

    virtual int n_dof() const = 0;
    virtual const SpMat& mass() const = 0;
    virtual const SpMat& diffusion() const = 0;
    virtual void nonlinear_terms(const Vec& u, Vec& residual, SpMat* jacobian) const = 0;
    virtual Vec load(double t) const = 0;
    virtual Vec initial_coefficients() const = 0;
    virtual const std::vector<int>& constrained_dofs() const = 0;

    virtual SpatialErrors errors_against(const Vec& coeffs, const SpaceFn& u, const SpaceFn& ux,
                                         const SpaceFn& uy) const = 0;
    /// H1 seminorm (conforming) or DG norm (discontinuous) of a discrete function
    virtual double energy_seminorm(const Vec& coeffs) const = 0;
};

class CgDiscretization final : public SpatialDiscretization {
public:
    CgDiscretization(const FunctionSpace& space, const ProblemSpec& problem);

    int n_dof() const override { return space_->n_dof(); }
    const SpMat& mass() const override { return mass_; }
    const SpMat& diffusion() const override { return stiffness_; }
    void nonlinear_terms(const Vec& u, Vec& residual, SpMat* jacobian) const override;
    Vec load(double t) const override;
    Vec initial_coefficients() const override;
    const std::vector<int>& constrained_dofs() const override { return constrained_; }
    SpatialErrors errors_against(const Vec& coeffs, const SpaceFn& u, const SpaceFn& ux,
                                 const SpaceFn& uy) const override;
    double energy_seminorm(const Vec& coeffs) const override;

    const FunctionSpace& space() const { return *space_; }

private:
    const FunctionSpace* space_;
    const ProblemSpec* problem_;
    SpMat mass_, stiffness_;
    std::vector<int> constrained_;
};

class DgDiscretization final : public SpatialDiscretization {
public:
    DgDiscretization(const DgSpace& space, const ProblemSpec& problem);

    int n_dof() const override { return space_->n_dof(); }
    const SpMat& mass() const override { return mass_; }
    const SpMat& diffusion() const override { return a_dg_; }
    void nonlinear_terms(const Vec& u, Vec& residual, SpMat* jacobian) const override;
    Vec load(double t) const override;
    Vec initial_coefficients() const override;
    const std::vector<int>& constrained_dofs() const override { return constrained_; }
    SpatialErrors errors_against(const Vec& coeffs, const SpaceFn& u, const SpaceFn& ux,
                                 const SpaceFn& uy) const override;
    double energy_seminorm(const Vec& coeffs) const override;

    const DgSpace& space() const { return *space_; }

private:
    const DgSpace* space_;
    const ProblemSpec* problem_;
    SpMat mass_, a_dg_;
    std::vector<int> constrained_; // always empty
};

} // namespace gbhe
