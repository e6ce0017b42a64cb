#pragma once

#include "gbhe/problem.hpp"

#include <string>

namespace gbhe {

/// Closed-form test solution with everything the forcing assembly needs.
/// memory_laplacian is int_0^t (t-s)^{-1/2} Lap u(x,s) ds in closed form
/// (sigma = 1/2 kernels only); caputo_ut is the Caputo derivative of order
/// 1/2. Either may be empty when the case does not support that mode.
struct ManufacturedCase {
    std::string name;
    int dim = 2;
    SpaceTimeFn u;
    SpaceTimeFn u_t;
    SpaceTimeFn du_dx;
    SpaceTimeFn du_dy;
    SpaceTimeFn laplacian;
    SpaceTimeFn memory_laplacian;
    SpaceTimeFn caputo_ut;
};

/// Registry lookup: "sol1", "sol2" (the 2D accuracy cases) or "decay1d"
/// (analytic-in-time 1D case). Throws std::invalid_argument for unknown names.
const ManufacturedCase& manufactured_case(const std::string& name);

/// f = u_t (or Caputo derivative) + alpha u^delta sum_i u_xi - nu Lap u
///     - eta K*Lap u - beta u(1-u^delta)(u^delta-gamma), bound to the given
/// problem parameters. Requires sigma = 1/2 when eta > 0 and mu = 1/2 in
/// Caputo mode (the closed forms cover exactly the tabulated settings).
SpaceTimeFn manufactured_forcing(const ManufacturedCase& mc, const ProblemSpec& problem);

/// Residual of the exact solution under the given forcing at one point;
/// vanishes identically when the forcing matches the case.
double continuous_residual(const ManufacturedCase& mc, const ProblemSpec& problem,
                           const SpaceTimeFn& f, double x, double y, double t);

} // namespace gbhe
