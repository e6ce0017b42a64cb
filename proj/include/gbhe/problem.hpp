#pragma once

#include <functional>

namespace gbhe {

/// scalar field over space-time, arguments (x, y, t); y is 0 in 1D
using SpaceTimeFn = std::function<double(double, double, double)>;
/// scalar field over space, arguments (x, y)
using SpaceFn = std::function<double(double, double)>;

/// Memory kernel and time-derivative mode. kind==power means
/// K(t) = t^-sigma scaled by eta; caputo_mu > 0 switches the time
/// derivative to the left-sided Caputo derivative of that order.
struct KernelSpec {
    enum class Kind { none, power };
    Kind kind = Kind::none;
    double sigma = 0.5;  // exponent in (0,1)
    double eta = 0.0;    // memory coefficient
    double caputo_mu = 0.0; // 0 = classical time derivative

    bool has_memory() const { return kind == Kind::power && eta != 0.0; }
    bool caputo() const { return caputo_mu > 0.0; }
};

/// L1 norm of the kernel over (0,T); C_K of the stability analysis is its
/// square.
double kernel_l1_norm(const KernelSpec& kernel, double T);
double kernel_ck(const KernelSpec& kernel, double T);

enum class SpatialScheme { conforming, dg };
enum class SpatialBoundary { dirichlet0, neumann0 };

/// Coefficients and data of the advection-diffusion-reaction problem
///   u_t + alpha u^delta sum_i u_xi - nu Lap u - eta (K * Lap u)
///     = beta u (1-u^delta)(u^delta-gamma) + f.
struct ProblemSpec {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.5;   // reaction threshold in (0,1)
    int delta = 1;        // positive integer power
    double nu = 1.0;      // diffusion, > 0
    KernelSpec kernel;
    SpaceTimeFn forcing;  // f(x,y,t); may be empty for f = 0
    SpaceFn initial;      // u0(x,y)
    SpatialScheme scheme = SpatialScheme::conforming;
    SpatialBoundary boundary = SpatialBoundary::dirichlet0;

    void validate() const;
};

} // namespace gbhe
