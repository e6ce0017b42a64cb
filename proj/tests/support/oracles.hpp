#pragma once

// test-side oracles, independent of the library's integration paths

#include "gbhe/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

namespace testsupport {

/// deterministic xorshift RNG for reproducible randomized tests
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0x9e3779b97f4a7c15ull) : state_(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0)
    {
        state_ ^= state_ << 13;
        state_ ^= state_ >> 7;
        state_ ^= state_ << 17;
        return lo + (hi - lo) * double(state_ % (1ull << 53)) / double(1ull << 53);
    }

private:
    std::uint64_t state_;
};

/// adaptive bisection integrator with a 15-point Gauss base rule; the error
/// estimate compares the parent panel against its two halves
inline double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                                 double tol = 1e-11, int depth = 0)
{
    static const gbhe::QuadratureRule gl = gbhe::gauss_legendre(15);
    auto panel = [&](double lo, double hi) {
        double s = 0.0;
        for (int q = 0; q < gl.size(); ++q)
            s += gl.weights[q] * f(0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.points[q].x);
        return 0.5 * (hi - lo) * s;
    };
    const double whole = panel(a, b);
    const double mid = 0.5 * (a + b);
    const double split = panel(a, mid) + panel(mid, b);
    if (std::abs(whole - split) <= tol || depth > 48) return split;
    return adaptive_integrate(f, a, mid, 0.5 * tol, depth + 1) +
           adaptive_integrate(f, mid, b, 0.5 * tol, depth + 1);
}

/// int_{Jj cap [0,t]} (t-s)^-sigma q(s) ds, desingularized by z = (t-s)^{1-sigma}
inline double singular_inner_integral(const std::function<double(double)>& q, double tj1,
                                      double tj, double t, double sigma, double tol = 1e-12)
{
    const double hi_s = std::min(tj, t);
    if (hi_s <= tj1) return 0.0;
    const double e = 1.0 - sigma;
    const double z_lo = std::pow(t - hi_s, e);  // may be 0
    const double z_hi = std::pow(t - tj1, e);
    auto integrand = [&](double z) { return q(t - std::pow(z, 1.0 / e)) / e; };
    return adaptive_integrate(integrand, z_lo, z_hi, tol);
}

/// closed-form degree-0 moment: int_{Jn} int_{Jj cap [0,t]} (t-s)^-sigma ds dt
inline double closed_form_w00(double tn1, double tn, double tj1, double tj, double sigma)
{
    const double a = 1.0 - sigma, b = 2.0 - sigma;
    auto pw = [&](double x) { return x <= 0.0 ? 0.0 : std::pow(x, b); };
    return (pw(tn - tj1) - pw(tn - tj) - pw(tn1 - tj1) + pw(tn1 - tj)) / (a * b);
}

} // namespace testsupport
