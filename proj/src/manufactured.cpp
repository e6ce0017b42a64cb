#include "gbhe/manufactured.hpp"

#include <cmath>
#include <stdexcept>

namespace gbhe {

namespace {

const double PI = std::acos(-1.0);

ManufacturedCase make_sol1()
{
    // u = (t^3 - t^2 + 1) sin(pi x) sin(pi y)
    auto g = [](double t) { return t * t * t - t * t + 1.0; };
    auto gp = [](double t) { return 3.0 * t * t - 2.0 * t; };
    auto S = [](double x, double y) { return std::sin(PI * x) * std::sin(PI * y); };

    ManufacturedCase mc;
    mc.name = "sol1";
    mc.dim = 2;
    mc.u = [=](double x, double y, double t) { return g(t) * S(x, y); };
    mc.u_t = [=](double x, double y, double t) { return gp(t) * S(x, y); };
    mc.du_dx = [=](double x, double y, double t) {
        return g(t) * PI * std::cos(PI * x) * std::sin(PI * y);
    };
    mc.du_dy = [=](double x, double y, double t) {
        return g(t) * PI * std::sin(PI * x) * std::cos(PI * y);
    };
    mc.laplacian = [=](double x, double y, double t) { return -2.0 * PI * PI * g(t) * S(x, y); };
    // int_0^t (t-s)^{-1/2} s^m ds = t^{m+1/2} B(1/2, m+1):
    //   m = 0 -> 2 sqrt(t), m = 2 -> (16/15) t^{5/2}, m = 3 -> (32/35) t^{7/2}
    mc.memory_laplacian = [=](double x, double y, double t) {
        const double conv = (32.0 / 35.0) * std::pow(t, 3.5) - (16.0 / 15.0) * std::pow(t, 2.5)
                            + 2.0 * std::sqrt(t);
        return -2.0 * PI * PI * S(x, y) * conv;
    };
    // Caputo 1/2 of t^m: Gamma(m+1)/Gamma(m+1/2) t^{m-1/2}; constants vanish
    mc.caputo_ut = [=](double x, double y, double t) {
        const double sp = std::sqrt(PI);
        const double d = 16.0 / (5.0 * sp) * std::pow(t, 2.5) - 8.0 / (3.0 * sp) * std::pow(t, 1.5);
        return d * S(x, y);
    };
    return mc;
}

ManufacturedCase make_sol2()
{
    // u = t^{3/2} sin(2 pi x) sin(2 pi y); u_t in L2 but u_tt is not
    auto S = [](double x, double y) { return std::sin(2.0 * PI * x) * std::sin(2.0 * PI * y); };

    ManufacturedCase mc;
    mc.name = "sol2";
    mc.dim = 2;
    mc.u = [=](double x, double y, double t) { return std::pow(t, 1.5) * S(x, y); };
    mc.u_t = [=](double x, double y, double t) { return 1.5 * std::sqrt(t) * S(x, y); };
    mc.du_dx = [=](double x, double y, double t) {
        return std::pow(t, 1.5) * 2.0 * PI * std::cos(2.0 * PI * x) * std::sin(2.0 * PI * y);
    };
    mc.du_dy = [=](double x, double y, double t) {
        return std::pow(t, 1.5) * 2.0 * PI * std::sin(2.0 * PI * x) * std::cos(2.0 * PI * y);
    };
    mc.laplacian = [=](double x, double y, double t) {
        return -8.0 * PI * PI * std::pow(t, 1.5) * S(x, y);
    };
    // int_0^t (t-s)^{-1/2} s^{3/2} ds = B(1/2,5/2) t^2 = (3 pi/8) t^2
    mc.memory_laplacian = [=](double x, double y, double t) {
        return -8.0 * PI * PI * S(x, y) * (3.0 * PI / 8.0) * t * t;
    };
    // Caputo 1/2 of t^{3/2} = Gamma(5/2)/Gamma(2) t = (3 sqrt(pi)/4) t
    mc.caputo_ut = [=](double x, double y, double t) {
        return 0.75 * std::sqrt(PI) * t * S(x, y);
    };
    return mc;
}

ManufacturedCase make_decay1d()
{
    // u = e^{-t} sin(pi x) on [0,1]; analytic in time
    ManufacturedCase mc;
    mc.name = "decay1d";
    mc.dim = 1;
    mc.u = [](double x, double, double t) { return std::exp(-t) * std::sin(PI * x); };
    mc.u_t = [](double x, double, double t) { return -std::exp(-t) * std::sin(PI * x); };
    mc.du_dx = [](double x, double, double t) { return std::exp(-t) * PI * std::cos(PI * x); };
    mc.du_dy = [](double, double, double) { return 0.0; };
    mc.laplacian = [](double x, double, double t) {
        return -PI * PI * std::exp(-t) * std::sin(PI * x);
    };
    return mc;
}

} // namespace

const ManufacturedCase& manufactured_case(const std::string& name)
{
    static const ManufacturedCase sol1 = make_sol1();
    static const ManufacturedCase sol2 = make_sol2();
    static const ManufacturedCase decay1d = make_decay1d();
    if (name == "sol1") return sol1;
    if (name == "sol2") return sol2;
    if (name == "decay1d") return decay1d;
    throw std::invalid_argument("manufactured_case: unknown case '" + name + "'");
}

SpaceTimeFn manufactured_forcing(const ManufacturedCase& mc, const ProblemSpec& problem)
{
    const double alpha = problem.alpha, beta = problem.beta, nu = problem.nu;
    const double gamma = problem.gamma;
    const int delta = problem.delta;
    const KernelSpec kernel = problem.kernel;

    if (kernel.has_memory()) {
        if (!mc.memory_laplacian)
            throw std::invalid_argument("manufactured_forcing: case lacks a memory closed form");
        if (std::abs(kernel.sigma - 0.5) > 1e-14)
            throw std::invalid_argument("manufactured_forcing: closed forms require sigma = 1/2");
    }
    if (kernel.caputo()) {
        if (!mc.caputo_ut)
            throw std::invalid_argument("manufactured_forcing: case lacks a Caputo closed form");
        if (std::abs(kernel.caputo_mu - 0.5) > 1e-14)
            throw std::invalid_argument("manufactured_forcing: closed forms require mu = 1/2");
    }

    return [mc, alpha, beta, nu, gamma, delta, kernel](double x, double y, double t) {
        const double u = mc.u(x, y, t);
        const double ud = std::pow(u, delta);
        const double dt_term = kernel.caputo() ? mc.caputo_ut(x, y, t) : mc.u_t(x, y, t);
        double f = dt_term + alpha * ud * (mc.du_dx(x, y, t) + mc.du_dy(x, y, t))
                   - nu * mc.laplacian(x, y, t)
                   - beta * u * (1.0 - ud) * (ud - gamma);
        if (kernel.has_memory()) f -= kernel.eta * mc.memory_laplacian(x, y, t);
        return f;
    };
}

double continuous_residual(const ManufacturedCase& mc, const ProblemSpec& problem,
                           const SpaceTimeFn& f, double x, double y, double t)
{
    const double u = mc.u(x, y, t);
    const double ud = std::pow(u, problem.delta);
    const double dt_term =
        problem.kernel.caputo() ? mc.caputo_ut(x, y, t) : mc.u_t(x, y, t);
    double r = dt_term + problem.alpha * ud * (mc.du_dx(x, y, t) + mc.du_dy(x, y, t))
               - problem.nu * mc.laplacian(x, y, t)
               - problem.beta * u * (1.0 - ud) * (ud - problem.gamma) - f(x, y, t);
    if (problem.kernel.has_memory()) r -= problem.kernel.eta * mc.memory_laplacian(x, y, t);
    return r;
}

} // namespace gbhe
