#include "gbhe/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace gbhe {

double kernel_l1_norm(const KernelSpec& kernel, double T)
{
    if (kernel.kind == KernelSpec::Kind::none) return 0.0;
    return std::pow(T, 1.0 - kernel.sigma) / (1.0 - kernel.sigma);
}

double kernel_ck(const KernelSpec& kernel, double T)
{
    const double l1 = kernel_l1_norm(kernel, T);
    return l1 * l1;
}

void ProblemSpec::validate() const
{
    if (!(nu > 0.0)) throw std::invalid_argument("ProblemSpec: nu must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("ProblemSpec: gamma must lie in (0,1)");
    if (delta < 1 || delta > 2) throw std::invalid_argument("ProblemSpec: delta must be 1 or 2");
    if (kernel.kind == KernelSpec::Kind::power && !(kernel.sigma > 0.0 && kernel.sigma < 1.0))
        throw std::invalid_argument("ProblemSpec: kernel sigma must lie in (0,1)");
    if (kernel.caputo_mu < 0.0 || kernel.caputo_mu >= 1.0)
        throw std::invalid_argument("ProblemSpec: caputo order must lie in [0,1)");
    if (kernel.eta < 0.0) throw std::invalid_argument("ProblemSpec: eta must be >= 0");
}

} // namespace gbhe
