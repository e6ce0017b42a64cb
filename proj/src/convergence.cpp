#include "gbhe/convergence.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace gbhe {

ProblemSpec make_problem(const RunConfig& config, const ManufacturedCase& mc)
{
    ProblemSpec problem;
    problem.alpha = config.alpha;
    problem.beta = config.beta;
    problem.gamma = config.gamma;
    problem.delta = config.delta;
    problem.nu = config.nu;
    problem.kernel.kind = config.eta > 0.0 ? KernelSpec::Kind::power : KernelSpec::Kind::none;
    problem.kernel.sigma = config.sigma;
    problem.kernel.eta = config.eta;
    problem.kernel.caputo_mu = config.caputo_mu;
    problem.scheme = config.space_scheme == "dg" ? SpatialScheme::dg : SpatialScheme::conforming;
    problem.boundary = SpatialBoundary::dirichlet0;
    problem.forcing = manufactured_forcing(mc, problem);
    problem.initial = [&mc](double x, double y) { return mc.u(x, y, 0.0); };
    return problem;
}

SingleRunResult run_single(const RunConfig& config, int mesh_n, int time_steps)
{
    const ManufacturedCase& mc = manufactured_case(config.case_name);
    const ProblemSpec problem = make_problem(config, mc);

    const Mesh mesh = mc.dim == 1 ? build_interval_mesh(mesh_n, 0.0, 1.0)
                                  : build_unit_square_triangulation(mesh_n);
    const TimePartition partition =
        TimePartition::uniform(time_steps, config.final_time, config.time_degree);

    StepperOptions options;
    options.newton = config.newton();

    SingleRunResult out;
    DiscreteSolution solution;

    auto finish = [&](const SpatialDiscretization& spatial, long space_dofs) {
        TimeStepper stepper(problem, partition, spatial, options);
        stepper.run();
        out.diagnostics = stepper.diagnostics();
        out.errors = error_norms(stepper.solution(), spatial, mc.u, mc.du_dx, mc.du_dy);
        out.dof = (config.time_degree + 1) * space_dofs;
    };

    if (problem.scheme == SpatialScheme::dg) {
        const DgSpace space(mesh, config.space_degree, config.sigma0);
        const DgDiscretization spatial(space, problem);
        finish(spatial, space.n_dof());
    } else {
        const FunctionSpace space(mesh, config.space_degree);
        const CgDiscretization spatial(space, problem);
        finish(spatial, space.n_dof());
    }

    out.h = mesh_metrics(mesh).h_max;
    out.k = partition.max_step();
    return out;
}

ConvergenceReport run_convergence(const RunConfig& config, const std::vector<int>& meshes,
                                  std::ostream* log)
{
    ConvergenceReport report;
    report.dg_scheme = config.space_scheme == "dg";

    std::vector<double> hs, l2s, h1s, h1semis, dgs;
    for (int n : meshes) {
        const SingleRunResult r = run_single(config, n, n);
        ConvergenceRow row;
        row.mesh_n = n;
        row.dof = r.dof;
        row.h = r.h;
        row.l2 = r.errors.l2_final;
        row.h1 = r.errors.h1_final;
        row.h1semi = r.errors.h1semi_final;
        row.dg = r.errors.dg_final;
        report.rows.push_back(row);
        hs.push_back(r.h);
        l2s.push_back(row.l2);
        h1s.push_back(row.h1);
        h1semis.push_back(row.h1semi);
        dgs.push_back(row.dg);
        if (log)
            *log << "mesh " << n << "x" << n << "  dof " << row.dof << "  l2 " << row.l2
                 << "  h1 " << row.h1 << '\n';
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto rl2 = convergence_rates(l2s, hs);
    const auto rh1 = convergence_rates(h1s, hs);
    const auto rsemi = convergence_rates(h1semis, hs);
    const auto rdg = convergence_rates(dgs, hs);
    for (size_t i = 0; i < report.rows.size(); ++i) {
        report.rows[i].l2_rate = i == 0 ? nan : rl2[i - 1];
        report.rows[i].h1_rate = i == 0 ? nan : rh1[i - 1];
        report.rows[i].h1semi_rate = i == 0 ? nan : rsemi[i - 1];
        report.rows[i].dg_rate = i == 0 ? nan : rdg[i - 1];
    }
    return report;
}

namespace {

void put_number(std::ostream& os, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6e", v);
    os << buf;
}

void put_rate(std::ostream& os, double r)
{
    if (std::isnan(r)) return;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", r);
    os << buf;
}

} // namespace

void write_csv(const ConvergenceReport& report, std::ostream& os)
{
    os << "mesh,dof,l2_error,l2_rate,h1_error,h1_rate,h1semi_error,h1semi_rate";
    if (report.dg_scheme) os << ",dg_error,dg_rate";
    os << '\n';
    for (const ConvergenceRow& row : report.rows) {
        os << row.mesh_n << ',' << row.dof << ',';
        put_number(os, row.l2);
        os << ',';
        put_rate(os, row.l2_rate);
        os << ',';
        put_number(os, row.h1);
        os << ',';
        put_rate(os, row.h1_rate);
        os << ',';
        put_number(os, row.h1semi);
        os << ',';
        put_rate(os, row.h1semi_rate);
        if (report.dg_scheme) {
            os << ',';
            put_number(os, row.dg);
            os << ',';
            put_rate(os, row.dg_rate);
        }
        os << '\n';
    }
}

} // namespace gbhe
