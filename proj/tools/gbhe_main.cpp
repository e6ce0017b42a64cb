#include "gbhe/convergence.hpp"
#include "gbhe/predator.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_solver = 3;

std::vector<int> parse_meshes(const std::string& list)
{
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const int n = std::stoi(item);
        if (n < 1) throw gbhe::ConfigError("mesh list entries must be positive");
        out.push_back(n);
    }
    if (out.empty()) throw gbhe::ConfigError("empty mesh list");
    return out;
}

int cmd_solve(const gbhe::RunConfig& cfg, bool quiet)
{
    const gbhe::SingleRunResult r = gbhe::run_single(cfg, cfg.mesh_n, cfg.time_steps);
    std::filesystem::create_directories(cfg.output);
    std::ofstream os(std::filesystem::path(cfg.output) / "solve.csv");
    os << "mesh,dof,l2_error,h1_error,h1semi_error,dg_error,l2h1_error\n";
    os.precision(10);
    os << cfg.mesh_n << ',' << r.dof << ',' << r.errors.l2_final << ',' << r.errors.h1_final
       << ',' << r.errors.h1semi_final << ',' << r.errors.dg_final << ','
       << r.errors.l2h1_spacetime << '\n';
    if (!quiet) {
        std::cout << "mesh " << cfg.mesh_n << "x" << cfg.mesh_n << "  dof " << r.dof
                  << "\n  l2 " << r.errors.l2_final << "  h1 " << r.errors.h1_final << '\n';
        int total_iters = 0;
        for (int it : r.diagnostics.newton_iterations) total_iters += it;
        std::cout << "  newton iterations total " << total_iters << " over "
                  << r.diagnostics.newton_iterations.size() << " steps\n";
    }
    return exit_ok;
}

int cmd_convergence(const gbhe::RunConfig& cfg, const std::string& meshes_arg, bool quiet)
{
    std::vector<int> meshes;
    if (!meshes_arg.empty()) {
        meshes = parse_meshes(meshes_arg);
    } else {
        for (int n = cfg.mesh_n; n <= 8 * cfg.mesh_n; n *= 2) meshes.push_back(n);
    }
    const gbhe::ConvergenceReport report =
        gbhe::run_convergence(cfg, meshes, quiet ? nullptr : &std::cout);
    std::filesystem::create_directories(cfg.output);
    std::ofstream os(std::filesystem::path(cfg.output) / "convergence.csv");
    gbhe::write_csv(report, os);
    if (!quiet) gbhe::write_csv(report, std::cout);
    return exit_ok;
}

int cmd_predator(const gbhe::RunConfig& cfg, bool quiet)
{
    const gbhe::PredatorResult r = gbhe::run_predator(cfg, quiet ? nullptr : &std::cout);
    if (!quiet)
        std::cout << "snapshots " << r.snapshots_written << "  max|u| " << r.max_abs_u
                  << "  max|v| " << r.max_abs_v << (r.finite ? "" : "  [NOT FINITE]") << '\n';
    return r.finite ? exit_ok : exit_solver;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hp-DG time stepping solver for the generalized Burgers-Huxley equation "
                 "with weakly singular memory kernels"};
    app.require_subcommand(1);

    std::string config_path, out_dir, meshes_arg;
    bool quiet = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_flag("--quiet", quiet, "suppress progress output");

    CLI::App* solve = app.add_subcommand("solve", "single run: final-time errors, diagnostics");
    CLI::App* conv = app.add_subcommand("convergence", "refinement ladder with CSV rate table");
    conv->add_option("--meshes", meshes_arg, "comma-separated mesh list, e.g. 8,16,32,64");
    CLI::App* pred = app.add_subcommand("predator", "prey-predator run with snapshots");

    CLI11_PARSE(app, argc, argv);

    gbhe::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = gbhe::RunConfig::parse_file(config_path);
        if (!out_dir.empty()) cfg.output = out_dir;
        cfg.validate();
    } catch (const gbhe::ConfigError& err) {
        std::cerr << err.what() << '\n';
        return exit_config;
    }

    try {
        if (solve->parsed()) return cmd_solve(cfg, quiet);
        if (conv->parsed()) return cmd_convergence(cfg, meshes_arg, quiet);
        if (pred->parsed()) return cmd_predator(cfg, quiet);
    } catch (const gbhe::ConfigError& err) {
        std::cerr << err.what() << '\n';
        return exit_config;
    } catch (const gbhe::NewtonDivergence& err) {
        std::cerr << err.what() << '\n';
        return exit_solver;
    } catch (const std::exception& err) {
        std::cerr << err.what() << '\n';
        return exit_solver;
    }
    return exit_ok;
}
