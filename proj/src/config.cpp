#include "gbhe/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace gbhe {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value)
{
    std::istringstream ss(value);
    T out;
    ss >> out;
    if (ss.fail() || !trim(value.substr(ss.eof() ? value.size() : size_t(ss.tellg()))).empty())
        throw ConfigError("config: bad value for '" + key + "': " + value);
    return out;
}

} // namespace

RunConfig RunConfig::parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse(in);
}

RunConfig RunConfig::parse(std::istream& in)
{
    RunConfig cfg;
    std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters;
    auto str = [](std::string& dst) {
        return [&dst](const std::string&, const std::string& v) { dst = v; };
    };
    auto num = [](auto& dst) {
        return [&dst](const std::string& k, const std::string& v) {
            dst = parse_number<std::decay_t<decltype(dst)>>(k, v);
        };
    };
    setters["case"] = str(cfg.case_name);
    setters["mesh_n"] = num(cfg.mesh_n);
    setters["space_scheme"] = str(cfg.space_scheme);
    setters["space_degree"] = num(cfg.space_degree);
    setters["time_steps"] = num(cfg.time_steps);
    setters["time_degree"] = num(cfg.time_degree);
    setters["eta"] = num(cfg.eta);
    setters["sigma"] = num(cfg.sigma);
    setters["caputo_mu"] = num(cfg.caputo_mu);
    setters["sigma0"] = num(cfg.sigma0);
    setters["newton_abs_tol"] = num(cfg.newton_abs_tol);
    setters["newton_rel_tol"] = num(cfg.newton_rel_tol);
    setters["newton_max_iter"] = num(cfg.newton_max_iter);
    setters["output"] = str(cfg.output);
    setters["alpha"] = num(cfg.alpha);
    setters["beta"] = num(cfg.beta);
    setters["gamma"] = num(cfg.gamma);
    setters["delta"] = num(cfg.delta);
    setters["nu"] = num(cfg.nu);
    setters["final_time"] = num(cfg.final_time);
    setters["dt"] = num(cfg.dt);
    setters["snapshot_stride"] = num(cfg.snapshot_stride);
    setters["memory_species"] = str(cfg.memory_species);
    setters["prey_growth"] = num(cfg.prey_growth);

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        it->second(key, value);
    }
    cfg.validate();
    return cfg;
}

void RunConfig::validate() const
{
    if (case_name != "sol1" && case_name != "sol2" && case_name != "decay1d" &&
        case_name != "predator")
        throw ConfigError("config: unknown case '" + case_name + "'");
    if (space_scheme != "cg" && space_scheme != "dg")
        throw ConfigError("config: space_scheme must be cg or dg");
    if (mesh_n < 1) throw ConfigError("config: mesh_n must be >= 1");
    if (space_degree < 1 || space_degree > 3)
        throw ConfigError("config: space_degree must be 1..3");
    if (time_steps < 1) throw ConfigError("config: time_steps must be >= 1");
    if (time_degree < 0 || time_degree > 4)
        throw ConfigError("config: time_degree must be 0..4");
    if (eta < 0.0) throw ConfigError("config: eta must be >= 0");
    if (!(sigma > 0.0 && sigma < 1.0)) throw ConfigError("config: sigma must lie in (0,1)");
    if (caputo_mu < 0.0 || caputo_mu >= 1.0)
        throw ConfigError("config: caputo_mu must lie in [0,1)");
    if (sigma0 <= 0.0) throw ConfigError("config: sigma0 must be positive");
    if (newton_abs_tol <= 0.0 || newton_rel_tol <= 0.0 || newton_max_iter < 1)
        throw ConfigError("config: bad newton options");
    if (delta < 1 || delta > 2) throw ConfigError("config: delta must be 1 or 2");
    if (memory_species != "both" && memory_species != "prey")
        throw ConfigError("config: memory_species must be both or prey");
    if (!(final_time > 0.0) || !(dt > 0.0))
        throw ConfigError("config: final_time and dt must be positive");
}

void RunConfig::dump(std::ostream& os) const
{
    os << "case = " << case_name << '\n'
       << "mesh_n = " << mesh_n << '\n'
       << "space_scheme = " << space_scheme << '\n'
       << "space_degree = " << space_degree << '\n'
       << "time_steps = " << time_steps << '\n'
       << "time_degree = " << time_degree << '\n';
    std::ostringstream nums;
    nums.precision(17);
    nums << "eta = " << eta << '\n'
         << "sigma = " << sigma << '\n'
         << "caputo_mu = " << caputo_mu << '\n'
         << "sigma0 = " << sigma0 << '\n'
         << "newton_abs_tol = " << newton_abs_tol << '\n'
         << "newton_rel_tol = " << newton_rel_tol << '\n'
         << "newton_max_iter = " << newton_max_iter << '\n'
         << "alpha = " << alpha << '\n'
         << "beta = " << beta << '\n'
         << "gamma = " << gamma << '\n'
         << "delta = " << delta << '\n'
         << "nu = " << nu << '\n'
         << "final_time = " << final_time << '\n'
         << "dt = " << dt << '\n'
         << "snapshot_stride = " << snapshot_stride << '\n'
         << "prey_growth = " << prey_growth << '\n';
    os << nums.str();
    os << "output = " << output << '\n'
       << "memory_species = " << memory_species << '\n';
}

} // namespace gbhe
