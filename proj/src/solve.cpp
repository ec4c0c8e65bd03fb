#include "gasplan/solve.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gasplan/emit.hpp"

namespace gasplan {

std::string resolve_solver_command(const std::string& configured) {
    if (!configured.empty()) return configured;
    if (const char* env = std::getenv("GASPLAN_SOLVER"); env && *env) return env;
#ifdef GASPLAN_BUNDLED_SOLVER
    return GASPLAN_BUNDLED_SOLVER;
#else
    throw EnvironmentError(
        "no MILP solver configured (set --solver or the GASPLAN_SOLVER environment variable)");
#endif
}

Solution parse_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProtocolError("solver produced no solution file at " + path);
    Solution sol;
    std::string line;
    bool have_status = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "status") {
            std::string s;
            ls >> s;
            if (s == "optimal") sol.status = SolveStatus::Optimal;
            else if (s == "gap_reached") sol.status = SolveStatus::GapReached;
            else if (s == "infeasible") sol.status = SolveStatus::Infeasible;
            else if (s == "unbounded") sol.status = SolveStatus::Unbounded;
            else if (s == "error") sol.status = SolveStatus::Error;
            else throw ProtocolError("unknown solver status '" + s + "'");
            have_status = true;
        } else if (tag == "objective") {
            ls >> sol.objective;
        } else if (tag == "gap") {
            ls >> sol.gap;
        } else if (tag == "var") {
            std::string name;
            double value = 0;
            ls >> name >> value;
            if (name.empty() || ls.fail())
                throw ProtocolError("malformed var line in " + path + ": '" + line + "'");
            sol.values[name] = value;
        } else {
            throw ProtocolError("unexpected line in solution file: '" + line + "'");
        }
    }
    if (!have_status) throw ProtocolError("solution file " + path + " carries no status");
    return sol;
}

Solution solve_file(const std::string& model_path, const std::string& solution_path,
                    const SolveOptions& opts) {
    std::string solver = resolve_solver_command(opts.solver);
    std::error_code ec;
    std::filesystem::remove(solution_path, ec);

    std::ostringstream cmd;
    cmd << solver << " \"" << model_path << "\" \"" << solution_path << "\" --gap " << opts.gap
        << " --time-limit " << opts.time_limit_s;

    auto t0 = std::chrono::steady_clock::now();
    int rc = std::system(cmd.str().c_str());
    auto t1 = std::chrono::steady_clock::now();

    if (rc != 0)
        throw EnvironmentError("solver command failed (exit " + std::to_string(rc) +
                               "): " + cmd.str());
    Solution sol = parse_solution_file(solution_path);
    sol.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    return sol;
}

Solution solve_model(const ModelInstance& model, const std::string& work_dir,
                     const std::string& stem, const SolveOptions& opts) {
    std::filesystem::create_directories(work_dir);
    auto model_path = (std::filesystem::path(work_dir) / (stem + ".mps")).string();
    auto sol_path = (std::filesystem::path(work_dir) / (stem + ".sol")).string();
    emit_to_file(model, FileFormat::MpsFree, model_path);
    return solve_file(model_path, sol_path, opts);
}

}  // namespace gasplan
