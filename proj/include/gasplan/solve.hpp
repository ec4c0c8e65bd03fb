#pragma once

#include <string>

#include "gasplan/model.hpp"

namespace gasplan {

struct SolveOptions {
    double gap = 0.01;          // relative MILP gap
    double time_limit_s = 600;  // wall clock per solve
    std::string solver;         // command prefix; empty resolves the default
};

// Resolution order: explicit option, GASPLAN_SOLVER environment variable,
// bundled adapter baked in at build time. Throws EnvironmentError when none
// is available.
std::string resolve_solver_command(const std::string& configured);

// Invokes `<solver> <model-file> <solution-file> --gap G --time-limit T` and
// parses the solution file (see tools/milp_solve.py for the format).
Solution solve_file(const std::string& model_path, const std::string& solution_path,
                    const SolveOptions& opts);

// Emits the model as free MPS into work_dir/<stem>.mps and solves it.
Solution solve_model(const ModelInstance& model, const std::string& work_dir,
                     const std::string& stem, const SolveOptions& opts);

Solution parse_solution_file(const std::string& path);

}  // namespace gasplan
