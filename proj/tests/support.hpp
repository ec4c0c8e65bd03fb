#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "gasplan/solve.hpp"

namespace testsup {

inline std::string source_dir() { return GASPLAN_SOURCE_DIR; }

inline std::string case_dir(const std::string& name) {
    return (std::filesystem::path(GASPLAN_SOURCE_DIR) / "data" / "cases" / name).string();
}

// Fresh scratch directory under the build tree.
inline std::string scratch_dir(const std::string& tag) {
    auto p = std::filesystem::path("scratch") / tag;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p.string();
}

inline gasplan::SolveOptions solver_options(double gap = 0.0, double time_limit = 300.0) {
    gasplan::SolveOptions o;
    o.gap = gap;
    o.time_limit_s = time_limit;
    o.solver = GASPLAN_SOLVER_CMD;
    return o;
}

}  // namespace testsup
