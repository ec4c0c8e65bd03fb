#pragma once

// In-memory system builders and solve helpers shared by the formulation and
// analysis test suites.

#include <string>

#include "gasplan/analysis.hpp"
#include "support.hpp"

namespace testsup {

using namespace gasplan;

inline EnergySystem single_node_system() {
    EnergySystem sys;
    sys.buses.push_back({"b1"});
    sys.nodes.push_back({"nA", 1849.0, 4624.0});
    sys.classes.push_back({"ded", "dedicated", 0.0, 0.0, 0.0});
    return sys;
}

inline Unit make_unit(const std::string& id, UnitKind kind) {
    Unit u;
    u.id = id;
    u.kind = kind;
    return u;
}

inline ScenarioConfig probe_config(FlowFormulation f = FlowFormulation::STP) {
    ScenarioConfig cfg;
    cfg.flow_formulation = f;
    cfg.milp_gap = 0.0;
    cfg.c_ch4 = 0.0;
    cfg.c_ens = 0.0;
    cfg.c_h2ns = 0.0;
    cfg.c_ch4ns = 0.0;
    return cfg;
}

inline Solution solve(BuiltModel& bm, const std::string& tag, double gap = 0.0) {
    return solve_model(bm.model, scratch_dir(tag), "m", solver_options(gap));
}

// Maximizes one variable on top of the model's own objective; only sensible
// when every cost coefficient is zero (probe_config systems).
inline double maximize_var(BuiltModel& bm, const std::string& name, const std::string& tag) {
    VarId id = bm.model.find_variable(name);
    if (id < 0) throw std::runtime_error("maximize_var: no variable " + name);
    bm.model.add_objective(id, -1.0);
    auto sol = solve(bm, tag);
    if (!sol.feasible()) throw std::runtime_error("maximize_var: infeasible probe for " + name);
    return sol.value(name);
}

inline ScenarioConfig case_config(const std::string& name) {
    return ScenarioConfig::load(
        (std::filesystem::path(case_dir(name)) / "scenario.cfg").string());
}

struct LoadedCase {
    EnergySystem sys;
    TemporalStructure ts = TemporalStructure::full_chronology(1);
    ScenarioConfig cfg;
};

inline LoadedCase load_case(const std::string& name) {
    LoadedCase c;
    c.cfg = case_config(name);
    c.sys = EnergySystem::load(case_dir(name));
    c.ts = TemporalStructure::load(case_dir(name),
                                   WeightTargets{c.cfg.annual_days, c.cfg.annual_hours});
    if (c.cfg.mow > 0) c.ts.set_mow(c.cfg.mow);
    c.cfg.solver = GASPLAN_SOLVER_CMD;
    return c;
}

}  // namespace testsup
