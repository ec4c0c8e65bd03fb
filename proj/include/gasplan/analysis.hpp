#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gasplan/formulation.hpp"
#include "gasplan/solve.hpp"

namespace gasplan {

enum class ViolationKind { Sign, Blend, Mop, Balance };
const char* to_string(ViolationKind k);
ViolationKind violation_kind_from_string(const std::string& s);

struct Violation {
    ViolationKind kind = ViolationKind::Sign;
    std::string entity;  // pipeline key or node id
    int rp = 0;
    int k = 0;
    double amount = 0.0;     // excess in flow units / bar / residual
    std::string detail;      // e.g. "over_mop", "under_lb", "opposite", "flip"
};

// Tolerances for violation scans: absolute in flow units, bar for pressures.
struct ViolationTolerance {
    double flow = 1e-6;
    double pressure_bar = 1e-4;
};

struct ScenarioResult {
    ScenarioConfig cfg;
    Solution solution;
    std::array<double, kCostTermCount> cost_breakdown{};
    std::size_t variable_count = 0;
    std::size_t discrete_count = 0;
    std::string model_file;     // emitted model (free MPS)
    std::string lp_file;        // emitted model (LP)
    std::string solution_file;  // raw solver output
};

// End-to-end build -> emit -> solve -> parse -> sanity-check; files land in
// out_dir. Infeasible models still return (status carries the outcome) and
// leave a constraint-name dump next to the model file.
ScenarioResult run_scenario(const EnergySystem& sys, const TemporalStructure& ts,
                            const ScenarioConfig& cfg, const std::string& out_dir);

struct RegretReport {
    FlowFormulation plan_formulation;
    FlowFormulation audit_formulation;
    double total_h2ns = 0.0;       // MSm3 over the weighted year
    double h2ns_share = 0.0;       // of total hydrogen deployment
    double total_ch4ns = 0.0;      // MSm3
    double plan_cost = 0.0;
    double audit_cost = 0.0;
    double cost_delta = 0.0;       // audit minus plan
    std::vector<Violation> plan_pressure_violations;  // implied by plan flows
    ScenarioResult audit;
};

// Fixes the plan's investment decisions and re-solves the operational
// problem under the audit configuration (typically the pressure problem).
RegretReport audit_fixed_investments(const ScenarioResult& plan, const EnergySystem& sys,
                                     const TemporalStructure& ts, ScenarioConfig cfg_audit,
                                     const std::string& out_dir);

// Exhaustive violation scan over a solved point, deterministic ordering.
// Solutions without pressure variables get them reconstructed from flows.
std::vector<Violation> detect_violations(const Solution& sol, const EnergySystem& sys,
                                         const TemporalStructure& ts, const ScenarioConfig& cfg,
                                         ViolationKind kind,
                                         ViolationTolerance tol = {});

// Squared pressures implied by the gas flows of a solution: per (rp,k) a
// breadth-first propagation of p_m^2 - f|f|/R from a reference node pinned at
// its maximum operating pressure (per connected component, the node with the
// highest bound; compressor arcs are traversed without a pressure relation).
std::map<std::string, double> implied_squared_pressures(const Solution& sol,
                                                        const EnergySystem& sys, int rp, int k);

struct PressureSample {
    std::string node;
    int rp = 0, k = 0;
    double pressure_bar = 0.0;
    double lb_bar = 0.0;
    double mop_bar = 0.0;
};

// Nodal pressures along a path, with bound reference columns; uses solved
// pressure variables when present, implied pressures otherwise.
std::vector<PressureSample> pressure_profile(const Solution& sol, const EnergySystem& sys,
                                             const TemporalStructure& ts,
                                             const std::vector<std::string>& path);

// report writers (deterministic, plot-ready tables)
void write_solution_csv(const ScenarioResult& r, const ModelInstance& model,
                        const std::string& path);
void write_costs_csv(const ScenarioResult& r, const std::string& path);
void write_costs_report(const ScenarioResult& r, const std::string& path);
void write_violations_csv(const std::vector<Violation>& v, const std::string& path);
void write_pressure_profile_csv(const std::vector<PressureSample>& rows,
                                const std::string& path);
void write_regret_csv(const RegretReport& r, const std::string& path);

// Loads variable values back from a solution.csv.
std::unordered_map<std::string, double> read_solution_csv(const std::string& path);

}  // namespace gasplan
