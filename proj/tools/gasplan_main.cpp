// Command-line front end: expansion planning, fixed-investment operation,
// plan/audit regret pipeline, pipeline physics tables, and input validation.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "gasplan/analysis.hpp"
#include "gasplan/csv.hpp"
#include "gasplan/physics.hpp"

namespace fs = std::filesystem;
using namespace gasplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEnvironment = 3;

struct CommonArgs {
    std::string case_dir;
    std::string config_file;
    std::string out_dir = "out";
    std::string formulation;
    std::string solver;
    double blend_max = -1;
    double kappa = -1;
    double co2 = -1;
    double gap = -1;
    int increments = 0;
    int mow = -1;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_solve_flags = true) {
    cmd->add_option("--case", a.case_dir, "directory with system + temporal CSV tables")
        ->required();
    cmd->add_option("--config", a.config_file,
                    "scenario config file (default: <case>/scenario.cfg)");
    cmd->add_option("--out-dir", a.out_dir, "output directory");
    if (with_solve_flags) {
        cmd->add_option("--formulation", a.formulation, "gas flow formulation: stp|btp|bpp");
        cmd->add_option("--blend-max", a.blend_max, "max volumetric H2 blending rate");
        cmd->add_option("--kappa", a.kappa, "minimum renewable generation share");
        cmd->add_option("--co2-price", a.co2, "CO2 price (MEUR/MtCO2)");
        cmd->add_option("--gap", a.gap, "relative MILP gap");
        cmd->add_option("--increments", a.increments, "piecewise segments (pressure problem)");
        cmd->add_option("--mow", a.mow, "moving-window length in periods");
        cmd->add_option("--solver", a.solver, "solver command prefix");
    }
}

ScenarioConfig load_config(const CommonArgs& a) {
    std::string cfg_path = a.config_file.empty()
                               ? (fs::path(a.case_dir) / "scenario.cfg").string()
                               : a.config_file;
    ScenarioConfig cfg = fs::exists(cfg_path) ? ScenarioConfig::load(cfg_path)
                                              : ScenarioConfig{};
    if (!a.formulation.empty()) cfg.flow_formulation = formulation_from_string(a.formulation);
    if (a.blend_max >= 0) cfg.blend_max = a.blend_max;
    if (a.kappa >= 0) cfg.kappa = a.kappa;
    if (a.co2 >= 0) cfg.c_co2 = a.co2;
    if (a.gap >= 0) cfg.milp_gap = a.gap;
    if (a.increments > 0) cfg.n_increments = a.increments;
    if (a.mow >= 0) cfg.mow = a.mow;
    if (!a.solver.empty()) cfg.solver = a.solver;
    return cfg;
}

struct LoadedCase {
    EnergySystem sys;
    TemporalStructure ts = TemporalStructure::full_chronology(1);
};

LoadedCase load_case(const CommonArgs& a, const ScenarioConfig& cfg) {
    LoadedCase c;
    c.sys = EnergySystem::load(a.case_dir);
    c.ts = TemporalStructure::load(a.case_dir,
                                   WeightTargets{cfg.annual_days, cfg.annual_hours});
    if (cfg.mow > 0) {
        try {
            c.ts.set_mow(cfg.mow);
        } catch (const SchemaError& e) {
            throw ConfigError(e.what());
        }
    }
    return c;
}

int exit_code_for(const Solution& sol) {
    if (sol.feasible()) return kExitOk;
    // solver breakdowns (no status, no incumbent) are environment problems
    return sol.status == SolveStatus::Error ? kExitEnvironment : kExitInfeasible;
}

int cmd_plan(const CommonArgs& a) {
    ScenarioConfig cfg = load_config(a);
    auto c = load_case(a, cfg);
    auto r = run_scenario(c.sys, c.ts, cfg, a.out_dir);
    std::cout << "status " << to_string(r.solution.status) << "\n";
    if (r.solution.feasible())
        std::cout << "objective " << r.solution.objective << "\nvariables "
                  << r.variable_count << " (" << r.discrete_count << " discrete)\n";
    return exit_code_for(r.solution);
}

int cmd_operate(const CommonArgs& a, const std::string& investments) {
    ScenarioConfig cfg = load_config(a);
    cfg.mode = RunMode::OperateFixed;
    auto c = load_case(a, cfg);
    auto plan_values = read_solution_csv(investments);
    // reuse the audit entry point: a synthetic plan carrying only investments
    ScenarioResult fake_plan;
    fake_plan.cfg = cfg;
    fake_plan.solution.status = SolveStatus::Optimal;
    fake_plan.solution.values = plan_values;
    auto rep = audit_fixed_investments(fake_plan, c.sys, c.ts, cfg, a.out_dir);
    std::cout << "status " << to_string(rep.audit.solution.status) << "\n";
    if (rep.audit.solution.feasible())
        std::cout << "objective " << rep.audit.solution.objective << "\nh2ns_total "
                  << rep.total_h2ns << "\n";
    return exit_code_for(rep.audit.solution);
}

int cmd_audit(const CommonArgs& a, const std::string& plan_form,
              const std::string& audit_form, const std::string& profile_path) {
    ScenarioConfig cfg = load_config(a);
    ScenarioConfig cfg_plan = cfg, cfg_audit = cfg;
    cfg_plan.flow_formulation = formulation_from_string(plan_form);
    cfg_audit.flow_formulation = formulation_from_string(audit_form);
    auto c = load_case(a, cfg);

    auto plan = run_scenario(c.sys, c.ts, cfg_plan,
                             (fs::path(a.out_dir) / "plan").string());
    if (!plan.solution.feasible()) {
        std::cout << "plan status " << to_string(plan.solution.status) << "\n";
        return kExitInfeasible;
    }
    auto rep = audit_fixed_investments(plan, c.sys, c.ts, cfg_audit,
                                       (fs::path(a.out_dir) / "audit").string());
    std::cout << "plan objective " << rep.plan_cost << "\n";
    std::cout << "audit status " << to_string(rep.audit.solution.status) << "\n";
    std::cout << "audit objective " << rep.audit_cost << "\n";
    std::cout << "h2ns total " << rep.total_h2ns << " MSm3 (share " << rep.h2ns_share << ")\n";
    std::cout << "plan pressure violations " << rep.plan_pressure_violations.size() << "\n";

    if (!profile_path.empty()) {
        std::vector<std::string> path;
        std::string token;
        for (char ch : profile_path) {
            if (ch == ',') {
                path.push_back(token);
                token.clear();
            } else {
                token.push_back(ch);
            }
        }
        if (!token.empty()) path.push_back(token);
        auto rows = pressure_profile(rep.audit.solution, c.sys, c.ts, path);
        write_pressure_profile_csv(
            rows, (fs::path(a.out_dir) / "pressure_profile.csv").string());
    }
    return exit_code_for(rep.audit.solution);
}

int cmd_physics(const CommonArgs& a, const std::string& calibrate, int breakpoints) {
    ScenarioConfig cfg = load_config(a);
    auto sys = EnergySystem::load(a.case_dir);
    GasConstants gc = sys.constants;
    if (!calibrate.empty()) {
        auto eq = calibrate.find('=');
        if (eq == std::string::npos)
            throw ConfigError("--calibrate expects <pipeline-key>=<target-R>");
        std::string key = calibrate.substr(0, eq);
        double target = std::stod(calibrate.substr(eq + 1));
        for (const auto& p : sys.pipelines)
            if (p.key() == key) {
                gc.r_scale = physics::calibrate_resistance_scale(p, gc, target);
                std::cout << "r_scale " << gc.r_scale << "\n";
            }
    }
    CsvWriter w({"pipeline", "length_km", "diameter_m", "reynolds", "lambda", "r_gas",
                 "f_max_msm3h"});
    for (const auto& p : sys.pipelines) {
        double re = physics::reynolds(p.diameter_m, gc);
        double lambda = physics::chen_friction(re, p.roughness_mm, p.diameter_m);
        double r = physics::pipeline_resistance(p, gc);
        double cap = physics::max_capacity(r, sys.node(p.from_node), sys.node(p.to_node));
        w.add_row({p.key(), CsvWriter::format_number(p.length_m / 1000.0),
                   CsvWriter::format_number(p.diameter_m), CsvWriter::format_number(re),
                   CsvWriter::format_number(lambda), CsvWriter::format_number(r),
                   CsvWriter::format_number(cap)});
    }
    fs::create_directories(a.out_dir);
    auto out_path = (fs::path(a.out_dir) / "physics.csv").string();
    w.write_file(out_path);
    std::cout << w.to_string();

    if (breakpoints > 0) {
        CsvWriter bw({"pipeline", "inc", "flow", "signed_square"});
        for (const auto& p : sys.pipelines) {
            auto t = physics::build_breakpoints(p.f_max, breakpoints);
            for (std::size_t i = 0; i < t.flow.size(); ++i)
                bw.add_row({p.key(), std::to_string(i + 1),
                            CsvWriter::format_number(t.flow[i]),
                            CsvWriter::format_number(t.squared[i])});
        }
        bw.write_file((fs::path(a.out_dir) / "breakpoints.csv").string());
    }
    return kExitOk;
}

int cmd_validate(const CommonArgs& a) {
    ScenarioConfig cfg = load_config(a);
    auto c = load_case(a, cfg);
    auto issues = validate_attachments(c.sys);
    for (const auto& i : issues) std::cout << i.unit_id << ": " << i.message << "\n";
    std::cout << "buses " << c.sys.buses.size() << ", nodes " << c.sys.nodes.size()
              << ", pipelines " << c.sys.pipelines.size() << ", compressors "
              << c.sys.compressors.size() << ", units " << c.sys.units.size() << "\n";
    std::cout << "periods " << c.ts.n_periods() << ", rp " << c.ts.n_rp() << ", k "
              << c.ts.n_k() << ", mow " << c.ts.mow() << "\n";
    std::cout << (issues.empty() ? "attachments ok\n" : "attachment issues found\n");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integrated power / natural gas / hydrogen expansion planning"};
    app.require_subcommand(1);

    CommonArgs plan_args, operate_args, audit_args, physics_args, validate_args;
    std::string investments, plan_form = "btp", audit_form = "bpp", profile, calibrate;
    int breakpoints = 0;

    auto* plan = app.add_subcommand("plan", "solve the expansion-planning problem");
    add_common(plan, plan_args);

    auto* operate = app.add_subcommand("operate", "operational solve with fixed investments");
    add_common(operate, operate_args);
    operate->add_option("--investments", investments, "solution.csv with investment values")
        ->required();

    auto* audit = app.add_subcommand("audit", "plan, then audit under another formulation");
    add_common(audit, audit_args);
    audit->add_option("--plan-formulation", plan_form, "formulation for the planning run");
    audit->add_option("--audit-formulation", audit_form, "formulation for the audit run");
    audit->add_option("--pressure-path", profile,
                      "comma-separated node ids for pressure_profile.csv");

    auto* physics = app.add_subcommand("physics", "pipeline resistance / capacity table");
    add_common(physics, physics_args, false);
    physics->add_option("--calibrate", calibrate, "<pipeline-key>=<target-R> calibration");
    physics->add_option("--breakpoints", breakpoints,
                        "also dump piecewise tables with this many segments");

    auto* validate = app.add_subcommand("validate", "check inputs and attachments");
    add_common(validate, validate_args, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (plan->parsed()) return cmd_plan(plan_args);
        if (operate->parsed()) return cmd_operate(operate_args, investments);
        if (audit->parsed()) return cmd_audit(audit_args, plan_form, audit_form, profile);
        if (physics->parsed()) return cmd_physics(physics_args, calibrate, breakpoints);
        if (validate->parsed()) return cmd_validate(validate_args);
    } catch (const EnvironmentError& e) {
        std::cerr << "environment error: " << e.what() << "\n";
        return kExitEnvironment;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
