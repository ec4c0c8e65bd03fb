#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <sstream>

#include "toolkit.hpp"

using namespace gasplan;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("run_scenario persists model, solution and reports") {
    auto c = testsup::load_case("counterflow");
    auto dir = testsup::scratch_dir("run_files");
    auto r = run_scenario(c.sys, c.ts, c.cfg, dir);
    REQUIRE(r.solution.feasible());
    CHECK(fs::exists(r.model_file));
    CHECK(fs::exists(r.lp_file));
    CHECK(fs::exists(r.solution_file));
    CHECK(fs::exists(fs::path(dir) / "solution.csv"));
    CHECK(fs::exists(fs::path(dir) / "costs.csv"));
    CHECK(fs::exists(fs::path(dir) / "costs.txt"));
    CHECK(fs::exists(fs::path(dir) / "violations.csv"));

    // identical inputs emit byte-identical model files
    auto dir2 = testsup::scratch_dir("run_files2");
    auto r2 = run_scenario(c.sys, c.ts, c.cfg, dir2);
    CHECK(slurp(r.model_file) == slurp(r2.model_file));
    CHECK(slurp(r.lp_file) == slurp(r2.lp_file));
    // and reports are deterministic given identical solver output
    CHECK(slurp((fs::path(dir) / "solution.csv").string()) ==
          slurp((fs::path(dir2) / "solution.csv").string()));

    // solution.csv round-trips values
    auto values = read_solution_csv((fs::path(dir) / "solution.csv").string());
    CHECK(values.at(vname("fCH4", 1, 1, "nA_nB_1")) ==
          doctest::Approx(r.solution.value(vname("fCH4", 1, 1, "nA_nB_1"))));
}

TEST_CASE("infeasible models report status and leave a hint") {
    auto c = testsup::load_case("counterflow");
    // impossible: demand far above well and pipe capacity, slacks removed
    c.cfg.big_m = 1e-9;  // pins h2ns/ch4ns to (numerically) zero
    for (auto& [key, v] : c.sys.demand_gas) v = 5.0;
    auto dir = testsup::scratch_dir("run_infeasible");
    auto r = run_scenario(c.sys, c.ts, c.cfg, dir);
    CHECK(r.solution.status == SolveStatus::Infeasible);
    CHECK(fs::exists(fs::path(dir) / "model_infeasible_hint.txt"));
}

TEST_CASE("audit with the identical formulation is a fixed point") {
    auto c = testsup::load_case("toy_enum");
    c.cfg.flow_formulation = FlowFormulation::BTP;
    auto plan = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("fx_plan"));
    REQUIRE(plan.solution.feasible());
    auto rep = audit_fixed_investments(plan, c.sys, c.ts, c.cfg,
                                       testsup::scratch_dir("fx_audit"));
    REQUIRE(rep.audit.solution.feasible());
    CHECK(std::fabs(rep.cost_delta) <=
          c.cfg.milp_gap * std::max(1.0, std::fabs(rep.plan_cost)) + 1e-6);
    CHECK(detect_violations(rep.audit.solution, c.sys, c.ts, c.cfg, ViolationKind::Sign)
              .empty());
    CHECK(detect_violations(rep.audit.solution, c.sys, c.ts, c.cfg, ViolationKind::Blend)
              .empty());
}

TEST_CASE("corridor: transport plan cannot deliver under the pressure problem") {
    auto c = testsup::load_case("corridor");
    ScenarioConfig cfg_plan = c.cfg;
    cfg_plan.flow_formulation = FlowFormulation::BTP;
    auto plan = run_scenario(c.sys, c.ts, cfg_plan, testsup::scratch_dir("cor_plan"));
    REQUIRE(plan.solution.feasible());
    // the transport plan serves everything
    CHECK(plan.solution.value(vname("h2ns", 1, 1, "nY__ded")) == doctest::Approx(0.0));

    ScenarioConfig cfg_audit = c.cfg;
    cfg_audit.flow_formulation = FlowFormulation::BPP;
    auto rep = audit_fixed_investments(plan, c.sys, c.ts, cfg_audit,
                                       testsup::scratch_dir("cor_audit"));
    REQUIRE(rep.audit.solution.feasible());
    CHECK(rep.total_h2ns > 1e-6);
    // part of the demand still arrives through the corridor
    CHECK(rep.total_h2ns < 0.036 * 2 * 2);
    CHECK(rep.h2ns_share > 0.0);
    CHECK(rep.cost_delta > 0.0);
    // the plan's own flows violate the pressure envelope of the corridor
    CHECK(!rep.plan_pressure_violations.empty());
}

TEST_CASE("implied pressures propagate the steady-state drop") {
    auto c = testsup::load_case("corridor");
    Solution sol;
    sol.status = SolveStatus::Optimal;
    double f = 0.416;
    sol.values[vname("fGas", 1, 1, "nW_nX_1")] = f;
    sol.values[vname("fGas", 1, 1, "nX_nY_1")] = f;
    auto implied = implied_squared_pressures(sol, c.sys, 1, 1);
    double drop = f * f / 6.808e-5;
    CHECK(implied.at("nW") == doctest::Approx(4624.0));
    CHECK(implied.at("nX") == doctest::Approx(4624.0 - drop).epsilon(1e-9));
    CHECK(implied.at("nY") == doctest::Approx(4624.0 - 2 * drop).epsilon(1e-9));

    // reverse flow raises pressure upstream of the reference
    Solution rev;
    rev.status = SolveStatus::Optimal;
    rev.values[vname("fGas", 1, 1, "nW_nX_1")] = -0.1;
    rev.values[vname("fGas", 1, 1, "nX_nY_1")] = 0.0;
    auto implied2 = implied_squared_pressures(rev, c.sys, 1, 1);
    CHECK(implied2.at("nX") == doctest::Approx(4624.0 + 0.01 / 6.808e-5).epsilon(1e-9));
}

TEST_CASE("mop detector flags implied under-pressure") {
    auto c = testsup::load_case("corridor");
    Solution sol;
    sol.status = SolveStatus::Optimal;
    for (int k = 1; k <= 2; ++k) {
        sol.values[vname("fGas", 1, k, "nW_nX_1")] = 0.416;
        sol.values[vname("fGas", 1, k, "nX_nY_1")] = 0.416;
    }
    auto v = detect_violations(sol, c.sys, c.ts, c.cfg, ViolationKind::Mop);
    REQUIRE(!v.empty());
    bool under = false;
    for (const auto& x : v) under |= x.detail == "under_lb";
    CHECK(under);
}

TEST_CASE("pressure profile decreases along a loaded stretch") {
    auto c = testsup::load_case("corridor");
    c.cfg.flow_formulation = FlowFormulation::BPP;
    auto r = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("profile_run"));
    REQUIRE(r.solution.feasible());
    auto rows = pressure_profile(r.solution, c.sys, c.ts, {"nW", "nX", "nY"});
    REQUIRE(rows.size() == 6);  // 3 nodes x 2 periods
    for (std::size_t i = 0; i < rows.size(); i += 3) {
        CHECK(rows[i].pressure_bar >= rows[i + 1].pressure_bar - 1e-9);
        CHECK(rows[i + 1].pressure_bar >= rows[i + 2].pressure_bar - 1e-9);
        CHECK(rows[i].mop_bar == doctest::Approx(68.0));
        CHECK(rows[i].lb_bar == doctest::Approx(43.0));
    }
    auto dir = testsup::scratch_dir("profile_csv");
    write_pressure_profile_csv(rows, (fs::path(dir) / "pressure_profile.csv").string());
    auto a = slurp((fs::path(dir) / "pressure_profile.csv").string());
    write_pressure_profile_csv(rows, (fs::path(dir) / "pressure_profile2.csv").string());
    CHECK(a == slurp((fs::path(dir) / "pressure_profile2.csv").string()));
}

TEST_CASE("violation ordering is deterministic") {
    auto c = testsup::load_case("counterflow");
    c.cfg.flow_formulation = FlowFormulation::STP;
    auto r = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("violation_det"));
    REQUIRE(r.solution.feasible());
    auto v1 = detect_violations(r.solution, c.sys, c.ts, c.cfg, ViolationKind::Blend);
    auto v2 = detect_violations(r.solution, c.sys, c.ts, c.cfg, ViolationKind::Blend);
    REQUIRE(v1.size() == v2.size());
    for (std::size_t i = 0; i < v1.size(); ++i) {
        CHECK(v1[i].entity == v2[i].entity);
        CHECK(v1[i].rp == v2[i].rp);
        CHECK(v1[i].k == v2[i].k);
    }
}

#ifdef GASPLAN_CLI
TEST_CASE("cli subcommands and exit codes") {
    std::string cli = GASPLAN_CLI;
    std::string out = testsup::scratch_dir("cli_out");
    std::string solver = " --solver \"" GASPLAN_SOLVER_CMD "\"";

    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };

    CHECK(run("validate --case " + testsup::case_dir("counterflow")) == 0);
    CHECK(run("physics --case " + testsup::case_dir("skeleton12") + " --out-dir " + out) == 0);
    CHECK(run("physics --case " + testsup::case_dir("skeleton12") +
              " --calibrate n01_n02_1=6.808e-5 --breakpoints 6 --out-dir " + out) == 0);
    CHECK(fs::exists(fs::path(out) / "breakpoints.csv"));
    CHECK(run("plan --case " + testsup::case_dir("counterflow") + " --out-dir " + out + "/plan" +
              solver) == 0);
    CHECK(run("audit --case " + testsup::case_dir("corridor") +
              " --plan-formulation btp --audit-formulation bpp --pressure-path nW,nX,nY"
              " --out-dir " + out + "/audit" + solver) == 0);
    CHECK(fs::exists(fs::path(out) / "audit" / "audit" / "regret.csv"));
    CHECK(fs::exists(fs::path(out) / "audit" / "pressure_profile.csv"));

    // usage errors exit with 2
    CHECK(run("plan --case " + testsup::case_dir("counterflow") + " --formulation quadratic" +
              solver) == 2);
    CHECK(run("nonsense") == 2);
    // infeasible models exit with 1
    auto broken = testsup::scratch_dir("cli_broken");
    for (const auto& e : fs::directory_iterator(testsup::case_dir("counterflow")))
        fs::copy_file(e.path(), fs::path(broken) / e.path().filename());
    {
        std::ofstream cfg(fs::path(broken) / "scenario.cfg", std::ios::app);
        cfg << "big_m=1e-9\n";
        std::ofstream dg(fs::path(broken) / "demand_gas.csv");
        dg << "rp,k,node,class,value\n1,1,nB,oth,5.0\n1,2,nB,oth,5.0\n";
    }
    CHECK(run("plan --case " + broken + " --out-dir " + out + "/broken" + solver) == 1);
    // a dead solver command maps to the environment exit code
    CHECK(run("plan --case " + testsup::case_dir("counterflow") + " --out-dir " + out +
              "/dead --solver /nonexistent/solver-binary") == 3);
}
#endif

TEST_CASE("twelve-node case plans without load shedding") {
    auto c = testsup::load_case("skeleton12");
    auto r = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("skeleton_plan"));
    REQUIRE(r.solution.feasible());

    double sum = 0;
    for (double v : r.cost_breakdown) sum += v;
    CHECK(sum == doctest::Approx(r.solution.objective).epsilon(1e-6));
    CHECK(r.cost_breakdown[static_cast<int>(CostTerm::Ens)] == doctest::Approx(0.0));
    CHECK(r.cost_breakdown[static_cast<int>(CostTerm::GasSupply)] > 100.0);
    CHECK(r.cost_breakdown[static_cast<int>(CostTerm::InvestGen)] > 10.0);
    // hydrogen demand at node 6 pulls in production or storage investment
    double h2cap = r.solution.value(vname_x("x", "pemel6")) +
                   r.solution.value(vname_x("x", "smr6"));
    CHECK(h2cap > 0.1);

    CHECK(detect_violations(r.solution, c.sys, c.ts, c.cfg, ViolationKind::Sign).empty());
    CHECK(detect_violations(r.solution, c.sys, c.ts, c.cfg, ViolationKind::Blend).empty());

    // the blend energy identity holds on every (rp,k,node,class)
    double h_ch4 = c.sys.constants.h_ch4, h_h2 = c.sys.constants.h_h2;
    for (int rp = 1; rp <= c.ts.n_rp(); ++rp)
        for (int k = 1; k <= c.ts.n_k(); ++k)
            for (const auto& [node, cl] : c.sys.demand_pairs()) {
                std::string ent = node + "__" + cl;
                double res = c.sys.gas_demand(rp, k, node, cl) * h_ch4 -
                             r.solution.value(vname("dCH4", rp, k, ent)) * h_ch4 -
                             r.solution.value(vname("dH2", rp, k, ent)) * h_h2;
                CHECK(std::fabs(res) <= 1e-9);
            }
}
