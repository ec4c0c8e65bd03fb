#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toolkit.hpp"

using namespace gasplan;
using testsup::make_unit;
using testsup::probe_config;
using testsup::single_node_system;

namespace {

// two nodes joined by one pipeline, with a well on one side and gas demand
// on the other; optionally a compressor instead of the pipeline
EnergySystem two_node_system(bool with_pipe = true) {
    EnergySystem sys;
    sys.buses.push_back({"b1"});
    sys.nodes.push_back({"nA", 1849.0, 4624.0});
    sys.nodes.push_back({"nB", 1849.0, 4624.0});
    sys.classes.push_back({"oth", "others", 0.0, 0.0, 0.0});
    if (with_pipe) {
        Pipeline p;
        p.from_node = "nA";
        p.to_node = "nB";
        p.circuit = "1";
        p.length_m = 70000;
        p.diameter_m = 0.6;
        p.roughness_mm = 0.4;
        p.r_gas = 6.808e-5;
        p.f_max = 0.435;
        p.existing = true;
        sys.pipelines.push_back(p);
    }
    Unit w = make_unit("w", UnitKind::GasWell);
    w.node = "nA";
    w.p_max = 1.0;
    w.eu = 1;
    sys.units.push_back(w);
    return sys;
}

}  // namespace

TEST_CASE("stp: component bounds scale with the blending rate") {
    auto sys = two_node_system();
    sys.demand_gas[{1, 1, "nB", "oth"}] = 0.2;
    auto bm = build_model(sys, TemporalStructure::full_chronology(1), probe_config());
    const auto& m = bm.model;
    const Variable& fh = m.variable(m.find_variable(vname("fH2", 1, 1, "nA_nB_1")));
    CHECK(fh.lb == doctest::Approx(-0.0435));
    CHECK(fh.ub == doctest::Approx(0.0435));
    const Variable& fc = m.variable(m.find_variable(vname("fCH4", 1, 1, "nA_nB_1")));
    CHECK(fc.ub == doctest::Approx(0.435 * 0.9));
    const Variable& fg = m.variable(m.find_variable(vname("fGas", 1, 1, "nA_nB_1")));
    CHECK(fg.ub == doctest::Approx(0.435));
}

TEST_CASE("candidate pipeline stays closed until built") {
    auto sys = two_node_system();
    sys.pipelines[0].existing = false;
    sys.pipelines[0].invest_cost = 27;
    sys.pipelines[0].annuity_rate = 0.05;
    sys.demand_gas[{1, 1, "nB", "oth"}] = 0.2;
    auto ts = TemporalStructure::full_chronology(1);

    for (auto f : {FlowFormulation::STP, FlowFormulation::BTP, FlowFormulation::BPP}) {
        auto cfg = probe_config(f);
        auto bm = build_model(sys, ts, cfg);
        bm.model.fix(bm.model.find_variable(vname_x("xPipe", "nA_nB_1")), 0.0);
        auto n = std::string("gate_") + to_string(f);
        double flow = testsup::maximize_var(bm, vname("fGas", 1, 1, "nA_nB_1"), n);
        CHECK(flow == doctest::Approx(0.0));
    }
}

TEST_CASE("stp admits the pathologies, btp excludes them") {
    auto c = testsup::load_case("counterflow");
    c.cfg.flow_formulation = FlowFormulation::STP;
    auto stp = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("counterflow_stp"));
    REQUIRE(stp.solution.feasible());

    // natural gas flows toward the demand, hydrogen back toward its sink
    double fc_ab = stp.solution.value(vname("fCH4", 1, 1, "nA_nB_1"));
    double fh_ab = stp.solution.value(vname("fH2", 1, 1, "nA_nB_1"));
    CHECK(fc_ab == doctest::Approx(0.35).epsilon(1e-6));
    CHECK(fh_ab == doctest::Approx(-0.03).epsilon(1e-6));

    // blend-rate breach on the second pipe: 0.03 of hydrogen on 0.05 of gas
    double fh_bc = stp.solution.value(vname("fH2", 1, 1, "nB_nC_1"));
    CHECK(fh_bc == doctest::Approx(0.03).epsilon(1e-6));

    auto sign = detect_violations(stp.solution, c.sys, c.ts, c.cfg, ViolationKind::Sign);
    auto blend = detect_violations(stp.solution, c.sys, c.ts, c.cfg, ViolationKind::Blend);
    CHECK(!sign.empty());
    CHECK(!blend.empty());

    // same instance under the blending transport problem
    c.cfg.flow_formulation = FlowFormulation::BTP;
    auto btp = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("counterflow_btp"));
    REQUIRE(btp.solution.feasible());
    CHECK(detect_violations(btp.solution, c.sys, c.ts, c.cfg, ViolationKind::Sign).empty());
    CHECK(detect_violations(btp.solution, c.sys, c.ts, c.cfg, ViolationKind::Blend).empty());
    // repairing the physics costs something
    CHECK(btp.solution.objective > stp.solution.objective + 1e-6);
    // hydrogen at nA can no longer be supplied against the gas direction
    double h2ns_a = btp.solution.value(vname("h2ns", 1, 1, "nA__ded"));
    CHECK(h2ns_a == doctest::Approx(0.03).epsilon(1e-6));
}

TEST_CASE("btp: alpha pins one direction per representative period") {
    // flip incentive: nB demands in k1, nA demands in k2
    auto sys = two_node_system();
    Unit wb = make_unit("wb", UnitKind::GasWell);
    wb.node = "nB";
    wb.p_max = 1.0;
    wb.eu = 1;
    sys.units.push_back(wb);
    sys.demand_gas[{1, 1, "nB", "oth"}] = 1.2;  // beyond local well
    sys.demand_gas[{1, 2, "nA", "oth"}] = 1.2;

    std::vector<RpK> gamma = {{1, 1}, {1, 2}};
    auto ts = TemporalStructure::representative(gamma, {1.0}, {1.0, 1.0}, WeightTargets{1, 2});
    auto cfg = probe_config(FlowFormulation::STP);
    cfg.c_ch4ns = 1.0;
    auto stp = build_model(sys, ts, cfg);
    auto sol_stp = testsup::solve(stp, "flip_stp");
    REQUIRE(sol_stp.feasible());
    auto flips = detect_violations(sol_stp, sys, ts, cfg, ViolationKind::Sign);
    REQUIRE(!flips.empty());
    CHECK(flips.front().detail == "flip");

    cfg.flow_formulation = FlowFormulation::BTP;
    auto btp = build_model(sys, ts, cfg);
    auto sol_btp = testsup::solve(btp, "flip_btp");
    REQUIRE(sol_btp.feasible());
    CHECK(detect_violations(sol_btp, sys, ts, cfg, ViolationKind::Sign).empty());
    // one direction is sacrificed: the reverse-period demand goes unserved
    CHECK(sol_btp.objective > sol_stp.objective + 1e-9);
}

TEST_CASE("bpp: breakpoint-exact flow reproduces the squared pressure drop") {
    auto sys = two_node_system();
    sys.demand_gas[{1, 1, "nB", "oth"}] = 0.29;
    auto ts = TemporalStructure::full_chronology(1);
    auto cfg = probe_config(FlowFormulation::BPP);
    cfg.c_ch4ns = 10.0;  // force serving the demand
    auto bm = build_model(sys, ts, cfg);
    // pin the flow on the third breakpoint of [-0.435, 0.435] with 6 segments
    bm.model.fix(bm.model.find_variable(vname("fGas", 1, 1, "nA_nB_1")), 0.29);
    auto sol = testsup::solve(bm, "bpp_exact");
    REQUIRE(sol.feasible());
    double pm = sol.value(vname("pSqr", 1, 1, "nA"));
    double pn = sol.value(vname("pSqr", 1, 1, "nB"));
    CHECK(6.808e-5 * (pm - pn) == doctest::Approx(0.29 * 0.29).epsilon(1e-9));
}

TEST_CASE("bpp solutions respect the chord-error certificate") {
    auto c = testsup::load_case("corridor");
    c.cfg.flow_formulation = FlowFormulation::BPP;
    auto r = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("corridor_bpp"));
    REQUIRE(r.solution.feasible());
    auto mop = detect_violations(r.solution, c.sys, c.ts, c.cfg, ViolationKind::Mop);
    CHECK(mop.empty());

    for (const auto& p : c.sys.pipelines) {
        auto bp = physics::build_breakpoints(p.f_max, c.cfg.n_increments);
        double bound = bp.max_chord_error() / p.r_gas + 1e-6;
        for (int k = 1; k <= c.ts.n_k(); ++k) {
            double f = r.solution.value(vname("fGas", 1, k, p.key()));
            double pm = r.solution.value(vname("pSqr", 1, k, p.from_node));
            double pn = r.solution.value(vname("pSqr", 1, k, p.to_node));
            double residual = std::fabs((pm - pn) - f * std::fabs(f) / p.r_gas);
            CHECK(residual <= bound);
        }
    }
}

TEST_CASE("bpp: unbuilt candidate slack absorbs the pressure-implied flow") {
    auto sys = two_node_system();
    sys.pipelines[0].existing = false;
    sys.pipelines[0].invest_cost = 1000.0;  // never worth building
    sys.pipelines[0].annuity_rate = 1.0;
    sys.demand_gas[{1, 1, "nB", "oth"}] = 0.1;
    auto ts = TemporalStructure::full_chronology(1);
    auto cfg = probe_config(FlowFormulation::BPP);
    auto bm = build_model(sys, ts, cfg);
    bm.model.fix(bm.model.find_variable(vname_x("xPipe", "nA_nB_1")), 0.0);
    // spread the endpoint pressures as far as the bounds allow
    VarId pa = bm.model.find_variable(vname("pSqr", 1, 1, "nA"));
    VarId pb = bm.model.find_variable(vname("pSqr", 1, 1, "nB"));
    bm.model.fix(pa, 4624.0);
    bm.model.fix(pb, 1849.0);
    auto sol = testsup::solve(bm, "bpp_slack");
    REQUIRE(sol.feasible());
    CHECK(sol.value(vname("fGas", 1, 1, "nA_nB_1")) == doctest::Approx(0.0));
    // rho carries the piecewise image of the full pressure spread: the last
    // increment fills up to R*(4624-1849) on the squared axis
    auto bp = physics::build_breakpoints(0.435, 6);
    double fill = (6.808e-5 * 2775.0 - bp.squared[5]) / (bp.squared[6] - bp.squared[5]);
    double expected = bp.flow[5] + (bp.flow[6] - bp.flow[5]) * fill;
    CHECK(std::fabs(sol.value(vname("rho", 1, 1, "nA_nB_1"))) ==
          doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("compressor pressure relations") {
    auto sys = two_node_system(false);
    sys.nodes[1].p_max_sqr = 10000.0;  // let the boost cap bind, not the node
    Compressor c;
    c.from_node = "nA";
    c.to_node = "nB";
    c.circuit = "1";
    c.ratio_sqr = 2.0;
    c.max_boost = 30.0;
    c.cons_ch4 = 0.0015;
    c.cons_h2 = 0.0015;
    c.f_max = 1.0;
    sys.compressors.push_back(c);
    auto ts = TemporalStructure::full_chronology(1);
    auto cfg = probe_config(FlowFormulation::BPP);

    // absolute boost cap: 68^2 - (68-30)^2 = 3180 bar^2
    auto bm = build_model(sys, ts, cfg);
    VarId pa = bm.model.find_variable(vname("pSqr", 1, 1, "nA"));
    bm.model.fix(pa, 4624.0);
    double pb = testsup::maximize_var(bm, vname("pSqr", 1, 1, "nB"), "cmp_boost");
    CHECK(pb == doctest::Approx(4624.0 + 3180.0).epsilon(1e-9));

    // relative ratio binds when the boost cap is loose
    auto sys2 = sys;
    sys2.compressors[0].ratio_sqr = 1.2;
    sys2.compressors[0].max_boost = 67.0;  // boost cap 4624-1 far above ratio
    auto bm2 = build_model(sys2, ts, cfg);
    VarId pa2 = bm2.model.find_variable(vname("pSqr", 1, 1, "nA"));
    bm2.model.fix(pa2, 3000.0);
    double pb2 = testsup::maximize_var(bm2, vname("pSqr", 1, 1, "nB"), "cmp_ratio");
    CHECK(pb2 == doctest::Approx(3600.0).epsilon(1e-9));
}

TEST_CASE("compressor blend cap and self consumption") {
    auto sys = two_node_system(false);
    Compressor c;
    c.from_node = "nA";
    c.to_node = "nB";
    c.circuit = "1";
    c.ratio_sqr = 1.2;
    c.max_boost = 30.0;
    c.cons_ch4 = 0.0015;
    c.cons_h2 = 0.0015;
    c.f_max = 1.0;
    sys.compressors.push_back(c);
    sys.demand_gas[{1, 1, "nB", "oth"}] = 0.2;
    auto ts = TemporalStructure::full_chronology(1);
    auto cfg = probe_config();
    cfg.c_ch4ns = 10.0;
    auto bm = build_model(sys, ts, cfg);
    auto sol = testsup::solve(bm, "cmp_cons");
    REQUIRE(sol.feasible());
    // inlet node supplies throughput plus 0.15% self-consumption
    double f = sol.value(vname("fCmpCH4", 1, 1, "nA_nB_1"));
    double well = sol.value(vname("pCH4", 1, 1, "w"));
    CHECK(f == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(well == doctest::Approx(0.2 * 1.0015).epsilon(1e-6));

    // hydrogen through the compressor is capped by the blend share
    auto bm2 = build_model(sys, ts, cfg);
    bm2.model.fix(bm2.model.find_variable(vname("fCmpCH4", 1, 1, "nA_nB_1")), 0.0);
    double fh = testsup::maximize_var(bm2, vname("fCmpH2", 1, 1, "nA_nB_1"), "cmp_blend");
    CHECK(fh == doctest::Approx(0.0));
}

TEST_CASE("balances hold exactly in solved points") {
    auto c = testsup::load_case("counterflow");
    for (auto f : {FlowFormulation::STP, FlowFormulation::BTP, FlowFormulation::BPP}) {
        c.cfg.flow_formulation = f;
        auto r = run_scenario(c.sys, c.ts, c.cfg,
                              testsup::scratch_dir(std::string("counterflow_bal_") + to_string(f)));
        REQUIRE(r.solution.feasible());
        auto bal =
            detect_violations(r.solution, c.sys, c.ts, c.cfg, ViolationKind::Balance,
                              {1e-9, 1e-4});
        CHECK(bal.empty());
    }
}

TEST_CASE("pressure problem is at least as costly as the transport problem") {
    auto c = testsup::load_case("toy_enum");
    c.cfg.flow_formulation = FlowFormulation::BTP;
    auto btp = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("order_btp"));
    c.cfg.flow_formulation = FlowFormulation::BPP;
    auto bpp = run_scenario(c.sys, c.ts, c.cfg, testsup::scratch_dir("order_bpp"));
    REQUIRE(btp.solution.feasible());
    REQUIRE(bpp.solution.feasible());
    CHECK(bpp.solution.objective >= btp.solution.objective - 1e-6);
}

TEST_CASE("btp mirrored envelope under reverse flow") {
    auto sys = two_node_system();
    sys.demand_gas[{1, 1, "nB", "oth"}] = 0.2;
    // sinks at nA so reverse gas and hydrogen have somewhere to go
    sys.demand_gas[{1, 1, "nA", "oth"}] = 0.5;
    sys.demand_h2[{1, 1, "nA", "oth"}] = 0.5;
    auto ts = TemporalStructure::full_chronology(1);
    auto cfg = probe_config(FlowFormulation::BTP);
    // pin reverse direction and a reverse natural gas flow of 0.2
    auto bm = build_model(sys, ts, cfg);
    bm.model.fix(bm.model.find_variable(vname_rp("alpha", 1, "nA_nB_1")), 0.0);
    bm.model.fix(bm.model.find_variable(vname("fCH4", 1, 1, "nA_nB_1")), -0.2);
    // hydrogen must flow the same way, at most 10% of the gas magnitude
    auto bm_hi = build_model(sys, ts, cfg);
    bm_hi.model.fix(bm_hi.model.find_variable(vname_rp("alpha", 1, "nA_nB_1")), 0.0);
    bm_hi.model.fix(bm_hi.model.find_variable(vname("fCH4", 1, 1, "nA_nB_1")), -0.2);
    double top = testsup::maximize_var(bm_hi, vname("fH2", 1, 1, "nA_nB_1"), "env_rev_hi");
    CHECK(top == doctest::Approx(0.0));

    VarId fh = bm.model.find_variable(vname("fH2", 1, 1, "nA_nB_1"));
    bm.model.add_objective(fh, 1.0);  // minimize: push toward the envelope floor
    auto sol = testsup::solve(bm, "env_rev_lo");
    REQUIRE(sol.feasible());
    CHECK(sol.value(vname("fH2", 1, 1, "nA_nB_1")) == doctest::Approx(-0.02).epsilon(1e-9));
}

TEST_CASE("bpp: reverse flow maps onto the negative breakpoint branch") {
    auto sys = two_node_system();
    // demand on the from-side so the optimum pulls gas backwards
    Unit wb = make_unit("wb", UnitKind::GasWell);
    wb.node = "nB";
    wb.p_max = 1.0;
    wb.eu = 1;
    sys.units.push_back(wb);
    sys.demand_gas[{1, 1, "nA", "oth"}] = 0.29;
    auto ts = TemporalStructure::full_chronology(1);
    auto cfg = probe_config(FlowFormulation::BPP);
    cfg.c_ch4ns = 10.0;
    auto bm = build_model(sys, ts, cfg);
    bm.model.fix(bm.model.find_variable(vname("fGas", 1, 1, "nA_nB_1")), -0.29);
    auto sol = testsup::solve(bm, "bpp_reverse");
    REQUIRE(sol.feasible());
    double pm = sol.value(vname("pSqr", 1, 1, "nA"));
    double pn = sol.value(vname("pSqr", 1, 1, "nB"));
    // f|f| = -0.0841 so the downstream-turned-upstream node sits higher
    CHECK(6.808e-5 * (pm - pn) == doctest::Approx(-0.29 * 0.29).epsilon(1e-9));
    CHECK(pn > pm);
}
