#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <fstream>

#include "gasplan/emit.hpp"
#include "gasplan/solve.hpp"
#include "support.hpp"

using namespace gasplan;

namespace {

ModelInstance tiny_lp() {
    ModelInstance m;
    VarId x = m.add_variable("x", VarKind::Continuous, 0, ModelInstance::kInf);
    m.add_constraint("c_low", Sense::GE, {{x, 1.0}}, 1.0);
    m.add_objective(x, 1.0);
    return m;
}

}  // namespace

TEST_CASE("names are deterministic and zero padded") {
    CHECK(vname("pE", 1, 2, "ccgt") == "pE__01__002__ccgt");
    CHECK(vname_rp("alpha", 3, "p1_2_1") == "alpha__03__p1_2_1");
    CHECK(vname_p("interH2", 24, "cav") == "interH2__p000024__cav");
    CHECK(vname_x("x", "well1") == "x__well1");
}

TEST_CASE("duplicate names are rejected") {
    ModelInstance m;
    m.add_variable("x", VarKind::Continuous, 0, 1);
    CHECK_THROWS_AS(m.add_variable("x", VarKind::Binary, 0, 1), EmissionError);
    m.add_constraint("c", Sense::LE, {}, 0.0);
    CHECK_THROWS_AS(m.add_constraint("c", Sense::LE, {}, 0.0), EmissionError);
}

TEST_CASE("emission is byte deterministic") {
    auto build = [] {
        ModelInstance m;
        VarId x = m.add_variable("x", VarKind::Integer, 0, 7);
        VarId y = m.add_variable("y", VarKind::Continuous, -1, 1);
        VarId b = m.add_variable("b", VarKind::Binary, 0, 1);
        m.add_constraint("c1", Sense::LE, {{x, 2.5}, {y, -1.0}}, 10.0);
        m.add_constraint("c2", Sense::EQ, {{b, 1.0}, {y, 1.0}}, 0.5);
        m.add_objective(x, 1.0);
        m.add_objective(y, 0.25);
        m.add_objective_constant(3.0);
        return m;
    };
    for (auto fmt : {FileFormat::LP, FileFormat::MpsFree, FileFormat::MpsFixed}) {
        auto a = emit_to_string(build(), fmt);
        auto b = emit_to_string(build(), fmt);
        CHECK(a == b);
        CHECK(!a.empty());
    }
}

TEST_CASE("solve a one-variable lp") {
    auto dir = testsup::scratch_dir("backend_lp");
    auto sol = solve_model(tiny_lp(), dir, "lp1", testsup::solver_options());
    CHECK(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.value("x") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("objective constant carried through mps") {
    ModelInstance m = tiny_lp();
    m.add_objective_constant(41.0);
    auto dir = testsup::scratch_dir("backend_const");
    auto sol = solve_model(m, dir, "lpc", testsup::solver_options());
    CHECK(sol.objective == doctest::Approx(42.0).epsilon(1e-9));
}

TEST_CASE("infeasible toy reports infeasible") {
    ModelInstance m;
    VarId x = m.add_variable("x", VarKind::Continuous, 0, ModelInstance::kInf);
    m.add_constraint("le", Sense::LE, {{x, 1.0}}, 0.0);
    m.add_constraint("ge", Sense::GE, {{x, 1.0}}, 1.0);
    m.add_objective(x, 1.0);
    auto dir = testsup::scratch_dir("backend_infeas");
    auto sol = solve_model(m, dir, "inf", testsup::solver_options());
    CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("knapsack matches subset enumeration") {
    // max 4a+5b+6c st 3a+4b+5c <= 8  ==  min of the negated objective
    const double value[3] = {4, 5, 6};
    const double weight[3] = {3, 4, 5};
    ModelInstance m;
    std::vector<VarId> items;
    std::vector<LinTerm> cap;
    for (int i = 0; i < 3; ++i) {
        VarId v = m.add_variable("item" + std::to_string(i), VarKind::Binary, 0, 1);
        items.push_back(v);
        cap.push_back({v, weight[i]});
        m.add_objective(v, -value[i]);
    }
    m.add_constraint("cap", Sense::LE, cap, 8.0);
    auto dir = testsup::scratch_dir("backend_knap");
    auto sol = solve_model(m, dir, "knap", testsup::solver_options());
    REQUIRE(sol.status == SolveStatus::Optimal);

    double best = 0;
    for (int mask = 0; mask < 8; ++mask) {
        double w = 0, v = 0;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) {
                w += weight[i];
                v += value[i];
            }
        if (w <= 8.0) best = std::max(best, v);
    }
    CHECK(-sol.objective == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("gap contract on a mip with known optimum") {
    // min sum xi st sum xi >= 100, xi integer in [0,10]; optimum 100
    ModelInstance m;
    std::vector<LinTerm> terms;
    for (int i = 0; i < 15; ++i) {
        VarId v = m.add_variable("x" + pad3(i), VarKind::Integer, 0, 10);
        terms.push_back({v, 1.0});
        m.add_objective(v, 1.0);
    }
    m.add_constraint("cover", Sense::GE, terms, 100.0);
    auto dir = testsup::scratch_dir("backend_gap");
    auto sol = solve_model(m, dir, "gap", testsup::solver_options(0.01));
    REQUIRE(sol.feasible());
    CHECK(sol.objective <= 101.0 + 1e-9);
    CHECK(sol.objective >= 100.0 - 1e-9);
}

TEST_CASE("large model emits quickly") {
    ModelInstance m;
    std::vector<LinTerm> sum;
    for (int i = 0; i < 100000; ++i) {
        VarId v = m.add_variable("v" + std::to_string(i), VarKind::Continuous, 0, 1);
        if (i % 7 == 0) sum.push_back({v, 1.0 + i % 3});
        m.add_objective(v, 1.0);
        if (i % 100 == 99) {
            m.add_constraint("c" + std::to_string(i), Sense::LE, sum, 50.0);
            sum.clear();
        }
    }
    auto t0 = std::chrono::steady_clock::now();
    auto text = emit_to_string(m, FileFormat::MpsFree);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(!text.empty());
    CHECK(dt < 5.0);
}

TEST_CASE("bounds survive the solver round trip") {
    ModelInstance m;
    VarId f = m.add_variable("free_v", VarKind::Continuous, -ModelInstance::kInf,
                             ModelInstance::kInf);
    VarId g = m.add_variable("neg_lb", VarKind::Continuous, -5, -1);
    m.add_objective(f, 1.0);
    m.add_objective(g, 1.0);
    m.add_constraint("limit", Sense::GE, {{f, 1.0}}, -3.0);
    auto dir = testsup::scratch_dir("backend_bounds");
    auto sol = solve_model(m, dir, "bounds", testsup::solver_options());
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.value("free_v") == doctest::Approx(-3.0));
    CHECK(sol.value("neg_lb") == doctest::Approx(-5.0));
}

TEST_CASE("missing solver raises an environment error") {
    auto dir = testsup::scratch_dir("backend_nosolver");
    auto opts = testsup::solver_options();
    opts.solver = "/nonexistent/solver-binary";
    CHECK_THROWS_AS(solve_model(tiny_lp(), dir, "m", opts), EnvironmentError);
}

TEST_CASE("unreadable solver output raises a protocol error") {
    auto dir = testsup::scratch_dir("backend_garbage");
    std::string script = dir + "/fake_solver.sh";
    {
        std::ofstream out(script);
        out << "#!/bin/sh\necho 'mumble 42' > \"$2\"\n";
    }
    auto opts = testsup::solver_options();
    opts.solver = "sh " + script;
    CHECK_THROWS_AS(solve_model(tiny_lp(), dir, "m", opts), ProtocolError);

    // a solver that answers nothing at all is a protocol error too
    std::string silent = dir + "/silent_solver.sh";
    {
        std::ofstream out(silent);
        out << "#!/bin/sh\nexit 0\n";
    }
    opts.solver = "sh " + silent;
    CHECK_THROWS_AS(solve_model(tiny_lp(), dir, "m2", opts), ProtocolError);
}

TEST_CASE("emission formats are pinned") {
    ModelInstance m;
    VarId x = m.add_variable("x_int", VarKind::Integer, 0, 7);
    VarId y = m.add_variable("y_cont", VarKind::Continuous, -ModelInstance::kInf, 5);
    VarId b = m.add_variable("b_bin", VarKind::Binary, 0, 1);
    m.add_constraint("c1", Sense::LE, {{x, 2.5}, {y, -1.0}}, 10.0);
    m.add_constraint("c2", Sense::EQ, {{b, 1.0}, {y, 1.0}}, 0.5);
    m.add_objective(x, 1.0);
    m.add_objective(y, 0.25);
    m.add_objective_constant(3.0);

    CHECK(emit_to_string(m, FileFormat::LP) ==
          "\\ generated by gasplan\n"
          "Minimize\n"
          " obj: + 1 x_int + 0.25 y_cont + 3\n"
          "Subject To\n"
          " c1: + 2.5 x_int - 1 y_cont <= 10\n"
          " c2: + 1 y_cont + 1 b_bin = 0.5\n"
          "Bounds\n"
          " 0 <= x_int <= 7\n"
          " -infinity <= y_cont <= 5\n"
          "Generals\n"
          " x_int\n"
          "Binaries\n"
          " b_bin\n"
          "End\n");

    CHECK(emit_to_string(m, FileFormat::MpsFree) ==
          "NAME gasplan\n"
          "ROWS\n"
          " N OBJ\n"
          " L c1\n"
          " E c2\n"
          "COLUMNS\n"
          "  MARKER0 'MARKER' 'INTORG'\n"
          "  x_int OBJ 1 c1 2.5\n"
          "  MARKER1 'MARKER' 'INTEND'\n"
          "  y_cont OBJ 0.25 c1 -1\n"
          "  y_cont c2 1\n"
          "  MARKER2 'MARKER' 'INTORG'\n"
          "  b_bin c2 1\n"
          "  MARKER3 'MARKER' 'INTEND'\n"
          "RHS\n"
          "  RHS OBJ -3\n"
          "  RHS c1 10\n"
          "  RHS c2 0.5\n"
          "BOUNDS\n"
          " LO BND x_int 0\n"
          " UP BND x_int 7\n"
          " MI BND y_cont\n"
          " UP BND y_cont 5\n"
          " BV BND b_bin\n"
          "ENDATA\n");
}
