#include <cmath>

#include "gasplan/formulation.hpp"

namespace gasplan {

namespace {

// shared composition row f_gas = f_ch4 + f_h2
void flow_definition(BuildContext& ctx, int rp, int k, const Pipeline& p) {
    ModelInstance& m = ctx.model;
    VarId fg = m.find_variable(vname("fGas", rp, k, p.key()));
    VarId fc = m.find_variable(vname("fCH4", rp, k, p.key()));
    VarId fh = m.find_variable(vname("fH2", rp, k, p.key()));
    m.add_constraint(vname("flow_def", rp, k, p.key()), Sense::EQ,
                     {{fg, 1.0}, {fc, -1.0}, {fh, -1.0}}, 0.0);
}

// candidate gating |f_gas| <= F x
void candidate_gate(BuildContext& ctx, int rp, int k, const Pipeline& p) {
    ModelInstance& m = ctx.model;
    VarId fg = m.find_variable(vname("fGas", rp, k, p.key()));
    VarId x = m.find_variable(vname_x("xPipe", p.key()));
    m.add_constraint(vname("cand_ub", rp, k, p.key()), Sense::LE, {{fg, 1.0}, {x, -p.f_max}},
                     0.0);
    m.add_constraint(vname("cand_lb", rp, k, p.key()), Sense::GE, {{fg, 1.0}, {x, p.f_max}},
                     0.0);
}

// direction coherence and blend envelope around the per-rp direction binary
void blending_envelope(BuildContext& ctx, int rp, int k, const Pipeline& p) {
    ModelInstance& m = ctx.model;
    const double M = ctx.big_m;
    const double b = ctx.cfg.blend_max;
    VarId fc = m.find_variable(vname("fCH4", rp, k, p.key()));
    VarId fh = m.find_variable(vname("fH2", rp, k, p.key()));
    VarId a = m.find_variable(vname_rp("alpha", rp, p.key()));
    // (alpha-1) M <= f <= alpha M for both components
    m.add_constraint(vname("dir_h2_ub", rp, k, p.key()), Sense::LE, {{fh, 1.0}, {a, -M}}, 0.0);
    m.add_constraint(vname("dir_h2_lb", rp, k, p.key()), Sense::GE, {{fh, 1.0}, {a, -M}}, -M);
    m.add_constraint(vname("dir_ch4_ub", rp, k, p.key()), Sense::LE, {{fc, 1.0}, {a, -M}}, 0.0);
    m.add_constraint(vname("dir_ch4_lb", rp, k, p.key()), Sense::GE, {{fc, 1.0}, {a, -M}}, -M);
    // f_h2 >= -alpha M + B f_ch4 ; f_h2 <= (1-alpha) M + B f_ch4
    m.add_constraint(vname("env_lb", rp, k, p.key()), Sense::GE,
                     {{fh, 1.0}, {fc, -b}, {a, M}}, 0.0);
    m.add_constraint(vname("env_ub", rp, k, p.key()), Sense::LE,
                     {{fh, 1.0}, {fc, -b}, {a, M}}, M);
}

void add_stp(BuildContext& ctx) {
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& p : ctx.sys.pipelines) {
                flow_definition(ctx, rp, k, p);
                if (!p.existing) candidate_gate(ctx, rp, k, p);
                // component bounds are declared on the variables themselves
            }
}

void add_btp(BuildContext& ctx) {
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& p : ctx.sys.pipelines) {
                flow_definition(ctx, rp, k, p);
                blending_envelope(ctx, rp, k, p);
                if (!p.existing) candidate_gate(ctx, rp, k, p);
            }
}

// Incremental piecewise linearization of the steady-state pressure drop,
// extended with pipeline expansion (slack for unbuilt candidates) and the
// blending envelope.
void add_bpp(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const int inc_count = ctx.cfg.n_increments;

    for (const auto& p : ctx.sys.pipelines) {
        auto bp = physics::build_breakpoints(p.f_max, inc_count);
        if (static_cast<int>(bp.flow.size()) != inc_count + 1)
            throw ConfigError("breakpoint table does not match n_increments for " + p.key());
        for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
            for (int k = 1; k <= ctx.ts.n_k(); ++k) {
                flow_definition(ctx, rp, k, p);
                blending_envelope(ctx, rp, k, p);

                VarId fg = m.find_variable(vname("fGas", rp, k, p.key()));
                VarId rho = m.find_variable(vname("rho", rp, k, p.key()));
                VarId pm = m.find_variable(vname("pSqr", rp, k, p.from_node));
                VarId pn = m.find_variable(vname("pSqr", rp, k, p.to_node));

                // sum of weighted function-value steps = R (p_m^2 - p_n^2)
                std::vector<LinTerm> press{{pm, -p.r_gas}, {pn, p.r_gas}};
                // sum of weighted flow steps = rho + f_gas
                std::vector<LinTerm> flow{{rho, -1.0}, {fg, -1.0}};
                for (int inc = 1; inc <= inc_count; ++inc) {
                    std::string ent = "inc" + pad2(inc) + "__" + p.key();
                    VarId g = m.find_variable(vname("gamma", rp, k, ent));
                    VarId d = m.find_variable(vname("delta", rp, k, ent));
                    std::size_t i = static_cast<std::size_t>(inc);
                    press.push_back({g, bp.squared[i] - bp.squared[i - 1]});
                    flow.push_back({g, bp.flow[i] - bp.flow[i - 1]});
                    // filling order: gamma_{inc+1} <= delta_inc <= gamma_inc
                    m.add_constraint(vname("fill_ub", rp, k, ent), Sense::LE,
                                     {{d, 1.0}, {g, -1.0}}, 0.0);
                    if (inc < inc_count) {
                        VarId gn = m.find_variable(
                            vname("gamma", rp, k, "inc" + pad2(inc + 1) + "__" + p.key()));
                        m.add_constraint(vname("fill_lb", rp, k, ent), Sense::LE,
                                         {{gn, 1.0}, {d, -1.0}}, 0.0);
                    }
                }
                m.add_constraint(vname("pw_press", rp, k, p.key()), Sense::EQ, press,
                                 -bp.squared[0]);
                m.add_constraint(vname("pw_flow", rp, k, p.key()), Sense::EQ, flow,
                                 -bp.flow[0]);

                if (!p.existing) {
                    VarId x = m.find_variable(vname_x("xPipe", p.key()));
                    // slack absorbs the pressure-implied flow while unbuilt
                    m.add_constraint(vname("slack_ub", rp, k, p.key()), Sense::LE,
                                     {{rho, 1.0}, {x, p.f_max}}, p.f_max);
                    m.add_constraint(vname("slack_lb", rp, k, p.key()), Sense::GE,
                                     {{rho, 1.0}, {x, -p.f_max}}, -p.f_max);
                    candidate_gate(ctx, rp, k, p);
                }
            }
    }
}

}  // namespace

void add_gas_network(BuildContext& ctx) {
    switch (ctx.cfg.flow_formulation) {
        case FlowFormulation::STP: add_stp(ctx); break;
        case FlowFormulation::BTP: add_btp(ctx); break;
        case FlowFormulation::BPP: add_bpp(ctx); break;
    }
}

// Compressor arcs: linear pressure boost (pressure problem only), combined
// throughput cap, and the hydrogen share cap. Flows are one-directional.
void add_compressors(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const bool with_pressure = ctx.cfg.flow_formulation == FlowFormulation::BPP;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& c : ctx.sys.compressors) {
                VarId fc = m.find_variable(vname("fCmpCH4", rp, k, c.key()));
                VarId fh = m.find_variable(vname("fCmpH2", rp, k, c.key()));
                m.add_constraint(vname("cmp_cap", rp, k, c.key()), Sense::LE,
                                 {{fc, 1.0}, {fh, 1.0}}, c.f_max);
                m.add_constraint(vname("cmp_blend", rp, k, c.key()), Sense::LE,
                                 {{fh, 1.0}, {fc, -ctx.cfg.blend_max}}, 0.0);
                if (with_pressure) {
                    VarId pm = m.find_variable(vname("pSqr", rp, k, c.from_node));
                    VarId pn = m.find_variable(vname("pSqr", rp, k, c.to_node));
                    m.add_constraint(vname("cmp_ratio", rp, k, c.key()), Sense::LE,
                                     {{pn, 1.0}, {pm, -c.ratio_sqr}}, 0.0);
                    double pmax_sqr = ctx.sys.node(c.from_node).p_max_sqr;
                    double root = std::sqrt(pmax_sqr) - c.max_boost;
                    double boost_cap = pmax_sqr - root * root;
                    m.add_constraint(vname("cmp_boost_ub", rp, k, c.key()), Sense::LE,
                                     {{pn, 1.0}, {pm, -1.0}}, boost_cap);
                    m.add_constraint(vname("cmp_boost_lb", rp, k, c.key()), Sense::GE,
                                     {{pn, 1.0}, {pm, -1.0}}, 0.0);
                }
            }
}

// Nodal hydrogen and natural-gas balances.
void add_balances(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const EnergySystem& sys = ctx.sys;

    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& n : sys.nodes) {
                std::vector<LinTerm> h2, ch4;
                double h2_rhs = 0.0;

                for (const auto& u : sys.units) {
                    if (u.node != n.id) continue;
                    switch (u.kind) {
                        case UnitKind::Electrolyzer:
                        case UnitKind::SmrCcs:
                            h2.push_back({m.find_variable(vname("pH2", rp, k, u.id)), 1.0});
                            if (u.kind == UnitKind::SmrCcs)
                                ch4.push_back(
                                    {m.find_variable(vname("csCH4", rp, k, u.id)), -1.0});
                            break;
                        case UnitKind::H2Tank:
                        case UnitKind::H2Cavern:
                            h2.push_back({m.find_variable(vname("pH2", rp, k, u.id)), 1.0});
                            h2.push_back({m.find_variable(vname("csH2", rp, k, u.id)), -1.0});
                            break;
                        case UnitKind::FuelCell:
                            h2.push_back({m.find_variable(vname("csH2", rp, k, u.id)), -1.0});
                            break;
                        case UnitKind::GasWell:
                            ch4.push_back({m.find_variable(vname("pCH4", rp, k, u.id)), 1.0});
                            break;
                        case UnitKind::NgStorage:
                            ch4.push_back({m.find_variable(vname("pCH4", rp, k, u.id)), 1.0});
                            ch4.push_back({m.find_variable(vname("csCH4", rp, k, u.id)), -1.0});
                            break;
                        case UnitKind::ThermalGas:
                            ch4.push_back(
                                {m.find_variable(vname("csCH4E", rp, k, u.id)), -1.0});
                            ch4.push_back(
                                {m.find_variable(vname("csCH4Aux", rp, k, u.id)), -1.0});
                            h2.push_back({m.find_variable(vname("csH2E", rp, k, u.id)), -1.0});
                            h2.push_back(
                                {m.find_variable(vname("csH2Aux", rp, k, u.id)), -1.0});
                            break;
                        default: break;
                    }
                }

                for (const auto& p : sys.pipelines) {
                    VarId fc = m.find_variable(vname("fCH4", rp, k, p.key()));
                    VarId fh = m.find_variable(vname("fH2", rp, k, p.key()));
                    if (p.to_node == n.id) {
                        ch4.push_back({fc, 1.0});
                        h2.push_back({fh, 1.0});
                    }
                    if (p.from_node == n.id) {
                        ch4.push_back({fc, -1.0});
                        h2.push_back({fh, -1.0});
                    }
                }
                for (const auto& c : sys.compressors) {
                    VarId fc = m.find_variable(vname("fCmpCH4", rp, k, c.key()));
                    VarId fh = m.find_variable(vname("fCmpH2", rp, k, c.key()));
                    if (c.to_node == n.id) {
                        ch4.push_back({fc, 1.0});
                        h2.push_back({fh, 1.0});
                    }
                    if (c.from_node == n.id) {
                        // outgoing flow plus the compressor's own consumption
                        ch4.push_back({fc, -1.0 - c.cons_ch4});
                        h2.push_back({fh, -1.0 - c.cons_h2});
                    }
                }

                for (const auto& [node, cl] : sys.demand_pairs()) {
                    if (node != n.id) continue;
                    std::string ent = node + "__" + cl;
                    ch4.push_back({m.find_variable(vname("dCH4", rp, k, ent)), -1.0});
                    ch4.push_back({m.find_variable(vname("ch4ns", rp, k, ent)), 1.0});
                    h2.push_back({m.find_variable(vname("dH2", rp, k, ent)), -1.0});
                    h2.push_back({m.find_variable(vname("h2ns", rp, k, ent)), 1.0});
                    h2_rhs += sys.h2_demand(rp, k, node, cl);
                }

                m.add_constraint(vname("bal_h2", rp, k, n.id), Sense::EQ, h2, h2_rhs);
                m.add_constraint(vname("bal_ch4", rp, k, n.id), Sense::EQ, ch4, 0.0);
            }
}

}  // namespace gasplan
