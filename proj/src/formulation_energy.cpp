#include "gasplan/formulation.hpp"

namespace gasplan {

void add_gas_wells(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& u : ctx.sys.units) {
                if (u.kind != UnitKind::GasWell) continue;
                VarId p = m.find_variable(vname("pCH4", rp, k, u.id));
                VarId x = m.find_variable(vname_x("x", u.id));
                m.add_constraint(vname("well_cap", rp, k, u.id), Sense::LE,
                                 {{p, 1.0}, {x, -u.p_max}}, u.p_max * u.eu);
            }
}

// Energy-equivalent substitution of natural gas demand by hydrogen: the
// blend's heating value must match the original demand, with the hydrogen
// share bounded per demand class.
void add_demand_blending(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const double h_ch4 = ctx.sys.constants.h_ch4;
    const double h_h2 = ctx.sys.constants.h_h2;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& [node, cl] : ctx.sys.demand_pairs()) {
                const DemandClass& dc = ctx.sys.demand_class(cl);
                std::string ent = node + "__" + cl;
                VarId dch4 = m.find_variable(vname("dCH4", rp, k, ent));
                VarId dh2 = m.find_variable(vname("dH2", rp, k, ent));
                double dgas = ctx.sys.gas_demand(rp, k, node, cl);
                m.add_constraint(vname("blend_def", rp, k, ent), Sense::EQ,
                                 {{dch4, h_ch4}, {dh2, h_h2}}, dgas * h_ch4);
                m.add_constraint(vname("blend_ub", rp, k, ent), Sense::LE,
                                 {{dh2, 1.0}, {dch4, -dc.sub_max}}, 0.0);
                if (dc.sub_min > 0)
                    m.add_constraint(vname("blend_lb", rp, k, ent), Sense::GE,
                                     {{dh2, 1.0}, {dch4, -dc.sub_min}}, 0.0);
            }
}

// Gas-fired thermal units: linear heat-rate conversion with hydrogen
// co-firing, auxiliary consumption tied to startup and commitment, and the
// blending-rate envelope on both fuel streams.
void add_gas_thermals(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const double h_ch4 = ctx.sys.constants.h_ch4;
    const double h_h2 = ctx.sys.constants.h_h2;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& u : ctx.sys.units) {
                if (u.kind != UnitKind::ThermalGas) continue;
                VarId p = m.find_variable(vname("pE", rp, k, u.id));
                VarId uc = m.find_variable(vname("u", rp, k, u.id));
                VarId y = m.find_variable(vname("y", rp, k, u.id));
                VarId x = m.find_variable(vname_x("x", u.id));
                VarId ce = m.find_variable(vname("csCH4E", rp, k, u.id));
                VarId he = m.find_variable(vname("csH2E", rp, k, u.id));
                VarId ca = m.find_variable(vname("csCH4Aux", rp, k, u.id));
                VarId ha = m.find_variable(vname("csH2Aux", rp, k, u.id));
                double w = ctx.ts.w_k(k);

                m.add_constraint(vname("gt_conv", rp, k, u.id), Sense::EQ,
                                 {{ce, h_ch4}, {he, h_h2}, {p, -u.cs_v}}, 0.0);
                m.add_constraint(vname("gt_aux", rp, k, u.id), Sense::EQ,
                                 {{ca, h_ch4}, {ha, h_h2}, {y, -u.cs_su / w}, {uc, -u.cs_up}},
                                 0.0);
                m.add_constraint(vname("gt_cons_ub", rp, k, u.id), Sense::LE,
                                 {{ce, 1.0}, {x, -u.cs_v * u.p_max / h_ch4}},
                                 u.cs_v * u.p_max / h_ch4 * u.eu);
                m.add_constraint(vname("gt_aux_ub", rp, k, u.id), Sense::LE,
                                 {{ca, 1.0}, {y, -u.cs_su / (w * h_ch4)},
                                  {uc, -u.cs_up / h_ch4}},
                                 0.0);
                m.add_constraint(vname("gt_blend_ub", rp, k, u.id), Sense::LE,
                                 {{he, 1.0}, {ce, -ctx.cfg.blend_max}}, 0.0);
                m.add_constraint(vname("gt_auxblend_ub", rp, k, u.id), Sense::LE,
                                 {{ha, 1.0}, {ca, -ctx.cfg.blend_max}}, 0.0);
                if (ctx.cfg.blend_min > 0) {
                    m.add_constraint(vname("gt_blend_lb", rp, k, u.id), Sense::GE,
                                     {{he, 1.0}, {ce, -ctx.cfg.blend_min}}, 0.0);
                    m.add_constraint(vname("gt_auxblend_lb", rp, k, u.id), Sense::GE,
                                     {{ha, 1.0}, {ca, -ctx.cfg.blend_min}}, 0.0);
                }
            }
}

// Green power system constraint: fossil-linked generation is capped at
// (1-kappa) of the weighted power demand. Gas thermals enter through their
// generation-linked natural gas consumption, so hydrogen-fired output stays
// unrestricted.
void add_policy(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    std::vector<LinTerm> lhs;
    double demand = 0.0;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k) {
            double w = ctx.ts.weight(rp, k);
            for (const auto& u : ctx.sys.units) {
                if (u.kind == UnitKind::ThermalOther)
                    lhs.push_back({m.find_variable(vname("pE", rp, k, u.id)), w});
                else if (u.kind == UnitKind::ThermalGas)
                    lhs.push_back({m.find_variable(vname("csCH4E", rp, k, u.id)),
                                   w * ctx.sys.constants.h_ch4 / u.cs_v});
            }
            for (const auto& b : ctx.sys.buses) demand += w * ctx.sys.power_demand(rp, k, b.id);
        }
    if (lhs.empty()) return;
    m.add_constraint("policy_green", Sense::LE, lhs, (1.0 - ctx.cfg.kappa) * demand);
}

// Total system cost. Operational terms carry the representative-period
// weights; investment terms are annualized and unweighted; OM of hydrogen
// and natural-gas units applies to built plus existing capacity.
void add_objective(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    CostLedger& led = ctx.costs;
    const ScenarioConfig& cfg = ctx.cfg;
    const EnergySystem& sys = ctx.sys;

    bool any_emitting = false;
    for (const auto& u : sys.units)
        if (u.emis > 0) any_emitting = true;
    for (const auto& c : sys.classes)
        if (c.emis > 0) any_emitting = true;
    if (any_emitting && cfg.c_co2 < 0)
        throw ConfigError("c_co2 unset with emitting units present");

    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp) {
        for (int k = 1; k <= ctx.ts.n_k(); ++k) {
            double w = ctx.ts.weight(rp, k);
            for (const auto& u : sys.units) {
                switch (u.kind) {
                    case UnitKind::GasWell:
                        led.add(m, CostTerm::GasSupply,
                                m.find_variable(vname("pCH4", rp, k, u.id)), w * cfg.c_ch4);
                        break;
                    case UnitKind::ThermalGas: {
                        led.add(m, CostTerm::GasThermalOm,
                                m.find_variable(vname("pE", rp, k, u.id)), w * u.c_om);
                        VarId ce = m.find_variable(vname("csCH4E", rp, k, u.id));
                        VarId ca = m.find_variable(vname("csCH4Aux", rp, k, u.id));
                        led.add(m, CostTerm::Co2ThermalGas, ce, w * cfg.c_co2 * u.emis);
                        led.add(m, CostTerm::Co2ThermalGas, ca, w * cfg.c_co2 * u.emis);
                        break;
                    }
                    case UnitKind::ThermalOther: {
                        VarId y = m.find_variable(vname("y", rp, k, u.id));
                        VarId uc = m.find_variable(vname("u", rp, k, u.id));
                        VarId p = m.find_variable(vname("pE", rp, k, u.id));
                        led.add(m, CostTerm::ThermalUc, y, w * u.c_su);
                        led.add(m, CostTerm::ThermalUc, uc, w * u.c_up);
                        led.add(m, CostTerm::ThermalUc, p, w * u.c_var);
                        double co2 = w * cfg.c_co2 * u.emis;
                        led.add(m, CostTerm::Co2ThermalOther, y, co2 * u.c_su);
                        led.add(m, CostTerm::Co2ThermalOther, uc, co2 * u.c_up);
                        led.add(m, CostTerm::Co2ThermalOther, p, co2 * u.c_var);
                        break;
                    }
                    case UnitKind::Renewable:
                        led.add(m, CostTerm::RenewableOm,
                                m.find_variable(vname("pE", rp, k, u.id)), w * u.c_om);
                        break;
                    case UnitKind::Bess:
                        led.add(m, CostTerm::StorageOm,
                                m.find_variable(vname("pE", rp, k, u.id)), w * u.c_om);
                        break;
                    case UnitKind::SmrCcs:
                        if (cfg.smr_co2)
                            led.add(m, CostTerm::Co2Industry,
                                    m.find_variable(vname("pH2", rp, k, u.id)),
                                    w * cfg.c_co2 * u.emis);
                        break;
                    default: break;
                }
            }
            for (const auto& b : sys.buses)
                led.add(m, CostTerm::Ens, m.find_variable(vname("pns", rp, k, b.id)),
                        w * cfg.c_ens);
            for (const auto& [node, cl] : sys.demand_pairs()) {
                std::string ent = node + "__" + cl;
                led.add(m, CostTerm::GasH2Ns, m.find_variable(vname("h2ns", rp, k, ent)),
                        w * cfg.c_h2ns);
                led.add(m, CostTerm::GasH2Ns, m.find_variable(vname("ch4ns", rp, k, ent)),
                        w * cfg.c_ch4ns);
                const DemandClass& dc = sys.demand_class(cl);
                led.add(m, CostTerm::Co2Industry, m.find_variable(vname("dCH4", rp, k, ent)),
                        w * cfg.c_co2 * dc.emis);
            }
        }
    }

    for (const auto& u : sys.units) {
        VarId x = m.find_variable(vname_x("x", u.id));
        if (is_power_unit(u.kind)) {
            led.add(m, CostTerm::InvestGen, x, u.c_inv);
        } else if (is_h2_unit(u.kind)) {
            led.add(m, CostTerm::InvestH2, x, u.c_inv);
            led.add(m, CostTerm::OmH2, x, u.c_om * u.c_inv);
            led.add_constant(m, CostTerm::OmH2, u.c_om * u.c_inv * u.eu);
        } else {
            led.add(m, CostTerm::InvestNg, x, u.c_inv);
            led.add(m, CostTerm::OmNg, x, u.c_om * u.c_inv);
            led.add_constant(m, CostTerm::OmNg, u.c_om * u.c_inv * u.eu);
        }
    }
    for (const auto& l : sys.lines)
        if (!l.existing)
            led.add(m, CostTerm::InvestLine,
                    m.find_variable(vname_x("xL", l.from_bus + "_" + l.to_bus + "_" + l.circuit)),
                    l.invest_cost);
    for (const auto& p : sys.pipelines)
        if (!p.existing)
            led.add(m, CostTerm::InvestPipe, m.find_variable(vname_x("xPipe", p.key())),
                    p.annual_invest_cost());
    // term (xviii) is an extension hook and contributes zero
}

}  // namespace gasplan
