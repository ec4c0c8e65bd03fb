#include <algorithm>
#include <cmath>

#include "gasplan/formulation.hpp"

namespace gasplan {

const char* cost_term_label(CostTerm t) {
    switch (t) {
        case CostTerm::GasSupply: return "gas_supply";
        case CostTerm::GasThermalOm: return "gas_thermal_om";
        case CostTerm::ThermalUc: return "thermal_su_commit_var";
        case CostTerm::RenewableOm: return "renewable_om";
        case CostTerm::StorageOm: return "storage_om";
        case CostTerm::Ens: return "ens";
        case CostTerm::GasH2Ns: return "h2ns_ch4ns";
        case CostTerm::Co2ThermalOther: return "co2_thermal_other";
        case CostTerm::Co2ThermalGas: return "co2_thermal_gas";
        case CostTerm::Co2Industry: return "co2_industry";
        case CostTerm::InvestGen: return "invest_generation";
        case CostTerm::InvestLine: return "invest_lines";
        case CostTerm::InvestH2: return "invest_h2";
        case CostTerm::OmH2: return "om_h2";
        case CostTerm::InvestNg: return "invest_ng";
        case CostTerm::OmNg: return "om_ng";
        case CostTerm::InvestPipe: return "invest_pipelines";
        case CostTerm::Other: return "other";
    }
    return "?";
}

void CostLedger::add(ModelInstance& model, CostTerm term, VarId var, double coef) {
    if (coef == 0.0) return;
    terms_[static_cast<std::size_t>(term)].push_back({var, coef});
    model.add_objective(var, coef);
}

void CostLedger::add_constant(ModelInstance& model, CostTerm term, double value) {
    if (value == 0.0) return;
    constants_[static_cast<std::size_t>(term)] += value;
    model.add_objective_constant(value);
}

double CostLedger::term_value(CostTerm term, const ModelInstance& model,
                              const Solution& sol) const {
    auto i = static_cast<std::size_t>(term);
    return constants_[i] + model.evaluate(terms_[i], sol.values);
}

std::array<double, kCostTermCount> CostLedger::evaluate(const ModelInstance& model,
                                                        const Solution& sol) const {
    std::array<double, kCostTermCount> out{};
    for (int t = 0; t < kCostTermCount; ++t)
        out[static_cast<std::size_t>(t)] = term_value(static_cast<CostTerm>(t), model, sol);
    return out;
}

bool BuildContext::inter_soc_active() const {
    switch (cfg.long_term_storage) {
        case LongTermStorageMode::Inter: return true;
        case LongTermStorageMode::Intra: return false;
        case LongTermStorageMode::Auto: return !ts.is_full_chronology();
    }
    return false;
}

double effective_big_m(const EnergySystem& sys, const ScenarioConfig& cfg) {
    if (cfg.big_m > 0) return cfg.big_m;
    double cap = sys.max_pipeline_capacity();
    return cap > 0 ? 10.0 * cap : 1.0;
}

const char* soc_intra_family(const Unit& u) {
    return u.kind == UnitKind::NgStorage ? "intraCH4" : "intraH2";
}
const char* soc_inter_family(const Unit& u) {
    return u.kind == UnitKind::NgStorage ? "interCH4" : "interH2";
}

const char* production_family(const Unit& u) {
    switch (u.kind) {
        case UnitKind::GasWell:
        case UnitKind::NgStorage: return "pCH4";
        case UnitKind::Electrolyzer:
        case UnitKind::SmrCcs:
        case UnitKind::H2Tank:
        case UnitKind::H2Cavern: return "pH2";
        default: return "pE";
    }
}

const char* consumption_family(const Unit& u) {
    switch (u.kind) {
        case UnitKind::NgStorage:
        case UnitKind::SmrCcs: return "csCH4";
        case UnitKind::H2Tank:
        case UnitKind::H2Cavern:
        case UnitKind::FuelCell: return "csH2";
        default: return "csE";
    }
}

namespace {

double fleet_cap(const Unit& u) { return u.x_max + u.eu; }

double charge_cap(const Unit& u) { return u.cs_max > 0 ? u.cs_max : u.p_max; }

}  // namespace

void declare_variables(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const EnergySystem& sys = ctx.sys;
    const TemporalStructure& ts = ctx.ts;
    const bool bpp = ctx.cfg.flow_formulation == FlowFormulation::BPP;
    const bool btp_like = ctx.cfg.flow_formulation != FlowFormulation::STP;
    const double M = ctx.big_m;

    // investments
    for (const auto& u : sys.units)
        m.add_variable(vname_x("x", u.id),
                       u.integer_invest ? VarKind::Integer : VarKind::Continuous, 0.0, u.x_max);
    for (const auto& l : sys.lines)
        if (!l.existing)
            m.add_variable(vname_x("xL", l.from_bus + "_" + l.to_bus + "_" + l.circuit),
                           VarKind::Binary, 0.0, 1.0);
    for (const auto& p : sys.pipelines)
        if (!p.existing) m.add_variable(vname_x("xPipe", p.key()), VarKind::Binary, 0.0, 1.0);

    auto pairs = sys.demand_pairs();

    for (int rp = 1; rp <= ts.n_rp(); ++rp) {
        for (int k = 1; k <= ts.n_k(); ++k) {
            // power block
            for (const auto& u : sys.units) {
                if (u.kind == UnitKind::ThermalGas || u.kind == UnitKind::ThermalOther ||
                    u.kind == UnitKind::Renewable || u.kind == UnitKind::Bess)
                    m.add_variable(vname("pE", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.p_max * fleet_cap(u));
                else if (u.kind == UnitKind::FuelCell)
                    m.add_variable(vname("pE", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.cs_max * u.eph * fleet_cap(u));
            }
            for (const auto& u : sys.units) {
                if (u.kind == UnitKind::Bess)
                    m.add_variable(vname("csE", rp, k, u.id), VarKind::Continuous, 0.0,
                                   charge_cap(u) * fleet_cap(u));
                else if (u.kind == UnitKind::Electrolyzer)
                    m.add_variable(vname("csE", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.p_max * fleet_cap(u));
            }
            for (const auto& u : sys.units) {
                if (!is_thermal(u.kind)) continue;
                m.add_variable(vname("u", rp, k, u.id), VarKind::Integer, 0.0, fleet_cap(u));
                m.add_variable(vname("y", rp, k, u.id), VarKind::Integer, 0.0, fleet_cap(u));
            }
            for (const auto& u : sys.units)
                if (u.kind == UnitKind::Bess)
                    m.add_variable(vname("socE", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.energy_capacity_per_unit() * fleet_cap(u));
            for (std::size_t b = 0; b < sys.buses.size(); ++b) {
                double lo = b == 0 ? 0.0 : -ctx.cfg.theta_max;  // first bus is the reference
                double hi = b == 0 ? 0.0 : ctx.cfg.theta_max;
                m.add_variable(vname("theta", rp, k, sys.buses[b].id), VarKind::Continuous, lo,
                               hi);
            }
            for (const auto& l : sys.lines)
                m.add_variable(
                    vname("flowE", rp, k, l.from_bus + "_" + l.to_bus + "_" + l.circuit),
                    VarKind::Continuous, -l.f_max, l.f_max);
            for (const auto& b : sys.buses)
                m.add_variable(vname("pns", rp, k, b.id), VarKind::Continuous, 0.0,
                               sys.power_demand(rp, k, b.id));

            // gas / hydrogen unit block
            for (const auto& u : sys.units)
                if (u.kind == UnitKind::GasWell || u.kind == UnitKind::NgStorage)
                    m.add_variable(vname("pCH4", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.p_max * fleet_cap(u));
            for (const auto& u : sys.units) {
                if (u.kind == UnitKind::NgStorage)
                    m.add_variable(vname("csCH4", rp, k, u.id), VarKind::Continuous, 0.0,
                                   charge_cap(u) * fleet_cap(u));
                else if (u.kind == UnitKind::SmrCcs)
                    m.add_variable(vname("csCH4", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.hpc > 0 ? u.p_max / u.hpc * fleet_cap(u) : 0.0);
            }
            for (const auto& u : sys.units) {
                if (u.kind == UnitKind::Electrolyzer)
                    m.add_variable(vname("pH2", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.p_max * u.hpe * fleet_cap(u));
                else if (u.kind == UnitKind::SmrCcs || u.kind == UnitKind::H2Tank ||
                         u.kind == UnitKind::H2Cavern)
                    m.add_variable(vname("pH2", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.p_max * fleet_cap(u));
            }
            for (const auto& u : sys.units) {
                if (u.kind == UnitKind::H2Tank || u.kind == UnitKind::H2Cavern)
                    m.add_variable(vname("csH2", rp, k, u.id), VarKind::Continuous, 0.0,
                                   charge_cap(u) * fleet_cap(u));
                else if (u.kind == UnitKind::FuelCell)
                    m.add_variable(vname("csH2", rp, k, u.id), VarKind::Continuous, 0.0,
                                   u.cs_max * fleet_cap(u));
            }
            for (const auto& u : sys.units) {
                if (u.kind != UnitKind::ThermalGas) continue;
                double cs_cap = u.cs_v * u.p_max / sys.constants.h_ch4 * fleet_cap(u);
                double aux_cap = (u.cs_su / ts.w_k(k) + u.cs_up) * fleet_cap(u) /
                                 sys.constants.h_ch4;
                m.add_variable(vname("csCH4E", rp, k, u.id), VarKind::Continuous, 0.0, cs_cap);
                m.add_variable(vname("csH2E", rp, k, u.id), VarKind::Continuous, 0.0,
                               ctx.blend_max() * cs_cap * sys.constants.h_ch4 /
                                   sys.constants.h_h2);
                m.add_variable(vname("csCH4Aux", rp, k, u.id), VarKind::Continuous, 0.0,
                               aux_cap);
                m.add_variable(vname("csH2Aux", rp, k, u.id), VarKind::Continuous, 0.0,
                               ctx.blend_max() * aux_cap * sys.constants.h_ch4 /
                                   sys.constants.h_h2);
            }
            for (const auto& u : sys.units) {
                if (!is_storage_short_term(u.kind) && !is_storage_long_term(u.kind)) continue;
                if (is_storage_long_term(u.kind) && ctx.inter_soc_active()) continue;
                m.add_variable(vname(soc_intra_family(u), rp, k, u.id), VarKind::Continuous,
                               0.0, u.energy_capacity_per_unit() * fleet_cap(u));
            }

            // demand split block
            for (const auto& [node, cl] : pairs) {
                double dgas = sys.gas_demand(rp, k, node, cl);
                m.add_variable(vname("dCH4", rp, k, node + "__" + cl), VarKind::Continuous, 0.0,
                               dgas);
                m.add_variable(vname("dH2", rp, k, node + "__" + cl), VarKind::Continuous, 0.0,
                               dgas * sys.constants.h_ch4 / sys.constants.h_h2);
                m.add_variable(vname("h2ns", rp, k, node + "__" + cl), VarKind::Continuous, 0.0,
                               M);
                m.add_variable(vname("ch4ns", rp, k, node + "__" + cl), VarKind::Continuous,
                               0.0, M);
            }

            // network block
            for (const auto& p : sys.pipelines) {
                m.add_variable(vname("fGas", rp, k, p.key()), VarKind::Continuous, -p.f_max,
                               p.f_max);
                if (ctx.cfg.flow_formulation == FlowFormulation::STP) {
                    m.add_variable(vname("fCH4", rp, k, p.key()), VarKind::Continuous,
                                   -p.f_max * (1.0 - ctx.blend_max()),
                                   p.f_max * (1.0 - ctx.blend_max()));
                    m.add_variable(vname("fH2", rp, k, p.key()), VarKind::Continuous,
                                   -p.f_max * ctx.blend_max(), p.f_max * ctx.blend_max());
                } else {
                    m.add_variable(vname("fCH4", rp, k, p.key()), VarKind::Continuous, -M, M);
                    m.add_variable(vname("fH2", rp, k, p.key()), VarKind::Continuous, -M, M);
                }
                if (bpp) {
                    if (p.existing)
                        m.add_variable(vname("rho", rp, k, p.key()), VarKind::Continuous, 0.0,
                                       0.0);
                    else
                        m.add_variable(vname("rho", rp, k, p.key()), VarKind::Continuous,
                                       -p.f_max, p.f_max);
                    for (int inc = 1; inc <= ctx.cfg.n_increments; ++inc) {
                        std::string ent = "inc" + pad2(inc) + "__" + p.key();
                        m.add_variable(vname("gamma", rp, k, ent), VarKind::Continuous, 0.0,
                                       1.0);
                        m.add_variable(vname("delta", rp, k, ent), VarKind::Binary, 0.0, 1.0);
                    }
                }
            }
            if (bpp)
                for (const auto& n : sys.nodes)
                    m.add_variable(vname("pSqr", rp, k, n.id), VarKind::Continuous, n.p_min_sqr,
                                   n.p_max_sqr);
            for (const auto& c : sys.compressors) {
                m.add_variable(vname("fCmpCH4", rp, k, c.key()), VarKind::Continuous, 0.0,
                               c.f_max);
                m.add_variable(vname("fCmpH2", rp, k, c.key()), VarKind::Continuous, 0.0,
                               c.f_max);
            }
        }
    }

    if (btp_like)
        for (int rp = 1; rp <= ts.n_rp(); ++rp)
            for (const auto& p : sys.pipelines)
                m.add_variable(vname_rp("alpha", rp, p.key()), VarKind::Binary, 0.0, 1.0);

    if (ctx.inter_soc_active())
        for (const auto& u : sys.units)
            if (is_storage_long_term(u.kind))
                for (int p : ts.checkpoints())
                    m.add_variable(vname_p(soc_inter_family(u), p, u.id), VarKind::Continuous,
                                   0.0, u.energy_capacity_per_unit() * fleet_cap(u));
}

void fix_investments(ModelInstance& model, const EnergySystem& sys,
                     const std::unordered_map<std::string, double>& plan_values) {
    auto fix = [&](const std::string& name, bool integral) {
        VarId id = model.find_variable(name);
        if (id < 0) return;
        auto it = plan_values.find(name);
        if (it == plan_values.end())
            throw ProtocolError("audit-error: plan carries no value for investment '" + name +
                                "'");
        double v = it->second;
        if (integral) v = std::round(v);
        model.set_bounds(id, v, v);
    };
    for (const auto& u : sys.units) fix(vname_x("x", u.id), u.integer_invest);
    for (const auto& l : sys.lines)
        if (!l.existing) fix(vname_x("xL", l.from_bus + "_" + l.to_bus + "_" + l.circuit), true);
    for (const auto& p : sys.pipelines)
        if (!p.existing) fix(vname_x("xPipe", p.key()), true);
}

BuiltModel build_model(const EnergySystem& sys, const TemporalStructure& ts,
                       const ScenarioConfig& cfg) {
    BuiltModel out;
    out.big_m = effective_big_m(sys, cfg);
    BuildContext ctx{sys, ts, cfg, out.model, out.costs, out.big_m};
    declare_variables(ctx);
    add_power_lite(ctx);
    add_gas_wells(ctx);
    add_demand_blending(ctx);
    add_gas_thermals(ctx);
    add_electrolyzers(ctx);
    add_smr(ctx);
    add_storage(ctx);
    add_fuel_cells(ctx);
    add_gas_network(ctx);
    add_compressors(ctx);
    add_balances(ctx);
    add_policy(ctx);
    add_objective(ctx);
    return out;
}

}  // namespace gasplan
