#include "gasplan/formulation.hpp"

namespace gasplan {

void add_electrolyzers(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& u : ctx.sys.units) {
                if (u.kind != UnitKind::Electrolyzer) continue;
                VarId p = m.find_variable(vname("pH2", rp, k, u.id));
                VarId c = m.find_variable(vname("csE", rp, k, u.id));
                VarId x = m.find_variable(vname_x("x", u.id));
                m.add_constraint(vname("el_conv", rp, k, u.id), Sense::EQ,
                                 {{p, 1.0}, {c, -u.hpe}}, 0.0);
                m.add_constraint(vname("el_cons_ub", rp, k, u.id), Sense::LE,
                                 {{c, 1.0}, {x, -u.p_max}}, u.p_max * u.eu);
                m.add_constraint(vname("el_prod_ub", rp, k, u.id), Sense::LE,
                                 {{p, 1.0}, {x, -u.p_max * u.hpe}}, u.p_max * u.hpe * u.eu);
            }
}

void add_smr(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& u : ctx.sys.units) {
                if (u.kind != UnitKind::SmrCcs) continue;
                VarId p = m.find_variable(vname("pH2", rp, k, u.id));
                VarId c = m.find_variable(vname("csCH4", rp, k, u.id));
                VarId x = m.find_variable(vname_x("x", u.id));
                m.add_constraint(vname("smr_conv", rp, k, u.id), Sense::EQ,
                                 {{p, 1.0}, {c, -u.hpc}}, 0.0);
                double cons_cap = u.p_max / u.hpc;
                m.add_constraint(vname("smr_cons_ub", rp, k, u.id), Sense::LE,
                                 {{c, 1.0}, {x, -cons_cap}}, cons_cap * u.eu);
                m.add_constraint(vname("smr_prod_ub", rp, k, u.id), Sense::LE,
                                 {{p, 1.0}, {x, -u.p_max}}, u.p_max * u.eu);
            }
}

void add_fuel_cells(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    for (int rp = 1; rp <= ctx.ts.n_rp(); ++rp)
        for (int k = 1; k <= ctx.ts.n_k(); ++k)
            for (const auto& u : ctx.sys.units) {
                if (u.kind != UnitKind::FuelCell) continue;
                VarId p = m.find_variable(vname("pE", rp, k, u.id));
                VarId c = m.find_variable(vname("csH2", rp, k, u.id));
                VarId x = m.find_variable(vname_x("x", u.id));
                m.add_constraint(vname("fc_conv", rp, k, u.id), Sense::EQ,
                                 {{p, 1.0}, {c, -u.eph}}, 0.0);
                m.add_constraint(vname("fc_cons_ub", rp, k, u.id), Sense::LE,
                                 {{c, 1.0}, {x, -u.cs_max}}, u.cs_max * u.eu);
                m.add_constraint(vname("fc_prod_ub", rp, k, u.id), Sense::LE,
                                 {{p, 1.0}, {x, -u.cs_max * u.eph}}, u.cs_max * u.eph * u.eu);
            }
}

// Hydrogen and natural-gas storage. Short-term units track a cyclic
// intra-period state of charge; long-term units use inter-period balances at
// each multiple of the moving window, with the windowed net flows collected
// through the period mapping. In chronological mode everything is
// intra-period, anchored on the initial reserve, and long-term units must
// return to it at the end of the horizon.
void add_storage(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const TemporalStructure& ts = ctx.ts;
    const bool inter_active = ctx.inter_soc_active();

    for (const auto& u : ctx.sys.units) {
        if (!is_storage_short_term(u.kind) && !is_storage_long_term(u.kind)) continue;
        const bool long_term = is_storage_long_term(u.kind);
        const bool use_inter = long_term && inter_active;
        const double cap = u.energy_capacity_per_unit();
        VarId x = m.find_variable(vname_x("x", u.id));

        // production / consumption bounds hold in every mode
        for (int rp = 1; rp <= ts.n_rp(); ++rp)
            for (int k = 1; k <= ts.n_k(); ++k) {
                VarId p = m.find_variable(vname(production_family(u), rp, k, u.id));
                VarId c = m.find_variable(vname(consumption_family(u), rp, k, u.id));
                m.add_constraint(vname("st_p", rp, k, u.id), Sense::LE,
                                 {{p, 1.0}, {x, -u.p_max}}, u.p_max * u.eu);
                double cc = u.cs_max > 0 ? u.cs_max : u.p_max;
                m.add_constraint(vname("st_c", rp, k, u.id), Sense::LE, {{c, 1.0}, {x, -cc}},
                                 cc * u.eu);
            }

        if (use_inter) {
            auto cps = ts.checkpoints();
            if (cps.empty())
                throw ConfigError("long-term storage unit '" + u.id +
                                  "' needs a valid moving window");
            for (std::size_t i = 0; i < cps.size(); ++i) {
                int p = cps[i];
                VarId soc = m.find_variable(vname_p(soc_inter_family(u), p, u.id));
                std::vector<LinTerm> terms{{soc, 1.0}};
                if (i > 0)
                    terms.push_back(
                        {m.find_variable(vname_p(soc_inter_family(u), cps[i - 1], u.id)),
                         -1.0});
                for (const auto& mem : ts.window_members(p)) {
                    double mult = mem.multiplicity * ts.w_k(mem.k);
                    terms.push_back(
                        {m.find_variable(vname(production_family(u), mem.rp, mem.k, u.id)),
                         mult / u.eta_dis});
                    terms.push_back(
                        {m.find_variable(vname(consumption_family(u), mem.rp, mem.k, u.id)),
                         -mult * u.eta_ch});
                }
                // the initial reserve enters once, through the first window
                double rhs = 0.0;
                if (i == 0) {
                    terms.push_back({x, -u.in_res * cap});
                    rhs = u.in_res * cap * u.eu;
                }
                m.add_constraint(vname_p("isoc", p, u.id), Sense::EQ, terms, rhs);

                m.add_constraint(vname_p("isoc_ub", p, u.id), Sense::LE,
                                 {{soc, 1.0}, {x, -cap}}, cap * u.eu);
                if (u.r_min > 0)
                    m.add_constraint(vname_p("isoc_lb", p, u.id), Sense::GE,
                                     {{soc, 1.0}, {x, -u.r_min * cap}}, u.r_min * cap * u.eu);
            }
            VarId last = m.find_variable(vname_p(soc_inter_family(u), cps.back(), u.id));
            m.add_constraint(vname_x("isoc_term", u.id), Sense::EQ,
                             {{last, 1.0}, {x, -u.in_res * cap}}, u.in_res * cap * u.eu);
        } else {
            const bool cyclic = !ts.is_full_chronology();
            for (int rp = 1; rp <= ts.n_rp(); ++rp)
                for (int k = 1; k <= ts.n_k(); ++k) {
                    VarId soc = m.find_variable(vname(soc_intra_family(u), rp, k, u.id));
                    VarId p = m.find_variable(vname(production_family(u), rp, k, u.id));
                    VarId c = m.find_variable(vname(consumption_family(u), rp, k, u.id));
                    double w = ts.w_k(k);
                    if (k > 1 || cyclic) {
                        int kp = k > 1 ? k - 1 : ts.n_k();
                        VarId sp = m.find_variable(vname(soc_intra_family(u), rp, kp, u.id));
                        m.add_constraint(vname("soc", rp, k, u.id), Sense::EQ,
                                         {{soc, 1.0},
                                          {sp, -1.0},
                                          {p, w / u.eta_dis},
                                          {c, -w * u.eta_ch}},
                                         0.0);
                    } else {
                        m.add_constraint(vname("soc", rp, k, u.id), Sense::EQ,
                                         {{soc, 1.0},
                                          {p, w / u.eta_dis},
                                          {c, -w * u.eta_ch},
                                          {x, -u.in_res * cap}},
                                         u.in_res * cap * u.eu);
                    }
                    m.add_constraint(vname("soc_ub", rp, k, u.id), Sense::LE,
                                     {{soc, 1.0}, {x, -cap}}, cap * u.eu);
                    if (u.r_min > 0)
                        m.add_constraint(vname("soc_lb", rp, k, u.id), Sense::GE,
                                         {{soc, 1.0}, {x, -u.r_min * cap}},
                                         u.r_min * cap * u.eu);
                }
            if (long_term && !cyclic) {
                VarId last = m.find_variable(vname(soc_intra_family(u), 1, ts.n_k(), u.id));
                m.add_constraint(vname_x("soc_term", u.id), Sense::EQ,
                                 {{last, 1.0}, {x, -u.in_res * cap}}, u.in_res * cap * u.eu);
            }
        }
    }
}

}  // namespace gasplan
