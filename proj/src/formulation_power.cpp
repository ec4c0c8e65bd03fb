#include <cmath>

#include "gasplan/formulation.hpp"

namespace gasplan {

namespace {

std::string line_key(const PowerLine& l) {
    return l.from_bus + "_" + l.to_bus + "_" + l.circuit;
}

}  // namespace

// Nodal balance, DC power flow with candidate-line gating, clustered unit
// commitment with startup linking, gas-thermal ramping, renewable
// availability, and battery state of charge.
void add_power_lite(BuildContext& ctx) {
    ModelInstance& m = ctx.model;
    const EnergySystem& sys = ctx.sys;
    const TemporalStructure& ts = ctx.ts;
    const bool cyclic = !ts.is_full_chronology();

    for (int rp = 1; rp <= ts.n_rp(); ++rp) {
        for (int k = 1; k <= ts.n_k(); ++k) {
            // DC flow
            for (const auto& l : sys.lines) {
                std::string key = line_key(l);
                VarId f = m.find_variable(vname("flowE", rp, k, key));
                VarId ti = m.find_variable(vname("theta", rp, k, l.from_bus));
                VarId tj = m.find_variable(vname("theta", rp, k, l.to_bus));
                if (l.existing) {
                    m.add_constraint(vname("dc", rp, k, key), Sense::EQ,
                                     {{f, 1.0}, {ti, -l.susceptance}, {tj, l.susceptance}}, 0.0);
                } else {
                    VarId x = m.find_variable(vname_x("xL", key));
                    double ml = 2.0 * l.susceptance * ctx.cfg.theta_max;
                    m.add_constraint(vname("dcU", rp, k, key), Sense::LE,
                                     {{f, 1.0}, {ti, -l.susceptance}, {tj, l.susceptance},
                                      {x, ml}},
                                     ml);
                    m.add_constraint(vname("dcL", rp, k, key), Sense::GE,
                                     {{f, 1.0}, {ti, -l.susceptance}, {tj, l.susceptance},
                                      {x, -ml}},
                                     -ml);
                    m.add_constraint(vname("gateU", rp, k, key), Sense::LE,
                                     {{f, 1.0}, {x, -l.f_max}}, 0.0);
                    m.add_constraint(vname("gateL", rp, k, key), Sense::GE,
                                     {{f, 1.0}, {x, l.f_max}}, 0.0);
                }
            }

            // nodal power balance: generation - consumption + pns + inflow = demand
            for (const auto& b : sys.buses) {
                std::vector<LinTerm> terms;
                for (const auto& u : sys.units) {
                    if (u.bus != b.id) continue;
                    if (u.kind == UnitKind::ThermalGas || u.kind == UnitKind::ThermalOther ||
                        u.kind == UnitKind::Renewable || u.kind == UnitKind::Bess ||
                        u.kind == UnitKind::FuelCell)
                        terms.push_back({m.find_variable(vname("pE", rp, k, u.id)), 1.0});
                    if (u.kind == UnitKind::Bess || u.kind == UnitKind::Electrolyzer)
                        terms.push_back({m.find_variable(vname("csE", rp, k, u.id)), -1.0});
                }
                terms.push_back({m.find_variable(vname("pns", rp, k, b.id)), 1.0});
                for (const auto& l : sys.lines) {
                    VarId f = m.find_variable(vname("flowE", rp, k, line_key(l)));
                    if (l.to_bus == b.id) terms.push_back({f, 1.0});
                    if (l.from_bus == b.id) terms.push_back({f, -1.0});
                }
                m.add_constraint(vname("bal_e", rp, k, b.id), Sense::EQ, terms,
                                 sys.power_demand(rp, k, b.id));
            }

            for (const auto& u : sys.units) {
                VarId x = m.find_variable(vname_x("x", u.id));
                switch (u.kind) {
                    case UnitKind::Renewable: {
                        VarId p = m.find_variable(vname("pE", rp, k, u.id));
                        double cap = sys.availability_factor(rp, k, u.id) * u.p_max;
                        m.add_constraint(vname("ren_cap", rp, k, u.id), Sense::LE,
                                         {{p, 1.0}, {x, -cap}}, cap * u.eu);
                        break;
                    }
                    case UnitKind::ThermalGas:
                    case UnitKind::ThermalOther: {
                        VarId p = m.find_variable(vname("pE", rp, k, u.id));
                        VarId uc = m.find_variable(vname("u", rp, k, u.id));
                        VarId y = m.find_variable(vname("y", rp, k, u.id));
                        m.add_constraint(vname("uc_max", rp, k, u.id), Sense::LE,
                                         {{p, 1.0}, {uc, -u.p_max}}, 0.0);
                        if (u.p_min > 0)
                            m.add_constraint(vname("uc_min", rp, k, u.id), Sense::GE,
                                             {{p, 1.0}, {uc, -u.p_min}}, 0.0);
                        m.add_constraint(vname("uc_fleet", rp, k, u.id), Sense::LE,
                                         {{uc, 1.0}, {x, -1.0}}, u.eu);
                        m.add_constraint(vname("uc_y", rp, k, u.id), Sense::LE,
                                         {{y, 1.0}, {uc, -1.0}}, 0.0);
                        if (k > 1 || cyclic) {
                            int kp = k > 1 ? k - 1 : ts.n_k();
                            VarId up = m.find_variable(vname("u", rp, kp, u.id));
                            m.add_constraint(vname("uc_link", rp, k, u.id), Sense::GE,
                                             {{y, 1.0}, {uc, -1.0}, {up, 1.0}}, 0.0);
                        }
                        // capacity bound scaled by the built fleet
                        m.add_constraint(vname("gt_cap", rp, k, u.id), Sense::LE,
                                         {{p, 1.0}, {x, -u.p_max}}, u.p_max * u.eu);
                        if (u.kind == UnitKind::ThermalGas && (k > 1 || cyclic)) {
                            int kp = k > 1 ? k - 1 : ts.n_k();
                            VarId pp = m.find_variable(vname("pE", rp, kp, u.id));
                            if (u.ramp_up > 0)
                                m.add_constraint(vname("ramp_up", rp, k, u.id), Sense::LE,
                                                 {{p, 1.0}, {pp, -1.0}},
                                                 u.ramp_up * ts.w_k(k));
                            if (u.ramp_dn > 0)
                                m.add_constraint(vname("ramp_dn", rp, k, u.id), Sense::GE,
                                                 {{p, 1.0}, {pp, -1.0}},
                                                 -u.ramp_dn * ts.w_k(k));
                        }
                        break;
                    }
                    case UnitKind::Bess: {
                        VarId p = m.find_variable(vname("pE", rp, k, u.id));
                        VarId c = m.find_variable(vname("csE", rp, k, u.id));
                        VarId s = m.find_variable(vname("socE", rp, k, u.id));
                        m.add_constraint(vname("bess_p", rp, k, u.id), Sense::LE,
                                         {{p, 1.0}, {x, -u.p_max}}, u.p_max * u.eu);
                        double cc = u.cs_max > 0 ? u.cs_max : u.p_max;
                        m.add_constraint(vname("bess_c", rp, k, u.id), Sense::LE,
                                         {{c, 1.0}, {x, -cc}}, cc * u.eu);
                        double cap = u.energy_capacity_per_unit();
                        m.add_constraint(vname("soc_e_ub", rp, k, u.id), Sense::LE,
                                         {{s, 1.0}, {x, -cap}}, cap * u.eu);
                        if (u.r_min > 0)
                            m.add_constraint(vname("soc_e_lb", rp, k, u.id), Sense::GE,
                                             {{s, 1.0}, {x, -u.r_min * cap}},
                                             u.r_min * cap * u.eu);
                        double w = ts.w_k(k);
                        if (k > 1 || cyclic) {
                            int kp = k > 1 ? k - 1 : ts.n_k();
                            VarId sp = m.find_variable(vname("socE", rp, kp, u.id));
                            m.add_constraint(vname("soc_e", rp, k, u.id), Sense::EQ,
                                             {{s, 1.0},
                                              {sp, -1.0},
                                              {p, w / u.eta_dis},
                                              {c, -w * u.eta_ch}},
                                             0.0);
                        } else {
                            // chronological anchor on the initial reserve
                            m.add_constraint(vname("soc_e", rp, k, u.id), Sense::EQ,
                                             {{s, 1.0},
                                              {p, w / u.eta_dis},
                                              {c, -w * u.eta_ch},
                                              {x, -u.in_res * cap}},
                                             u.in_res * cap * u.eu);
                        }
                        break;
                    }
                    default: break;
                }
            }
        }
    }
}

}  // namespace gasplan
