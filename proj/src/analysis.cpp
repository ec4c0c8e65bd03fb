#include "gasplan/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>

#include "gasplan/csv.hpp"
#include "gasplan/emit.hpp"

namespace fs = std::filesystem;

namespace gasplan {

const char* to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::Sign: return "sign";
        case ViolationKind::Blend: return "blend";
        case ViolationKind::Mop: return "mop";
        case ViolationKind::Balance: return "balance";
    }
    return "?";
}

ViolationKind violation_kind_from_string(const std::string& s) {
    if (s == "sign") return ViolationKind::Sign;
    if (s == "blend") return ViolationKind::Blend;
    if (s == "mop") return ViolationKind::Mop;
    if (s == "balance") return ViolationKind::Balance;
    throw ConfigError("unknown violation kind '" + s + "'");
}

namespace {

double weighted_total(const Solution& sol, const TemporalStructure& ts,
                      const std::string& family,
                      const std::vector<std::string>& entities) {
    double total = 0.0;
    for (int rp = 1; rp <= ts.n_rp(); ++rp)
        for (int k = 1; k <= ts.n_k(); ++k) {
            double w = ts.weight(rp, k);
            for (const auto& e : entities) total += w * sol.value_or(vname(family, rp, k, e), 0.0);
        }
    return total;
}

void write_infeasible_hint(const ModelInstance& model, const std::string& path) {
    // Group constraint names by family prefix so the dump stays readable.
    std::map<std::string, std::size_t> families;
    for (const auto& c : model.constraints()) {
        auto cut = c.name.find("__");
        families[c.name.substr(0, cut)]++;
    }
    std::ofstream out(path);
    out << "# model reported infeasible; constraint families present:\n";
    for (const auto& [fam, count] : families) out << fam << " " << count << "\n";
}

ScenarioResult solve_built(BuiltModel& built, const EnergySystem& sys,
                           const TemporalStructure& ts, const ScenarioConfig& cfg,
                           const std::string& out_dir, const std::string& stem) {
    fs::create_directories(out_dir);
    ScenarioResult r;
    r.cfg = cfg;
    r.variable_count = built.model.variable_count();
    r.discrete_count = built.model.discrete_count();
    r.model_file = (fs::path(out_dir) / (stem + ".mps")).string();
    r.lp_file = (fs::path(out_dir) / (stem + ".lp")).string();
    r.solution_file = (fs::path(out_dir) / (stem + ".sol")).string();
    emit_to_file(built.model, FileFormat::MpsFree, r.model_file);
    emit_to_file(built.model, FileFormat::LP, r.lp_file);

    SolveOptions opts;
    opts.gap = cfg.milp_gap;
    opts.time_limit_s = cfg.time_limit;
    opts.solver = cfg.solver;
    r.solution = solve_file(r.model_file, r.solution_file, opts);

    if (r.solution.feasible()) {
        // returned values must respect the declared bounds up to solver tolerance
        for (const auto& v : built.model.variables()) {
            auto it = r.solution.values.find(v.name);
            if (it == r.solution.values.end()) continue;
            double slack = 1e-5 * std::max(1.0, std::fabs(it->second));
            if (it->second < v.lb - slack || it->second > v.ub + slack)
                throw ProtocolError("solver value for '" + v.name + "' leaves its bounds");
        }
        r.cost_breakdown = built.costs.evaluate(built.model, r.solution);
        auto bal = detect_violations(r.solution, sys, ts, cfg, ViolationKind::Balance);
        if (!bal.empty())
            throw ProtocolError("solver returned a point violating " +
                                std::to_string(bal.size()) + " balance equalities");
        std::vector<Violation> found;
        for (auto kind : {ViolationKind::Sign, ViolationKind::Blend, ViolationKind::Mop}) {
            auto v = detect_violations(r.solution, sys, ts, cfg, kind);
            found.insert(found.end(), v.begin(), v.end());
        }
        write_violations_csv(found, (fs::path(out_dir) / "violations.csv").string());
    } else if (r.solution.status == SolveStatus::Infeasible) {
        write_infeasible_hint(built.model,
                              (fs::path(out_dir) / (stem + "_infeasible_hint.txt")).string());
    }

    write_solution_csv(r, built.model, (fs::path(out_dir) / "solution.csv").string());
    write_costs_csv(r, (fs::path(out_dir) / "costs.csv").string());
    write_costs_report(r, (fs::path(out_dir) / "costs.txt").string());
    return r;
}

}  // namespace

ScenarioResult run_scenario(const EnergySystem& sys, const TemporalStructure& ts,
                            const ScenarioConfig& cfg, const std::string& out_dir) {
    BuiltModel built = build_model(sys, ts, cfg);
    return solve_built(built, sys, ts, cfg, out_dir, "model");
}

RegretReport audit_fixed_investments(const ScenarioResult& plan, const EnergySystem& sys,
                                     const TemporalStructure& ts, ScenarioConfig cfg_audit,
                                     const std::string& out_dir) {
    if (!plan.solution.feasible())
        throw ProtocolError("audit-error: planning solution is not feasible");
    cfg_audit.mode = RunMode::OperateFixed;

    BuiltModel built = build_model(sys, ts, cfg_audit);
    fix_investments(built.model, sys, plan.solution.values);

    RegretReport rep;
    rep.plan_formulation = plan.cfg.flow_formulation;
    rep.audit_formulation = cfg_audit.flow_formulation;
    rep.audit = solve_built(built, sys, ts, cfg_audit, out_dir, "audit");

    std::vector<std::string> pairs_ent, producers;
    for (const auto& [node, cl] : sys.demand_pairs()) pairs_ent.push_back(node + "__" + cl);
    for (const auto& u : sys.units)
        if (u.kind == UnitKind::Electrolyzer || u.kind == UnitKind::SmrCcs)
            producers.push_back(u.id);

    if (rep.audit.solution.feasible()) {
        rep.total_h2ns = weighted_total(rep.audit.solution, ts, "h2ns", pairs_ent);
        rep.total_ch4ns = weighted_total(rep.audit.solution, ts, "ch4ns", pairs_ent);
        double produced = weighted_total(rep.audit.solution, ts, "pH2", producers);
        rep.h2ns_share = produced + rep.total_h2ns > 0
                             ? rep.total_h2ns / (produced + rep.total_h2ns)
                             : 0.0;
        rep.audit_cost = rep.audit.solution.objective;
    }
    rep.plan_cost = plan.solution.objective;
    rep.cost_delta = rep.audit_cost - rep.plan_cost;
    rep.plan_pressure_violations =
        detect_violations(plan.solution, sys, ts, plan.cfg, ViolationKind::Mop);

    write_regret_csv(rep, (fs::path(out_dir) / "regret.csv").string());
    write_violations_csv(rep.plan_pressure_violations,
                         (fs::path(out_dir) / "violations.csv").string());
    return rep;
}

std::map<std::string, double> implied_squared_pressures(const Solution& sol,
                                                        const EnergySystem& sys, int rp,
                                                        int k) {
    // adjacency over pipelines only; compressor boosts are inequalities and
    // do not pin a relation between their endpoint pressures
    std::map<std::string, std::vector<const Pipeline*>> adj;
    for (const auto& p : sys.pipelines) {
        adj[p.from_node].push_back(&p);
        adj[p.to_node].push_back(&p);
    }

    std::map<std::string, double> out;
    std::set<std::string> visited;
    for (;;) {
        // highest-MOP unvisited node seeds the next component
        const GasNode* seed = nullptr;
        for (const auto& n : sys.nodes)
            if (!visited.count(n.id) && (!seed || n.p_max_sqr > seed->p_max_sqr)) seed = &n;
        if (!seed) break;
        out[seed->id] = seed->p_max_sqr;
        visited.insert(seed->id);
        std::deque<std::string> queue{seed->id};
        while (!queue.empty()) {
            std::string cur = queue.front();
            queue.pop_front();
            auto it = adj.find(cur);
            if (it == adj.end()) continue;
            for (const Pipeline* p : it->second) {
                std::string other = p->from_node == cur ? p->to_node : p->from_node;
                if (visited.count(other)) continue;
                double f = sol.value_or(vname("fGas", rp, k, p->key()), 0.0);
                double drop = f * std::fabs(f) / p->r_gas;  // p_from^2 - p_to^2
                out[other] = p->from_node == cur ? out[cur] - drop : out[cur] + drop;
                visited.insert(other);
                queue.push_back(other);
            }
        }
    }
    return out;
}

std::vector<Violation> detect_violations(const Solution& sol, const EnergySystem& sys,
                                         const TemporalStructure& ts, const ScenarioConfig& cfg,
                                         ViolationKind kind, ViolationTolerance tol) {
    std::vector<Violation> out;
    const double ftol = tol.flow;

    switch (kind) {
        case ViolationKind::Sign: {
            for (int rp = 1; rp <= ts.n_rp(); ++rp) {
                for (const auto& p : sys.pipelines) {
                    int first_sign_k = 0;
                    double first_sign = 0.0;
                    for (int k = 1; k <= ts.n_k(); ++k) {
                        double fc = sol.value_or(vname("fCH4", rp, k, p.key()), 0.0);
                        double fh = sol.value_or(vname("fH2", rp, k, p.key()), 0.0);
                        double fg = sol.value_or(vname("fGas", rp, k, p.key()), 0.0);
                        if (fc > ftol && fh < -ftol)
                            out.push_back({kind, p.key(), rp, k, std::min(fc, -fh),
                                           "opposite"});
                        else if (fc < -ftol && fh > ftol)
                            out.push_back({kind, p.key(), rp, k, std::min(-fc, fh),
                                           "opposite"});
                        if (std::fabs(fg) > ftol) {
                            double s = fg > 0 ? 1.0 : -1.0;
                            if (first_sign == 0.0) {
                                first_sign = s;
                                first_sign_k = k;
                            } else if (s != first_sign) {
                                out.push_back({kind, p.key(), rp, k, std::fabs(fg), "flip"});
                            }
                        }
                    }
                    (void)first_sign_k;
                }
            }
            break;
        }
        case ViolationKind::Blend: {
            for (int rp = 1; rp <= ts.n_rp(); ++rp)
                for (int k = 1; k <= ts.n_k(); ++k) {
                    for (const auto& p : sys.pipelines) {
                        double fc = sol.value_or(vname("fCH4", rp, k, p.key()), 0.0);
                        double fh = sol.value_or(vname("fH2", rp, k, p.key()), 0.0);
                        double excess = std::fabs(fh) - cfg.blend_max * std::fabs(fc);
                        if (excess > ftol)
                            out.push_back({kind, p.key(), rp, k, excess, "pipeline"});
                    }
                    for (const auto& c : sys.compressors) {
                        double fc = sol.value_or(vname("fCmpCH4", rp, k, c.key()), 0.0);
                        double fh = sol.value_or(vname("fCmpH2", rp, k, c.key()), 0.0);
                        double excess = fh - cfg.blend_max * fc;
                        if (excess > ftol)
                            out.push_back({kind, c.key(), rp, k, excess, "compressor"});
                    }
                }
            break;
        }
        case ViolationKind::Mop: {
            for (int rp = 1; rp <= ts.n_rp(); ++rp)
                for (int k = 1; k <= ts.n_k(); ++k) {
                    bool solved_pressures =
                        !sys.nodes.empty() &&
                        sol.values.count(vname("pSqr", rp, k, sys.nodes.front().id));
                    std::map<std::string, double> implied;
                    if (!solved_pressures) implied = implied_squared_pressures(sol, sys, rp, k);
                    for (const auto& n : sys.nodes) {
                        double sqr = solved_pressures
                                         ? sol.value(vname("pSqr", rp, k, n.id))
                                         : implied[n.id];
                        double pr = sqr > 0 ? std::sqrt(sqr) : 0.0;
                        double mop = std::sqrt(n.p_max_sqr);
                        double lb = std::sqrt(n.p_min_sqr);
                        if (pr > mop + tol.pressure_bar)
                            out.push_back({kind, n.id, rp, k, pr - mop, "over_mop"});
                        else if (pr < lb - tol.pressure_bar)
                            out.push_back({kind, n.id, rp, k, lb - pr, "under_lb"});
                    }
                }
            break;
        }
        case ViolationKind::Balance: {
            for (int rp = 1; rp <= ts.n_rp(); ++rp)
                for (int k = 1; k <= ts.n_k(); ++k)
                    for (const auto& n : sys.nodes) {
                        double h2 = 0.0, ch4 = 0.0;
                        for (const auto& u : sys.units) {
                            if (u.node != n.id) continue;
                            auto val = [&](const char* fam) {
                                return sol.value_or(vname(fam, rp, k, u.id), 0.0);
                            };
                            switch (u.kind) {
                                case UnitKind::Electrolyzer: h2 += val("pH2"); break;
                                case UnitKind::SmrCcs:
                                    h2 += val("pH2");
                                    ch4 -= val("csCH4");
                                    break;
                                case UnitKind::H2Tank:
                                case UnitKind::H2Cavern:
                                    h2 += val("pH2") - val("csH2");
                                    break;
                                case UnitKind::FuelCell: h2 -= val("csH2"); break;
                                case UnitKind::GasWell: ch4 += val("pCH4"); break;
                                case UnitKind::NgStorage:
                                    ch4 += val("pCH4") - val("csCH4");
                                    break;
                                case UnitKind::ThermalGas:
                                    ch4 -= val("csCH4E") + val("csCH4Aux");
                                    h2 -= val("csH2E") + val("csH2Aux");
                                    break;
                                default: break;
                            }
                        }
                        for (const auto& p : sys.pipelines) {
                            double fc = sol.value_or(vname("fCH4", rp, k, p.key()), 0.0);
                            double fh = sol.value_or(vname("fH2", rp, k, p.key()), 0.0);
                            if (p.to_node == n.id) {
                                ch4 += fc;
                                h2 += fh;
                            }
                            if (p.from_node == n.id) {
                                ch4 -= fc;
                                h2 -= fh;
                            }
                        }
                        for (const auto& c : sys.compressors) {
                            double fc = sol.value_or(vname("fCmpCH4", rp, k, c.key()), 0.0);
                            double fh = sol.value_or(vname("fCmpH2", rp, k, c.key()), 0.0);
                            if (c.to_node == n.id) {
                                ch4 += fc;
                                h2 += fh;
                            }
                            if (c.from_node == n.id) {
                                ch4 -= (1.0 + c.cons_ch4) * fc;
                                h2 -= (1.0 + c.cons_h2) * fh;
                            }
                        }
                        for (const auto& [node, cl] : sys.demand_pairs()) {
                            if (node != n.id) continue;
                            std::string ent = node + "__" + cl;
                            ch4 += sol.value_or(vname("ch4ns", rp, k, ent), 0.0) -
                                   sol.value_or(vname("dCH4", rp, k, ent), 0.0);
                            h2 += sol.value_or(vname("h2ns", rp, k, ent), 0.0) -
                                  sol.value_or(vname("dH2", rp, k, ent), 0.0);
                            h2 -= sys.h2_demand(rp, k, node, cl);
                        }
                        if (std::fabs(h2) > ftol)
                            out.push_back({kind, n.id, rp, k, std::fabs(h2), "h2"});
                        if (std::fabs(ch4) > ftol)
                            out.push_back({kind, n.id, rp, k, std::fabs(ch4), "ch4"});
                    }
            break;
        }
    }
    return out;
}

std::vector<PressureSample> pressure_profile(const Solution& sol, const EnergySystem& sys,
                                             const TemporalStructure& ts,
                                             const std::vector<std::string>& path) {
    std::vector<PressureSample> rows;
    for (int rp = 1; rp <= ts.n_rp(); ++rp)
        for (int k = 1; k <= ts.n_k(); ++k) {
            bool solved = !sys.nodes.empty() &&
                          sol.values.count(vname("pSqr", rp, k, sys.nodes.front().id));
            std::map<std::string, double> implied;
            if (!solved) implied = implied_squared_pressures(sol, sys, rp, k);
            for (const auto& id : path) {
                const GasNode& n = sys.node(id);
                double sqr = solved ? sol.value(vname("pSqr", rp, k, id)) : implied[id];
                rows.push_back({id, rp, k, sqr > 0 ? std::sqrt(sqr) : 0.0,
                                std::sqrt(n.p_min_sqr), std::sqrt(n.p_max_sqr)});
            }
        }
    return rows;
}

void write_solution_csv(const ScenarioResult& r, const ModelInstance& model,
                        const std::string& path) {
    CsvWriter w({"variable", "value"});
    // declaration order keeps diffs stable across runs
    for (const auto& v : model.variables()) {
        auto it = r.solution.values.find(v.name);
        if (it != r.solution.values.end())
            w.add_row({v.name, CsvWriter::format_number(it->second)});
    }
    w.write_file(path);
}

void write_costs_csv(const ScenarioResult& r, const std::string& path) {
    CsvWriter w({"term", "label", "value"});
    static const char* numerals[kCostTermCount] = {
        "i",    "ii",  "iii", "iv", "v",  "vi",  "vii",  "viii", "ix",
        "x",    "xi",  "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii"};
    for (int t = 0; t < kCostTermCount; ++t)
        w.add_row({numerals[t], cost_term_label(static_cast<CostTerm>(t)),
                   CsvWriter::format_number(r.cost_breakdown[static_cast<std::size_t>(t)])});
    w.write_file(path);
}

void write_costs_report(const ScenarioResult& r, const std::string& path) {
    std::ofstream out(path);
    out << "total system cost breakdown (MEUR)\n";
    out << "status: " << to_string(r.solution.status) << ", objective: "
        << CsvWriter::format_number(r.solution.objective) << ", gap: "
        << CsvWriter::format_number(r.solution.gap) << "\n\n";
    double total = 0.0;
    for (int i = 0; i < kCostTermCount; ++i) {
        double v = r.cost_breakdown[static_cast<std::size_t>(i)];
        total += v;
        char line[96];
        std::snprintf(line, sizeof line, "  (%-5s) %-24s %16.6f\n",
                      std::array<const char*, kCostTermCount>{
                          "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi",
                          "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii"}[
                          static_cast<std::size_t>(i)],
                      cost_term_label(static_cast<CostTerm>(i)), v);
        out << line;
    }
    char line[96];
    std::snprintf(line, sizeof line, "  %-32s %16.6f\n", "sum of terms", total);
    out << line;
}

void write_violations_csv(const std::vector<Violation>& v, const std::string& path) {
    CsvWriter w({"kind", "entity", "rp", "k", "amount", "detail"});
    for (const auto& x : v)
        w.add_row({to_string(x.kind), x.entity, std::to_string(x.rp), std::to_string(x.k),
                   CsvWriter::format_number(x.amount), x.detail});
    w.write_file(path);
}

void write_pressure_profile_csv(const std::vector<PressureSample>& rows,
                                const std::string& path) {
    CsvWriter w({"node", "rp", "k", "pressure_bar", "lb_bar", "mop_bar"});
    for (const auto& s : rows)
        w.add_row({s.node, std::to_string(s.rp), std::to_string(s.k),
                   CsvWriter::format_number(s.pressure_bar), CsvWriter::format_number(s.lb_bar),
                   CsvWriter::format_number(s.mop_bar)});
    w.write_file(path);
}

void write_regret_csv(const RegretReport& r, const std::string& path) {
    CsvWriter w({"metric", "value"});
    auto n = [](double v) { return CsvWriter::format_number(v); };
    w.add_row({"plan_formulation", to_string(r.plan_formulation)});
    w.add_row({"audit_formulation", to_string(r.audit_formulation)});
    w.add_row({"audit_status", to_string(r.audit.solution.status)});
    w.add_row({"total_h2ns_msm3", n(r.total_h2ns)});
    w.add_row({"h2ns_share", n(r.h2ns_share)});
    w.add_row({"total_ch4ns_msm3", n(r.total_ch4ns)});
    w.add_row({"plan_cost", n(r.plan_cost)});
    w.add_row({"audit_cost", n(r.audit_cost)});
    w.add_row({"cost_delta", n(r.cost_delta)});
    w.add_row({"plan_pressure_violations", std::to_string(r.plan_pressure_violations.size())});
    w.write_file(path);
}

std::unordered_map<std::string, double> read_solution_csv(const std::string& path) {
    auto t = CsvTable::read_file(path);
    t.require_columns({"variable", "value"});
    std::unordered_map<std::string, double> out;
    for (std::size_t r = 0; r < t.row_count(); ++r)
        out[t.cell(r, "variable")] = t.number(r, "value");
    return out;
}

}  // namespace gasplan
