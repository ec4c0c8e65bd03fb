#include "gasplan/system.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "gasplan/csv.hpp"
#include "gasplan/physics.hpp"

namespace fs = std::filesystem;

namespace gasplan {

double Pipeline::annual_invest_cost() const {
    if (lifetime_y > 0) {
        double r = annuity_rate;
        double a = r / (1.0 - std::pow(1.0 + r, -lifetime_y));
        return invest_cost * a;
    }
    return invest_cost * annuity_rate;
}

const char* to_string(UnitKind k) {
    switch (k) {
        case UnitKind::GasWell: return "gas_well";
        case UnitKind::NgStorage: return "ng_storage";
        case UnitKind::ThermalGas: return "thermal_gas";
        case UnitKind::ThermalOther: return "thermal_other";
        case UnitKind::Renewable: return "renewable";
        case UnitKind::Bess: return "bess";
        case UnitKind::Electrolyzer: return "electrolyzer";
        case UnitKind::SmrCcs: return "smr_ccs";
        case UnitKind::FuelCell: return "fuel_cell";
        case UnitKind::H2Tank: return "h2_tank";
        case UnitKind::H2Cavern: return "h2_cavern";
    }
    return "?";
}

UnitKind unit_kind_from_string(const std::string& s) {
    static const std::vector<UnitKind> all = {
        UnitKind::GasWell,  UnitKind::NgStorage, UnitKind::ThermalGas, UnitKind::ThermalOther,
        UnitKind::Renewable, UnitKind::Bess,     UnitKind::Electrolyzer, UnitKind::SmrCcs,
        UnitKind::FuelCell, UnitKind::H2Tank,    UnitKind::H2Cavern};
    for (UnitKind k : all)
        if (s == to_string(k)) return k;
    throw SchemaError("unknown unit kind '" + s + "'");
}

bool is_power_unit(UnitKind k) {
    return k == UnitKind::ThermalGas || k == UnitKind::ThermalOther || k == UnitKind::Renewable ||
           k == UnitKind::Bess;
}
bool is_h2_unit(UnitKind k) {
    return k == UnitKind::Electrolyzer || k == UnitKind::SmrCcs || k == UnitKind::FuelCell ||
           k == UnitKind::H2Tank || k == UnitKind::H2Cavern;
}
bool is_ng_unit(UnitKind k) { return k == UnitKind::GasWell || k == UnitKind::NgStorage; }
bool is_thermal(UnitKind k) {
    return k == UnitKind::ThermalGas || k == UnitKind::ThermalOther;
}
bool is_storage_short_term(UnitKind k) { return k == UnitKind::H2Tank; }
bool is_storage_long_term(UnitKind k) {
    return k == UnitKind::H2Cavern || k == UnitKind::NgStorage;
}

const char* to_string(FlowFormulation f) {
    switch (f) {
        case FlowFormulation::STP: return "stp";
        case FlowFormulation::BTP: return "btp";
        case FlowFormulation::BPP: return "bpp";
    }
    return "?";
}

FlowFormulation formulation_from_string(const std::string& s) {
    if (s == "stp") return FlowFormulation::STP;
    if (s == "btp") return FlowFormulation::BTP;
    if (s == "bpp") return FlowFormulation::BPP;
    throw ConfigError("unknown flow formulation '" + s + "' (expected stp|btp|bpp)");
}

void ScenarioConfig::apply_key(const std::string& key, const std::string& value) {
    auto num = [&] {
        try {
            return std::stod(value);
        } catch (...) {
            throw ConfigError("config key '" + key + "': bad number '" + value + "'");
        }
    };
    if (key == "formulation") flow_formulation = formulation_from_string(value);
    else if (key == "blend_min") blend_min = num();
    else if (key == "blend_max") blend_max = num();
    else if (key == "kappa") kappa = num();
    else if (key == "c_co2") c_co2 = num();
    else if (key == "c_ch4") c_ch4 = num();
    else if (key == "c_ens") c_ens = num();
    else if (key == "c_h2ns") c_h2ns = num();
    else if (key == "c_ch4ns") c_ch4ns = num();
    else if (key == "n_increments") n_increments = static_cast<int>(num());
    else if (key == "mow") mow = static_cast<int>(num());
    else if (key == "milp_gap") milp_gap = num();
    else if (key == "big_m") big_m = num();
    else if (key == "mode") {
        if (value == "plan") mode = RunMode::Plan;
        else if (value == "operate_fixed") mode = RunMode::OperateFixed;
        else throw ConfigError("mode must be plan|operate_fixed");
    } else if (key == "long_term_storage") {
        if (value == "auto") long_term_storage = LongTermStorageMode::Auto;
        else if (value == "intra") long_term_storage = LongTermStorageMode::Intra;
        else if (value == "inter") long_term_storage = LongTermStorageMode::Inter;
        else throw ConfigError("long_term_storage must be auto|intra|inter");
    } else if (key == "smr_co2") smr_co2 = (value == "1" || value == "true" || value == "on");
    else if (key == "theta_max") theta_max = num();
    else if (key == "annual_days") annual_days = num();
    else if (key == "annual_hours") annual_hours = num();
    else if (key == "time_limit") time_limit = num();
    else if (key == "solver") solver = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

ScenarioConfig ScenarioConfig::load(const std::string& path) {
    ScenarioConfig cfg;
    for (const auto& [k, v] : read_key_value_file(path)) cfg.apply_key(k, v);
    if (cfg.blend_min < 0 || cfg.blend_min > cfg.blend_max)
        throw ConfigError("require 0 <= blend_min <= blend_max");
    if (cfg.kappa < 0 || cfg.kappa > 1) throw ConfigError("require 0 <= kappa <= 1");
    if (cfg.n_increments < 2) throw ConfigError("require n_increments >= 2");
    for (double price : {cfg.c_co2, cfg.c_ch4, cfg.c_ens, cfg.c_h2ns, cfg.c_ch4ns})
        if (price < 0) throw ConfigError("prices must be non-negative");
    return cfg;
}

void ScenarioConfig::save(const std::string& path) const {
    std::string text;
    auto put = [&](const std::string& k, const std::string& v) { text += k + "=" + v + "\n"; };
    put("formulation", to_string(flow_formulation));
    put("blend_min", CsvWriter::format_number(blend_min));
    put("blend_max", CsvWriter::format_number(blend_max));
    put("kappa", CsvWriter::format_number(kappa));
    put("c_co2", CsvWriter::format_number(c_co2));
    put("c_ch4", CsvWriter::format_number(c_ch4));
    put("c_ens", CsvWriter::format_number(c_ens));
    put("c_h2ns", CsvWriter::format_number(c_h2ns));
    put("c_ch4ns", CsvWriter::format_number(c_ch4ns));
    put("n_increments", std::to_string(n_increments));
    put("mow", std::to_string(mow));
    put("milp_gap", CsvWriter::format_number(milp_gap));
    put("big_m", CsvWriter::format_number(big_m));
    put("mode", mode == RunMode::Plan ? "plan" : "operate_fixed");
    put("long_term_storage", long_term_storage == LongTermStorageMode::Auto    ? "auto"
                             : long_term_storage == LongTermStorageMode::Intra ? "intra"
                                                                               : "inter");
    put("smr_co2", smr_co2 ? "1" : "0");
    put("theta_max", CsvWriter::format_number(theta_max));
    put("annual_days", CsvWriter::format_number(annual_days));
    put("annual_hours", CsvWriter::format_number(annual_hours));
    put("time_limit", CsvWriter::format_number(time_limit));
    if (!solver.empty()) put("solver", solver);
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << text;
}

const GasNode& EnergySystem::node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw LinkError("unknown gas node '" + id + "'");
}

const Bus& EnergySystem::bus(const std::string& id) const {
    for (const auto& b : buses)
        if (b.id == id) return b;
    throw LinkError("unknown bus '" + id + "'");
}

const Unit& EnergySystem::unit(const std::string& id) const {
    for (const auto& u : units)
        if (u.id == id) return u;
    throw LinkError("unknown unit '" + id + "'");
}

const DemandClass& EnergySystem::demand_class(const std::string& id) const {
    for (const auto& c : classes)
        if (c.id == id) return c;
    throw LinkError("unknown demand class '" + id + "'");
}

bool EnergySystem::has_node(const std::string& id) const {
    return std::any_of(nodes.begin(), nodes.end(), [&](const GasNode& n) { return n.id == id; });
}
bool EnergySystem::has_bus(const std::string& id) const {
    return std::any_of(buses.begin(), buses.end(), [&](const Bus& b) { return b.id == id; });
}

double EnergySystem::availability_factor(int rp, int k, const std::string& unit_id) const {
    auto it = availability.find({rp, k, unit_id, ""});
    return it == availability.end() ? 1.0 : it->second;
}
double EnergySystem::power_demand(int rp, int k, const std::string& bus_id) const {
    auto it = demand_power.find({rp, k, bus_id, ""});
    return it == demand_power.end() ? 0.0 : it->second;
}
double EnergySystem::gas_demand(int rp, int k, const std::string& node_id,
                                const std::string& cls) const {
    auto it = demand_gas.find({rp, k, node_id, cls});
    return it == demand_gas.end() ? 0.0 : it->second;
}
double EnergySystem::h2_demand(int rp, int k, const std::string& node_id,
                               const std::string& cls) const {
    auto it = demand_h2.find({rp, k, node_id, cls});
    return it == demand_h2.end() ? 0.0 : it->second;
}

std::vector<std::pair<std::string, std::string>> EnergySystem::demand_pairs() const {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& [key, v] : demand_gas) seen.insert({key.entity, key.cls});
    for (const auto& [key, v] : demand_h2) seen.insert({key.entity, key.cls});
    return {seen.begin(), seen.end()};
}

double EnergySystem::max_pipeline_capacity() const {
    double m = 0.0;
    for (const auto& p : pipelines) m = std::max(m, p.f_max);
    for (const auto& c : compressors) m = std::max(m, c.f_max);
    return m;
}

namespace {

std::string loc(const CsvTable& t, std::size_t r) {
    return t.source() + ":" + std::to_string(t.line_of(r));
}

void check_unique(std::set<std::string>& seen, const std::string& id, const CsvTable& t,
                  std::size_t r) {
    if (!seen.insert(id).second)
        throw SchemaError(loc(t, r) + ": duplicate id '" + id + "'");
}

}  // namespace

EnergySystem EnergySystem::load(const std::string& dir) {
    EnergySystem sys;

    auto path = [&](const char* f) { return (fs::path(dir) / f).string(); };

    {
        auto t = CsvTable::read_file(path("gas_constants.csv"));
        t.require_columns({"h_ch4", "h_h2", "t_n", "t_m", "p_n", "rho_n", "rho_m", "eta_m",
                           "k_m", "v_m"},
                          {"r_scale"});
        if (t.row_count() != 1) throw SchemaError(t.source() + ": expected exactly one row");
        GasConstants& g = sys.constants;
        g.h_ch4 = t.number(0, "h_ch4");
        g.h_h2 = t.number(0, "h_h2");
        g.t_n = t.number(0, "t_n");
        g.t_m = t.number(0, "t_m");
        g.p_n = t.number(0, "p_n");
        g.rho_n = t.number(0, "rho_n");
        g.rho_m = t.number(0, "rho_m");
        g.eta_m = t.number(0, "eta_m");
        g.k_m = t.number(0, "k_m");
        g.v_m = t.number(0, "v_m");
        g.r_scale = t.number_or(0, "r_scale", 1.0);
        for (double v : {g.h_ch4, g.h_h2, g.t_n, g.t_m, g.p_n, g.rho_n, g.rho_m, g.eta_m, g.k_m,
                         g.v_m, g.r_scale})
            if (v <= 0) throw SchemaError(t.source() + ": gas constants must be positive");
        if (g.h_ch4 <= g.h_h2)
            throw SchemaError(t.source() + ": h_ch4 must exceed h_h2");
    }

    {
        auto t = CsvTable::read_file(path("buses.csv"));
        t.require_columns({"id"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            check_unique(seen, t.cell(r, "id"), t, r);
            sys.buses.push_back({t.cell(r, "id")});
        }
    }

    {
        auto t = CsvTable::read_file(path("gas_nodes.csv"));
        t.require_columns({"id", "p_min_sqr", "p_max_sqr"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            GasNode n{t.cell(r, "id"), t.number(r, "p_min_sqr"), t.number(r, "p_max_sqr")};
            check_unique(seen, n.id, t, r);
            if (n.p_min_sqr < 0 || n.p_min_sqr >= n.p_max_sqr)
                throw SchemaError(loc(t, r) + ": require 0 <= p_min_sqr < p_max_sqr");
            sys.nodes.push_back(n);
        }
    }

    {
        auto t = CsvTable::read_file(path("lines.csv"));
        t.require_columns(
            {"from_bus", "to_bus", "circuit", "susceptance", "f_max", "existing", "invest_cost"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            PowerLine l;
            l.from_bus = t.cell(r, "from_bus");
            l.to_bus = t.cell(r, "to_bus");
            l.circuit = t.cell(r, "circuit");
            l.susceptance = t.number(r, "susceptance");
            l.f_max = t.number(r, "f_max");
            l.existing = t.flag(r, "existing");
            l.invest_cost = t.number(r, "invest_cost");
            check_unique(seen, l.from_bus + "_" + l.to_bus + "_" + l.circuit, t, r);
            if (!sys.has_bus(l.from_bus) || !sys.has_bus(l.to_bus))
                throw LinkError(loc(t, r) + ": line references unknown bus");
            sys.lines.push_back(l);
        }
    }

    {
        auto t = CsvTable::read_file(path("pipelines.csv"));
        t.require_columns({"from_node", "to_node", "circuit", "length_m", "diameter_m",
                           "roughness_mm", "r_gas", "f_max", "existing", "invest_cost",
                           "annuity_rate"},
                          {"lifetime_y"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            Pipeline p;
            p.from_node = t.cell(r, "from_node");
            p.to_node = t.cell(r, "to_node");
            p.circuit = t.cell(r, "circuit");
            p.length_m = t.number(r, "length_m");
            p.diameter_m = t.number(r, "diameter_m");
            p.roughness_mm = t.number(r, "roughness_mm");
            p.existing = t.flag(r, "existing");
            p.invest_cost = t.number(r, "invest_cost");
            p.annuity_rate = t.number(r, "annuity_rate");
            p.lifetime_y = t.number_or(r, "lifetime_y", 0.0);
            check_unique(seen, p.key(), t, r);
            if (!sys.has_node(p.from_node) || !sys.has_node(p.to_node))
                throw LinkError(loc(t, r) + ": pipeline references unknown gas node");
            // Blank r_gas / f_max cells are filled from the steady-state physics.
            p.r_gas = t.empty_cell(r, "r_gas") ? physics::pipeline_resistance(p, sys.constants)
                                               : t.number(r, "r_gas");
            p.f_max = t.empty_cell(r, "f_max")
                          ? physics::max_capacity(p.r_gas, sys.node(p.from_node),
                                                  sys.node(p.to_node))
                          : t.number(r, "f_max");
            if (p.r_gas <= 0 || p.f_max <= 0)
                throw SchemaError(loc(t, r) + ": require positive r_gas and f_max");
            sys.pipelines.push_back(p);
        }
    }

    {
        auto t = CsvTable::read_file(path("compressors.csv"));
        t.require_columns(
            {"from_node", "to_node", "circuit", "ratio_sqr", "max_boost", "cons_ch4", "cons_h2",
             "f_max"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            Compressor c;
            c.from_node = t.cell(r, "from_node");
            c.to_node = t.cell(r, "to_node");
            c.circuit = t.cell(r, "circuit");
            c.ratio_sqr = t.number(r, "ratio_sqr");
            c.max_boost = t.number(r, "max_boost");
            c.cons_ch4 = t.number(r, "cons_ch4");
            c.cons_h2 = t.number(r, "cons_h2");
            c.f_max = t.number(r, "f_max");
            check_unique(seen, c.key(), t, r);
            if (!sys.has_node(c.from_node) || !sys.has_node(c.to_node))
                throw LinkError(loc(t, r) + ": compressor references unknown gas node");
            if (c.ratio_sqr < 1.0)
                throw SchemaError(loc(t, r) + ": compression ratio must be >= 1");
            if (c.cons_ch4 < 0 || c.cons_ch4 >= 1 || c.cons_h2 < 0 || c.cons_h2 >= 1)
                throw SchemaError(loc(t, r) + ": consumption fractions must lie in [0,1)");
            sys.compressors.push_back(c);
        }
    }

    {
        auto t = CsvTable::read_file(path("units.csv"));
        t.require_columns({"id", "kind", "bus", "node", "p_max", "eu", "x_max"},
                          {"p_min", "cs_max", "hpe", "hpc", "eph", "cs_v", "cs_su", "cs_up",
                           "eta_ch", "eta_dis", "etp", "in_res", "r_min", "ramp_up", "ramp_dn",
                           "emis", "c_inv", "c_om", "c_var", "c_su", "c_up", "integer_invest"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            Unit u;
            u.id = t.cell(r, "id");
            check_unique(seen, u.id, t, r);
            u.kind = unit_kind_from_string(t.cell(r, "kind"));
            u.bus = t.cell(r, "bus");
            u.node = t.cell(r, "node");
            u.p_max = t.number(r, "p_max");
            u.p_min = t.number_or(r, "p_min", 0.0);
            u.cs_max = t.number_or(r, "cs_max", 0.0);
            u.hpe = t.number_or(r, "hpe", 0.0);
            u.hpc = t.number_or(r, "hpc", 0.0);
            u.eph = t.number_or(r, "eph", 0.0);
            u.cs_v = t.number_or(r, "cs_v", 0.0);
            u.cs_su = t.number_or(r, "cs_su", 0.0);
            u.cs_up = t.number_or(r, "cs_up", 0.0);
            u.eta_ch = t.number_or(r, "eta_ch", 1.0);
            u.eta_dis = t.number_or(r, "eta_dis", 1.0);
            u.etp = t.number_or(r, "etp", 0.0);
            u.in_res = t.number_or(r, "in_res", 0.0);
            u.r_min = t.number_or(r, "r_min", 0.0);
            u.ramp_up = t.number_or(r, "ramp_up", 0.0);
            u.ramp_dn = t.number_or(r, "ramp_dn", 0.0);
            u.emis = t.number_or(r, "emis", 0.0);
            u.c_inv = t.number_or(r, "c_inv", 0.0);
            u.c_om = t.number_or(r, "c_om", 0.0);
            u.c_var = t.number_or(r, "c_var", 0.0);
            u.c_su = t.number_or(r, "c_su", 0.0);
            u.c_up = t.number_or(r, "c_up", 0.0);
            u.eu = t.number(r, "eu");
            u.x_max = t.number(r, "x_max");
            u.integer_invest =
                t.has_column("integer_invest") && !t.empty_cell(r, "integer_invest")
                    ? t.flag(r, "integer_invest")
                    : false;
            if (u.p_min > u.p_max) throw SchemaError(loc(t, r) + ": p_min exceeds p_max");
            if (u.eta_ch <= 0 || u.eta_ch > 1 || u.eta_dis <= 0 || u.eta_dis > 1)
                throw SchemaError(loc(t, r) + ": efficiencies must lie in (0,1]");
            if (u.r_min < 0 || u.r_min >= 1)
                throw SchemaError(loc(t, r) + ": r_min must lie in [0,1)");
            if (u.eu < 0 || u.x_max < 0)
                throw SchemaError(loc(t, r) + ": eu and x_max must be non-negative");
            if (!u.bus.empty() && !sys.has_bus(u.bus))
                throw LinkError(loc(t, r) + ": unit references unknown bus '" + u.bus + "'");
            if (!u.node.empty() && !sys.has_node(u.node))
                throw LinkError(loc(t, r) + ": unit references unknown gas node '" + u.node +
                                "'");
            sys.units.push_back(u);
        }
    }

    {
        auto t = CsvTable::read_file(path("demand_classes.csv"));
        t.require_columns({"id", "sector", "sub_min", "sub_max", "emis"});
        std::set<std::string> seen;
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            DemandClass c{t.cell(r, "id"), t.cell(r, "sector"), t.number(r, "sub_min"),
                          t.number(r, "sub_max"), t.number(r, "emis")};
            check_unique(seen, c.id, t, r);
            if (c.sub_min < 0 || c.sub_min > c.sub_max)
                throw SchemaError(loc(t, r) + ": require 0 <= sub_min <= sub_max");
            sys.classes.push_back(c);
        }
    }

    auto load_demand = [&](const char* file, bool is_power, std::map<DemandKey, double>& out) {
        auto t = CsvTable::read_file(path(file));
        if (is_power)
            t.require_columns({"rp", "k", "bus", "value"});
        else
            t.require_columns({"rp", "k", "node", "class", "value"});
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            DemandKey key;
            key.rp = static_cast<int>(t.integer(r, "rp"));
            key.k = static_cast<int>(t.integer(r, "k"));
            key.entity = t.cell(r, is_power ? "bus" : "node");
            if (!is_power) {
                key.cls = t.cell(r, "class");
                sys.demand_class(key.cls);  // existence check
                if (!sys.has_node(key.entity))
                    throw LinkError(loc(t, r) + ": unknown gas node '" + key.entity + "'");
            } else if (!sys.has_bus(key.entity)) {
                throw LinkError(loc(t, r) + ": unknown bus '" + key.entity + "'");
            }
            double v = t.number(r, "value");
            if (v < 0) throw SchemaError(loc(t, r) + ": demands must be non-negative");
            if (!out.emplace(key, v).second)
                throw SchemaError(loc(t, r) + ": duplicate demand entry");
        }
    };
    load_demand("demand_power.csv", true, sys.demand_power);
    load_demand("demand_gas.csv", false, sys.demand_gas);
    load_demand("demand_h2.csv", false, sys.demand_h2);

    if (fs::exists(fs::path(dir) / "availability.csv")) {
        auto t = CsvTable::read_file(path("availability.csv"));
        t.require_columns({"rp", "k", "unit", "factor"});
        for (std::size_t r = 0; r < t.row_count(); ++r) {
            DemandKey key;
            key.rp = static_cast<int>(t.integer(r, "rp"));
            key.k = static_cast<int>(t.integer(r, "k"));
            key.entity = t.cell(r, "unit");
            sys.unit(key.entity);  // existence check
            double v = t.number(r, "factor");
            if (v < 0) throw SchemaError(loc(t, r) + ": factors must be non-negative");
            if (!sys.availability.emplace(key, v).second)
                throw SchemaError(loc(t, r) + ": duplicate availability entry");
        }
    }

    return sys;
}

void EnergySystem::save(const std::string& dir) const {
    fs::create_directories(dir);
    auto path = [&](const char* f) { return (fs::path(dir) / f).string(); };
    auto n = [](double v) { return CsvWriter::format_number(v); };

    {
        CsvWriter w({"h_ch4", "h_h2", "t_n", "t_m", "p_n", "rho_n", "rho_m", "eta_m", "k_m",
                     "v_m", "r_scale"});
        const GasConstants& g = constants;
        w.add_row({n(g.h_ch4), n(g.h_h2), n(g.t_n), n(g.t_m), n(g.p_n), n(g.rho_n), n(g.rho_m),
                   n(g.eta_m), n(g.k_m), n(g.v_m), n(g.r_scale)});
        w.write_file(path("gas_constants.csv"));
    }
    {
        CsvWriter w({"id"});
        for (const auto& b : buses) w.add_row({b.id});
        w.write_file(path("buses.csv"));
    }
    {
        CsvWriter w({"id", "p_min_sqr", "p_max_sqr"});
        for (const auto& x : nodes) w.add_row({x.id, n(x.p_min_sqr), n(x.p_max_sqr)});
        w.write_file(path("gas_nodes.csv"));
    }
    {
        CsvWriter w({"from_bus", "to_bus", "circuit", "susceptance", "f_max", "existing",
                     "invest_cost"});
        for (const auto& l : lines)
            w.add_row({l.from_bus, l.to_bus, l.circuit, n(l.susceptance), n(l.f_max),
                       l.existing ? "1" : "0", n(l.invest_cost)});
        w.write_file(path("lines.csv"));
    }
    {
        CsvWriter w({"from_node", "to_node", "circuit", "length_m", "diameter_m", "roughness_mm",
                     "r_gas", "f_max", "existing", "invest_cost", "annuity_rate", "lifetime_y"});
        for (const auto& p : pipelines)
            w.add_row({p.from_node, p.to_node, p.circuit, n(p.length_m), n(p.diameter_m),
                       n(p.roughness_mm), n(p.r_gas), n(p.f_max), p.existing ? "1" : "0",
                       n(p.invest_cost), n(p.annuity_rate), n(p.lifetime_y)});
        w.write_file(path("pipelines.csv"));
    }
    {
        CsvWriter w({"from_node", "to_node", "circuit", "ratio_sqr", "max_boost", "cons_ch4",
                     "cons_h2", "f_max"});
        for (const auto& c : compressors)
            w.add_row({c.from_node, c.to_node, c.circuit, n(c.ratio_sqr), n(c.max_boost),
                       n(c.cons_ch4), n(c.cons_h2), n(c.f_max)});
        w.write_file(path("compressors.csv"));
    }
    {
        CsvWriter w({"id", "kind", "bus", "node", "p_max", "p_min", "cs_max", "hpe", "hpc",
                     "eph", "cs_v", "cs_su", "cs_up", "eta_ch", "eta_dis", "etp", "in_res",
                     "r_min", "ramp_up", "ramp_dn", "emis", "c_inv", "c_om", "c_var", "c_su",
                     "c_up", "eu", "x_max", "integer_invest"});
        for (const auto& u : units)
            w.add_row({u.id, to_string(u.kind), u.bus, u.node, n(u.p_max), n(u.p_min),
                       n(u.cs_max), n(u.hpe), n(u.hpc), n(u.eph), n(u.cs_v), n(u.cs_su),
                       n(u.cs_up), n(u.eta_ch), n(u.eta_dis), n(u.etp), n(u.in_res), n(u.r_min),
                       n(u.ramp_up), n(u.ramp_dn), n(u.emis), n(u.c_inv), n(u.c_om), n(u.c_var),
                       n(u.c_su), n(u.c_up), n(u.eu), n(u.x_max), u.integer_invest ? "1" : "0"});
        w.write_file(path("units.csv"));
    }
    {
        CsvWriter w({"id", "sector", "sub_min", "sub_max", "emis"});
        for (const auto& c : classes)
            w.add_row({c.id, c.sector, n(c.sub_min), n(c.sub_max), n(c.emis)});
        w.write_file(path("demand_classes.csv"));
    }
    {
        CsvWriter w({"rp", "k", "bus", "value"});
        for (const auto& [key, v] : demand_power)
            w.add_row({std::to_string(key.rp), std::to_string(key.k), key.entity, n(v)});
        w.write_file(path("demand_power.csv"));
    }
    {
        CsvWriter w({"rp", "k", "node", "class", "value"});
        for (const auto& [key, v] : demand_gas)
            w.add_row({std::to_string(key.rp), std::to_string(key.k), key.entity, key.cls, n(v)});
        w.write_file(path("demand_gas.csv"));
    }
    {
        CsvWriter w({"rp", "k", "node", "class", "value"});
        for (const auto& [key, v] : demand_h2)
            w.add_row({std::to_string(key.rp), std::to_string(key.k), key.entity, key.cls, n(v)});
        w.write_file(path("demand_h2.csv"));
    }
    if (!availability.empty()) {
        CsvWriter w({"rp", "k", "unit", "factor"});
        for (const auto& [key, v] : availability)
            w.add_row({std::to_string(key.rp), std::to_string(key.k), key.entity, n(v)});
        w.write_file(path("availability.csv"));
    }
}

std::vector<AttachmentIssue> validate_attachments(const EnergySystem& sys) {
    std::vector<AttachmentIssue> issues;
    auto flag = [&](const Unit& u, const std::string& msg) { issues.push_back({u.id, msg}); };
    for (const auto& u : sys.units) {
        bool needs_bus = false, needs_node = false;
        switch (u.kind) {
            case UnitKind::ThermalOther:
            case UnitKind::Renewable:
            case UnitKind::Bess:
                needs_bus = true;
                break;
            case UnitKind::GasWell:
            case UnitKind::NgStorage:
            case UnitKind::SmrCcs:
            case UnitKind::H2Tank:
            case UnitKind::H2Cavern:
                needs_node = true;
                break;
            case UnitKind::ThermalGas:
            case UnitKind::Electrolyzer:
            case UnitKind::FuelCell:
                // couple the power and gas sectors
                needs_bus = true;
                needs_node = true;
                break;
        }
        if (needs_bus && u.bus.empty()) flag(u, "missing bus attachment");
        if (!needs_bus && !u.bus.empty()) flag(u, "unexpected bus attachment");
        if (needs_node && u.node.empty()) flag(u, "missing gas node attachment");
        if (!needs_node && !u.node.empty()) flag(u, "unexpected gas node attachment");
        if (!u.bus.empty() && !sys.has_bus(u.bus)) flag(u, "dangling bus '" + u.bus + "'");
        if (!u.node.empty() && !sys.has_node(u.node)) flag(u, "dangling node '" + u.node + "'");
    }
    return issues;
}

}  // namespace gasplan
