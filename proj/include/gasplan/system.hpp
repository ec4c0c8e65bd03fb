#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gasplan/errors.hpp"
#include "gasplan/temporal.hpp"

namespace gasplan {

// Shared gas characteristics. Internal unit system: MSm3/h for volumetric
// flows, bar for pressures, GW/GWh electric, M EUR for costs, hours for time.
// The default constant bundle is a placeholder; real studies must override it
// (see docs/data_dictionary.md) or calibrate r_scale against a known pipeline.
struct GasConstants {
    double h_ch4 = 10.74;  // lower heating value natural gas (GWh/MSm3)
    double h_h2 = 3.00;    // lower heating value hydrogen (GWh/MSm3)
    double t_n = 273.15;   // standard temperature (K)
    double t_m = 288.15;   // average gas temperature (K)
    double p_n = 1.01325;  // standard pressure (bar)
    double rho_n = 0.784;  // standard density (kg/Sm3)
    double rho_m = 0.75;   // average density (kg/Sm3)
    double eta_m = 11.0;   // average dynamic viscosity (1e-6 kg/(m s))
    double k_m = 0.90;     // average compressibility (-)
    double v_m = 7.5;      // average velocity (m/s)
    double r_scale = 1.0;  // calibration multiplier applied to pipeline resistance
};

struct Bus {
    std::string id;
};

struct GasNode {
    std::string id;
    double p_min_sqr = 0.0;  // bar^2
    double p_max_sqr = 0.0;  // bar^2
};

// Power transmission line, DC approximation.
struct PowerLine {
    std::string from_bus, to_bus, circuit;
    double susceptance = 0.0;   // GW/rad
    double f_max = 0.0;         // GW
    bool existing = true;
    double invest_cost = 0.0;   // M EUR / y (annualized)
};

struct Pipeline {
    std::string from_node, to_node, circuit;
    double length_m = 0.0;
    double diameter_m = 0.0;
    double roughness_mm = 0.0;
    double r_gas = 0.0;   // (MSm3/h)^2 / bar^2
    double f_max = 0.0;   // MSm3/h
    bool existing = true;
    double invest_cost = 0.0;    // M EUR, total
    double annuity_rate = 0.0;   // fraction
    double lifetime_y = 0.0;     // 0: invest_cost*annuity_rate is the annual cost

    std::string key() const { return from_node + "_" + to_node + "_" + circuit; }
    // Annualized investment cost. With a lifetime the annuity formula
    // a = r / (1 - (1+r)^-n) applies, otherwise the rate is used directly.
    double annual_invest_cost() const;
};

struct Compressor {
    std::string from_node, to_node, circuit;
    double ratio_sqr = 1.0;    // p.u. of squared pressure
    double max_boost = 0.0;    // bar
    double cons_ch4 = 0.0;     // p.u. of throughput
    double cons_h2 = 0.0;      // p.u. of throughput
    double f_max = 0.0;        // MSm3/h

    std::string key() const { return from_node + "_" + to_node + "_" + circuit; }
};

enum class UnitKind {
    GasWell,
    NgStorage,
    ThermalGas,
    ThermalOther,
    Renewable,
    Bess,
    Electrolyzer,
    SmrCcs,
    FuelCell,
    H2Tank,
    H2Cavern,
};

const char* to_string(UnitKind k);
UnitKind unit_kind_from_string(const std::string& s);

bool is_power_unit(UnitKind k);     // invests under the power-generation term
bool is_h2_unit(UnitKind k);        // invests under the hydrogen term
bool is_ng_unit(UnitKind k);        // invests under the natural-gas term
bool is_thermal(UnitKind k);
bool is_storage_short_term(UnitKind k);  // cyclic intra-period state of charge
bool is_storage_long_term(UnitKind k);   // moving-window inter-period state of charge

// One record per unit; fields not applicable to a kind stay at their
// defaults and are rejected by validate_attachments when misused.
struct Unit {
    std::string id;
    UnitKind kind = UnitKind::Renewable;
    std::string bus;    // power-side attachment (gi / h2um electric side)
    std::string node;   // gas-side attachment (gm / h2um / ch4um)

    double p_max = 0.0;   // GW (power kinds) or MSm3/h (gas/H2 kinds)
    double p_min = 0.0;   // GW, thermal minimum stable output
    double cs_max = 0.0;  // MSm3/h, max consumption (storage charge, fuel cell intake)
    double hpe = 0.0;     // MSm3 H2 per GWh electricity (electrolyzer)
    double hpc = 0.0;     // Sm3 H2 per Sm3 CH4 (SMR)
    double eph = 0.0;     // GWh per MSm3 H2 (fuel cell)
    double cs_v = 0.0;    // p.u., generation gas consumption (heat rate)
    double cs_su = 0.0;   // GWh, startup gas consumption
    double cs_up = 0.0;   // GWh/h, commitment gas consumption
    double eta_ch = 1.0;  // p.u.
    double eta_dis = 1.0; // p.u.
    double etp = 0.0;     // h, energy-to-power ratio
    double in_res = 0.0;  // p.u. of energy capacity, initial reserve
    double r_min = 0.0;   // p.u. of energy capacity, minimum state of charge
    double ramp_up = 0.0; // GW/h (0: unconstrained)
    double ramp_dn = 0.0; // GW/h
    double emis = 0.0;    // MtCO2 per MSm3 fuel (gas thermals, SMR) or per printed term (others)
    double c_inv = 0.0;   // M EUR per unit-year
    double c_om = 0.0;    // M EUR/GWh for power kinds, fraction of c_inv/year otherwise
    double c_var = 0.0;   // M EUR/GWh (non-gas thermals)
    double c_su = 0.0;    // M EUR per start
    double c_up = 0.0;    // M EUR per committed hour
    double eu = 0.0;      // existing unit count
    double x_max = 0.0;   // max buildable count
    bool integer_invest = false;

    double energy_capacity_per_unit() const { return p_max * etp; }
};

struct DemandClass {
    std::string id;
    std::string sector;
    double sub_min = 0.0;  // p.u., lower hydrogen substitution bound
    double sub_max = 0.0;  // p.u., upper hydrogen substitution bound
    double emis = 0.0;     // MtCO2 per MSm3 CH4 burned in this class
};

enum class FlowFormulation { STP, BTP, BPP };
const char* to_string(FlowFormulation f);
FlowFormulation formulation_from_string(const std::string& s);

enum class RunMode { Plan, OperateFixed };

enum class LongTermStorageMode { Auto, Intra, Inter };

struct ScenarioConfig {
    FlowFormulation flow_formulation = FlowFormulation::BTP;
    double blend_min = 0.0;       // p.u., lower H2 blending bound (gas thermals)
    double blend_max = 0.10;      // p.u., max volumetric H2 blending rate
    double kappa = 0.0;           // p.u., minimum renewable generation share
    double c_co2 = 0.0;           // M EUR / MtCO2
    double c_ch4 = 0.097;         // M EUR / MSm3
    double c_ens = 10.0;          // M EUR / GWh
    double c_h2ns = 3.0;          // M EUR / MSm3
    double c_ch4ns = 1.0;         // M EUR / MSm3
    int n_increments = 6;         // piecewise segments for the pressure problem
    int mow = 0;                  // 0: one representative-period length
    double milp_gap = 0.01;       // relative
    double big_m = 0.0;           // 0: 10 x largest pipeline capacity
    RunMode mode = RunMode::Plan;
    LongTermStorageMode long_term_storage = LongTermStorageMode::Auto;
    bool smr_co2 = true;          // price SMR emissions through its emission factor
    double theta_max = 1.0;       // rad, voltage-angle box
    double annual_days = 365.0;   // weight-sum targets, scaled instances override
    double annual_hours = 8760.0;
    double time_limit = 600.0;    // s, per solve
    std::string solver;           // command prefix; empty: bundled adapter

    static ScenarioConfig load(const std::string& path);
    void apply_key(const std::string& key, const std::string& value);
    void save(const std::string& path) const;
};

struct DemandKey {
    int rp = 0, k = 0;
    std::string entity;  // bus or node id
    std::string cls;     // demand class (empty for power)
    auto operator<=>(const DemandKey&) const = default;
};

// Fully cross-linked, invariant-checked description of the energy system.
class EnergySystem {
  public:
    GasConstants constants;
    std::vector<Bus> buses;
    std::vector<GasNode> nodes;
    std::vector<PowerLine> lines;
    std::vector<Pipeline> pipelines;
    std::vector<Compressor> compressors;
    std::vector<Unit> units;
    std::vector<DemandClass> classes;

    std::map<DemandKey, double> demand_power;  // GW
    std::map<DemandKey, double> demand_gas;    // MSm3/h, per class
    std::map<DemandKey, double> demand_h2;     // MSm3/h, dedicated, per class
    // Optional per-(rp,k,unit) availability factors (renewables); default 1.
    std::map<DemandKey, double> availability;

    const GasNode& node(const std::string& id) const;
    const Bus& bus(const std::string& id) const;
    const Unit& unit(const std::string& id) const;
    const DemandClass& demand_class(const std::string& id) const;
    bool has_node(const std::string& id) const;
    bool has_bus(const std::string& id) const;

    double availability_factor(int rp, int k, const std::string& unit_id) const;
    double power_demand(int rp, int k, const std::string& bus_id) const;
    double gas_demand(int rp, int k, const std::string& node_id, const std::string& cls) const;
    double h2_demand(int rp, int k, const std::string& node_id, const std::string& cls) const;

    // Distinct (node, class) pairs that appear in the gas or hydrogen demand
    // tables; the blending and non-supplied variables are declared on these.
    std::vector<std::pair<std::string, std::string>> demand_pairs() const;

    double max_pipeline_capacity() const;

    // Loads all tables from a directory, cross-links and checks invariants.
    // Pipeline r_gas / f_max cells may be blank when the physics can fill them.
    static EnergySystem load(const std::string& dir);
    void save(const std::string& dir) const;
};

struct AttachmentIssue {
    std::string unit_id;
    std::string message;
};

// Report-only scan for units with missing, superfluous or dangling bus/node
// attachments given their kind.
std::vector<AttachmentIssue> validate_attachments(const EnergySystem& sys);

}  // namespace gasplan
