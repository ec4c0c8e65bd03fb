#pragma once

#include <array>
#include <string>
#include <vector>

#include "gasplan/model.hpp"
#include "gasplan/physics.hpp"
#include "gasplan/system.hpp"
#include "gasplan/temporal.hpp"

namespace gasplan {

// Objective terms, one per cost element of the total-system-cost objective.
enum class CostTerm : int {
    GasSupply = 0,       // (i)   natural gas supplied by wells
    GasThermalOm,        // (ii)  OM of gas-fired thermal units
    ThermalUc,           // (iii) startup/commitment/generation of other thermals
    RenewableOm,         // (iv)
    StorageOm,           // (v)   power-sector storage OM
    Ens,                 // (vi)  electricity non-supplied
    GasH2Ns,             // (vii) hydrogen + natural gas non-supplied
    Co2ThermalOther,     // (viii)
    Co2ThermalGas,       // (ix)
    Co2Industry,         // (x)   CO2 priced on sectoral gas demand
    InvestGen,           // (xi)
    InvestLine,          // (xii)
    InvestH2,            // (xiii)
    OmH2,                // (xiv)
    InvestNg,            // (xv)
    OmNg,                // (xvi)
    InvestPipe,          // (xvii)
    Other,               // (xviii) extension hook, contributes zero
};
constexpr int kCostTermCount = 18;
const char* cost_term_label(CostTerm t);

// Records which variables feed which objective term so a solved point can be
// broken down into the individual cost elements.
class CostLedger {
  public:
    void add(ModelInstance& model, CostTerm term, VarId var, double coef);
    void add_constant(ModelInstance& model, CostTerm term, double value);
    double term_value(CostTerm term, const ModelInstance& model, const Solution& sol) const;
    std::array<double, kCostTermCount> evaluate(const ModelInstance& model,
                                                const Solution& sol) const;

  private:
    std::array<std::vector<LinTerm>, kCostTermCount> terms_;
    std::array<double, kCostTermCount> constants_{};
};

struct BuildContext {
    const EnergySystem& sys;
    const TemporalStructure& ts;
    const ScenarioConfig& cfg;
    ModelInstance& model;
    CostLedger& costs;
    double big_m = 0.0;

    bool inter_soc_active() const;  // long-term storage uses the moving window
    double blend_max() const { return cfg.blend_max; }
};

struct BuiltModel {
    ModelInstance model;
    CostLedger costs;
    double big_m = 0.0;
};

// Assembles the full expansion-planning model for the configured gas-flow
// formulation. Deterministic: identical inputs give identical models.
BuiltModel build_model(const EnergySystem& sys, const TemporalStructure& ts,
                       const ScenarioConfig& cfg);

// Pins every investment variable to its value in a planning solution
// (operational re-solve with fixed investments). Throws ProtocolError when
// the plan lacks one of them.
void fix_investments(ModelInstance& model, const EnergySystem& sys,
                     const std::unordered_map<std::string, double>& plan_values);

// Individual builder stages; exposed for tests. All expect that
// declare_variables ran first on the same context.
void declare_variables(BuildContext& ctx);
void add_power_lite(BuildContext& ctx);
void add_gas_wells(BuildContext& ctx);
void add_demand_blending(BuildContext& ctx);
void add_gas_thermals(BuildContext& ctx);
void add_policy(BuildContext& ctx);
void add_electrolyzers(BuildContext& ctx);
void add_smr(BuildContext& ctx);
void add_storage(BuildContext& ctx);  // hydrogen + natural-gas storage, intra/inter
void add_fuel_cells(BuildContext& ctx);
void add_gas_network(BuildContext& ctx);
void add_compressors(BuildContext& ctx);
void add_balances(BuildContext& ctx);
void add_objective(BuildContext& ctx);

// Storage SOC family and commodity variable names for a unit.
const char* soc_intra_family(const Unit& u);
const char* soc_inter_family(const Unit& u);
const char* production_family(const Unit& u);   // pH2 / pCH4 / pE by kind
const char* consumption_family(const Unit& u);  // csH2 / csCH4 / csE by kind

// Effective big-M for the gas network (10 x largest pipeline capacity unless
// configured).
double effective_big_m(const EnergySystem& sys, const ScenarioConfig& cfg);

}  // namespace gasplan
