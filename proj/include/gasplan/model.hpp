#pragma once

#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gasplan/errors.hpp"

namespace gasplan {

enum class VarKind { Continuous, Binary, Integer };
enum class Sense { LE, EQ, GE };

using VarId = int;

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = 0.0;
};

struct LinTerm {
    VarId var = -1;
    double coef = 0.0;
};

struct Constraint {
    std::string name;
    Sense sense = Sense::LE;
    std::vector<LinTerm> terms;
    double rhs = 0.0;
};

// Solver-agnostic optimization model. Variable and constraint names are
// unique and the declaration order is deterministic for identical inputs, so
// emitted files diff cleanly across runs.
class ModelInstance {
  public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    VarId add_variable(const std::string& name, VarKind kind, double lb, double ub);
    void add_constraint(const std::string& name, Sense sense, std::vector<LinTerm> terms,
                        double rhs);

    // Objective is always a minimization; coefficients accumulate.
    void add_objective(VarId var, double coef);
    void add_objective_constant(double c) { objective_constant_ += c; }

    void set_bounds(VarId var, double lb, double ub);
    void fix(VarId var, double value) { set_bounds(var, value, value); }

    VarId find_variable(const std::string& name) const;  // -1 when absent
    const Variable& variable(VarId id) const { return variables_[static_cast<std::size_t>(id)]; }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::map<VarId, double>& objective() const { return objective_; }
    double objective_constant() const { return objective_constant_; }

    std::size_t variable_count() const { return variables_.size(); }
    std::size_t discrete_count() const;
    std::size_t constraint_count() const { return constraints_.size(); }

    // Evaluates a linear expression at a point given by variable values.
    double evaluate(const std::vector<LinTerm>& terms,
                    const std::unordered_map<std::string, double>& values) const;

  private:
    std::vector<Variable> variables_;
    std::vector<Constraint> constraints_;
    std::unordered_map<std::string, VarId> index_;
    std::unordered_map<std::string, int> constraint_names_;
    std::map<VarId, double> objective_;
    double objective_constant_ = 0.0;
};

enum class SolveStatus { Optimal, GapReached, Infeasible, Unbounded, Error };

const char* to_string(SolveStatus s);

struct Solution {
    SolveStatus status = SolveStatus::Error;
    double objective = 0.0;
    double gap = 0.0;
    double wall_time_s = 0.0;
    std::unordered_map<std::string, double> values;

    bool feasible() const {
        return status == SolveStatus::Optimal || status == SolveStatus::GapReached;
    }
    double value(const std::string& name) const;
    double value_or(const std::string& name, double fallback) const;
};

// Deterministic variable/constraint naming: family__rp__k__entity with fixed
// zero-padded indices (rp 2 digits, k 3 digits, chronological period 6).
std::string pad2(int v);
std::string pad3(int v);
std::string pad6(int v);
std::string vname(const std::string& family, int rp, int k, const std::string& entity);
std::string vname_rp(const std::string& family, int rp, const std::string& entity);
std::string vname_p(const std::string& family, int p, const std::string& entity);
std::string vname_x(const std::string& family, const std::string& entity);

}  // namespace gasplan
