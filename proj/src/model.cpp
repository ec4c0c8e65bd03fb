#include "gasplan/model.hpp"

#include <cstdio>

namespace gasplan {

VarId ModelInstance::add_variable(const std::string& name, VarKind kind, double lb, double ub) {
    if (index_.count(name)) throw EmissionError("duplicate variable name '" + name + "'");
    if (lb > ub) throw EmissionError("variable '" + name + "': lb > ub");
    VarId id = static_cast<VarId>(variables_.size());
    variables_.push_back({name, kind, lb, ub});
    index_.emplace(name, id);
    return id;
}

void ModelInstance::add_constraint(const std::string& name, Sense sense,
                                   std::vector<LinTerm> terms, double rhs) {
    if (!constraint_names_.emplace(name, 1).second)
        throw EmissionError("duplicate constraint name '" + name + "'");
    // Merge repeated variables so emitted files carry one coefficient each.
    std::map<VarId, double> merged;
    for (const auto& t : terms) {
        if (t.var < 0 || t.var >= static_cast<VarId>(variables_.size()))
            throw EmissionError("constraint '" + name + "' references undeclared variable");
        merged[t.var] += t.coef;
    }
    Constraint c;
    c.name = name;
    c.sense = sense;
    c.rhs = rhs;
    c.terms.reserve(merged.size());
    for (const auto& [var, coef] : merged)
        if (coef != 0.0) c.terms.push_back({var, coef});
    constraints_.push_back(std::move(c));
}

void ModelInstance::add_objective(VarId var, double coef) {
    if (var < 0 || var >= static_cast<VarId>(variables_.size()))
        throw EmissionError("objective references undeclared variable");
    if (coef != 0.0) objective_[var] += coef;
}

void ModelInstance::set_bounds(VarId var, double lb, double ub) {
    if (lb > ub) throw EmissionError("set_bounds: lb > ub");
    auto& v = variables_[static_cast<std::size_t>(var)];
    v.lb = lb;
    v.ub = ub;
}

VarId ModelInstance::find_variable(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::size_t ModelInstance::discrete_count() const {
    std::size_t n = 0;
    for (const auto& v : variables_)
        if (v.kind != VarKind::Continuous) ++n;
    return n;
}

double ModelInstance::evaluate(const std::vector<LinTerm>& terms,
                               const std::unordered_map<std::string, double>& values) const {
    double s = 0.0;
    for (const auto& t : terms) {
        auto it = values.find(variables_[static_cast<std::size_t>(t.var)].name);
        if (it != values.end()) s += t.coef * it->second;
    }
    return s;
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::GapReached: return "gap_reached";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Error: return "error";
    }
    return "?";
}

double Solution::value(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw ProtocolError("solution has no value for '" + name + "'");
    return it->second;
}

double Solution::value_or(const std::string& name, double fallback) const {
    auto it = values.find(name);
    return it == values.end() ? fallback : it->second;
}

namespace {
std::string pad(int v, int width) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*d", width, v);
    return buf;
}
}  // namespace

std::string pad2(int v) { return pad(v, 2); }
std::string pad3(int v) { return pad(v, 3); }
std::string pad6(int v) { return pad(v, 6); }

std::string vname(const std::string& family, int rp, int k, const std::string& entity) {
    return family + "__" + pad2(rp) + "__" + pad3(k) + "__" + entity;
}
std::string vname_rp(const std::string& family, int rp, const std::string& entity) {
    return family + "__" + pad2(rp) + "__" + entity;
}
std::string vname_p(const std::string& family, int p, const std::string& entity) {
    return family + "__p" + pad6(p) + "__" + entity;
}
std::string vname_x(const std::string& family, const std::string& entity) {
    return family + "__" + entity;
}

}  // namespace gasplan
