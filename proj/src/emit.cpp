#include "gasplan/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gasplan {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool finite(double v) { return std::isfinite(v); }

void emit_lp(const ModelInstance& m, std::ostream& out) {
    out << "\\ generated by gasplan\n";
    out << "Minimize\n obj:";
    bool any = false;
    int on_line = 0;
    for (const auto& [var, coef] : m.objective()) {
        if (++on_line > 8) {
            out << "\n   ";
            on_line = 1;
        }
        out << (coef >= 0 ? " + " : " - ") << num(std::fabs(coef)) << " "
            << m.variable(var).name;
        any = true;
    }
    if (m.objective_constant() != 0.0) {
        double c = m.objective_constant();
        out << (c >= 0 ? " + " : " - ") << num(std::fabs(c));
        any = true;
    }
    if (!any && !m.variables().empty()) out << " 0 " << m.variable(0).name;
    out << "\nSubject To\n";
    for (const auto& c : m.constraints()) {
        out << " " << c.name << ":";
        if (c.terms.empty() && !m.variables().empty())
            out << " 0 " << m.variable(0).name;
        for (const auto& t : c.terms)
            out << (t.coef >= 0 ? " + " : " - ") << num(std::fabs(t.coef)) << " "
                << m.variable(t.var).name;
        switch (c.sense) {
            case Sense::LE: out << " <= "; break;
            case Sense::EQ: out << " = "; break;
            case Sense::GE: out << " >= "; break;
        }
        out << num(c.rhs) << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : m.variables()) {
        if (v.kind == VarKind::Binary) continue;  // implied 0/1
        if (!finite(v.lb) && !finite(v.ub)) {
            out << " " << v.name << " free\n";
        } else if (v.lb == v.ub) {
            out << " " << v.name << " = " << num(v.lb) << "\n";
        } else if (!finite(v.lb)) {
            out << " -infinity <= " << v.name << " <= " << num(v.ub) << "\n";
        } else if (!finite(v.ub)) {
            out << " " << v.name << " >= " << num(v.lb) << "\n";
        } else {
            out << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
        }
    }
    bool have_general = false, have_binary = false;
    for (const auto& v : m.variables()) {
        have_general |= v.kind == VarKind::Integer;
        have_binary |= v.kind == VarKind::Binary;
    }
    if (have_general) {
        out << "Generals\n";
        for (const auto& v : m.variables())
            if (v.kind == VarKind::Integer) out << " " << v.name << "\n";
    }
    if (have_binary) {
        out << "Binaries\n";
        for (const auto& v : m.variables())
            if (v.kind == VarKind::Binary) out << " " << v.name << "\n";
    }
    out << "End\n";
}

// field writers for the fixed layout (positions 2, 5, 15, 25, 40, 50)
void fixed_fields(std::ostream& out, const std::string& f1, const std::string& f2,
                  const std::string& f3 = "", const std::string& f4 = "",
                  const std::string& f5 = "", const std::string& f6 = "") {
    std::string line = " ";
    auto place = [&](std::size_t col, const std::string& s) {
        if (s.empty()) return;
        if (line.size() + 1 < col) line.resize(col - 1, ' ');
        else if (!line.empty() && line.back() != ' ') line += ' ';
        line += s;
    };
    place(2, f1);
    place(5, f2);
    place(15, f3);
    place(25, f4);
    place(40, f5);
    place(50, f6);
    out << line << "\n";
}

void emit_mps(const ModelInstance& m, std::ostream& out, bool fixed) {
    auto fields = [&](const std::string& f1, const std::string& f2, const std::string& f3 = "",
                      const std::string& f4 = "", const std::string& f5 = "",
                      const std::string& f6 = "") {
        if (fixed) {
            fixed_fields(out, f1, f2, f3, f4, f5, f6);
        } else {
            out << " " << f1;
            for (const std::string* s : {&f2, &f3, &f4, &f5, &f6})
                if (!s->empty()) out << " " << *s;
            out << "\n";
        }
    };

    out << "NAME gasplan\n";
    out << "ROWS\n";
    fields("N", "OBJ");
    for (const auto& c : m.constraints()) {
        const char* s = c.sense == Sense::LE ? "L" : c.sense == Sense::EQ ? "E" : "G";
        fields(s, c.name);
    }

    // column-major coefficient lists
    std::vector<std::vector<std::pair<const std::string*, double>>> cols(m.variable_count());
    for (const auto& [var, coef] : m.objective()) {
        static const std::string kObj = "OBJ";
        cols[static_cast<std::size_t>(var)].push_back({&kObj, coef});
    }
    for (const auto& c : m.constraints())
        for (const auto& t : c.terms)
            cols[static_cast<std::size_t>(t.var)].push_back({&c.name, t.coef});

    out << "COLUMNS\n";
    bool in_integer = false;
    int marker = 0;
    for (std::size_t i = 0; i < m.variable_count(); ++i) {
        const Variable& v = m.variables()[i];
        bool is_int = v.kind != VarKind::Continuous;
        if (is_int && !in_integer) {
            fields("", "MARKER" + std::to_string(marker++), "'MARKER'", "'INTORG'");
            in_integer = true;
        } else if (!is_int && in_integer) {
            fields("", "MARKER" + std::to_string(marker++), "'MARKER'", "'INTEND'");
            in_integer = false;
        }
        const auto& entries = cols[i];
        for (std::size_t e = 0; e < entries.size(); e += 2) {
            if (e + 1 < entries.size())
                fields("", v.name, *entries[e].first, num(entries[e].second),
                       *entries[e + 1].first, num(entries[e + 1].second));
            else
                fields("", v.name, *entries[e].first, num(entries[e].second));
        }
        if (entries.empty()) {
            // keep the column declared so the solver knows the variable
            fields("", v.name, "OBJ", "0");
        }
    }
    if (in_integer) fields("", "MARKER" + std::to_string(marker++), "'MARKER'", "'INTEND'");

    out << "RHS\n";
    if (m.objective_constant() != 0.0)
        fields("", "RHS", "OBJ", num(-m.objective_constant()));
    for (const auto& c : m.constraints())
        if (c.rhs != 0.0) fields("", "RHS", c.name, num(c.rhs));

    out << "BOUNDS\n";
    for (const auto& v : m.variables()) {
        if (v.kind == VarKind::Binary) {
            fields("BV", "BND", v.name);
            continue;
        }
        if (finite(v.lb) && v.lb == v.ub) {
            fields("FX", "BND", v.name, num(v.lb));
            continue;
        }
        if (!finite(v.lb) && !finite(v.ub)) {
            fields("FR", "BND", v.name);
            continue;
        }
        if (finite(v.lb)) fields("LO", "BND", v.name, num(v.lb));
        else fields("MI", "BND", v.name);
        if (finite(v.ub)) fields("UP", "BND", v.name, num(v.ub));
    }
    out << "ENDATA\n";
}

}  // namespace

std::string emit_to_string(const ModelInstance& model, FileFormat format) {
    std::ostringstream out;
    switch (format) {
        case FileFormat::LP: emit_lp(model, out); break;
        case FileFormat::MpsFree: emit_mps(model, out, false); break;
        case FileFormat::MpsFixed: emit_mps(model, out, true); break;
    }
    return out.str();
}

void emit_to_file(const ModelInstance& model, FileFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EmissionError("cannot write " + path);
    out << emit_to_string(model, format);
}

}  // namespace gasplan
