#include "gasplan/physics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gasplan {
namespace physics {

namespace {
// Internal flow unit is MSm3/h and pressure unit is bar; the resistance
// formula is evaluated in SI (m3/s, Pa) and converted:
//   F[MSm3/h] = F[m3/s] * 3600/1e6,  p[Pa]^2 = p[bar]^2 * 1e10.
constexpr double kFlowSiToMsm3h = 3600.0 / 1e6;
constexpr double kResistanceSiToModel = kFlowSiToMsm3h * kFlowSiToMsm3h * 1e10;
constexpr double kBarToPa = 1e5;
}  // namespace

double reynolds(double diameter_m, const GasConstants& gc) {
    if (diameter_m <= 0) throw std::domain_error("reynolds: diameter must be positive");
    if (gc.v_m <= 0 || gc.rho_m <= 0 || gc.eta_m <= 0)
        throw std::domain_error("reynolds: gas constants must be positive");
    return diameter_m * gc.v_m * gc.rho_m / (gc.eta_m * 1e-6);
}

double chen_friction(double reynolds, double roughness_mm, double diameter_m) {
    if (diameter_m <= 0) throw std::domain_error("chen_friction: diameter must be positive");
    if (roughness_mm < 0) throw std::domain_error("chen_friction: negative roughness");
    if (reynolds <= 4000)
        throw std::domain_error("chen_friction: Re=" + std::to_string(reynolds) +
                                " outside the turbulent regime");
    double rel = (roughness_mm * 1e-3) / diameter_m;
    double inner = std::pow(rel, 1.1098) / 2.8257 + 5.8506 / std::pow(reynolds, 0.8981);
    double bracket = rel / 3.7065 - 5.0425 / reynolds * std::log10(inner);
    double inv_sqrt = -2.0 * std::log10(bracket);
    return 1.0 / (inv_sqrt * inv_sqrt);
}

double pipeline_resistance(const Pipeline& pipe, const GasConstants& gc) {
    if (pipe.length_m <= 0 || pipe.diameter_m <= 0)
        throw std::domain_error("pipeline_resistance: geometry must be positive for " +
                                pipe.key());
    double re = reynolds(pipe.diameter_m, gc);
    double lambda = chen_friction(re, pipe.roughness_mm, pipe.diameter_m);
    double d5_over_l = std::pow(pipe.diameter_m, 5) / pipe.length_m;
    double r_si = (1.0 / lambda) * d5_over_l * (std::numbers::pi * std::numbers::pi / 16.0) *
                  (gc.t_n / gc.t_m) * (1.0 / (gc.p_n * kBarToPa)) * (1.0 / gc.rho_n) *
                  (1.0 / gc.k_m);
    return r_si * kResistanceSiToModel * gc.r_scale;
}

double calibrate_resistance_scale(const Pipeline& ref, const GasConstants& gc, double target_r) {
    GasConstants unscaled = gc;
    unscaled.r_scale = 1.0;
    double raw = pipeline_resistance(ref, unscaled);
    if (raw <= 0 || target_r <= 0)
        throw std::domain_error("calibrate_resistance_scale: non-positive resistance");
    return target_r / raw;
}

double max_capacity(double r_gas, const GasNode& from, const GasNode& to) {
    double head = from.p_max_sqr - to.p_min_sqr;
    if (head < 0)
        throw std::domain_error("max_capacity: no feasible flow from " + from.id + " to " +
                                to.id);
    return std::sqrt(head * r_gas);
}

BreakpointTable build_breakpoints(double f_max, int n_segments) {
    if (n_segments < 2) throw std::domain_error("build_breakpoints: need at least 2 segments");
    if (f_max <= 0) throw std::domain_error("build_breakpoints: f_max must be positive");
    BreakpointTable t;
    t.flow.reserve(static_cast<std::size_t>(n_segments) + 1);
    t.squared.reserve(static_cast<std::size_t>(n_segments) + 1);
    for (int i = 0; i <= n_segments; ++i) {
        // (2i-n)/n keeps the grid exactly odd-symmetric in floating point.
        double f = f_max * (2.0 * i - n_segments) / n_segments;
        t.flow.push_back(f);
        t.squared.push_back(f * std::fabs(f));
    }
    return t;
}

double BreakpointTable::max_chord_error() const {
    // Piecewise error of the chord against f*|f|. Within one sign the error
    // is quadratic with its extremum at the segment midpoint, (b-a)^2/4. On
    // a zero-crossing segment each half is checked at its own vertex.
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < flow.size(); ++i) {
        double a = flow[i], b = flow[i + 1];
        double fa = squared[i], fb = squared[i + 1];
        double slope = (fb - fa) / (b - a);
        auto chord = [&](double x) { return fa + slope * (x - a); };
        auto consider = [&](double x) {
            if (x < a || x > b) return;
            double e = std::fabs(chord(x) - x * std::fabs(x));
            if (e > worst) worst = e;
        };
        // Vertex of chord(x) - x^2 on the positive side: x = slope/2.
        consider(slope / 2.0);
        // Vertex of chord(x) + x^2 on the negative side: x = -slope/2.
        consider(-slope / 2.0);
    }
    return worst;
}

}  // namespace physics
}  // namespace gasplan
