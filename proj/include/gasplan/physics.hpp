#pragma once

#include <vector>

#include "gasplan/system.hpp"

namespace gasplan {
namespace physics {

// Re = D * v_m * rho_m / eta_m (viscosity stored in 1e-6 kg/(m s)).
double reynolds(double diameter_m, const GasConstants& gc);

// Explicit Chen approximation of the turbulent friction factor.
// Throws std::domain_error outside the turbulent regime (Re <= 4000).
double chen_friction(double reynolds, double roughness_mm, double diameter_m);

// Pipeline factor R in (MSm3/h)^2 / bar^2 such that
// f_max = sqrt((p_max_m^2 - p_min_n^2) * R), including the calibration scale.
double pipeline_resistance(const Pipeline& pipe, const GasConstants& gc);

// Scale that makes pipeline_resistance(ref) equal target_r when stored in
// GasConstants::r_scale.
double calibrate_resistance_scale(const Pipeline& ref, const GasConstants& gc, double target_r);

// f_max = sqrt((p_max_sqr(from) - p_min_sqr(to)) * r_gas).
// Throws std::domain_error when no pressure headroom exists.
double max_capacity(double r_gas, const GasNode& from, const GasNode& to);

// Uniform breakpoints of f*|f| on [-f_max, f_max]; n segments, n+1 points.
struct BreakpointTable {
    std::vector<double> flow;     // F_inc, strictly increasing
    std::vector<double> squared;  // F'_inc = F_inc * |F_inc|

    int segments() const { return static_cast<int>(flow.size()) - 1; }
    // Largest deviation of the chordal interpolant from f*|f| over all
    // segments. On a one-signed segment [a,b] this is (b-a)^2/4.
    double max_chord_error() const;
};

BreakpointTable build_breakpoints(double f_max, int n_segments);

}  // namespace physics
}  // namespace gasplan
