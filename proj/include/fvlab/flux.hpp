#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fvlab/grid.hpp"

namespace fvlab {

/// Flux function A with derivative A' and an a-priori solution bound L.
///
/// stationary_points lists the roots of A' inside [-L, L] in ascending
/// order; together with interval endpoints they locate every extremum of A
/// on a subinterval, which is what the Godunov and Engquist-Osher fluxes
/// need.
struct FluxSpec {
    std::string name;
    std::function<double(double)> A;
    std::function<double(double)> A_prime;
    double L = 0.0;
    std::vector<double> stationary_points;

    double max_wave_speed(double lo, double hi) const;
};

/// Convex entropy with matching flux, q' = A' eta'.
/// eta_prime carries the one-sided convention at kinks (sgn(0) = 0).
struct EntropyPair {
    std::function<double(double)> eta;
    std::function<double(double)> eta_prime;
    std::function<double(double)> q;
};

/// Signed indicator of the interval between 0 and v, evaluated at xi.
/// Returns 1 if 0 <= xi <= v, -1 if v <= xi <= 0 with v < 0, else 0.
double chi(double v, double xi);

double sgn(double x);

/// Kruzkov pair eta(u) = |u - k|, q(u) = sgn(u - k) (A(u) - A(k)).
/// Requires |k| <= flux.L.
EntropyPair kruzkov_pair(double k, const FluxSpec& flux);

/// Uniform grid of k-values spanning [-L, L], endpoints included.
std::vector<double> kruzkov_k_grid(double L, int count);

/// Quadratic flux A(u) = u^2/2 with bound L.
FluxSpec dp_flux_spec(double L);

/// Linear flux A(u) = u (unit-speed advection) with bound L.
FluxSpec linear_flux_spec(double L);

/// Largest stable explicit step: dt <= cfl*dx/max|A'| over the field's value
/// range, and dt <= cfl*dx^2/(2 eps) when eps > 0. Degenerate wave speed with
/// eps = 0 falls back to dt_max; the dt_max cap always applies.
double cfl_dt(const CellField& field, const FluxSpec& flux, double cfl, double eps,
              double dt_max = 0.1);

/// Same bound computed from an explicit value range [lo, hi].
double cfl_dt_range(double lo, double hi, double dx, const FluxSpec& flux, double cfl,
                    double eps, double dt_max = 0.1);

} // namespace fvlab
