#pragma once

#include <string>
#include <vector>

#include "fvlab/dp.hpp"
#include "fvlab/hyperbolic.hpp"

namespace fvlab {

enum class Side { left, right };
std::string side_name(Side s);

/// Boundary-layer averages of u at decreasing offsets from one endpoint.
/// layer_series[j] is the time series of the layer at offset layer_offsets[j];
/// the trace estimate is the finest (last) layer's series.
struct TraceEstimate {
    Side side = Side::left;
    double dx = 0.0;
    std::vector<double> times;
    std::vector<double> layer_offsets;               // strictly decreasing, each >= dx
    std::vector<std::vector<double>> layer_series;   // [layer][time]
    std::vector<double> cauchy_defects;              // L1-in-time gap of consecutive layers

    const std::vector<double>& trace_series() const { return layer_series.back(); }
};

struct CheckLocation {
    double t = 0.0;
    double x = 0.0;
    double k = 0.0;
    std::string what;  // which of t/x/k are meaningful
};

/// Outcome of one inequality check: passed iff worst_violation >= -tolerance.
struct InequalityReport {
    std::string name;
    double worst_violation = 0.0;  // most negative margin seen
    CheckLocation location;
    double tolerance = 0.0;
    bool passed = false;

    std::string to_json() const;
};

std::string reports_to_json(const std::vector<InequalityReport>& reports);

struct EnergyReport {
    std::vector<double> times;
    std::vector<double> v_l2;      // ||u - omega||_L2 per snapshot
    std::vector<double> theta_h2;  // weighted H2 norm of the screened potential
    double alpha_beta_fit = 0.0;   // smallest C0 closing the Gronwall bound
    bool fit_bounded = false;      // false when the bisection bracket fails
    bool norm_equiv_ok = false;    // theta_h2 <= v_l2 <= 4 theta_h2 held throughout
    double worst_equiv_margin = 0.0;
};

/// Layer-averaged boundary series at geometrically shrinking offsets.
/// Layer j averages u over cells [c_j, 2 c_j) from the boundary, c_j >= 1.
TraceEstimate extract_trace(const Trajectory& traj, Side side, int n_layers);

/// Cellwise Kruzkov entropy production rate of a densely recorded run:
/// mu = -[ Dt|u-k| + Dx Q - sgn(u_new - k) S ] per cell, per k. Nonnegative
/// for the monotone schemes. For coupled runs the per-snapshot -Px joins the
/// supplied source. mass_rate_per_step tracks sum_i mu_i dx for k_grid[0].
/// Boundary cells are checked when bc is supplied, else skipped.
struct ProductionResult {
    InequalityReport report;
    std::vector<double> mass_rate_per_step;
};
ProductionResult kruzkov_production(const Trajectory& traj, const std::vector<double>& k_grid,
                                    const SourceSpec& source, const FluxSpec& flux,
                                    const BoundarySignals* bc = nullptr,
                                    double tolerance = -1.0);

/// Per-cell production rate of one step for one k.
std::vector<double> kruzkov_production_field(const Trajectory& traj, size_t step, double k,
                                             const SourceSpec& source, const FluxSpec& flux,
                                             const BoundarySignals& bc);

/// Boundary entropy residual against the Kruzkov family:
/// [q(u_tau) - q(g) - eta'(g)(A(u_tau) - A(g))] * n_hat >= 0.
/// Samples inside the startup window s_max / max|A'| are not graded: there
/// the layers still read the initial data rather than the boundary trace.
InequalityReport boundary_entropy_residual(const TraceEstimate& trace, const BoundarySignals& bc,
                                           const FluxSpec& flux, const std::vector<double>& k_grid,
                                           double tolerance = -1.0);

/// Same residual for explicit entropy pairs.
InequalityReport boundary_entropy_residual(const TraceEstimate& trace, const BoundarySignals& bc,
                                           const FluxSpec& flux,
                                           const std::vector<EntropyPair>& entropies,
                                           double tolerance = -1.0);

/// Sup-norm growth bound: ||u(t)|| <= max(||u0||, sup|g|) + sup|S| t.
/// For coupled runs the measured sup||Px|| stands in for sup|S|.
InequalityReport max_principle_check(const Trajectory& traj, const BoundarySignals& bc,
                                     const SourceSpec& source);

/// L1 distance growth of two runs on the same grid/bc/flux:
/// d(t) <= exp(2 C t) d(0) + slack_coef * dx * t.
InequalityReport l1_stability(const Trajectory& a, const Trajectory& b, double lipschitz_C,
                              double slack_coef = 10.0);

/// Measured Lipschitz constant of the nonlocal source map u -> -Px between
/// two coupled runs (L1 -> L1 ratio over snapshots).
double measure_dp_source_lipschitz(const Trajectory& a, const Trajectory& b);

/// Energy ledger: v = u - omega, screened potential -theta'' + 4 theta = v
/// with homogeneous Dirichlet ends, weighted norm
/// ||f||^2 = 4||f||^2 + 5||f'||^2 + ||f''||^2, and the smallest C0 making
/// ||v(t)||^2 <= 4||v(0)||^2 e^{2 a(t)} + 8 e^{2 a(t)} int e^{-2 a} b ds hold.
EnergyReport dp_energy(const Trajectory& traj, const BoundarySignals& bc);

/// Norm-equivalence slice of the energy report as a pass/fail check.
InequalityReport dp_energy_equivalence_report(const EnergyReport& er, double dx);

/// Kernel-bound chain on every snapshot's elliptic solve:
/// ||P|| <= ||G|| ||f||_1 + ||Omega||, ||Px|| <= ||Gx|| ||f||_1 + ||Omega'||,
/// ||Pxx|| <= ||P|| + ||(3/2)u^2||.
InequalityReport p_bounds_check(const Trajectory& traj);

/// Dirichlet oracle for -theta'' + 4 theta = v, theta(0)=theta(1)=0.
std::vector<double> solve_theta(const CellField& v);

double default_entropy_tolerance(double dx, const FluxSpec& flux);

} // namespace fvlab
