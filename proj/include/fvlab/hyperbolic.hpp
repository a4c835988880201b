#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fvlab/elliptic.hpp"
#include "fvlab/flux.hpp"
#include "fvlab/grid.hpp"
#include "fvlab/signals.hpp"

namespace fvlab {

enum class Scheme { godunov, engquist_osher, lax_friedrichs };

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme s);
std::vector<std::string> scheme_names();

/// Monotone two-point numerical flux, consistent with A.
double numerical_flux(Scheme scheme, double uL, double uR, const FluxSpec& flux);

/// Advective flux plus the viscous face flux -eps (uR - uL)/dx.
double total_flux(Scheme scheme, double uL, double uR, const FluxSpec& flux, double eps,
                  double dx);

/// Numerical Kruzkov entropy flux for |u - k|, built from the scheme's own
/// total flux: Q = H(uL v k, uR v k) - H(uL ^ k, uR ^ k).
double kruzkov_numerical_flux(Scheme scheme, double uL, double uR, double k,
                              const FluxSpec& flux, double eps, double dx);

enum class SourceCoupling { unsplit, strang };

/// One explicit step log entry. flux_left/right are the total boundary face
/// fluxes (advective plus viscous), source_mass is sum(S_i) dx over cells.
struct StepRecord {
    double t_before = 0.0;
    double dt = 0.0;
    double flux_left = 0.0;
    double flux_right = 0.0;
    double source_mass = 0.0;
};

struct SchemeMeta {
    Scheme scheme = Scheme::godunov;
    double eps = 0.0;
    double cfl = 0.5;
    SourceCoupling coupling = SourceCoupling::unsplit;
};

/// Time-stamped snapshots plus the full per-step flux log. For coupled runs
/// `elliptic` carries one solve per snapshot, aligned by index.
struct Trajectory {
    std::vector<CellField> snapshots;
    std::vector<EllipticSolution> elliptic;
    std::vector<StepRecord> steps;
    SchemeMeta meta;
    Grid1D grid;

    const CellField& initial() const { return snapshots.front(); }
    const CellField& final_state() const { return snapshots.back(); }
    bool has_elliptic() const { return !elliptic.empty(); }
    /// True when consecutive snapshots are exactly one step apart.
    bool densely_recorded() const;
};

struct RunOptions {
    double cfl = 0.5;
    double eps = 0.0;
    Scheme scheme = Scheme::godunov;
    SourceCoupling coupling = SourceCoupling::unsplit;
    double dt_max = 0.1;
    double fixed_dt = 0.0;    // > 0 forces a constant step (stability pairs)
    int record_every = 1;     // snapshot cadence in steps; 0 = endpoints only
    long max_steps = 2000000; // hard abort guard
};

/// Advance one explicit step with Dirichlet ghost data from bc at state.time.
/// The returned field, like the input, holds cell averages; frozen_source is
/// evaluated per cell. Throws on CFL violation or non-finite output.
CellField step_hyperbolic(const CellField& state, const BoundarySignals& bc,
                          const CellField& frozen_source, double dt, const FluxSpec& flux,
                          Scheme scheme, double eps, StepRecord* record = nullptr);

/// Explicit time loop for du/dt + dA(u)/dx = S with Dirichlet-by-flux ends.
Trajectory run_ibvp(const CellField& u0, const BoundarySignals& bc, const SourceSpec& source,
                    const FluxSpec& flux, double T, const RunOptions& opts = {});

/// Indices of the snapshots nearest each requested time.
std::vector<int> select_snapshots(const Trajectory& traj, const std::vector<double>& times);

} // namespace fvlab
