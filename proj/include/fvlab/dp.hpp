#pragma once

#include <functional>

#include "fvlab/hyperbolic.hpp"

namespace fvlab {

enum class EllipticBackend { green, fd };

EllipticBackend parse_elliptic_backend(const std::string& name);
std::string elliptic_backend_name(EllipticBackend b);

/// Configuration of the coupled transport / Helmholtz integration:
/// du/dt + u du/dx + dP/dx = 0, -P'' + P = (3/2) u^2 on (0,1).
struct DPConfig {
    Grid1D grid;
    CellField u0;
    BoundarySignals bc;
    double T = 1.0;
    Scheme scheme = Scheme::godunov;
    double eps = 0.0;
    double cfl = 0.5;
    EllipticBackend elliptic_backend = EllipticBackend::green;
    SourceSpec extra_source;  // manufactured forcing; empty for the plain system
    RunOptions run;           // cadence / step guards; cfl, eps, scheme above win

    void validate() const;  // endpoint compatibility u0(0)=g0(0), u0(1)=g1(0)
};

/// Neumann data for the P-problem: psi0 = -g0' - g0 h0, psi1 = -g1' - g1 h1.
std::pair<double, double> neumann_data(const BoundarySignals& bc, double t);

/// Working bound for the flux: ||u0|| + sup|g| + sup|S_extra| T + 1.
double dp_solution_bound(const DPConfig& config);

/// Solve -P'' + P = (3/2) u^2 with the given Neumann data and return
/// source = -dP/dx together with the full elliptic solution.
std::pair<CellField, EllipticSolution> dp_source(const CellField& u, double psi0, double psi1,
                                                 EllipticBackend backend,
                                                 const GreenOperator* green = nullptr);

/// Integrate the coupled system; P is refreshed from u once per step.
Trajectory dp_run(const DPConfig& config);

/// Extra forcing S_m = du*/dt + u* du*/dx + dP^{u*}/dx so that u_star solves
/// the forced system exactly. P^{u*} uses the same Neumann data recipe as the
/// runner, so the two stay consistent for any bc_star.
/// Throws if bc_star does not match u_star at the endpoints.
SourceSpec manufactured_forcing(const std::function<double(double, double)>& u_star,
                                const BoundarySignals& bc_star, const Grid1D& grid,
                                double T);

} // namespace fvlab
