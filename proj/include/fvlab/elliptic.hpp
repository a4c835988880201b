#pragma once

#include "fvlab/grid.hpp"

namespace fvlab {

/// Solution of -P'' + P = f on (0,1) with Neumann data P'(0)=psi0, P'(1)=psi1.
/// Pxx is recovered algebraically as P - f, so the operator relation holds
/// exactly; stencil_residual reports the central-difference residual instead.
struct EllipticSolution {
    CellField P;
    CellField Px;
    CellField Pxx;
    double psi0 = 0.0;
    double psi1 = 0.0;
    double stencil_residual = 0.0;
};

/// Green kernel of 1 - d^2/dx^2 on (0,1) with homogeneous Neumann ends:
/// G(x,y) = cosh(min) cosh(1-max) / sinh(1). Gx is its x-derivative; at the
/// diagonal the x<y branch value is returned (Gx jumps across x=y).
struct GreenPoint {
    double G;
    double Gx;
};
GreenPoint green_eval(double x, double y);

/// Dense midpoint-quadrature discretization of the Green kernel on a fixed
/// grid. Rows are shared read-only; build once per grid and reuse.
class GreenOperator {
  public:
    explicit GreenOperator(Grid1D grid);

    EllipticSolution solve(const CellField& f, double psi0, double psi1) const;

    const Grid1D& grid() const { return grid_; }
    /// max_j sum_i |K_ij| dx for the two kernels (used by the bound checks).
    double kernel_sup_G() const { return sup_G_; }
    double kernel_sup_Gx() const { return sup_Gx_; }

  private:
    Grid1D grid_;
    std::vector<double> G_;   // row-major n x n, includes dx weight
    std::vector<double> Gx_;  // diagonal holds the mean of the one-sided limits
    double sup_G_ = 0.0;
    double sup_Gx_ = 0.0;
};

EllipticSolution solve_neumann_green(const CellField& f, double psi0, double psi1);

/// Independent oracle: second-order central differences with ghost cells
/// encoding the Neumann data, tridiagonal (Thomas) solve.
EllipticSolution solve_neumann_fd(const CellField& f, double psi0, double psi1);

/// Shift function carrying inhomogeneous Neumann data:
/// Omega(x) = x^2/2 psi1 + (2x - x^2)/2 psi0.
double omega_shift(double x, double psi0, double psi1);
double omega_shift_prime(double x, double psi0, double psi1);

} // namespace fvlab
