#include "fvlab/elliptic.hpp"

#include <cmath>
#include <stdexcept>

namespace fvlab {

namespace {

const double kSinh1 = std::sinh(1.0);

// One-sided x-derivatives of the kernel at (x, y).
double gx_below(double x, double y) { return std::sinh(x) * std::cosh(1.0 - y) / kSinh1; }
double gx_above(double x, double y) { return -std::cosh(y) * std::sinh(1.0 - x) / kSinh1; }

double stencil_residual_max(const CellField& P, const CellField& f, double psi0, double psi1) {
    int n = P.size();
    double dx = P.grid.dx;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double pl = (i > 0) ? P[i - 1] : P[0] - dx * psi0;
        double pr = (i < n - 1) ? P[i + 1] : P[n - 1] + dx * psi1;
        double r = -(pl - 2.0 * P[i] + pr) / (dx * dx) + P[i] - f[i];
        worst = std::max(worst, std::fabs(r));
    }
    return worst;
}

} // namespace

GreenPoint green_eval(double x, double y) {
    if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
        throw std::invalid_argument("green_eval: arguments must lie in [0,1]");
    double lo = std::min(x, y), hi = std::max(x, y);
    GreenPoint out;
    out.G = std::cosh(lo) * std::cosh(1.0 - hi) / kSinh1;
    out.Gx = (x <= y) ? gx_below(x, y) : gx_above(x, y);
    return out;
}

double omega_shift(double x, double psi0, double psi1) {
    return 0.5 * x * x * psi1 + 0.5 * (2.0 * x - x * x) * psi0;
}

double omega_shift_prime(double x, double psi0, double psi1) {
    return x * psi1 + (1.0 - x) * psi0;
}

GreenOperator::GreenOperator(Grid1D grid) : grid_(grid) {
    int n = grid_.n_cells;
    double dx = grid_.dx;
    G_.resize(static_cast<size_t>(n) * n);
    Gx_.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        double x = grid_.cell_center(i);
        for (int j = 0; j < n; ++j) {
            double y = grid_.cell_center(j);
            GreenPoint gp = green_eval(x, y);
            double gx = gp.Gx;
            // Gx jumps by 1 across the diagonal; the midpoint rule stays
            // second order only with the mean of the one-sided limits there.
            if (i == j) gx = 0.5 * (gx_below(x, y) + gx_above(x, y));
            G_[static_cast<size_t>(i) * n + j] = gp.G * dx;
            Gx_[static_cast<size_t>(i) * n + j] = gx * dx;
        }
    }
    // Compatibility correction, O(dx^2) per entry: row sums of the quadrature
    // weights must hit the exact values int G dy = 1 and int Gx dy = 0, or
    // constant states pick up a spurious source and drift.
    for (int i = 0; i < n; ++i) {
        double* grow = G_.data() + static_cast<size_t>(i) * n;
        double* gxrow = Gx_.data() + static_cast<size_t>(i) * n;
        double gsum = 0.0, gxsum = 0.0;
        for (int j = 0; j < n; ++j) {
            gsum += grow[j];
            gxsum += gxrow[j];
        }
        double scale = 1.0 / gsum;
        double shift = gxsum / n;
        for (int j = 0; j < n; ++j) {
            grow[j] *= scale;
            gxrow[j] -= shift;
            sup_G_ = std::max(sup_G_, std::fabs(grow[j]) / dx);
            sup_Gx_ = std::max(sup_Gx_, std::fabs(gxrow[j]) / dx);
        }
    }
}

EllipticSolution GreenOperator::solve(const CellField& f, double psi0, double psi1) const {
    if (f.grid.n_cells != grid_.n_cells)
        throw std::invalid_argument("GreenOperator: field grid does not match operator grid");
    if (!f.all_finite()) throw std::invalid_argument("GreenOperator: non-finite right side");
    int n = grid_.n_cells;
    EllipticSolution out;
    out.psi0 = psi0;
    out.psi1 = psi1;
    out.P = CellField(grid_, 0.0, f.time);
    out.Px = CellField(grid_, 0.0, f.time);
    out.Pxx = CellField(grid_, 0.0, f.time);

    // Homogenized right side: -V'' + V = f + Omega'' - Omega with V' = 0 at
    // both ends, then P = V + Omega. Omega'' = psi1 - psi0 is constant.
    std::vector<double> g(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        g[j] = f[j] + (psi1 - psi0) - omega_shift(grid_.cell_center(j), psi0, psi1);

    for (int i = 0; i < n; ++i) {
        const double* grow = G_.data() + static_cast<size_t>(i) * n;
        const double* gxrow = Gx_.data() + static_cast<size_t>(i) * n;
        double v = 0.0, vx = 0.0;
        for (int j = 0; j < n; ++j) {
            v += grow[j] * g[j];
            vx += gxrow[j] * g[j];
        }
        double x = grid_.cell_center(i);
        out.P[i] = v + omega_shift(x, psi0, psi1);
        out.Px[i] = vx + omega_shift_prime(x, psi0, psi1);
        out.Pxx[i] = out.P[i] - f[i];
    }
    out.stencil_residual = stencil_residual_max(out.P, f, psi0, psi1);
    return out;
}

EllipticSolution solve_neumann_green(const CellField& f, double psi0, double psi1) {
    return GreenOperator(f.grid).solve(f, psi0, psi1);
}

EllipticSolution solve_neumann_fd(const CellField& f, double psi0, double psi1) {
    int n = f.grid.n_cells;
    if (n < 4) throw std::invalid_argument("solve_neumann_fd: need n_cells >= 4");
    if (!f.all_finite()) throw std::invalid_argument("solve_neumann_fd: non-finite right side");
    double dx = f.grid.dx;
    double inv2 = 1.0 / (dx * dx);

    // -(P_{i-1} - 2 P_i + P_{i+1})/dx^2 + P_i = f_i with ghost cells
    // P_{-1} = P_0 - dx psi0, P_n = P_{n-1} + dx psi1.
    std::vector<double> diag(static_cast<size_t>(n), 1.0 + 2.0 * inv2);
    std::vector<double> rhs(f.values);
    diag[0] = 1.0 + inv2;
    diag[static_cast<size_t>(n) - 1] = 1.0 + inv2;
    rhs[0] -= psi0 / dx;
    rhs[static_cast<size_t>(n) - 1] += psi1 / dx;

    // Thomas sweep with constant off-diagonal -1/dx^2.
    std::vector<double> c(static_cast<size_t>(n), 0.0);
    c[0] = -inv2 / diag[0];
    rhs[0] /= diag[0];
    for (int i = 1; i < n; ++i) {
        double m = diag[static_cast<size_t>(i)] + inv2 * c[static_cast<size_t>(i) - 1];
        c[static_cast<size_t>(i)] = -inv2 / m;
        rhs[static_cast<size_t>(i)] =
            (rhs[static_cast<size_t>(i)] + inv2 * rhs[static_cast<size_t>(i) - 1]) / m;
    }
    for (int i = n - 2; i >= 0; --i)
        rhs[static_cast<size_t>(i)] -= c[static_cast<size_t>(i)] * rhs[static_cast<size_t>(i) + 1];

    EllipticSolution out;
    out.psi0 = psi0;
    out.psi1 = psi1;
    out.P = CellField(f.grid, 0.0, f.time);
    out.P.values = rhs;
    if (!out.P.all_finite())
        throw std::runtime_error("solve_neumann_fd: tridiagonal solve produced non-finite values");

    out.Px = CellField(f.grid, 0.0, f.time);
    out.Pxx = CellField(f.grid, 0.0, f.time);
    for (int i = 0; i < n; ++i) {
        double pl = (i > 0) ? out.P[i - 1] : out.P[0] - dx * psi0;
        double pr = (i < n - 1) ? out.P[i + 1] : out.P[n - 1] + dx * psi1;
        out.Px[i] = (pr - pl) / (2.0 * dx);
        out.Pxx[i] = out.P[i] - f[i];
    }
    out.stencil_residual = stencil_residual_max(out.P, f, psi0, psi1);
    return out;
}

} // namespace fvlab
