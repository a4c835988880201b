#pragma once

#include <functional>
#include <vector>

namespace fvlab {

/// Uniform cell partition of the unit interval (0,1).
struct Grid1D {
    int n_cells = 0;
    double dx = 0.0;

    Grid1D() = default;
    explicit Grid1D(int n);

    double cell_center(int i) const { return (i + 0.5) * dx; }
    double left_edge(int i) const { return i * dx; }

    bool operator==(const Grid1D& other) const { return n_cells == other.n_cells; }
};

/// Piecewise-constant cell averages at one time instant.
struct CellField {
    Grid1D grid;
    double time = 0.0;
    std::vector<double> values;

    CellField() = default;
    CellField(Grid1D g, double value, double t = 0.0);

    // Samples f at cell centers (second-order proxy for the cell average).
    static CellField sample(Grid1D g, const std::function<double(double)>& f, double t = 0.0);

    int size() const { return grid.n_cells; }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }

    bool all_finite() const;
    double min() const;
    double max() const;
    double max_abs() const;
    double mass() const;     // sum(values) * dx
    double l1_norm() const;  // sum(|values|) * dx
    double l2_norm() const;  // sqrt(sum(values^2) * dx)
};

double l1_distance(const CellField& a, const CellField& b);

} // namespace fvlab
