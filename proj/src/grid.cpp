#include "fvlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fvlab {

Grid1D::Grid1D(int n) : n_cells(n) {
    if (n <= 0) throw std::invalid_argument("Grid1D: n_cells must be positive");
    dx = 1.0 / n;
}

CellField::CellField(Grid1D g, double value, double t)
    : grid(g), time(t), values(static_cast<size_t>(g.n_cells), value) {}

CellField CellField::sample(Grid1D g, const std::function<double(double)>& f, double t) {
    CellField out(g, 0.0, t);
    for (int i = 0; i < g.n_cells; ++i) out.values[i] = f(g.cell_center(i));
    return out;
}

bool CellField::all_finite() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

double CellField::min() const { return *std::min_element(values.begin(), values.end()); }

double CellField::max() const { return *std::max_element(values.begin(), values.end()); }

double CellField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::fabs(v));
    return m;
}

double CellField::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * grid.dx;
}

double CellField::l1_norm() const {
    double s = 0.0;
    for (double v : values) s += std::fabs(v);
    return s * grid.dx;
}

double CellField::l2_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s * grid.dx);
}

double l1_distance(const CellField& a, const CellField& b) {
    if (a.grid.n_cells != b.grid.n_cells)
        throw std::invalid_argument("l1_distance: mismatched grids");
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
    return s * a.grid.dx;
}

} // namespace fvlab
