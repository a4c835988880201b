#include "fvlab/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fvlab {

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double chi(double v, double xi) {
    if (xi >= 0.0 && xi <= v) return 1.0;
    if (v < 0.0 && xi >= v && xi <= 0.0) return -1.0;
    return 0.0;
}

double FluxSpec::max_wave_speed(double lo, double hi) const {
    double m = std::max(std::fabs(A_prime(lo)), std::fabs(A_prime(hi)));
    for (double s : stationary_points)
        if (s > lo && s < hi) m = std::max(m, std::fabs(A_prime(s)));
    return m;
}

EntropyPair kruzkov_pair(double k, const FluxSpec& flux) {
    if (std::fabs(k) > flux.L)
        throw std::invalid_argument("kruzkov_pair: |k| exceeds the flux bound L");
    auto A = flux.A;
    EntropyPair pair;
    pair.eta = [k](double u) { return std::fabs(u - k); };
    pair.eta_prime = [k](double u) { return sgn(u - k); };
    pair.q = [k, A](double u) { return sgn(u - k) * (A(u) - A(k)); };
    return pair;
}

std::vector<double> kruzkov_k_grid(double L, int count) {
    if (count < 2) throw std::invalid_argument("kruzkov_k_grid: need at least 2 values");
    std::vector<double> ks(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) ks[i] = -L + 2.0 * L * i / (count - 1);
    return ks;
}

FluxSpec dp_flux_spec(double L) {
    if (L <= 0.0) throw std::invalid_argument("dp_flux_spec: L must be positive");
    FluxSpec f;
    f.name = "burgers";
    f.A = [](double u) { return 0.5 * u * u; };
    f.A_prime = [](double u) { return u; };
    f.L = L;
    f.stationary_points = {0.0};
    return f;
}

FluxSpec linear_flux_spec(double L) {
    if (L <= 0.0) throw std::invalid_argument("linear_flux_spec: L must be positive");
    FluxSpec f;
    f.name = "advection";
    f.A = [](double u) { return u; };
    f.A_prime = [](double) { return 1.0; };
    f.L = L;
    return f;
}

double cfl_dt_range(double lo, double hi, double dx, const FluxSpec& flux, double cfl,
                    double eps, double dt_max) {
    if (cfl <= 0.0 || cfl > 1.0) throw std::invalid_argument("cfl_dt: need 0 < cfl <= 1");
    if (eps < 0.0) throw std::invalid_argument("cfl_dt: eps must be nonnegative");
    double dt = dt_max;
    double speed = flux.max_wave_speed(lo, hi);
    if (speed > 0.0) dt = std::min(dt, cfl * dx / speed);
    if (eps > 0.0) dt = std::min(dt, cfl * dx * dx / (2.0 * eps));
    return dt;
}

double cfl_dt(const CellField& field, const FluxSpec& flux, double cfl, double eps,
              double dt_max) {
    return cfl_dt_range(field.min(), field.max(), field.grid.dx, flux, cfl, eps, dt_max);
}

} // namespace fvlab
