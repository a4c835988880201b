#include "fvlab/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fvlab {

EllipticBackend parse_elliptic_backend(const std::string& name) {
    if (name == "green") return EllipticBackend::green;
    if (name == "fd") return EllipticBackend::fd;
    throw std::invalid_argument("unknown elliptic backend '" + name + "'");
}

std::string elliptic_backend_name(EllipticBackend b) {
    return b == EllipticBackend::green ? "green" : "fd";
}

void DPConfig::validate() const {
    if (T <= 0.0) throw std::invalid_argument("DPConfig: T must be positive");
    if (u0.grid.n_cells != grid.n_cells) throw std::invalid_argument("DPConfig: grid mismatch");
    if (u0.size() < 2) throw std::invalid_argument("DPConfig: need at least 2 cells");
    // Endpoint compatibility, resolvable only to within one cell average.
    double tol0 = 2.0 * std::fabs(u0[1] - u0[0]) + 1e-9 * (1.0 + std::fabs(bc.g0(0.0)));
    double tol1 = 2.0 * std::fabs(u0[u0.size() - 1] - u0[u0.size() - 2]) +
                  1e-9 * (1.0 + std::fabs(bc.g1(0.0)));
    if (std::fabs(u0[0] - bc.g0(0.0)) > tol0)
        throw std::invalid_argument("DPConfig: u0(0) incompatible with g0(0)");
    if (std::fabs(u0[u0.size() - 1] - bc.g1(0.0)) > tol1)
        throw std::invalid_argument("DPConfig: u0(1) incompatible with g1(0)");
}

std::pair<double, double> neumann_data(const BoundarySignals& bc, double t) {
    double psi0 = -bc.g0_dot(t) - bc.g0(t) * bc.h0(t);
    double psi1 = -bc.g1_dot(t) - bc.g1(t) * bc.h1(t);
    return {psi0, psi1};
}

std::pair<CellField, EllipticSolution> dp_source(const CellField& u, double psi0, double psi1,
                                                 EllipticBackend backend,
                                                 const GreenOperator* green) {
    CellField f(u.grid, 0.0, u.time);
    for (int i = 0; i < u.size(); ++i) f[i] = 1.5 * u[i] * u[i];

    EllipticSolution sol;
    if (backend == EllipticBackend::fd) {
        sol = solve_neumann_fd(f, psi0, psi1);
    } else if (green) {
        sol = green->solve(f, psi0, psi1);
    } else {
        sol = solve_neumann_green(f, psi0, psi1);
    }

    CellField src(u.grid, 0.0, u.time);
    for (int i = 0; i < u.size(); ++i) src[i] = -sol.Px[i];
    return {std::move(src), std::move(sol)};
}

Trajectory dp_run(const DPConfig& config) {
    config.validate();

    std::unique_ptr<GreenOperator> green;
    if (config.elliptic_backend == EllipticBackend::green)
        green = std::make_unique<GreenOperator>(config.grid);

    RunOptions opts = config.run;
    opts.cfl = config.cfl;
    opts.eps = config.eps;
    opts.scheme = config.scheme;

    FluxSpec flux = dp_flux_spec(dp_solution_bound(config));

    Trajectory traj;
    traj.grid = config.grid;
    traj.meta = SchemeMeta{opts.scheme, opts.eps, opts.cfl, opts.coupling};

    CellField state = config.u0;
    auto solve_state = [&](const CellField& u) {
        auto [psi0, psi1] = neumann_data(config.bc, u.time);
        return dp_source(u, psi0, psi1, config.elliptic_backend, green.get());
    };

    auto [src, ell] = solve_state(state);
    traj.snapshots.push_back(state);
    traj.elliptic.push_back(ell);

    double t = state.time;
    const double t_end = config.u0.time + config.T;
    long steps = 0;
    while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
        if (steps >= opts.max_steps) throw std::runtime_error("dp_run: max_steps exceeded");
        double gl = config.bc.g0(t), gr = config.bc.g1(t);
        double lo = std::min({state.min(), gl, gr});
        double hi = std::max({state.max(), gl, gr});
        double dt = (opts.fixed_dt > 0.0)
                        ? opts.fixed_dt
                        : cfl_dt_range(lo, hi, state.grid.dx, flux, opts.cfl, opts.eps, opts.dt_max);
        dt = std::min(dt, t_end - t);

        if (!config.extra_source.is_zero()) {
            for (int i = 0; i < state.size(); ++i)
                src[i] += config.extra_source(t, state.grid.cell_center(i), state[i]);
        }

        StepRecord rec;
        try {
            state = step_hyperbolic(state, config.bc, src, dt, flux, opts.scheme, opts.eps, &rec);
            std::tie(src, ell) = solve_state(state);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << e.what() << " (step " << steps << ", t = " << t << ")";
            throw std::runtime_error(os.str());
        }

        t = state.time;
        traj.steps.push_back(rec);
        ++steps;
        bool is_last = !(t < t_end - 1e-12 * std::max(1.0, t_end));
        if (opts.record_every > 0 && (steps % opts.record_every == 0 || is_last)) {
            traj.snapshots.push_back(state);
            traj.elliptic.push_back(ell);
        }
    }
    if (traj.snapshots.back().time < state.time) {
        traj.snapshots.push_back(state);
        traj.elliptic.push_back(ell);
    }
    return traj;
}

double dp_solution_bound(const DPConfig& config) {
    double sup_extra = config.extra_source.sup_bound;
    return config.u0.max_abs() + config.bc.sup_g(config.u0.time + config.T) +
           sup_extra * config.T + 1.0;
}

SourceSpec manufactured_forcing(const std::function<double(double, double)>& u_star,
                                const BoundarySignals& bc_star, const Grid1D& grid, double T) {
    for (int i = 0; i <= 16; ++i) {
        double t = T * i / 16.0;
        if (std::fabs(u_star(t, 0.0) - bc_star.g0(t)) > 1e-8 ||
            std::fabs(u_star(t, 1.0) - bc_star.g1(t)) > 1e-8)
            throw std::invalid_argument(
                "manufactured_forcing: bc_star inconsistent with u_star at the endpoints");
    }

    struct Cache {
        double t = std::numeric_limits<double>::quiet_NaN();
        std::vector<double> Px;
    };
    auto green = std::make_shared<GreenOperator>(grid);
    auto cache = std::make_shared<Cache>();
    const double h = 1e-5;

    auto forcing = [=](double t, double x, double) {
        if (!(cache->t == t)) {
            CellField f(grid, 0.0, t);
            for (int i = 0; i < grid.n_cells; ++i) {
                double u = u_star(t, grid.cell_center(i));
                f[i] = 1.5 * u * u;
            }
            auto [psi0, psi1] = neumann_data(bc_star, t);
            cache->Px = green->solve(f, psi0, psi1).Px.values;
            cache->t = t;
        }
        int i = static_cast<int>(std::lround(x / grid.dx - 0.5));
        i = std::clamp(i, 0, grid.n_cells - 1);
        double dudt = (u_star(t + h, x) - u_star(t - h, x)) / (2.0 * h);
        double xl = std::max(0.0, x - h), xr = std::min(1.0, x + h);
        double dudx = (u_star(t, xr) - u_star(t, xl)) / (xr - xl);
        return dudt + u_star(t, x) * dudx + cache->Px[static_cast<size_t>(i)];
    };

    SourceSpec src;
    src.S = forcing;
    src.lipschitz_C = 0.0;
    double sup = 0.0;
    for (int it = 0; it <= 8; ++it)
        for (int ix = 0; ix < grid.n_cells; ix += std::max(1, grid.n_cells / 32))
            sup = std::max(sup, std::fabs(forcing(T * it / 8.0, grid.cell_center(ix), 0.0)));
    src.sup_bound = sup;
    return src;
}

} // namespace fvlab
