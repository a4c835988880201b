#include "fvlab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fvlab {

Scheme parse_scheme(const std::string& name) {
    if (name == "godunov") return Scheme::godunov;
    if (name == "engquist_osher") return Scheme::engquist_osher;
    if (name == "lax_friedrichs") return Scheme::lax_friedrichs;
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::godunov: return "godunov";
        case Scheme::engquist_osher: return "engquist_osher";
        case Scheme::lax_friedrichs: return "lax_friedrichs";
    }
    return "?";
}

std::vector<std::string> scheme_names() { return {"godunov", "engquist_osher", "lax_friedrichs"}; }

namespace {

// Extrema of A over [lo, hi] occur at the endpoints or at roots of A'.
void extremum_candidates(const FluxSpec& flux, double lo, double hi, double* mn, double* mx) {
    double a = flux.A(lo), b = flux.A(hi);
    *mn = std::min(a, b);
    *mx = std::max(a, b);
    for (double s : flux.stationary_points) {
        if (s > lo && s < hi) {
            double v = flux.A(s);
            *mn = std::min(*mn, v);
            *mx = std::max(*mx, v);
        }
    }
}

// int_lo^hi |A'| ds, split at the sign changes of A'.
double abs_speed_integral(const FluxSpec& flux, double lo, double hi) {
    double total = 0.0;
    double a_prev = flux.A(lo);
    for (double s : flux.stationary_points) {
        if (s > lo && s < hi) {
            double a_s = flux.A(s);
            total += std::fabs(a_s - a_prev);
            a_prev = a_s;
        }
    }
    total += std::fabs(flux.A(hi) - a_prev);
    return total;
}

double godunov_flux(double uL, double uR, const FluxSpec& flux) {
    if (uL == uR) return flux.A(uL);
    double mn, mx;
    if (uL < uR) {
        extremum_candidates(flux, uL, uR, &mn, &mx);
        return mn;
    }
    extremum_candidates(flux, uR, uL, &mn, &mx);
    return mx;
}

double engquist_osher_flux(double uL, double uR, const FluxSpec& flux) {
    double lo = std::min(uL, uR), hi = std::max(uL, uR);
    double spread = abs_speed_integral(flux, lo, hi);
    double sign = (uL >= uR) ? 1.0 : -1.0;
    return 0.5 * (flux.A(uL) + flux.A(uR)) + 0.5 * sign * spread;
}

double rusanov_flux(double uL, double uR, const FluxSpec& flux) {
    double lam = std::max(std::fabs(flux.A_prime(uL)), std::fabs(flux.A_prime(uR)));
    return 0.5 * (flux.A(uL) + flux.A(uR)) - 0.5 * lam * (uR - uL);
}

} // namespace

double numerical_flux(Scheme scheme, double uL, double uR, const FluxSpec& flux) {
    switch (scheme) {
        case Scheme::godunov: return godunov_flux(uL, uR, flux);
        case Scheme::engquist_osher: return engquist_osher_flux(uL, uR, flux);
        case Scheme::lax_friedrichs: return rusanov_flux(uL, uR, flux);
    }
    throw std::invalid_argument("numerical_flux: unknown scheme");
}

double total_flux(Scheme scheme, double uL, double uR, const FluxSpec& flux, double eps,
                  double dx) {
    double f = numerical_flux(scheme, uL, uR, flux);
    if (eps > 0.0) f -= eps * (uR - uL) / dx;
    return f;
}

double kruzkov_numerical_flux(Scheme scheme, double uL, double uR, double k,
                              const FluxSpec& flux, double eps, double dx) {
    double hi = total_flux(scheme, std::max(uL, k), std::max(uR, k), flux, eps, dx);
    double lo = total_flux(scheme, std::min(uL, k), std::min(uR, k), flux, eps, dx);
    return hi - lo;
}

bool Trajectory::densely_recorded() const {
    if (snapshots.size() != steps.size() + 1) return false;
    for (size_t i = 0; i < steps.size(); ++i) {
        if (std::fabs(snapshots[i].time - steps[i].t_before) > 1e-10) return false;
    }
    return true;
}

CellField step_hyperbolic(const CellField& state, const BoundarySignals& bc,
                          const CellField& frozen_source, double dt, const FluxSpec& flux,
                          Scheme scheme, double eps, StepRecord* record) {
    int n = state.size();
    double dx = state.grid.dx;
    double t = state.time;
    double gl = bc.g0(t), gr = bc.g1(t);

    double lo = std::min({state.min(), gl, gr});
    double hi = std::max({state.max(), gl, gr});
    double speed = flux.max_wave_speed(lo, hi);
    if (dt <= 0.0) throw std::invalid_argument("step_hyperbolic: dt must be positive");
    double courant = dt * (speed / dx + 2.0 * eps / (dx * dx));
    if (courant > 1.0 + 1e-9) {
        std::ostringstream os;
        os << "step_hyperbolic: CFL violation, dt*(|A'|/dx + 2eps/dx^2) = " << courant;
        throw std::runtime_error(os.str());
    }

    const bool with_source = !frozen_source.values.empty();
    if (with_source && frozen_source.grid.n_cells != n)
        throw std::invalid_argument("step_hyperbolic: source grid mismatch");

    std::vector<double> face(static_cast<size_t>(n) + 1);
    for (int f = 0; f <= n; ++f) {
        double uL = (f == 0) ? gl : state[f - 1];
        double uR = (f == n) ? gr : state[f];
        face[static_cast<size_t>(f)] = total_flux(scheme, uL, uR, flux, eps, dx);
    }

    CellField out(state.grid, 0.0, t + dt);
    double source_mass = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = with_source ? frozen_source[i] : 0.0;
        out[i] = state[i] - dt / dx * (face[static_cast<size_t>(i) + 1] - face[static_cast<size_t>(i)]) +
                 dt * s;
        source_mass += s;
    }
    if (!out.all_finite()) throw std::runtime_error("step_hyperbolic: non-finite state");

    if (record) {
        record->t_before = t;
        record->dt = dt;
        record->flux_left = face.front();
        record->flux_right = face.back();
        record->source_mass = source_mass * dx;
    }
    return out;
}

namespace {

CellField eval_source(const SourceSpec& source, const CellField& state, double t) {
    if (source.is_zero()) return CellField{};
    CellField s(state.grid, 0.0, t);
    for (int i = 0; i < state.size(); ++i)
        s[i] = source(t, state.grid.cell_center(i), state[i]);
    return s;
}

} // namespace

Trajectory run_ibvp(const CellField& u0, const BoundarySignals& bc, const SourceSpec& source,
                    const FluxSpec& flux, double T, const RunOptions& opts) {
    if (T <= 0.0) throw std::invalid_argument("run_ibvp: T must be positive");
    if (!u0.all_finite()) throw std::invalid_argument("run_ibvp: non-finite initial data");

    Trajectory traj;
    traj.grid = u0.grid;
    traj.meta = SchemeMeta{opts.scheme, opts.eps, opts.cfl, opts.coupling};

    CellField state = u0;
    traj.snapshots.push_back(state);

    double t = state.time;
    const double t_end = u0.time + T;
    long steps = 0;
    while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
        if (steps >= opts.max_steps)
            throw std::runtime_error("run_ibvp: max_steps exceeded");
        double gl = bc.g0(t), gr = bc.g1(t);
        double lo = std::min({state.min(), gl, gr});
        double hi = std::max({state.max(), gl, gr});
        double dt = (opts.fixed_dt > 0.0)
                        ? opts.fixed_dt
                        : cfl_dt_range(lo, hi, state.grid.dx, flux, opts.cfl, opts.eps, opts.dt_max);
        dt = std::min(dt, t_end - t);

        StepRecord rec;
        try {
            if (opts.coupling == SourceCoupling::strang && !source.is_zero()) {
                CellField half = state;
                for (int i = 0; i < half.size(); ++i)
                    half[i] += 0.5 * dt * source(t, half.grid.cell_center(i), state[i]);
                CellField s1 = eval_source(source, state, t);
                CellField mid = step_hyperbolic(half, bc, CellField{}, dt, flux, opts.scheme,
                                                opts.eps, &rec);
                CellField s2 = eval_source(source, mid, t + dt);
                for (int i = 0; i < mid.size(); ++i) mid[i] += 0.5 * dt * s2[i];
                if (!mid.all_finite())
                    throw std::runtime_error("step_hyperbolic: non-finite state");
                rec.source_mass = 0.5 * (s1.mass() + s2.mass());
                state = mid;
            } else {
                CellField s = eval_source(source, state, t);
                state = step_hyperbolic(state, bc, s, dt, flux, opts.scheme, opts.eps, &rec);
            }
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << e.what() << " (step " << steps << ", t = " << t << ")";
            throw std::runtime_error(os.str());
        }

        t = state.time;
        traj.steps.push_back(rec);
        ++steps;
        bool is_last = !(t < t_end - 1e-12 * std::max(1.0, t_end));
        if (opts.record_every > 0 && (steps % opts.record_every == 0 || is_last))
            traj.snapshots.push_back(state);
    }
    if (traj.snapshots.back().time < state.time) traj.snapshots.push_back(state);
    return traj;
}

std::vector<int> select_snapshots(const Trajectory& traj, const std::vector<double>& times) {
    std::vector<int> idx;
    idx.reserve(times.size());
    for (double t : times) {
        int best = 0;
        double best_gap = std::fabs(traj.snapshots[0].time - t);
        for (int i = 1; i < static_cast<int>(traj.snapshots.size()); ++i) {
            double gap = std::fabs(traj.snapshots[static_cast<size_t>(i)].time - t);
            if (gap < best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        idx.push_back(best);
    }
    return idx;
}

} // namespace fvlab
