#include "fvlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace fvlab {

std::string side_name(Side s) { return s == Side::left ? "left" : "right"; }

std::string InequalityReport::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["passed"] = passed;
    j["worst_violation"] = worst_violation;
    j["tolerance"] = tolerance;
    j["location"] = {{"t", location.t}, {"x", location.x}, {"k", location.k},
                     {"what", location.what}};
    return j.dump();
}

std::string reports_to_json(const std::vector<InequalityReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::json::parse(r.to_json()));
    return arr.dump(2);
}

double default_entropy_tolerance(double dx, const FluxSpec& flux) {
    return 10.0 * dx * (1.0 + flux.max_wave_speed(-flux.L, flux.L));
}

// ---------------------------------------------------------------------------
// Boundary traces
// ---------------------------------------------------------------------------

TraceEstimate extract_trace(const Trajectory& traj, Side side, int n_layers) {
    if (n_layers < 3) throw std::invalid_argument("extract_trace: need n_layers >= 3");
    int n = traj.grid.n_cells;
    int c_max = n / 8;
    if (c_max < n_layers)
        throw std::invalid_argument("extract_trace: grid too coarse for requested layers");

    // Offsets shrink geometrically from c_max cells down to one cell; layer j
    // averages u over the c_j cells next to the offset.
    std::vector<int> layer_cells(static_cast<size_t>(n_layers));
    layer_cells[0] = c_max;
    for (int j = 1; j < n_layers; ++j) {
        double e = 1.0 - static_cast<double>(j) / (n_layers - 1);
        int c = static_cast<int>(std::lround(std::pow(static_cast<double>(c_max), e)));
        c = std::min(c, layer_cells[static_cast<size_t>(j) - 1] - 1);
        c = std::max(c, n_layers - j);  // keep room for the layers below
        layer_cells[static_cast<size_t>(j)] = c;
    }

    TraceEstimate out;
    out.side = side;
    out.dx = traj.grid.dx;
    for (const auto& snap : traj.snapshots) out.times.push_back(snap.time);
    out.layer_offsets.reserve(static_cast<size_t>(n_layers));
    out.layer_series.assign(static_cast<size_t>(n_layers), {});

    for (int j = 0; j < n_layers; ++j) {
        int c = layer_cells[static_cast<size_t>(j)];
        out.layer_offsets.push_back(c * traj.grid.dx);
        auto& series = out.layer_series[static_cast<size_t>(j)];
        series.reserve(traj.snapshots.size());
        for (const auto& snap : traj.snapshots) {
            // anchored mean: exact for constant fields
            int i0 = (side == Side::left) ? c : n - 1 - c;
            double acc = 0.0;
            for (int m = c; m < 2 * c; ++m) {
                int i = (side == Side::left) ? m : n - 1 - m;
                acc += snap[i] - snap[i0];
            }
            series.push_back(snap[i0] + acc / c);
        }
    }

    // L1-in-time gaps between consecutive layers (trapezoid in t).
    size_t nt = out.times.size();
    for (int j = 0; j + 1 < n_layers; ++j) {
        double gap = 0.0;
        for (size_t ti = 0; ti + 1 < nt; ++ti) {
            double w = out.times[ti + 1] - out.times[ti];
            double a = std::fabs(out.layer_series[static_cast<size_t>(j)][ti] -
                                 out.layer_series[static_cast<size_t>(j) + 1][ti]);
            double b = std::fabs(out.layer_series[static_cast<size_t>(j)][ti + 1] -
                                 out.layer_series[static_cast<size_t>(j) + 1][ti + 1]);
            gap += 0.5 * w * (a + b);
        }
        out.cauchy_defects.push_back(gap);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Entropy production
// ---------------------------------------------------------------------------

ProductionResult kruzkov_production(const Trajectory& traj, const std::vector<double>& k_grid,
                                    const SourceSpec& source, const FluxSpec& flux,
                                    const BoundarySignals* bc, double tolerance) {
    if (!traj.densely_recorded())
        throw std::invalid_argument("kruzkov_production: needs a densely recorded trajectory");
    if (k_grid.empty()) throw std::invalid_argument("kruzkov_production: empty k grid");

    int n = traj.grid.n_cells;
    double dx = traj.grid.dx;
    Scheme scheme = traj.meta.scheme;
    double eps = traj.meta.eps;

    ProductionResult res;
    res.report.name = "kruzkov_production";
    res.report.tolerance = (tolerance >= 0.0) ? tolerance : default_entropy_tolerance(dx, flux);
    res.report.worst_violation = std::numeric_limits<double>::infinity();
    res.mass_rate_per_step.reserve(traj.steps.size());

    std::vector<double> faces(static_cast<size_t>(n) + 1);
    std::vector<double> src(static_cast<size_t>(n));
    for (size_t s = 0; s < traj.steps.size(); ++s) {
        const CellField& u = traj.snapshots[s];
        const CellField& unew = traj.snapshots[s + 1];
        double t = traj.steps[s].t_before;
        double dt = traj.steps[s].dt;

        for (int i = 0; i < n; ++i) {
            double v = source(t, traj.grid.cell_center(i), u[i]);
            if (traj.has_elliptic()) v -= traj.elliptic[s].Px[i];
            src[static_cast<size_t>(i)] = v;
        }

        double gl = bc ? bc->g0(t) : 0.0;
        double gr = bc ? bc->g1(t) : 0.0;
        int i_lo = bc ? 0 : 1;
        int i_hi = bc ? n : n - 1;

        double mass_rate = 0.0;
        for (size_t kq = 0; kq < k_grid.size(); ++kq) {
            double k = k_grid[kq];
            for (int f = i_lo; f <= i_hi; ++f) {
                double uL = (f == 0) ? gl : u[f - 1];
                double uR = (f == n) ? gr : u[f];
                faces[static_cast<size_t>(f)] =
                    kruzkov_numerical_flux(scheme, uL, uR, k, flux, eps, dx);
            }
            for (int i = i_lo; i < i_hi; ++i) {
                double dte = (std::fabs(unew[i] - k) - std::fabs(u[i] - k)) / dt;
                double dxq = (faces[static_cast<size_t>(i) + 1] - faces[static_cast<size_t>(i)]) / dx;
                double se = sgn(unew[i] - k) * src[static_cast<size_t>(i)];
                double mu = -(dte + dxq - se);
                if (kq == 0) mass_rate += mu * dx;
                if (mu < res.report.worst_violation) {
                    res.report.worst_violation = mu;
                    res.report.location = {t, traj.grid.cell_center(i), k, "t,x,k"};
                }
            }
        }
        res.mass_rate_per_step.push_back(mass_rate);
    }
    res.report.passed = res.report.worst_violation >= -res.report.tolerance;
    return res;
}

std::vector<double> kruzkov_production_field(const Trajectory& traj, size_t step, double k,
                                             const SourceSpec& source, const FluxSpec& flux,
                                             const BoundarySignals& bc) {
    if (!traj.densely_recorded())
        throw std::invalid_argument("kruzkov_production_field: needs a dense trajectory");
    if (step >= traj.steps.size())
        throw std::invalid_argument("kruzkov_production_field: step out of range");
    int n = traj.grid.n_cells;
    double dx = traj.grid.dx;
    const CellField& u = traj.snapshots[step];
    const CellField& unew = traj.snapshots[step + 1];
    double t = traj.steps[step].t_before;
    double dt = traj.steps[step].dt;

    std::vector<double> faces(static_cast<size_t>(n) + 1);
    for (int f = 0; f <= n; ++f) {
        double uL = (f == 0) ? bc.g0(t) : u[f - 1];
        double uR = (f == n) ? bc.g1(t) : u[f];
        faces[static_cast<size_t>(f)] =
            kruzkov_numerical_flux(traj.meta.scheme, uL, uR, k, flux, traj.meta.eps, dx);
    }
    std::vector<double> mu(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = source(t, traj.grid.cell_center(i), u[i]);
        if (traj.has_elliptic()) s -= traj.elliptic[step].Px[i];
        double dte = (std::fabs(unew[i] - k) - std::fabs(u[i] - k)) / dt;
        double dxq = (faces[static_cast<size_t>(i) + 1] - faces[static_cast<size_t>(i)]) / dx;
        mu[static_cast<size_t>(i)] = -(dte + dxq - sgn(unew[i] - k) * s);
    }
    return mu;
}

// ---------------------------------------------------------------------------
// Boundary entropy condition
// ---------------------------------------------------------------------------

namespace {

template <typename EtaPrimeAtDatum, typename QOf>
InequalityReport boundary_residual_impl(const TraceEstimate& trace, const BoundarySignals& bc,
                                        const FluxSpec& flux, size_t family_size,
                                        EtaPrimeAtDatum eta_prime_at, QOf q_of,
                                        double tolerance) {
    InequalityReport rep;
    rep.name = "boundary_entropy_" + side_name(trace.side);
    rep.tolerance = (tolerance >= 0.0) ? tolerance : default_entropy_tolerance(trace.dx, flux);
    rep.worst_violation = std::numeric_limits<double>::infinity();
    double nhat = (trace.side == Side::left) ? -1.0 : 1.0;
    const auto& series = trace.trace_series();

    // Layers read the initial data, not the boundary trace, until waves from
    // the boundary have crossed them; grade only the established samples.
    double speed = std::max(flux.max_wave_speed(-flux.L, flux.L), 1e-12);
    double warmup = trace.layer_offsets.front() / speed;
    double t0 = trace.times.front();

    for (size_t ti = 0; ti < trace.times.size(); ++ti) {
        double t = trace.times[ti];
        if (t - t0 < warmup && ti + 1 < trace.times.size()) continue;
        double utau = series[ti];
        double g = (trace.side == Side::left) ? bc.g0(t) : bc.g1(t);
        for (size_t m = 0; m < family_size; ++m) {
            double r = nhat * (q_of(m, utau) - q_of(m, g) -
                               eta_prime_at(m, g) * (flux.A(utau) - flux.A(g)));
            if (r < rep.worst_violation) {
                rep.worst_violation = r;
                rep.location = {t, 0.0, static_cast<double>(m), "t,entropy"};
            }
        }
    }
    rep.passed = rep.worst_violation >= -rep.tolerance;
    return rep;
}

} // namespace

InequalityReport boundary_entropy_residual(const TraceEstimate& trace, const BoundarySignals& bc,
                                           const FluxSpec& flux,
                                           const std::vector<double>& k_grid, double tolerance) {
    auto rep = boundary_residual_impl(
        trace, bc, flux, k_grid.size(),
        [&](size_t m, double g) { return sgn(g - k_grid[m]); },
        [&](size_t m, double u) {
            return sgn(u - k_grid[m]) * (flux.A(u) - flux.A(k_grid[m]));
        },
        tolerance);
    // Report the offending k value, not its index.
    if (rep.location.what == "t,entropy") {
        rep.location.k = k_grid[static_cast<size_t>(rep.location.k)];
        rep.location.what = "t,k";
    }
    return rep;
}

InequalityReport boundary_entropy_residual(const TraceEstimate& trace, const BoundarySignals& bc,
                                           const FluxSpec& flux,
                                           const std::vector<EntropyPair>& entropies,
                                           double tolerance) {
    return boundary_residual_impl(
        trace, bc, flux, entropies.size(),
        [&](size_t m, double g) { return entropies[m].eta_prime(g); },
        [&](size_t m, double u) { return entropies[m].q(u); }, tolerance);
}

// ---------------------------------------------------------------------------
// Maximum principle
// ---------------------------------------------------------------------------

InequalityReport max_principle_check(const Trajectory& traj, const BoundarySignals& bc,
                                     const SourceSpec& source) {
    InequalityReport rep;
    rep.name = "max_principle";
    rep.worst_violation = std::numeric_limits<double>::infinity();

    double sup_S = source.sup_bound;
    if (traj.has_elliptic()) {
        double ct = 0.0;
        for (const auto& e : traj.elliptic) ct = std::max(ct, e.Px.max_abs());
        sup_S += ct;
    }
    double max_dt = 0.0;
    for (const auto& s : traj.steps) max_dt = std::max(max_dt, s.dt);
    double base0 = traj.initial().max_abs();
    rep.tolerance = (sup_S > 0.0) ? 2.0 * max_dt * (1.0 + sup_S) + 1e-12 : 1e-12;

    double t0 = traj.initial().time;
    double running_g = 0.0;
    for (const auto& snap : traj.snapshots) {
        running_g = std::max({running_g, std::fabs(bc.g0(snap.time)), std::fabs(bc.g1(snap.time))});
        double bound = std::max(base0, running_g) + sup_S * (snap.time - t0);
        double margin = bound - snap.max_abs();
        if (margin < rep.worst_violation) {
            rep.worst_violation = margin;
            int arg = 0;
            for (int i = 0; i < snap.size(); ++i)
                if (std::fabs(snap[i]) > std::fabs(snap[arg])) arg = i;
            rep.location = {snap.time, traj.grid.cell_center(arg), 0.0, "t,x"};
        }
    }
    rep.passed = rep.worst_violation >= -rep.tolerance;
    return rep;
}

// ---------------------------------------------------------------------------
// L1 stability
// ---------------------------------------------------------------------------

InequalityReport l1_stability(const Trajectory& a, const Trajectory& b, double lipschitz_C,
                              double slack_coef) {
    if (a.grid.n_cells != b.grid.n_cells)
        throw std::invalid_argument("l1_stability: mismatched grids");
    if (a.snapshots.size() != b.snapshots.size())
        throw std::invalid_argument("l1_stability: mismatched snapshot counts");
    for (size_t j = 0; j < a.snapshots.size(); ++j)
        if (std::fabs(a.snapshots[j].time - b.snapshots[j].time) > 1e-10)
            throw std::invalid_argument("l1_stability: mismatched snapshot times");

    InequalityReport rep;
    rep.name = "l1_stability";
    rep.worst_violation = std::numeric_limits<double>::infinity();
    double d0 = l1_distance(a.snapshots.front(), b.snapshots.front());
    double t0 = a.snapshots.front().time;
    rep.tolerance = 1e-12 * (1.0 + d0);
    for (size_t j = 0; j < a.snapshots.size(); ++j) {
        double t = a.snapshots[j].time - t0;
        double d = l1_distance(a.snapshots[j], b.snapshots[j]);
        double bound = std::exp(2.0 * lipschitz_C * t) * d0 + slack_coef * a.grid.dx * t;
        double margin = bound - d;
        if (margin < rep.worst_violation) {
            rep.worst_violation = margin;
            rep.location = {a.snapshots[j].time, 0.0, 0.0, "t"};
        }
    }
    rep.passed = rep.worst_violation >= -rep.tolerance;
    return rep;
}

double measure_dp_source_lipschitz(const Trajectory& a, const Trajectory& b) {
    if (!a.has_elliptic() || !b.has_elliptic())
        throw std::invalid_argument("measure_dp_source_lipschitz: runs lack elliptic snapshots");
    size_t m = std::min(a.snapshots.size(), b.snapshots.size());
    double c = 0.0;
    for (size_t j = 0; j < m; ++j) {
        double du = l1_distance(a.snapshots[j], b.snapshots[j]);
        if (du < 1e-14) continue;
        double ds = l1_distance(a.elliptic[j].Px, b.elliptic[j].Px);
        c = std::max(c, ds / du);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Energy ledger
// ---------------------------------------------------------------------------

std::vector<double> solve_theta(const CellField& v) {
    int n = v.size();
    if (n < 4) throw std::invalid_argument("solve_theta: need n_cells >= 4");
    double dx = v.grid.dx;
    double inv2 = 1.0 / (dx * dx);

    // -(theta_{i-1} - 2 theta_i + theta_{i+1})/dx^2 + 4 theta_i = v_i with
    // reflected ghosts theta_{-1} = -theta_0, theta_n = -theta_{n-1}.
    std::vector<double> diag(static_cast<size_t>(n), 4.0 + 2.0 * inv2);
    std::vector<double> rhs(v.values);
    diag.front() = 4.0 + 3.0 * inv2;
    diag.back() = 4.0 + 3.0 * inv2;

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
    return rhs;
}

namespace {

double cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& f,
                            std::vector<double>* out) {
    out->assign(t.size(), 0.0);
    for (size_t j = 1; j < t.size(); ++j)
        (*out)[j] = (*out)[j - 1] + 0.5 * (t[j] - t[j - 1]) * (f[j] + f[j - 1]);
    return out->back();
}

} // namespace

EnergyReport dp_energy(const Trajectory& traj, const BoundarySignals& bc) {
    EnergyReport er;
    int n = traj.grid.n_cells;
    double dx = traj.grid.dx;
    double eps = traj.meta.eps;

    std::vector<double> vx_sq;  // ||dv/dx||^2 per snapshot (interior faces)
    for (const auto& snap : traj.snapshots) {
        double t = snap.time;
        er.times.push_back(t);
        CellField v(traj.grid, 0.0, t);
        for (int i = 0; i < n; ++i) {
            double x = traj.grid.cell_center(i);
            v[i] = snap[i] - (x * bc.g1(t) + (1.0 - x) * bc.g0(t));
        }
        double v2 = 0.0;
        for (int i = 0; i < n; ++i) v2 += v[i] * v[i];
        v2 *= dx;
        er.v_l2.push_back(std::sqrt(v2));

        std::vector<double> theta = solve_theta(v);
        // theta'' recovered algebraically; the gradient energy -int theta theta''
        // makes ||v||^2 = 16||theta||^2 + 8||theta'||^2 + ||theta''||^2 exact.
        double t2 = 0.0, tpp2 = 0.0, cross = 0.0;
        for (int i = 0; i < n; ++i) {
            double th = theta[static_cast<size_t>(i)];
            double thpp = 4.0 * th - v[i];
            t2 += th * th;
            tpp2 += thpp * thpp;
            cross += th * thpp;
        }
        t2 *= dx;
        tpp2 *= dx;
        double grad2 = -cross * dx;
        if (grad2 < 0.0) grad2 = 0.0;  // roundoff guard
        er.theta_h2.push_back(std::sqrt(4.0 * t2 + 5.0 * grad2 + tpp2));

        double g2 = 0.0;
        for (int i = 1; i < n; ++i) {
            double d = (v[i] - v[i - 1]) / dx;
            g2 += d * d;
        }
        vx_sq.push_back(g2 * dx);
    }

    double tol_f = 10.0 * dx;
    er.norm_equiv_ok = true;
    er.worst_equiv_margin = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < er.times.size(); ++j) {
        double lower = (1.0 + tol_f) * er.v_l2[j] - er.theta_h2[j];
        double upper = 4.0 * (1.0 + tol_f) * er.theta_h2[j] - er.v_l2[j];
        double margin = std::min(lower, upper);
        er.worst_equiv_margin = std::min(er.worst_equiv_margin, margin);
        if (margin < -1e-12 * (1.0 + er.v_l2[j])) er.norm_equiv_ok = false;
    }

    // Smallest C0 closing the Gronwall bound, by bisection on [0, 1e3].
    double v0sq = er.v_l2.front() * er.v_l2.front();
    std::vector<double> gsum(er.times.size()), beta_unit(er.times.size());
    for (size_t j = 0; j < er.times.size(); ++j) {
        double t = er.times[j];
        double a0 = std::fabs(bc.g0(t)), a1 = std::fabs(bc.g1(t));
        gsum[j] = a0 + a1;
        double d0 = bc.g0_dot(t), d1 = bc.g1_dot(t);
        double hg0 = bc.h0(t) * bc.g0(t), hg1 = bc.h1(t) * bc.g1(t);
        beta_unit[j] = d0 * d0 + d1 * d1 + hg0 * hg0 + hg1 * hg1 + a0 * a0 * a0 + a1 * a1 * a1;
    }
    std::vector<double> g_int;
    cumulative_trapezoid(er.times, gsum, &g_int);

    auto holds = [&](double c0) {
        std::vector<double> alpha(er.times.size()), w(er.times.size());
        double t0 = er.times.front();
        for (size_t j = 0; j < er.times.size(); ++j)
            alpha[j] = c0 * ((er.times[j] - t0) + g_int[j]);
        for (size_t j = 0; j < er.times.size(); ++j)
            w[j] = std::exp(-2.0 * alpha[j]) * c0 * beta_unit[j];
        std::vector<double> beta_int;
        cumulative_trapezoid(er.times, w, &beta_int);
        std::vector<double> visc_int;
        if (eps > 0.0) {
            std::vector<double> wv(er.times.size());
            for (size_t j = 0; j < er.times.size(); ++j)
                wv[j] = std::exp(-2.0 * alpha[j]) * vx_sq[j];
            cumulative_trapezoid(er.times, wv, &visc_int);
        }
        for (size_t j = 0; j < er.times.size(); ++j) {
            double e2a = std::exp(2.0 * alpha[j]);
            double lhs = er.v_l2[j] * er.v_l2[j];
            if (eps > 0.0) lhs += 2.0 * eps * e2a * visc_int[j];
            double rhs = 4.0 * v0sq * e2a + 8.0 * e2a * beta_int[j];
            if (lhs > rhs * (1.0 + 1e-12) + 1e-300) return false;
        }
        return true;
    };

    if (!holds(1e3)) {
        er.fit_bounded = false;
        er.alpha_beta_fit = std::numeric_limits<double>::infinity();
    } else if (holds(0.0)) {
        er.fit_bounded = true;
        er.alpha_beta_fit = 0.0;
    } else {
        double lo = 0.0, hi = 1e3;
        for (int it = 0; it < 40; ++it) {
            double mid = 0.5 * (lo + hi);
            (holds(mid) ? hi : lo) = mid;
        }
        er.fit_bounded = true;
        er.alpha_beta_fit = hi;
    }
    return er;
}

InequalityReport dp_energy_equivalence_report(const EnergyReport& er, double dx) {
    InequalityReport rep;
    rep.name = "dp_energy_equivalence";
    rep.worst_violation = er.worst_equiv_margin;
    double vmax = 0.0;
    for (double v : er.v_l2) vmax = std::max(vmax, v);
    rep.tolerance = 1e-12 * (1.0 + vmax);
    rep.passed = er.norm_equiv_ok;
    rep.location.what = "factor 4*(1+10*dx)";
    rep.location.x = dx;
    return rep;
}

// ---------------------------------------------------------------------------
// Kernel bound chain for P
// ---------------------------------------------------------------------------

InequalityReport p_bounds_check(const Trajectory& traj) {
    if (!traj.has_elliptic())
        throw std::invalid_argument("p_bounds_check: trajectory lacks elliptic snapshots");

    const double sup_G = 1.0 / std::tanh(1.0);
    const double sup_Gx = 1.0;

    InequalityReport rep;
    rep.name = "p_bounds";
    rep.worst_violation = std::numeric_limits<double>::infinity();

    int n = traj.grid.n_cells;
    double dx = traj.grid.dx;
    size_t m = std::min(traj.snapshots.size(), traj.elliptic.size());
    for (size_t j = 0; j < m; ++j) {
        const auto& u = traj.snapshots[j];
        const auto& sol = traj.elliptic[j];
        double psi0 = sol.psi0, psi1 = sol.psi1;

        double omega_sup = std::max(std::fabs(omega_shift(0.0, psi0, psi1)),
                                    std::fabs(omega_shift(1.0, psi0, psi1)));
        if (psi0 != psi1) {
            double xc = psi0 / (psi0 - psi1);
            if (xc > 0.0 && xc < 1.0)
                omega_sup = std::max(omega_sup, std::fabs(omega_shift(xc, psi0, psi1)));
        }
        double omega_p_sup = std::max(std::fabs(psi0), std::fabs(psi1));

        double f1 = 0.0, fq_sup = 0.0;
        for (int i = 0; i < n; ++i) {
            double fq = 1.5 * u[i] * u[i];
            fq_sup = std::max(fq_sup, fq);
            double fv = fq + (psi1 - psi0) - omega_shift(traj.grid.cell_center(i), psi0, psi1);
            f1 += std::fabs(fv);
        }
        f1 *= dx;

        double scale = 1.0 + f1 + omega_sup + omega_p_sup;
        double tol = 1e-9 * scale + 20.0 * dx * dx * scale;
        double margins[3] = {
            sup_G * f1 + omega_sup - sol.P.max_abs(),
            sup_Gx * f1 + omega_p_sup - sol.Px.max_abs(),
            sol.P.max_abs() + fq_sup - sol.Pxx.max_abs(),
        };
        const char* names[3] = {"P", "Px", "Pxx"};
        for (int q = 0; q < 3; ++q) {
            if (margins[q] < rep.worst_violation) {
                rep.worst_violation = margins[q];
                rep.location = {u.time, 0.0, 0.0, names[q]};
                rep.tolerance = tol;
            }
        }
    }
    rep.passed = rep.worst_violation >= -rep.tolerance;
    return rep;
}

} // namespace fvlab
