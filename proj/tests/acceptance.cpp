// Acceptance suite: one self-contained check per shipped guarantee, one
// pass/fail line each. Exit code is the number of failed checks.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "fvlab/diagnostics.hpp"
#include "fvlab/dp.hpp"
#include "fvlab/runner.hpp"
#include "fvlab/scenarios.hpp"

using namespace fvlab;

namespace {

const double kPi = 3.14159265358979323846;
int g_failures = 0;

void grade(int number, const std::string& label, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %s  (%s)\n", ok ? "PASS" : "FAIL", number, label.c_str(),
                detail.c_str());
    if (!ok) ++g_failures;
}

double lsq_slope(const std::vector<double>& dx, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(dx.size());
    for (int i = 0; i < m; ++i) {
        double x = std::log(dx[static_cast<size_t>(i)]);
        double y = std::log(err[static_cast<size_t>(i)]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

Trajectory run_instance(const ScenarioInstance& inst, double T, Scheme scheme,
                        int record_every = 1, double fixed_dt = 0.0) {
    if (inst.kind == ScenarioKind::dp) {
        DPConfig dc;
        dc.grid = inst.grid;
        dc.u0 = inst.u0;
        dc.bc = inst.bc;
        dc.T = T;
        dc.scheme = scheme;
        dc.extra_source = inst.source;
        dc.run.record_every = record_every;
        dc.run.fixed_dt = fixed_dt;
        return dp_run(dc);
    }
    RunOptions opts;
    opts.scheme = scheme;
    opts.record_every = record_every;
    opts.fixed_dt = fixed_dt;
    return run_ibvp(inst.u0, inst.bc, inst.source, inst.flux, T, opts);
}

// --- 1 -----------------------------------------------------------------

void criterion_elliptic_correctness() {
    auto f_fn = [](double x) { return std::cos(kPi * x); };
    auto p_fn = [](double x) { return std::cos(kPi * x) / (1.0 + kPi * kPi); };
    bool ok = true;
    char detail[160];
    double shown_err = 0.0, shown_order = 0.0;
    for (int backend = 0; backend < 2; ++backend) {
        std::vector<double> dxs, errs;
        double err200 = 0.0;
        for (int n : {50, 100, 200, 400}) {
            Grid1D g(n);
            CellField f = CellField::sample(g, f_fn);
            EllipticSolution sol = backend == 0 ? solve_neumann_green(f, 0.0, 0.0)
                                                : solve_neumann_fd(f, 0.0, 0.0);
            double err = 0.0;
            for (int i = 0; i < n; ++i)
                err = std::max(err, std::fabs(sol.P[i] - p_fn(g.cell_center(i))));
            dxs.push_back(g.dx);
            errs.push_back(err);
            if (n == 200) err200 = err;
        }
        double order = lsq_slope(dxs, errs);
        ok = ok && err200 <= 1e-3 && std::fabs(order - 2.0) <= 0.1;
        shown_err = std::max(shown_err, err200);
        shown_order = order;
    }
    std::snprintf(detail, sizeof(detail), "max err(n=200) %.3e <= 1e-3, order %.3f in 2.0+-0.1",
                  shown_err, shown_order);
    grade(1, "elliptic benchmark, both backends", ok, detail);
}

// --- 2 -----------------------------------------------------------------

void criterion_green_identities() {
    Grid1D g(400);
    double worst_row = 0.0;
    for (int i = 0; i < g.n_cells; ++i) {
        double x = g.cell_center(i);
        double acc = 0.0;
        for (int j = 0; j < g.n_cells; ++j) acc += green_eval(x, g.cell_center(j)).G * g.dx;
        worst_row = std::max(worst_row, std::fabs(acc - 1.0));
    }
    double worst_sym = 0.0;
    for (int i = 0; i <= 50; ++i)
        for (int j = 0; j <= 50; ++j) {
            double x = i / 50.0, y = j / 50.0;
            worst_sym = std::max(worst_sym,
                                 std::fabs(green_eval(x, y).G - green_eval(y, x).G));
        }
    double corner = std::fabs(green_eval(0.0, 0.0).G - 1.0 / std::tanh(1.0));
    bool ok = worst_row <= 1e-6 && worst_sym <= 1e-12 && corner <= 1e-12;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "row-sum err %.2e <= 1e-6, symmetry %.1e, G(0,0) err %.1e", worst_row,
                  worst_sym, corner);
    grade(2, "green kernel identities", ok, detail);
}

// --- 3 -----------------------------------------------------------------

void criterion_standing_shock() {
    int n = 128;
    Grid1D g(n);
    FluxSpec burgers = dp_flux_spec(3.0);
    CellField u0 = CellField::sample(g, [](double x) { return x < 0.5 ? 1.0 : -1.0; });
    auto bc = BoundarySignals::constants(1.0, -1.0);
    double dt = 0.5 * g.dx;
    RunOptions opts;
    opts.fixed_dt = dt;
    Trajectory traj = run_ibvp(u0, bc, SourceSpec::zero(), burgers, 1000 * dt, opts);

    double dev = 0.0;
    for (const auto& snap : traj.snapshots)
        for (int i = 0; i < n; ++i) dev = std::max(dev, std::fabs(snap[i] - u0[i]));

    // per-cell production for k = 0 on the final step: the jump of the
    // Kruzkov flux concentrates 0.5/dx in each cell facing the shock
    std::vector<double> mu = kruzkov_production_field(traj, traj.steps.size() - 1, 0.0,
                                                      SourceSpec::zero(), burgers, bc);
    double rate = 0.0, away = 0.0;
    for (int i = 0; i < n; ++i) {
        rate += mu[static_cast<size_t>(i)] * g.dx;
        if (i != n / 2 - 1 && i != n / 2)
            away = std::max(away, std::fabs(mu[static_cast<size_t>(i)]));
    }
    bool ok = traj.steps.size() == 1000 && dev <= 1e-12 && std::fabs(rate - 1.0) <= 0.05 &&
              away <= 1e-12;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "drift %.1e over %zu steps, mass rate %.6f in 1+-5%%, off-shock %.1e", dev,
                  traj.steps.size(), rate, away);
    grade(3, "standing shock and its entropy production", ok, detail);
}

// --- 4 -----------------------------------------------------------------

void criterion_rarefaction_order() {
    FluxSpec burgers = dp_flux_spec(3.0);
    std::vector<double> dxs, errs;
    for (int n : {100, 200, 400, 800}) {
        Grid1D g(n);
        CellField u0 = CellField::sample(g, [](double x) { return x < 0.5 ? -1.0 : 1.0; });
        auto bc = BoundarySignals::constants(-1.0, 1.0);
        RunOptions opts;
        opts.record_every = 0;
        Trajectory traj = run_ibvp(u0, bc, SourceSpec::zero(), burgers, 0.2, opts);
        CellField ex = CellField::sample(
            g, [](double x) { return std::clamp((x - 0.5) / 0.2, -1.0, 1.0); });
        dxs.push_back(g.dx);
        errs.push_back(l1_distance(traj.final_state(), ex));
    }
    double order = lsq_slope(dxs, errs);
    char detail[120];
    std::snprintf(detail, sizeof(detail), "L1 order %.3f >= 0.7, err(n=800) %.3e", order,
                  errs.back());
    grade(4, "transonic rarefaction convergence", order >= 0.7, detail);
}

// --- 5 -----------------------------------------------------------------

void criterion_bln_behavior() {
    int n = 400;
    const Scenario& scn = find_scenario("burgers_outflow");
    ScenarioInstance inst = scn.make(n);
    Trajectory traj = run_instance(inst, scn.default_T, Scheme::godunov);
    TraceEstimate tr = extract_trace(traj, Side::right, 5);

    double trace_err = 0.0, datum_gap = 1e300;
    for (double v : tr.trace_series()) {
        trace_err = std::max(trace_err, std::fabs(v - 1.0));
        datum_gap = std::min(datum_gap, std::fabs(v - 0.0));
    }
    auto rep = boundary_entropy_residual(tr, inst.bc, inst.flux,
                                         kruzkov_k_grid(inst.flux.L, 64));

    // constructed inadmissible fixture: left trace 1 against datum 0
    TraceEstimate fixture;
    fixture.side = Side::left;
    fixture.dx = 1.0 / n;
    fixture.times = {0.0, 0.1, 0.2};
    fixture.layer_offsets = {4.0 / n, 2.0 / n, 1.0 / n};
    for (int j = 0; j < 3; ++j) fixture.layer_series.push_back({1.0, 1.0, 1.0});
    fixture.cauchy_defects = {0.0, 0.0};
    auto bad = boundary_entropy_residual(fixture, BoundarySignals::constants(0.0, 0.0),
                                         dp_flux_spec(2.0), kruzkov_k_grid(2.0, 64));

    bool ok = trace_err <= 2.0 / n && datum_gap >= 0.5 && rep.passed &&
              bad.worst_violation <= -0.5 && !bad.passed;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "|trace-1| %.1e <= 2dx, datum not attained (gap %.2f), margin %.2e, "
                  "fixture margin %.3f <= -0.5",
                  trace_err, datum_gap, rep.worst_violation, bad.worst_violation);
    grade(5, "boundary admissibility at free outflow", ok, detail);
}

// --- 6 -----------------------------------------------------------------

void criterion_max_principle() {
    bool ok = true;
    double worst_zero = -1e300;
    for (const char* name :
         {"burgers_stationary_shock", "burgers_rarefaction", "burgers_outflow",
          "linear_advection_inflow"}) {
        const Scenario& scn = find_scenario(name);
        ScenarioInstance inst = scn.make(128);
        Trajectory traj = run_instance(inst, scn.default_T, Scheme::godunov);
        double bound =
            std::max(inst.u0.max_abs(), inst.bc.sup_g(scn.default_T));
        for (const auto& snap : traj.snapshots)
            worst_zero = std::max(worst_zero, snap.max_abs() - bound);
    }
    ok = ok && worst_zero <= 1e-12;

    Grid1D g(100);
    CellField z(g, 0.0);
    auto bc0 = BoundarySignals::constants(0.0, 0.0);
    Trajectory sourced =
        run_ibvp(z, bc0, SourceSpec::constant(0.5), dp_flux_spec(2.0), 1.0, RunOptions{});
    double max_dt = 0.0;
    for (const auto& s : sourced.steps) max_dt = std::max(max_dt, s.dt);
    double worst_src = -1e300;
    for (const auto& snap : sourced.snapshots)
        worst_src = std::max(worst_src, snap.max_abs() - (0.5 * snap.time + 2.0 * max_dt));
    ok = ok && worst_src <= 0.0;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "zero-source overshoot %.2e <= 1e-12, sourced margin %.2e <= 0", worst_zero,
                  worst_src);
    grade(6, "discrete maximum principle", ok, detail);
}

// --- 7 -----------------------------------------------------------------

void criterion_l1_stability() {
    FluxSpec burgers = dp_flux_spec(3.0);
    Grid1D g(128);
    auto bc = BoundarySignals::constants(0.2, -0.1);
    double dt = cfl_dt_range(-1.2, 1.2, g.dx, burgers, 0.4, 0.0);
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dist(-0.9, 0.9);
    auto rand_field = [&]() {
        CellField f(g, 0.0);
        for (int i = 0; i < g.n_cells; ++i) f[i] = dist(rng);
        return f;
    };
    double worst_contraction = 1e300;
    for (Scheme s : {Scheme::godunov, Scheme::engquist_osher}) {
        RunOptions opts;
        opts.scheme = s;
        opts.fixed_dt = dt;
        Trajectory a = run_ibvp(rand_field(), bc, SourceSpec::zero(), burgers, 0.2, opts);
        Trajectory b = run_ibvp(rand_field(), bc, SourceSpec::zero(), burgers, 0.2, opts);
        auto rep = l1_stability(a, b, 0.0, 0.0);
        worst_contraction = std::min(worst_contraction, rep.worst_violation);
    }

    // coupled pair with a small L1 perturbation and measured source constant
    auto u_fn = [](double x) { return 0.5 + 0.2 * std::sin(2.0 * kPi * x); };
    auto delta = [](double x) { return 1e-3 * 0.5 * kPi * std::sin(kPi * x); };
    Grid1D gd(200);
    double dtd = cfl_dt_range(-2.0, 2.0, gd.dx, dp_flux_spec(2.0), 0.5, 0.0);
    DPConfig ca;
    ca.grid = gd;
    ca.u0 = CellField::sample(gd, u_fn);
    ca.bc = BoundarySignals::constants(0.5, 0.5);
    ca.T = 0.5;
    ca.run.fixed_dt = dtd;
    DPConfig cb = ca;
    cb.u0 = CellField::sample(gd, [&](double x) { return u_fn(x) + delta(x); });
    Trajectory a = dp_run(ca);
    Trajectory b = dp_run(cb);
    double C = measure_dp_source_lipschitz(a, b);
    auto rep = l1_stability(a, b, C, 10.0);

    bool ok = worst_contraction >= -1e-12 && rep.passed;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "contraction margin %.2e >= -1e-12, coupled bound margin %.2e (C=%.3f)",
                  worst_contraction, rep.worst_violation, C);
    grade(7, "L1 stability and contraction", ok, detail);
}

// --- 8 -----------------------------------------------------------------

void criterion_dp_structure() {
    // constant steady state across 10^4 steps
    Grid1D g(64);
    DPConfig dc;
    dc.grid = g;
    dc.u0 = CellField(g, 0.75);
    dc.bc = BoundarySignals::constants(0.75, 0.75);
    double dt = cfl_dt_range(0.75, 0.75, g.dx, dp_flux_spec(2.75), 0.5, 0.0);
    dc.T = 10000.5 * dt;  // at least 1e4 full steps regardless of rounding
    dc.run.fixed_dt = dt;
    dc.run.record_every = 500;
    Trajectory traj = dp_run(dc);
    double dev = 0.0;
    for (const auto& snap : traj.snapshots)
        for (int i = 0; i < g.n_cells; ++i) dev = std::max(dev, std::fabs(snap[i] - 0.75));
    bool steady_ok = traj.steps.size() >= 10000 && dev <= 1e-12;

    // manufactured travelling profile converges at first order
    const Scenario& scn = find_scenario("dp_manufactured");
    std::vector<double> dxs, errs;
    for (int n : {50, 100, 200}) {
        ScenarioInstance inst = scn.make(n);
        Trajectory t = run_instance(inst, scn.default_T, Scheme::godunov, 0);
        CellField ex = CellField::sample(inst.grid, [&](double x) {
            return inst.exact(t.final_state().time, x);
        });
        dxs.push_back(inst.grid.dx);
        errs.push_back(l1_distance(t.final_state(), ex));
    }
    double order = lsq_slope(dxs, errs);
    bool mms_ok = std::fabs(order - 1.0) <= 0.2;

    // energy ledger on the peakon: norm equivalence + stable fitted constant
    const Scenario& pk = find_scenario("dp_peakon");
    double c0[2];
    bool equiv_ok = true;
    int idx = 0;
    for (int n : {200, 400}) {
        ScenarioInstance inst = pk.make(n);
        Trajectory t = run_instance(inst, pk.default_T, Scheme::godunov);
        EnergyReport er = dp_energy(t, inst.bc);
        equiv_ok = equiv_ok && er.norm_equiv_ok && er.fit_bounded;
        c0[idx++] = er.alpha_beta_fit;
    }
    double var = std::fabs(c0[0] - c0[1]) / std::max({c0[0], c0[1], 1e-12});
    bool c0_ok = var < 0.2;

    bool ok = steady_ok && mms_ok && equiv_ok && c0_ok;
    char detail[200];
    std::snprintf(detail, sizeof(detail),
                  "steady drift %.1e/%zu steps, mms order %.3f in 1+-0.2, equivalence %s, "
                  "C0 %.3g vs %.3g (var %.1f%%)",
                  dev, traj.steps.size(), order, equiv_ok ? "ok" : "violated", c0[0], c0[1],
                  100.0 * var);
    grade(8, "coupled-system structural checks", ok, detail);
}

// --- 9 -----------------------------------------------------------------

void criterion_entropy_suite() {
    bool ok = true;
    double worst = 1e300;
    std::string worst_at = "-";
    for (const auto& scn : scenario_registry()) {
        if (scn.kind == ScenarioKind::elliptic) continue;
        for (Scheme scheme : {Scheme::godunov, Scheme::engquist_osher}) {
            int n = 100;
            ScenarioInstance inst = scn.make(n);
            Trajectory traj = run_instance(inst, scn.default_T, scheme);
            auto res = kruzkov_production(traj, kruzkov_k_grid(inst.flux.L, 64), inst.source,
                                          inst.flux, &inst.bc);
            double tol = default_entropy_tolerance(inst.grid.dx, inst.flux);
            if (res.report.worst_violation < worst) {
                worst = res.report.worst_violation;
                worst_at = scn.name + "/" + scheme_name(scheme);
            }
            ok = ok && res.report.worst_violation >= -tol;
        }
    }
    char detail[200];
    std::snprintf(detail, sizeof(detail), "min production margin %.2e at %s", worst,
                  worst_at.c_str());
    grade(9, "entropy production across all scenarios", ok, detail);
}

// --- 10 ----------------------------------------------------------------

void criterion_trace_convergence() {
    bool ok = true;
    double worst_gap = 1e300;
    std::string worst_at = "-";
    for (const auto& scn : scenario_registry()) {
        if (scn.kind == ScenarioKind::elliptic) continue;
        ScenarioInstance inst = scn.make(400);
        Trajectory traj = run_instance(inst, scn.default_T, Scheme::godunov);
        for (Side side : {Side::left, Side::right}) {
            TraceEstimate tr = extract_trace(traj, side, 5);
            double gap = tr.cauchy_defects.front() - tr.cauchy_defects.back();
            if (gap < worst_gap) {
                worst_gap = gap;
                worst_at = scn.name + "/" + side_name(side);
            }
            ok = ok && gap >= -1e-12 * (1.0 + tr.cauchy_defects.front());
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "min (coarsest - finest) defect %.2e at %s",
                  worst_gap, worst_at.c_str());
    grade(10, "boundary-layer trace convergence", ok, detail);
}

} // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion_elliptic_correctness();
    criterion_green_identities();
    criterion_standing_shock();
    criterion_rarefaction_order();
    criterion_bln_behavior();
    criterion_max_principle();
    criterion_l1_stability();
    criterion_dp_structure();
    criterion_entropy_suite();
    criterion_trace_convergence();
    std::printf("================\n%s (%d failed)\n", g_failures == 0 ? "ALL PASSED" : "FAILURES",
                g_failures);
    return g_failures;
}
