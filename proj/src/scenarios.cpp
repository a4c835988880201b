#include "fvlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fvlab {

namespace {

const double kPi = 3.14159265358979323846;

ScenarioInstance make_stationary_shock(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::ibvp;
    s.grid = Grid1D(n);
    auto profile = [](double x) { return x < 0.5 ? 1.0 : -1.0; };
    s.u0 = CellField::sample(s.grid, profile);
    s.bc = BoundarySignals::constants(1.0, -1.0);
    s.source = SourceSpec::zero();
    s.flux = dp_flux_spec(3.0);
    s.exact = [profile](double, double x) { return profile(x); };
    return s;
}

ScenarioInstance make_rarefaction(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::ibvp;
    s.grid = Grid1D(n);
    s.u0 = CellField::sample(s.grid, [](double x) { return x < 0.5 ? -1.0 : 1.0; });
    s.bc = BoundarySignals::constants(-1.0, 1.0);
    s.source = SourceSpec::zero();
    s.flux = dp_flux_spec(3.0);
    s.exact = [](double t, double x) {
        if (t <= 0.0) return x < 0.5 ? -1.0 : 1.0;
        return std::clamp((x - 0.5) / t, -1.0, 1.0);
    };
    return s;
}

ScenarioInstance make_outflow(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::ibvp;
    s.grid = Grid1D(n);
    s.u0 = CellField(s.grid, 1.0);
    s.bc = BoundarySignals::constants(1.0, 0.0);
    s.source = SourceSpec::zero();
    s.flux = dp_flux_spec(3.0);
    s.exact = [](double, double) { return 1.0; };
    return s;
}

ScenarioInstance make_advection_inflow(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::ibvp;
    s.grid = Grid1D(n);
    s.u0 = CellField(s.grid, 0.0);
    s.bc = BoundarySignals::constants(1.0, 0.0);
    s.source = SourceSpec::zero();
    s.flux = linear_flux_spec(2.0);
    s.exact = [](double t, double x) { return x < t ? 1.0 : 0.0; };
    return s;
}

ScenarioInstance make_dp_constant(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::dp;
    s.grid = Grid1D(n);
    const double c = 0.75;
    s.u0 = CellField(s.grid, c);
    s.bc = BoundarySignals::constants(c, c);
    s.source = SourceSpec::zero();
    s.flux = dp_flux_spec(c + c + 1.0);
    s.exact = [](double, double) { return 0.75; };
    return s;
}

ScenarioInstance make_dp_peakon(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::dp;
    s.grid = Grid1D(n);
    auto crest = [](double x) { return std::exp(-std::fabs(x - 0.5) / 0.1); };
    s.u0 = CellField::sample(s.grid, crest);
    s.bc = BoundarySignals::constants(crest(0.0), crest(1.0));
    s.source = SourceSpec::zero();
    s.flux = dp_flux_spec(1.0 + crest(0.0) + 1.0);
    return s;
}

ScenarioInstance make_dp_manufactured(int n, double T) {
    ScenarioInstance s;
    s.kind = ScenarioKind::dp;
    s.grid = Grid1D(n);
    auto u_star = [](double t, double x) { return 0.5 + 0.25 * std::sin(kPi * (x - 0.5 * t)); };
    s.u0 = CellField::sample(s.grid, [&](double x) { return u_star(0.0, x); });
    s.bc = BoundarySignals::from_functions(
        [u_star](double t) { return u_star(t, 0.0); },
        [u_star](double t) { return u_star(t, 1.0); },
        [](double t) { return -0.125 * kPi * std::cos(kPi * (0.0 - 0.5 * t)); },
        [](double t) { return -0.125 * kPi * std::cos(kPi * (1.0 - 0.5 * t)); },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    s.source = manufactured_forcing(u_star, s.bc, s.grid, T);
    s.flux = dp_flux_spec(0.75 + 0.75 + s.source.sup_bound * T + 1.0);
    s.exact = u_star;
    return s;
}

ScenarioInstance make_dp_boundary_driven(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::dp;
    s.grid = Grid1D(n);
    const double c = 0.4;
    s.u0 = CellField(s.grid, c);
    s.bc = BoundarySignals::from_functions(
        [c](double t) { return c + 0.25 * std::sin(kPi * t); }, [c](double) { return c; },
        [](double t) { return 0.25 * kPi * std::cos(kPi * t); }, [](double) { return 0.0; },
        [](double) { return 0.5; }, [](double) { return 0.0; });
    s.source = SourceSpec::zero();
    s.flux = dp_flux_spec(c + (c + 0.25) + 1.0);
    return s;
}

ScenarioInstance make_elliptic_cosine(int n) {
    ScenarioInstance s;
    s.kind = ScenarioKind::elliptic;
    s.grid = Grid1D(n);
    s.u0 = CellField::sample(s.grid, [](double x) { return std::cos(kPi * x); });
    s.bc = BoundarySignals::constants(0.0, 0.0);
    s.flux = dp_flux_spec(2.0);
    s.elliptic_f = [](double x) { return std::cos(kPi * x); };
    s.elliptic_exact = [](double x) { return std::cos(kPi * x) / (1.0 + kPi * kPi); };
    return s;
}

std::vector<Scenario> build_registry() {
    std::vector<Scenario> reg;
    reg.push_back({"burgers_stationary_shock", ScenarioKind::ibvp,
                   "face-aligned standing shock, quadratic flux (use even n)", 0.3,
                   Scheme::godunov, 200, make_stationary_shock});
    reg.push_back({"burgers_rarefaction", ScenarioKind::ibvp,
                   "transonic fan from opposing states", 0.2, Scheme::godunov, 200,
                   make_rarefaction});
    reg.push_back({"burgers_outflow", ScenarioKind::ibvp,
                   "supersonic outflow; the right datum is legitimately ignored", 0.5,
                   Scheme::godunov, 200, make_outflow});
    reg.push_back({"linear_advection_inflow", ScenarioKind::ibvp,
                   "unit-speed transport of an inflow front", 0.5, Scheme::godunov, 200,
                   make_advection_inflow});
    reg.push_back({"dp_constant", ScenarioKind::dp, "constant steady state of the coupled system",
                   0.5, Scheme::godunov, 128, make_dp_constant});
    reg.push_back({"dp_peakon", ScenarioKind::dp, "peaked crest with pinned endpoint values", 0.5,
                   Scheme::godunov, 200, make_dp_peakon});
    reg.push_back({"dp_manufactured", ScenarioKind::dp,
                   "smooth travelling profile with compensating forcing", 0.3, Scheme::godunov,
                   100, [](int n) { return make_dp_manufactured(n, 0.3); }});
    reg.push_back({"dp_boundary_driven", ScenarioKind::dp,
                   "oscillating left datum with inhomogeneous flux data", 0.75, Scheme::godunov,
                   128, make_dp_boundary_driven});
    reg.push_back({"elliptic_cosine", ScenarioKind::elliptic,
                   "screened Poisson benchmark with closed-form solution", 0.0, Scheme::godunov,
                   200, make_elliptic_cosine});
    return reg;
}

} // namespace

const std::vector<Scenario>& scenario_registry() {
    static const std::vector<Scenario> reg = build_registry();
    return reg;
}

const Scenario& find_scenario(const std::string& name) {
    for (const auto& s : scenario_registry())
        if (s.name == name) return s;
    std::ostringstream os;
    os << "unknown scenario '" << name << "'; valid scenarios:";
    for (const auto& s : scenario_registry()) os << " " << s.name;
    throw std::invalid_argument(os.str());
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> names;
    for (const auto& s : scenario_registry()) names.push_back(s.name);
    return names;
}

} // namespace fvlab
