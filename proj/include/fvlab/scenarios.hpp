#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fvlab/dp.hpp"
#include "fvlab/hyperbolic.hpp"

namespace fvlab {

enum class ScenarioKind { ibvp, dp, elliptic };

/// A concrete problem setup on a given grid.
struct ScenarioInstance {
    ScenarioKind kind = ScenarioKind::ibvp;
    Grid1D grid;
    CellField u0;
    BoundarySignals bc;
    SourceSpec source;  // plain source (ibvp) or extra forcing (coupled runs)
    FluxSpec flux;
    std::function<double(double, double)> exact;  // exact u(t,x) when known
    // Elliptic-kind extras: right side and exact P for the cosine benchmark.
    std::function<double(double)> elliptic_f;
    std::function<double(double)> elliptic_exact;
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::ibvp;
    std::string description;
    double default_T = 0.5;
    Scheme default_scheme = Scheme::godunov;
    int default_n = 200;
    std::function<ScenarioInstance(int n_cells)> make;
};

const std::vector<Scenario>& scenario_registry();
const Scenario& find_scenario(const std::string& name);  // throws, names valid ones
std::vector<std::string> scenario_names();

} // namespace fvlab
