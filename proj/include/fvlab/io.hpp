#pragma once

#include <string>
#include <vector>

#include "fvlab/diagnostics.hpp"
#include "fvlab/hyperbolic.hpp"

namespace fvlab {

/// Shortest round-trippable decimal (17 significant digits, '.' separator).
std::string format_g17(double v);

void write_text_file(const std::string& path, const std::string& content);

/// Columns t,x,u and, when the trajectory carries elliptic snapshots, P,Px.
void write_fields_csv(const std::string& path, const Trajectory& traj,
                      const std::vector<int>& snapshot_indices);

/// Columns t,side,s_j,layer_avg for every layer of every trace.
void write_traces_csv(const std::string& path, const std::vector<TraceEstimate>& traces);

struct ConvergenceRow {
    int n = 0;
    double dx = 0.0;
    double error = 0.0;          // NaN when no pairing exists for the row
    double observed_order = 0.0; // NaN on the first row
};

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows,
                           double lsq_order);

/// Matching gnuplot script for a convergence.csv next to it.
std::string convergence_plot_script(const std::string& csv_name);

/// Minimal CSV reader: first row is the header, fields split on ','.
std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               std::vector<std::string>* header = nullptr);

} // namespace fvlab
