#include "fvlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fvlab {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file '" + path + "'");
    out << content;
}

void write_fields_csv(const std::string& path, const Trajectory& traj,
                      const std::vector<int>& snapshot_indices) {
    std::ostringstream os;
    bool with_p = traj.has_elliptic();
    os << (with_p ? "t,x,u,P,Px\n" : "t,x,u\n");
    for (int idx : snapshot_indices) {
        const auto& snap = traj.snapshots[static_cast<size_t>(idx)];
        for (int i = 0; i < snap.size(); ++i) {
            os << format_g17(snap.time) << ',' << format_g17(traj.grid.cell_center(i)) << ','
               << format_g17(snap[i]);
            if (with_p) {
                const auto& e = traj.elliptic[static_cast<size_t>(idx)];
                os << ',' << format_g17(e.P[i]) << ',' << format_g17(e.Px[i]);
            }
            os << '\n';
        }
    }
    write_text_file(path, os.str());
}

void write_traces_csv(const std::string& path, const std::vector<TraceEstimate>& traces) {
    std::ostringstream os;
    os << "t,side,s_j,layer_avg\n";
    for (const auto& tr : traces) {
        for (size_t j = 0; j < tr.layer_offsets.size(); ++j) {
            for (size_t ti = 0; ti < tr.times.size(); ++ti) {
                os << format_g17(tr.times[ti]) << ',' << side_name(tr.side) << ','
                   << format_g17(tr.layer_offsets[j]) << ','
                   << format_g17(tr.layer_series[j][ti]) << '\n';
            }
        }
    }
    write_text_file(path, os.str());
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows,
                           double lsq_order) {
    std::ostringstream os;
    os << "n,dx,error,observed_order\n";
    for (const auto& r : rows) {
        os << r.n << ',' << format_g17(r.dx) << ',' << format_g17(r.error) << ','
           << format_g17(r.observed_order) << '\n';
    }
    os << "# least-squares order: " << format_g17(lsq_order) << '\n';
    write_text_file(path, os.str());
}

std::string convergence_plot_script(const std::string& csv_name) {
    std::ostringstream os;
    os << "set datafile separator ','\n"
       << "set logscale xy\n"
       << "set xlabel 'dx'\n"
       << "set ylabel 'error'\n"
       << "set key left top\n"
       << "plot '" << csv_name << "' using 2:3 with linespoints title 'measured'\n";
    return os.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path,
                                               std::vector<std::string>* header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::string item;
        std::istringstream ls(line);
        while (std::getline(ls, item, ',')) fields.push_back(item);
        if (first) {
            if (header) *header = fields;
            first = false;
        } else {
            rows.push_back(std::move(fields));
        }
    }
    return rows;
}

} // namespace fvlab
