#include "qswitch/csv.hpp"

#include <charconv>
#include <cmath>

namespace qswitch {

std::string format_number(double x) {
    if (x == 0.0) return "0";
    if (std::isnan(x)) return "nan";
    char buf[40];
    // Try the shortest precision that round-trips to the 12-digit value.
    char ref[40];
    auto r12 = std::to_chars(ref, ref + sizeof ref, x, std::chars_format::general, 12);
    double target = 0;
    std::from_chars(ref, r12.ptr, target);
    for (int p = 1; p < 12; ++p) {
        auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, p);
        double back = 0;
        std::from_chars(buf, r.ptr, back);
        if (back == target) return {buf, r.ptr};
    }
    return {ref, r12.ptr};
}

void write_spectrum_csv(std::ostream& out, const SpectrumTable& t) {
    out << "delta_q,manifold,branch,energy\n";
    for (std::size_t i = 0; i < t.delta_q_grid.size(); ++i) {
        const std::string dq = format_number(t.delta_q_grid[i]);
        for (std::size_t k = 0; k < t.eigenvalues[i].size(); ++k)
            out << dq << ',' << t.manifold_tags[i][k] << ',' << t.branches[i][k] << ','
                << format_number(t.eigenvalues[i][k]) << '\n';
    }
}

void write_transient_csv(std::ostream& out, const TransientMap& map) {
    out << "delta_q,t,state,population\n";
    for (std::size_t i = 0; i < map.delta_q_grid.size(); ++i) {
        const std::string dq = format_number(map.delta_q_grid[i]);
        for (std::size_t k = 0; k < map.time_grid.size(); ++k) {
            const std::string t = format_number(map.time_grid[k]);
            for (std::size_t s = 0; s < map.states.size(); ++s)
                out << dq << ',' << t << ',' << map.states[s].name() << ','
                    << format_number(map.surfaces[s][i][k]) << '\n';
        }
    }
}

void write_pulse_csv(std::ostream& out, const PulseRecord& rec) {
    out << "t,delta_q,rho_WW,intensity";
    const std::size_t levels = rec.eigenvalue_track.empty() ? 0 : rec.eigenvalue_track.front().size();
    for (std::size_t e = 0; e < levels; ++e) out << ",eig_" << e + 1;
    out << '\n';
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
        out << format_number(rec.times[k]) << ',' << format_number(rec.delta_q[k]) << ','
            << format_number(rec.rho_ww[k]) << ',' << format_number(rec.intensity[k]);
        for (double e : rec.eigenvalue_track[k]) out << ',' << format_number(e);
        out << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t";
    for (const auto& l : traj.basis->labels()) out << ",pop_" << l.name();
    out << ",trace_err,herm_err\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out << format_number(traj.times[k]);
        for (double p : traj.populations[k]) out << ',' << format_number(p);
        out << ',' << format_number(traj.trace_error[k]) << ',' << format_number(traj.herm_error[k]) << '\n';
    }
}

}  // namespace qswitch
