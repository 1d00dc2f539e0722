#pragma once

// CSV emitters. Every float goes through format_number so identical runs
// give byte-identical files.

#include <ostream>
#include <string>

#include "qswitch/dynamics.hpp"
#include "qswitch/protocol.hpp"
#include "qswitch/spectra.hpp"

namespace qswitch {

/// Shortest general-format text with at most 12 significant digits; -0 prints as 0.
std::string format_number(double x);

/// delta_q, manifold, branch, energy (one row per level per grid point).
void write_spectrum_csv(std::ostream& out, const SpectrumTable& table);

/// Long format: delta_q, t, state, population.
void write_transient_csv(std::ostream& out, const TransientMap& map);

/// t, delta_q, rho_WW, intensity, eig_1..eig_5.
void write_pulse_csv(std::ostream& out, const PulseRecord& record);

/// t, pop_<label>..., trace_err, herm_err.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace qswitch
