#pragma once

// Run configuration: flat `key = value` text with `#` comments. Layers
// (preset, config file, --set overrides) are parsed into Entries, merged,
// then resolved into a RunSpec with every default materialised.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qswitch/model.hpp"

namespace qswitch {

enum class Command { spectra, transient, switch_sweep, quiescent, estimate, validate };

std::string_view to_string(Command c);
std::optional<Command> parse_command(std::string_view s);

struct RunSpec {
    Command command = Command::validate;
    SystemParams params;
    double delta_c = 0.0;

    // numerics
    int n_max = 2;
    std::optional<int> manifold;
    double dt = 0.0;
    std::size_t sample_stride = 0;

    // spectra / transient grid
    double dq_min = 0.0;
    double dq_max = 0.0;
    std::size_t dq_points = 0;
    double t_max = 0.0;

    // switch schedule: optional hold at dq_start, then linear to dq_end
    double dq_start = 0.0;
    double dq_end = 0.0;
    double sweep_time = 0.0;
    double hold_time = 0.0;

    // quiescent
    double quiescent_time = 0.0;
    double dq_hold = 0.0;

    // estimate (SI)
    double dipole_moment = 0.0;
    double wavelength = 0.0;
    double mode_volume = 0.0;

    bool operator==(const RunSpec&) const = default;
};

struct Entry {
    std::string value;
    int line = 0;
};
using Entries = std::map<std::string, Entry>;

/// Every accepted key, in documentation order.
const std::vector<std::string>& known_keys();

/// Splits text into entries. Unknown keys (with a nearest-key suggestion),
/// lines without '=', non-numeric values and duplicate keys raise ConfigError
/// carrying the line number.
Entries parse_entries(std::string_view text);

/// Applies `key=value` overrides (from --set) on top of `base`.
Entries apply_overrides(Entries base, const std::vector<std::string>& assignments);

/// Fills defaults and validates. Missing required keys are all listed in
/// one ConfigError.
RunSpec resolve(const Entries& entries);

RunSpec parse_config(std::string_view text);

/// Text that parse_config maps back to an equal RunSpec.
std::string to_config_text(const RunSpec& spec);

/// Contents of a shipped preset (fig2, fig3, fig5, table1). Throws ConfigError
/// for unknown names, IoError when the file cannot be read.
std::string load_preset(const std::string& name);

std::string read_text_file(const std::string& path);

}  // namespace qswitch
