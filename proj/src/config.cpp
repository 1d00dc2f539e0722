#include "qswitch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qswitch/dynamics.hpp"
#include "qswitch/error.hpp"

namespace qswitch {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

const std::vector<std::string> kParamKeys = {"omega_c", "omega_q", "rabi_c", "rabi_q", "kappa_cq", "kappa_qw"};

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

std::optional<double> to_number(std::string_view s) {
    double v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string shortest(double x) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, r.ptr};
}

void check_entry(const std::string& key, const std::string& value, int line) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        std::string best;
        std::size_t best_d = 3;  // only suggest close matches
        for (const auto& k : keys)
            if (auto d = edit_distance(key, k); d < best_d) best_d = d, best = k;
        std::string msg = "unknown key '" + key + "'";
        if (!best.empty()) msg += " (did you mean '" + best + "'?)";
        throw ConfigError(msg, line);
    }
    if (key == "command") {
        if (!parse_command(value))
            throw ConfigError("unknown command '" + value +
                                  "' (expected spectra, transient, switch, quiescent, estimate or validate)",
                              line);
        return;
    }
    if (key == "manifold" && value == "all") return;
    if (!to_number(value)) throw ConfigError("value of '" + key + "' is not a number: '" + value + "'", line);
}

class Resolver {
public:
    explicit Resolver(const Entries& e) : e_(e) {}

    bool has(const std::string& k) const { return e_.count(k) > 0; }

    double num(const std::string& k, double fallback) const {
        auto it = e_.find(k);
        return it == e_.end() ? fallback : *to_number(it->second.value);
    }

    double positive(const std::string& k, double fallback) const {
        const double v = num(k, fallback);
        if (!(v > 0)) throw ConfigError("'" + k + "' must be positive", line(k));
        return v;
    }

    template <class Int>
    Int integer(const std::string& k, Int fallback, Int lo) const {
        auto it = e_.find(k);
        if (it == e_.end()) return fallback;
        const double v = *to_number(it->second.value);
        if (v != std::floor(v) || v < double(lo) || v > 1e9)
            throw ConfigError("'" + k + "' must be an integer >= " + std::to_string(lo), it->second.line);
        return static_cast<Int>(v);
    }

    int line(const std::string& k) const {
        auto it = e_.find(k);
        return it == e_.end() ? 0 : it->second.line;
    }

    const Entries& entries() const { return e_; }

private:
    const Entries& e_;
};

}  // namespace

std::string_view to_string(Command c) {
    switch (c) {
        case Command::spectra: return "spectra";
        case Command::transient: return "transient";
        case Command::switch_sweep: return "switch";
        case Command::quiescent: return "quiescent";
        case Command::estimate: return "estimate";
        case Command::validate: return "validate";
    }
    return "?";
}

std::optional<Command> parse_command(std::string_view s) {
    for (auto c : {Command::spectra, Command::transient, Command::switch_sweep, Command::quiescent,
                   Command::estimate, Command::validate})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k = {"command"};
        k.insert(k.end(), kParamKeys.begin(), kParamKeys.end());
        for (const char* s : {"delta_c", "n_max", "manifold", "dt", "sample_stride", "dq_min", "dq_max",
                              "dq_points", "t_max", "dq_start", "dq_end", "sweep_time", "hold_time",
                              "quiescent_time", "dq_hold", "dipole_moment", "wavelength", "mode_volume"})
            k.emplace_back(s);
        return k;
    }();
    return keys;
}

Entries parse_entries(std::string_view text) {
    Entries out;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("empty key", line_no);
        check_entry(key, value, line_no);
        if (out.count(key))
            throw ConfigError("duplicate key '" + key + "' (first on line " + std::to_string(out[key].line) + ")",
                              line_no);
        out[key] = {value, line_no};
    }
    return out;
}

Entries apply_overrides(Entries base, const std::vector<std::string>& assignments) {
    for (const auto& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + a + "'");
        const std::string key(trim(std::string_view(a).substr(0, eq)));
        const std::string value(trim(std::string_view(a).substr(eq + 1)));
        try {
            check_entry(key, value, 0);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string("--set ") + e.what());
        }
        base[key] = {value, 0};
    }
    return base;
}

RunSpec resolve(const Entries& entries) {
    const Resolver r(entries);

    std::vector<std::string> required = {"command"};
    required.insert(required.end(), kParamKeys.begin(), kParamKeys.end());
    std::optional<Command> cmd;
    if (r.has("command")) cmd = parse_command(entries.at("command").value);
    if (cmd == Command::switch_sweep)
        for (const char* k : {"dq_start", "dq_end", "sweep_time"}) required.emplace_back(k);
    if (cmd == Command::estimate) required.emplace_back("dipole_moment");

    std::vector<std::string> missing;
    for (const auto& k : required)
        if (!r.has(k)) missing.push_back(k);
    if (!missing.empty()) {
        std::string msg = "missing required key(s):";
        for (const auto& k : missing) msg += " " + k;
        msg += " (required for this command:";
        for (const auto& k : required) msg += " " + k;
        throw ConfigError(msg + ")");
    }

    RunSpec s;
    s.command = *cmd;
    auto& p = s.params;
    p.omega_c = r.num("omega_c", 0);
    p.omega_q = r.num("omega_q", 0);
    p.rabi_c = r.num("rabi_c", 0);
    p.rabi_q = r.num("rabi_q", 0);
    p.kappa_cq = r.num("kappa_cq", 0);
    p.kappa_qw = r.num("kappa_qw", 0);
    s.delta_c = r.num("delta_c", 0);

    const bool spectra = s.command == Command::spectra;
    s.n_max = r.integer("n_max", spectra ? 2 : 1, 1);
    if (r.has("manifold") && entries.at("manifold").value != "all")
        s.manifold = r.integer("manifold", 0, 0);
    else if (!r.has("manifold") && !spectra)
        s.manifold = 1;

    const double stable = max_stable_step(p);
    s.dt = r.positive("dt", std::isfinite(stable) ? stable : 0.05);
    s.sample_stride = r.integer<std::size_t>("sample_stride", 0, 0);

    // Default grid: the one-quantum anti-crossing region [-delta - 3W, -delta + 3W].
    const double w = std::max({p.rabi_c, p.rabi_q, 1e-3 * std::max(1.0, std::abs(p.delta()))});
    s.dq_min = r.num("dq_min", -p.delta() - 3 * w);
    s.dq_max = r.num("dq_max", -p.delta() + 3 * w);
    s.dq_points = r.integer<std::size_t>("dq_points", spectra ? 801 : 201, 1);
    if (s.dq_points > 1 && !(s.dq_max > s.dq_min)) throw ConfigError("dq_max must exceed dq_min", r.line("dq_max"));
    const double rabi_scale = p.rabi_c > 0 ? p.rabi_c : 1.0;
    s.t_max = r.positive("t_max", 25 * std::numbers::pi / rabi_scale);

    s.dq_start = r.num("dq_start", 0);
    s.dq_end = r.num("dq_end", 0);
    s.sweep_time = r.has("sweep_time") ? r.positive("sweep_time", 0) : 0.0;
    s.hold_time = r.num("hold_time", 0);
    if (s.hold_time < 0) throw ConfigError("'hold_time' must be non-negative", r.line("hold_time"));

    s.quiescent_time = r.positive("quiescent_time", 2e4 * std::numbers::pi / rabi_scale);
    s.dq_hold = r.num("dq_hold", 0);

    s.dipole_moment = r.has("dipole_moment") ? r.positive("dipole_moment", 0) : 0.0;
    const double omega_si = p.omega_c > 0 ? p.omega_c : 1.0;
    s.wavelength = r.positive("wavelength", 2 * std::numbers::pi * kSpeedOfLight / omega_si);
    s.mode_volume = r.positive("mode_volume", s.wavelength * s.wavelength * s.wavelength);
    return s;
}

RunSpec parse_config(std::string_view text) { return resolve(parse_entries(text)); }

std::string to_config_text(const RunSpec& s) {
    std::ostringstream o;
    auto kv = [&](const char* k, double v) { o << k << " = " << shortest(v) << '\n'; };
    o << "command = " << to_string(s.command) << '\n';
    kv("omega_c", s.params.omega_c);
    kv("omega_q", s.params.omega_q);
    kv("rabi_c", s.params.rabi_c);
    kv("rabi_q", s.params.rabi_q);
    kv("kappa_cq", s.params.kappa_cq);
    kv("kappa_qw", s.params.kappa_qw);
    kv("delta_c", s.delta_c);
    o << "n_max = " << s.n_max << '\n';
    o << "manifold = " << (s.manifold ? std::to_string(*s.manifold) : std::string("all")) << '\n';
    kv("dt", s.dt);
    o << "sample_stride = " << s.sample_stride << '\n';
    kv("dq_min", s.dq_min);
    kv("dq_max", s.dq_max);
    o << "dq_points = " << s.dq_points << '\n';
    kv("t_max", s.t_max);
    kv("dq_start", s.dq_start);
    kv("dq_end", s.dq_end);
    if (s.sweep_time > 0) kv("sweep_time", s.sweep_time);
    kv("hold_time", s.hold_time);
    kv("quiescent_time", s.quiescent_time);
    kv("dq_hold", s.dq_hold);
    if (s.dipole_moment > 0) kv("dipole_moment", s.dipole_moment);
    kv("wavelength", s.wavelength);
    kv("mode_volume", s.mode_volume);
    return o.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string load_preset(const std::string& name) {
    static const std::vector<std::string> presets = {"fig2", "fig3", "fig5", "table1"};
    if (std::find(presets.begin(), presets.end(), name) == presets.end())
        throw ConfigError("unknown preset '" + name + "' (available: fig2, fig3, fig5, table1)");
    return read_text_file(std::string(QSWITCH_PRESET_DIR) + "/" + name + ".cfg");
}

}  // namespace qswitch
