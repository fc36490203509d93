#include "fibercav/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"

namespace fibercav {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v))
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&,
                                  const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"fiber.radius_nm", [](RunConfig& c, const std::string& k,
                               const std::string& v) {
             c.fiber.radius_nm = parse_double(k, v);
         }},
        {"fiber.n1", [](RunConfig& c, const std::string& k,
                        const std::string& v) { c.fiber.n1 = parse_double(k, v); }},
        {"fiber.n2", [](RunConfig& c, const std::string& k,
                        const std::string& v) { c.fiber.n2 = parse_double(k, v); }},
        {"atom.r_nm", [](RunConfig& c, const std::string& k,
                         const std::string& v) { c.atom.r_nm = parse_double(k, v); }},
        {"atom.z_nm", [](RunConfig& c, const std::string& k,
                         const std::string& v) { c.atom.z_nm = parse_double(k, v); }},
        {"atom.q", [](RunConfig& c, const std::string& k,
                      const std::string& v) { c.atom.q = parse_int(k, v); }},
        {"atom.lambda0_nm", [](RunConfig& c, const std::string& k,
                               const std::string& v) {
             c.atom.lambda0_nm = parse_double(k, v);
         }},
        {"atom.gamma0_MHz", [](RunConfig& c, const std::string& k,
                               const std::string& v) {
             c.atom.gamma0_MHz = parse_double(k, v);
         }},
        {"cavity.L_m", [](RunConfig& c, const std::string& k,
                          const std::string& v) { c.cavity.L_m = parse_double(k, v); }},
        {"cavity.R2", [](RunConfig& c, const std::string& k,
                         const std::string& v) { c.cavity.R2 = parse_double(k, v); }},
        {"cavity.phi_R", [](RunConfig& c, const std::string& k,
                            const std::string& v) {
             c.cavity.phi_R = parse_double(k, v);
         }},
        {"cavity.alpha_per_cm", [](RunConfig& c, const std::string& k,
                                   const std::string& v) {
             c.cavity.alpha_per_cm = parse_double(k, v);
         }},
        {"cavity.tune", [](RunConfig& c, const std::string& k,
                           const std::string& v) {
             if (v == "none") c.cavity.tune = TuneMode::none;
             else if (v == "even") c.cavity.tune = TuneMode::even;
             else if (v == "odd") c.cavity.tune = TuneMode::odd;
             else throw ConfigError(k + ": expected none, even, or odd, got '" +
                                    v + "'");
         }},
        {"sim.t_max_gamma0", [](RunConfig& c, const std::string& k,
                                const std::string& v) {
             c.sim.t_max_gamma0 = parse_double(k, v);
         }},
        {"sim.h_auto", [](RunConfig& c, const std::string& k,
                          const std::string& v) { c.sim.h_auto = parse_bool(k, v); }},
        {"sim.h_override", [](RunConfig& c, const std::string& k,
                              const std::string& v) {
             c.sim.h_override = parse_double(k, v);
         }},
        {"sim.oscillation_floor", [](RunConfig& c, const std::string& k,
                                     const std::string& v) {
             c.sim.oscillation_floor = parse_double(k, v);
         }},
        {"output.format", [](RunConfig& c, const std::string& k,
                             const std::string& v) {
             if (v != "csv" && v != "json")
                 throw ConfigError(k + ": expected csv or json, got '" + v + "'");
             c.output.format = v;
         }},
        {"output.path", [](RunConfig& c, const std::string&,
                           const std::string& v) { c.output.path = v; }},
        {"output.precision", [](RunConfig& c, const std::string& k,
                                const std::string& v) {
             c.output.precision = parse_int(k, v);
         }},
        {"output.max_rows", [](RunConfig& c, const std::string& k,
                               const std::string& v) {
             c.output.max_rows = parse_int(k, v);
         }},
    };
    return table;
}

}  // namespace

void RunConfig::validate() const {
    fibercav::validate(make_fiber());
    fibercav::validate(make_atom());
    fibercav::validate(make_cavity());
    if (!(cavity.R2 >= 0.0) || cavity.R2 >= 1.0)
        throw ConfigError("cavity.R2: power reflectivity must lie in [0, 1)");
    if (!(atom.gamma0_MHz > 0.0))
        throw ConfigError("atom.gamma0_MHz: linewidth must be positive");
    if (!(sim.t_max_gamma0 > 0.0))
        throw ConfigError("sim.t_max_gamma0: horizon must be positive");
    if (!sim.h_auto && !(sim.h_override > 0.0))
        throw ConfigError(
            "sim.h_override: explicit step must be positive when sim.h_auto is off");
    if (!(sim.oscillation_floor > 0.0) || sim.oscillation_floor >= 1.0)
        throw ConfigError(
            "sim.oscillation_floor: detection floor must lie in (0, 1)");
    if (output.format != "csv" && output.format != "json")
        throw ConfigError("output.format: expected csv or json");
    if (output.precision < 3 || output.precision > 17)
        throw ConfigError("output.precision: expected 3..17 significant digits");
    if (output.max_rows < 0)
        throw ConfigError("output.max_rows: must be non-negative (0 = unlimited)");
}

FiberSpec RunConfig::make_fiber() const {
    FiberSpec f;
    f.a_nm = fiber.radius_nm;
    f.n1 = fiber.n1;
    f.n2 = fiber.n2;
    return f;
}

AtomSpec RunConfig::make_atom() const {
    AtomSpec a;
    a.r_nm = atom.r_nm;
    a.z_nm = atom.z_nm;
    a.q = atom.q;
    a.lambda0_nm = atom.lambda0_nm;
    a.gamma0_phys = 2.0 * pi * atom.gamma0_MHz * 1e6;
    return a;
}

CavitySpec RunConfig::make_cavity() const {
    CavitySpec cav;
    cav.L_m = cavity.L_m;
    cav.R_mag = std::sqrt(cavity.R2);
    cav.phi_R = cavity.phi_R;
    cav.alpha_per_cm = cavity.alpha_per_cm;
    return cav;
}

Scene solve_scene(const RunConfig& config) {
    config.validate();
    Scene scene;
    scene.fiber = config.make_fiber();
    scene.atom = config.make_atom();
    scene.cavity = config.make_cavity();
    scene.mode = solve_fundamental(scene.fiber, config.atom.lambda0_nm);
    if (config.cavity.tune != TuneMode::none) {
        const TuneParity parity = config.cavity.tune == TuneMode::even
                                      ? TuneParity::even
                                      : TuneParity::odd;
        scene.cavity.L_m =
            tune_length(scene.mode, scene.cavity, scene.atom.q, parity);
    }
    scene.rates = rate_report(scene.fiber, scene.mode, scene.atom);
    scene.report =
        overdamped_report(scene.mode, scene.atom, scene.cavity, scene.rates);
    return scene;
}

void apply_config_entry(RunConfig& config, const std::string& entry) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
        throw ConfigError("expected key=value, got '" + entry + "'");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end())
        throw ConfigError("unknown configuration key '" + key + "'");
    it->second(config, key, value);
}

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            apply_config_entry(config, line);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " +
                              e.what());
        }
    }
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& kv : setters()) keys.push_back(kv.first);
    return keys;
}

}  // namespace fibercav
