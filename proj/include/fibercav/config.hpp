#pragma once

#include <string>
#include <vector>

#include "fibercav/cavity_response.hpp"
#include "fibercav/emission_rates.hpp"
#include "fibercav/fiber_modes.hpp"

namespace fibercav {

// How (and whether) the cavity length is adjusted to sit on a resonance of
// the requested parity before anything else is computed.
enum class TuneMode { none, even, odd };

// Flat configuration mirrored one-to-one onto dotted keys in config files
// and --set overrides (fiber.radius_nm = 200 and so on).
struct RunConfig {
    struct {
        double radius_nm = 200.0;
        double n1 = 1.45;
        double n2 = 1.0;
    } fiber;
    struct {
        double r_nm = 200.0;
        double z_nm = 0.0;
        int q = 1;
        double lambda0_nm = 852.0;
        double gamma0_MHz = 5.2;  // free-space linewidth, cycles
    } atom;
    struct {
        double L_m = 0.2;
        double R2 = 0.9;  // power reflectivity of one mirror
        double phi_R = 0.0;
        double alpha_per_cm = 0.0;
        TuneMode tune = TuneMode::even;
    } cavity;
    struct {
        double t_max_gamma0 = 2.0;
        bool h_auto = true;
        double h_override = 0.0;
        double oscillation_floor = 1e-4;
    } sim;
    struct {
        std::string format = "csv";  // csv | json
        std::string path;            // empty = stdout
        int precision = 9;
        int max_rows = 4000;  // trace thinning bound, 0 = unlimited
    } output;

    // throws ConfigError naming the offending field
    void validate() const;

    // conversions to the library's parameter structs
    FiberSpec make_fiber() const;
    AtomSpec make_atom() const;
    CavitySpec make_cavity() const;
};

// One configuration solved end to end: the guided mode, the cavity with any
// requested length tuning applied, the free-space rates at the atom's
// position, and the rate-equation summary.
struct Scene {
    FiberSpec fiber;
    AtomSpec atom;
    CavitySpec cavity;
    GuidedModeSolution mode;
    RateReport rates;
    CavityReport report;
};

Scene solve_scene(const RunConfig& config);

// Applies "key = value" assignments from a config file.  '#' starts a
// comment; blank lines are skipped.  Unknown keys and malformed values throw
// ConfigError.
void apply_config_file(RunConfig& config, const std::string& path);

// Applies one "key=value" assignment, as given to --set.
void apply_config_entry(RunConfig& config, const std::string& entry);

// every accepted dotted key, for diagnostics
std::vector<std::string> config_keys();

}  // namespace fibercav
