#include "fibercav/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fibercav/config.hpp"
#include "fibercav/constants.hpp"
#include "fibercav/decay_engine.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/figures.hpp"
#include "fibercav/single_mode.hpp"
#include "fibercav/table.hpp"

namespace fibercav {

namespace {

struct SweepSpec {
    std::string param;  // a | r | z | R2
    double from = 0.0;
    double to = 0.0;
    int points = 0;
};

ResultTable cmd_modes(const RunConfig& cfg, int profile_points) {
    const FiberSpec fiber = cfg.make_fiber();
    const GuidedModeSolution mode =
        solve_fundamental(fiber, cfg.atom.lambda0_nm);
    const auto [A_eff_um2, r_eff_nm] = effective_area(mode, fiber);
    const double k = mode.omega / c_light;

    ResultTable table;
    table.add_param("fiber.radius_nm", cfg.fiber.radius_nm);
    table.add_param("fiber.n1", cfg.fiber.n1);
    table.add_param("fiber.n2", cfg.fiber.n2);
    table.add_param("atom.lambda0_nm", cfg.atom.lambda0_nm);

    if (profile_points <= 0) {
        table.columns = {{"beta", "1/m"},
                         {"beta_per_k", "1"},
                         {"v_g", "m/s"},
                         {"A_eff", "um2"},
                         {"r_eff", "nm"}};
        table.rows.push_back(
            {mode.beta, mode.beta / k, mode.v_g, A_eff_um2, r_eff_nm});
        return table;
    }

    if (profile_points < 2)
        throw ConfigError("--profile needs at least 2 samples");
    table.add_param("profile.samples", static_cast<double>(profile_points));
    table.columns = {{"r", "nm"},
                     {"abs_e_r", "1/m"},
                     {"abs_e_phi", "1/m"},
                     {"abs_e_z", "1/m"}};
    const double r_max_nm = cfg.fiber.radius_nm + 600.0;
    for (int i = 0; i < profile_points; ++i) {
        const double r_nm = 1.0 + (r_max_nm - 1.0) * static_cast<double>(i) /
                                      static_cast<double>(profile_points - 1);
        const EVec e = guided_profile(mode, fiber, 1, 1, r_nm);
        table.rows.push_back(
            {r_nm, std::abs(e.e_r), std::abs(e.e_phi), std::abs(e.e_z)});
    }
    return table;
}

void push_scene_rates(ResultTable& table, double abscissa, bool has_abscissa,
                      const Scene& scene) {
    std::vector<double> row;
    if (has_abscissa) row.push_back(abscissa);
    row.insert(row.end(),
               {scene.report.gamma_cavgyd, scene.rates.gamma_rad,
                scene.report.Gamma_total, scene.report.eta, scene.report.G0,
                scene.rates.gamma_gyd});
    table.rows.push_back(std::move(row));
}

void set_rates_columns(ResultTable& table, const std::string& abscissa,
                       const std::string& unit) {
    if (!abscissa.empty()) table.columns.push_back({abscissa, unit});
    table.columns.insert(table.columns.end(), {{"gamma_cavgyd", "gamma0"},
                                               {"gamma_rad", "gamma0"},
                                               {"Gamma", "gamma0"},
                                               {"eta", "1"},
                                               {"G0", "1"},
                                               {"gamma_gyd", "gamma0"}});
}

std::vector<double> sweep_values(const SweepSpec& sweep) {
    std::vector<double> xs(sweep.points);
    for (int i = 0; i < sweep.points; ++i)
        xs[i] = sweep.from + (sweep.to - sweep.from) * static_cast<double>(i) /
                                 static_cast<double>(sweep.points - 1);
    return xs;
}

ResultTable cmd_rates(const RunConfig& cfg, const SweepSpec& sweep) {
    ResultTable table;
    if (sweep.param.empty()) {
        const Scene scene = solve_scene(cfg);
        table.add_param("cavity.L_m", scene.cavity.L_m, 12);
        table.add_param("cavity.Phi0_rad", scene.report.Phi0, 12);
        set_rates_columns(table, "", "");
        push_scene_rates(table, 0.0, false, scene);
        return table;
    }

    if (sweep.points < 2) throw ConfigError("--points must be at least 2");
    const std::vector<double> xs = sweep_values(sweep);
    std::vector<Scene> scenes(xs.size());

    const auto solve_point = [&](const RunConfig& point, std::size_t i) {
        scenes[i] = solve_scene(point);
    };

    if (sweep.param == "R2" || sweep.param == "z") {
        // the mode and the position-free rates do not change along these
        // sweeps; reuse one solution and move only the enhancement factor
        const Scene base = solve_scene(cfg);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Scene scene = base;
            if (sweep.param == "R2") {
                if (!(xs[i] >= 0.0) || xs[i] >= 1.0)
                    throw ConfigError("swept cavity.R2 left [0, 1)");
                scene.cavity.R_mag = std::sqrt(xs[i]);
            } else {
                scene.atom.z_nm = xs[i];
            }
            scene.report = overdamped_report(scene.mode, scene.atom,
                                             scene.cavity, scene.rates);
            scenes[i] = std::move(scene);
        }
    } else if (sweep.param == "r") {
        RunConfig point = cfg;
        std::vector<RunConfig> points(xs.size(), point);
        for (std::size_t i = 0; i < xs.size(); ++i)
            points[i].atom.r_nm = xs[i];
        // independent positions may solve concurrently
        std::vector<std::future<void>> futures;
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < std::min<std::size_t>(hw, xs.size()); ++w)
            futures.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < xs.size(); i = next++)
                    solve_point(points[i], i);
            }));
        for (auto& f : futures) f.get();
    } else if (sweep.param == "a") {
        // the atom keeps its distance to the surface while the radius sweeps
        const double gap_nm = cfg.atom.r_nm - cfg.fiber.radius_nm;
        std::vector<RunConfig> points(xs.size(), cfg);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            points[i].fiber.radius_nm = xs[i];
            points[i].atom.r_nm = xs[i] + gap_nm;
        }
        std::vector<std::future<void>> futures;
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < std::min<std::size_t>(hw, xs.size()); ++w)
            futures.push_back(std::async(std::launch::async, [&] {
                for (std::size_t i = next++; i < xs.size(); i = next++)
                    solve_point(points[i], i);
            }));
        for (auto& f : futures) f.get();
    } else {
        throw ConfigError("unknown sweep parameter '" + sweep.param + "'");
    }

    table.add_param("sweep.param", sweep.param);
    table.add_param("sweep.from", sweep.from);
    table.add_param("sweep.to", sweep.to);
    table.add_param("sweep.points", static_cast<double>(sweep.points));
    const std::string unit = sweep.param == "R2" ? "1" : "nm";
    set_rates_columns(table, sweep.param, unit);
    for (std::size_t i = 0; i < xs.size(); ++i)
        push_scene_rates(table, xs[i], true, scenes[i]);
    return table;
}

void thin_trace_rows(ResultTable& table, int max_rows) {
    if (max_rows <= 0 ||
        table.rows.size() <= static_cast<std::size_t>(max_rows))
        return;
    const std::size_t n = table.rows.size();
    const std::size_t stride =
        (n + static_cast<std::size_t>(max_rows) - 1) /
        static_cast<std::size_t>(max_rows);
    std::vector<std::vector<double>> kept;
    for (std::size_t i = 0; i < n; i += stride) kept.push_back(table.rows[i]);
    if ((n - 1) % stride != 0) kept.push_back(table.rows[n - 1]);
    table.rows = std::move(kept);
    table.add_param("output.thinning_stride", static_cast<double>(stride));
}

ResultTable cmd_decay(const RunConfig& cfg) {
    const Scene scene = solve_scene(cfg);
    const DelayParams params =
        make_delay_params(scene.mode, scene.atom, scene.cavity, scene.rates);
    const double h_override = cfg.sim.h_auto ? 0.0 : cfg.sim.h_override;
    const DecayTrace trace =
        simulate_decay(params, cfg.sim.t_max_gamma0, h_override);
    const OscillationReport osc =
        detect_oscillations(trace, cfg.sim.oscillation_floor);

    ResultTable table;
    table.add_param("cavity.L_m", scene.cavity.L_m, 12);
    table.add_param("cavity.Phi0_rad", scene.report.Phi0, 12);
    table.add_param("rates.gamma_gyd_gamma0", scene.rates.gamma_gyd);
    table.add_param("rates.gamma_rad_gamma0", scene.rates.gamma_rad);
    table.add_param("delay.tau_L_gamma0", params.tau_L, 12);
    table.add_param("delay.step_gamma0", trace.step, 12);
    table.add_param("oscillations.minima_count",
                    static_cast<double>(osc.minima_count));
    table.add_param("oscillations.first_minimum_t_gamma0", osc.first_minimum_t);
    table.add_param("oscillations.period_gamma0", osc.period);
    table.add_param("oscillations.resolved", osc.resolved ? "true" : "false");

    const double to_us = 1e6 / scene.atom.gamma0_phys;
    table.columns = {{"t", "1/gamma0"},
                     {"t_us", "us"},
                     {"re_C", "1"},
                     {"im_C", "1"},
                     {"P", "1"}};
    table.rows.reserve(trace.t.size());
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        table.rows.push_back({trace.t[k], trace.t[k] * to_us,
                              trace.amplitude[k].real(),
                              trace.amplitude[k].imag(),
                              trace.population[k]});
    }
    thin_trace_rows(table, cfg.output.max_rows);
    return table;
}

std::string cmd_singlemode(const RunConfig& cfg) {
    const Scene scene = solve_scene(cfg);
    const SingleModeReport rep =
        single_mode_params(scene.mode, scene.atom, scene.cavity, scene.rates);
    const CriticalLengths lengths = critical_lengths(
        scene.mode, scene.atom, scene.rates, scene.cavity.R_mag);
    const SingleModeImpact impact = overdamped_impact(
        scene.cavity.R_mag, scene.mode.beta * scene.atom.z_nm * 1e-9,
        rep.m_index);

    nlohmann::ordered_json doc;
    auto& params = doc["params"] = nlohmann::ordered_json::object();
    params["fiber.radius_nm"] = cfg.fiber.radius_nm;
    params["atom.r_nm"] = cfg.atom.r_nm;
    params["atom.z_nm"] = cfg.atom.z_nm;
    params["atom.q"] = cfg.atom.q;
    params["atom.gamma0_MHz"] = cfg.atom.gamma0_MHz;
    params["cavity.L_m"] = scene.cavity.L_m;
    params["cavity.R2"] = cfg.cavity.R2;

    doc["m_index"] = rep.m_index;
    doc["Delta_gamma0"] = rep.Delta;
    doc["kappa_gamma0"] = rep.kappa;
    doc["Omega_gamma0"] = rep.Omega;
    doc["gamma_gamma0"] = rep.gamma;
    doc["Lambda_re_gamma0"] = rep.Lambda.real();
    doc["Lambda_im_gamma0"] = rep.Lambda.imag();
    doc["finesse"] = rep.finesse;
    // gamma0_MHz is a cycle frequency, so multiplying the dimensionless
    // ratios by it gives MHz in cycles as well
    doc["Omega_MHz"] = rep.Omega * cfg.atom.gamma0_MHz;
    doc["kappa_MHz"] = rep.kappa * cfg.atom.gamma0_MHz;
    doc["Delta_MHz"] = rep.Delta * cfg.atom.gamma0_MHz;

    if (std::isinf(lengths.L1)) {
        doc["L1_m"] = nullptr;
        doc["L1_reason"] =
            "atom at a standing-wave node: no length reaches strong coupling";
    } else {
        doc["L1_m"] = lengths.L1;
    }
    doc["L2_m"] = lengths.L2;
    doc["L3_m"] = lengths.L3;

    doc["regime"] = regime_name(rep.regime.regime);
    doc["ratio_strong"] = rep.regime.ratio_strong;
    doc["ratio_overdamped"] = rep.regime.ratio_overdamped;
    doc["ratio_free"] = rep.regime.ratio_free;
    doc["G0"] = impact.G0;
    doc["G_max"] = impact.G_max;
    doc["G_min"] = impact.G_min;
    return doc.dump(1) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"spontaneous emission of an atom near a mirrored nanofiber"};
    app.require_subcommand(1);
    // global options may appear after the subcommand name
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string format;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "configuration file (key = value lines)");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--set", sets, "override one key, e.g. fiber.radius_nm=250")
        ->take_all();

    CLI::App* modes = app.add_subcommand("modes", "guided mode summary");
    int profile_points = 0;
    modes->add_option("--profile", profile_points,
                      "emit the field profile with this many radial samples");

    CLI::App* rates = app.add_subcommand("rates", "emission rates and channeling");
    SweepSpec sweep;
    rates->add_option("--sweep", sweep.param, "sweep parameter: a, r, z, or R2")
        ->check(CLI::IsMember({"a", "r", "z", "R2"}));
    rates->add_option("--from", sweep.from, "sweep start");
    rates->add_option("--to", sweep.to, "sweep end");
    rates->add_option("--points", sweep.points, "sweep sample count");

    CLI::App* decay = app.add_subcommand("decay", "population decay trace");
    CLI::App* singlemode =
        app.add_subcommand("singlemode", "reduced single-mode description (JSON)");
    CLI::App* figure = app.add_subcommand("figure", "prebound figure data");
    std::string figure_id;
    figure->add_option("id", figure_id, "figure identifier, e.g. 2a or 10f")
        ->required();

    std::vector<const char*> argv;
    argv.push_back("fibercav");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        for (const std::string& s : sets) apply_config_entry(cfg, s);
        if (!format.empty()) cfg.output.format = format;
        if (!out_path.empty()) cfg.output.path = out_path;
        cfg.validate();

        std::string json_object;
        ResultTable table;
        if (modes->parsed()) {
            table = cmd_modes(cfg, profile_points);
        } else if (rates->parsed()) {
            table = cmd_rates(cfg, sweep);
        } else if (decay->parsed()) {
            table = cmd_decay(cfg);
        } else if (singlemode->parsed()) {
            json_object = cmd_singlemode(cfg);
        } else if (figure->parsed()) {
            table = figure_table(figure_id, cfg);
        }

        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!cfg.output.path.empty()) {
            file.open(cfg.output.path);
            if (!file)
                throw ConfigError("cannot open output path '" +
                                  cfg.output.path + "'");
            out = &file;
        }
        if (!json_object.empty()) {
            *out << json_object;
        } else {
            write_table(*out, table, cfg.output.format, cfg.output.precision);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IntegratorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace fibercav
