#include "fibercav/figures.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "fibercav/constants.hpp"
#include "fibercav/decay_engine.hpp"
#include "fibercav/errors.hpp"

namespace fibercav {

namespace {

// Runs fn(0..n-1) on a bounded pool.  Results must be written to
// preallocated slots so the emitted order stays the sweep order regardless
// of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(hw, n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < n; i = next++) fn(i);
        }));
    }
    for (auto& f : futures) f.get();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = lo + (hi - lo) * static_cast<double>(i) /
                         static_cast<double>(n - 1);
    return xs;
}

const char* tune_name(TuneMode t) {
    switch (t) {
        case TuneMode::none: return "none";
        case TuneMode::even: return "even";
        case TuneMode::odd: return "odd";
    }
    return "none";
}

void record_scene(ResultTable& table, const RunConfig& cfg,
                  const Scene& scene) {
    table.add_param("fiber.radius_nm", cfg.fiber.radius_nm);
    table.add_param("fiber.n1", cfg.fiber.n1);
    table.add_param("fiber.n2", cfg.fiber.n2);
    table.add_param("atom.r_nm", cfg.atom.r_nm);
    table.add_param("atom.z_nm", cfg.atom.z_nm);
    table.add_param("atom.q", static_cast<double>(cfg.atom.q));
    table.add_param("atom.lambda0_nm", cfg.atom.lambda0_nm);
    table.add_param("atom.gamma0_MHz", cfg.atom.gamma0_MHz);
    table.add_param("cavity.L_m", scene.cavity.L_m, 12);
    table.add_param("cavity.R2", cfg.cavity.R2);
    table.add_param("cavity.phi_R", cfg.cavity.phi_R);
    table.add_param("cavity.alpha_per_cm", cfg.cavity.alpha_per_cm);
    table.add_param("cavity.tune", tune_name(cfg.cavity.tune));
    table.add_param("mode.beta_per_m", scene.mode.beta, 12);
    table.add_param("mode.v_g_m_per_s", scene.mode.v_g);
    table.add_param("rates.gamma_gyd_gamma0", scene.rates.gamma_gyd);
    table.add_param("rates.gamma_rad_gamma0", scene.rates.gamma_rad);
    table.add_param("cavity.Phi0_rad", scene.report.Phi0, 12);
    table.add_param("cavity.G0", scene.report.G0);
}

// cut every table that came from a dense trace down to the configured row
// budget, keeping first and last samples
void thin_rows(ResultTable& table, int max_rows) {
    if (max_rows <= 0 ||
        table.rows.size() <= static_cast<std::size_t>(max_rows))
        return;
    const std::size_t n = table.rows.size();
    const std::size_t stride =
        (n + static_cast<std::size_t>(max_rows) - 1) /
        static_cast<std::size_t>(max_rows);
    std::vector<std::vector<double>> kept;
    kept.reserve(n / stride + 2);
    for (std::size_t i = 0; i < n; i += stride) kept.push_back(table.rows[i]);
    if ((n - 1) % stride != 0) kept.push_back(table.rows[n - 1]);
    table.rows = std::move(kept);
    table.add_param("output.thinning_stride", static_cast<double>(stride));
}

// Figures sharing the layout "total rate and its parts, or the channeling
// efficiency, against one geometric abscissa".
void push_rate_row(ResultTable& table, double abscissa, const Scene& scene,
                   bool eta_only) {
    if (eta_only) {
        table.rows.push_back({abscissa, scene.report.eta});
    } else {
        table.rows.push_back({abscissa, scene.report.Gamma_total,
                              scene.report.gamma_cavgyd,
                              scene.rates.gamma_rad});
    }
}

void set_rate_columns(ResultTable& table, const std::string& name,
                      const std::string& unit, bool eta_only) {
    if (eta_only) {
        table.columns = {{name, unit}, {"eta", "1"}};
    } else {
        table.columns = {{name, unit},
                         {"Gamma", "gamma0"},
                         {"gamma_cavgyd", "gamma0"},
                         {"gamma_rad", "gamma0"}};
    }
}

// reflectivity sweep at fixed geometry: the rates are computed once and only
// the enhancement factor varies
ResultTable sweep_reflectivity(const RunConfig& base, bool eta_only) {
    RunConfig cfg = base;
    cfg.fiber.radius_nm = 200.0;
    cfg.atom.r_nm = 200.0;
    cfg.atom.z_nm = 0.0;
    cfg.atom.q = 1;
    cfg.atom.lambda0_nm = 852.0;
    cfg.cavity.tune = TuneMode::even;
    const Scene scene = solve_scene(cfg);

    ResultTable table;
    record_scene(table, cfg, scene);
    table.add_param("sweep", "cavity.R2 0..0.99, 100 points");
    set_rate_columns(table, "R2", "1", eta_only);

    const double beta_z = scene.mode.beta * scene.atom.z_nm * 1e-9;
    for (const double R2 : linspace(0.0, 0.99, 100)) {
        const double G0 =
            impact_factor(scene.report.Phi0, std::sqrt(R2), beta_z);
        const double cav = scene.rates.gamma_gyd * G0;
        const double total = cav + scene.rates.gamma_rad;
        if (eta_only) {
            table.rows.push_back({R2, cav / total});
        } else {
            table.rows.push_back({R2, total, cav, scene.rates.gamma_rad});
        }
    }
    return table;
}

// fiber radius sweep with the atom kept on the surface
ResultTable sweep_fiber_radius(const RunConfig& base, bool eta_only) {
    RunConfig cfg = base;
    cfg.atom.z_nm = 0.0;
    cfg.atom.q = 1;
    cfg.atom.lambda0_nm = 852.0;
    cfg.cavity.R2 = 0.9;
    cfg.cavity.tune = TuneMode::even;

    const std::vector<double> radii = linspace(100.0, 400.0, 121);
    std::vector<Scene> scenes(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) {
        RunConfig point = cfg;
        point.fiber.radius_nm = radii[i];
        point.atom.r_nm = radii[i];
        scenes[i] = solve_scene(point);
    });

    ResultTable table;
    record_scene(table, cfg, scenes.front());
    table.add_param("sweep", "fiber.radius_nm 100..400 (atom on surface), 121 points");
    set_rate_columns(table, "a", "nm", eta_only);
    for (std::size_t i = 0; i < radii.size(); ++i)
        push_rate_row(table, radii[i], scenes[i], eta_only);
    return table;
}

// axial sweep: rates are position-independent along z, only the standing
// wave factor moves
ResultTable sweep_axial(const RunConfig& base, int q, TuneMode tune,
                        bool eta_only) {
    RunConfig cfg = base;
    cfg.fiber.radius_nm = 200.0;
    cfg.atom.r_nm = 200.0;
    cfg.atom.z_nm = 0.0;
    cfg.atom.q = q;
    cfg.atom.lambda0_nm = 852.0;
    cfg.cavity.R2 = 0.9;
    cfg.cavity.tune = tune;
    const Scene scene = solve_scene(cfg);

    ResultTable table;
    record_scene(table, cfg, scene);
    table.add_param("sweep", "atom.z_nm -400..400, 161 points");
    set_rate_columns(table, "z", "nm", eta_only);

    for (const double z_nm : linspace(-400.0, 400.0, 161)) {
        const double G = impact_factor(scene.report.Phi0, scene.cavity.R_mag,
                                       scene.mode.beta * z_nm * 1e-9);
        const double cav = scene.rates.gamma_gyd * G;
        const double total = cav + scene.rates.gamma_rad;
        if (eta_only) {
            table.rows.push_back({z_nm, cav / total});
        } else {
            table.rows.push_back({z_nm, total, cav, scene.rates.gamma_rad});
        }
    }
    return table;
}

// radial sweep away from the surface at a fixed axial position
ResultTable sweep_radial(const RunConfig& base, int q, TuneMode tune,
                         double z_nm, bool eta_only) {
    RunConfig cfg = base;
    cfg.fiber.radius_nm = 200.0;
    cfg.atom.z_nm = z_nm;
    cfg.atom.q = q;
    cfg.atom.lambda0_nm = 852.0;
    cfg.cavity.R2 = 0.9;
    cfg.cavity.tune = tune;

    const std::vector<double> rs = linspace(200.0, 800.0, 121);
    std::vector<Scene> scenes(rs.size());
    parallel_for(rs.size(), [&](std::size_t i) {
        RunConfig point = cfg;
        point.atom.r_nm = rs[i];
        scenes[i] = solve_scene(point);
    });

    ResultTable table;
    record_scene(table, cfg, scenes.front());
    table.add_param("sweep", "atom.r_nm 200..800, 121 points");
    set_rate_columns(table, "r", "nm", eta_only);
    for (std::size_t i = 0; i < rs.size(); ++i)
        push_rate_row(table, rs[i], scenes[i], eta_only);
    return table;
}

// quarter-wavelength axial offset used by the radial sweeps of the
// axial-dipole figures
double quarter_wave_z_nm(const GuidedModeSolution& mode) {
    return 0.5 * pi / mode.beta * 1e9;
}

// population decay for one pinned cavity; adds the cavity-free exponential
// for comparison
ResultTable decay_figure(const RunConfig& base, double L_m, TuneMode tune,
                         double alpha_per_cm, double t_max, double r_nm) {
    RunConfig cfg = base;
    cfg.fiber.radius_nm = 200.0;
    cfg.atom.r_nm = r_nm;
    cfg.atom.z_nm = 0.0;
    cfg.atom.q = 1;
    cfg.atom.lambda0_nm = 852.0;
    cfg.atom.gamma0_MHz = 5.2;
    cfg.cavity.L_m = L_m;
    cfg.cavity.R2 = 0.9;
    cfg.cavity.alpha_per_cm = alpha_per_cm;
    cfg.cavity.tune = tune;
    const Scene scene = solve_scene(cfg);

    const DelayParams params =
        make_delay_params(scene.mode, scene.atom, scene.cavity, scene.rates);
    const double h_override = cfg.sim.h_auto ? 0.0 : cfg.sim.h_override;
    const DecayTrace trace = simulate_decay(params, t_max, h_override);

    ResultTable table;
    record_scene(table, cfg, scene);
    table.add_param("delay.tau_L_gamma0", params.tau_L, 12);
    table.add_param("delay.step_gamma0", trace.step, 12);
    table.add_param("sim.t_max_gamma0", t_max);
    const double gamma = scene.rates.gamma_total_free;
    const double to_us = 1e6 / scene.atom.gamma0_phys;
    table.columns = {{"t", "1/gamma0"},
                     {"t_us", "us"},
                     {"P", "1"},
                     {"P_free", "1"}};
    table.rows.reserve(trace.t.size());
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        table.rows.push_back({trace.t[k], trace.t[k] * to_us,
                              trace.population[k],
                              std::exp(-gamma * trace.t[k])});
    }
    thin_rows(table, base.output.max_rows);
    return table;
}

// decay at three atom-to-surface gaps on a common time grid
ResultTable distance_decay_figure(const RunConfig& base) {
    const double gaps_nm[3] = {0.0, 50.0, 100.0};
    RunConfig cfg = base;
    cfg.fiber.radius_nm = 200.0;
    cfg.atom.z_nm = 0.0;
    cfg.atom.q = 1;
    cfg.atom.lambda0_nm = 852.0;
    cfg.atom.gamma0_MHz = 5.2;
    cfg.cavity.L_m = 0.1;
    cfg.cavity.R2 = 0.9;
    cfg.cavity.tune = TuneMode::even;
    const double t_max = 2.0;

    std::vector<Scene> scenes(3);
    parallel_for(3, [&](std::size_t i) {
        RunConfig point = cfg;
        point.atom.r_nm = cfg.fiber.radius_nm + gaps_nm[i];
        scenes[i] = solve_scene(point);
    });

    // the surface trace has the fastest dynamics; reuse its automatic step
    // for the others so all traces share one grid
    std::vector<DelayParams> params(3);
    for (int i = 0; i < 3; ++i)
        params[i] = make_delay_params(scenes[i].mode, scenes[i].atom,
                                      scenes[i].cavity, scenes[i].rates);
    const DecayTrace lead = simulate_decay(params[0], t_max, 0.0);
    std::vector<DecayTrace> traces(3);
    traces[0] = lead;
    parallel_for(2, [&](std::size_t i) {
        traces[i + 1] = simulate_decay(params[i + 1], t_max, lead.step);
    });

    ResultTable table;
    record_scene(table, cfg, scenes.front());
    table.add_param("gaps_nm", "0, 50, 100");
    table.add_param("delay.step_gamma0", lead.step, 12);
    table.add_param("sim.t_max_gamma0", t_max);
    const double to_us = 1e6 / scenes[0].atom.gamma0_phys;
    table.columns = {{"t", "1/gamma0"},
                     {"t_us", "us"},
                     {"P_gap0nm", "1"},
                     {"P_gap50nm", "1"},
                     {"P_gap100nm", "1"}};
    table.rows.reserve(lead.t.size());
    for (std::size_t k = 0; k < lead.t.size(); ++k) {
        table.rows.push_back({lead.t[k], lead.t[k] * to_us,
                              traces[0].population[k], traces[1].population[k],
                              traces[2].population[k]});
    }
    thin_rows(table, base.output.max_rows);
    return table;
}

}  // namespace

std::vector<std::string> figure_ids() {
    return {"2a", "2b", "3a",  "3b",  "4a",  "4b",  "5a",  "5b",
            "6a", "6b", "7a",  "7b",  "8a",  "8b",  "9a",  "9b",
            "10a", "10b", "10c", "10d", "10e", "10f", "11"};
}

ResultTable figure_table(const std::string& id, const RunConfig& base) {
    ResultTable table;
    if (id == "2a") table = sweep_reflectivity(base, false);
    else if (id == "3a") table = sweep_reflectivity(base, true);
    else if (id == "2b") table = sweep_fiber_radius(base, false);
    else if (id == "3b") table = sweep_fiber_radius(base, true);
    else if (id == "4a") table = sweep_axial(base, 1, TuneMode::even, false);
    else if (id == "5a") table = sweep_axial(base, 1, TuneMode::even, true);
    else if (id == "4b") table = sweep_radial(base, 1, TuneMode::even, 0.0, false);
    else if (id == "5b") table = sweep_radial(base, 1, TuneMode::even, 0.0, true);
    // the axial-dipole figures keep the cavity length family of the
    // transverse-dipole ones; the polarization phase flip turns that into an
    // odd crossing phase, putting the standing-wave antinode a quarter
    // wavelength off center
    else if (id == "6a") table = sweep_axial(base, 0, TuneMode::odd, false);
    else if (id == "7a") table = sweep_axial(base, 0, TuneMode::odd, true);
    else if (id == "6b" || id == "7b") {
        RunConfig probe = base;
        probe.fiber.radius_nm = 200.0;
        probe.atom.lambda0_nm = 852.0;
        const GuidedModeSolution mode =
            solve_fundamental(probe.make_fiber(), probe.atom.lambda0_nm);
        table = sweep_radial(base, 0, TuneMode::odd, quarter_wave_z_nm(mode),
                             id == "7b");
    }
    else if (id == "8a") table = decay_figure(base, 0.2, TuneMode::even, 0.0, 2.0, 200.0);
    else if (id == "8b") table = decay_figure(base, 0.2, TuneMode::odd, 0.0, 2.0, 200.0);
    else if (id == "9a") table = decay_figure(base, 0.002, TuneMode::even, 0.0, 2.0, 200.0);
    else if (id == "9b") table = decay_figure(base, 0.002, TuneMode::odd, 0.0, 2.0, 200.0);
    else if (id == "10a") table = decay_figure(base, 100.0, TuneMode::even, 1e-5, 3.0, 200.0);
    else if (id == "10b") table = decay_figure(base, 10.0, TuneMode::even, 1e-5, 3.0, 200.0);
    else if (id == "10c") table = decay_figure(base, 1.0, TuneMode::even, 1e-5, 3.0, 200.0);
    else if (id == "10d") table = decay_figure(base, 0.1, TuneMode::even, 0.0, 2.0, 200.0);
    else if (id == "10e") table = decay_figure(base, 0.01, TuneMode::even, 0.0, 1.0, 200.0);
    else if (id == "10f") table = decay_figure(base, 0.001, TuneMode::even, 0.0, 0.4, 200.0);
    else if (id == "11") table = distance_decay_figure(base);
    else throw ConfigError("unknown figure id '" + id + "'");

    table.params.insert(table.params.begin(), {"figure", id});
    return table;
}

}  // namespace fibercav
