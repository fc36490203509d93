#include "fibercav/decay_engine.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <vector>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"

namespace fibercav {

namespace {

using cplx = std::complex<double>;

constexpr double kCoeffCutoff = 1e-15;  // drop reflection orders below this
constexpr int kMaxPartitionOrder = 48;

// one retarded term of the decay equation
struct DelayTerm {
    double delay;
    cplx coeff;
};

// Retarded terms with delays up to horizon, weakest reflections dropped.
// Even orders carry e^{2n i Phi0}; odd orders split into the two mirror
// paths with the extra position phases e^{+-2 i beta0_z}.
std::vector<DelayTerm> build_terms(const DelayParams& p, double horizon) {
    std::vector<DelayTerm> terms;
    if (p.R_mag <= 0.0) return terms;

    const cplx i_unit(0.0, 1.0);
    const cplx phase_plus = std::exp(2.0 * i_unit * p.beta0_z);
    const cplx phase_minus = std::exp(-2.0 * i_unit * p.beta0_z);

    // even reflection orders 2n, n >= 1
    double R_pow = p.R_mag * p.R_mag;
    for (int n = 1;; ++n) {
        const double delay = 2.0 * n * p.tau_L;
        if (R_pow < kCoeffCutoff || delay > horizon) break;
        const cplx phase = std::exp(2.0 * n * i_unit * p.Phi0);
        terms.push_back({delay, -p.gamma_gyd * R_pow * phase});
        R_pow *= p.R_mag * p.R_mag;
    }
    // odd reflection orders 2n+1, n >= 0
    R_pow = p.R_mag;
    for (int n = 0;; ++n) {
        const double base = 2.0 * n * p.tau_L;
        if (R_pow < kCoeffCutoff || base + std::min(p.tau_plus, p.tau_minus) > horizon)
            break;
        const cplx phase = std::exp((2.0 * n + 1.0) * i_unit * p.Phi0);
        const cplx common = -0.5 * p.gamma_gyd * R_pow * phase;
        if (base + p.tau_plus <= horizon)
            terms.push_back({base + p.tau_plus, common * phase_plus});
        if (base + p.tau_minus <= horizon)
            terms.push_back({base + p.tau_minus, common * phase_minus});
        R_pow *= p.R_mag * p.R_mag;
    }
    return terms;
}

// dense history on the uniform grid: amplitudes and their derivatives
struct History {
    const std::vector<cplx>& C;
    const std::vector<cplx>& F;
    double h;

    // cubic Hermite value at td >= 0; every queried time lies at least a few
    // steps behind the last filled node, so i+1 is always available
    cplx value(double td, std::size_t filled) const {
        const double s = td / h;
        std::size_t i = static_cast<std::size_t>(s);
        if (i + 1 >= filled) i = filled - 2;
        const double th = s - static_cast<double>(i);
        const double th2 = th * th;
        const double th3 = th2 * th;
        return C[i] * (2.0 * th3 - 3.0 * th2 + 1.0) +
               F[i] * (h * (th3 - 2.0 * th2 + th)) +
               C[i + 1] * (-2.0 * th3 + 3.0 * th2) +
               F[i + 1] * (h * (th3 - th2));
    }
};

// Partition-number coefficients: coeff[n][p] sums 1/(k_1! ... k_n!) over all
// multiplicity vectors with k_1 + 2 k_2 + ... + n k_n = n and p parts in
// total.  Built once up to kMaxPartitionOrder.
const std::vector<std::vector<double>>& partition_coeffs() {
    static std::vector<std::vector<double>> table;
    static std::once_flag once;
    std::call_once(once, [] {
        const int N = kMaxPartitionOrder;
        // running polynomial in (remaining sum, part count)
        std::vector<std::vector<double>> acc(
            N + 1, std::vector<double>(N + 1, 0.0));
        acc[0][0] = 1.0;
        for (int size = 1; size <= N; ++size) {
            for (int sum = N; sum >= 0; --sum) {
                for (int parts = 0; parts <= N; ++parts) {
                    const double base = acc[sum][parts];
                    if (base == 0.0) continue;
                    double fact = 1.0;
                    for (int k = 1; sum + k * size <= N; ++k) {
                        fact *= k;
                        if (parts + k > N) break;
                        acc[sum + k * size][parts + k] += base / fact;
                    }
                }
            }
        }
        table = std::move(acc);
    });
    return table;
}

}  // namespace

void validate(const DelayParams& p) {
    if (!(p.gamma_gyd >= 0.0) || !(p.gamma_rad >= 0.0))
        throw ConfigError("decay rates must be non-negative");
    if (!(p.gamma_gyd + p.gamma_rad > 0.0))
        throw ConfigError("total decay rate must be positive");
    if (!(p.tau_L > 0.0))
        throw ConfigError("cavity crossing delay must be positive");
    if (!(p.tau_plus > 0.0) || !(p.tau_minus > 0.0))
        throw ConfigError("mirror delays must be positive");
    if (std::abs(p.tau_plus + p.tau_minus - 2.0 * p.tau_L) > 1e-9 * p.tau_L)
        throw ConfigError("mirror delays must average to the crossing delay");
    if (!(p.R_mag >= 0.0) || p.R_mag >= 1.0)
        throw ConfigError("mirror reflection magnitude must lie in [0, 1)");
    if (p.Phi0.imag() < 0.0 || p.beta0_z.imag() * p.beta0_z.real() < 0.0)
        throw ConfigError("absorption part of the phases must not be amplifying");
}

DelayParams make_delay_params(const GuidedModeSolution& mode,
                              const AtomSpec& atom, const CavitySpec& cavity,
                              const RateReport& rates) {
    validate(cavity);
    if (!(atom.gamma0_phys > 0.0))
        throw ConfigError("free-space rate scale gamma0_phys must be positive");
    const double z_m = atom.z_nm * 1e-9;
    if (!(std::abs(z_m) < 0.5 * cavity.L_m))
        throw ConfigError("atom must sit strictly between the mirrors");

    const double g0 = atom.gamma0_phys;
    const double alpha_m = cavity.alpha_per_cm * 100.0;

    DelayParams p;
    p.gamma_gyd = rates.gamma_gyd;
    p.gamma_rad = rates.gamma_rad;
    p.tau_L = cavity.L_m / mode.v_g * g0;
    p.tau_plus = (cavity.L_m + 2.0 * z_m) / mode.v_g * g0;
    p.tau_minus = (cavity.L_m - 2.0 * z_m) / mode.v_g * g0;
    p.R_mag = cavity.R_mag;
    p.Phi0 = phase_per_crossing(mode, cavity, atom.q, mode.omega);
    p.beta0_z = cplx(mode.beta, 0.5 * alpha_m) * z_m;
    return p;
}

DecayTrace simulate_decay(const DelayParams& params, double t_max,
                          double h_override) {
    validate(params);
    if (!(t_max > 0.0)) throw ConfigError("decay horizon must be positive");

    const double gamma = params.gamma_gyd + params.gamma_rad;
    const std::vector<DelayTerm> terms = build_terms(params, t_max);

    DecayTrace trace;

    if (terms.empty()) {
        // no reflection arrives inside the horizon: exact free decay
        const std::size_t n = 512;
        const double h = t_max / static_cast<double>(n);
        trace.step = h;
        trace.t.reserve(n + 1);
        trace.amplitude.reserve(n + 1);
        trace.population.reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            const double tk = h * static_cast<double>(k);
            const cplx c = std::exp(cplx(-0.5 * gamma * tk, 0.0));
            trace.t.push_back(tk);
            trace.amplitude.push_back(c);
            trace.population.push_back(std::norm(c));
        }
        return trace;
    }

    double tau_min = terms.front().delay;
    for (const DelayTerm& term : terms) tau_min = std::min(tau_min, term.delay);

    // estimate the fastest decay to resolve: fully built-up enhancement
    const double G_max = (1.0 + params.R_mag) / (1.0 - params.R_mag);
    const double rate_scale =
        std::max(gamma, params.gamma_gyd * G_max + params.gamma_rad);

    double h0 = h_override > 0.0
                    ? h_override
                    : std::min(tau_min / 8.0, 0.002 / rate_scale);
    // snap so the shortest delay is an exact number of steps; reflections of
    // the center atom then switch on at grid nodes
    const double n_sub = std::ceil(tau_min / h0 - 1e-9);
    const double h = tau_min / n_sub;
    if (h > tau_min / 4.0 * (1.0 + 1e-12))
        throw IntegratorError(
            "time step exceeds a quarter of the shortest reflection delay");

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(t_max / h - 1e-9));

    std::vector<cplx> C(n_steps + 1);
    std::vector<cplx> F(n_steps + 1);
    const History hist{C, F, h};

    // A term switches on where its delayed argument reaches zero.  A stage
    // sitting exactly on that kink belongs to the step that starts there,
    // not the one that ends there; otherwise the jump in the derivative
    // leaks into the step before the reflection arrives.
    const double eps = 1e-9 * h;
    const auto rhs = [&](double t_stage, double t_step_start, const cplx& y,
                         std::size_t filled) {
        cplx dot = -0.5 * gamma * y;
        for (const DelayTerm& term : terms) {
            const double td = t_stage - term.delay;
            if (td < -eps) continue;
            if (td <= eps && t_step_start < term.delay - eps) continue;
            dot += term.coeff * hist.value(std::max(td, 0.0), filled);
        }
        return dot;
    };

    C[0] = 1.0;
    F[0] = rhs(0.0, 0.0, C[0], 1);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double tk = h * static_cast<double>(k);
        const std::size_t filled = k + 1;
        const cplx k1 = F[k];
        const cplx k2 = rhs(tk + 0.5 * h, tk, C[k] + 0.5 * h * k1, filled);
        const cplx k3 = rhs(tk + 0.5 * h, tk, C[k] + 0.5 * h * k2, filled);
        const cplx k4 = rhs(tk + h, tk, C[k] + h * k3, filled);
        C[k + 1] = C[k] + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        // derivative at the new node with step-start semantics, so it serves
        // as the left-endpoint slope of the next segment
        F[k + 1] = rhs(tk + h, tk + h, C[k + 1], filled + 1);
    }

    trace.step = h;
    trace.t.resize(n_steps + 1);
    trace.amplitude = std::move(C);
    trace.population.resize(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        trace.t[k] = h * static_cast<double>(k);
        trace.population[k] = std::norm(trace.amplitude[k]);
    }
    return trace;
}

std::complex<double> analytic_center_amplitude(const DelayParams& params,
                                               double t) {
    validate(params);
    if (std::abs(params.tau_plus - params.tau_minus) > 1e-9 * params.tau_L)
        throw ConfigError(
            "closed-form solution requires the atom at the cavity center");
    if (t < 0.0) return 0.0;

    const double gamma = params.gamma_gyd + params.gamma_rad;
    const auto& coeffs = partition_coeffs();
    const cplx i_unit(0.0, 1.0);
    const cplx ring = params.R_mag * std::exp(i_unit * params.Phi0);

    cplx sum = 0.0;
    cplx outer = 1.0;  // (|R| e^{i Phi0})^n
    int small_streak = 0;
    for (int n = 0;; ++n) {
        const double t_n = t - n * params.tau_L;
        if (t_n < 0.0) break;
        if (n > kMaxPartitionOrder)
            throw SolverError(
                "closed-form solution needs more reflection orders than supported");

        const double x = -params.gamma_gyd * t_n;
        const auto& cp = coeffs[n];
        // polynomial in x with the partition coefficients, highest power n
        double inner = 0.0;
        double inner_abs = 0.0;
        for (int p = n; p >= 0; --p) {
            inner = inner * x + cp[p];
            inner_abs = inner_abs * std::abs(x) + cp[p];
        }
        const double damp = std::exp(-0.5 * gamma * t_n);
        sum += outer * (damp * inner);
        if (n >= 1 && std::abs(outer) * damp * inner_abs < 1e-14) {
            if (++small_streak >= 2) break;
        } else {
            small_streak = 0;
        }
        outer *= ring;
    }
    return sum;
}

double fit_decay_rate(const DecayTrace& trace, double t_lo, double t_hi) {
    if (!(t_hi > t_lo)) throw ConfigError("fit window must have positive width");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        const double t = trace.t[k];
        if (t < t_lo || t > t_hi) continue;
        const double P = trace.population[k];
        if (!(P > 0.0))
            throw SolverError("population is not positive inside the fit window");
        const double y = std::log(P);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++n;
    }
    if (n < 2) throw SolverError("fit window covers fewer than two samples");
    const double denom = n * sxx - sx * sx;
    if (!(denom > 0.0)) throw SolverError("fit window has no time spread");
    const double slope = (n * sxy - sx * sy) / denom;
    return -slope;
}

OscillationReport detect_oscillations(const DecayTrace& trace, double floor) {
    OscillationReport rep;
    if (trace.population.size() < 3) return rep;

    // ignore the tail once the population has decayed below the floor
    std::size_t last = 0;
    for (std::size_t k = 0; k < trace.population.size(); ++k)
        if (trace.population[k] >= floor) last = k;
    if (last < 2) return rep;

    std::vector<double> minima_t;
    for (std::size_t k = 1; k < last; ++k) {
        if (trace.population[k] < trace.population[k - 1] &&
            trace.population[k] < trace.population[k + 1])
            minima_t.push_back(trace.t[k]);
    }
    rep.minima_count = static_cast<int>(minima_t.size());
    if (!minima_t.empty()) rep.first_minimum_t = minima_t.front();
    if (minima_t.size() >= 2) {
        rep.period = (minima_t.back() - minima_t.front()) /
                     static_cast<double>(minima_t.size() - 1);
        rep.resolved = rep.period >= 16.0 * trace.step;
    }
    return rep;
}

}  // namespace fibercav
