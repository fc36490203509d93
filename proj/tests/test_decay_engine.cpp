#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "fibercav/cavity_response.hpp"
#include "fibercav/constants.hpp"
#include "fibercav/decay_engine.hpp"
#include "fibercav/errors.hpp"
#include "fibercav/fiber_modes.hpp"

using namespace fibercav;

namespace {

const FiberSpec kFiber{200.0, 1.45, 1.0};

DelayParams center_params(double R2, double Phi0_real = 0.0, double Phi0_imag = 0.0) {
    DelayParams p;
    p.gamma_gyd = 0.48;
    p.gamma_rad = 1.25;
    p.tau_L = 0.5;
    p.tau_plus = 0.5;
    p.tau_minus = 0.5;
    p.R_mag = std::sqrt(R2);
    p.Phi0 = {Phi0_real, Phi0_imag};
    return p;
}

// Independent closed form for the centered atom: iterating the retarded
// equation turns each ordered composition (k_1..k_j) of the total delay
// count n into a monomial (t - n tau)^j / j! times the product of the
// per-delay feedback coefficients.
std::complex<double> composition_amplitude(const DelayParams& p, double t) {
    const double gamma = p.gamma_gyd + p.gamma_rad;
    const int n_max = static_cast<int>(std::floor(t / p.tau_L + 1e-12));
    // b[k] is the feedback coefficient of the k-crossing delay after the
    // substitution that strips the free-decay envelope
    std::vector<std::complex<double>> b(n_max + 1);
    const std::complex<double> ring =
        p.R_mag * std::exp(std::complex<double>(0.0, 1.0) * p.Phi0);
    for (int k = 1; k <= n_max; ++k)
        b[k] = -p.gamma_gyd * std::pow(ring, k) * std::exp(0.5 * gamma * k * p.tau_L);

    std::complex<double> sum = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        const double x = t - n * p.tau_L;
        std::complex<double> contrib = 0.0;
        auto walk = [&](auto&& self, int remaining, std::complex<double> coeff,
                        int j) -> void {
            if (remaining == 0) {
                double fact = 1.0;
                for (int i = 1; i <= j; ++i) fact *= i;
                contrib += coeff * std::pow(x, j) / fact;
                return;
            }
            for (int k = 1; k <= remaining; ++k)
                self(self, remaining - k, coeff * b[k], j + 1);
        };
        walk(walk, n, std::complex<double>(1.0, 0.0), 0);
        sum += contrib;
    }
    return std::exp(-0.5 * gamma * t) * sum;
}

}  // namespace

TEST_CASE("physical reduction produces the frozen dimensionless delays") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, 852.0);
    AtomSpec atom;
    atom.r_nm = 200.0;
    atom.gamma0_phys = 2.0 * pi * 5.2e6;
    const RateReport rates = rate_report(kFiber, mode, atom);
    CavitySpec cav;
    cav.L_m = 0.2;
    cav.R_mag = std::sqrt(0.9);

    const DelayParams p = make_delay_params(mode, atom, cav, rates);
    CHECK(p.tau_L == doctest::Approx(0.0295128693914).epsilon(1e-9));
    CHECK(p.tau_plus == doctest::Approx(p.tau_L).epsilon(1e-14));
    CHECK(p.tau_minus == doctest::Approx(p.tau_L).epsilon(1e-14));
    CHECK(p.R_mag == doctest::Approx(cav.R_mag).epsilon(1e-15));
    CHECK(p.Phi0.imag() == 0.0);
    CHECK(p.beta0_z == std::complex<double>(0.0, 0.0));
    CHECK(p.gamma_gyd == doctest::Approx(rates.gamma_gyd).epsilon(1e-15));

    // off-center atom: the offset splits the two odd-order delays
    AtomSpec off = atom;
    off.z_nm = 1e7;  // 1 cm
    const DelayParams po = make_delay_params(mode, off, cav, rates);
    const double gamma0 = atom.gamma0_phys;
    CHECK(po.tau_plus - po.tau_minus ==
          doctest::Approx(4.0 * 0.01 / mode.v_g * gamma0).epsilon(1e-10));
    CHECK(po.tau_plus + po.tau_minus == doctest::Approx(2.0 * po.tau_L).epsilon(1e-12));
    CHECK(po.beta0_z.real() == doctest::Approx(mode.beta * 0.01).epsilon(1e-12));

    // absorption tilts the phases into the upper half plane
    CavitySpec lossy = cav;
    lossy.alpha_per_cm = 1e-5;
    const DelayParams pl = make_delay_params(mode, off, lossy, rates);
    CHECK(pl.Phi0.imag() > 0.0);
    CHECK(pl.beta0_z.imag() > 0.0);
}

TEST_CASE("reduction rejects unusable atom placements") {
    const GuidedModeSolution mode = solve_fundamental(kFiber, 852.0);
    AtomSpec atom;
    atom.r_nm = 200.0;
    const RateReport rates = rate_report(kFiber, mode, atom);
    CavitySpec cav;
    cav.L_m = 0.2;

    // the time scale is undefined without a physical rate
    CHECK_THROWS_AS(make_delay_params(mode, atom, cav, rates), ConfigError);

    atom.gamma0_phys = 2.0 * pi * 5.2e6;
    atom.z_nm = 0.11e9;  // outside the 0.2 m cavity
    CHECK_THROWS_AS(make_delay_params(mode, atom, cav, rates), ConfigError);
}

TEST_CASE("parameter validation enforces delay consistency") {
    DelayParams p = center_params(0.8);
    CHECK_NOTHROW(validate(p));
    p.tau_plus = 0.6;  // tau_plus + tau_minus no longer equals 2 tau_L
    CHECK_THROWS_AS(validate(p), ConfigError);

    p = center_params(0.8);
    p.gamma_gyd = -0.1;
    CHECK_THROWS_AS(validate(p), ConfigError);

    p = center_params(0.8);
    p.R_mag = 1.0;
    CHECK_THROWS_AS(validate(p), ConfigError);

    p = center_params(0.8);
    p.Phi0 = {0.0, -0.01};  // gain instead of loss
    CHECK_THROWS_AS(validate(p), ConfigError);
}

TEST_CASE("no mirrors gives the pure exponential on the full grid") {
    DelayParams p = center_params(0.0);
    p.R_mag = 0.0;
    const double gamma = p.gamma_gyd + p.gamma_rad;
    const DecayTrace trace = simulate_decay(p, 3.0);
    REQUIRE(trace.t.size() >= 2);
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        const double expect = std::exp(-gamma * trace.t[k]);
        CHECK(std::abs(trace.population[k] - expect) <= 1e-12);
        CHECK(std::abs(trace.amplitude[k] -
                       std::exp(std::complex<double>(-0.5 * gamma * trace.t[k], 0.0))) <=
              1e-12);
    }
}

TEST_CASE("horizons shorter than the first echo skip the integrator") {
    DelayParams p = center_params(0.9);
    const double gamma = p.gamma_gyd + p.gamma_rad;
    // every reflected arrival lies beyond t_max, so the decay is still free
    const DecayTrace trace = simulate_decay(p, 0.4 * p.tau_L);
    for (std::size_t k = 0; k < trace.t.size(); ++k)
        CHECK(std::abs(trace.population[k] - std::exp(-gamma * trace.t[k])) <= 1e-12);
}

TEST_CASE("closed-form amplitude matches a brute-force composition sum") {
    for (double R2 : {0.5, 0.9}) {
        for (double phase : {0.0, pi, 0.7}) {
            const DelayParams p = center_params(R2, phase);
            for (double t : {0.2, 0.6, 1.3, 2.1, 2.9}) {
                const std::complex<double> ref = composition_amplitude(p, t);
                const std::complex<double> got = analytic_center_amplitude(p, t);
                CHECK(std::abs(got - ref) <= 1e-12 * (1.0 + std::abs(ref)));
            }
        }
    }
    // complex phase (absorbing guide) follows the same algebra
    const DelayParams lossy = center_params(0.8, 0.3, 0.05);
    for (double t : {0.9, 1.8}) {
        CHECK(std::abs(analytic_center_amplitude(lossy, t) -
                       composition_amplitude(lossy, t)) <= 1e-12);
    }
}

TEST_CASE("integrated trace agrees with the closed form at the grid nodes") {
    const DelayParams p = center_params(0.5, pi);
    const DecayTrace trace = simulate_decay(p, 5.0 * p.tau_L);
    double worst = 0.0;
    for (std::size_t k = 0; k < trace.t.size(); ++k) {
        const std::complex<double> ref = analytic_center_amplitude(p, trace.t[k]);
        worst = std::max(worst, std::abs(trace.amplitude[k] - ref));
    }
    CHECK(worst <= 1e-7);
}

TEST_CASE("the step divides the shortest delay exactly") {
    DelayParams p = center_params(0.9);
    const DecayTrace trace = simulate_decay(p, 2.0);
    const double ratio = p.tau_L / trace.step;
    CHECK(std::abs(ratio - std::round(ratio)) <= 1e-9);

    // an explicit fine step is honored after the same snapping
    const DecayTrace fine = simulate_decay(p, 2.0, p.tau_L / 10.3);
    const double fratio = p.tau_L / fine.step;
    CHECK(std::abs(fratio - std::round(fratio)) <= 1e-9);
    CHECK(fine.step <= p.tau_L / 10.0);

    // a step coarser than a quarter delay cannot resolve the kinks
    CHECK_THROWS_AS(simulate_decay(p, 2.0, 0.3 * p.tau_L + 0.3), IntegratorError);
}

TEST_CASE("rate fitting recovers an exact exponential") {
    DecayTrace trace;
    trace.step = 0.01;
    for (int k = 0; k <= 400; ++k) {
        const double t = 0.01 * k;
        trace.t.push_back(t);
        trace.population.push_back(std::exp(-3.7 * t));
        trace.amplitude.push_back(std::exp(std::complex<double>(-1.85 * t, 0.0)));
    }
    CHECK(fit_decay_rate(trace, 0.5, 3.5) == doctest::Approx(3.7).epsilon(1e-12));
    CHECK_THROWS_AS(fit_decay_rate(trace, 2.0, 1.0), ConfigError);
    CHECK_THROWS_AS(fit_decay_rate(trace, 3.99, 3.999), SolverError);
}

TEST_CASE("oscillation detection counts minima and measures the period") {
    DecayTrace trace;
    trace.step = 0.002;
    for (int k = 0; k <= 5000; ++k) {
        const double t = 0.002 * k;
        trace.t.push_back(t);
        trace.population.push_back(std::exp(-0.5 * t) *
                                   (0.5 + 0.5 * std::cos(2.0 * pi * t)));
        trace.amplitude.push_back(0.0);
    }
    const OscillationReport rep = detect_oscillations(trace, 1e-6);
    CHECK(rep.minima_count >= 8);
    CHECK(rep.first_minimum_t == doctest::Approx(0.5).epsilon(0.02));
    CHECK(rep.period == doctest::Approx(1.0).epsilon(0.02));
    CHECK(rep.resolved);

    // a higher floor trims the tail and with it the late minima
    const OscillationReport high = detect_oscillations(trace, 0.25);
    CHECK(high.minima_count < rep.minima_count);
    CHECK(high.minima_count >= 2);

    // monotone decay has nothing to report
    DecayTrace flat;
    flat.step = 0.01;
    for (int k = 0; k <= 500; ++k) {
        flat.t.push_back(0.01 * k);
        flat.population.push_back(std::exp(-0.01 * k));
        flat.amplitude.push_back(0.0);
    }
    const OscillationReport none = detect_oscillations(flat, 1e-9);
    CHECK(none.minima_count == 0);
    CHECK_FALSE(none.resolved);

    // wiggles at the grid scale are flagged as unresolved
    DecayTrace jitter;
    jitter.step = 0.002;
    for (int k = 0; k <= 5000; ++k) {
        const double t = 0.002 * k;
        jitter.t.push_back(t);
        jitter.population.push_back(std::exp(-0.5 * t) *
                                    (0.5 + 0.5 * std::cos(2.0 * pi * t / 0.02)));
        jitter.amplitude.push_back(0.0);
    }
    CHECK_FALSE(detect_oscillations(jitter, 1e-6).resolved);
}
