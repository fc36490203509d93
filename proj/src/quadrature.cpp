#include "fibercav/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "fibercav/constants.hpp"
#include "fibercav/errors.hpp"

namespace fibercav {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n with the Chebyshev-like initial guess; the
    // derivative comes from the standard relation
    // (1-x^2) P_n'(x) = n (P_{n-1}(x) - x P_n(x)).
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (p0 - x * p1) / (1.0 - x * x);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // the initial guesses walk from +1 toward -1, so store reversed to
        // keep the documented ascending order
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

std::map<int, GaussRule> rule_cache;
std::mutex rule_mutex;

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 2 || n > 512) throw SolverError("gauss_legendre: order out of range [2, 512]");
    std::lock_guard<std::mutex> lock(rule_mutex);
    auto it = rule_cache.find(n);
    if (it == rule_cache.end()) it = rule_cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int points) {
    const GaussRule& rule = gauss_legendre(points);
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        const double half = 0.5 * width;
        double sum = 0.0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * sum;
    }
    return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol, int points, int max_panels) {
    double prev = integrate_panels(f, a, b, 1, points);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        const double cur = integrate_panels(f, a, b, panels, points);
        if (std::abs(cur - prev) <= std::max(rel_tol * std::abs(cur), abs_tol)) return cur;
        prev = cur;
    }
    throw SolverError("integrate_adaptive: no convergence within panel cap");
}

}  // namespace fibercav
