#pragma once

#include <functional>
#include <vector>

namespace fibercav {

// Gauss-Legendre rule on [-1, 1]; nodes ascending, weights positive.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes from Newton iteration on the Legendre polynomial; results for a given
// n are computed once and cached.
const GaussRule& gauss_legendre(int n);

// Composite Gauss-Legendre integration of f over [a, b] with panel doubling:
// 1, 2, 4, ... equal panels of an n-point rule until successive estimates
// differ by at most max(rel_tol*|I|, abs_tol). Throws SolverError when the
// panel cap is reached without convergence.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_tol = 0.0, int points = 64,
                          int max_panels = 1024);

// Single pass with a fixed panel count (no convergence loop); building block
// for callers that manage their own refinement sequence.
double integrate_panels(const std::function<double(double)>& f, double a, double b,
                        int panels, int points = 64);

}  // namespace fibercav
