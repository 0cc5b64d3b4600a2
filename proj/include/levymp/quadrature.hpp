// Adaptive Gauss-Kronrod (7-15) quadrature, with sweeps for singular lower
// endpoints and semi-infinite tails (geometric tail extrapolation).
#pragma once

#include <complex>
#include <functional>

#include "levymp/common.hpp"

namespace levymp {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evals = 0;
    bool converged = true;
};

struct CQuadResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
    std::size_t evals = 0;
    bool converged = true;
};

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_depth = 48;
    std::size_t max_evals = 4'000'000;
};

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              const QuadOptions& opt = {});

// Single non-adaptive 15-point Kronrod panel (value only).
double gk15_panel(const std::function<double(double)>& f, double a, double b);

// Gauss-Legendre nodes/weights on [a, b].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n, double a, double b);
CQuadResult integrate_adaptive_c(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, const QuadOptions& opt = {});

// Convenience wrapper that throws QuadratureError carrying the partial sum.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

// ∫_a^∞ f, a > 0: integrates octaves [a·2^k, a·2^{k+1}] until the running
// geometric tail estimate drops below abs_tol. Non-decaying segments are
// reported as non-convergence (diverging integral).
QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol, const QuadOptions& opt = {});

// ∫_0^b f, b > 0, with an integrable singularity at 0: integrates octaves
// [b·2^{-k-1}, b·2^{-k}] toward 0 with geometric tail extrapolation.
QuadResult integrate_to_zero(const std::function<double(double)>& f, double b, double abs_tol,
                             const QuadOptions& opt = {});

}  // namespace levymp
