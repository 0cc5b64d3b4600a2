// Smooth approximation of bounded measurable functions with certified Hölder
// control: f_n = f ∗ χ_n for a fixed smooth probability bump χ and the
// concentrating scaling χ_n(x) = n χ(n x). (The spreading scaling n^{-1}χ(x/n)
// cannot converge pointwise and is deliberately not used.)
//
// Certified metadata, valid for any |f| ≤ declared_sup:
//   ‖f_n‖_∞ ≤ declared_sup,   inf f ≤ f_n ≤ sup f pointwise,
//   Lip(f_n) ≤ declared_sup · n · ‖χ'‖_{L¹},
//   ‖f_n‖_{α_n} ≤ 4·declared_sup with α_n from the exponent rule below.
#pragma once

#include <functional>

#include "levymp/common.hpp"

namespace levymp {

// Largest α ∈ (0,1] with 2 L^α ≤ 3 (α = 1 for L ≤ 3/2).
double holder_exponent_for_lipschitz(double L);

struct MollifiedFunction {
    int level = 1;              // n
    double alpha = 1.0;         // certified Hölder exponent α_n
    double holder_bound = 0.0;  // certified bound on ‖f_n‖_{α_n}
    double lipschitz = 0.0;     // certified Lipschitz constant of f_n
    double declared_sup = 0.0;
    std::function<double(double)> eval;

    double operator()(double x) const { return eval(x); }
};

// One-dimensional mollification by quadrature. Throws PreconditionError if a
// sampled |f| value exceeds declared_sup.
MollifiedFunction mollify(std::function<double(double)> f, double declared_sup, int n);

// ‖χ'‖_{L¹} of the project mollifier (used by the certified Lipschitz bound).
double mollifier_grad_l1();

// CDF of the project mollifier χ (closed form for step-function convolutions).
double mollifier_cdf(double x);

// Dense-table wrapper (constant extension outside [lo, hi]) for use in
// simulation loops; the mollified step/sgn coefficients are constant outside
// a bounded interval, so the extension is exact there.
std::function<double(double)> tabulated(const MollifiedFunction& f, double lo, double hi,
                                        int nodes = 8193);

}  // namespace levymp
