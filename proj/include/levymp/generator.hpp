// The operator A applied to test functions in both printed forms:
//   integro-differential:
//     Af(x) = b(x)·∇f(x) + ½ tr(Q(x)∇²f(x))
//             + ∫ (f(x+y) - f(x) - ∇f(x)·y 1_{(0,1)}(|y|)) ν(x,dy)
//   Fourier multiplier:
//     Af(x) = -∫ e^{ix·ξ} q(x,ξ) f̂(ξ) dξ
#pragma once

#include <iosfwd>

#include "levymp/symbol.hpp"
#include "levymp/test_function.hpp"

namespace levymp {

double apply_integro(const SymbolField& sym, const TestFunction& f, const Vec& x,
                     double tol = 1e-8);

struct FourierApply {
    double value = 0.0;
    double imag_residual = 0.0;
};

// Returns the real part; the imaginary residual must satisfy
// |imag| < 1e-6·(1+|value|) (LevympError otherwise). apply_fourier_full
// exposes the residual for reporting.
FourierApply apply_fourier_full(const SymbolField& sym, const TestFunction& f, const Vec& x,
                                double tol = 1e-9);
double apply_fourier(const SymbolField& sym, const TestFunction& f, const Vec& x,
                     double tol = 1e-9);

// Lattice evaluation export: one row per point with both forms and the
// Fourier imaginary residual (CSV: x components, integro, fourier, residual).
void export_lattice_csv(std::ostream& os, const SymbolField& sym, const TestFunction& f,
                        const std::vector<Vec>& points);

}  // namespace levymp
