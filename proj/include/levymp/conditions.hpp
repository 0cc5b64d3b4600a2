// Sampled verification of the boundedness/continuity/growth conditions a
// symbol must satisfy, and the closed-form sup bound for ‖Af‖_∞.
#pragma once

#include <span>

#include "json.hpp"
#include "levymp/symbol.hpp"
#include "levymp/test_function.hpp"

namespace levymp {

enum class ConditionId {
    LocalBounded,      // sup_{|x|<=R, |xi|<=1} |q|
    ContAtZero,        // sup_{|y|<=R, |xi|<=1/R} |q| -> 0 as R -> inf
    LinearGrowth,      // sup_{|xi|<=|x|^{-1}} |q| along |x| = R stays bounded
    C1Equibounded,     // family sup of the LocalBounded quantity
    C2Equicontinuous,  // family sup of the ContAtZero quantity
    H1TailUpper,       // kernel checks (see analysis module)
    H2TwoSided,
    H3Translation,
};

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(ConditionId id);
const char* to_string(Verdict v);

struct ConditionReport {
    ConditionId condition_id = ConditionId::LocalBounded;
    std::string grid_spec;
    std::vector<std::pair<double, double>> sup_values;  // (R, sampled sup)
    Verdict verdict = Verdict::Inconclusive;
    double tolerance = 0.0;
    std::string note;

    nlohmann::json to_json() const;
};

// Sampled sups over explicit lattices (density points per axis). Verdict
// semantics:
//   LocalBounded / C1: pass iff every sampled sup is finite.
//   ContAtZero / C2:   pass iff the sup sequence is nonincreasing within
//                      `tolerance` and the last sup <= max(tolerance,
//                      first/2 + tolerance) (halving across the R-grid).
//   LinearGrowth:      fail iff non-finite values or divergence across the
//                      grid (last > 2·first + tolerance).
// Sampled evaluation failures (quadrature blowups) count as unbounded values
// and yield a fail verdict rather than an exception.
ConditionReport check_conditions(std::span<const SymbolField> family, ConditionId which,
                                 std::span<const double> R_grid, int xi_grid_density,
                                 double tolerance = 1e-3);
ConditionReport check_conditions(const SymbolField& sym, ConditionId which,
                                 std::span<const double> R_grid, int xi_grid_density,
                                 double tolerance = 1e-3);

enum class SupBoundMode {
    TripletForm,   // 2‖f‖₂ sup_{|x|<=R}(|b|+|Q|+∫min(|y|²,1)ν) + ‖f‖_∞ sup_{|x|>R} ν(x, B(-x,R))
    ReSymbolTail,  // triplet head + C₂‖f‖_∞ sup_{|x|>R} sup_{|ξ|<=1/|x|} |Re q|
    SymbolOnly,    // C₁‖f‖₂ sup_{|x|<=R,|ξ|<=1}|q| + C₂‖f‖_∞ (same tail)
};

struct SupBoundOptions {
    SupBoundMode mode = SupBoundMode::TripletForm;
    double C1 = 0.0;  // 0 -> project bump constant
    double C2 = 0.0;  // 0 -> project bump constant
    int x_density = 65;
    int xi_density = 33;
    int shell_points = 48;     // samples of |x| in (R, shell_factor·R]
    double shell_factor = 8.0;
};

double operator_sup_bound(const SymbolField& sym, const TestFunction& f,
                          const SupBoundOptions& opt = {});

// sup |q(x,ξ)| over the lattice |x| <= x_radius, |ξ| <= xi_radius.
double symbol_sup(const SymbolField& sym, double x_radius, double xi_radius, int density);

}  // namespace levymp
