// Executable checks on path ensembles: martingale residuals, the maximal
// inequality, compact-containment profiles, Krylov occupation estimates, the
// transition-density majorants S and Q, and the generator-gap functional.
#pragma once

#include <span>

#include "json.hpp"
#include "levymp/conditions.hpp"
#include "levymp/generator.hpp"
#include "levymp/simulate.hpp"

namespace levymp {

struct CheckResult {
    enum class Rule { UpperBound, Equality };

    std::string id;
    Rule rule = Rule::UpperBound;
    double statistic = 0.0;
    double bound_or_target = 0.0;
    double std_error = 0.0;
    double bias_budget = 0.0;  // discretization allowance, separate from MC error
    Verdict verdict = Verdict::Inconclusive;
    std::string metadata_hash;
    std::string note;

    // pass iff statistic <= bound + 3·SE + budget
    static CheckResult upper_bound(std::string id, double stat, double bound, double se,
                                   double budget = 0.0);
    // pass iff |statistic - target| <= 3·SE + budget
    static CheckResult equality(std::string id, double stat, double target, double se,
                                double budget = 0.0);
    nlohmann::json to_json() const;
};

// Af(·) cached on an asinh-graded lattice (dense near the origin, logarithmic
// in the tails) so per-path time integrals do not pay a jump quadrature per
// state. Lookups clamp to the build range; build it from the ensemble range.
class GeneratorTable {
public:
    GeneratorTable(const SymbolField& sym, const TestFunction& f, double lo, double hi,
                   int nodes = 8193);
    double operator()(double x) const { return table_(std::asinh(x)); }
    double sup_abs() const { return sup_; }

private:
    UniformTable table_;
    double sup_ = 0.0;
};

// ---------------------------------------------------------------------------

struct Probe {
    double t;
    std::function<double(double)> g;  // continuous, 0 <= g <= 1
};

struct MartingaleOptions {
    int af_nodes = 8193;
    // 0 = automatic: 1 for state-independent coefficients, 1 + sup(|b|+|Q|+∫min(|y|²,1)ν)
    // over the visited range otherwise (first-order weak-error scale)
    double euler_bias_scale = 0.0;
};

// Monte Carlo estimate of E[∏ g_i(X_{t_i}) (f(X_t) - f(X_s) - ∫_s^t Af(X_r) dr)],
// trapezoid in time, Af by apply_integro at post-jump states; target 0 with
// bias budget ‖f‖₍₂₎ · dt · euler_bias_scale.
CheckResult martingale_residual(const SolutionEnsemble& ens, const SymbolField& sym,
                                const TestFunction& f, double s, double t,
                                const std::vector<Probe>& probes,
                                const MartingaleOptions& opt = {});

// statistic = P(sup_{s<=t}|X_s| >= R, |X_0| <= r) (joint, empirical);
// bound = c · t · sup_{|y|<=R, |ξ|<=1/R} |q|; c defaults to the project bump
// constant (the constructive constant of the proof, not fitted).
CheckResult maximal_inequality_check(const SolutionEnsemble& ens, const SymbolField& sym,
                                     double r, double R, double t, int lattice_density = 65,
                                     double c_constant = 0.0);

struct ExceedanceProfile {
    std::vector<std::pair<double, double>> points;  // (R, sup over family of P(sup|X| >= R))
    double epsilon = 0.0;
    Verdict verdict = Verdict::Inconclusive;
    nlohmann::json to_json() const;
};

// sup over the ensemble family of the exceedance probabilities; pass iff the
// profile drops below epsilon at the largest radius.
ExceedanceProfile compact_containment_profile(std::span<const SolutionEnsemble* const> family,
                                              double T, std::span<const double> R_grid,
                                              double epsilon);

// ---------------------------------------------------------------------------
// Krylov estimate

struct KrylovMeasure {
    std::function<double(double)> density;
    std::vector<double> singular_points;  // quadrature split hints
    double extent = 64.0;                 // quadrature range [-extent, extent]
    std::string desc;
};

// (∫ |u|^p dm)^{1/p}; +inf when the quadrature detects divergence.
double lp_norm(const std::function<double(double)>& u, const KrylovMeasure& m, double p);

// statistic = E ∫_0^T u(X_s) ds (trapezoid); bound = c·‖u‖_{L^p(m)}.
// An infinite norm passes automatically.
CheckResult krylov_check(const SolutionEnsemble& ens, const std::function<double(double)>& u,
                         const KrylovMeasure& m, double p, double c, double T);

// ---------------------------------------------------------------------------
// Majorants (piecewise closed forms of the heat-kernel bounds)

// |z|^{-d-γ₀∧γ∞} for |z|>=1;  1+|log|z||+|z|^{-d+γ∞} for 0<|z|<1;  1 at z=0
double q_majorant(double abs_z, double gamma0L, double gammaInfL, int d);
double q_majorant(const Vec& z, double gamma0L, double gammaInfL);

// t^{-d/γ∞} for |z| <= t^{1/γ∞}∧1;  t/|z|^{d+γ∞} for t^{1/γ∞} < |z| <= 1;
// t/|z|^{d+γ∞∧γ₀} for |z| > 1
double s_majorant(double abs_z, double gammaInf, double gamma0, double t, int d);
double s_majorant(const Vec& z, double gammaInf, double gamma0, double t);

// m(dy) = Σ w_i Q(x_i - y) dy for an atom-discretized initial law.
KrylovMeasure krylov_measure_from_majorant(double gamma0L, double gammaInfL, int d,
                                           const std::vector<std::pair<double, double>>& mu_atoms,
                                           double extent = 64.0);

// ---------------------------------------------------------------------------

// max_n ‖A_n f - g‖_{L^p(m)} + ‖L f - g‖_{L^p(m)}, quadrature against m.
double generator_gap(std::span<const SymbolField> approximations, const SymbolField& limit,
                     const TestFunction& f, const KrylovMeasure& m, double p,
                     const std::function<double(double)>& g, int af_nodes = 4097);

}  // namespace levymp
