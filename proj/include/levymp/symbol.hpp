// State-dependent symbols q(x,ξ) of Lévy-type operators: triplets, jump
// measures, Lévy-Khintchine evaluation, and the symbol catalog.
//
// Conventions (used consistently across the whole toolkit):
//   q(x,ξ) = -i b(x)·ξ + ½ ξ·Q(x)ξ + ∫ (1 - e^{iy·ξ} + iy·ξ 1_{(0,1)}(|y|)) ν(x,dy)
// with q(x,0) = 0, ν a Lévy measure (∫ min(1,|y|²) ν(dy) < ∞).
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "levymp/common.hpp"
#include "levymp/quadrature.hpp"

namespace levymp {

struct ZeroJumps {};

struct JumpAtoms {
    std::vector<std::pair<Vec, double>> atoms;  // (location, mass), locations ≠ 0
};

// ν(dy) = profile(|y|) dy — isotropic (d ≥ 2) or symmetric (d = 1).
// The declared exponents bound the behaviour profile(r) ~ r^{-sing} near 0
// and profile(r) ≲ r^{-decay} near ∞ and steer the singular quadrature.
struct RadialDensity {
    std::function<double(double)> profile;
    double sing_exponent = 0.0;
    double decay_exponent = 3.0;
};

// ν(dy) = density(y) dy on R \ {0} (d = 1, possibly asymmetric).
struct Density1D {
    std::function<double(double)> density;
    double sing_exponent = 0.0;
    double decay_exponent = 3.0;
};

using JumpMeasure = std::variant<ZeroJumps, JumpAtoms, RadialDensity, Density1D>;

struct LevyTriplet {
    Vec drift;      // b
    Mat diffusion;  // Q, symmetric positive semidefinite
    JumpMeasure jumps = ZeroJumps{};

    int dim() const { return static_cast<int>(drift.size()); }

    // Checks symmetry, the eigenvalue bound (≥ -1e-12) and the Lévy
    // integrability ∫ min(1,|y|²) ν(dy) < ∞. Throws PreconditionError /
    // QuadratureError with diagnostics on violation.
    void validate() const;

    double levy_integral(double tol = 1e-8) const;  // ∫ min(1,|y|²) ν(dy)

    // ν(closed ball B(center, radius)); +∞ if the ball reaches the origin of
    // a non-integrable density.
    double ball_mass(const Vec& center, double radius, double tol = 1e-8) const;

    // |b| + |Q|_spec + ∫ min(1,|y|²) ν(dy)
    double coeff_magnitude(double tol = 1e-8) const;
};

// Lévy-Khintchine evaluation of the symbol of a single triplet at ξ.
// The small-jump compensator uses the indicator cutoff 1_{(0,1)}(|y|).
std::complex<double> levy_khintchine(const LevyTriplet& t, const Vec& xi, double tol = 1e-8);

struct CoefficientFlags {
    bool continuous_in_x = true;
    bool bounded = false;
};

struct SymbolField {
    int dim = 1;
    std::function<LevyTriplet(const Vec&)> triplet_at;
    // optional closed form; must agree with the triplet quadrature
    std::function<std::complex<double>(const Vec&, const Vec&)> direct_eval;
    CoefficientFlags flags;
    bool radial_in_xi = false;  // ξ ↦ q(x,ξ) depends on |ξ| only
    std::string name;

    bool has_direct() const { return static_cast<bool>(direct_eval); }
};

// q(x,ξ): direct_eval when present, Lévy-Khintchine quadrature otherwise.
std::complex<double> eval_symbol(const SymbolField& sym, const Vec& x, const Vec& xi,
                                 double tol = 1e-8);

// ---------------------------------------------------------------------------
// Symmetric Lévy exponents ψ (building blocks for SDE-type symbols and for
// the increment samplers). ψ(ξ) = gauss_coeff·ξ² + jump part, all real.

struct LevyExponent {
    enum class Kind { Gaussian, Stable, StableMix };
    Kind kind = Kind::Gaussian;
    std::string name;
    std::function<double(double)> psi;  // ψ(ξ), even in ξ
    double gauss_coeff = 0.0;           // Gaussian part: gauss_coeff·ξ²
    std::optional<RadialDensity> jump_profile;  // one-dimensional density

    double stable_alpha = 2.0;
    double mix_c1 = 0.0, mix_a1 = 1.0, mix_c2 = 0.0, mix_a2 = 1.0;
};

LevyExponent gaussian_exponent();                      // ψ(ξ) = ξ²
LevyExponent stable_exponent(double alpha);            // ψ(ξ) = |ξ|^α, α ∈ (0,2)
LevyExponent stable_mix_exponent(double c1, double a1, double c2, double a2);

// Normalisation of the stable jump density: |ξ|^α = c ∫ (1-cos⟨ξ,y⟩)|y|^{-d-α} dy.
double stable_density_constant(double alpha, int d);

// ---------------------------------------------------------------------------
// Catalog

// q(x,ξ) = |ξ|^{α(x)}, α: R^d → (0,2) validated on a sample lattice.
SymbolField make_isotropic_stable_like(std::function<double(const Vec&)> alpha, int d,
                                       CoefficientFlags flags = {});

// q(x,ξ) = -i b(x)ξ + ψ(σ(x)ξ)  (d = 1, σ ≥ 0)
SymbolField make_sde_symbol(std::function<double(double)> b, std::function<double(double)> sigma,
                            const LevyExponent& psi, CoefficientFlags flags = {});

// q(x,ξ) = φ₁(x)ψ₁(ξ) + φ₂(x)ψ₂(ξ)  (d = 1, φᵢ ≥ 0, inf(φ₁+φ₂) > 0 sampled)
SymbolField make_mixed(std::function<double(double)> phi1, std::function<double(double)> phi2,
                       const LevyExponent& psi1, const LevyExponent& psi2,
                       CoefficientFlags flags = {});

// q(x,ξ) = ∫_I |ξ|^α f(α, φ(x)) dα over I = [a0,a1] ⊂ (0,2), f > 0 bounded
SymbolField make_integrated_stable(std::function<double(double, double)> f,
                                   std::function<double(const Vec&)> phi, double a0, double a1,
                                   int d, CoefficientFlags flags = {});

// q(x,ξ) = ∫ (1-e^{iyξ}+iyξ1)κ(x,|y|)dy for a stable-dominated kernel profile
struct StableDominatedKernel {
    std::function<double(const Vec& x, double r)> profile;  // κ(x, |y|)
    double sing_exponent;
    double decay_exponent;
};
SymbolField make_stable_dominated(StableDominatedKernel kernel, int d,
                                  CoefficientFlags flags = {});

// constant-coefficient symbol from a fixed triplet (no closed form attached)
SymbolField make_constant_symbol(LevyTriplet t, std::string name);

struct CatalogEntry {
    std::string kind;
    std::string parameters;
    std::string formula;
    std::string role;
};
std::vector<CatalogEntry> catalog_entries();

}  // namespace levymp
