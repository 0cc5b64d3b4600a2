// Path generation: Lévy increments (E e^{iξL_t} = e^{-tψ(ξ)} convention),
// Euler schemes X_{k+1} = X_k + b(X_k)dt + σ(X_k)ΔL_k with left-limit
// coefficient evaluation, the closed-form ODE selection example, and
// reproducible path ensembles with per-path counter-based RNG streams.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "levymp/common.hpp"
#include "levymp/rng.hpp"
#include "levymp/symbol.hpp"

namespace levymp {

// One càdlàg trajectory on a time grid; the state at t is the post-jump value.
struct PathSkeleton {
    int dim = 1;
    std::vector<double> times;   // strictly increasing, times[0] = 0
    std::vector<double> states;  // times.size()·dim, time-major
    std::vector<std::uint32_t> jump_marks;  // grid indices with |ΔX| > threshold

    double state1(std::size_t t) const { return states[t * static_cast<std::size_t>(dim)]; }
    void validate() const;  // grid monotone from 0, all states finite
};

struct CompoundPoissonTable;

// Driving-noise laws. Increments are exact in law for Gaussian/stable kinds;
// jump-density drivers use compound Poisson above the cutoff ε plus a
// Gaussian substitute for the small jumps.
struct DriverLaw {
    enum class Kind { Gaussian, AlphaStable, StableMix, CompoundPoisson };
    Kind kind = Kind::Gaussian;
    double alpha = 2.0;
    double c1 = 1.0, a1 = 1.0, c2 = 0.0, a2 = 1.0;
    std::shared_ptr<const CompoundPoissonTable> cp;

    static DriverLaw gaussian();                    // ψ(ξ) = ξ²
    static DriverLaw alpha_stable(double alpha);    // ψ(ξ) = |ξ|^α, α ∈ (0,2]
    static DriverLaw stable_mix(double c1, double a1, double c2, double a2);
    static DriverLaw jump_density(const RadialDensity& profile, double eps = 1e-3);

    std::string describe() const;
};

// One increment of the Lévy process with exponent ψ over time dt.
double sample_levy_increment(const DriverLaw& law, double dt, Rng& rng);

struct SdeScheme {
    std::function<double(double)> drift;   // b
    std::function<double(double)> sigma;   // σ ≥ 0
    DriverLaw driver;
    double T = 1.0;
    double dt = 1.0 / 256.0;
    int record_stride = 1;   // states recorded every record_stride steps
    double jump_mark_threshold = 0.5;
    double blowup_guard = 1e12;
    std::string drift_desc = "b", sigma_desc = "sigma";

    std::size_t num_steps() const;
    std::string describe() const;
};

PathSkeleton simulate_sde_path(const SdeScheme& scheme, double x0, Rng& rng,
                               std::size_t path_index = 0);

// Step-by-step walker for first-exit functionals (early stopping).
class PathStepper {
public:
    PathStepper(const SdeScheme& scheme, double x0, std::uint64_t master_seed,
                std::uint64_t path_index);
    double state() const { return x_; }
    double prev_state() const { return prev_; }
    double time() const { return t_; }
    double step();  // advance by dt; throws BlowUpError at the guard

private:
    const SdeScheme& scheme_;
    Rng rng_;
    double x_, prev_, t_;
    std::size_t path_index_;
};

enum class OdeBranch { XBranch, YBranch };

// Closed-form selections of dX = 2 sgn(X)√|X| dt, exact on the grid.
PathSkeleton ode_selection_path(double x0, OdeBranch branch, double T, double dt);
double ode_selection_value(double x0, OdeBranch branch, double t);

struct InitialLaw {
    std::function<double(Rng&)> sample;
    std::function<double(double)> cdf;  // optional (used by the KS invariant)
    std::string desc;

    static InitialLaw dirac(double x);
    static InitialLaw uniform(double a, double b);
};

struct SolutionEnsemble {
    int dim = 1;
    std::size_t num_paths = 0;
    std::vector<double> times;   // recorded grid (shared by all paths)
    std::vector<double> states;  // path-major: states[i·num_times + t]
    std::vector<std::uint64_t> jump_mark_offsets;  // size num_paths + 1
    std::vector<std::uint32_t> jump_marks_flat;
    std::uint64_t master_seed = 0;
    std::string scheme_desc;
    std::string initial_law_desc;
    double dt_sim = 0.0;

    std::size_t num_times() const { return times.size(); }
    double state(std::size_t path, std::size_t t) const { return states[path * times.size() + t]; }
    double horizon() const { return times.empty() ? 0.0 : times.back(); }
    std::uint64_t content_hash() const;

    // shared-grid/finite-state invariants plus the initial-law KS bound
    // (KS < 3/√N) when the initial cdf is available.
    void validate(const std::function<double(double)>& initial_cdf = nullptr) const;
};

// N independent paths; path i draws from the stream (master_seed, i), so the
// result is a pure function of (scheme, μ, N, master_seed) independent of the
// thread partition.
SolutionEnsemble simulate_ensemble(const SdeScheme& scheme, const InitialLaw& mu, std::size_t N,
                                   std::uint64_t master_seed);

// Compact binary layout + JSON sidecar (format documented in the README).
void save_ensemble(const SolutionEnsemble& e, const std::string& bin_path,
                   const std::string& sidecar_path);
SolutionEnsemble load_ensemble(const std::string& bin_path, const std::string& sidecar_path);
void export_ensemble_csv(std::ostream& os, const SolutionEnsemble& e,
                         std::size_t max_paths = 64);

}  // namespace levymp
