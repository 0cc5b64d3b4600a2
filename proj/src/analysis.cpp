#include "levymp/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace levymp {

namespace {

// exact ∫ e^{-λt}·(piecewise-linear interpolant) dt weights per grid interval:
// piece = f_a·(E - C) + f_b·C with E = (e^{-λa}-e^{-λb})/λ, C = E/(λh) - e^{-λb}/λ;
// both weights are nonnegative, so bounds on f carry over exactly.
struct DiscountWeights {
    std::vector<double> wa, wb;
    double tail_factor = 0.0;  // e^{-λT}/λ multiplying f(X_T)
};

DiscountWeights discount_weights(const std::vector<double>& times, double lambda) {
    DiscountWeights w;
    const std::size_t m = times.size();
    w.wa.resize(m > 0 ? m - 1 : 0);
    w.wb.resize(w.wa.size());
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const double a = times[k], b = times[k + 1], h = b - a;
        const double ea = std::exp(-lambda * a), eb = std::exp(-lambda * b);
        const double E = (ea - eb) / lambda;
        const double C = E / (lambda * h) - eb / lambda;
        w.wa[k] = E - C;
        w.wb[k] = C;
    }
    w.tail_factor = m > 0 ? std::exp(-lambda * times.back()) / lambda : 0.0;
    return w;
}

void require_dirac_start(const SolutionEnsemble& ens, const char* who) {
    const double x0 = ens.state(0, 0);
    for (std::size_t i = 1; i < ens.num_paths; ++i)
        if (std::abs(ens.state(i, 0) - x0) > 1e-12)
            throw PreconditionError(std::string(who) +
                                    ": ensemble must start from a Dirac initial law");
}

}  // namespace

ResolventEstimate resolvent_mc(const SolutionEnsemble& ens,
                               const std::function<double(double)>& f, double lambda,
                               double f_sup, double tail_tol) {
    if (!(lambda > 0.0)) throw PreconditionError("resolvent_mc: need lambda > 0");
    require_dirac_start(ens, "resolvent_mc");
    const double tail_rel = std::exp(-lambda * ens.horizon());
    if (tail_rel > tail_tol)
        throw PreconditionError("resolvent_mc: horizon too short for the tail tolerance "
                                "(e^{-λT} = " + std::to_string(tail_rel) + ")");
    const DiscountWeights w = discount_weights(ens.times, lambda);
    const std::size_t m = ens.num_times();
    std::vector<double> vals(ens.num_paths);
    parallel_for_blocks(ens.num_paths, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            const double* row = ens.states.data() + i * m;
            double acc = 0.0;
            double fb = f(row[0]);
            for (std::size_t k = 0; k + 1 < m; ++k) {
                const double fa = fb;
                fb = f(row[k + 1]);
                acc += w.wa[k] * fa + w.wb[k] * fb;
            }
            vals[i] = acc + w.tail_factor * fb;
        }
    });
    const MeanSE ms = mean_se(vals);
    ResolventEstimate r;
    r.value = ms.mean;
    r.std_error = ms.se;
    r.tail_bound = tail_rel * f_sup / lambda;
    return r;
}

SupResolvent sup_resolvent(std::span<const SolutionEnsemble* const> family,
                           const std::function<double(double)>& f, double lambda, double f_sup,
                           double tail_tol) {
    if (family.empty()) throw PreconditionError("sup_resolvent: empty ensemble list");
    const double x0 = family.front()->state(0, 0);
    SupResolvent out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (std::abs(family[i]->state(0, 0) - x0) > 1e-12)
            throw PreconditionError("sup_resolvent: ensembles start at different points");
        out.per_ensemble.push_back(resolvent_mc(*family[i], f, lambda, f_sup, tail_tol));
        if (i == 0 || out.per_ensemble[i].value > out.value) {
            out.value = out.per_ensemble[i].value;
            out.argmax = i;
        }
    }
    return out;
}

CheckResult resolvent_identity_check(const SolutionEnsemble& ens, const SymbolField& sym,
                                     const TestFunction& phi, double lambda, double x,
                                     double tail_tol) {
    require_dirac_start(ens, "resolvent_identity_check");
    if (std::abs(ens.state(0, 0) - x) > 1e-12)
        throw PreconditionError("resolvent_identity_check: ensemble not started at x");
    const double tail_rel = std::exp(-lambda * ens.horizon());
    if (tail_rel > tail_tol)
        throw PreconditionError("resolvent_identity_check: horizon too short");

    double lo = 0.0, hi = 0.0;
    for (double v : ens.states) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const GeneratorTable aphi(sym, phi, lo - 0.1, hi + 0.1);
    const auto h = [&](double y) { return lambda * phi(y) - aphi(y); };

    const DiscountWeights w = discount_weights(ens.times, lambda);
    const std::size_t m = ens.num_times();
    std::vector<double> vals(ens.num_paths);
    parallel_for_blocks(ens.num_paths, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            const double* row = ens.states.data() + i * m;
            double acc = 0.0;
            double fb = h(row[0]);
            for (std::size_t k = 0; k + 1 < m; ++k) {
                const double fa = fb;
                fb = h(row[k + 1]);
                acc += w.wa[k] * fa + w.wb[k] * fb;
            }
            vals[i] = acc + w.tail_factor * fb;
        }
    });
    const MeanSE ms = mean_se(vals);
    const double h_sup = lambda * phi.norm_inf + aphi.sup_abs();
    const double budget =
        (1.0 + lambda) * phi.norm_c2() * ens.dt_sim + 2.0 * tail_rel * h_sup / lambda;
    CheckResult r = CheckResult::equality("resolvent_identity", ms.mean, phi(x), ms.se, budget);
    HashAccumulator hh;
    hh.add(ens.content_hash());
    hh.add(lambda);
    hh.add(x);
    r.metadata_hash = hh.hex();
    return r;
}

// ---------------------------------------------------------------------------

nlohmann::json ViscosityReport::to_json() const {
    nlohmann::json j;
    j["residual"] = residual;
    j["tolerance"] = tolerance;
    j["mode"] = mode == ViscosityMode::Sub ? "sub" : "super";
    j["verdict"] = to_string(verdict);
    return j;
}

ViscosityReport viscosity_residual(const std::function<double(double)>& u_hat,
                                   const TestFunction& phi, double x0, double lambda,
                                   const std::function<double(double)>& f, const SymbolField& sym,
                                   ViscosityMode mode, std::span<const double> lattice,
                                   double extremum_tol, double residual_tol) {
    if (lattice.empty()) throw PreconditionError("viscosity_residual: empty lattice");
    const double sign = mode == ViscosityMode::Sub ? 1.0 : -1.0;
    double best = -std::numeric_limits<double>::infinity();
    for (double y : lattice) best = std::max(best, sign * (u_hat(y) - phi(y)));
    const double at_x0 = sign * (u_hat(x0) - phi(x0));
    if (at_x0 < best - extremum_tol)
        throw PreconditionError("viscosity_residual: x0 is not a lattice " +
                                std::string(mode == ViscosityMode::Sub ? "maximum" : "minimum") +
                                " of u - φ (gap " + std::to_string(best - at_x0) + ")");
    ViscosityReport rep;
    rep.mode = mode;
    rep.tolerance = residual_tol;
    rep.residual = lambda * u_hat(x0) - apply_integro(sym, phi, Vec{x0}) - f(x0);
    rep.verdict = (mode == ViscosityMode::Sub ? rep.residual <= residual_tol
                                              : rep.residual >= -residual_tol)
                      ? Verdict::Pass
                      : Verdict::Fail;
    return rep;
}

// ---------------------------------------------------------------------------

HarmonicEstimate harmonic_mc(const SdeScheme& scheme, double x, const BallSpec& D,
                             const std::function<double(double)>& g, std::size_t N,
                             std::uint64_t seed, const ExitOptions& opt) {
    if (std::abs(x - D.center) >= D.radius)
        throw PreconditionError("harmonic_mc: start point is not inside D");
    const bool bridge = opt.bridge_correction && scheme.driver.kind == DriverLaw::Kind::Gaussian;
    const double up = D.center + D.radius, down = D.center - D.radius;
    const auto max_steps = static_cast<std::size_t>(std::llround(opt.horizon / scheme.dt));

    std::vector<double> gvals(N), times(N), exited(N);
    parallel_for_blocks(N, [&](std::size_t lo_i, std::size_t hi_i) {
        for (std::size_t i = lo_i; i < hi_i; ++i) {
            PathStepper walker(scheme, x, seed, i);
            Rng bridge_rng(seed ^ 0x9e3779b97f4a7c15ULL, i);
            double exit_state = 0.0;
            bool out = false;
            for (std::size_t k = 0; k < max_steps; ++k) {
                const double prev = walker.state();
                const double cur = walker.step();
                if (std::abs(cur - D.center) >= D.radius) {
                    exit_state = cur;  // overshoot kept: jumps land outside D
                    out = true;
                    break;
                }
                if (bridge) {
                    const double var = 2.0 * scheme.sigma(prev) * scheme.sigma(prev) * scheme.dt;
                    if (var > 0.0) {
                        const double pu = std::exp(-2.0 * (up - prev) * (up - cur) / var);
                        const double pd = std::exp(-2.0 * (prev - down) * (cur - down) / var);
                        const double u = bridge_rng.uniform();
                        if (u < pu) {
                            exit_state = up;
                            out = true;
                            break;
                        }
                        if (u < pu + pd) {
                            exit_state = down;
                            out = true;
                            break;
                        }
                    }
                }
            }
            exited[i] = out ? 1.0 : 0.0;
            times[i] = out ? walker.time() : opt.horizon;
            gvals[i] = out ? g(exit_state) : 0.0;
        }
    });

    HarmonicEstimate est;
    std::vector<double> g_observed;
    g_observed.reserve(N);
    double t_acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        if (exited[i] > 0.5) {
            g_observed.push_back(gvals[i]);
            t_acc += times[i];
            est.max_exit_time = std::max(est.max_exit_time, times[i]);
        }
    }
    est.exceed_fraction =
        1.0 - static_cast<double>(g_observed.size()) / static_cast<double>(N);
    if (!g_observed.empty()) {
        const MeanSE ms = mean_se(g_observed);
        est.value = ms.mean;
        est.std_error = ms.se;
        est.mean_exit_time = t_acc / static_cast<double>(g_observed.size());
    }
    est.verdict = est.exceed_fraction > 0.0 ? Verdict::Inconclusive : Verdict::Pass;
    return est;
}

nlohmann::json HarnackReport::to_json() const {
    nlohmann::json j;
    j["ratio"] = ratio;
    j["ratio_lo"] = ratio_lo;
    j["ratio_hi"] = ratio_hi;
    j["argmax"] = argmax;
    j["argmin"] = argmin;
    j["verdict"] = to_string(verdict);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points)
        pts.push_back({{"x", p.x},
                       {"value", p.estimate.value},
                       {"std_error", p.estimate.std_error},
                       {"mean_exit_time", p.estimate.mean_exit_time}});
    j["points"] = pts;
    return j;
}

HarnackReport harnack_ratio(const SdeScheme& scheme, double x0, double r,
                            const std::function<double(double)>& g,
                            std::span<const double> probes, std::size_t N, std::uint64_t seed,
                            const ExitOptions& opt) {
    if (probes.empty()) throw PreconditionError("harnack_ratio: no probe points");
    const BallSpec D{x0, 2.0 * r};
    HarnackReport rep;
    bool inconclusive = false;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const double x = probes[k];
        if (std::abs(x - x0) >= r)
            throw PreconditionError("harnack_ratio: probe outside the inner ball");
        HarnackPoint pt;
        pt.x = x;
        pt.estimate = harmonic_mc(scheme, x, D, g, N,
                                  seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)), opt);
        if (pt.estimate.value < -1e-12)
            throw PreconditionError("harnack_ratio: g must be nonnegative");
        inconclusive = inconclusive || pt.estimate.verdict == Verdict::Inconclusive;
        rep.points.push_back(pt);
    }
    const auto cmp = [](const HarnackPoint& a, const HarnackPoint& b) {
        return a.estimate.value < b.estimate.value;
    };
    const auto mx = std::max_element(rep.points.begin(), rep.points.end(), cmp);
    const auto mn = std::min_element(rep.points.begin(), rep.points.end(), cmp);
    rep.argmax = mx->x;
    rep.argmin = mn->x;
    const double vmax = mx->estimate.value, vmin = mn->estimate.value;
    const double smax = mx->estimate.std_error, smin = mn->estimate.std_error;
    if (vmin <= 3.0 * smin) {
        rep.verdict = Verdict::Inconclusive;  // min indistinguishable from 0
        rep.ratio = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.ratio = vmax / vmin;
    rep.ratio_lo = std::max(1.0, (vmax - 3.0 * smax) / (vmin + 3.0 * smin));
    rep.ratio_hi = (vmax + 3.0 * smax) / (vmin - 3.0 * smin);
    rep.verdict = inconclusive ? Verdict::Inconclusive : Verdict::Pass;
    return rep;
}

// ---------------------------------------------------------------------------

bool HarnackKernelReport::all_pass() const {
    return gap_ok && h1.verdict == Verdict::Pass && h2.verdict == Verdict::Pass &&
           h3.verdict == Verdict::Pass;
}

nlohmann::json HarnackKernelReport::to_json() const {
    nlohmann::json j;
    j["h1"] = h1.to_json();
    j["h2"] = h2.to_json();
    j["h3"] = h3.to_json();
    j["gap_ok"] = gap_ok;
    return j;
}

HarnackKernelReport check_harnack_kernel(const std::function<double(double, double)>& kappa,
                                         const HarnackKernelParams& p) {
    constexpr int d = 1;
    Rng rng(p.seed, 0);
    HarnackKernelReport rep;
    rep.gap_ok = p.beta - p.alpha < 1.0;

    // tail condition: κ(x,y) <= c1 |y|^{-d-tail} for |y| > 2
    double worst1 = 0.0;
    for (std::size_t i = 0; i < p.samples; ++i) {
        const double x = rng.uniform(-p.x_range, p.x_range);
        const double mag = 2.0 * std::pow(p.y_max / 2.0, rng.uniform());
        const double y = rng.uniform() < 0.5 ? -mag : mag;
        worst1 = std::max(worst1, kappa(x, y) / (p.c1 * std::pow(std::abs(y), -d - p.tail_exponent)));
    }
    rep.h1.condition_id = ConditionId::H1TailUpper;
    rep.h1.grid_spec = std::to_string(p.samples) + " samples, |y| in (2," +
                       std::to_string(p.y_max) + "]";
    rep.h1.sup_values = {{p.y_max, worst1}};
    rep.h1.tolerance = 1e-9;
    rep.h1.verdict = worst1 <= 1.0 + 1e-9 ? Verdict::Pass : Verdict::Fail;

    // two-sided local condition on 0 < |y| <= 2
    double worst_lo = 0.0, worst_hi = 0.0;
    for (std::size_t i = 0; i < p.samples; ++i) {
        const double x = rng.uniform(-p.x_range, p.x_range);
        const double mag = 2.0 * std::pow(1e-6 / 2.0, rng.uniform());
        const double y = rng.uniform() < 0.5 ? -mag : mag;
        const double k = kappa(x, y);
        worst_lo = std::max(worst_lo, p.c2 * std::pow(std::abs(y), -d - p.alpha) / k);
        worst_hi = std::max(worst_hi, k / (p.c3 * std::pow(std::abs(y), -d - p.beta)));
    }
    rep.h2.condition_id = ConditionId::H2TwoSided;
    rep.h2.grid_spec = std::to_string(p.samples) + " samples, |y| in (1e-6,2]";
    rep.h2.sup_values = {{0.0, worst_lo}, {2.0, worst_hi}};
    rep.h2.tolerance = 1e-9;
    rep.h2.verdict =
        worst_lo <= 1.0 + 1e-9 && worst_hi <= 1.0 + 1e-9 ? Verdict::Pass : Verdict::Fail;

    // translation comparability on |x-y| <= 1, |x-z| >= 1, |y-z| >= 1
    double worst3 = 0.0;
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < 20 * p.samples && accepted < p.samples; ++i) {
        const double x = rng.uniform(-p.x_range, p.x_range);
        const double y = x + rng.uniform(-1.0, 1.0);
        const double z = rng.uniform(-p.z_range, p.z_range);
        if (std::abs(x - z) < 1.0 || std::abs(y - z) < 1.0) continue;
        ++accepted;
        worst3 = std::max(worst3, kappa(x, x - z) / (p.c4 * kappa(y, y - z)));
    }
    rep.h3.condition_id = ConditionId::H3Translation;
    rep.h3.grid_spec = std::to_string(accepted) + " accepted samples, |x-y|<=1, |x-z|,|y-z|>=1";
    rep.h3.sup_values = {{p.z_range, worst3}};
    rep.h3.tolerance = 1e-9;
    rep.h3.verdict = worst3 <= 1.0 + 1e-9 ? Verdict::Pass : Verdict::Fail;
    if (!rep.gap_ok) rep.h3.note = "order gap condition fails: beta - alpha >= 1";
    return rep;
}

}  // namespace levymp
