#include "levymp/verify.hpp"

#include <algorithm>
#include <cmath>

#include "levymp/quadrature.hpp"

namespace levymp {

namespace {

Verdict apply_rule(CheckResult::Rule rule, double stat, double bound, double se, double budget) {
    if (!std::isfinite(stat) || !std::isfinite(se)) return Verdict::Inconclusive;
    if (rule == CheckResult::Rule::UpperBound)
        return stat <= bound + 3.0 * se + budget ? Verdict::Pass : Verdict::Fail;
    return std::abs(stat - bound) <= 3.0 * se + budget ? Verdict::Pass : Verdict::Fail;
}

std::size_t grid_index(const SolutionEnsemble& ens, double t, const char* what) {
    for (std::size_t i = 0; i < ens.times.size(); ++i)
        if (std::abs(ens.times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    throw PreconditionError(std::string(what) + " time " + std::to_string(t) +
                            " is not on the recorded grid");
}

}  // namespace

CheckResult CheckResult::upper_bound(std::string id, double stat, double bound, double se,
                                     double budget) {
    CheckResult r;
    r.id = std::move(id);
    r.rule = Rule::UpperBound;
    r.statistic = stat;
    r.bound_or_target = bound;
    r.std_error = se;
    r.bias_budget = budget;
    r.verdict = apply_rule(r.rule, stat, bound, se, budget);
    if (!std::isfinite(bound)) {
        r.verdict = Verdict::Pass;  // infinite bound holds automatically
        r.note = "bound is infinite; inequality holds automatically";
    }
    return r;
}

CheckResult CheckResult::equality(std::string id, double stat, double target, double se,
                                  double budget) {
    CheckResult r;
    r.id = std::move(id);
    r.rule = Rule::Equality;
    r.statistic = stat;
    r.bound_or_target = target;
    r.std_error = se;
    r.bias_budget = budget;
    r.verdict = apply_rule(r.rule, stat, target, se, budget);
    return r;
}

nlohmann::json CheckResult::to_json() const {
    nlohmann::json j;
    j["id"] = id;
    j["rule"] = rule == Rule::UpperBound ? "upper_bound" : "equality";
    j["statistic"] = statistic;
    j["bound_or_target"] = bound_or_target;
    j["std_error"] = std_error;
    j["bias_budget"] = bias_budget;
    j["verdict"] = to_string(verdict);
    if (!metadata_hash.empty()) j["inputs_hash"] = metadata_hash;
    if (!note.empty()) j["note"] = note;
    return j;
}

GeneratorTable::GeneratorTable(const SymbolField& sym, const TestFunction& f, double lo,
                               double hi, int nodes) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double ulo = std::asinh(lo), uhi = std::asinh(hi);
    std::vector<double> vals(static_cast<std::size_t>(nodes));
    parallel_for_blocks(static_cast<std::size_t>(nodes), [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            const double u = ulo + (uhi - ulo) * static_cast<double>(i) / (nodes - 1);
            vals[i] = apply_integro(sym, f, Vec{std::sinh(u)});
        }
    });
    for (double v : vals) sup_ = std::max(sup_, std::abs(v));
    table_ = UniformTable(ulo, uhi, std::move(vals));
}

// ---------------------------------------------------------------------------

CheckResult martingale_residual(const SolutionEnsemble& ens, const SymbolField& sym,
                                const TestFunction& f, double s, double t,
                                const std::vector<Probe>& probes, const MartingaleOptions& opt) {
    if (sym.dim != 1 || ens.dim != 1)
        throw PreconditionError("martingale_residual: one-dimensional ensembles only");
    const std::size_t is = grid_index(ens, s, "window start");
    const std::size_t it = grid_index(ens, t, "window end");
    if (it < is) throw PreconditionError("martingale_residual: need s <= t");
    std::vector<std::pair<std::size_t, const Probe*>> pidx;
    double prev = -1.0;
    for (const Probe& p : probes) {
        if (p.t > s + 1e-12 || p.t < prev)
            throw PreconditionError("martingale_residual: probe times must be ordered and <= s");
        prev = p.t;
        pidx.emplace_back(grid_index(ens, p.t, "probe"), &p);
    }

    double lo = 0.0, hi = 0.0;
    for (double v : ens.states) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const GeneratorTable af(sym, f, lo - 0.1, hi + 0.1, opt.af_nodes);

    const std::size_t n = ens.num_paths;
    const std::size_t m = ens.num_times();
    std::vector<double> residuals(n);
    parallel_for_blocks(n, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            const double* row = ens.states.data() + i * m;
            double w = 1.0;
            for (const auto& [k, p] : pidx) {
                const double g = p->g(row[k]);
                if (g < -1e-9 || g > 1.0 + 1e-9)
                    throw PreconditionError("martingale_residual: probe g outside [0,1]");
                w *= g;
            }
            double integral = 0.0;
            for (std::size_t k = is; k < it; ++k) {
                const double h = ens.times[k + 1] - ens.times[k];
                integral += 0.5 * h * (af(row[k]) + af(row[k + 1]));
            }
            residuals[i] = w * (f(row[it]) - f(row[is]) - integral);
        }
    });
    const MeanSE ms = mean_se(residuals);

    double scale = opt.euler_bias_scale;
    if (scale <= 0.0) {
        // state-independent coefficients make the Euler increments exact in law
        const double m0 = sym.triplet_at(Vec{0.25 * lo + 0.125}).coeff_magnitude();
        double var = 0.0, mx = 0.0;
        for (double x : linspace(lo, hi, 9)) {
            const double mg = sym.triplet_at(Vec{x}).coeff_magnitude();
            var = std::max(var, std::abs(mg - m0));
            mx = std::max(mx, mg);
        }
        scale = var <= 1e-10 * std::max(1.0, m0) ? 1.0 : 1.0 + mx;
    }
    const double budget = f.norm_c2() * ens.dt_sim * scale;

    CheckResult r = CheckResult::equality("martingale_residual", ms.mean, 0.0, ms.se, budget);
    HashAccumulator h;
    h.add(ens.content_hash());
    h.add(s);
    h.add(t);
    h.add(sym.name);
    r.metadata_hash = h.hex();
    return r;
}

CheckResult maximal_inequality_check(const SolutionEnsemble& ens, const SymbolField& sym,
                                     double r, double R, double t, int lattice_density,
                                     double c_constant) {
    if (!(R >= 2.0 * r) || !(r > 0.0))
        throw PreconditionError("maximal_inequality_check: need R >= 2r > 0");
    const std::size_t it = grid_index(ens, t, "horizon");
    const std::size_t m = ens.num_times();
    const std::size_t n = ens.num_paths;
    std::vector<double> flags(n);
    parallel_for_blocks(n, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            const double* row = ens.states.data() + i * m;
            bool hit = false;
            if (std::abs(row[0]) <= r) {
                for (std::size_t k = 0; k <= it; ++k) {
                    if (std::abs(row[k]) >= R) {
                        hit = true;
                        break;
                    }
                }
            }
            flags[i] = hit ? 1.0 : 0.0;
        }
    });
    const double p = pairwise_sum(flags) / static_cast<double>(n);
    const double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(n)) /
                                static_cast<double>(n));
    const double c = c_constant > 0.0 ? c_constant : project_bump_constant();
    const double bound = c * t * symbol_sup(sym, R, 1.0 / R, lattice_density);
    CheckResult out = CheckResult::upper_bound("maximal_inequality", p, bound, se);
    HashAccumulator h;
    h.add(ens.content_hash());
    h.add(r);
    h.add(R);
    h.add(t);
    out.metadata_hash = h.hex();
    return out;
}

ExceedanceProfile compact_containment_profile(std::span<const SolutionEnsemble* const> family,
                                              double T, std::span<const double> R_grid,
                                              double epsilon) {
    if (family.empty()) throw PreconditionError("compact_containment_profile: empty family");
    ExceedanceProfile prof;
    prof.epsilon = epsilon;
    for (double R : R_grid) {
        double sup = 0.0;
        for (const SolutionEnsemble* e : family) {
            const std::size_t it = grid_index(*e, std::min(T, e->horizon()), "horizon");
            const std::size_t m = e->num_times();
            std::vector<double> flags(e->num_paths);
            parallel_for_blocks(e->num_paths, [&](std::size_t a, std::size_t b) {
                for (std::size_t i = a; i < b; ++i) {
                    const double* row = e->states.data() + i * m;
                    bool hit = false;
                    for (std::size_t k = 0; k <= it; ++k)
                        if (std::abs(row[k]) >= R) {
                            hit = true;
                            break;
                        }
                    flags[i] = hit ? 1.0 : 0.0;
                }
            });
            sup = std::max(sup, pairwise_sum(flags) / static_cast<double>(e->num_paths));
        }
        prof.points.emplace_back(R, sup);
    }
    prof.verdict = prof.points.back().second <= epsilon ? Verdict::Pass : Verdict::Fail;
    return prof;
}

nlohmann::json ExceedanceProfile::to_json() const {
    nlohmann::json j;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& [r, p] : points) pts.push_back({{"R", r}, {"exceedance", p}});
    j["profile"] = pts;
    j["epsilon"] = epsilon;
    j["verdict"] = to_string(verdict);
    return j;
}

// ---------------------------------------------------------------------------

double lp_norm(const std::function<double(double)>& u, const KrylovMeasure& m, double p) {
    if (!(p >= 1.0)) throw PreconditionError("lp_norm: need p >= 1");
    std::vector<double> cuts{-m.extent};
    for (double s : m.singular_points)
        if (s > -m.extent && s < m.extent) cuts.push_back(s);
    cuts.push_back(m.extent);
    std::sort(cuts.begin(), cuts.end());
    const auto integrand = [&](double y) {
        return std::pow(std::abs(u(y)), p) * m.density(y);
    };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        // integrable singularities sit at the segment ends: sweep into both
        const double mid = 0.5 * (a + b);
        const QuadResult left = integrate_to_zero([&](double r) { return integrand(a + r); },
                                                  mid - a, 1e-10);
        const QuadResult right = integrate_to_zero([&](double r) { return integrand(b - r); },
                                                   b - mid, 1e-10);
        if (!left.converged || !right.converged)
            return std::numeric_limits<double>::infinity();
        acc += left.value + right.value;
    }
    return std::pow(acc, 1.0 / p);
}

CheckResult krylov_check(const SolutionEnsemble& ens, const std::function<double(double)>& u,
                         const KrylovMeasure& m, double p, double c, double T) {
    const std::size_t it = grid_index(ens, T, "horizon");
    const std::size_t nt = ens.num_times();
    std::vector<double> vals(ens.num_paths);
    parallel_for_blocks(ens.num_paths, [&](std::size_t a, std::size_t b) {
        for (std::size_t i = a; i < b; ++i) {
            const double* row = ens.states.data() + i * nt;
            double integral = 0.0;
            for (std::size_t k = 0; k < it; ++k) {
                const double ua = u(row[k]), ub = u(row[k + 1]);
                if (ua < 0.0 || ub < 0.0)
                    throw PreconditionError("krylov_check: u must be nonnegative");
                integral += 0.5 * (ens.times[k + 1] - ens.times[k]) * (ua + ub);
            }
            vals[i] = integral;
        }
    });
    const MeanSE ms = mean_se(vals);
    const double bound = c * lp_norm(u, m, p);
    CheckResult r = CheckResult::upper_bound("krylov_estimate", ms.mean, bound, ms.se);
    if (!std::isfinite(bound)) r.note = "‖u‖_{L^p(m)} = ∞: estimate holds automatically";
    HashAccumulator h;
    h.add(ens.content_hash());
    h.add(p);
    h.add(c);
    h.add(T);
    r.metadata_hash = h.hex();
    return r;
}

// ---------------------------------------------------------------------------

double q_majorant(double abs_z, double gamma0L, double gammaInfL, int d) {
    if (!(gamma0L > 0.0) || gamma0L > 2.0 || !(gammaInfL > 0.0) || gammaInfL > 2.0)
        throw PreconditionError("q_majorant: exponents must lie in (0,2]");
    const double z = std::abs(abs_z);
    if (z == 0.0) return 1.0;
    if (z >= 1.0) return std::pow(z, -d - std::min(gamma0L, gammaInfL));
    return 1.0 + std::abs(std::log(z)) + std::pow(z, -d + gammaInfL);
}

double q_majorant(const Vec& z, double gamma0L, double gammaInfL) {
    return q_majorant(norm(z), gamma0L, gammaInfL, static_cast<int>(z.size()));
}

double s_majorant(double abs_z, double gammaInf, double gamma0, double t, int d) {
    if (!(t > 0.0)) throw PreconditionError("s_majorant: need t > 0");
    if (!(gammaInf > 0.0) || gammaInf > 2.0 || !(gamma0 > 0.0) || gamma0 > 2.0)
        throw PreconditionError("s_majorant: exponents must lie in (0,2]");
    const double z = std::abs(abs_z);
    const double t_scale = std::pow(t, 1.0 / gammaInf);
    if (z <= std::min(t_scale, 1.0)) return std::pow(t, -static_cast<double>(d) / gammaInf);
    if (z <= 1.0) return t / std::pow(z, d + gammaInf);
    return t / std::pow(z, d + std::min(gammaInf, gamma0));
}

double s_majorant(const Vec& z, double gammaInf, double gamma0, double t) {
    return s_majorant(norm(z), gammaInf, gamma0, t, static_cast<int>(z.size()));
}

KrylovMeasure krylov_measure_from_majorant(double gamma0L, double gammaInfL, int d,
                                           const std::vector<std::pair<double, double>>& mu_atoms,
                                           double extent) {
    if (mu_atoms.empty())
        throw PreconditionError("krylov_measure_from_majorant: empty initial law");
    KrylovMeasure m;
    m.extent = extent;
    m.desc = "sum_i w_i Q(x_i - y) dy";
    for (const auto& [x, w] : mu_atoms) {
        (void)w;
        m.singular_points.push_back(x);
    }
    auto atoms = mu_atoms;
    m.density = [atoms, gamma0L, gammaInfL, d](double y) {
        double acc = 0.0;
        for (const auto& [x, w] : atoms) acc += w * q_majorant(x - y, gamma0L, gammaInfL, d);
        return acc;
    };
    return m;
}

// ---------------------------------------------------------------------------

double generator_gap(std::span<const SymbolField> approximations, const SymbolField& limit,
                     const TestFunction& f, const KrylovMeasure& m, double p,
                     const std::function<double(double)>& g, int af_nodes) {
    const double lo = -m.extent - 1.0, hi = m.extent + 1.0;
    const auto norm_of = [&](const SymbolField& sym) {
        const GeneratorTable af(sym, f, lo, hi, af_nodes);
        return lp_norm([&](double y) { return af(y) - g(y); }, m, p);
    };
    double worst = 0.0;
    for (const SymbolField& a : approximations) worst = std::max(worst, norm_of(a));
    return worst + norm_of(limit);
}

}  // namespace levymp
