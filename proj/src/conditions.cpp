#include "levymp/conditions.hpp"

#include <algorithm>
#include <cmath>

namespace levymp {

const char* to_string(ConditionId id) {
    switch (id) {
        case ConditionId::LocalBounded: return "LOCAL_BOUNDED";
        case ConditionId::ContAtZero: return "CONT_AT_ZERO";
        case ConditionId::LinearGrowth: return "LINEAR_GROWTH";
        case ConditionId::C1Equibounded: return "C1_EQUIBOUNDED";
        case ConditionId::C2Equicontinuous: return "C2_EQUICONTINUOUS";
        case ConditionId::H1TailUpper: return "H1_TAIL_UPPER";
        case ConditionId::H2TwoSided: return "H2_TWO_SIDED";
        case ConditionId::H3Translation: return "H3_TRANSLATION";
    }
    return "?";
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

nlohmann::json ConditionReport::to_json() const {
    nlohmann::json j;
    j["condition_id"] = to_string(condition_id);
    j["grid_spec"] = grid_spec;
    nlohmann::json sv = nlohmann::json::array();
    for (const auto& [r, s] : sup_values) sv.push_back({{"R", r}, {"sup", s}});
    j["sup_values"] = sv;
    j["verdict"] = to_string(verdict);
    j["tolerance"] = tolerance;
    if (!note.empty()) j["note"] = note;
    return j;
}

namespace {

std::vector<Vec> ball_lattice(int d, double radius, int per_dim) {
    std::vector<Vec> pts;
    if (per_dim < 1) return pts;
    if (radius == 0.0) {
        pts.push_back(Vec(static_cast<std::size_t>(d), 0.0));
        return pts;
    }
    const auto axis = linspace(-radius, radius, per_dim);
    if (d == 1) {
        for (double v : axis) pts.push_back(Vec{v});
    } else if (d == 2) {
        for (double a : axis)
            for (double b : axis)
                if (a * a + b * b <= radius * radius * (1.0 + 1e-12)) pts.push_back(Vec{a, b});
    } else {
        for (double a : axis)
            for (double b : axis)
                for (double c : axis)
                    if (a * a + b * b + c * c <= radius * radius * (1.0 + 1e-12))
                        pts.push_back(Vec{a, b, c});
    }
    return pts;
}

std::vector<Vec> sphere_lattice(int d, double radius, int count) {
    std::vector<Vec> pts;
    if (d == 1) {
        pts.push_back(Vec{-radius});
        pts.push_back(Vec{radius});
    } else if (d == 2) {
        for (int i = 0; i < count; ++i) {
            const double th = 2.0 * 3.14159265358979323846 * i / count;
            pts.push_back(Vec{radius * std::cos(th), radius * std::sin(th)});
        }
    } else {
        throw LevympError("sphere lattice implemented for d <= 2");
    }
    return pts;
}

// sup over the family of |q(x,xi)| on the product lattice; evaluation
// failures count as +inf (unbounded sampled value).
double family_sup(std::span<const SymbolField> family, const std::vector<Vec>& xs,
                  const std::vector<Vec>& xis, bool real_part_only = false) {
    const std::size_t total = xs.size();
    std::vector<double> per_x(total, 0.0);
    parallel_for_blocks(total, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double m = 0.0;
            for (const SymbolField& sym : family) {
                for (const Vec& xi : xis) {
                    double v;
                    try {
                        const std::complex<double> q = eval_symbol(sym, xs[i], xi);
                        v = real_part_only ? std::abs(q.real()) : std::abs(q);
                    } catch (const LevympError&) {
                        v = std::numeric_limits<double>::infinity();
                    }
                    if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
                    m = std::max(m, v);
                }
            }
            per_x[i] = m;
        }
    });
    double sup = 0.0;
    for (double v : per_x) sup = std::max(sup, v);
    return sup;
}

}  // namespace

ConditionReport check_conditions(std::span<const SymbolField> family, ConditionId which,
                                 std::span<const double> R_grid, int xi_grid_density,
                                 double tolerance) {
    if (family.empty()) throw PreconditionError("check_conditions: empty symbol family");
    if (R_grid.empty()) throw PreconditionError("check_conditions: empty R grid");
    for (std::size_t i = 0; i < R_grid.size(); ++i) {
        if (!(R_grid[i] > 0.0)) throw PreconditionError("check_conditions: radii must be positive");
        if (i > 0 && !(R_grid[i] > R_grid[i - 1]))
            throw PreconditionError("check_conditions: R grid must be strictly increasing");
    }
    if (xi_grid_density < 2) throw PreconditionError("check_conditions: grid density too small");
    const int d = family.front().dim;
    for (const SymbolField& s : family)
        if (s.dim != d) throw PreconditionError("check_conditions: mixed dimensions in family");

    ConditionReport rep;
    rep.condition_id = which;
    rep.tolerance = tolerance;
    rep.grid_spec = "x,xi lattices with " + std::to_string(xi_grid_density) +
                    " points/axis; family size " + std::to_string(family.size());

    for (double R : R_grid) {
        double sup = 0.0;
        switch (which) {
            case ConditionId::LocalBounded:
            case ConditionId::C1Equibounded:
                sup = family_sup(family, ball_lattice(d, R, xi_grid_density),
                                 ball_lattice(d, 1.0, xi_grid_density));
                break;
            case ConditionId::ContAtZero:
            case ConditionId::C2Equicontinuous:
                sup = family_sup(family, ball_lattice(d, R, xi_grid_density),
                                 ball_lattice(d, 1.0 / R, xi_grid_density));
                break;
            case ConditionId::LinearGrowth:
                sup = family_sup(family, sphere_lattice(d, R, 4 * xi_grid_density),
                                 ball_lattice(d, 1.0 / R, xi_grid_density));
                break;
            default:
                throw PreconditionError("check_conditions: kernel conditions are handled by "
                                        "check_harnack_kernel");
        }
        rep.sup_values.emplace_back(R, sup);
    }

    bool all_finite = true;
    for (const auto& [r, s] : rep.sup_values) all_finite = all_finite && std::isfinite(s);

    switch (which) {
        case ConditionId::LocalBounded:
        case ConditionId::C1Equibounded:
            rep.verdict = all_finite ? Verdict::Pass : Verdict::Fail;
            break;
        case ConditionId::ContAtZero:
        case ConditionId::C2Equicontinuous: {
            if (!all_finite) {
                rep.verdict = Verdict::Fail;
                break;
            }
            if (rep.sup_values.size() < 2) {
                rep.verdict = Verdict::Inconclusive;
                rep.note = "need at least two radii to assess decay toward 0";
                break;
            }
            bool decreasing = true;
            for (std::size_t i = 1; i < rep.sup_values.size(); ++i)
                decreasing = decreasing &&
                             rep.sup_values[i].second <= rep.sup_values[i - 1].second + tolerance;
            const double first = rep.sup_values.front().second;
            const double last = rep.sup_values.back().second;
            rep.verdict = (decreasing && last <= std::max(tolerance, 0.5 * first + tolerance))
                              ? Verdict::Pass
                              : Verdict::Fail;
            break;
        }
        case ConditionId::LinearGrowth: {
            if (!all_finite) {
                rep.verdict = Verdict::Fail;
                break;
            }
            const double first = rep.sup_values.front().second;
            const double last = rep.sup_values.back().second;
            rep.verdict = last > 2.0 * first + tolerance ? Verdict::Fail : Verdict::Pass;
            break;
        }
        default: break;
    }
    return rep;
}

ConditionReport check_conditions(const SymbolField& sym, ConditionId which,
                                 std::span<const double> R_grid, int xi_grid_density,
                                 double tolerance) {
    return check_conditions(std::span<const SymbolField>(&sym, 1), which, R_grid,
                            xi_grid_density, tolerance);
}

double symbol_sup(const SymbolField& sym, double x_radius, double xi_radius, int density) {
    return family_sup(std::span<const SymbolField>(&sym, 1),
                      ball_lattice(sym.dim, x_radius, density),
                      ball_lattice(sym.dim, xi_radius, density));
}

double operator_sup_bound(const SymbolField& sym, const TestFunction& f,
                          const SupBoundOptions& opt) {
    if (!std::isfinite(f.support_radius))
        throw PreconditionError("operator_sup_bound: test function must have compact support");
    const double R = f.support_radius;
    const int d = sym.dim;

    // shell |x| in (R, shell_factor·R]
    std::vector<Vec> shell;
    const double r_hi = std::max(opt.shell_factor * std::max(R, 1.0), R + 1.0);
    for (int i = 1; i <= opt.shell_points; ++i) {
        const double rr = R + (r_hi - R) * i / opt.shell_points;
        for (const Vec& p : sphere_lattice(d, rr, 16)) shell.push_back(p);
    }

    const auto head_triplet = [&]() {
        double sup = 0.0;
        for (const Vec& x : ball_lattice(d, R, opt.x_density))
            sup = std::max(sup, sym.triplet_at(x).coeff_magnitude());
        return 2.0 * f.norm_c2() * sup;
    };

    const auto tail_nu = [&]() {
        double sup = 0.0;
        for (const Vec& x : shell) {
            Vec c = x;
            for (double& v : c) v = -v;
            sup = std::max(sup, sym.triplet_at(x).ball_mass(c, R));
        }
        return f.norm_inf * sup;
    };

    const auto tail_re_q = [&]() {
        double sup = 0.0;
        for (const Vec& x : shell) {
            const double rx = norm(x);
            for (const Vec& xi : ball_lattice(d, 1.0 / rx, opt.xi_density)) {
                const double v = std::abs(eval_symbol(sym, x, xi).real());
                sup = std::max(sup, v);
            }
        }
        return sup;
    };

    const double C1 = opt.C1 > 0.0 ? opt.C1 : project_bump_constant();
    const double C2 = opt.C2 > 0.0 ? opt.C2 : project_bump_constant();

    switch (opt.mode) {
        case SupBoundMode::TripletForm:
            return head_triplet() + tail_nu();
        case SupBoundMode::ReSymbolTail:
            return head_triplet() + C2 * f.norm_inf * tail_re_q();
        case SupBoundMode::SymbolOnly: {
            const double head = family_sup(std::span<const SymbolField>(&sym, 1),
                                           ball_lattice(d, R, opt.x_density),
                                           ball_lattice(d, 1.0, opt.xi_density));
            return C1 * f.norm_c2() * head + C2 * f.norm_inf * tail_re_q();
        }
    }
    return 0.0;
}

}  // namespace levymp
