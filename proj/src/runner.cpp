#include "levymp/runner.hpp"

#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "levymp/analysis.hpp"
#include "levymp/mollify.hpp"
#include "levymp/toml.hpp"

namespace levymp {

namespace {

struct CoeffSpec {
    std::function<double(double)> fn;
    std::string desc;
    // pre-mollification description: set for mollified_* forms so the runner
    // can rebuild the coefficient at other levels
    std::function<double(double)> base;
    double base_sup = 0.0;
    int level = 0;
    double center = 0.0;
};

std::function<double(double)> mollified_cached(const std::function<double(double)>& base,
                                               double sup, int level, double center) {
    const MollifiedFunction m = mollify(base, sup, level);
    return tabulated(m, center - 2.0, center + 2.0, 4097);
}

CoeffSpec parse_coeff(const toml::Document& doc, const std::string& p) {
    CoeffSpec c;
    const std::string form = doc.get_string(p + ".form");
    if (form == "constant") {
        const double v = doc.get_number(p + ".value");
        c.fn = [v](double) { return v; };
        c.desc = "const(" + std::to_string(v) + ")";
    } else if (form == "step") {
        const double l = doc.get_number(p + ".left"), r = doc.get_number(p + ".right");
        const double at = doc.get_number(p + ".at", 0.0);
        c.fn = [l, r, at](double x) { return x >= at ? r : l; };
        c.desc = "step";
    } else if (form == "sin") {
        const double b = doc.get_number(p + ".base"), a = doc.get_number(p + ".amp");
        const double w = doc.get_number(p + ".freq", 1.0);
        c.fn = [b, a, w](double x) { return b + a * std::sin(w * x); };
        c.desc = "sin";
    } else if (form == "polynomial") {
        const std::vector<double> coeffs = doc.get_number_array(p + ".coeffs");
        c.fn = [coeffs](double x) {
            double acc = 0.0;
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
            return acc;
        };
        c.desc = "poly";
    } else if (form == "mollified_step" || form == "mollified_sgn") {
        double l, r, at = 0.0;
        if (form == "mollified_step") {
            l = doc.get_number(p + ".left");
            r = doc.get_number(p + ".right");
            at = doc.get_number(p + ".at", 0.0);
        } else {
            const double s = doc.get_number(p + ".scale", 1.0);
            l = -s;
            r = s;
        }
        c.level = static_cast<int>(doc.get_int(p + ".level", 40));
        c.base = [l, r, at](double x) { return x >= at ? r : l; };
        c.base_sup = std::max(std::abs(l), std::abs(r));
        c.center = at;
        c.fn = mollified_cached(c.base, c.base_sup, c.level, at);
        c.desc = form + "(level=" + std::to_string(c.level) + ")";
    } else {
        throw ConfigError("unknown coefficient form '" + form + "' at " + p);
    }
    return c;
}

CoeffSpec coeff_at_level(const CoeffSpec& c, int level) {
    if (!c.base) return c;
    CoeffSpec out = c;
    out.level = level;
    out.fn = mollified_cached(c.base, c.base_sup, level, c.center);
    out.desc = "mollified(level=" + std::to_string(level) + ")";
    return out;
}

LevyExponent parse_psi(const toml::Document& doc, const std::string& p) {
    const std::string kind = doc.get_string(p + ".kind");
    if (kind == "gaussian") return gaussian_exponent();
    if (kind == "alpha_stable") return stable_exponent(doc.get_number(p + ".alpha"));
    if (kind == "stable_mix")
        return stable_mix_exponent(doc.get_number(p + ".c1"), doc.get_number(p + ".a1"),
                                   doc.get_number(p + ".c2"), doc.get_number(p + ".a2"));
    throw ConfigError("unknown psi kind '" + kind + "'");
}

struct SymbolBuild {
    SymbolField sym;
    std::vector<SymbolField> family;  // mollified coefficient family
    std::vector<int> family_levels;
    CoeffSpec drift, sigma;
    bool is_sde = false;
    LevyExponent psi;
};

SymbolBuild build_symbol(const toml::Document& doc) {
    SymbolBuild b;
    const std::string kind = doc.get_string("symbol.kind");
    CoefficientFlags flags;
    flags.continuous_in_x = doc.get_bool("symbol.continuous", true);
    if (kind == "sde_symbol") {
        b.is_sde = true;
        b.drift = parse_coeff(doc, "symbol.drift");
        b.sigma = parse_coeff(doc, "symbol.sigma");
        b.psi = parse_psi(doc, "symbol.psi");
        b.sym = make_sde_symbol(b.drift.fn, b.sigma.fn, b.psi, flags);
        if (doc.has("mollify.levels")) {
            for (double lv : doc.get_number_array("mollify.levels")) {
                const int level = static_cast<int>(lv);
                b.family_levels.push_back(level);
                b.family.push_back(make_sde_symbol(coeff_at_level(b.drift, level).fn,
                                                   coeff_at_level(b.sigma, level).fn, b.psi,
                                                   flags));
            }
        }
    } else if (kind == "isotropic_stable_like") {
        CoeffSpec alpha = parse_coeff(doc, "symbol.alpha");
        auto fn = alpha.fn;
        b.sym = make_isotropic_stable_like([fn](const Vec& x) { return fn(x[0]); }, 1, flags);
    } else if (kind == "mixed") {
        CoeffSpec phi1 = parse_coeff(doc, "symbol.phi1");
        CoeffSpec phi2 = parse_coeff(doc, "symbol.phi2");
        b.sym = make_mixed(phi1.fn, phi2.fn, parse_psi(doc, "symbol.psi1"),
                           parse_psi(doc, "symbol.psi2"), flags);
    } else if (kind == "integrated_stable") {
        CoeffSpec phi = parse_coeff(doc, "symbol.phi");
        const double a0 = doc.get_number("symbol.a0"), a1 = doc.get_number("symbol.a1");
        const double f0 = doc.get_number("symbol.f0", 1.0);
        const double f1 = doc.get_number("symbol.f1", 0.0);
        auto fn = phi.fn;
        b.sym = make_integrated_stable(
            [f0, f1](double, double beta) { return f0 + f1 * beta * beta; },
            [fn](const Vec& x) { return fn(x[0]); }, a0, a1, 1, flags);
    } else if (kind == "stable_dominated") {
        const double alpha = doc.get_number("symbol.alpha");
        const double scale = doc.get_number("symbol.scale", 1.0);
        const double c = scale * stable_density_constant(alpha, 1);
        b.sym = make_stable_dominated(
            {[c, alpha](const Vec&, double r) { return c * std::pow(r, -1.0 - alpha); },
             1.0 + alpha, 1.0 + alpha},
            1, flags);
    } else {
        throw ConfigError("unknown symbol kind '" + kind + "' (see list-catalog)");
    }
    return b;
}

SdeScheme build_scheme(const toml::Document& doc, const SymbolBuild& sb) {
    if (!sb.is_sde)
        throw ConfigError("[scheme] requires an sde_symbol (simulable coefficients)");
    SdeScheme s;
    s.drift = sb.drift.fn;
    s.sigma = sb.sigma.fn;
    s.drift_desc = sb.drift.desc;
    s.sigma_desc = sb.sigma.desc;
    switch (sb.psi.kind) {
        case LevyExponent::Kind::Gaussian: s.driver = DriverLaw::gaussian(); break;
        case LevyExponent::Kind::Stable:
            s.driver = DriverLaw::alpha_stable(sb.psi.stable_alpha);
            break;
        case LevyExponent::Kind::StableMix:
            s.driver = DriverLaw::stable_mix(sb.psi.mix_c1, sb.psi.mix_a1, sb.psi.mix_c2,
                                             sb.psi.mix_a2);
            break;
    }
    s.T = doc.get_number("scheme.T");
    s.dt = doc.get_number("scheme.dt");
    s.record_stride = static_cast<int>(doc.get_int("scheme.record_stride", 1));
    s.jump_mark_threshold = doc.get_number("scheme.jump_mark_threshold", 0.5);
    return s;
}

InitialLaw build_initial_law(const toml::Document& doc) {
    const std::string law = doc.get_string("scheme.x0", "dirac");
    if (law == "dirac") return InitialLaw::dirac(doc.get_number("scheme.x0_x", 0.0));
    if (law == "uniform")
        return InitialLaw::uniform(doc.get_number("scheme.x0_a"), doc.get_number("scheme.x0_b"));
    throw ConfigError("unknown initial law '" + law + "'");
}

TestFunction build_test_function(const toml::Document& doc, const std::string& p) {
    const std::string f = doc.get_string(p + ".f", "bump");
    if (f == "bump") return make_bump(doc.get_number(p + ".f_radius", 1.0), 1);
    if (f == "gaussian") return make_gaussian1(doc.get_number(p + ".f_a", 1.0), 0.0);
    if (f == "gaussian_bump")
        return make_gaussian_bump(doc.get_number(p + ".f_a", 1.0),
                                  doc.get_number(p + ".f_radius", 4.0), 1);
    throw ConfigError("unknown test function '" + f + "'");
}

ConditionId condition_from_string(const std::string& s) {
    if (s == "local_bounded") return ConditionId::LocalBounded;
    if (s == "cont_at_zero") return ConditionId::ContAtZero;
    if (s == "linear_growth") return ConditionId::LinearGrowth;
    if (s == "c1_equibounded") return ConditionId::C1Equibounded;
    if (s == "c2_equicontinuous") return ConditionId::C2Equicontinuous;
    throw ConfigError("unknown condition '" + s + "'");
}

std::string timestamp_utc() {
    char buf[32];
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ScoreRow {
    std::string id, type;
    double statistic, bound, se;
    std::string verdict;
};

}  // namespace

int run_config(const std::string& config_path, const std::string& out_dir_override,
               int threads_override, RunPaths* out_paths) {
    toml::Document doc;
    SymbolBuild sb;
    try {
        doc = toml::parse_file(config_path);
        if (doc.get_int("schema_version", 1) != 1) throw ConfigError("unsupported schema_version");
        sb = build_symbol(doc);
    } catch (const LevympError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    if (threads_override > 0) set_thread_count(threads_override);

    nlohmann::json body;
    body["symbol"] = sb.sym.name;
    std::vector<ScoreRow> rows;
    bool any_fail = false;

    try {
        // --- ensemble (only when a scheme is declared)
        SolutionEnsemble ens;
        bool have_ens = false;
        std::uint64_t seed = 0;
        if (doc.has("scheme.seed")) {
            seed = static_cast<std::uint64_t>(doc.get_int("scheme.seed"));
            const SdeScheme scheme = build_scheme(doc, sb);
            const InitialLaw mu = build_initial_law(doc);
            const auto n_paths = static_cast<std::size_t>(doc.get_int("scheme.n_paths"));
            ens = simulate_ensemble(scheme, mu, n_paths, seed);
            have_ens = true;
            body["master_seed"] = seed;
            body["scheme"] = ens.scheme_desc;
            body["initial_law"] = ens.initial_law_desc;
            body["ensemble_hash"] = hash_hex(ens.content_hash());
        } else if (doc.has("scheme.n_paths")) {
            throw ConfigError("[scheme] declared without a seed; seeds are mandatory");
        }

        const auto require_ens = [&](const std::string& id) -> const SolutionEnsemble& {
            if (!have_ens)
                throw ConfigError("check '" + id + "' needs a [scheme] section with a seed");
            return ens;
        };

        nlohmann::json checks = nlohmann::json::array();
        nlohmann::json conditions = nlohmann::json::array();
        for (const std::string& name : doc.subtables("checks")) {
            const std::string p = "checks." + name;
            const std::string type = doc.get_string(p + ".type");
            if (type == "local_bounded" || type == "cont_at_zero" || type == "linear_growth" ||
                type == "c1_equibounded" || type == "c2_equicontinuous") {
                const std::vector<double> grid = doc.get_number_array(p + ".R_grid");
                const int density = static_cast<int>(doc.get_int(p + ".density", 33));
                const double tol = doc.get_number(p + ".tolerance", 1e-3);
                const ConditionId id = condition_from_string(type);
                const bool family_check =
                    id == ConditionId::C1Equibounded || id == ConditionId::C2Equicontinuous;
                ConditionReport rep =
                    family_check && !sb.family.empty()
                        ? check_conditions(std::span<const SymbolField>(sb.family), id, grid,
                                           density, tol)
                        : check_conditions(sb.sym, id, grid, density, tol);
                nlohmann::json jr = rep.to_json();
                jr["check"] = name;
                conditions.push_back(jr);
                rows.push_back({name, type, rep.sup_values.back().second, 0.0, 0.0,
                                to_string(rep.verdict)});
                any_fail = any_fail || rep.verdict == Verdict::Fail;
            } else if (type == "martingale_residual") {
                const SolutionEnsemble& e = require_ens(name);
                const TestFunction f = build_test_function(doc, p);
                const double s = doc.get_number(p + ".s");
                const double t = doc.get_number(p + ".t");
                std::vector<Probe> probes;
                if (doc.has(p + ".probe_times"))
                    for (double pt : doc.get_number_array(p + ".probe_times"))
                        probes.push_back(Probe{pt, [](double y) { return 1.0 / (1.0 + y * y); }});
                SymbolField verify_sym = sb.sym;
                if (doc.get_bool(p + ".drift_flip", false)) {
                    auto b = sb.drift.fn;
                    verify_sym = make_sde_symbol([b](double x) { return -b(x); }, sb.sigma.fn,
                                                 sb.psi, sb.sym.flags);
                    verify_sym.name += "[drift_flipped]";
                }
                CheckResult r = martingale_residual(e, verify_sym, f, s, t, probes);
                r.id = name;
                checks.push_back(r.to_json());
                rows.push_back({name, type, r.statistic, r.bound_or_target, r.std_error,
                                to_string(r.verdict)});
                any_fail = any_fail || r.verdict == Verdict::Fail;
            } else if (type == "maximal_inequality") {
                const SolutionEnsemble& e = require_ens(name);
                CheckResult r = maximal_inequality_check(
                    e, sb.sym, doc.get_number(p + ".r"), doc.get_number(p + ".R"),
                    doc.get_number(p + ".t"),
                    static_cast<int>(doc.get_int(p + ".density", 65)));
                r.id = name;
                checks.push_back(r.to_json());
                rows.push_back({name, type, r.statistic, r.bound_or_target, r.std_error,
                                to_string(r.verdict)});
                any_fail = any_fail || r.verdict == Verdict::Fail;
            } else if (type == "compact_containment") {
                const SolutionEnsemble& e = require_ens(name);
                const std::vector<double> grid = doc.get_number_array(p + ".R_grid");
                const double eps = doc.get_number(p + ".epsilon", 0.05);
                const SolutionEnsemble* fam[] = {&e};
                ExceedanceProfile prof = compact_containment_profile(
                    fam, doc.get_number(p + ".T", e.horizon()), grid, eps);
                nlohmann::json jp = prof.to_json();
                jp["check"] = name;
                conditions.push_back(jp);
                rows.push_back({name, type, prof.points.back().second, eps, 0.0,
                                to_string(prof.verdict)});
                any_fail = any_fail || prof.verdict == Verdict::Fail;
            } else if (type == "krylov") {
                const SolutionEnsemble& e = require_ens(name);
                const double ua = doc.get_number(p + ".u_a", -1.0);
                const double ub = doc.get_number(p + ".u_b", 1.0);
                const auto u = [ua, ub](double y) { return (y >= ua && y <= ub) ? 1.0 : 0.0; };
                std::vector<std::pair<double, double>> atoms;
                if (doc.get_string("scheme.x0", "dirac") == "dirac") {
                    atoms.emplace_back(doc.get_number("scheme.x0_x", 0.0), 1.0);
                } else {
                    const double a = doc.get_number("scheme.x0_a"),
                                 b2 = doc.get_number("scheme.x0_b");
                    const int k = 17;
                    for (int i = 0; i < k; ++i)
                        atoms.emplace_back(a + (b2 - a) * (i + 0.5) / k, 1.0 / k);
                }
                const KrylovMeasure m = krylov_measure_from_majorant(
                    doc.get_number(p + ".gamma0", 1.0), doc.get_number(p + ".gammaInf", 1.0), 1,
                    atoms);
                CheckResult r = krylov_check(e, u, m, doc.get_number(p + ".p", 1.0),
                                             doc.get_number(p + ".c"),
                                             doc.get_number(p + ".T", e.horizon()));
                r.id = name;
                checks.push_back(r.to_json());
                rows.push_back({name, type, r.statistic, r.bound_or_target, r.std_error,
                                to_string(r.verdict)});
                any_fail = any_fail || r.verdict == Verdict::Fail;
            } else if (type == "resolvent_identity") {
                const SolutionEnsemble& e = require_ens(name);
                const TestFunction phi = build_test_function(doc, p);
                CheckResult r = resolvent_identity_check(e, sb.sym, phi,
                                                         doc.get_number(p + ".lambda", 1.0),
                                                         doc.get_number("scheme.x0_x", 0.0));
                r.id = name;
                checks.push_back(r.to_json());
                rows.push_back({name, type, r.statistic, r.bound_or_target, r.std_error,
                                to_string(r.verdict)});
                any_fail = any_fail || r.verdict == Verdict::Fail;
            } else {
                throw ConfigError("unknown check type '" + type + "'");
            }
        }
        body["checks"] = checks;
        body["conditions"] = conditions;
    } catch (const BlowUpError& e) {
        std::cerr << "simulation blow-up: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const LevympError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    // --- outputs
    std::string out_dir = !out_dir_override.empty() ? out_dir_override
                                                    : doc.get_string("output.dir", "out");
    std::filesystem::create_directories(out_dir);
    const std::string report_path =
        out_dir + "/" + doc.get_string("output.report", "report.json");
    const std::string score_path =
        out_dir + "/" + doc.get_string("output.scoreboard", "scoreboard.csv");

    nlohmann::json report;
    report["schema_version"] = 1;
    report["timestamp"] = timestamp_utc();
    report["config"] = config_path;
    report["body"] = body;
    std::ofstream rf(report_path);
    rf << report.dump(2) << "\n";

    std::ofstream sf(score_path);
    sf << "id,type,statistic,bound_or_target,std_error,verdict\n";
    for (const ScoreRow& r : rows) {
        char line[256];
        std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%.17g,%s\n", r.id.c_str(),
                      r.type.c_str(), r.statistic, r.bound, r.se, r.verdict.c_str());
        sf << line;
    }
    if (out_paths) *out_paths = RunPaths{report_path, score_path};
    return any_fail ? 1 : 0;
}

std::string catalog_text() {
    std::ostringstream os;
    os << "symbol catalog (config key: symbol.kind)\n\n";
    for (const CatalogEntry& e : catalog_entries()) {
        os << e.kind << "\n  parameters: " << e.parameters << "\n  formula:    " << e.formula
           << "\n  role:       " << e.role << "\n\n";
    }
    return os.str();
}

}  // namespace levymp
