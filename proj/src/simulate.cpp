#include "levymp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>

#include "json.hpp"
#include "levymp/quadrature.hpp"

namespace levymp {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void PathSkeleton::validate() const {
    if (times.empty() || times.front() != 0.0)
        throw PreconditionError("PathSkeleton: grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw PreconditionError("PathSkeleton: grid not strictly increasing");
    for (double s : states)
        if (!std::isfinite(s)) throw PreconditionError("PathSkeleton: non-finite state");
}

// ---------------------------------------------------------------------------
// Drivers

struct CompoundPoissonTable {
    double eps = 1e-3;
    double rate = 0.0;       // ν({|y| > ε}), both signs
    double small_var = 0.0;  // ∫_{|y|<=ε} y² ν(dy)
    UniformTable magnitude_quantile;  // u ∈ [0,1] → jump magnitude ≥ ε
    std::string desc;
};

DriverLaw DriverLaw::gaussian() {
    DriverLaw d;
    d.kind = Kind::Gaussian;
    return d;
}

DriverLaw DriverLaw::alpha_stable(double alpha) {
    if (!(alpha > 0.0) || alpha > 2.0)
        throw PreconditionError("alpha_stable driver: alpha must lie in (0,2]");
    DriverLaw d;
    d.kind = Kind::AlphaStable;
    d.alpha = alpha;
    return d;
}

DriverLaw DriverLaw::stable_mix(double c1, double a1, double c2, double a2) {
    DriverLaw d;
    d.kind = Kind::StableMix;
    d.c1 = c1;
    d.a1 = a1;
    d.c2 = c2;
    d.a2 = a2;
    if (!(a1 > 0) || a1 >= 2 || !(a2 > 0) || a2 >= 2 || c1 < 0 || c2 < 0)
        throw PreconditionError("stable_mix driver: need a_i in (0,2), c_i >= 0");
    return d;
}

DriverLaw DriverLaw::jump_density(const RadialDensity& profile, double eps) {
    if (!(eps > 0.0)) throw PreconditionError("jump_density driver: eps must be positive");
    auto table = std::make_shared<CompoundPoissonTable>();
    table->eps = eps;

    // half-line mass above the cutoff and its upper range
    const auto half_mass_from = [&](double a) {
        return integrate_to_infinity([&](double r) { return profile.profile(r); }, a, 1e-12);
    };
    const QuadResult total = half_mass_from(eps);
    if (!total.converged)
        throw QuadratureError("jump_density driver: non-integrable tail", total.value,
                              total.error);
    table->rate = 2.0 * total.value;

    const QuadResult sv = integrate_to_zero(
        [&](double r) { return r * r * profile.profile(r); }, eps, 1e-14);
    if (!sv.converged)
        throw QuadratureError("jump_density driver: small-jump second moment diverges "
                              "(singularity stronger than declared)",
                              sv.value, sv.error);
    table->small_var = 2.0 * sv.value;

    // magnitude quantile: invert the half-line tail mass on a log grid
    double r_max = eps;
    while (half_mass_from(r_max).value > 1e-9 * total.value && r_max < 1e12) r_max *= 2.0;
    const int n_grid = 2048;
    std::vector<double> rs(n_grid), cmass(n_grid);
    for (int i = 0; i < n_grid; ++i)
        rs[static_cast<std::size_t>(i)] =
            eps * std::pow(r_max / eps, static_cast<double>(i) / (n_grid - 1));
    for (int i = 0; i < n_grid; ++i) {
        const double m = half_mass_from(rs[static_cast<std::size_t>(i)]).value;
        cmass[static_cast<std::size_t>(i)] = 1.0 - m / total.value;  // CDF of the magnitude
    }
    // resample to a uniform quantile grid
    const int n_q = 4097;
    std::vector<double> quant(n_q);
    std::size_t j = 0;
    for (int i = 0; i < n_q; ++i) {
        const double u = static_cast<double>(i) / (n_q - 1);
        while (j + 1 < cmass.size() && cmass[j + 1] < u) ++j;
        if (j + 1 >= cmass.size()) {
            quant[static_cast<std::size_t>(i)] = rs.back();
        } else {
            const double c0 = cmass[j], c1 = cmass[j + 1];
            const double w = c1 > c0 ? (u - c0) / (c1 - c0) : 0.0;
            quant[static_cast<std::size_t>(i)] =
                rs[j] + std::clamp(w, 0.0, 1.0) * (rs[j + 1] - rs[j]);
        }
    }
    table->magnitude_quantile = UniformTable(0.0, 1.0, std::move(quant));
    table->desc = "compound_poisson(eps=" + std::to_string(eps) + ")";

    DriverLaw d;
    d.kind = Kind::CompoundPoisson;
    d.cp = std::move(table);
    return d;
}

std::string DriverLaw::describe() const {
    switch (kind) {
        case Kind::Gaussian: return "gaussian";
        case Kind::AlphaStable: return "alpha_stable(" + std::to_string(alpha) + ")";
        case Kind::StableMix:
            return "stable_mix(" + std::to_string(c1) + "," + std::to_string(a1) + "," +
                   std::to_string(c2) + "," + std::to_string(a2) + ")";
        case Kind::CompoundPoisson: return cp ? cp->desc : "compound_poisson";
    }
    return "?";
}

namespace {

// standard symmetric α-stable variate with E e^{iξS} = e^{-|ξ|^α}
double sample_sas(double alpha, Rng& rng) {
    const double V = kPi * (rng.uniform() - 0.5);
    if (alpha == 1.0) return std::tan(V);
    double W = rng.exponential();
    if (W < 1e-300) W = 1e-300;
    const double cv = std::cos(V);
    const double t1 = std::sin(alpha * V) / std::pow(cv, 1.0 / alpha);
    const double t2 = std::pow(std::cos((1.0 - alpha) * V) / W, (1.0 - alpha) / alpha);
    return t1 * t2;
}

}  // namespace

double sample_levy_increment(const DriverLaw& law, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw PreconditionError("sample_levy_increment: dt must be positive");
    switch (law.kind) {
        case DriverLaw::Kind::Gaussian:
            return std::sqrt(2.0 * dt) * rng.normal();
        case DriverLaw::Kind::AlphaStable:
            if (law.alpha == 2.0) return std::sqrt(2.0 * dt) * rng.normal();
            return std::pow(dt, 1.0 / law.alpha) * sample_sas(law.alpha, rng);
        case DriverLaw::Kind::StableMix: {
            double v = 0.0;
            if (law.c1 > 0.0) v += std::pow(law.c1 * dt, 1.0 / law.a1) * sample_sas(law.a1, rng);
            if (law.c2 > 0.0) v += std::pow(law.c2 * dt, 1.0 / law.a2) * sample_sas(law.a2, rng);
            return v;
        }
        case DriverLaw::Kind::CompoundPoisson: {
            const CompoundPoissonTable& t = *law.cp;
            double v = t.small_var > 0.0 ? std::sqrt(t.small_var * dt) * rng.normal() : 0.0;
            const std::uint64_t n = rng.poisson(t.rate * dt);
            for (std::uint64_t k = 0; k < n; ++k) {
                const double mag = t.magnitude_quantile(rng.uniform());
                v += (rng.uniform() < 0.5 ? -mag : mag);
            }
            return v;
        }
    }
    throw PreconditionError("sample_levy_increment: unsupported law");
}

// ---------------------------------------------------------------------------
// Euler scheme

std::size_t SdeScheme::num_steps() const {
    if (!(dt > 0.0) || !(T > 0.0) || dt > T + 1e-15)
        throw PreconditionError("SdeScheme: need 0 < dt <= T");
    const auto n = static_cast<std::size_t>(std::llround(T / dt));
    if (n == 0 || std::abs(static_cast<double>(n) * dt - T) > 1e-9 * T)
        throw PreconditionError("SdeScheme: T must be an integer multiple of dt");
    if (record_stride < 1 || n % static_cast<std::size_t>(record_stride) != 0)
        throw PreconditionError("SdeScheme: record_stride must divide T/dt");
    return n;
}

std::string SdeScheme::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "euler(T=%g,dt=%g,stride=%d,driver=%s)", T, dt, record_stride,
                  driver.describe().c_str());
    return std::string(buf) + ",b=" + drift_desc + ",sigma=" + sigma_desc;
}

PathSkeleton simulate_sde_path(const SdeScheme& scheme, double x0, Rng& rng,
                               std::size_t path_index) {
    const std::size_t steps = scheme.num_steps();
    const std::size_t stride = static_cast<std::size_t>(scheme.record_stride);
    PathSkeleton p;
    p.dim = 1;
    p.times.reserve(steps / stride + 1);
    p.states.reserve(steps / stride + 1);
    double x = x0;
    p.times.push_back(0.0);
    p.states.push_back(x);
    double last_rec = x;
    for (std::size_t k = 1; k <= steps; ++k) {
        const double dL = sample_levy_increment(scheme.driver, scheme.dt, rng);
        x += scheme.drift(x) * scheme.dt + scheme.sigma(x) * dL;
        if (!(std::abs(x) < scheme.blowup_guard) || !std::isfinite(x))
            throw BlowUpError(static_cast<double>(k) * scheme.dt, path_index);
        if (k % stride == 0) {
            p.times.push_back(static_cast<double>(k) * scheme.dt);
            p.states.push_back(x);
            if (std::abs(x - last_rec) > scheme.jump_mark_threshold)
                p.jump_marks.push_back(static_cast<std::uint32_t>(p.times.size() - 1));
            last_rec = x;
        }
    }
    return p;
}

PathStepper::PathStepper(const SdeScheme& scheme, double x0, std::uint64_t master_seed,
                         std::uint64_t path_index)
    : scheme_(scheme), rng_(master_seed, path_index), x_(x0), prev_(x0), t_(0.0),
      path_index_(static_cast<std::size_t>(path_index)) {}

double PathStepper::step() {
    const double dL = sample_levy_increment(scheme_.driver, scheme_.dt, rng_);
    prev_ = x_;
    x_ += scheme_.drift(x_) * scheme_.dt + scheme_.sigma(x_) * dL;
    t_ += scheme_.dt;
    if (!(std::abs(x_) < scheme_.blowup_guard) || !std::isfinite(x_))
        throw BlowUpError(t_, path_index_);
    return x_;
}

// ---------------------------------------------------------------------------
// ODE selection example

double ode_selection_value(double x0, OdeBranch branch, double t) {
    const bool upper = branch == OdeBranch::XBranch ? x0 >= 0.0 : x0 > 0.0;
    if (upper) {
        const double s = t + std::sqrt(x0);
        return s * s;
    }
    const double s = t + std::sqrt(-x0);
    return -s * s;
}

PathSkeleton ode_selection_path(double x0, OdeBranch branch, double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw PreconditionError("ode_selection_path: need T, dt > 0");
    PathSkeleton p;
    p.dim = 1;
    const auto steps = static_cast<std::size_t>(std::llround(T / dt));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        p.times.push_back(t);
        p.states.push_back(ode_selection_value(x0, branch, t));
    }
    return p;
}

// ---------------------------------------------------------------------------
// Ensembles

InitialLaw InitialLaw::dirac(double x) {
    InitialLaw l;
    l.sample = [x](Rng&) { return x; };
    l.cdf = [x](double v) { return v >= x ? 1.0 : 0.0; };
    l.desc = "dirac(" + std::to_string(x) + ")";
    return l;
}

InitialLaw InitialLaw::uniform(double a, double b) {
    if (!(b > a)) throw PreconditionError("InitialLaw::uniform: need b > a");
    InitialLaw l;
    l.sample = [a, b](Rng& rng) { return rng.uniform(a, b); };
    l.cdf = [a, b](double v) { return std::clamp((v - a) / (b - a), 0.0, 1.0); };
    l.desc = "uniform(" + std::to_string(a) + "," + std::to_string(b) + ")";
    return l;
}

std::uint64_t SolutionEnsemble::content_hash() const {
    HashAccumulator h;
    h.add(static_cast<std::uint64_t>(num_paths));
    h.add_bytes(times.data(), times.size() * sizeof(double));
    h.add_bytes(states.data(), states.size() * sizeof(double));
    return h.h;
}

void SolutionEnsemble::validate(const std::function<double(double)>& initial_cdf) const {
    if (states.size() != num_paths * times.size())
        throw PreconditionError("SolutionEnsemble: state array shape mismatch");
    if (times.empty() || times.front() != 0.0)
        throw PreconditionError("SolutionEnsemble: grid must start at 0");
    for (double s : states)
        if (!std::isfinite(s)) throw PreconditionError("SolutionEnsemble: non-finite state");
    if (initial_cdf && num_paths > 1) {
        std::vector<double> x0(num_paths);
        for (std::size_t i = 0; i < num_paths; ++i) x0[i] = state(i, 0);
        const double ks = ks_one_sample(std::move(x0), initial_cdf);
        if (ks >= 3.0 / std::sqrt(static_cast<double>(num_paths)))
            throw PreconditionError("SolutionEnsemble: initial law KS distance " +
                                    std::to_string(ks) + " exceeds 3/sqrt(N)");
    }
}

SolutionEnsemble simulate_ensemble(const SdeScheme& scheme, const InitialLaw& mu, std::size_t N,
                                   std::uint64_t master_seed) {
    if (N < 1) throw PreconditionError("simulate_ensemble: need N >= 1");
    const std::size_t steps = scheme.num_steps();
    const std::size_t stride = static_cast<std::size_t>(scheme.record_stride);
    const std::size_t n_rec = steps / stride + 1;

    SolutionEnsemble e;
    e.dim = 1;
    e.num_paths = N;
    e.master_seed = master_seed;
    e.scheme_desc = scheme.describe();
    e.initial_law_desc = mu.desc;
    e.dt_sim = scheme.dt;
    e.times.resize(n_rec);
    for (std::size_t t = 0; t < n_rec; ++t)
        e.times[t] = static_cast<double>(t * stride) * scheme.dt;
    e.states.resize(N * n_rec);

    std::vector<std::vector<std::uint32_t>> marks(N);
    std::mutex err_mu;
    bool has_err = false;
    double err_time = 0.0;
    std::size_t err_path = SIZE_MAX;

    parallel_for_blocks(N, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                Rng rng(master_seed, static_cast<std::uint64_t>(i));
                double x = mu.sample(rng);
                double* row = e.states.data() + i * n_rec;
                row[0] = x;
                double last_rec = x;
                std::size_t rec = 1;
                for (std::size_t k = 1; k <= steps; ++k) {
                    const double dL = sample_levy_increment(scheme.driver, scheme.dt, rng);
                    x += scheme.drift(x) * scheme.dt + scheme.sigma(x) * dL;
                    if (!(std::abs(x) < scheme.blowup_guard) || !std::isfinite(x))
                        throw BlowUpError(static_cast<double>(k) * scheme.dt, i);
                    if (k % stride == 0) {
                        row[rec] = x;
                        if (std::abs(x - last_rec) > scheme.jump_mark_threshold)
                            marks[i].push_back(static_cast<std::uint32_t>(rec));
                        last_rec = x;
                        ++rec;
                    }
                }
            } catch (const BlowUpError& b) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!has_err || b.path_index < err_path) {
                    has_err = true;
                    err_time = b.time;
                    err_path = b.path_index;
                }
            }
        }
    });
    if (has_err) throw BlowUpError(err_time, err_path);

    e.jump_mark_offsets.resize(N + 1, 0);
    for (std::size_t i = 0; i < N; ++i)
        e.jump_mark_offsets[i + 1] = e.jump_mark_offsets[i] + marks[i].size();
    e.jump_marks_flat.reserve(e.jump_mark_offsets.back());
    for (std::size_t i = 0; i < N; ++i)
        e.jump_marks_flat.insert(e.jump_marks_flat.end(), marks[i].begin(), marks[i].end());

    e.validate(mu.cdf);
    return e;
}

// ---------------------------------------------------------------------------
// Serialization: binary body (magic, version, dim, N, grid; states stored as
// time-major slices, i.e. all paths at t0, then t1, ...) + JSON sidecar.

void save_ensemble(const SolutionEnsemble& e, const std::string& bin_path,
                   const std::string& sidecar_path) {
    std::ofstream os(bin_path, std::ios::binary);
    if (!os) throw LevympError("save_ensemble: cannot open " + bin_path);
    const char magic[4] = {'L', 'M', 'P', 'E'};
    const std::uint32_t version = 1;
    const std::uint32_t dim = static_cast<std::uint32_t>(e.dim);
    const std::uint64_t n = e.num_paths, m = e.times.size();
    os.write(magic, 4);
    os.write(reinterpret_cast<const char*>(&version), sizeof version);
    os.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
    os.write(reinterpret_cast<const char*>(&m), sizeof m);
    os.write(reinterpret_cast<const char*>(e.times.data()),
             static_cast<std::streamsize>(m * sizeof(double)));
    std::vector<double> slice(e.num_paths);
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t i = 0; i < n; ++i) slice[i] = e.state(i, t);
        os.write(reinterpret_cast<const char*>(slice.data()),
                 static_cast<std::streamsize>(n * sizeof(double)));
    }
    const std::uint64_t marks = e.jump_marks_flat.size();
    os.write(reinterpret_cast<const char*>(&marks), sizeof marks);
    os.write(reinterpret_cast<const char*>(e.jump_mark_offsets.data()),
             static_cast<std::streamsize>(e.jump_mark_offsets.size() * sizeof(std::uint64_t)));
    os.write(reinterpret_cast<const char*>(e.jump_marks_flat.data()),
             static_cast<std::streamsize>(marks * sizeof(std::uint32_t)));

    nlohmann::json j;
    j["schema_version"] = 1;
    j["scheme"] = e.scheme_desc;
    j["initial_law"] = e.initial_law_desc;
    j["master_seed"] = e.master_seed;
    j["num_paths"] = e.num_paths;
    j["num_times"] = e.times.size();
    j["dim"] = e.dim;
    j["dt_sim"] = e.dt_sim;
    j["content_hash"] = hash_hex(e.content_hash());
    std::ofstream js(sidecar_path);
    if (!js) throw LevympError("save_ensemble: cannot open " + sidecar_path);
    js << j.dump(2) << "\n";
}

SolutionEnsemble load_ensemble(const std::string& bin_path, const std::string& sidecar_path) {
    std::ifstream is(bin_path, std::ios::binary);
    if (!is) throw LevympError("load_ensemble: cannot open " + bin_path);
    char magic[4];
    std::uint32_t version = 0, dim = 0;
    std::uint64_t n = 0, m = 0;
    is.read(magic, 4);
    if (std::string(magic, 4) != "LMPE") throw LevympError("load_ensemble: bad magic");
    is.read(reinterpret_cast<char*>(&version), sizeof version);
    is.read(reinterpret_cast<char*>(&dim), sizeof dim);
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    is.read(reinterpret_cast<char*>(&m), sizeof m);
    SolutionEnsemble e;
    e.dim = static_cast<int>(dim);
    e.num_paths = n;
    e.times.resize(m);
    is.read(reinterpret_cast<char*>(e.times.data()), static_cast<std::streamsize>(m * sizeof(double)));
    e.states.resize(n * m);
    std::vector<double> slice(n);
    for (std::size_t t = 0; t < m; ++t) {
        is.read(reinterpret_cast<char*>(slice.data()),
                static_cast<std::streamsize>(n * sizeof(double)));
        for (std::size_t i = 0; i < n; ++i) e.states[i * m + t] = slice[i];
    }
    std::uint64_t marks = 0;
    is.read(reinterpret_cast<char*>(&marks), sizeof marks);
    e.jump_mark_offsets.resize(n + 1);
    is.read(reinterpret_cast<char*>(e.jump_mark_offsets.data()),
            static_cast<std::streamsize>((n + 1) * sizeof(std::uint64_t)));
    e.jump_marks_flat.resize(marks);
    is.read(reinterpret_cast<char*>(e.jump_marks_flat.data()),
            static_cast<std::streamsize>(marks * sizeof(std::uint32_t)));
    if (!is) throw LevympError("load_ensemble: truncated file");

    std::ifstream js(sidecar_path);
    if (js) {
        nlohmann::json j;
        js >> j;
        e.scheme_desc = j.value("scheme", "");
        e.initial_law_desc = j.value("initial_law", "");
        e.master_seed = j.value("master_seed", 0ULL);
        e.dt_sim = j.value("dt_sim", 0.0);
    }
    return e;
}

void export_ensemble_csv(std::ostream& os, const SolutionEnsemble& e, std::size_t max_paths) {
    const std::size_t n = std::min(e.num_paths, max_paths);
    os << "t";
    for (std::size_t i = 0; i < n; ++i) os << ",path" << i;
    os << "\n";
    for (std::size_t t = 0; t < e.times.size(); ++t) {
        os << e.times[t];
        for (std::size_t i = 0; i < n; ++i) os << "," << e.state(i, t);
        os << "\n";
    }
}

}  // namespace levymp
