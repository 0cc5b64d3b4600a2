#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "levymp/analysis.hpp"
#include "levymp/quadrature.hpp"

using namespace levymp;

namespace {

SdeScheme bm_scheme(double T, double dt = 1.0 / 64) {
    SdeScheme s;
    s.drift = [](double) { return 0.0; };
    s.sigma = [](double) { return 1.0; };
    s.driver = DriverLaw::gaussian();
    s.T = T;
    s.dt = dt;
    return s;
}

SymbolField bm_symbol() {
    return make_sde_symbol([](double) { return 0.0; }, [](double) { return 1.0; },
                           gaussian_exponent());
}

constexpr double kPi = 3.14159265358979323846;

// Fourier-side resolvent oracle for constant-coefficient symbols:
// u(x) = ∫ e^{ixξ} f̂(ξ) / (λ + q(ξ)) dξ
double resolvent_oracle(const std::function<std::complex<double>(double)>& q_of_xi,
                        const TestFunction& f, double lambda, double x) {
    QuadOptions opt;
    opt.abs_tol = 1e-11;
    const double cutoff = f.fourier_cutoff;
    const CQuadResult r = integrate_adaptive_c(
        [&](double xi) {
            const std::complex<double> phase(std::cos(x * xi), std::sin(x * xi));
            return phase * f.fourier(Vec{xi}) / (lambda + q_of_xi(xi));
        },
        -cutoff, cutoff, opt);
    return r.value.real();
}

}  // namespace

TEST_CASE("resolvent of a constant is exactly c/lambda") {
    const auto ens = simulate_ensemble(bm_scheme(8.0), InitialLaw::dirac(0.4), 200, 5);
    for (double lambda : {0.5, 1.0, 2.0}) {
        // the tail completion keeps constants exact even when e^{-λT} is large
        const ResolventEstimate r =
            resolvent_mc(ens, [](double) { return 3.0; }, lambda, 3.0, 0.05);
        CHECK(r.value == doctest::Approx(3.0 / lambda).epsilon(1e-12));
        CHECK(r.std_error == doctest::Approx(0.0));
    }
}

TEST_CASE("resolvent range and monotonicity") {
    const auto ens = simulate_ensemble(bm_scheme(8.0), InitialLaw::dirac(0.0), 4000, 6);
    const auto f = [](double y) { return std::exp(-y * y); };
    const auto g = [&](double y) { return f(y) + 0.2; };  // f <= g
    const double lambda = 1.0;
    const ResolventEstimate rf = resolvent_mc(ens, f, lambda, 1.0);
    const ResolventEstimate rg = resolvent_mc(ens, g, lambda, 1.2);
    CHECK(rf.value >= 0.0);
    CHECK(rf.value <= 1.0 / lambda);
    CHECK(rf.value <= rg.value);  // exact pathwise monotonicity

    CHECK_THROWS_AS((void)resolvent_mc(ens, f, 0.1, 1.0), PreconditionError);  // horizon short
    const auto mixed_start =
        simulate_ensemble(bm_scheme(8.0), InitialLaw::uniform(-1, 1), 64, 7);
    CHECK_THROWS_AS((void)resolvent_mc(mixed_start, f, 1.0, 1.0), PreconditionError);
}

TEST_CASE("constant-coefficient resolvent agrees with the Fourier oracle") {
    const TestFunction f = make_gaussian1(1.0, 0.0);
    const double lambda = 1.0, x = 0.3;
    const auto ens = simulate_ensemble(bm_scheme(12.0), InitialLaw::dirac(x), 20000, 88);
    const ResolventEstimate r = resolvent_mc(ens, [&](double y) { return f(y); }, lambda, 1.0);
    const double oracle =
        resolvent_oracle([](double xi) { return std::complex<double>(xi * xi, 0.0); }, f,
                         lambda, x);
    CHECK(std::abs(r.value - oracle) <= 3.0 * r.std_error + r.tail_bound + 0.002);
}

TEST_CASE("selection example: the sup resolvent picks the upper branch") {
    const double lambda = 1.0, T = 24.0, dt = 1.0 / 512;
    const auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    SolutionEnsemble ex, ey;
    for (auto* pr : {&ex, &ey}) {
        const PathSkeleton p = ode_selection_path(
            0.0, pr == &ex ? OdeBranch::XBranch : OdeBranch::YBranch, T, dt);
        pr->dim = 1;
        pr->num_paths = 1;
        pr->times = p.times;
        pr->states = p.states;
        pr->jump_mark_offsets = {0, 0};
        pr->dt_sim = dt;
    }
    const SolutionEnsemble* fam[] = {&ex, &ey};
    const SupResolvent sup = sup_resolvent(fam, sigmoid, lambda, 1.0);
    CHECK(sup.argmax == 0);  // X branch dominates for increasing f

    QuadOptions opt;
    opt.abs_tol = 1e-12;
    const double oracle =
        integrate_adaptive([&](double t) { return std::exp(-lambda * t) * sigmoid(t * t); }, 0.0,
                           T, opt)
            .value +
        std::exp(-lambda * T) * sigmoid(T * T) / lambda;
    CHECK(sup.value == doctest::Approx(oracle).epsilon(1e-6));

    // monotone in the family: adding a law never decreases the sup
    const SolutionEnsemble* solo[] = {&ey};
    CHECK(sup_resolvent(solo, sigmoid, lambda, 1.0).value <= sup.value);
    // constant f: c/lambda regardless of the list
    CHECK(sup_resolvent(fam, [](double) { return 2.0; }, lambda, 2.0).value ==
          doctest::Approx(2.0 / lambda).epsilon(1e-12));
}

TEST_CASE("resolvent identity: frozen process is exact") {
    SdeScheme frozen = bm_scheme(8.0, 1.0 / 16);
    frozen.sigma = [](double) { return 0.0; };
    const auto ens = simulate_ensemble(frozen, InitialLaw::dirac(0.2), 4, 9);
    const SymbolField sym = make_sde_symbol([](double) { return 0.0; },
                                            [](double) { return 0.0; }, gaussian_exponent());
    const TestFunction phi = make_gaussian_bump(0.5, 4.0, 1);
    const CheckResult r = resolvent_identity_check(ens, sym, phi, 1.0, 0.2);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.statistic == doctest::Approx(phi(0.2)).epsilon(1e-9));
}

TEST_CASE("resolvent identity for Brownian motion, and a mismatched negative control") {
    const auto ens = simulate_ensemble(bm_scheme(12.0), InitialLaw::dirac(0.0), 20000, 33);
    const TestFunction phi = make_gaussian_bump(0.5, 4.0, 1);
    const CheckResult ok = resolvent_identity_check(ens, bm_symbol(), phi, 1.0, 0.0);
    INFO("stat ", ok.statistic, " target ", ok.bound_or_target, " se ", ok.std_error);
    CHECK(ok.verdict == Verdict::Pass);

    // wrong lambda on the right-hand side shifts the identity measurably
    const double lam_rhs = 2.0;
    double lo = 0.0, hi = 0.0;
    for (double v : ens.states) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const GeneratorTable aphi(bm_symbol(), phi, lo - 0.1, hi + 0.1);
    // rhs with mismatched integrand: ∫ e^{-t}(λ'φ - Aφ)(X_t) dt vs φ(x)
    std::vector<double> vals(ens.num_paths);
    const std::size_t m = ens.num_times();
    for (std::size_t i = 0; i < ens.num_paths; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < m; ++k) {
            const double h = ens.times[k + 1] - ens.times[k];
            const auto g = [&](std::size_t idx) {
                const double y = ens.state(i, idx);
                return std::exp(-1.0 * ens.times[idx]) * (lam_rhs * phi(y) - aphi(y));
            };
            acc += 0.5 * h * (g(k) + g(k + 1));
        }
        vals[i] = acc;
    }
    const MeanSE ms = mean_se(vals);
    CHECK(std::abs(ms.mean - phi(0.0)) > 10.0 * ms.se);  // clearly detected
}

TEST_CASE("viscosity residuals at a flat touching function") {
    const SymbolField sym = bm_symbol();
    const TestFunction phi = make_bump(100.0, 1);  // flat on [-50, 50]
    const auto u_hat = [](double) { return 1.0; }; // u ≡ φ ≡ 1 on the lattice
    const auto f = [](double) { return 1.0; };     // f = λ·u with λ = 1
    const auto lattice = linspace(-3.0, 3.0, 61);
    for (ViscosityMode mode : {ViscosityMode::Sub, ViscosityMode::Super}) {
        const ViscosityReport r =
            viscosity_residual(u_hat, phi, 0.5, 1.0, f, sym, mode, lattice, 1e-9, 1e-8);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(std::abs(r.residual) < 1e-8);
    }
}

TEST_CASE("viscosity residual is linear in the test function") {
    const SymbolField sym =
        make_sde_symbol([](double) { return 0.2; }, [](double) { return 1.0; },
                        stable_exponent(1.4));
    const TestFunction phi = make_bump(100.0, 1);
    const TestFunction bumplet = make_bump(1.0, 1);
    const double eps = 0.25;
    // lowering φ by ε·bumplet turns x0 = 0 into the lattice max of u - φ2
    const TestFunction phi2 = combine(1.0, phi, -eps, bumplet);
    const auto u_hat = [](double) { return 1.0; };
    const auto f = [](double) { return 1.0; };
    const auto lattice = linspace(-3.0, 3.0, 61);
    const ViscosityReport base =
        viscosity_residual(u_hat, phi, 0.0, 1.0, f, sym, ViscosityMode::Super, lattice, 1e-9, 1.0);
    const ViscosityReport shifted =
        viscosity_residual(u_hat, phi2, 0.0, 1.0, f, sym, ViscosityMode::Sub, lattice, 1e-9,
                           10.0);
    const double a_bumplet = apply_integro(sym, bumplet, Vec{0.0});
    CHECK(shifted.residual - base.residual == doctest::Approx(eps * a_bumplet).epsilon(1e-7));
}

TEST_CASE("classical resolvent is a viscosity solution at every lattice point") {
    // Brownian motion: u = (λ - Δ-type)^{-1} f computed in Fourier form, then
    // wrapped as a smooth test function; λu - Au - f must vanish classically.
    const double lambda = 1.0;
    const TestFunction f = make_gaussian1(1.0, 0.0);
    const double cutoff = f.fourier_cutoff;
    const auto u_k = [&](double xi) { return 1.0 / (lambda + xi * xi); };
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    const auto deriv = [&, u_k](double x, int order) {
        const CQuadResult r = integrate_adaptive_c(
            [&](double xi) {
                std::complex<double> w(std::cos(x * xi), std::sin(x * xi));
                std::complex<double> p(0.0, xi);
                std::complex<double> pk = order == 0 ? 1.0 : (order == 1 ? p : p * p);
                return w * pk * f.fourier(Vec{xi}) * u_k(xi);
            },
            -cutoff, cutoff, opt);
        return r.value.real();
    };
    TestFunction u;
    u.dim = 1;
    u.name = "resolvent_u";
    u.value = [deriv](const Vec& x) { return deriv(x[0], 0); };
    u.gradient = [deriv](const Vec& x) { return Vec{deriv(x[0], 1)}; };
    u.hessian = [deriv](const Vec& x) {
        Mat h(1, 1);
        h(0, 0) = deriv(x[0], 2);
        return h;
    };
    u.norm_inf = 1.0 / lambda;
    u.norm_grad = 1.0;
    u.norm_hess = 2.0;

    const auto lattice = linspace(-2.0, 2.0, 21);
    const auto u_call = [&](double x) { return u.value(Vec{x}); };
    for (double x0 : {-1.0, 0.0, 0.6}) {
        const ViscosityReport r = viscosity_residual(
            u_call, u, x0, lambda, [&](double y) { return f(y); }, bm_symbol(),
            ViscosityMode::Sub, lattice, 1e-7, 1e-5);
        CHECK(std::abs(r.residual) < 1e-5);
    }
}

TEST_CASE("viscosity precondition failure is reported") {
    const SymbolField sym = bm_symbol();
    const TestFunction phi = make_bump(1.0, 1);  // peaked at 0
    const auto u_hat = [](double) { return 0.0; };
    const auto lattice = linspace(-2.0, 2.0, 41);
    // u - φ = -φ has its max away from the peak; x0 = 0 is the minimum
    CHECK_THROWS_AS((void)viscosity_residual(u_hat, phi, 0.0, 1.0, [](double) { return 0.0; },
                                             sym, ViscosityMode::Sub, lattice, 1e-9, 1e-8),
                    PreconditionError);
}

TEST_CASE("harmonic measure: constants, gambler's ruin, tower property") {
    const SdeScheme s = bm_scheme(16.0, 1.0 / 256);
    const BallSpec D{0.0, 1.0};
    const HarmonicEstimate one =
        harmonic_mc(s, 0.0, D, [](double) { return 1.0; }, 4000, 17);
    CHECK(one.value == 1.0);  // exactly
    CHECK(one.verdict == Verdict::Pass);
    CHECK(one.exceed_fraction == 0.0);

    const auto g_right = [](double y) { return y >= 1.0 ? 1.0 : 0.0; };
    const HarmonicEstimate ruin = harmonic_mc(s, 0.0, D, g_right, 20000, 18);
    CHECK(std::abs(ruin.value - 0.5) <= 3.0 * ruin.std_error);
    CHECK(ruin.mean_exit_time > 0.0);

    // off-center start with the bridge correction: u(x) = (x+1)/2
    ExitOptions bridge;
    bridge.bridge_correction = true;
    const HarmonicEstimate off = harmonic_mc(s, 0.3, D, g_right, 20000, 19, bridge);
    CHECK(std::abs(off.value - 0.65) <= 3.0 * off.std_error + 0.01);

    // tower property through the sub-ball (-1/2, 1/2): exits sit at ±1/2
    const BallSpec Dsub{0.0, 0.5};
    const HarmonicEstimate hplus = harmonic_mc(s, 0.5 - 1e-9, D, g_right, 20000, 20, bridge);
    const HarmonicEstimate hminus = harmonic_mc(s, -0.5 + 1e-9, D, g_right, 20000, 21, bridge);
    const HarmonicEstimate inner = harmonic_mc(
        s, 0.0, Dsub, [](double y) { return y >= 0.5 ? 1.0 : 0.0; }, 20000, 22, bridge);
    const double tower = inner.value * hplus.value + (1.0 - inner.value) * hminus.value;
    const double se = 3.0 * (hplus.std_error + hminus.std_error + inner.std_error);
    CHECK(std::abs(tower - ruin.value) <= se + 3.0 * ruin.std_error + 0.01);

    // horizon too short: inconclusive with the exceedance fraction reported
    SdeScheme slow = bm_scheme(16.0, 1.0 / 256);
    slow.sigma = [](double) { return 0.05; };
    ExitOptions tight;
    tight.horizon = 0.25;
    const HarmonicEstimate stuck =
        harmonic_mc(slow, 0.0, D, [](double) { return 1.0; }, 500, 23, tight);
    CHECK(stuck.verdict == Verdict::Inconclusive);
    CHECK(stuck.exceed_fraction > 0.5);
}

TEST_CASE("harnack ratio: constants give ratio one, stability across budgets") {
    SdeScheme s = bm_scheme(16.0, 1.0 / 128);
    s.driver = DriverLaw::alpha_stable(1.2);
    const std::vector<double> probes{-0.6, -0.2, 0.2, 0.6};
    const HarnackReport unit = harnack_ratio(s, 0.0, 1.0, [](double) { return 1.0; }, probes,
                                             2000, 77);
    CHECK(unit.ratio == doctest::Approx(1.0));
    CHECK(unit.verdict == Verdict::Pass);

    const auto g_far = [](double y) { return y >= 3.0 ? 1.0 : 0.0; };
    const HarnackReport a = harnack_ratio(s, 0.0, 1.0, g_far, probes, 10000, 78);
    const HarnackReport b = harnack_ratio(s, 0.0, 1.0, g_far, probes, 40000, 79);
    CHECK(a.ratio >= 1.0);
    CHECK(b.ratio >= 1.0);
    CHECK(a.ratio == doctest::Approx(b.ratio).epsilon(0.25));
    CHECK(b.ratio_lo <= b.ratio);
    CHECK(b.ratio_hi >= b.ratio);
}

TEST_CASE("kernel conditions for constant and variable order") {
    // constant-order kernel: the translation condition compares the jump
    // intensity toward a common target from base points up to distance 1
    // apart, so even an x-independent kernel needs
    // c4 >= sup_{s>=1} ((s+1)/s)^{d+alpha} = 2^{d+alpha}
    HarnackKernelParams p;
    p.alpha = 1.2;
    p.beta = 1.2;
    p.tail_exponent = 1.2;
    p.c1 = 1.0;
    p.c2 = 1.0;
    p.c3 = 1.0;
    p.c4 = std::pow(2.0, 2.2) * 1.001;
    p.samples = 5000;
    const auto const_kernel = [](double, double y) { return std::pow(std::abs(y), -2.2); };
    const HarnackKernelReport r1 = check_harnack_kernel(const_kernel, p);
    CHECK(r1.h1.verdict == Verdict::Pass);
    CHECK(r1.h2.verdict == Verdict::Pass);
    CHECK(r1.h3.verdict == Verdict::Pass);
    CHECK(r1.gap_ok);
    CHECK(r1.all_pass());

    // variable order alpha(x) in [1.0, 1.4]
    const auto var_kernel = [](double x, double y) {
        return std::pow(std::abs(y), -1.0 - (1.2 + 0.2 * std::sin(x)));
    };
    HarnackKernelParams q;
    q.alpha = 1.0;
    q.beta = 1.4;
    q.tail_exponent = 1.0;
    q.c1 = 1.0;
    q.c2 = std::pow(2.0, -0.4);
    q.c3 = std::pow(2.0, 0.4);
    q.c4 = 8.0;
    q.samples = 8000;
    const HarnackKernelReport r2 = check_harnack_kernel(var_kernel, q);
    CHECK(r2.h1.verdict == Verdict::Pass);
    CHECK(r2.h2.verdict == Verdict::Pass);
    CHECK(r2.h3.verdict == Verdict::Pass);
    CHECK(r2.gap_ok);

    // a kernel violating the upper local bound is caught
    HarnackKernelParams bad = q;
    bad.c3 = 0.5;
    const HarnackKernelReport r3 = check_harnack_kernel(var_kernel, bad);
    CHECK(r3.h2.verdict == Verdict::Fail);
}
