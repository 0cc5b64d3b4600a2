#include "levymp/symbol.hpp"

#include <cmath>

namespace levymp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_surface(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * kPi;
        case 3: return 4.0 * kPi;
        default: throw LevympError("radial jump measures implemented for d <= 3");
    }
}

// 1 - (angular average of e^{i y·ξ} over |y| = r), as a function of u = r|ξ|.
// Compensated evaluation: the naive 1 - cos(u) loses all precision for small u
// and turns the singular integrand into noise.
double one_minus_wave(int d, double u) {
    const double a = std::abs(u);
    switch (d) {
        case 1: {
            const double sh = std::sin(0.5 * u);
            return 2.0 * sh * sh;
        }
        case 2:
            if (a < 1e-2) {
                const double x2 = u * u;
                return x2 * 0.25 - x2 * x2 / 64.0 + x2 * x2 * x2 / 2304.0;
            }
            return 1.0 - std::cyl_bessel_j(0.0, a);
        case 3:
            if (a < 1e-2) {
                const double x2 = u * u;
                return x2 / 6.0 - x2 * x2 / 120.0;
            }
            return 1.0 - std::sin(a) / a;
        default: throw LevympError("radial jump measures implemented for d <= 3");
    }
}

enum class WaveKind { Cos, Sin, J0, Sinc };

WaveKind wave_for_dim(int d) {
    switch (d) {
        case 1: return WaveKind::Cos;
        case 2: return WaveKind::J0;
        case 3: return WaveKind::Sinc;
        default: throw LevympError("radial jump measures implemented for d <= 3");
    }
}

// the oscillating part to be subtracted from the mean
double wave_fn(WaveKind w, double u) {
    switch (w) {
        case WaveKind::Cos: return std::cos(u);
        case WaveKind::Sin: return std::sin(u);
        case WaveKind::J0: return std::cyl_bessel_j(0.0, std::abs(u));
        case WaveKind::Sinc: return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / std::abs(u);
    }
    return 0.0;
}

// ∫_a^b wave(s r)·amp(r) dr via period-aligned chunks (b may be +inf). The
// chunk integrals decay like amp', so oscillatory tails cost O(#periods to
// decay), not O(resolved oscillations per octave).
double oscillatory_integral(const std::function<double(double)>& amp, WaveKind w, double s,
                            double a, double b, double tol) {
    const double period = 2.0 * kPi / s;
    if (!std::isfinite(b) && !(b > a)) throw LevympError("oscillatory_integral: bad range");
    const auto f = [&](double r) { return wave_fn(w, s * r) * amp(r); };
    if (std::isfinite(b) && (b - a) < 4.0 * period) {
        QuadOptions opt;
        opt.abs_tol = 0.25 * tol;
        return integrate_adaptive(f, a, b, opt).value;
    }
    double acc = 0.0;
    double lo = a;
    int small_streak = 0;
    QuadOptions chunk_opt;
    chunk_opt.abs_tol = 0.05 * tol;
    chunk_opt.rel_tol = 1e-8;
    for (long j = 0; j < 4'000'000; ++j) {
        // never wider than a period (oscillation) nor an octave (steep decay)
        const double width = std::min(period, lo);
        const double hi = std::isfinite(b) ? std::min(b, lo + width) : lo + width;
        const double chunk = integrate_adaptive(f, lo, hi, chunk_opt).value;
        acc += chunk;
        lo = hi;
        if (std::isfinite(b) && lo >= b) return acc;
        if (!std::isfinite(b)) {
            if (std::abs(chunk) < 0.2 * tol)
                ++small_streak;
            else
                small_streak = 0;
            // van der Corput-type remainder bound ~ 2·amp/s once chunks are small
            if (small_streak >= 3 && 2.0 * std::abs(amp(lo)) / s < 0.5 * tol) return acc;
        }
    }
    throw QuadratureError("oscillatory tail did not decay", acc, tol);
}

double radial_jump_symbol(const RadialDensity& nu, int d, double s, double tol) {
    if (s == 0.0) return 0.0;
    const double surf = sphere_surface(d);
    const auto amp = [&](double r) { return surf * nu.profile(r) * std::pow(r, d - 1); };
    const auto compensated = [&](double r) { return one_minus_wave(d, s * r) * amp(r); };

    // (0, r0]: at most ~half an oscillation, compensated integrand
    const double r0 = std::min(1.0, kPi / s);
    const QuadResult inner = integrate_to_zero(compensated, r0, 0.25 * tol);
    if (!inner.converged)
        throw QuadratureError("jump quadrature failed near 0 (density more singular than declared)",
                              inner.value, inner.error);
    double total = inner.value;

    // [r0, 1]: mean part minus oscillation (both cheap)
    if (r0 < 1.0) {
        QuadOptions opt;
        opt.abs_tol = 0.125 * tol;
        total += integrate_adaptive(amp, r0, 1.0, opt).value;
        total -= oscillatory_integral(amp, wave_for_dim(d), s, r0, 1.0, 0.25 * tol);
    }

    // [1, ∞): ∫amp (monotone sweep) minus the oscillating correction
    const QuadResult mass = integrate_to_infinity(amp, 1.0, 0.25 * tol);
    if (!mass.converged)
        throw QuadratureError("jump quadrature failed at infinity (density tail too heavy)",
                              total + mass.value, mass.error);
    total += mass.value;
    total -= oscillatory_integral(amp, wave_for_dim(d), s, 1.0,
                                  std::numeric_limits<double>::infinity(), 0.25 * tol);
    return total;
}

// u - sin(u) without cancellation
double sin_defect(double u) {
    const double a = std::abs(u);
    if (a < 0.1) {
        const double u2 = u * u;
        return u * u2 * (1.0 / 6.0 - u2 / 120.0 + u2 * u2 / 5040.0);
    }
    return u - std::sin(u);
}

std::complex<double> density1d_jump_symbol(const Density1D& nu, double xi, double tol) {
    if (xi == 0.0) return {0.0, 0.0};
    const double s = std::abs(xi);
    double re = 0.0, im = 0.0;
    for (const double side : {1.0, -1.0}) {
        const auto amp = [&](double r) { return nu.density(side * r); };
        const double sgn = side * xi > 0 ? 1.0 : -1.0;  // sign of the phase y·ξ
        const double r0 = std::min(1.0, kPi / s);

        // real part: ∫ (1 - cos(yξ)) ν(dy), yξ = sgn·s·r so the cos is even
        const auto re_comp = [&](double r) { return one_minus_wave(1, s * r) * amp(r); };
        const QuadResult ri = integrate_to_zero(re_comp, r0, 0.125 * tol);
        if (!ri.converged)
            throw QuadratureError("jump quadrature non-convergence (1-d density, near 0)",
                                  ri.value, ri.error);
        re += ri.value;
        QuadOptions opt;
        opt.abs_tol = 0.0625 * tol;
        if (r0 < 1.0) {
            re += integrate_adaptive(amp, r0, 1.0, opt).value;
            re -= oscillatory_integral(amp, WaveKind::Cos, s, r0, 1.0, 0.125 * tol);
        }
        const QuadResult mass = integrate_to_infinity(amp, 1.0, 0.125 * tol);
        if (!mass.converged)
            throw QuadratureError("jump quadrature non-convergence (1-d density, tail)",
                                  mass.value, mass.error);
        re += mass.value;
        re -= oscillatory_integral(amp, WaveKind::Cos, s, 1.0,
                                   std::numeric_limits<double>::infinity(), 0.125 * tol);

        // imaginary part: ∫ (-sin(yξ) + yξ 1_{(0,1)}(|y|)) ν(dy)
        //   on (0,1): (yξ) - sin(yξ) = sgn·(s r - sin(s r))
        const auto im_comp = [&](double r) { return sgn * sin_defect(s * r) * amp(r); };
        const QuadResult ii = integrate_to_zero(im_comp, r0, 0.125 * tol);
        if (!ii.converged)
            throw QuadratureError("jump quadrature non-convergence (1-d density, imaginary part)",
                                  ii.value, ii.error);
        im += ii.value;
        if (r0 < 1.0) {
            im += sgn * (integrate_adaptive([&](double r) { return s * r * amp(r); }, r0, 1.0, opt)
                             .value -
                         oscillatory_integral(amp, WaveKind::Sin, s, r0, 1.0, 0.125 * tol));
        }
        im -= sgn * oscillatory_integral(amp, WaveKind::Sin, s, 1.0,
                                         std::numeric_limits<double>::infinity(), 0.125 * tol);
    }
    return {re, im};
}

}  // namespace

void LevyTriplet::validate() const {
    const int d = dim();
    if (diffusion.rows() != d || diffusion.cols() != d)
        throw PreconditionError("LevyTriplet: diffusion matrix shape mismatch");
    if (!diffusion.is_symmetric(1e-12))
        throw PreconditionError("LevyTriplet: diffusion matrix not symmetric");
    const auto ev = diffusion.sym_eigenvalues();
    if (!ev.empty() && ev.front() < -1e-12)
        throw PreconditionError("LevyTriplet: diffusion matrix has eigenvalue " +
                                std::to_string(ev.front()) + " < -1e-12");
    const double li = levy_integral();
    if (!std::isfinite(li))
        throw PreconditionError("LevyTriplet: ∫ min(1,|y|²) ν(dy) is not finite");
}

double LevyTriplet::levy_integral(double tol) const {
    const int d = dim();
    return std::visit(
        [&](const auto& nu) -> double {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, ZeroJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, JumpAtoms>) {
                double s = 0.0;
                for (const auto& [y, m] : nu.atoms) s += m * std::min(1.0, norm2(y));
                return s;
            } else if constexpr (std::is_same_v<T, RadialDensity>) {
                const double surf = sphere_surface(d);
                const auto inner = [&](double r) {
                    return surf * r * r * nu.profile(r) * std::pow(r, d - 1);
                };
                const auto outer = [&](double r) { return surf * nu.profile(r) * std::pow(r, d - 1); };
                const QuadResult a = integrate_to_zero(inner, 1.0, 0.5 * tol);
                const QuadResult b = integrate_to_infinity(outer, 1.0, 0.5 * tol);
                if (!a.converged || !b.converged) return std::numeric_limits<double>::infinity();
                return a.value + b.value;
            } else {  // Density1D
                double acc = 0.0;
                for (const double side : {1.0, -1.0}) {
                    const auto inner = [&](double r) { return r * r * nu.density(side * r); };
                    const auto outer = [&](double r) { return nu.density(side * r); };
                    const QuadResult a = integrate_to_zero(inner, 1.0, 0.25 * tol);
                    const QuadResult b = integrate_to_infinity(outer, 1.0, 0.25 * tol);
                    if (!a.converged || !b.converged)
                        return std::numeric_limits<double>::infinity();
                    acc += a.value + b.value;
                }
                return acc;
            }
        },
        jumps);
}

double LevyTriplet::ball_mass(const Vec& center, double radius, double tol) const {
    const int d = dim();
    return std::visit(
        [&](const auto& nu) -> double {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, ZeroJumps>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, JumpAtoms>) {
                double s = 0.0;
                for (const auto& [y, m] : nu.atoms) {
                    Vec diff = y;
                    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= center[i];
                    if (norm(diff) <= radius + 1e-14) s += m;
                }
                return s;
            } else if constexpr (std::is_same_v<T, RadialDensity>) {
                const double c = norm(center);
                if (c <= radius && nu.sing_exponent >= 1.0)
                    return std::numeric_limits<double>::infinity();
                if (d == 1) {
                    const double a = std::max(c - radius, 0.0), b = c + radius;
                    if (b <= 0.0) return 0.0;
                    QuadOptions opt;
                    opt.abs_tol = tol;
                    double mass = integrate_adaptive([&](double r) { return nu.profile(r); },
                                                     std::max(a, 1e-14), b, opt)
                                      .value;
                    // d=1 "radial" means symmetric; the ball may cover both signs
                    if (c - radius < 0.0)
                        mass += integrate_adaptive([&](double r) { return nu.profile(r); }, 1e-14,
                                                   radius - c, opt)
                                    .value;
                    return mass;
                }
                if (d == 2) {
                    const double a = std::max(c - radius, 1e-14), b = c + radius;
                    QuadOptions opt;
                    opt.abs_tol = tol;
                    return integrate_adaptive(
                               [&](double rho) {
                                   const double v =
                                       (rho * rho + c * c - radius * radius) / (2.0 * rho * c);
                                   const double th = std::acos(std::clamp(v, -1.0, 1.0));
                                   return 2.0 * th * rho * nu.profile(rho);
                               },
                               a, b, opt)
                        .value;
                }
                throw LevympError("ball_mass: radial densities implemented for d <= 2");
            } else {  // Density1D
                const double c = center[0];
                const double a = c - radius, b = c + radius;
                if (a <= 0.0 && b >= 0.0 && nu.sing_exponent >= 1.0)
                    return std::numeric_limits<double>::infinity();
                QuadOptions opt;
                opt.abs_tol = tol;
                return integrate_adaptive([&](double y) { return y == 0.0 ? 0.0 : nu.density(y); },
                                          a, b, opt)
                    .value;
            }
        },
        jumps);
}

double LevyTriplet::coeff_magnitude(double tol) const {
    return norm(drift) + diffusion.sym_spectral_norm() + levy_integral(tol);
}

std::complex<double> levy_khintchine(const LevyTriplet& t, const Vec& xi, double tol) {
    const int d = t.dim();
    std::complex<double> q(0.5 * t.diffusion.quad_form(xi), -dot(t.drift, xi));
    std::visit(
        [&](const auto& nu) {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, ZeroJumps>) {
            } else if constexpr (std::is_same_v<T, JumpAtoms>) {
                for (const auto& [y, m] : nu.atoms) {
                    const double p = dot(y, xi);
                    std::complex<double> term(1.0 - std::cos(p), -std::sin(p));
                    if (norm(y) < 1.0) term += std::complex<double>(0.0, p);
                    q += m * term;
                }
            } else if constexpr (std::is_same_v<T, RadialDensity>) {
                q += radial_jump_symbol(nu, d, norm(xi), tol);
            } else {
                q += density1d_jump_symbol(nu, xi[0], tol);
            }
        },
        t.jumps);
    return q;
}

std::complex<double> eval_symbol(const SymbolField& sym, const Vec& x, const Vec& xi, double tol) {
    for (double v : xi)
        if (!std::isfinite(v)) throw PreconditionError("eval_symbol: xi not finite");
    if (static_cast<int>(x.size()) != sym.dim || static_cast<int>(xi.size()) != sym.dim)
        throw PreconditionError("eval_symbol: dimension mismatch");
    if (sym.has_direct()) return sym.direct_eval(x, xi);
    return levy_khintchine(sym.triplet_at(x), xi, tol);
}

// ---------------------------------------------------------------------------
// Lévy exponents

LevyExponent gaussian_exponent() {
    LevyExponent e;
    e.kind = LevyExponent::Kind::Gaussian;
    e.name = "gaussian";
    e.gauss_coeff = 1.0;
    e.psi = [](double xi) { return xi * xi; };
    return e;
}

double stable_density_constant(double alpha, int d) {
    return alpha * std::pow(2.0, alpha - 1.0) * std::tgamma(0.5 * (alpha + d)) /
           (std::pow(kPi, 0.5 * d) * std::tgamma(1.0 - 0.5 * alpha));
}

LevyExponent stable_exponent(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw PreconditionError("stable_exponent: alpha must lie in (0,2)");
    LevyExponent e;
    e.kind = LevyExponent::Kind::Stable;
    e.name = "stable(" + std::to_string(alpha) + ")";
    e.stable_alpha = alpha;
    e.psi = [alpha](double xi) { return std::pow(std::abs(xi), alpha); };
    const double c = stable_density_constant(alpha, 1);
    e.jump_profile = RadialDensity{[c, alpha](double r) { return c * std::pow(r, -1.0 - alpha); },
                                   1.0 + alpha, 1.0 + alpha};
    return e;
}

LevyExponent stable_mix_exponent(double c1, double a1, double c2, double a2) {
    if (c1 < 0 || c2 < 0 || !(a1 > 0) || !(a1 < 2) || !(a2 > 0) || !(a2 < 2))
        throw PreconditionError("stable_mix_exponent: need c_i >= 0 and a_i in (0,2)");
    LevyExponent e;
    e.kind = LevyExponent::Kind::StableMix;
    e.name = "stable_mix";
    e.mix_c1 = c1;
    e.mix_a1 = a1;
    e.mix_c2 = c2;
    e.mix_a2 = a2;
    e.psi = [=](double xi) {
        const double s = std::abs(xi);
        return c1 * std::pow(s, a1) + c2 * std::pow(s, a2);
    };
    const double k1 = c1 * stable_density_constant(a1, 1);
    const double k2 = c2 * stable_density_constant(a2, 1);
    e.jump_profile =
        RadialDensity{[=](double r) {
                          return k1 * std::pow(r, -1.0 - a1) + k2 * std::pow(r, -1.0 - a2);
                      },
                      1.0 + std::max(a1, a2), 1.0 + std::min(a1, a2)};
    return e;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

void check_alpha_range(double a, const Vec& x) {
    if (!(a > 0.0) || !(a < 2.0)) {
        std::string where = "(";
        for (std::size_t i = 0; i < x.size(); ++i)
            where += (i ? "," : "") + std::to_string(x[i]);
        throw PreconditionError("stable-like order alpha(x)=" + std::to_string(a) +
                                " outside (0,2) at x=" + where + ")");
    }
}

std::vector<Vec> sample_lattice(int d, double extent, int per_dim) {
    std::vector<Vec> pts;
    if (d == 1) {
        for (double v : linspace(-extent, extent, per_dim)) pts.push_back(Vec{v});
    } else if (d == 2) {
        for (double a : linspace(-extent, extent, per_dim))
            for (double b : linspace(-extent, extent, per_dim)) pts.push_back(Vec{a, b});
    } else {
        for (double a : linspace(-extent, extent, per_dim))
            for (double b : linspace(-extent, extent, per_dim))
                for (double c : linspace(-extent, extent, per_dim)) pts.push_back(Vec{a, b, c});
    }
    return pts;
}

}  // namespace

SymbolField make_isotropic_stable_like(std::function<double(const Vec&)> alpha, int d,
                                       CoefficientFlags flags) {
    for (const Vec& x : sample_lattice(d, 16.0, d == 1 ? 129 : 17)) check_alpha_range(alpha(x), x);
    SymbolField s;
    s.dim = d;
    s.name = "isotropic_stable_like";
    s.flags = flags;
    s.flags.bounded = true;  // sup_x sup_{|xi|<=1} |q| <= 1 and the Levy integral is bounded
    s.radial_in_xi = true;
    s.direct_eval = [alpha](const Vec& x, const Vec& xi) {
        const double a = alpha(x);
        check_alpha_range(a, x);
        const double r = norm(xi);
        return std::complex<double>(r == 0.0 ? 0.0 : std::pow(r, a), 0.0);
    };
    s.triplet_at = [alpha, d](const Vec& x) {
        const double a = alpha(x);
        check_alpha_range(a, x);
        const double c = stable_density_constant(a, d);
        LevyTriplet t;
        t.drift = Vec(static_cast<std::size_t>(d), 0.0);
        t.diffusion = Mat(d, d);
        t.jumps = RadialDensity{[c, a, d](double r) { return c * std::pow(r, -d - a); },
                                static_cast<double>(d) + a, static_cast<double>(d) + a};
        return t;
    };
    return s;
}

SymbolField make_sde_symbol(std::function<double(double)> b, std::function<double(double)> sigma,
                            const LevyExponent& psi, CoefficientFlags flags) {
    for (double x : linspace(-16.0, 16.0, 129))
        if (sigma(x) < 0.0)
            throw PreconditionError("make_sde_symbol: sigma(x) < 0 at x=" + std::to_string(x));
    SymbolField s;
    s.dim = 1;
    s.name = "sde_symbol[" + psi.name + "]";
    s.flags = flags;
    auto psif = psi.psi;
    s.direct_eval = [b, sigma, psif](const Vec& x, const Vec& xi) {
        return std::complex<double>(psif(sigma(x[0]) * xi[0]), -b(x[0]) * xi[0]);
    };
    const double gauss = psi.gauss_coeff;
    const std::optional<RadialDensity> prof = psi.jump_profile;
    s.triplet_at = [b, sigma, gauss, prof](const Vec& x) {
        LevyTriplet t;
        const double sg = sigma(x[0]);
        t.drift = Vec{b(x[0])};
        t.diffusion = Mat(1, 1);
        t.diffusion(0, 0) = 2.0 * gauss * sg * sg;
        if (prof && sg > 0.0) {
            auto base = prof->profile;
            // scaling y = sg·z maps the density κ(z)dz to κ(r/sg)/sg dr
            t.jumps = RadialDensity{[base, sg](double r) { return base(r / sg) / sg; },
                                    prof->sing_exponent, prof->decay_exponent};
        }
        return t;
    };
    return s;
}

SymbolField make_mixed(std::function<double(double)> phi1, std::function<double(double)> phi2,
                       const LevyExponent& psi1, const LevyExponent& psi2,
                       CoefficientFlags flags) {
    double inf_sum = std::numeric_limits<double>::infinity();
    for (double x : linspace(-16.0, 16.0, 257)) {
        if (phi1(x) < 0.0 || phi2(x) < 0.0)
            throw PreconditionError("make_mixed: phi_i must be nonnegative (x=" +
                                    std::to_string(x) + ")");
        inf_sum = std::min(inf_sum, phi1(x) + phi2(x));
    }
    if (!(inf_sum > 0.0))
        throw PreconditionError("make_mixed: inf (phi1 + phi2) must be positive");
    SymbolField s;
    s.dim = 1;
    s.name = "mixed[" + psi1.name + "+" + psi2.name + "]";
    s.flags = flags;
    s.radial_in_xi = true;
    auto p1 = psi1.psi, p2 = psi2.psi;
    s.direct_eval = [phi1, phi2, p1, p2](const Vec& x, const Vec& xi) {
        return std::complex<double>(phi1(x[0]) * p1(xi[0]) + phi2(x[0]) * p2(xi[0]), 0.0);
    };
    const double g1 = psi1.gauss_coeff, g2 = psi2.gauss_coeff;
    const std::optional<RadialDensity> q1 = psi1.jump_profile, q2 = psi2.jump_profile;
    s.triplet_at = [phi1, phi2, g1, g2, q1, q2](const Vec& x) {
        const double c1 = phi1(x[0]), c2 = phi2(x[0]);
        LevyTriplet t;
        t.drift = Vec{0.0};
        t.diffusion = Mat(1, 1);
        t.diffusion(0, 0) = 2.0 * (c1 * g1 + c2 * g2);
        if (q1 || q2) {
            auto f1 = q1 ? q1->profile : std::function<double(double)>();
            auto f2 = q2 ? q2->profile : std::function<double(double)>();
            double sing = 0.0, decay = std::numeric_limits<double>::infinity();
            if (q1) sing = std::max(sing, q1->sing_exponent), decay = std::min(decay, q1->decay_exponent);
            if (q2) sing = std::max(sing, q2->sing_exponent), decay = std::min(decay, q2->decay_exponent);
            t.jumps = RadialDensity{[c1, c2, f1, f2](double r) {
                                        double v = 0.0;
                                        if (f1) v += c1 * f1(r);
                                        if (f2) v += c2 * f2(r);
                                        return v;
                                    },
                                    sing, decay};
        }
        return t;
    };
    return s;
}

SymbolField make_integrated_stable(std::function<double(double, double)> f,
                                   std::function<double(const Vec&)> phi, double a0, double a1,
                                   int d, CoefficientFlags flags) {
    if (!(a0 > 0.0) || !(a1 <= 2.0) || !(a0 <= a1))
        throw PreconditionError("make_integrated_stable: need 0 < a0 <= a1 <= 2");
    const GaussRule rule = gauss_legendre(32, a0, a1);
    for (const Vec& x : sample_lattice(d, 16.0, d == 1 ? 65 : 9)) {
        const double p = phi(x);
        for (double a : rule.nodes)
            if (!(f(a, p) > 0.0))
                throw PreconditionError("make_integrated_stable: f(alpha, phi(x)) must be > 0");
    }
    SymbolField s;
    s.dim = d;
    s.name = "integrated_stable";
    s.flags = flags;
    s.flags.bounded = true;
    s.radial_in_xi = true;
    s.direct_eval = [f, phi, rule](const Vec& x, const Vec& xi) {
        const double p = phi(x);
        const double r = norm(xi);
        if (r == 0.0) return std::complex<double>(0.0, 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::pow(r, rule.nodes[i]) * f(rule.nodes[i], p);
        return std::complex<double>(acc, 0.0);
    };
    s.triplet_at = [f, phi, rule, d, a0, a1](const Vec& x) {
        const double p = phi(x);
        std::vector<double> coeff(rule.nodes.size());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            coeff[i] =
                rule.weights[i] * f(rule.nodes[i], p) * stable_density_constant(rule.nodes[i], d);
        auto nodes = rule.nodes;
        LevyTriplet t;
        t.drift = Vec(static_cast<std::size_t>(d), 0.0);
        t.diffusion = Mat(d, d);
        t.jumps = RadialDensity{[coeff, nodes, d](double r) {
                                    double acc = 0.0;
                                    for (std::size_t i = 0; i < nodes.size(); ++i)
                                        acc += coeff[i] * std::pow(r, -d - nodes[i]);
                                    return acc;
                                },
                                static_cast<double>(d) + a1, static_cast<double>(d) + a0};
        return t;
    };
    return s;
}

SymbolField make_stable_dominated(StableDominatedKernel kernel, int d, CoefficientFlags flags) {
    SymbolField s;
    s.dim = d;
    s.name = "stable_dominated";
    s.flags = flags;
    s.radial_in_xi = true;
    const double sing = kernel.sing_exponent, decay = kernel.decay_exponent;
    auto prof = kernel.profile;
    s.triplet_at = [prof, sing, decay, d](const Vec& x) {
        LevyTriplet t;
        t.drift = Vec(static_cast<std::size_t>(d), 0.0);
        t.diffusion = Mat(d, d);
        t.jumps = RadialDensity{[prof, x](double r) { return prof(x, r); }, sing, decay};
        return t;
    };
    return s;
}

SymbolField make_constant_symbol(LevyTriplet t, std::string name) {
    t.validate();
    SymbolField s;
    s.dim = t.dim();
    s.name = std::move(name);
    s.flags.continuous_in_x = true;
    s.flags.bounded = true;
    s.triplet_at = [t](const Vec&) { return t; };
    return s;
}

std::vector<CatalogEntry> catalog_entries() {
    return {
        {"isotropic_stable_like", "alpha: x -> (0,2), dim",
         "q(x,xi) = |xi|^alpha(x)",
         "variable-order isotropic stable symbol; jump density c(alpha,d)|y|^{-d-alpha(x)}"},
        {"sde_symbol", "b: R->R, sigma: R->[0,inf), psi in {gaussian, stable(alpha), stable_mix}",
         "q(x,xi) = -i b(x) xi + psi(sigma(x) xi)",
         "symbol of the SDE dX = b(X-)dt + sigma(X-)dL with driver exponent psi"},
        {"mixed", "phi1, phi2: R->[0,inf) with inf(phi1+phi2)>0, psi1, psi2",
         "q(x,xi) = phi1(x) psi1(xi) + phi2(x) psi2(xi)",
         "state-modulated superposition of two symmetric Levy exponents"},
        {"integrated_stable", "f(alpha,beta)>0 bounded, phi: R^d->R, [a0,a1] in (0,2)",
         "q(x,xi) = int_[a0,a1] |xi|^alpha f(alpha, phi(x)) dalpha",
         "stable order integrated over an index interval (32-node Gauss rule)"},
        {"stable_dominated", "kappa(x,|y|) with power bounds near 0 and infinity",
         "q(x,xi) = int (1 - e^{iy xi} + iy xi 1_{|y|<1}) kappa(x,|y|) dy",
         "kernel-defined symbol evaluated by Levy-Khintchine quadrature"},
    };
}

}  // namespace levymp
