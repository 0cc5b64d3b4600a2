#include "levymp/generator.hpp"

#include <cmath>
#include <ostream>

#include "levymp/quadrature.hpp"

namespace levymp {

namespace {

constexpr double kPi = 3.14159265358979323846;

double jump_part_radial(const RadialDensity& nu, const TestFunction& f, const Vec& x, int d,
                        double tol) {
    const double fx = f.value(x);
    const Mat hess = f.hessian(x);
    // below r_taylor the exact second difference is evaluated from the
    // Hessian: the raw difference is pure cancellation noise against the
    // singular density
    constexpr double r_taylor = 1e-4;
    std::function<double(double)> shell_avg;  // angular measure included
    if (d == 1) {
        const double h00 = hess(0, 0);
        shell_avg = [&f, &x, fx, h00](double r) {
            if (r < r_taylor) return h00 * r * r;
            return f.value(Vec{x[0] + r}) + f.value(Vec{x[0] - r}) - 2.0 * fx;
        };
    } else if (d == 2) {
        // antipodal-symmetric angular rule: the gradient compensator cancels
        const double tr_h = hess(0, 0) + hess(1, 1);
        shell_avg = [&f, &x, fx, tr_h](double r) {
            if (r < r_taylor) return 2.0 * kPi * 0.25 * r * r * tr_h;
            constexpr int M = 32;
            double acc = 0.0;
            for (int j = 0; j < M; ++j) {
                const double th = 2.0 * kPi * j / M;
                acc += f.value(Vec{x[0] + r * std::cos(th), x[1] + r * std::sin(th)});
            }
            return 2.0 * kPi * (acc / M - fx);
        };
    } else {
        throw LevympError("apply_integro: radial jump measures implemented for d <= 2");
    }
    const auto integrand = [&](double r) {
        return shell_avg(r) * nu.profile(r) * std::pow(r, d - 1);
    };
    const QuadResult inner = integrate_to_zero(integrand, 1.0, 0.25 * tol);
    if (!inner.converged)
        throw QuadratureError("apply_integro: jump quadrature failed near the singularity",
                              inner.value, inner.error);
    double total = inner.value;
    // Beyond |x| + supp f the second difference is exactly -2 f(x); up to
    // there the integrand may sit at 0 and wake up again (flat-topped test
    // functions), which a decay-detecting sweep must not skip over.
    double sweep_from = 1.0;
    if (std::isfinite(f.support_radius)) {
        const double structured = norm(x) + f.support_radius + 1.0;
        if (structured > 1.0) {
            QuadOptions opt;
            opt.abs_tol = 0.25 * tol;
            total += integrate_adaptive(integrand, 1.0, structured, opt).value;
            sweep_from = structured;
        }
    }
    const QuadResult outer = integrate_to_infinity(integrand, sweep_from, 0.25 * tol);
    if (!outer.converged)
        throw QuadratureError("apply_integro: jump tail quadrature failed", outer.value,
                              outer.error);
    return total + outer.value;
}

double jump_part_density1d(const Density1D& nu, const TestFunction& f, const Vec& x, double tol) {
    const double fx = f.value(x);
    const double fpx = f.gradient(x)[0];
    const double h00 = f.hessian(x)(0, 0);
    double acc = 0.0;
    for (const double side : {1.0, -1.0}) {
        const auto inner = [&](double r) {
            const double y = side * r;
            if (r < 1e-4) return 0.5 * h00 * y * y * nu.density(y);
            return (f.value(Vec{x[0] + y}) - fx - fpx * y) * nu.density(y);
        };
        const auto outer = [&](double r) {
            const double y = side * r;
            return (f.value(Vec{x[0] + y}) - fx) * nu.density(y);
        };
        const QuadResult a = integrate_to_zero(inner, 1.0, 0.125 * tol);
        double sweep_from = 1.0;
        double structured_part = 0.0;
        if (std::isfinite(f.support_radius)) {
            const double structured = std::abs(x[0]) + f.support_radius + 1.0;
            if (structured > 1.0) {
                QuadOptions opt;
                opt.abs_tol = 0.125 * tol;
                structured_part = integrate_adaptive(outer, 1.0, structured, opt).value;
                sweep_from = structured;
            }
        }
        const QuadResult b = integrate_to_infinity(outer, sweep_from, 0.125 * tol);
        if (!a.converged || !b.converged)
            throw QuadratureError("apply_integro: jump quadrature failed (1-d density)",
                                  a.value + b.value, a.error + b.error);
        acc += a.value + structured_part + b.value;
    }
    return acc;
}

}  // namespace

double apply_integro(const SymbolField& sym, const TestFunction& f, const Vec& x, double tol) {
    if (sym.dim != f.dim || static_cast<int>(x.size()) != sym.dim)
        throw PreconditionError("apply_integro: dimension mismatch");
    const LevyTriplet t = sym.triplet_at(x);
    double out = dot(t.drift, f.gradient(x)) + 0.5 * t.diffusion.trace_product(f.hessian(x));
    std::visit(
        [&](const auto& nu) {
            using T = std::decay_t<decltype(nu)>;
            if constexpr (std::is_same_v<T, ZeroJumps>) {
            } else if constexpr (std::is_same_v<T, JumpAtoms>) {
                const double fx = f.value(x);
                const Vec g = f.gradient(x);
                for (const auto& [y, m] : nu.atoms) {
                    Vec xy = x;
                    for (std::size_t i = 0; i < xy.size(); ++i) xy[i] += y[i];
                    double term = f.value(xy) - fx;
                    if (norm(y) < 1.0) term -= dot(g, y);
                    out += m * term;
                }
            } else if constexpr (std::is_same_v<T, RadialDensity>) {
                out += jump_part_radial(nu, f, x, sym.dim, tol);
            } else {
                out += jump_part_density1d(nu, f, x, tol);
            }
        },
        t.jumps);
    return out;
}

namespace {

// q(x,·) tabulated along a ξ-ray for symbols without a closed form, so the
// Fourier quadrature does not pay one Lévy-Khintchine quadrature per node.
// Radial symbols use a log1p-spaced grid (they vary like |ξ|^α).
struct SymbolSlice {
    bool direct = false;
    bool radial = false;
    const SymbolField* sym = nullptr;
    const Vec* x = nullptr;
    UniformTable re, im;
    std::complex<double> operator()(const Vec& xi) const {
        if (direct) return sym->direct_eval(*x, xi);
        if (radial) return {re(std::log1p(std::abs(xi[0]))), 0.0};
        return {re(xi[0]), im(xi[0])};
    }
};

SymbolSlice make_slice(const SymbolField& sym, const Vec& x, double cutoff) {
    SymbolSlice sl;
    sl.direct = sym.has_direct();
    sl.radial = sym.radial_in_xi;
    sl.sym = &sym;
    sl.x = &x;
    if (sl.direct) return sl;
    const LevyTriplet t = sym.triplet_at(x);
    const auto lk = [&](double s) {
        Vec xi(static_cast<std::size_t>(sym.dim), 0.0);
        xi[0] = s;
        return levy_khintchine(t, xi);
    };
    if (sl.radial) {
        const int nodes = 513;
        const double t_hi = std::log1p(cutoff);
        std::vector<double> re(static_cast<std::size_t>(nodes));
        parallel_for_blocks(static_cast<std::size_t>(nodes), [&](std::size_t a, std::size_t b) {
            for (std::size_t i = a; i < b; ++i)
                re[i] = lk(std::expm1(t_hi * static_cast<double>(i) / (nodes - 1))).real();
        });
        sl.re = UniformTable(0.0, t_hi, std::move(re));
    } else {
        const int nodes = 2049;
        std::vector<double> re(static_cast<std::size_t>(nodes)), im(static_cast<std::size_t>(nodes));
        parallel_for_blocks(static_cast<std::size_t>(nodes), [&](std::size_t a, std::size_t b) {
            for (std::size_t i = a; i < b; ++i) {
                const double s = -cutoff + 2.0 * cutoff * static_cast<double>(i) / (nodes - 1);
                const std::complex<double> q = lk(s);
                re[i] = q.real();
                im[i] = q.imag();
            }
        });
        sl.re = UniformTable(-cutoff, cutoff, std::move(re));
        sl.im = UniformTable(-cutoff, cutoff, std::move(im));
    }
    return sl;
}

}  // namespace

FourierApply apply_fourier_full(const SymbolField& sym, const TestFunction& f, const Vec& x,
                                double tol) {
    if (sym.dim != f.dim || static_cast<int>(x.size()) != sym.dim)
        throw PreconditionError("apply_fourier: dimension mismatch");
    if (!f.fourier) throw PreconditionError("apply_fourier: test function has no transform");
    const double cutoff = f.fourier_cutoff > 0 ? f.fourier_cutoff : 256.0;
    const int d = sym.dim;

    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = 10.0 * tol;
    opt.max_evals = 2'000'000;

    FourierApply out;
    if (d == 1) {
        const SymbolSlice q = make_slice(sym, x, cutoff);
        const double xx = x[0];
        const auto integrand = [&](double s) {
            const Vec xi{s};
            const std::complex<double> phase(std::cos(xx * s), std::sin(xx * s));
            return phase * q(xi) * f.fourier(xi);
        };
        const CQuadResult r = integrate_adaptive_c(integrand, -cutoff, cutoff, opt);
        if (!r.converged)
            throw QuadratureError("apply_fourier: oscillatory quadrature did not converge",
                                  -r.value.real(), r.error);
        out.value = -r.value.real();
        out.imag_residual = std::abs(r.value.imag());
    } else if (d == 2 && sym.radial_in_xi && f.fourier_radial_real) {
        // Hankel reduction: -2π ∫ J₀(|x|s) q(x,s e₁) f̂(s e₁) s ds
        const double rx = norm(x);
        const SymbolSlice q = make_slice(sym, x, cutoff);
        const QuadResult r = integrate_adaptive(
            [&](double s) {
                const Vec xi{s, 0.0};
                const double qv = sym.has_direct() ? sym.direct_eval(x, xi).real() : q(Vec{s}).real();
                return std::cyl_bessel_j(0.0, rx * s) * qv * f.fourier(xi).real() * s;
            },
            0.0, cutoff, opt);
        if (!r.converged)
            throw QuadratureError("apply_fourier: Hankel quadrature did not converge",
                                  -2.0 * kPi * r.value, r.error);
        out.value = -2.0 * kPi * r.value;
        out.imag_residual = 0.0;
    } else {
        throw LevympError("apply_fourier: d >= 2 needs a radial symbol and radial transform");
    }
    if (out.imag_residual >= 1e-6 * (1.0 + std::abs(out.value)))
        throw LevympError("apply_fourier: imaginary residual " +
                          std::to_string(out.imag_residual) + " exceeds 1e-6·(1+|Af|)");
    return out;
}

double apply_fourier(const SymbolField& sym, const TestFunction& f, const Vec& x, double tol) {
    return apply_fourier_full(sym, f, x, tol).value;
}

void export_lattice_csv(std::ostream& os, const SymbolField& sym, const TestFunction& f,
                        const std::vector<Vec>& points) {
    for (int k = 0; k < sym.dim; ++k) os << "x" << k << ",";
    os << "integro,fourier,imag_residual\n";
    for (const Vec& x : points) {
        const double ai = apply_integro(sym, f, x);
        const FourierApply af = apply_fourier_full(sym, f, x);
        for (double v : x) os << v << ",";
        os << ai << "," << af.value << "," << af.imag_residual << "\n";
    }
}

}  // namespace levymp
