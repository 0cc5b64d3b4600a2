#include "levymp/mollify.hpp"

#include <cmath>
#include <memory>

#include "levymp/quadrature.hpp"
#include "levymp/test_function.hpp"

namespace levymp {

namespace {

// χ = u / ‖u‖₁ for the standard bump profile; support [-1, 1].
double chi_l1() {
    static const double v = 2.0 * integrate([](double r) { return bump_profile::value(r); }, 0.0,
                                            1.0, QuadOptions{1e-13, 1e-12, 48, 100000});
    return v;
}

double chi(double u) { return bump_profile::value(std::abs(u)) / chi_l1(); }

}  // namespace

double holder_exponent_for_lipschitz(double L) {
    if (!(L > 0.0)) throw PreconditionError("holder_exponent_for_lipschitz: L must be positive");
    if (2.0 * L <= 3.0) return 1.0;
    return std::min(1.0, std::log(1.5) / std::log(L));
}

double mollifier_grad_l1() {
    // χ is unimodal with χ(±1) = 0, so ∫|χ'| = 2 χ(0)
    return 2.0 * chi(0.0);
}

double mollifier_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    QuadOptions opt;
    opt.abs_tol = 1e-12;
    return integrate_adaptive([](double u) { return chi(u); }, -1.0, x, opt).value;
}

MollifiedFunction mollify(std::function<double(double)> f, double declared_sup, int n) {
    if (n < 1) throw PreconditionError("mollify: level n must be >= 1");
    if (!(declared_sup >= 0.0) || !std::isfinite(declared_sup))
        throw PreconditionError("mollify: declared sup bound must be finite");
    MollifiedFunction m;
    m.level = n;
    m.declared_sup = declared_sup;
    m.lipschitz = declared_sup * n * mollifier_grad_l1();
    m.alpha = m.lipschitz > 0.0 ? holder_exponent_for_lipschitz(m.lipschitz) : 1.0;
    m.holder_bound = 4.0 * declared_sup;
    const double nn = n;
    m.eval = [f, declared_sup, nn](double x) {
        // f_n(x) = ∫ f(x - u/n) χ(u) du over [-1, 1]
        const auto integrand = [&](double u) {
            const double v = f(x - u / nn);
            if (std::abs(v) > declared_sup * (1.0 + 1e-12) + 1e-300)
                throw PreconditionError("mollify: sampled |f| exceeds the declared bound");
            return v * chi(u);
        };
        QuadOptions opt;
        opt.abs_tol = 1e-10;
        opt.rel_tol = 1e-9;
        return integrate_adaptive(integrand, -1.0, 1.0, opt).value;
    };
    return m;
}

std::function<double(double)> tabulated(const MollifiedFunction& f, double lo, double hi,
                                        int nodes) {
    auto table = std::make_shared<UniformTable>(
        UniformTable::tabulate(lo, hi, nodes, [&](double x) { return f.eval(x); }));
    return [table](double x) { return (*table)(x); };
}

}  // namespace levymp
