#pragma once
// Spherically symmetric superfunctions h(R^2): Grassmann-valued evaluation,
// composition, the gradient / Euler / Laplace rules, osp invariance and the
// fundamental solutions of the iterated super Laplacian.

#include "superharm/grassmann.hpp"
#include "superharm/profile.hpp"
#include "superharm/superpoly.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace superharm {

/// h(R^2) at bosonic radius r: sum_j (-1)^j x`^{2j}/j! h^{(j)}(r^2).
inline BasicGrassmann<double> radial_expand(const RadialProfile& h, const Signature& sig, double r) {
    if (!(r > 0)) throw DomainError("radial evaluation needs r > 0");
    int n = sig.n();
    h.require_order(n);
    BasicGrassmann<double> out(2 * n);
    BasicGrassmann<double> power(2 * n, 1.0);
    BasicGrassmann<double> sq = fermi_norm_sq<double>(n);
    double fact = 1;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) fact *= j;
        out += power * ((j % 2 ? -1.0 : 1.0) * h.derivative(j, r * r) / fact);
        power = power * sq;
    }
    return out;
}

/// R^alpha as a radial superfunction.
inline RadialSuperPoly radial_power(const Signature& sig, const Rational& alpha) {
    return radial_superfunction(RadialFunction::pow_half(alpha), sig);
}

/// h(f) = sum_j f_1^j/j! h^{(j)}(f_0) for a Grassmann-valued argument.
/// `h(j, t)` returns the j-th derivative; `order` derivatives must exist.
inline BasicGrassmann<double> compose(const std::function<double(int, double)>& h, int order, const BasicGrassmann<double>& f) {
    double body = f.body();
    std::vector<double> d(order + 1);
    for (int j = 0; j <= order; ++j) d[j] = h(j, body);
    return compose(std::span<const double>(d), f);
}

/// Gradient of a radial superfunction: nabla_k h(R^2) = 2 X_k h'(R^2).
struct RadialGradient {
    std::vector<SuperPolynomial> factor;  // 2 X_k
    RadialFunction derivative;
};

inline RadialGradient radial_gradient(const RadialFunction& h, const Signature& sig) {
    RadialGradient g;
    for (int k = 1; k <= sig.dim(); ++k) g.factor.push_back(SuperPolynomial::coordinate(sig, k) * ExactScalar(2));
    g.derivative = h.d_du();
    return g;
}

/// Profile of E h(R^2) = 2 R^2 h'(R^2).
inline RadialFunction radial_euler(const RadialFunction& h) { return h.d_du().times_u() * RadialFunction(2); }

/// Profile of nabla^2 h(R^2) = 4 R^2 h''(R^2) + 2M h'(R^2); pass k for h(R^2) H_k (2M becomes 4k + 2M).
inline RadialFunction radial_laplacian(const RadialFunction& h, const Signature& sig, int k = 0) {
    RadialFunction d1 = h.d_du();
    return d1.d_du().times_u() * RadialFunction(4) + d1 * RadialFunction(4 * k + 2 * sig.M());
}

/// [nabla^2, h(R^2)] p = 4R^2 h''(R^2) p + h'(R^2)(4E + 2M) p.
inline RadialSuperPoly radial_laplacian_commutator(const RadialFunction& h, const SuperPolynomial& p) {
    const Signature& sig = p.sig();
    RadialFunction d1 = h.d_du();
    RadialSuperPoly second = radial_superfunction(d1.d_du().times_u() * RadialFunction(4), sig);
    RadialSuperPoly first = radial_superfunction(d1, sig);
    SuperPolynomial inner = euler(p) * ExactScalar(4) + p * ExactScalar(2 * sig.M());
    return second * lift<RadialFunction>(p) + first * lift<RadialFunction>(inner);
}

/// Residuals of L_ij applied to a superfunction.
struct InvarianceReport {
    bool exact = false;   // symbolic path
    double max_residual = 0;
    int nonzero = 0;      // generators with a nonzero residual
};

inline InvarianceReport osp_invariance_check(const RadialSuperPoly& f) {
    InvarianceReport r;
    r.exact = true;
    const Signature& sig = f.sig();
    for (int i = 1; i <= sig.dim(); ++i)
        for (int j = 1; j <= sig.dim(); ++j)
            if (!reduce_radial(osp_generator(i, j, f)).is_zero()) ++r.nonzero;
    r.max_residual = r.nonzero ? 1 : 0;
    return r;
}

inline InvarianceReport osp_invariance_check(const RadialFunction& h, const Signature& sig) {
    return osp_invariance_check(radial_superfunction(h, sig));
}

/// Negative control and general polynomials.
inline InvarianceReport osp_invariance_check(const SuperPolynomial& f) { return osp_invariance_check(lift<RadialFunction>(f)); }

/// Numeric profiles: L_ij h(R^2) evaluated at sample points of radius r.
inline InvarianceReport osp_invariance_check(const RadialProfile& h, const Signature& sig, std::span<const double> radii) {
    if (h.is_symbolic()) return osp_invariance_check(h.symbolic(), sig);
    InvarianceReport rep;
    for (double r : radii) {
        JetSuperPoly f = radial_superfunction_jet(h, sig, r * r, sig.n() + 1);
        // a fixed direction with all coordinates nonzero
        std::vector<double> x(sig.m());
        double norm = 0;
        for (int i = 0; i < sig.m(); ++i) norm += (i + 1.0) * (i + 1.0);
        for (int i = 0; i < sig.m(); ++i) x[i] = r * (i + 1.0) / std::sqrt(norm);
        int bad = 0;
        for (int i = 1; i <= sig.dim(); ++i)
            for (int j = 1; j <= sig.dim(); ++j) {
                double res = eval_bosons<Jet, double>(osp_generator(i, j, f), x).max_abs();
                rep.max_residual = std::max(rep.max_residual, res);
                if (res > 1e-12) ++bad;
            }
        rep.nonzero = std::max(rep.nonzero, bad);
    }
    return rep;
}

// ---- fundamental solutions --------------------------------------------------

/// gamma_{l,m} = 2^{2l+1} l! 2 pi^{m/2} / Gamma(m/2 - l - 1) for odd m.
inline ExactScalar gamma_odd(int l, int m) {
    if (m % 2 == 0) throw DomainError("gamma_{l,m} in closed form needs odd m");
    Rational c = Rational(Integer(1) << (2 * l + 1)) * factorial(l) * 2;
    return ExactScalar(c, m) * recip_gamma(half(m) - l - 1);
}

/// Bosonic nu^m_{2j}(u), u = r^2; unnormalized (gamma' = 1) for even m.
inline RadialFunction bosonic_fundamental(int m, int j) {
    Rational alpha = 2 * j - m;
    if (m % 2) return RadialFunction::pow_half(alpha) * RadialFunction(gamma_odd(j - 1, m).inverse());
    if (2 * j < m) return RadialFunction::pow_half(alpha);
    // -r^{2j-m} log r = -1/2 u^{(2j-m)/2} log u
    return RadialFunction::powlog_half(alpha) * RadialFunction(ExactScalar(Rational(-1, 2)));
}

struct FundamentalSolution {
    RadialFunction direct;     // R^{2l-M}/gamma_{l-1,M} or the log form
    RadialFunction prefactor;  // pi^n 4^n (n+l-1)!/(l-1)! nu^m_{2l+2n}
    bool normalized = false;   // exact constants (M odd)
    bool logarithmic = false;
};

inline FundamentalSolution fundamental_solution(const Signature& sig, int l) {
    int M = sig.M(), m = sig.m(), n = sig.n();
    if (l < 1) throw DomainError("fundamental solution order l must be >= 1");
    if (M <= 0 && M % 2 == 0) throw DomainError("no fundamental solution of this form for M in -2N");
    FundamentalSolution fs;
    Rational alpha = 2 * l - M;
    if (M % 2) {
        fs.direct = RadialFunction::pow_half(alpha) * RadialFunction(gamma_odd(l - 1, M).inverse());
        fs.normalized = true;
    } else if (2 * l < M) {
        fs.direct = RadialFunction::pow_half(alpha);
    } else {
        fs.direct = RadialFunction::powlog_half(alpha) * RadialFunction(ExactScalar(Rational(-1, 2)));
        fs.logarithmic = true;
    }
    Rational c = Rational(Integer(1) << (2 * n)) * factorial(n + l - 1) / factorial(l - 1);
    fs.prefactor = bosonic_fundamental(m, l + n) * RadialFunction(ExactScalar(c, 2 * n));
    return fs;
}

/// b = lambda a for a constant lambda, if any.
inline std::optional<ExactScalar> proportionality(const RadialFunction& a, const RadialFunction& b) {
    if (a.is_zero() || a.terms().size() != b.terms().size()) return std::nullopt;
    std::optional<ExactScalar> lambda;
    for (const auto& [k, ca] : a.terms()) {
        auto it = b.terms().find(k);
        if (it == b.terms().end() || !ca.is_single()) return std::nullopt;
        ExactScalar ratio = it->second * ca.inverse();
        if (lambda && *lambda != ratio) return std::nullopt;
        lambda = ratio;
    }
    return lambda;
}

/// Profile after applying nabla^2 to nu(R^2) l times: h -> 4u h'' + 2M h'.
inline RadialFunction iterated_radial_laplacian(const RadialFunction& h, const Signature& sig, int times) {
    RadialFunction r = h;
    for (int i = 0; i < times; ++i) r = radial_laplacian(r, sig);
    return r;
}

/// The delta-coefficient chain for nabla^{2l} R^{2l-M}, M odd:
/// c_top pi^{-n} gamma_{l-1,m} with c_top the coefficient of x`^{2n}/n! r^{2l-m}
/// in the expansion, against gamma_{l-1,M}.
struct NormalizationReport {
    ExactScalar chain;
    ExactScalar gamma;
    bool equal() const { return chain == gamma; }
};

inline NormalizationReport fundamental_normalization_check(const Signature& sig, int l) {
    int M = sig.M(), m = sig.m(), n = sig.n();
    if (M % 2 == 0) throw DomainError("normalization chain is exact only for odd M");
    RadialSuperPoly R = radial_power(sig, Rational(2 * l - M));
    // x`^{2n}/n! = x`_1 x`_2 ... x`_{2n}
    Monomial top;
    top.f = (FermiMask{1} << (2 * n)) - 1;
    RadialFunction c = R.coeff(top);
    auto it = c.terms().find(RadialFunction::Key{Rational(2 * l - m, 2), 0, 0});
    if (c.terms().size() != 1 || it == c.terms().end()) throw DomainError("unexpected top coefficient");
    NormalizationReport rep;
    rep.chain = it->second * ExactScalar::pi_pow(-2 * n) * gamma_odd(l - 1, m);
    rep.gamma = gamma_odd(l - 1, M);
    return rep;
}

/// Exact value of pizzetti(E nu_2 * h) / h(0). A radial factor acts as its value at
/// R^2 = 1 under pizzetti, so this is 2 nu_2'(1) sigma_M.
inline ExactScalar mean_value_kernel(const Signature& sig) {
    FundamentalSolution fs = fundamental_solution(sig, 1);
    if (!fs.normalized) throw DomainError("mean value kernel needs odd M");
    auto v = radial_euler(fs.direct).value_at_one();
    return *v * sphere_area(sig.M());
}

}  // namespace superharm
