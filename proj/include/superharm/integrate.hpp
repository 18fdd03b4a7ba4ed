#pragma once
// Integration on superspace: the Pizzetti supersphere integral, the superball
// integral of polynomials, Gaussian and radial integrals over R^{m|2n}, and
// the reduction of radial integrals to one dimension.

#include "superharm/grassmann.hpp"
#include "superharm/profile.hpp"
#include "superharm/quadrature.hpp"
#include "superharm/scalar.hpp"
#include "superharm/superpoly.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace superharm {

/// 2 pi^{M/2} / (4^k k! Gamma(k + M/2)).
inline ExactScalar pizzetti_weight(int M, int k) {
    Rational denom = Rational(Integer(1) << (2 * k)) * factorial(k);
    return recip_gamma(half(M) + k) * ExactScalar(Rational(2) / denom, M);
}

/// Supersphere integral of a polynomial on one copy.
template <class C>
C pizzetti(const BasicSuperPoly<C>& f) {
    if (f.copies() != 1) throw std::invalid_argument("pizzetti expects a single-copy polynomial");
    int M = f.sig().M();
    C total{};
    BasicSuperPoly<C> g = f;
    for (int k = 0; !g.is_zero(); ++k) {
        C c0 = constant_term(g);
        if (!superharm::is_zero(c0)) total += c0 * from_exact<C>(pizzetti_weight(M, k));
        g = laplacian(g);
    }
    return total;
}

/// Supersphere integral over the first copy of a two-copy polynomial; the
/// result is a polynomial in the second copy, returned on a single copy.
template <class C>
BasicSuperPoly<C> pizzetti_first_copy(const BasicSuperPoly<C>& f) {
    if (f.copies() != 2) throw std::invalid_argument("expected a two-copy polynomial");
    int M = f.sig().M();
    BasicSuperPoly<C> total(f.sig(), 2);
    BasicSuperPoly<C> g = f;
    for (int k = 0; !g.is_zero(); ++k) {
        total += at_origin(g, 0) * from_exact<C>(pizzetti_weight(M, k));
        g = laplacian(g, 0);
    }
    return to_copy(total, 1, 0, 1);
}

/// Superball integral of a polynomial through int_SB f_d = int_SS f_d / (M + d).
inline ExactScalar superball_poly(const SuperPolynomial& f) {
    int M = f.sig().M();
    ExactScalar total;
    for (int d : f.degrees()) {
        // strict even when the sphere integral of f_d vanishes: the ratio is 0/0
        if (M + d == 0)
            throw DomainError("superball integral undefined: component of degree " + std::to_string(d) + " has M + d = 0");
        total += pizzetti(f.homogeneous_part(d)) / Rational(M + d);
    }
    return total;
}

/// Green formula: componentwise int_SB nabla_k f and int_SS X_k f.
struct GreenReport {
    std::vector<ExactScalar> ball;
    std::vector<ExactScalar> sphere;
    bool equal() const { return ball == sphere; }
};

inline GreenReport greens_check(const SuperPolynomial& f) {
    GreenReport r;
    for (int k = 1; k <= f.sig().dim(); ++k) {
        r.ball.push_back(superball_poly(grad_lower(k, f)));
        r.sphere.push_back(pizzetti(mul_coordinate(k, f)));
    }
    return r;
}

/// int_{S^{m-1}} xi^alpha = 2 prod Gamma((alpha_i+1)/2) / Gamma((|alpha|+m)/2).
inline ExactScalar sphere_monomial_integral(const Monomial& mono, int m, int slot0 = 0) {
    ExactScalar r(2);
    int total = 0;
    for (int i = 0; i < m; ++i) {
        int a = mono.e[slot0 + i];
        if (a % 2) return {};
        r = r * gamma_exact(half(a + 1));
        total += a;
    }
    return r * recip_gamma(half(total + m));
}

/// a^{e/2} for rational a > 0 when it is rational.
inline std::optional<Rational> rational_half_power(const Rational& a, int twice) {
    if (a <= 0) throw DomainError("base must be positive");
    Rational base = a;
    if (twice % 2) {
        Integer num = numerator(a), den = denominator(a);
        Integer rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
        if (rn * rn != num || rd * rd != den) return std::nullopt;
        base = Rational(rn, rd);
    } else {
        twice /= 2;
    }
    int e = std::abs(twice);
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return twice < 0 ? Rational(1 / r) : r;
}

/// sum_e c_e a^{e/2}: Gaussian integrals with a rational width parameter a.
struct GaussianValue {
    Rational a;
    std::map<int, ExactScalar> parts;

    double to_double() const {
        long double acc = 0;
        for (const auto& [e, c] : parts)
            acc += c.to_double() * std::pow(static_cast<long double>(superharm::to_double(a)), e / 2.0L);
        return static_cast<double>(acc);
    }
    std::optional<ExactScalar> exact() const {
        ExactScalar r;
        for (const auto& [e, c] : parts) {
            auto p = rational_half_power(a, e);
            if (!p) return std::nullopt;
            r += c * *p;
        }
        return r;
    }
};

/// int_{R^{m|2n}} g(x) exp(-a R^2) for a polynomial g and rational a > 0,
/// where exp(-a R^2) = exp(-a r^2) sum_j (a x`^2)^j / j!.
inline GaussianValue integrate_superspace(const SuperPolynomial& g, const Rational& a) {
    if (a <= 0) throw DomainError("Gaussian integral needs a > 0");
    const Signature& sig = g.sig();
    SuperPolynomial fermi(sig);
    SuperPolynomial xsq(sig);
    for (int j = 1; j <= sig.n(); ++j) xsq += SuperPolynomial::fermion(sig, 2 * j - 1) * SuperPolynomial::fermion(sig, 2 * j);
    SuperPolynomial power = SuperPolynomial::constant(sig, ExactScalar(1));
    Rational apow = 1;
    for (int j = 0; j <= sig.n(); ++j) {
        fermi += power * ExactScalar(apow / factorial(j));
        power = power * xsq;
        apow *= a;
    }
    SuperPolynomial full = g * fermi;
    FermiMask top = (FermiMask{1} << (2 * sig.n())) - 1;
    GaussianValue r{a, {}};
    for (const auto& [mono, c] : full.terms()) {
        if (mono.f != top) continue;
        ExactScalar moment(1);
        int deg = 0;
        bool odd = false;
        for (int i = 0; i < sig.m(); ++i) {
            if (mono.e[i] % 2) odd = true;
            deg += mono.e[i];
            moment = moment * gamma_exact(half(mono.e[i] + 1));
        }
        if (odd) continue;
        ExactScalar val = c * moment * ExactScalar::pi_pow(-2 * sig.n());
        auto [it, fresh] = r.parts.try_emplace(-(deg + sig.m()), val);
        if (!fresh) it->second += val;
    }
    for (auto it = r.parts.begin(); it != r.parts.end();)
        it = it->second.is_zero() ? r.parts.erase(it) : std::next(it);
    return r;
}

namespace detail {

// (p/2)(p/2 - 1)...(p/2 - t + 1)
inline Rational falling_half(int p, int t) {
    Rational r = 1;
    for (int s = 0; s < t; ++s) r *= half(p) - s;
    return r;
}

// Terms (-1)^i x`^{2i}/i! * g tagged with the derivative order i of h.
inline std::vector<SuperPolynomial> radial_expansion_blocks(const SuperPolynomial& g) {
    const Signature& sig = g.sig();
    SuperPolynomial xsq(sig);
    for (int j = 1; j <= sig.n(); ++j) xsq += SuperPolynomial::fermion(sig, 2 * j - 1) * SuperPolynomial::fermion(sig, 2 * j);
    std::vector<SuperPolynomial> blocks;
    SuperPolynomial power = SuperPolynomial::constant(sig, ExactScalar(1));
    for (int i = 0; i <= sig.n(); ++i) {
        blocks.push_back(power * g * ExactScalar(Rational(i % 2 ? -1 : 1) / factorial(i)));
        power = power * xsq;
    }
    return blocks;
}

}  // namespace detail

/// Supersphere integral of h(R^2) g(x) for a polynomial g, by the spherical
/// coordinate formula
///   sum_j int_{S^{m-1}} int_B x`^{2j}/j! [(d/dr^2)^j r^{m-2} f]_{r=1}.
/// `derivs[k]` = h^{(k)}(1) for k <= 2n.
template <class C>
C supersphere_radial(const std::vector<C>& derivs, const SuperPolynomial& g) {
    const Signature& sig = g.sig();
    int n = sig.n(), m = sig.m();
    if (static_cast<int>(derivs.size()) < 2 * n + 1) throw DomainError("supersphere integral needs 2n derivatives of the profile");
    auto blocks = detail::radial_expansion_blocks(g);
    FermiMask top = (FermiMask{1} << (2 * n)) - 1;
    C total{};
    for (int i = 0; i <= n; ++i) {
        for (const auto& [mono, c] : blocks[i].terms()) {
            int fermi = std::popcount(mono.f);
            if (fermi % 2) continue;
            int j = n - fermi / 2;
            // sign of x`^{2j} x`_A against the top monomial
            GrassmannElement a(2 * n);
            a.add(mono.f, ExactScalar(1));
            ExactScalar top_coeff = (fermi_norm_pow(n, j) * a).coeff(top);
            if (top_coeff.is_zero()) continue;
            ExactScalar sphere = sphere_monomial_integral(mono, m);
            if (sphere.is_zero()) continue;
            int p = m - 2 + mono.boson_degree();
            C d{};
            for (int t = 0; t <= j; ++t) {
                Rational coef = Rational(binomial_ll(j, t)) * detail::falling_half(p, t);
                d += derivs[i + j - t] * from_exact<C>(ExactScalar(coef));
            }
            ExactScalar w = c * sphere * top_coeff * ExactScalar(1 / factorial(j), -2 * n);
            total += d * from_exact<C>(w);
        }
    }
    return total;
}

/// Profile derivatives h^{(k)}(1), k <= 2n, exactly when the symbolic form allows.
inline std::optional<std::vector<ExactScalar>> exact_derivatives_at_one(const RadialProfile& h, int count) {
    if (!h.is_symbolic()) return std::nullopt;
    std::vector<ExactScalar> out;
    RadialFunction f = h.symbolic();
    for (int k = 0; k < count; ++k) {
        auto v = f.value_at_one();
        if (!v) return std::nullopt;
        out.push_back(*v);
        f = f.d_du();
    }
    return out;
}

inline std::vector<double> numeric_derivatives(const RadialProfile& h, double u, int count) {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(h.derivative(k, u));
    return out;
}

/// int_{R^m} x^alpha q(r^2) dV = int_{S^{m-1}} xi^alpha * int_0^inf r^{|alpha|+m-1} q(r^2) dr.
inline double radial_moment(const std::function<double(double)>& q, int power, double tol = kDefaultQuadTol) {
    return integrate_1d([&](double r) { return r == 0 ? (power == 0 ? q(0) : 0.0) : std::pow(r, power) * q(r * r); }, 0.0,
                        std::numeric_limits<double>::infinity(), tol)
        .value;
}

/// int_{R^{m|2n}} h(R^2) g(x) by Berezin integration of the expansion and
/// bosonic radial quadrature.
inline double superspace_integral_radial(const RadialProfile& h, const SuperPolynomial& g, double tol = kDefaultQuadTol) {
    const Signature& sig = g.sig();
    h.require_order(sig.n());
    auto blocks = detail::radial_expansion_blocks(g);
    FermiMask top = (FermiMask{1} << (2 * sig.n())) - 1;
    long double total = 0;
    for (int i = 0; i <= sig.n(); ++i)
        for (const auto& [mono, c] : blocks[i].terms()) {
            if (mono.f != top) continue;
            ExactScalar sphere = sphere_monomial_integral(mono, sig.m());
            if (sphere.is_zero()) continue;
            double w = (c * sphere * ExactScalar::pi_pow(-2 * sig.n())).to_double();
            total += w * radial_moment([&](double u) { return h.derivative(i, u); }, mono.boson_degree() + sig.m() - 1, tol);
        }
    return static_cast<double>(total);
}

/// Dimensional continuation: int_{R^{m|2n}} h(R^2) g versus
/// sum_d int_SS g_d * int_0^inf v^{M-1+d} h(v^2) dv.
struct ContinuationReport {
    double lhs = 0;
    double rhs = 0;
};

inline ContinuationReport dimensional_continuation_check(const RadialProfile& h, const SuperPolynomial& g,
                                                         double tol = kDefaultQuadTol) {
    int M = g.sig().M();
    if (M <= 0) throw DomainError("dimensional continuation requires M > 0");
    if (h.decay() == Decay::none) throw DomainError("profile is not declared integrable");
    ContinuationReport r;
    r.lhs = superspace_integral_radial(h, g, tol);
    for (int d : g.degrees()) {
        double t = pizzetti(g.homogeneous_part(d)).to_double();
        if (t == 0) continue;
        r.rhs += t * radial_moment([&](double u) { return h(u); }, M - 1 + d, tol);
    }
    return r;
}

struct ReducedIntegral {
    std::string branch;
    std::optional<ExactScalar> exact;
    double value = 0;
};

/// Radial integral int_{R^{m|2n}} h(R^2) by its one-dimensional reduction:
///   M > 0           sigma_M int_0^inf v^{M-1} h(v^2) dv
///   M in -2N        (-pi)^{M/2} h^{(-M/2)}(0)
///   M in -2N - 1    2 (-pi)^{(M-1)/2} int_0^inf h^{((1-M)/2)}(r^2) dr
inline ReducedIntegral reduce_integral(const RadialProfile& h, const Signature& sig, double tol = kDefaultQuadTol) {
    int M = sig.M();
    h.require_order(sig.n());
    ReducedIntegral r;
    if (M > 0) {
        if (h.decay() == Decay::none) throw DomainError("profile is not declared integrable");
        r.branch = "M>0";
        ExactScalar sigma = sphere_area(M);
        if (h.is_symbolic()) {
            // exact for sums of c u^beta exp(-a u), a > 0
            ExactScalar acc;
            bool ok = true;
            for (const auto& [k, c] : h.symbolic().terms()) {
                if (k.q != 0 || k.a <= 0) {
                    ok = false;
                    break;
                }
                Rational s = k.beta + half(M);  // int v^{2s-1} e^{-a v^2} dv = Gamma(s) / (2 a^s)
                auto apow = rational_half_power(k.a, static_cast<int>(to_ll(-2 * s)));
                if (!apow || s <= 0) {
                    ok = false;
                    break;
                }
                acc += c * gamma_exact(s) * (*apow / 2);
            }
            if (ok) {
                r.exact = sigma * acc;
                r.value = r.exact->to_double();
                return r;
            }
        }
        r.value = sigma.to_double() * radial_moment([&](double u) { return h(u); }, M - 1, tol);
        return r;
    }
    if (M % 2 == 0) {
        int j = -M / 2;
        r.branch = "M in -2N";
        h.require_order(j);
        ExactScalar pref(Rational(j % 2 ? -1 : 1), M);  // (-pi)^{M/2}
        if (h.is_symbolic()) {
            if (auto v = h.symbolic().derivative(j).value_at_zero()) {
                r.exact = pref * *v;
                r.value = r.exact->to_double();
                return r;
            }
        }
        r.value = pref.to_double() * h.derivative(j, 0.0);
        return r;
    }
    int j = (1 - M) / 2;
    r.branch = "M in -2N-1";
    h.require_order(j);
    ExactScalar pref(Rational(((M - 1) / 2) % 2 ? -2 : 2), M - 1);  // 2 (-pi)^{(M-1)/2}
    double integral = integrate_1d([&](double x) { return h.derivative(j, x * x); }, 0.0,
                                   std::numeric_limits<double>::infinity(), tol)
                          .value;
    r.value = pref.to_double() * integral;
    return r;
}

/// Boundary behaviour r^{k-2} g(r) -> 0 as r -> 0, sampled at r = 10^{-1..-8}.
struct BoundarySamples {
    std::vector<double> r;
    std::vector<double> value;
    bool vanishes(double tol = 1e-6) const { return !value.empty() && std::abs(value.back()) < tol; }
};

inline BoundarySamples boundary_at_zero(const std::function<double(double)>& g, int k) {
    BoundarySamples s;
    for (int e = 1; e <= 8; ++e) {
        double r = std::pow(10.0, -e);
        s.r.push_back(r);
        s.value.push_back(std::pow(r, k - 2) * g(r));
    }
    return s;
}

}  // namespace superharm
