#pragma once
// Zonal functions phi(<x,y>): the Funk-Hecke transform in exact and
// quadrature form, Hankel transforms and Bochner's relations, the super
// Clifford-Hermite functions and the Bessel / Laguerre forms of the Fourier
// kernel.

#include "superharm/grassmann.hpp"
#include "superharm/harmonics.hpp"
#include "superharm/integrate.hpp"
#include "superharm/profile.hpp"
#include "superharm/quadrature.hpp"
#include "superharm/radial.hpp"
#include "superharm/special.hpp"
#include "superharm/superpoly.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace superharm {

using Complex = std::complex<double>;
using ComplexGrassmann = BasicGrassmann<Complex>;

/// phi on [-a, a] with derivatives up to j_max; complex so exp(ivt) fits.
struct ZonalProfile {
    std::function<Complex(int, double)> eval;  // (j, t) -> phi^{(j)}(t)
    int j_max = 0;
    double a = std::numeric_limits<double>::infinity();
    std::string name;

    Complex operator()(int j, double t) const {
        if (j > j_max) throw DomainError("zonal profile '" + name + "' has derivatives only up to order " + std::to_string(j_max));
        if (std::abs(t) > a) throw DomainError("zonal profile '" + name + "' evaluated outside [-a, a]");
        return eval(j, t);
    }

    static ZonalProfile polynomial(std::vector<Rational> coeffs) {
        std::vector<double> c;
        for (const auto& q : coeffs) c.push_back(to_double(q));
        ZonalProfile z;
        z.j_max = 64;
        z.name = "polynomial";
        // Horner over k >= j: sum_k c_k k!/(k-j)! t^{k-j}
        z.eval = [c](int j, double t) {
            double s = 0;
            for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(j);) {
                double f = 1;
                for (int i = 0; i < j; ++i) f *= static_cast<double>(k - i);
                s = s * t + c[k] * f;
            }
            return Complex(s, 0);
        };
        return z;
    }

    /// exp(i v t), or exp(-i v t) with sign = -1.
    static ZonalProfile exp_i(double v, int sign = 1) {
        ZonalProfile z;
        z.j_max = 64;
        z.name = sign > 0 ? "exp(ivt)" : "exp(-ivt)";
        Complex w(0, sign * v);
        z.eval = [w](int j, double t) { return std::pow(w, j) * std::exp(w * t); };
        return z;
    }

    static ZonalProfile real(std::function<double(int, double)> f, int j_max, double a, std::string name) {
        ZonalProfile z;
        z.j_max = j_max;
        z.a = a;
        z.name = std::move(name);
        z.eval = [f = std::move(f)](int j, double t) { return Complex(f(j, t), 0); };
        return z;
    }
};

// ---- Funk-Hecke, exact --------------------------------------------------------

/// alpha_{M,l}[t^k] = k!/(k-l)! 2 pi^{(M-1)/2}/2^l Gamma((k-l+1)/2)/Gamma((M+k+l)/2),
/// zero when k < l or k + l is odd.
inline ExactScalar funk_hecke_alpha_monomial(int M, int l, int k) {
    if (l < 0 || k < 0) throw DomainError("degrees must be nonnegative");
    if (k < l || (k + l) % 2) return ExactScalar();
    Rational c = factorial(k) / factorial(k - l) * 2 / Rational(Integer(1) << l);
    return ExactScalar(c, M - 1) * gamma_exact(half(k - l + 1)) * recip_gamma(half(M + k + l));
}

namespace detail {

inline int harmonic_degree(const SuperPolynomial& h) {
    if (h.is_zero()) throw DomainError("harmonic must be nonzero");
    if (!h.is_homogeneous()) throw DomainError("harmonic must be homogeneous");
    if (!laplacian(h).is_zero()) throw DomainError("polynomial is not harmonic");
    return h.max_degree();
}

inline void require_fischer_range(int M) {
    if (M <= 0 && M % 2 == 0) throw DomainError("M in -2N is excluded");
}

}  // namespace detail

/// sum_k p_k alpha_{M,l}[t^k] R^{k-l} H_l as a polynomial in the variables of H_l.
inline SuperPolynomial funk_hecke_poly(const Signature& sig, const std::vector<Rational>& p, const SuperPolynomial& h) {
    detail::require_fischer_range(sig.M());
    int l = detail::harmonic_degree(h);
    SuperPolynomial r2 = norm_squared<ExactScalar>(sig);
    SuperPolynomial out(sig);
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        ExactScalar a = funk_hecke_alpha_monomial(sig.M(), l, static_cast<int>(k));
        if (a.is_zero()) continue;
        out += r2.pow((static_cast<int>(k) - l) / 2) * h * (a * p[k]);
    }
    return out;
}

inline SuperPolynomial zonal_polynomial(const Signature& sig, const std::vector<Rational>& p);

/// The same integral taken directly: Pizzetti over x of p(<x,y>) H_l(x).
inline SuperPolynomial funk_hecke_poly_direct(const Signature& sig, const std::vector<Rational>& p, const SuperPolynomial& h) {
    return pizzetti_first_copy(to_copy(h, 0, 0, 2) * zonal_polynomial(sig, p));
}

// ---- Funk-Hecke, quadrature -----------------------------------------------

/// d^i/ds^i alpha_{M,l}[phi](s) at s = rho^2 for i = 0..order, with
///   alpha(s) = sigma_{M-1} int_{-1}^1 phi(sqrt(s) t) P_l^M(t) (1-t^2)^{(M-3)/2} dt.
/// Integrated in theta with t = cos theta, which removes the endpoint
/// singularity of the weight for M = 2. Derivatives in s are taken under the
/// integral with d/ds = (1/(2 rho)) d/d rho, so rho must stay away from 0.
inline std::vector<Complex> funk_hecke_alpha_numeric(int M, int l, const ZonalProfile& phi, double rho, int order,
                                                     double tol = kDefaultQuadTol) {
    if (M <= 1) throw DomainError("the quadrature form of alpha needs M > 1");
    if (!(rho > 0)) throw DomainError("alpha quadrature needs rho > 0");
    if (rho > phi.a) throw DomainError("rho exceeds the domain of phi");
    if (order > phi.j_max) throw DomainError("phi is not smooth enough for this many derivatives");
    double sigma = sphere_area(M - 1).to_double();
    // terms c t^j rho^q phi^{(j)}(rho t)
    struct Term {
        double c;
        int j, q;
    };
    std::vector<Term> terms{{1.0, 0, 0}};
    std::vector<Complex> out;
    for (int i = 0; i <= order; ++i) {
        auto integrand = [&](double theta) {
            double t = std::cos(theta);
            double w = jacobi_P_M(l, M, t) * std::pow(std::sin(theta), M - 2);
            Complex s = 0;
            for (const auto& tm : terms) s += tm.c * std::pow(t, tm.j) * std::pow(rho, tm.q) * phi(tm.j, rho * t);
            return s * w;
        };
        out.push_back(sigma * integrate_1d_complex(integrand, 0.0, std::numbers::pi, tol));
        std::vector<Term> next;
        for (const auto& tm : terms) {
            if (tm.q != 0) next.push_back({tm.c * tm.q / 2.0, tm.j, tm.q - 2});
            next.push_back({tm.c / 2.0, tm.j + 1, tm.q - 1});
        }
        terms = std::move(next);
    }
    return out;
}

/// alpha_{M,k}[exp(i v t)](rho^2) = i^k (2 pi)^{M/2} (v rho)^{1-M/2} J_{M/2+k-1}(v rho).
inline Complex funk_hecke_exp_kernel(int M, int k, double v, double rho, int sign = 1) {
    double nu = M / 2.0 + k - 1;
    double z = v * rho;
    // (v rho)^{1-M/2} J_nu(v rho) = (v rho)^k g_nu((v rho)^2)
    double real = std::pow(2 * std::numbers::pi, M / 2.0) * std::pow(z, k) * bessel_kernel(nu, z * z);
    return std::pow(Complex(0, sign), k) * real;
}

namespace detail {

// d^i/ds^i of a(s) s^{-l/2} from the derivatives of a.
inline std::vector<Complex> divide_by_radius_power(const std::vector<Complex>& a, double s, int l) {
    std::vector<Complex> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Complex sum = 0;
        for (std::size_t c = 0; c <= i; ++c) {
            // d^c s^{-l/2} = (-l/2)(-l/2-1)...(-l/2-c+1) s^{-l/2-c}
            double fall = 1;
            for (std::size_t p = 0; p < c; ++p) fall *= -l / 2.0 - static_cast<double>(p);
            sum += static_cast<double>(binomial_ll(static_cast<long long>(i), static_cast<long long>(c))) * a[i - c] * fall *
                   std::pow(s, -l / 2.0 - static_cast<double>(c));
        }
        out[i] = sum;
    }
    return out;
}

// sum_j (-1)^j x`^{2j}/j! d_j with d_j the j-th derivative of a profile at r^2.
inline ComplexGrassmann radial_grassmann(const std::vector<Complex>& d, int n) {
    ComplexGrassmann out(2 * n);
    ComplexGrassmann power(2 * n, Complex(1));
    ComplexGrassmann sq = fermi_norm_sq<Complex>(n);
    double fact = 1;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) fact *= j;
        out += power * (d[j] * ((j % 2 ? -1.0 : 1.0) / fact));
        power = power * sq;
    }
    return out;
}

inline double squared_norm(std::span<const double> y) {
    double s = 0;
    for (double v : y) s += v * v;
    return s;
}

}  // namespace detail

/// int_{SS,x} phi(<x,y>) H_l(x) at a bosonic point y, as an element of the
/// Grassmann algebra of y: alpha(R_y^2) R_y^{-l} expanded as one radial
/// profile, times H_l(y).
inline ComplexGrassmann funk_hecke_apply(const Signature& sig, const ZonalProfile& phi, const SuperPolynomial& h,
                                         std::span<const double> y, double tol = kDefaultQuadTol) {
    int M = sig.M(), n = sig.n();
    if (M <= 1) throw DomainError("Funk-Hecke for general phi needs M > 1");
    int l = detail::harmonic_degree(h);
    if (phi.j_max < 2 * n) throw DomainError("phi needs 2n derivatives");
    double s = detail::squared_norm(y);
    auto alpha = funk_hecke_alpha_numeric(M, l, phi, std::sqrt(s), n, tol);
    auto beta = detail::divide_by_radius_power(alpha, s, l);
    return detail::radial_grassmann(beta, n) * eval_bosons<ExactScalar, Complex>(h, y);
}

// ---- Hankel transform --------------------------------------------------------

struct HankelSpec {
    double nu;
    double tol = 1e-10;
};

inline void check_hankel(const HankelSpec& spec) {
    if (!(spec.nu > -0.5)) throw DomainError("Hankel order must exceed -1/2");
}

/// H_nu[f](u) = int_0^inf f(r) J_nu(r u)/(r u)^nu r^{2 nu + 1} dr.
inline double hankel(const HankelSpec& spec, const std::function<double(double)>& f, double u) {
    check_hankel(spec);
    if (u < 0) throw DomainError("Hankel transform needs u >= 0");
    auto integrand = [&](double r) {
        if (r == 0) return 0.0;
        return f(r) * bessel_kernel(spec.nu, r * r * u * u) * std::pow(r, 2 * spec.nu + 1);
    };
    return integrate_1d(integrand, 0.0, std::numeric_limits<double>::infinity(), spec.tol * 1e-2).value;
}

/// d^p/ds^p F_nu[psi](s) with F_nu[psi](u^2) = H_nu[psi(r^2)](u). The kernel
/// g_nu(r^2 s) is differentiated in s: d^p g_nu = (-1/2)^p g_{nu+p}.
inline double fourier_bessel(const HankelSpec& spec, const RadialProfile& psi, double s, int p = 0) {
    check_hankel(spec);
    if (psi.decay() == Decay::none) throw DomainError("profile '" + psi.name() + "' does not decay; Hankel integral diverges");
    if (s < 0) throw DomainError("Fourier-Bessel transform needs s >= 0");
    auto integrand = [&](double r) {
        if (r == 0) return 0.0;
        double r2 = r * r;
        return psi(r2) * std::pow(r, 2 * spec.nu + 1 + 2 * p) * bessel_kernel_derivative(spec.nu, p, r2 * s);
    };
    return integrate_1d(integrand, 0.0, std::numeric_limits<double>::infinity(), spec.tol * 1e-2).value;
}

// ---- Clifford-Hermite functions ----------------------------------------------

struct CliffordHermite {
    Signature sig;
    int j = 0, k = 0;
    RadialFunction radial;      // 2^{2j} j! L_j^{M/2+k-1}(u) exp(-u/2)
    SuperPolynomial harmonic;   // H_k

    Rational eigenvalue() const { return Rational(2 * j + k) + half(sig.M()); }
    RadialSuperPoly assemble() const { return radial_superfunction(radial, sig) * lift<RadialFunction>(harmonic); }
};

inline CliffordHermite clifford_hermite(const Signature& sig, int j, const SuperPolynomial& h) {
    if (j < 0) throw DomainError("Laguerre degree must be nonnegative");
    int k = detail::harmonic_degree(h);
    CliffordHermite c{sig, j, k, {}, h};
    Rational scale = Rational(Integer(1) << (2 * j)) * factorial(j);
    c.radial = RadialFunction::laguerre_exp(j, half(sig.M()) + k - 1, Rational(1, 2)) * RadialFunction(ExactScalar(scale));
    return c;
}

/// Profile of (1/2)(R^2 - nabla^2) acting on h(R^2) H_k.
inline RadialFunction oscillator_profile(const RadialFunction& h, const Signature& sig, int k) {
    return (h.times_u() - radial_laplacian(h, sig, k)) * RadialFunction(ExactScalar(Rational(1, 2)));
}

struct OscillatorReport {
    bool profile_route = false;  // via the radial Laplacian rule
    bool full_route = false;     // nabla^2 on the assembled superfunction
    bool ok() const { return profile_route && full_route; }
};

inline OscillatorReport oscillator_check(const CliffordHermite& c) {
    OscillatorReport rep;
    ExactScalar e(c.eigenvalue());
    rep.profile_route = (oscillator_profile(c.radial, c.sig, c.k) - c.radial * RadialFunction(e)).is_zero();
    RadialSuperPoly f = c.assemble();
    RadialSuperPoly r2 = lift<RadialFunction>(norm_squared<ExactScalar>(c.sig));
    RadialSuperPoly lhs = (r2 * f - laplacian(f)) * RadialFunction(ExactScalar(Rational(1, 2)));
    rep.full_route = radial_equal(lhs, f * RadialFunction(e));
    return rep;
}

// ---- Bochner's relations ---------------------------------------------------

/// (+-i)^k H_k(y) F_{k+M/2-1}[psi](R_y^2) at a bosonic point y.
inline ComplexGrassmann bochner_transform(const Signature& sig, const SuperPolynomial& h, const RadialProfile& psi,
                                          std::span<const double> y, int sign = 1, double tol = 1e-10) {
    int M = sig.M(), n = sig.n();
    if (M <= 1) throw DomainError("Bochner's relations need M > 1");
    int k = detail::harmonic_degree(h);
    HankelSpec spec{k + M / 2.0 - 1, tol};
    double s = detail::squared_norm(y);
    std::vector<Complex> d;
    for (int p = 0; p <= n; ++p) d.push_back(fourier_bessel(spec, psi, s, p));
    Complex phase = std::pow(Complex(0, sign), k);
    return detail::radial_grassmann(d, n) * eval_bosons<ExactScalar, Complex>(h, y) * phase;
}

/// The same transform through polar integration: (2 pi)^{-M/2} int_0^inf
/// v^{M+k-1} psi(v^2) [int_SS exp(+-iv<x,y>) H_k(x)] dv, the inner integral
/// taken by the Gegenbauer quadrature of alpha instead of the Bessel closed form.
inline ComplexGrassmann bochner_via_funk_hecke(const Signature& sig, const SuperPolynomial& h, const RadialProfile& psi,
                                               std::span<const double> y, int sign = 1, double tol = 1e-10) {
    int M = sig.M(), n = sig.n();
    if (M <= 1) throw DomainError("Bochner's relations need M > 1");
    if (psi.decay() == Decay::none) throw DomainError("profile '" + psi.name() + "' does not decay");
    int k = detail::harmonic_degree(h);
    double s = detail::squared_norm(y);
    double rho = std::sqrt(s);
    // all derivative orders share the inner quadrature at each node v
    std::map<double, std::vector<Complex>> cache;
    auto beta_at = [&](double v) -> const std::vector<Complex>& {
        auto it = cache.find(v);
        if (it != cache.end()) return it->second;
        auto alpha = funk_hecke_alpha_numeric(M, k, ZonalProfile::exp_i(v, sign), rho, n, tol * 1e-2);
        return cache.emplace(v, detail::divide_by_radius_power(alpha, s, k)).first->second;
    };
    std::vector<Complex> d(n + 1, 0.0);
    for (int p = 0; p <= n; ++p) {
        auto integrand = [&](double v) -> Complex {
            if (v == 0) return 0.0;
            double w = std::pow(v, M + k - 1) * psi(v * v);
            // far nodes of the mapped half-line: skip the oscillatory inner integral
            if (w == 0 || !std::isfinite(v * v)) return 0.0;
            return w * beta_at(v)[p];
        };
        d[p] = std::pow(2 * std::numbers::pi, -M / 2.0) *
               integrate_1d_complex(integrand, 0.0, std::numeric_limits<double>::infinity(), tol * 1e-2);
    }
    return detail::radial_grassmann(d, n) * eval_bosons<ExactScalar, Complex>(h, y);
}

// ---- reproducing kernels at numeric points ---------------------------------------

/// F_0..F_K at bosonic points as Grassmann elements, from the homogeneous
/// Gegenbauer recurrence in P = <x,y> and Q = R_x^2 R_y^2:
///   k E_k = 2(k-1+lambda) P E_{k-1} - (k+2lambda-2) Q E_{k-2},  F_k = (k+lambda) E_k / sigma_M,
/// with E_1 = 2P and lambda E_0 = 1, so M = 2 gives the Chebyshev limit.
inline std::vector<ComplexGrassmann> reproducing_kernels_at(int M, int K, const ComplexGrassmann& P, const ComplexGrassmann& Q,
                                                            bool allow_m2_limit = true) {
    detail::require_fischer_range(M);
    if (M == 2 && !allow_m2_limit) throw DomainError("singular normalization (M-2) at M = 2");
    double lambda = (M - 2) / 2.0;
    double inv_sigma = 1.0 / sphere_area(M).to_double();
    int gens = P.generators();
    std::vector<ComplexGrassmann> F;
    F.push_back(ComplexGrassmann(gens, Complex(inv_sigma)));
    if (K == 0) return F;
    ComplexGrassmann prev(gens, Complex(1));  // stands for lambda E_0
    ComplexGrassmann cur = P * Complex(2);
    F.push_back(cur * Complex((1 + lambda) * inv_sigma));
    for (int k = 2; k <= K; ++k) {
        double b = k == 2 ? 2.0 : (k + 2 * lambda - 2);
        ComplexGrassmann next = (P * cur * Complex(2 * (k - 1 + lambda)) - Q * prev * Complex(b)) * Complex(1.0 / k);
        prev = cur;
        cur = next;
        F.push_back(cur * Complex((k + lambda) * inv_sigma));
    }
    return F;
}

/// Grassmann images of <x,y>, R_x^2, R_y^2 at a bosonic point (x, y) in Lambda_{4n}.
struct PairPoint {
    ComplexGrassmann pairing, rx2, ry2;
};

inline PairPoint pair_point(const Signature& sig, std::span<const double> x, std::span<const double> y) {
    if (static_cast<int>(x.size()) != sig.m() || static_cast<int>(y.size()) != sig.m())
        throw std::invalid_argument("points must have m bosonic coordinates");
    std::vector<double> xy(x.begin(), x.end());
    xy.insert(xy.end(), y.begin(), y.end());
    auto ev = [&](const SuperPolynomial& p) { return eval_bosons<ExactScalar, Complex>(p, xy); };
    return {ev(build_pairing<ExactScalar>(sig)), ev(norm_squared<ExactScalar>(sig, 0, 2)), ev(norm_squared<ExactScalar>(sig, 1, 2))};
}

// ---- Mehler formula, Bessel form -------------------------------------------------

struct MehlerReport {
    double residual = 0;
    int terms = 0;          // highest k used
    bool converged = false; // stopping rule met before the cap
};

/// (2 pi)^{-M/2} exp(+-i<x,y>) against sum_k (+-i)^k F_k g_{M/2+k-1}(R_x^2 R_y^2),
/// g_nu(z) = z^{-nu/2} J_nu(sqrt z). Summation stops once three successive
/// terms fall below tol/10, or at k = K.
inline MehlerReport mehler_bessel_check(const Signature& sig, std::span<const double> x, std::span<const double> y, int K,
                                        double tol = 1e-10, int sign = 1, bool allow_m2_limit = true) {
    int M = sig.M();
    detail::require_fischer_range(M);
    if (K < 0 || K > 60) throw DomainError("truncation must lie in [0, 60]");
    PairPoint pt = pair_point(sig, x, y);
    ComplexGrassmann Q = pt.rx2 * pt.ry2;
    int nil_order = 2 * sig.n() + 1;

    double b = pt.pairing.body().real();
    std::vector<Complex> ed;
    for (int j = 0; j <= nil_order; ++j) ed.push_back(std::pow(Complex(0, sign), j) * std::exp(Complex(0, sign * b)));
    ComplexGrassmann lhs = compose(std::span<const Complex>(ed), pt.pairing) * Complex(std::pow(2 * std::numbers::pi, -M / 2.0));

    auto F = reproducing_kernels_at(M, K, pt.pairing, Q, allow_m2_limit);
    ComplexGrassmann rhs(pt.pairing.generators());
    double z = Q.body().real();
    MehlerReport rep;
    int small = 0;
    for (int k = 0; k <= K; ++k) {
        double nu = M / 2.0 + k - 1;
        std::vector<Complex> gd;
        for (int p = 0; p <= nil_order; ++p) gd.push_back(bessel_kernel_derivative(nu, p, z));
        ComplexGrassmann term = F[k] * compose(std::span<const Complex>(gd), Q) * std::pow(Complex(0, sign), k);
        rhs += term;
        rep.terms = k;
        small = term.max_abs() < tol / 10 ? small + 1 : 0;
        if (small >= 3) {
            rep.converged = true;
            break;
        }
    }
    rep.residual = (lhs - rhs).max_abs();
    return rep;
}

// ---- Hille-Hardy and the Laguerre form -------------------------------------------

namespace detail {

inline long double laguerre_ld(int p, long double q, long double u) {
    if (p < 0) return 0;
    long double prev = 1, cur = 1 + q - u;
    if (p == 0) return prev;
    for (int k = 1; k < p; ++k) {
        long double next = ((2 * k + 1 + q - u) * cur - (k + q) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

// d^a/du^a [L_j^q(u) e^{-u/2}] using (L_j^q)' = -L_{j-1}^{q+1}.
inline long double laguerre_exp_derivative(int j, long double q, int a, long double u) {
    long double s = 0;
    for (int c = 0; c <= a; ++c) {
        long double term = static_cast<long double>(binomial_ll(a, c)) * std::pow(-0.5L, a - c) * (c % 2 ? -1.0L : 1.0L) *
                           laguerre_ld(j - c, q + c, u);
        s += term;
    }
    return s * std::exp(-u / 2);
}

// Euler (E,1) sum: partial sums averaged pairwise until one value remains.
inline long double euler_sum(const std::vector<long double>& terms) {
    std::vector<long double> s;
    long double acc = 0;
    for (long double t : terms) s.push_back(acc += t);
    if (s.empty()) return 0;
    while (s.size() > 1) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = (s[i] + s[i + 1]) / 2;
        s.pop_back();
    }
    return s[0];
}

inline void require_laguerre_order(double nu) {
    if (nu + 1 <= 0 && std::abs(nu - std::round(nu)) < 1e-12) throw DomainError("Gamma(j+nu+1) has poles for this order");
}

}  // namespace detail

/// d^a/du1^a d^b/du2^b of sum_j 2 j! (-1)^j / Gamma(j+nu+1) L_j^nu(u1) L_j^nu(u2) e^{-(u1+u2)/2}
/// over j < J. The series sits on its circle of convergence, so it is summed
/// by Euler averaging of the partial sums.
inline double hille_hardy_series(double nu, double u1, double u2, int J, int a = 0, int b = 0) {
    detail::require_laguerre_order(nu);
    if (J < 1) throw DomainError("truncation must be positive");
    std::vector<long double> terms;
    long double w = 2.0L / std::tgamma(static_cast<long double>(nu) + 1);
    for (int j = 0; j < J; ++j) {
        if (j > 0) w *= -static_cast<long double>(j) / (j + nu);
        terms.push_back(w * detail::laguerre_exp_derivative(j, nu, a, u1) * detail::laguerre_exp_derivative(j, nu, b, u2));
    }
    return static_cast<double>(detail::euler_sum(terms));
}

struct HilleHardyReport {
    double lhs = 0, rhs = 0, residual = 0;
};

/// g_nu(u1 u2) against the summed Laguerre series, nu = M/2 + k - 1.
inline HilleHardyReport hille_hardy_check(int M, int k, double u1, double u2, int J) {
    if (u1 < 0 || u2 < 0) throw DomainError("Hille-Hardy arguments must be nonnegative");
    double nu = M / 2.0 + k - 1;
    HilleHardyReport r;
    r.lhs = bessel_kernel(nu, u1 * u2);
    r.rhs = hille_hardy_series(nu, u1, u2, J);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

/// The Laguerre form of the kernel: sum_{k<=K} (+-i)^k F_k HH_k(R_x^2, R_y^2),
/// compared with the Bessel form truncated at the same K.
inline double mehler_laguerre_vs_bessel(const Signature& sig, std::span<const double> x, std::span<const double> y, int K, int J,
                                        int sign = 1) {
    int M = sig.M(), n = sig.n();
    detail::require_fischer_range(M);
    PairPoint pt = pair_point(sig, x, y);
    ComplexGrassmann Q = pt.rx2 * pt.ry2;
    auto F = reproducing_kernels_at(M, K, pt.pairing, Q);
    int gens = pt.pairing.generators();
    double u1 = pt.rx2.body().real(), u2 = pt.ry2.body().real(), z = Q.body().real();
    ComplexGrassmann nx = pt.rx2.nilpotent(), ny = pt.ry2.nilpotent();
    ComplexGrassmann laguerre(gens), bessel(gens);
    for (int k = 0; k <= K; ++k) {
        double nu = M / 2.0 + k - 1;
        Complex phase = std::pow(Complex(0, sign), k);
        // two-variable Taylor composition in the nilpotent parts of R_x^2, R_y^2
        ComplexGrassmann hh(gens);
        ComplexGrassmann px(gens, Complex(1));
        double fa = 1;
        for (int a = 0; a <= n; ++a) {
            if (a > 0) fa *= a;
            ComplexGrassmann py(gens, Complex(1));
            double fb = 1;
            for (int b = 0; b <= n; ++b) {
                if (b > 0) fb *= b;
                hh += px * py * Complex(hille_hardy_series(nu, u1, u2, J, a, b) / (fa * fb));
                py = py * ny;
            }
            px = px * nx;
        }
        laguerre += F[k] * hh * phase;
        std::vector<Complex> gd;
        for (int p = 0; p <= 2 * n + 1; ++p) gd.push_back(bessel_kernel_derivative(nu, p, z));
        bessel += F[k] * compose(std::span<const Complex>(gd), Q) * phase;
    }
    return (laguerre - bessel).max_abs();
}

// ---- zonal invariance -----------------------------------------------------------

/// Residuals of X_i d/dX^j - (-1)^{[i][j]} Y_j d/dY^i on a two-copy polynomial.
inline InvarianceReport zonal_invariance_check(const SuperPolynomial& f) {
    if (f.copies() != 2) throw std::invalid_argument("zonal check needs a two-copy polynomial");
    const Signature& sig = f.sig();
    InvarianceReport rep;
    rep.exact = true;
    auto parity = [&](int i) { return i > sig.m() ? 1 : 0; };
    for (int i = 1; i <= sig.dim(); ++i)
        for (int j = 1; j <= sig.dim(); ++j) {
            SuperPolynomial a = SuperPolynomial::coordinate(sig, i, 0, 2) * grad_lower(j, f, 0);
            SuperPolynomial b = SuperPolynomial::coordinate(sig, j, 1, 2) * grad_lower(i, f, 1);
            SuperPolynomial r = parity(i) && parity(j) ? a + b : a - b;
            if (!r.is_zero()) ++rep.nonzero;
        }
    rep.max_residual = rep.nonzero ? 1 : 0;
    return rep;
}

/// p(<x,y>) as a two-copy polynomial.
inline SuperPolynomial zonal_polynomial(const Signature& sig, const std::vector<Rational>& p) {
    SuperPolynomial xy = build_pairing<ExactScalar>(sig);
    SuperPolynomial out(sig, 2);
    SuperPolynomial power = SuperPolynomial::constant(sig, ExactScalar(1), 2);
    for (const auto& c : p) {
        if (c != 0) out += power * ExactScalar(c);
        power = power * xy;
    }
    return out;
}

}  // namespace superharm
