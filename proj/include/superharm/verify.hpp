#pragma once
// Property suites behind `verify-all` and the acceptance run. Every suite is
// deterministic for a fixed seed: random draws come from Rng, the order of
// suites and rows is fixed, and no timing enters the output.

#include "superharm/harmonics.hpp"
#include "superharm/integrate.hpp"
#include "superharm/radial.hpp"
#include "superharm/random.hpp"
#include "superharm/schrodinger.hpp"
#include "superharm/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace superharm {

struct CheckRow {
    std::string name;
    long long cases = 0;
    long long failures = 0;
    double max_residual = 0;  // numeric rows only
    double tol = 0;           // 0 marks an exact row
    bool pass() const { return cases > 0 && failures == 0; }

    void exact(bool ok) {
        ++cases;
        if (!ok) ++failures;
    }
    void numeric(double residual) {
        ++cases;
        if (!(residual <= tol)) ++failures;  // NaN fails
        if (std::isnan(residual) || residual > max_residual) max_residual = residual;
    }
};

struct SuiteResult {
    std::string name;
    std::vector<CheckRow> rows;
    bool pass() const {
        return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass(); });
    }
};

struct VerifyConfig {
    std::uint64_t seed = 7;
    int random_polys = 50;  // per signature, for the randomized identities
};

namespace detail {

using P = SuperPolynomial;
using RF = RadialFunction;

inline std::vector<Signature> verify_signatures() {
    std::vector<Signature> out;
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; n <= 2; ++n) out.emplace_back(m, n);
    return out;
}

inline bool fischer_defined(const Signature& s) { return !(s.M() <= 0 && s.M() % 2 == 0); }

inline CheckRow exact_row(std::string name) { return CheckRow{std::move(name)}; }
inline CheckRow numeric_row(std::string name, double tol) {
    CheckRow r{std::move(name)};
    r.tol = tol;
    return r;
}

inline std::vector<RF> verify_profiles() {
    return {RF::exp(1), RF::exp(Rational(1, 2)), RF::pow_half(3), RF::pow_half(-1), RF::powlog_half(2),
            RF::laguerre_exp(2, Rational(1, 2), Rational(1, 2)), RF::polynomial({1, -2, 0, 1})};
}

// Evenly spaced basis elements, at most `count` of them.
inline std::vector<P> spread(const std::vector<P>& basis, std::size_t count) {
    std::vector<P> out;
    std::size_t step = std::max<std::size_t>(1, basis.size() / count);
    for (std::size_t i = 0; i < basis.size() && out.size() < count; i += step) out.push_back(basis[i]);
    return out;
}

inline SuiteResult suite_operators(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 1000003 + 1);
    CheckRow lap = exact_row("laplacian of R^2 equals 2M"), sl2 = exact_row("sl2 commutators"),
             div = exact_row("divergence of position equals M + Euler"), lb = exact_row("Laplace-Beltrami as -1/2 sum L L"),
             comm = exact_row("Laplace-Beltrami commutes with L_ij");
    for (const auto& s : verify_signatures()) {
        P r2 = norm_squared<ExactScalar>(s);
        lap.exact(laplacian(r2) == P::constant(s, ExactScalar(2 * s.M())));
        ExactScalar half_M(half(s.M())), half_q(Rational(1, 2));
        auto lap2 = [&](const P& q) { return laplacian(q) * half_q; };
        auto rr2 = [&](const P& q) { return r2 * q * half_q; };
        auto h = [&](const P& q) { return euler(q) + q * half_M; };
        for (int t = 0; t < cfg.random_polys; ++t) {
            P p = random_poly(s, rng, 3);
            sl2.exact(lap2(rr2(p)) - rr2(lap2(p)) == h(p) && lap2(h(p)) - h(lap2(p)) == laplacian(p) &&
                      rr2(h(p)) - h(rr2(p)) == -(r2 * p));
            div.exact(divergence_of_position(p) == p * ExactScalar(s.M()) + euler(p));
            P beltrami = laplace_beltrami(p);
            lb.exact(beltrami == casimir_form(p));
            bool all = true;
            for (int i = 1; i <= s.dim() && all; ++i)
                for (int j = i; j <= s.dim() && all; ++j)
                    all = laplace_beltrami(osp_generator(i, j, p)) == osp_generator(i, j, beltrami);
            comm.exact(all);
        }
    }
    return {"operators", {lap, sl2, div, lb, comm}};
}

inline SuiteResult suite_pizzetti(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 1000003 + 2);
    CheckRow inv = exact_row("T(R^2 f) = T(f)"), ann = exact_row("T(L_ij f) = 0"), orth = exact_row("T(H_k H_l) = 0 for k != l <= 4");
    for (const auto& s : verify_signatures()) {
        P r2 = norm_squared<ExactScalar>(s);
        for (int t = 0; t < cfg.random_polys; ++t) {
            P p = random_poly(s, rng, 4);
            inv.exact(pizzetti(r2 * p) == pizzetti(p));
            bool all = true;
            for (int i = 1; i <= s.dim() && all; ++i)
                for (int j = 1; j <= s.dim() && all; ++j) all = pizzetti(osp_generator(i, j, p)).is_zero();
            ann.exact(all);
        }
        std::vector<std::vector<P>> bases;
        for (int k = 0; k <= 4; ++k) bases.push_back(spread(harmonic_basis(s, k), 3));
        for (int k = 0; k <= 4; ++k)
            for (int l = k + 1; l <= 4; ++l)
                for (const auto& a : bases[k])
                    for (const auto& b : bases[l]) orth.exact(pizzetti(a * b).is_zero());
    }
    return {"pizzetti", {inv, ann, orth}};
}

// Decomposition is linear, so the monomial basis of each degree covers all
// homogeneous polynomials.
inline SuiteResult suite_fischer(const VerifyConfig&) {
    CheckRow trip = exact_row("decompose then reconstruct, all monomials of degree <= 6"),
             blocks = exact_row("blocks are harmonic of the right degree"), book = exact_row("sum_j dim H_{k-2j} = dim P_k");
    for (const auto& s : verify_signatures()) {
        for (int k = 0; k <= 6; ++k) {
            long long total = 0;
            for (int j = 0; 2 * j <= k; ++j) total += dim_harmonics(s, k - 2 * j);
            book.exact(total == dim_polynomials(s, k));
        }
        if (!fischer_defined(s)) continue;
        for (int d = 0; d <= 6; ++d)
            for (const auto& mono : monomials_of_degree(s, d)) {
                P f(s);
                f.add(mono, ExactScalar(1));
                auto bl = fischer_decompose(f);
                trip.exact(fischer_reconstruct(bl, s) == f);
                bool ok = true;
                for (const auto& b : bl)
                    ok = ok && laplacian(b.harmonic).is_zero() && b.harmonic.is_homogeneous() &&
                         (b.harmonic.is_zero() || b.harmonic.max_degree() == d - 2 * b.j);
                blocks.exact(ok);
            }
    }
    return {"fischer", {trip, blocks, book}};
}

inline SuiteResult suite_dimensions(const VerifyConfig&) {
    CheckRow rank = exact_row("dim formula equals kernel rank, m <= 4, n <= 2, k <= 5"), ex = exact_row("examples (3|1): k=1 -> 5, k=2 -> 12");
    for (const auto& s : verify_signatures())
        for (int k = 0; k <= 5; ++k) rank.exact(static_cast<long long>(harmonic_basis(s, k).size()) == dim_harmonics(s, k));
    ex.exact(dim_harmonics(Signature(3, 1), 1) == 5);
    ex.exact(dim_harmonics(Signature(3, 1), 2) == 12);
    return {"dimensions", {rank, ex}};
}

inline SuiteResult suite_radial(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 1000003 + 5);
    CheckRow morph = exact_row("h(R^2) g(R^2) = (hg)(R^2)"), grad = exact_row("gradient of h(R^2)"),
             eul = exact_row("Euler operator on h(R^2)"), lap = exact_row("Laplacian of h(R^2)"),
             com = exact_row("[laplacian, h(R^2)] on polynomials"), sec = exact_row("Laplacian of h(R^2) H_k"),
             pw = exact_row("R^a R^b = R^(a+b)"), inv = exact_row("radial superfunctions are osp invariant");
    auto hs = verify_profiles();
    for (const auto& s : verify_signatures()) {
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i; j < hs.size(); ++j)
                morph.exact(radial_equal(radial_superfunction(hs[i], s) * radial_superfunction(hs[j], s), radial_superfunction(hs[i] * hs[j], s)));
        std::vector<std::pair<P, int>> harm = {{P::boson(s, 1), 1}};
        if (s.m() >= 2) harm.push_back({P::boson(s, 1) * P::boson(s, 2), 2});
        if (s.n() >= 1) harm.push_back({P::boson(s, 1) * P::fermion(s, 1), 2});
        for (const auto& h : hs) {
            RadialSuperPoly H = radial_superfunction(h, s);
            auto g = radial_gradient(h, s);
            RadialSuperPoly dh = radial_superfunction(g.derivative, s);
            bool ok = true;
            for (int k = 1; k <= s.dim() && ok; ++k) ok = radial_equal(grad_lower(k, H), lift<RF>(g.factor[k - 1]) * dh);
            grad.exact(ok);
            eul.exact(radial_equal(euler(H), radial_superfunction(radial_euler(h), s)));
            lap.exact(radial_equal(laplacian(H), radial_superfunction(radial_laplacian(h, s), s)));
            P p = random_poly(s, rng, 3);
            com.exact(radial_equal(laplacian(H * lift<RF>(p)) - H * lift<RF>(laplacian(p)), radial_laplacian_commutator(h, p)));
            for (const auto& [hk, k] : harm)
                sec.exact(radial_equal(laplacian(H * lift<RF>(hk)), radial_superfunction(radial_laplacian(h, s, k), s) * lift<RF>(hk)));
            inv.exact(osp_invariance_check(h, s).nonzero == 0);
        }
        const std::vector<Rational> exps = {Rational(1), Rational(-1, 2), Rational(3, 2), Rational(-3)};
        for (const auto& a : exps)
            for (const auto& b : exps) pw.exact(radial_equal(radial_power(s, a) * radial_power(s, b), radial_power(s, a + b)));
    }
    return {"radial", {morph, grad, eul, lap, com, sec, pw, inv}};
}

inline SuiteResult suite_reduce_integral(const VerifyConfig&) {
    CheckRow ex = exact_row("Gaussian gives pi^(M/2), exact branches"), num = numeric_row("Gaussian gives pi^(M/2), quadrature branch", 1e-10);
    RadialProfile gauss(RF::exp(1));
    for (auto [m, n] : {std::pair{3, 1}, {2, 1}, {1, 1}, {2, 2}, {1, 2}, {3, 2}}) {
        Signature s(m, n);
        auto r = reduce_integral(gauss, s);
        if (s.M() > 0 || s.M() % 2 == 0)
            ex.exact(r.exact.has_value() && *r.exact == ExactScalar::pi_pow(s.M()));
        else
            num.numeric(std::abs(r.value - std::pow(std::numbers::pi, s.M() / 2.0)));
    }
    return {"reduce-integral", {ex, num}};
}

inline SuiteResult suite_fundamental(const VerifyConfig&) {
    CheckRow odd = exact_row("l-fold Laplacian of nu_2l vanishes, M odd"), log = exact_row("l-fold Laplacian of nu_2l vanishes, M even with log"),
             chain = exact_row("normalization chain equals gamma, M odd"), ex = exact_row("example (3|1), l=1 -> -2");
    for (int m = 1; m <= 6; ++m)
        for (int n = 0; n <= 2; ++n) {
            Signature s(m, n);
            int M = s.M();
            if (M <= 0 && M % 2 == 0) continue;
            for (int l = 1; l <= 3; ++l) {
                auto fs = fundamental_solution(s, l);
                bool ok = iterated_radial_laplacian(fs.direct, s, l).is_zero() && !iterated_radial_laplacian(fs.direct, s, l - 1).is_zero();
                RadialSuperPoly lapl = radial_superfunction(fs.direct, s);
                for (int i = 0; i < l; ++i) lapl = laplacian(lapl);
                ok = ok && reduce_radial(lapl).is_zero();
                (M % 2 ? odd : log).exact(ok);
                if (M % 2) chain.exact(fundamental_normalization_check(s, l).equal());
            }
        }
    // M even needs the logarithmic branch to occur at all
    if (!fundamental_solution(Signature(4, 1), 1).logarithmic) ++log.failures;
    auto r = fundamental_normalization_check(Signature(3, 1), 1);
    ex.exact(r.chain == ExactScalar(-2) && r.equal());
    return {"fundamental", {odd, log, chain, ex}};
}

inline SuiteResult suite_mean_value(const VerifyConfig&) {
    CheckRow mv = exact_row("T(h) = sigma_M h(0) for harmonic basis, k <= 4"), deg = exact_row("degenerate signatures sigma_M = 0 covered");
    for (const auto& s : verify_signatures()) {
        for (int k = 0; k <= 4; ++k)
            for (const auto& h : harmonic_basis(s, k)) mv.exact(pizzetti(h) == sphere_area(s.M()) * constant_term(h));
        if (s.M() <= 0 && s.M() % 2 == 0) deg.exact(sphere_area(s.M()).is_zero() && pizzetti(P::constant(s, ExactScalar(1))).is_zero());
    }
    return {"mean-value", {mv, deg}};
}

// Keeps the homogeneous parts whose degree passes `keep`.
inline P filter_degrees(const P& p, const std::function<bool(int)>& keep) {
    P out(p.sig());
    for (int d : p.degrees())
        if (keep(d)) out += p.homogeneous_part(d);
    return out;
}

// Random g and even f with the components that would meet a ball integral
// at M + d = 0 removed, so every identity below is defined.
inline SuiteResult suite_green(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 1000003 + 9);
    CheckRow green = exact_row("ball integral of gradient equals sphere integral of x f"),
             lap = exact_row("ball integral of laplacian equals sphere integral of Euler"),
             grad = exact_row("ball integral of grad f . grad g");
    for (const auto& s : verify_signatures()) {
        int M = s.M();
        for (int t = 0; t < cfg.random_polys; ++t) {
            P g(s);
            do {
                g = filter_degrees(random_poly(s, rng, 4), [&](int d) { return M + d - 1 != 0 && M + d - 2 != 0; });
            } while (g.is_zero());
            auto gd = g.degrees();
            P fe = filter_degrees(random_poly(s, rng, 3).parity_part(false), [&](int e) {
                return std::none_of(gd.begin(), gd.end(), [&](int d) { return M + e + d - 2 == 0; });
            });
            green.exact(greens_check(g).equal());
            lap.exact(superball_poly(laplacian(g)) == pizzetti(euler(g)));
            P gg(s);
            for (int k = 1; k <= s.dim(); ++k) gg += grad_upper(k, fe) * grad_lower(k, g);
            grad.exact(superball_poly(gg) == pizzetti(fe * euler(g)) - superball_poly(fe * laplacian(g)));
        }
    }
    return {"green", {green, lap, grad}};
}

inline std::vector<Rational> unit_monomial(int k) {
    std::vector<Rational> p(k + 1, 0);
    p[k] = 1;
    return p;
}

inline SuiteResult suite_funk_hecke(const VerifyConfig&) {
    CheckRow mono = exact_row("monomial form equals direct Pizzetti, k <= 6, l <= 4"), alpha = numeric_row("quadrature alpha vs exact alpha (relative)", 1e-10),
             kern = numeric_row("exponential kernel value vs quadrature (relative)", 1e-8), zon = exact_row("zonal polynomials are invariant");
    for (const auto& s : verify_signatures()) {
        if (!fischer_defined(s)) continue;
        std::vector<P> powers{P::constant(s, ExactScalar(1), 2)};
        P xy = build_pairing<ExactScalar>(s);
        for (int k = 1; k <= 6; ++k) powers.push_back(powers.back() * xy);
        for (int l = 0; l <= 4; ++l) {
            auto basis = harmonic_basis(s, l);
            if (basis.empty()) continue;
            const P& h = basis[basis.size() / 2];
            P hx = to_copy(h, 0, 0, 2);
            for (int k = 0; k <= 6; ++k) mono.exact(funk_hecke_poly(s, unit_monomial(k), h) == pizzetti_first_copy(hx * powers[k]));
        }
    }
    const double rho = 0.7;
    for (int M : {2, 3, 4, 5})
        for (int l = 0; l <= 4; ++l)
            for (int k = 0; k <= 6; ++k) {
                auto got = funk_hecke_alpha_numeric(M, l, ZonalProfile::polynomial(unit_monomial(k)), rho, 0);
                double want = funk_hecke_alpha_monomial(M, l, k).to_double() * std::pow(rho, k);
                alpha.numeric(std::abs(got[0] - Complex(want)) / std::max(1.0, std::abs(want)));
            }
    for (int M : {2, 3, 4, 5})
        for (int k = 0; k <= 4; ++k)
            for (double v : {0.4, 1.3, 3.0})
                for (int sign : {1, -1}) {
                    auto a = funk_hecke_alpha_numeric(M, k, ZonalProfile::exp_i(v, sign), 0.8, 0);
                    Complex want = funk_hecke_exp_kernel(M, k, v, 0.8, sign);
                    kern.numeric(std::abs(a[0] - want) / std::max(1.0, std::abs(want)));
                }
    for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {1, 2}}) {
        Signature s(m, n);
        zon.exact(zonal_invariance_check(zonal_polynomial(s, {1, -2, Rational(1, 3), 4})).nonzero == 0);
    }
    return {"funk-hecke", {mono, alpha, kern, zon}};
}

inline SuiteResult suite_bochner_mehler(const VerifyConfig& cfg) {
    Rng rng(cfg.seed * 1000003 + 11);
    CheckRow hank = numeric_row("Laguerre functions are Hankel eigenfunctions, j <= 3", 1e-8),
             osc = exact_row("Clifford-Hermite oscillator eigenrelation"),
             mehler = numeric_row("Mehler Bessel form, (3|1), 10 random pairs, K = 40", 1e-8),
             hh = numeric_row("Hille-Hardy at the sample arguments", 1e-8);
    for (double nu : {0.5, 1.0, 1.5, 2.5})
        for (int j = 0; j <= 3; ++j) {
            RadialProfile psi(RF::laguerre_exp(j, Rational(static_cast<long long>(2 * nu), 2), Rational(1, 2)));
            for (double u : {0.3, 1.1, 2.4}) {
                double want = (j % 2 ? -1 : 1) * laguerre(j, nu, u * u) * std::exp(-u * u / 2);
                hank.numeric(std::abs(fourier_bessel({nu}, psi, u * u) - want));
            }
        }
    for (auto [m, n] : {std::pair{3, 1}, {2, 1}, {1, 1}, {3, 0}})
        for (int k = 0; k <= 2; ++k)
            for (const auto& h : spread(harmonic_basis(Signature(m, n), k), 2))
                for (int j = 0; j <= 3; ++j) {
                    auto rep = oscillator_check(clifford_hermite(Signature(m, n), j, h));
                    osc.exact(rep.ok());
                }
    Signature s(3, 1);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> x(3), y(3);
        for (auto& c : x) c = rng.real(-1, 1) / std::sqrt(3.0);
        for (auto& c : y) c = rng.real(-1, 1) / std::sqrt(3.0);
        mehler.numeric(mehler_bessel_check(s, x, y, 40, 1e-10, 1).residual);
    }
    hh.numeric(hille_hardy_check(3, 0, 0, 0, 60).residual);
    hh.numeric(hille_hardy_check(1, 2, 0, 0, 60).residual);
    hh.numeric(hille_hardy_check(3, 0, 1, 1, 60).residual);
    hh.numeric(hille_hardy_check(1, 2, 4, 0.25, 80).residual);
    return {"bochner-mehler", {hank, osc, mehler, hh}};
}

inline SuiteResult suite_spectra(const VerifyConfig&) {
    CheckRow osc = numeric_row("oscillator eigenvalues vs 2j+k+M/2, M in {1,3}, j,k <= 2", 1e-6),
             deg = exact_row("degeneracies equal dim H_k"), eig = exact_row("oscillator eigenpairs on the full superspace"),
             hyd = numeric_row("hydrogenic levels vs -1/(2(j+k+(M-1)/2)^2)", 1e-4);
    for (auto [m, n] : {std::pair{3, 1}, {1, 0}, {5, 1}, {3, 0}}) {
        Signature s(m, n);
        for (int k = 0; k <= 2; ++k) {
            auto ev = solve_numeric(reduce(s, oscillator_potential(), k), -1, 4.5 + k + s.M() / 2.0);
            for (int j = 0; j <= 2; ++j) osc.numeric(j < static_cast<int>(ev.size()) ? std::abs(ev[j].E - (2 * j + k + s.M() / 2.0)) : INFINITY);
        }
    }
    for (const auto& s : verify_signatures()) {
        for (const auto& e : oscillator_spectrum(s, 2, 4).entries) deg.exact(e.degeneracy == dim_harmonics(s, e.k) && e.degeneracy == static_cast<long long>(harmonic_basis(s, e.k).size()));
    }
    for (auto [m, n] : {std::pair{3, 1}, {2, 1}, {3, 0}})
        for (int k = 0; k <= 2; ++k) {
            Signature s(m, n);
            auto basis = harmonic_basis(s, k);
            if (basis.empty()) continue;
            for (int j = 0; j <= 2; ++j)
                eig.exact(eigenpair_check(reduce(s, oscillator_potential(), k), oscillator_eigenprofile(s, j, k), basis.front(),
                                          ExactScalar(Rational(2 * j + k) + half(s.M()))));
        }
    GridSpec g;
    g.box = true;
    g.r_max = 60;
    g.cells = 3000;
    auto ev = solve_numeric(reduce(Signature(3, 0), kepler_potential(), 0), -1, -0.05, g);
    for (int j = 0; j < 3; ++j) hyd.numeric(j < static_cast<int>(ev.size()) ? std::abs(ev[j].E - hydrogenic_energy(3, 0, j)) : INFINITY);
    auto sup = solve_numeric(reduce(Signature(5, 1), kepler_potential(), 1), -1, -0.05, g);
    hyd.numeric(sup.empty() ? INFINITY : std::abs(sup[0].E - hydrogenic_energy(3, 1, 0)));
    return {"spectra", {osc, deg, eig, hyd}};
}

}  // namespace detail

/// Suite names in output order, each with its runner.
inline const std::vector<std::pair<std::string, std::function<SuiteResult(const VerifyConfig&)>>>& verify_suites() {
    static const std::vector<std::pair<std::string, std::function<SuiteResult(const VerifyConfig&)>>> suites = {
        {"bochner-mehler", detail::suite_bochner_mehler}, {"dimensions", detail::suite_dimensions},
        {"fischer", detail::suite_fischer},               {"fundamental", detail::suite_fundamental},
        {"funk-hecke", detail::suite_funk_hecke},         {"green", detail::suite_green},
        {"mean-value", detail::suite_mean_value},         {"operators", detail::suite_operators},
        {"pizzetti", detail::suite_pizzetti},             {"radial", detail::suite_radial},
        {"reduce-integral", detail::suite_reduce_integral}, {"spectra", detail::suite_spectra},
    };
    return suites;
}

inline SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg = {}) {
    for (const auto& [n, fn] : verify_suites())
        if (n == name) return fn(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

inline std::vector<SuiteResult> verify_all(const VerifyConfig& cfg = {}) {
    std::vector<SuiteResult> out;
    for (const auto& [n, fn] : verify_suites()) out.push_back(fn(cfg));
    return out;
}

}  // namespace superharm
