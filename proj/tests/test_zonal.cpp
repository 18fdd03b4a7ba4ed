#include "superharm/harmonics.hpp"
#include "superharm/random.hpp"
#include "superharm/serialize.hpp"
#include "superharm/zonal.hpp"

#include <boost/math/special_functions/hermite.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace superharm;

namespace {

using P = SuperPolynomial;
using RF = RadialFunction;

std::vector<Rational> monomial(int k) {
    std::vector<Rational> p(k + 1, 0);
    p[k] = 1;
    return p;
}

double falling(double a, int i) {
    double r = 1;
    for (int p = 0; p < i; ++p) r *= a - p;
    return r;
}

// Grassmann element of a single-copy polynomial at a bosonic point.
ComplexGrassmann at(const P& p, std::span<const double> y) { return eval_bosons<ExactScalar, Complex>(p, y); }

double diff(const ComplexGrassmann& a, const ComplexGrassmann& b) { return (a - b).max_abs(); }

// Taylor coefficients of exp(i v t) split into real and imaginary parts.
std::pair<std::vector<Rational>, std::vector<Rational>> exp_taylor(const Rational& v, int degree) {
    std::vector<Rational> re(degree + 1, 0), im(degree + 1, 0);
    Rational c = 1;
    for (int k = 0; k <= degree; ++k) {
        if (k > 0) c = c * v / k;
        switch (k % 4) {
            case 0: re[k] = c; break;
            case 1: im[k] = c; break;
            case 2: re[k] = -c; break;
            case 3: im[k] = -c; break;
        }
    }
    return {re, im};
}

}  // namespace

TEST(FunkHecke, MonomialAlphaExamples) {
    for (int M : {-3, -1, 1, 2, 3, 4, 5, 7}) {
        EXPECT_EQ(funk_hecke_alpha_monomial(M, 0, 0), sphere_area(M)) << M;
        EXPECT_EQ(funk_hecke_alpha_monomial(M, 1, 1), sphere_area(M) * ExactScalar(Rational(1) / M)) << M;
        EXPECT_TRUE(funk_hecke_alpha_monomial(M, 0, 1).is_zero());
        EXPECT_TRUE(funk_hecke_alpha_monomial(M, 2, 1).is_zero());
        EXPECT_TRUE(funk_hecke_alpha_monomial(M, 3, 5).is_zero() == false);
    }
}

TEST(FunkHecke, PolynomialExamples) {
    Signature s(3, 1);
    int M = s.M();
    EXPECT_EQ(funk_hecke_poly(s, {1}, P::constant(s, ExactScalar(1))), P::constant(s, sphere_area(M)));
    EXPECT_EQ(funk_hecke_poly(s, {0, 1}, P::boson(s, 1)), P::boson(s, 1) * (sphere_area(M) * ExactScalar(Rational(1) / M)));
    P h2 = P::boson(s, 1) * P::boson(s, 2);
    ASSERT_TRUE(laplacian(h2).is_zero());
    EXPECT_TRUE(funk_hecke_poly(s, {0, 1}, h2).is_zero());
    EXPECT_THROW(funk_hecke_poly(s, {1}, P::boson(s, 1) * P::boson(s, 1)), DomainError);
    EXPECT_THROW(funk_hecke_poly(Signature(2, 1), {1}, P::constant(Signature(2, 1), ExactScalar(1))), DomainError);
}

TEST(FunkHecke, PolynomialFormMatchesDirectPizzetti) {
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; n <= 2; ++n) {
            Signature s(m, n);
            if (s.M() <= 0 && s.M() % 2 == 0) continue;
            // powers of <x,y> shared across harmonics
            std::vector<P> powers{P::constant(s, ExactScalar(1), 2)};
            P xy = build_pairing<ExactScalar>(s);
            for (int k = 1; k <= 6; ++k) powers.push_back(powers.back() * xy);
            for (int l = 0; l <= 4; ++l) {
                auto basis = harmonic_basis(s, l);
                if (basis.empty()) continue;
                const P& h = basis[basis.size() / 2];
                P hx = to_copy(h, 0, 0, 2);
                for (int k = 0; k <= 6; ++k) {
                    P direct = pizzetti_first_copy(hx * powers[k]);
                    EXPECT_EQ(funk_hecke_poly(s, monomial(k), h), direct) << m << "|" << n << " l=" << l << " k=" << k;
                }
            }
        }
    // a mixed polynomial in t through the library's own direct route
    Signature s(3, 1);
    for (const auto& h : harmonic_basis(s, 2)) {
        std::vector<Rational> p = {Rational(1, 3), -2, 5, 0, Rational(7, 2)};
        EXPECT_EQ(funk_hecke_poly(s, p, h), funk_hecke_poly_direct(s, p, h));
    }
}

TEST(FunkHecke, QuadratureAlphaMatchesMonomialForm) {
    const double rho = 0.7, s = rho * rho;
    for (int M : {2, 3, 4, 5})
        for (int l = 0; l <= 4; ++l)
            for (int k = 0; k <= 6; ++k) {
                auto got = funk_hecke_alpha_numeric(M, l, ZonalProfile::polynomial(monomial(k)), rho, 2);
                double a = funk_hecke_alpha_monomial(M, l, k).to_double();
                for (int i = 0; i <= 2; ++i) {
                    // alpha(s) = a s^{k/2}
                    double want = a * falling(k / 2.0, i) * std::pow(s, k / 2.0 - i);
                    EXPECT_NEAR(got[i].real(), want, 1e-10 * std::max(1.0, std::abs(want))) << M << " l=" << l << " k=" << k << " i=" << i;
                    EXPECT_NEAR(got[i].imag(), 0.0, 1e-12);
                }
            }
}

TEST(FunkHecke, QuadratureAlphaExamples) {
    for (int M : {2, 3, 5}) {
        auto one = funk_hecke_alpha_numeric(M, 0, ZonalProfile::polynomial({1}), 0.5, 2);
        EXPECT_NEAR(one[0].real(), sphere_area(M).to_double(), 1e-12);
        EXPECT_NEAR(std::abs(one[1]), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(one[2]), 0.0, 1e-12);
        auto lin = funk_hecke_alpha_numeric(M, 1, ZonalProfile::polynomial({0, 1}), 1.0, 0);
        EXPECT_NEAR(lin[0].real(), sphere_area(M).to_double() / M, 1e-12);
    }
    EXPECT_THROW(funk_hecke_alpha_numeric(1, 0, ZonalProfile::polynomial({1}), 0.5, 0), DomainError);
    EXPECT_THROW(funk_hecke_alpha_numeric(3, 0, ZonalProfile::polynomial({1}), 0.0, 0), DomainError);
}

TEST(FunkHecke, ExponentialKernelMatchesQuadrature) {
    for (int M : {2, 3, 4, 5})
        for (int k = 0; k <= 4; ++k)
            for (double v : {0.4, 1.3, 3.0})
                for (int sign : {1, -1}) {
                    double rho = 0.8;
                    auto alpha = funk_hecke_alpha_numeric(M, k, ZonalProfile::exp_i(v, sign), rho, 0);
                    Complex want = funk_hecke_exp_kernel(M, k, v, rho, sign);
                    EXPECT_LT(std::abs(alpha[0] - want), 1e-8 * std::max(1.0, std::abs(want))) << M << " k=" << k << " v=" << v;
                }
}

TEST(FunkHecke, ApplyMatchesPolynomialForm) {
    std::vector<double> y = {0.3, -0.5, 0.4};
    for (auto [m, n] : {std::pair{3, 1}, {3, 0}, {2, 1}, {4, 1}}) {
        Signature s(m, n);
        if (s.M() <= 1) {
            EXPECT_THROW(funk_hecke_apply(s, ZonalProfile::polynomial({1}), P::constant(s, ExactScalar(1)), std::span(y).first(m)),
                         DomainError);
            continue;
        }
        std::vector<Rational> p = {1, Rational(-1, 2), 3, Rational(1, 4), -1};
        for (int l = 0; l <= 3; ++l)
            for (const auto& h : harmonic_basis(s, l)) {
                auto pt = std::span<const double>(y).first(m);
                ComplexGrassmann got = funk_hecke_apply(s, ZonalProfile::polynomial(p), h, pt);
                ComplexGrassmann want = at(funk_hecke_poly(s, p, h), pt);
                EXPECT_LT(diff(got, want), 1e-10) << m << "|" << n << " l=" << l;
            }
    }
}

TEST(FunkHecke, ApplyToExponentialMatchesTaylorSequence) {
    Signature s(5, 1, Caps{26, 6, 3});
    Rational v(3, 2);
    auto [re, im] = exp_taylor(v, 24);
    std::vector<double> y = {0.6, 0.2, -0.3, 0.1, 0.25};
    for (int l = 0; l <= 2; ++l) {
        auto basis = harmonic_basis(s, l);
        for (std::size_t b = 0; b < basis.size(); b += 3) {
            const P& h = basis[b];
            ComplexGrassmann got = funk_hecke_apply(s, ZonalProfile::exp_i(1.5), h, y);
            ComplexGrassmann want = at(funk_hecke_poly(s, re, h), y) + at(funk_hecke_poly(s, im, h), y) * Complex(0, 1);
            EXPECT_LT(diff(got, want), 1e-9) << "l=" << l;
            // and the Bessel closed form of the kernel
            double r2 = 0;
            for (double c : y) r2 += c * c;
            int nn = s.n();
            std::vector<Complex> d;
            for (int p = 0; p <= nn; ++p) {
                double nu = s.M() / 2.0 + l - 1;
                double vv = 1.5;
                // i^l (2pi)^{M/2} v^l g_nu(v^2 s), differentiated in s
                d.push_back(std::pow(Complex(0, 1), l) * std::pow(2 * std::numbers::pi, s.M() / 2.0) * std::pow(vv, l) *
                            std::pow(vv * vv, p) * bessel_kernel_derivative(nu, p, vv * vv * r2));
            }
            ComplexGrassmann closed = detail::radial_grassmann(d, nn) * at(h, y);
            EXPECT_LT(diff(got, closed), 1e-9);
        }
    }
}

TEST(FunkHecke, BosonicCaseMatchesSphereQuadrature) {
    Signature s(3, 0);
    std::vector<double> y = {0.4, -0.3, 0.7};
    auto phi = ZonalProfile::real([](int, double t) { return std::exp(t); }, 64, 10, "exp");
    std::vector<P> hs = {P::constant(s, ExactScalar(1)), P::boson(s, 1) * P::boson(s, 2), P::boson(s, 3)};
    for (const auto& h : hs) {
        auto brute = integrate_1d(
            [&](double th) {
                return integrate_1d(
                           [&](double ph) {
                               double xi[3] = {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
                               double dot = xi[0] * y[0] + xi[1] * y[1] + xi[2] * y[2];
                               double hv = eval_bosons<ExactScalar, double>(h, xi).body();
                               return std::exp(dot) * hv * std::sin(th);
                           },
                           0, 2 * std::numbers::pi, 1e-10)
                    .value;
            },
            0, std::numbers::pi, 1e-10);
        ComplexGrassmann got = funk_hecke_apply(s, phi, h, y);
        EXPECT_NEAR(got.body().real(), brute.value, 1e-6);
    }
}

TEST(Hankel, GaussianIsSelfReciprocal) {
    RadialProfile gauss(RF::exp(Rational(1, 2)));
    for (double nu : {0.0, 0.5, 1.0, 1.5, 2.5})
        for (double u : {0.0, 0.5, 1.7, 3.0}) {
            EXPECT_NEAR(fourier_bessel({nu}, gauss, u * u), std::exp(-u * u / 2), 1e-10) << nu << " " << u;
            EXPECT_NEAR(hankel({nu}, [](double r) { return std::exp(-r * r / 2); }, u), std::exp(-u * u / 2), 1e-10);
        }
}

TEST(Hankel, LaguerreEigenfunctions) {
    for (double nu : {0.5, 1.0, 1.5, 2.5})
        for (int j = 0; j <= 3; ++j) {
            RadialProfile psi(RF::laguerre_exp(j, Rational(static_cast<long long>(2 * nu), 2), Rational(1, 2)));
            for (double u : {0.3, 1.1, 2.4}) {
                double want = (j % 2 ? -1 : 1) * laguerre(j, nu, u * u) * std::exp(-u * u / 2);
                EXPECT_NEAR(fourier_bessel({nu}, psi, u * u), want, 1e-8) << nu << " j=" << j;
            }
        }
}

TEST(Hankel, DerivativeInSquaredArgument) {
    RadialProfile psi(RF::laguerre_exp(1, Rational(3, 2), Rational(1, 2)));
    double s = 0.9, h = 1e-4;
    double fd = (fourier_bessel({1.5}, psi, s + h) - fourier_bessel({1.5}, psi, s - h)) / (2 * h);
    EXPECT_NEAR(fourier_bessel({1.5}, psi, s, 1), fd, 1e-7);
}

TEST(Hankel, Errors) {
    RadialProfile gauss(RF::exp(Rational(1, 2)));
    EXPECT_THROW(fourier_bessel({-0.5}, gauss, 1.0), DomainError);
    EXPECT_THROW(fourier_bessel({0.5}, RadialProfile(RF::power(1)), 1.0), DomainError);
}

TEST(CliffordHermite, GroundStateIsGaussian) {
    Signature s(3, 1);
    auto c = clifford_hermite(s, 0, P::constant(s, ExactScalar(1)));
    EXPECT_EQ(c.radial, RF::exp(Rational(1, 2)));
    EXPECT_EQ(c.eigenvalue(), Rational(1, 2));
}

TEST(CliffordHermite, OscillatorEigenrelation) {
    for (auto [m, n] : {std::pair{1, 0}, {3, 1}, {2, 1}, {1, 1}, {3, 2}, {2, 0}}) {
        Signature s(m, n);
        for (int k = 0; k <= 3; ++k) {
            auto basis = harmonic_basis(s, k);
            for (std::size_t b = 0; b < basis.size(); b += std::max<std::size_t>(1, basis.size() / 2))
                for (int j = 0; j <= 3; ++j) {
                    auto rep = oscillator_check(clifford_hermite(s, j, basis[b]));
                    EXPECT_TRUE(rep.profile_route) << m << "|" << n << " j=" << j << " k=" << k;
                    EXPECT_TRUE(rep.full_route) << m << "|" << n << " j=" << j << " k=" << k;
                }
        }
    }
    // wrong eigenvalue is detected
    Signature s(3, 1);
    auto c = clifford_hermite(s, 1, P::boson(s, 1));
    EXPECT_FALSE((oscillator_profile(c.radial, s, 1) - c.radial * RF(ExactScalar(c.eigenvalue() + 1))).is_zero());
}

TEST(CliffordHermite, ClassicalHermiteFunctions) {
    Signature s(1, 0);
    for (int j = 0; j <= 4; ++j) {
        auto even = clifford_hermite(s, j, P::constant(s, ExactScalar(1)));
        auto odd = clifford_hermite(s, j, P::boson(s, 1));
        for (double x : {-1.3, 0.2, 0.9, 2.1}) {
            double g = std::exp(-x * x / 2);
            double sign = j % 2 ? -1 : 1;
            EXPECT_NEAR(even.radial.eval(x * x), sign * boost::math::hermite(2 * j, x) * g, 1e-9 * std::pow(4.0, j));
            EXPECT_NEAR(odd.radial.eval(x * x) * x, sign * boost::math::hermite(2 * j + 1, x) / 2 * g, 1e-9 * std::pow(4.0, j));
        }
    }
}

TEST(Bochner, GaussianIsInvariant) {
    Signature s(5, 1);
    RadialProfile gauss(RF::exp(Rational(1, 2)));
    std::vector<double> y = {0.5, -0.2, 0.8, 0.1, -0.3};
    ComplexGrassmann got = bochner_transform(s, P::constant(s, ExactScalar(1)), gauss, y);
    double r = std::sqrt(detail::squared_norm(y));
    ComplexGrassmann want = radial_expand(gauss, s, r).map_coeffs([](double c) { return Complex(c); });
    EXPECT_LT(diff(got, want), 1e-10);
}

TEST(Bochner, LaguerreEigenfunctions) {
    std::vector<double> y = {0.5, -0.2, 0.8, 0.1, 0.3};
    for (auto [m, n] : {std::pair{3, 0}, {4, 1}, {5, 1}, {5, 0}}) {
        Signature s(m, n);
        auto pt = std::span<const double>(y).first(m);
        double r = std::sqrt(detail::squared_norm(pt));
        for (int k = 0; k <= 2; ++k) {
            P h = harmonic_basis(s, k).front();
            for (int j = 0; j <= 2; ++j) {
                RF prof = RF::laguerre_exp(j, half(s.M()) + k - 1, Rational(1, 2));
                RadialProfile psi(prof);
                for (int sign : {1, -1}) {
                    ComplexGrassmann got = bochner_transform(s, h, psi, pt, sign);
                    Complex phase = std::pow(Complex(0, sign), k) * (j % 2 ? -1.0 : 1.0);
                    ComplexGrassmann want =
                        radial_expand(psi, s, r).map_coeffs([](double c) { return Complex(c); }) * at(h, pt) * phase;
                    EXPECT_LT(diff(got, want), 1e-8) << m << "|" << n << " k=" << k << " j=" << j;
                }
            }
        }
    }
}

TEST(Bochner, MatchesPolarIntegrationOfFunkHecke) {
    Signature s(5, 1);
    RadialProfile gauss(RF::exp(Rational(1, 2)));
    std::vector<double> y = {0.5, -0.2, 0.8, 0.1, -0.3};
    for (int k = 0; k <= 2; ++k)
    for (const auto& h : harmonic_basis(s, k)) {
        ComplexGrassmann a = bochner_transform(s, h, gauss, y);
        ComplexGrassmann b = bochner_via_funk_hecke(s, h, gauss, y);
        EXPECT_LT(diff(a, b), 1e-8);
    }
    EXPECT_THROW(bochner_transform(Signature(1, 0), P::constant(Signature(1, 0), ExactScalar(1)), gauss, std::vector<double>{0.3}),
                 DomainError);
}

TEST(Mehler, KernelRecurrenceMatchesExactKernel) {
    for (auto [m, n] : {std::pair{3, 1}, {2, 0}, {1, 1}, {4, 1}}) {
        Signature s(m, n);
        std::vector<double> x = {0.3, -0.6, 0.2, 0.5}, y = {0.7, 0.1, -0.4, 0.2};
        auto xs = std::span<const double>(x).first(m), ys = std::span<const double>(y).first(m);
        PairPoint pt = pair_point(s, xs, ys);
        auto F = reproducing_kernels_at(s.M(), 5, pt.pairing, pt.rx2 * pt.ry2);
        std::vector<double> xy(xs.begin(), xs.end());
        xy.insert(xy.end(), ys.begin(), ys.end());
        for (int k = 0; k <= 5; ++k) {
            ComplexGrassmann want = eval_bosons<ExactScalar, Complex>(reproducing_kernel(s, k), xy);
            EXPECT_LT(diff(F[k], want), 1e-12) << m << "|" << n << " k=" << k;
        }
    }
}

TEST(Mehler, BesselFormExamples) {
    Signature b(3, 0);
    std::vector<double> zero = {0, 0, 0};
    EXPECT_LT(mehler_bessel_check(b, zero, zero, 10).residual, 1e-14);
    EXPECT_THROW(mehler_bessel_check(Signature(2, 1), std::vector<double>{0.1, 0.2}, std::vector<double>{0.3, 0.1}, 10), DomainError);
    EXPECT_THROW(mehler_bessel_check(b, zero, zero, 61), DomainError);
}

TEST(Mehler, BesselFormAtRandomPoints) {
    Rng rng(2024);
    for (auto [m, n] : {std::pair{3, 1}, {2, 0}, {3, 0}, {1, 1}, {4, 1}, {5, 2}}) {
        Signature s(m, n);
        for (int t = 0; t < 10; ++t) {
            std::vector<double> x(m), y(m);
            for (auto& c : x) c = rng.real(-1, 1) / std::sqrt(m);
            for (auto& c : y) c = rng.real(-1, 1) / std::sqrt(m);
            for (int sign : {1, -1}) {
                auto rep = mehler_bessel_check(s, x, y, 40, 1e-10, sign);
                EXPECT_LT(rep.residual, 1e-8) << m << "|" << n;
                EXPECT_TRUE(rep.converged);
            }
        }
    }
}

TEST(Mehler, TruncationShortfallIsReported) {
    Signature s(3, 1);
    std::vector<double> x = {2.0, 1.0, 0.5}, y = {1.5, -2.0, 1.0};
    auto rep = mehler_bessel_check(s, x, y, 3);
    EXPECT_FALSE(rep.converged);
    EXPECT_GT(rep.residual, 1e-6);
}

TEST(HilleHardy, Examples) {
    for (int M : {1, 3, 5})
        for (int k = 0; k <= 2; ++k) {
            if (M / 2.0 + k - 1 < -0.5) continue;
            auto r = hille_hardy_check(M, k, 0, 0, 60);
            EXPECT_NEAR(r.lhs, 1 / (std::pow(2.0, M / 2.0 + k - 1) * std::tgamma(M / 2.0 + k)), 1e-15);
            EXPECT_LT(r.residual, 1e-12) << M << " " << k;
        }
    EXPECT_LT(hille_hardy_check(3, 0, 1, 1, 60).residual, 1e-8);
    EXPECT_LT(hille_hardy_check(1, 2, 4, 0.25, 80).residual, 1e-6);
    EXPECT_LT(hille_hardy_check(4, 1, 2.5, 0.7, 80).residual, 1e-8);
}

TEST(HilleHardy, LaguerreFormOfKernelMatchesBesselForm) {
    Signature s(3, 1);
    Rng rng(5);
    for (int t = 0; t < 5; ++t) {
        std::vector<double> x(3), y(3);
        for (auto& c : x) c = rng.real(-0.6, 0.6);
        for (auto& c : y) c = rng.real(-0.6, 0.6);
        EXPECT_LT(mehler_laguerre_vs_bessel(s, x, y, 20, 80), 1e-8);
    }
}

TEST(Zonal, PolynomialZonalFunctionsAreInvariant) {
    for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {1, 2}}) {
        Signature s(m, n);
        P f = zonal_polynomial(s, {1, -2, Rational(1, 3), 4});
        EXPECT_EQ(zonal_invariance_check(f).nonzero, 0) << m << "|" << n;
        P control = P::boson(s, 1, 0, 2) * P::boson(s, 1, 1, 2);
        EXPECT_GT(zonal_invariance_check(control).nonzero, 0);
    }
}
