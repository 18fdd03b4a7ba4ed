#include "superharm/integrate.hpp"
#include "superharm/radial.hpp"
#include "superharm/random.hpp"
#include "superharm/serialize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace superharm;

namespace {

using P = SuperPolynomial;
using RF = RadialFunction;

const std::vector<std::pair<int, int>> kSigs = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {1, 2}, {2, 2}, {3, 2}, {4, 2}, {3, 0}};

std::vector<RF> symbolic_profiles() {
    return {RF::exp(1), RF::exp(Rational(1, 2)), RF::pow_half(3), RF::pow_half(-1), RF::powlog_half(2),
            RF::laguerre_exp(2, Rational(1, 2), Rational(1, 2)), RF::polynomial({1, -2, 0, 1})};
}

double grass_diff(const BasicGrassmann<double>& a, const BasicGrassmann<double>& b) { return (a - b).max_abs(); }

}  // namespace

TEST(RadialExpand, Examples) {
    Signature s(3, 1);
    double r = 0.7;
    auto g = radial_expand(RadialProfile(RF::exp(Rational(1, 2))), s, r);
    // exp(-r^2/2)(1 + x`^2/2)
    EXPECT_NEAR(g.body(), std::exp(-r * r / 2), 1e-15);
    EXPECT_NEAR(g.coeff(0b11), std::exp(-r * r / 2) / 2, 1e-15);

    auto id = radial_expand(RadialProfile(RF::power(1)), Signature(2, 2), r);
    EXPECT_NEAR(id.body(), r * r, 1e-15);
    EXPECT_NEAR(id.coeff(0b0011), -1, 1e-15);
    EXPECT_NEAR(id.coeff(0b1100), -1, 1e-15);
    EXPECT_NEAR(id.coeff(0b1111), 0, 1e-15);

    auto inv = radial_expand(RadialProfile(RF::pow_half(-1)), s, r);
    EXPECT_NEAR(inv.body(), 1 / r, 1e-14);
    EXPECT_NEAR(inv.coeff(0b11), std::pow(r, -3) / 2, 1e-13);

    RadialProfile shallow([](int, double u) { return u; }, 0, Decay::none, "shallow");
    EXPECT_THROW(radial_expand(shallow, s, r), DomainError);
    EXPECT_THROW(radial_expand(RadialProfile(RF::exp(1)), s, 0), DomainError);
}

TEST(RadialPower, ExamplesAndPolynomialReduction) {
    Signature s(3, 1);
    auto r1 = radial_power(s, 1);
    EXPECT_EQ(r1.coeff(Monomial{}), RF::pow_half(1));
    Monomial top;
    top.f = 0b11;
    EXPECT_EQ(r1.coeff(top), RF::pow_half(-1) * RF(ExactScalar(Rational(-1, 2))));
    EXPECT_EQ(radial_power(s, -1).coeff(top), RF::pow_half(-3) * RF(ExactScalar(Rational(1, 2))));
    for (auto [m, n] : kSigs) {
        Signature t(m, n);
        P r2 = norm_squared<ExactScalar>(t);
        for (int k = 0; k <= 3; ++k) EXPECT_EQ(lower_to_exact(radial_power(t, 2 * k)), r2.pow(k)) << m << "|" << n << " k=" << k;
        // R^a R^b = R^{a+b}
        for (Rational a : {Rational(1), Rational(-3), Rational(5, 2)})
            for (Rational b : {Rational(2), Rational(-1, 3)})
                EXPECT_TRUE(radial_equal(radial_power(t, a) * radial_power(t, b), radial_power(t, a + b)));
    }
}

TEST(Radial, AlgebraMorphism) {
    auto hs = symbolic_profiles();
    for (auto [m, n] : kSigs) {
        Signature s(m, n);
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i; j < hs.size(); ++j) {
                EXPECT_TRUE(radial_equal(radial_superfunction(hs[i], s) * radial_superfunction(hs[j], s),
                                         radial_superfunction(hs[i] * hs[j], s)));
                for (double r : {0.4, 1.3}) {
                    auto a = radial_expand(RadialProfile(hs[i]), s, r) * radial_expand(RadialProfile(hs[j]), s, r);
                    auto b = radial_expand(RadialProfile(hs[i] * hs[j]), s, r);
                    EXPECT_LT(grass_diff(a, b), 1e-12 * std::max(1.0, b.max_abs()));
                }
            }
    }
}

TEST(Radial, SymbolicAndNumericDerivativesAgree) {
    for (const auto& h : symbolic_profiles()) {
        RadialProfile sym(h);
        RadialProfile num([h](int j, double u) { return h.derivative(j).eval(u); }, 4, Decay::none, "numeric");
        Signature s(3, 2);
        for (double r : {0.3, 1.0, 2.2}) EXPECT_LT(grass_diff(radial_expand(sym, s, r), radial_expand(num, s, r)), 1e-10);
    }
}

TEST(Compose, Examples) {
    Signature s(2, 2);
    auto expo = [](int, double t) { return std::exp(t); };
    // exp(x`^2) = sum x`^{2j}/j!
    BasicGrassmann<double> xsq = fermi_norm_sq<double>(2);
    auto e = compose(expo, 4, xsq);
    EXPECT_NEAR(e.body(), 1, 1e-15);
    EXPECT_NEAR(e.coeff(0b0011), 1, 1e-15);
    EXPECT_NEAR(e.coeff(0b1111), 1, 1e-15);  // x`^4/2 = x`1x`2x`3x`4
    // (.)^2 of R = R^2
    auto square = [](int j, double t) { return j == 0 ? t * t : j == 1 ? 2 * t : j == 2 ? 2.0 : 0.0; };
    for (double r : {0.5, 1.7}) {
        auto R = radial_expand(RadialProfile(RF::pow_half(1)), s, r);
        EXPECT_LT(grass_diff(compose(square, 4, R), radial_expand(RadialProfile(RF::power(1)), s, r)), 1e-13);
        // (h o g)(R^2) = h(g(R^2)) with g = sqrt, h = exp(-t)
        auto h = [](int j, double t) { return (j % 2 ? -1.0 : 1.0) * std::exp(-t); };
        RadialProfile hg([](int j, double u) {
            // exp(-sqrt u) is outside the closed family; derivatives by hand
            double s = std::sqrt(u), e = std::exp(-s);
            if (j == 0) return e;
            if (j == 1) return -e / (2 * s);
            return e / (4 * u) + e / (4 * u * s);
        }, 2, Decay::exponential, "exp(-sqrt u)");
        EXPECT_LT(grass_diff(compose(h, 4, R), radial_expand(hg, s, r)), 1e-13);
    }
    EXPECT_THROW(compose(expo, 1, xsq), DomainError);
}

TEST(Radial, GradientEulerAndLaplacian) {
    Rng rng(5);
    for (auto [m, n] : kSigs) {
        Signature s(m, n);
        for (const auto& h : symbolic_profiles()) {
            RadialSuperPoly H = radial_superfunction(h, s);
            auto g = radial_gradient(h, s);
            RadialSuperPoly dh = radial_superfunction(g.derivative, s);
            for (int k = 1; k <= s.dim(); ++k)
                EXPECT_TRUE(radial_equal(grad_lower(k, H), lift<RF>(g.factor[k - 1]) * dh)) << to_string(h) << " k=" << k;
            EXPECT_TRUE(radial_equal(euler(H), radial_superfunction(radial_euler(h), s)));
            EXPECT_TRUE(radial_equal(laplacian(H), radial_superfunction(radial_laplacian(h, s), s)));
            // commutator with nabla^2 on a polynomial, and h(R^2) H_k
            P p = random_poly(s, rng, 3);
            RadialSuperPoly lp = lift<RF>(p);
            EXPECT_TRUE(radial_equal(laplacian(H * lp) - H * lift<RF>(laplacian(p)), radial_laplacian_commutator(h, p)));
        }
        // Laplacian of h(R^2) H_k with harmonic polynomials of degree 1 and 2
        P h1 = P::boson(s, 1);
        std::vector<std::pair<P, int>> harmonics = {{h1, 1}};
        if (m >= 2) harmonics.push_back({P::boson(s, 1) * P::boson(s, 2), 2});
        if (n >= 1) harmonics.push_back({P::boson(s, 1) * P::fermion(s, 1), 2});
        for (auto& [hk, k] : harmonics) {
            ASSERT_TRUE(laplacian(hk).is_zero());
            for (const auto& h : symbolic_profiles()) {
                RadialSuperPoly lhs = laplacian(radial_superfunction(h, s) * lift<RF>(hk));
                RadialSuperPoly rhs = radial_superfunction(radial_laplacian(h, s, k), s) * lift<RF>(hk);
                EXPECT_TRUE(radial_equal(lhs, rhs));
            }
        }
    }
    // examples
    Signature s(3, 1);
    EXPECT_EQ(radial_laplacian(RF::power(1), s), RF(2 * s.M()));
    EXPECT_EQ(radial_laplacian(RF::power(2), s), RF::power(1) * RF(8 + 4 * s.M()));
    EXPECT_EQ(radial_gradient(RF::exp(Rational(1, 2)), s).derivative, RF::exp(Rational(1, 2)) * RF(ExactScalar(Rational(-1, 2))));
}

TEST(Radial, LaplaceBeltramiCommutesWithRadialPolynomials) {
    Rng rng(6);
    for (auto [m, n] : kSigs) {
        Signature s(m, n);
        P h = lower_to_exact(radial_superfunction(RF::polynomial({3, -1, 2}), s));
        for (int t = 0; t < 5; ++t) {
            P p = random_poly(s, rng, 3);
            EXPECT_EQ(laplace_beltrami(h * p), h * laplace_beltrami(p));
        }
    }
}

TEST(Radial, OspInvariance) {
    for (auto [m, n] : kSigs) {
        Signature s(m, n);
        for (const auto& h : symbolic_profiles()) {
            auto r = osp_invariance_check(h, s);
            EXPECT_TRUE(r.exact);
            EXPECT_EQ(r.nonzero, 0);
        }
        EXPECT_GT(osp_invariance_check(P::boson(s, 1)).nonzero, 0);
        EXPECT_EQ(osp_invariance_check(norm_squared<ExactScalar>(s)).nonzero, 0);
        // numeric path
        RadialProfile num([](int j, double u) { return (j % 2 ? -1.0 : 1.0) * std::exp(-u); }, 8, Decay::exponential, "exp-num");
        std::vector<double> radii = {0.5, 1.2};
        auto rep = osp_invariance_check(num, s, radii);
        EXPECT_FALSE(rep.exact);
        EXPECT_LT(rep.max_residual, 1e-12);
    }
}

TEST(Fundamental, Examples) {
    auto fs = fundamental_solution(Signature(3, 1), 1);
    EXPECT_EQ(fs.direct, RF::pow_half(1) * RF(ExactScalar(Rational(-1, 2))));
    RadialSuperPoly nu = radial_superfunction(fs.direct, Signature(3, 1));
    Monomial top;
    top.f = 0b11;
    EXPECT_EQ(nu.coeff(top), RF::pow_half(-1) * RF(ExactScalar(Rational(1, 4))));
    // Newton potential: gamma_{0,3} = 4 pi gives 1/(4 pi r), and nabla^2 (1/(4 pi r)) = -delta
    EXPECT_EQ(fundamental_solution(Signature(3, 0), 1).direct, RF::pow_half(-1) * RF(ExactScalar(Rational(1, 4), -2)));
    EXPECT_THROW(fundamental_solution(Signature(2, 1), 1), DomainError);
    EXPECT_THROW(fundamental_solution(Signature(2, 2), 1), DomainError);
}

TEST(Fundamental, HarmonicOffOriginAndFormsAgree) {
    for (int m = 1; m <= 6; ++m)
        for (int n = 0; n <= 2; ++n) {
            Signature s(m, n);
            int M = s.M();
            if (M <= 0 && M % 2 == 0) continue;
            for (int l = 1; l <= 3; ++l) {
                auto fs = fundamental_solution(s, l);
                EXPECT_TRUE(iterated_radial_laplacian(fs.direct, s, l).is_zero()) << m << "|" << n << " l=" << l;
                EXPECT_FALSE(iterated_radial_laplacian(fs.direct, s, l - 1).is_zero());
                if (fs.normalized) {
                    EXPECT_EQ(fs.direct, fs.prefactor) << m << "|" << n << " l=" << l;
                } else {
                    EXPECT_TRUE(proportionality(fs.direct, fs.prefactor).has_value()) << m << "|" << n << " l=" << l;
                }
                // full superspace check on the expansion
                RadialSuperPoly nu = radial_superfunction(fs.direct, s);
                RadialSuperPoly lap = nu;
                for (int i = 0; i < l; ++i) lap = laplacian(lap);
                EXPECT_TRUE(reduce_radial(lap).is_zero());
            }
        }
    // the log branch is exercised: M = 2, l = 1
    EXPECT_TRUE(fundamental_solution(Signature(4, 1), 1).logarithmic);
}

TEST(Fundamental, NormalizationChain) {
    auto a = fundamental_normalization_check(Signature(3, 1), 1);
    EXPECT_EQ(a.chain, ExactScalar(-2));
    EXPECT_TRUE(a.equal());
    auto b = fundamental_normalization_check(Signature(5, 1), 1);
    EXPECT_EQ(b.gamma, ExactScalar(4, 2));
    EXPECT_TRUE(b.equal());
    auto c = fundamental_normalization_check(Signature(3, 1), 2);
    EXPECT_EQ(c.gamma, ExactScalar(12));
    EXPECT_TRUE(c.equal());
    for (int m : {1, 3, 5})
        for (int n = 0; n <= 2; ++n)
            for (int l = 1; l <= 3; ++l) EXPECT_TRUE(fundamental_normalization_check(Signature(m, n), l).equal()) << m << n << l;
    EXPECT_THROW(fundamental_normalization_check(Signature(4, 1), 1), DomainError);
}

TEST(Fundamental, MeanValueSupport) {
    // pizzetti(E nu_2 * h) = -h(0) for harmonic h, through the spherical coordinate formula
    for (auto [m, n] : {std::pair{3, 1}, {5, 1}, {1, 1}, {3, 2}, {5, 2}, {3, 0}}) {
        Signature s(m, n);
        EXPECT_EQ(mean_value_kernel(s), ExactScalar(-1));
        RadialFunction e = radial_euler(fundamental_solution(s, 1).direct);
        std::vector<ExactScalar> d;
        RadialFunction cur = e;
        for (int k = 0; k <= 2 * n; ++k) {
            d.push_back(*cur.value_at_one());
            cur = cur.d_du();
        }
        std::vector<P> hs = {P::constant(s, ExactScalar(3)), P::boson(s, 1) + P::constant(s, ExactScalar(2))};
        if (m >= 2) hs.push_back(P::boson(s, 1) * P::boson(s, 2) - P::constant(s, ExactScalar(1)));
        for (const auto& h : hs) {
            ASSERT_TRUE(laplacian(h).is_zero());
            EXPECT_EQ(supersphere_radial(d, h), -constant_term(h));
        }
    }
}
