#include "superharm/schrodinger.hpp"
#include "superharm/serialize.hpp"

#include <gtest/gtest.h>

using namespace superharm;

namespace {
using RF = RadialFunction;
}

TEST(Schrodinger, ReducedOperator) {
    Signature s(3, 1);
    auto p0 = reduce(s, oscillator_potential(), 0);
    EXPECT_EQ(p0.first_order(), -s.M());
    // constant f: only V f survives
    EXPECT_EQ(p0.apply(RF(1)), RF::power(1) * RF(ExactScalar(Rational(1, 2))));
    // f = u: -M + u^2/2
    EXPECT_EQ(p0.apply(RF::power(1)), RF(-s.M()) + RF::power(2) * RF(ExactScalar(Rational(1, 2))));
    auto free = reduce(s, RadialProfile(RF()), 0);
    EXPECT_TRUE(free.apply(RF(7)).is_zero());
    // the sector only shifts the first-order coefficient
    auto p2 = reduce(s, oscillator_potential(), 2);
    EXPECT_EQ(p2.first_order() - p0.first_order(), -4);
    EXPECT_EQ(p2.apply(RF::power(2)) - p0.apply(RF::power(2)), RF::power(1) * RF(-8));
}

TEST(Schrodinger, OscillatorEigenpairsOnFullSuperspace) {
    for (auto [m, n] : {std::pair{3, 1}, {1, 0}, {2, 1}, {1, 1}, {3, 2}, {4, 1}}) {
        Signature s(m, n);
        for (int k = 0; k <= 2; ++k) {
            auto problem = reduce(s, oscillator_potential(), k);
            const auto basis = harmonic_basis(s, k);
            for (int j = 0; j <= 2; ++j) {
                RF f = oscillator_eigenprofile(s, j, k);
                ExactScalar E(Rational(2 * j + k) + half(s.M()));
                EXPECT_TRUE((problem.apply(f) - f * RF(E)).is_zero()) << m << "|" << n << " j=" << j << " k=" << k;
                if (basis.empty()) continue;  // e.g. one bosonic coordinate, k = 2
                EXPECT_TRUE(eigenpair_check(problem, f, basis.front(), E)) << m << "|" << n << " j=" << j << " k=" << k;
                EXPECT_FALSE(eigenpair_check(problem, f, basis.back(), E + ExactScalar(1)));
            }
        }
    }
}

TEST(Schrodinger, OscillatorSpectrumAndDegeneracies) {
    auto sp = oscillator_spectrum(Signature(3, 1), 2, 2);
    ASSERT_FALSE(sp.entries.empty());
    EXPECT_EQ(sp.entries[0].E, Rational(1, 2));
    EXPECT_EQ(sp.entries[0].degeneracy, 1);
    EXPECT_EQ(sp.entries[1].E, Rational(3, 2));
    EXPECT_EQ(sp.entries[1].k, 1);
    EXPECT_EQ(sp.entries[1].degeneracy, 5);
    EXPECT_TRUE(sp.basis_complete);
    for (const auto& e : oscillator_spectrum(Signature(2, 0), 3, 3).entries) EXPECT_EQ(e.E, Rational(2 * e.j + e.k + 1));
    EXPECT_FALSE(oscillator_spectrum(Signature(2, 1), 1, 1).basis_complete);
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; n <= 2; ++n) {
            Signature s(m, n);
            for (const auto& e : oscillator_spectrum(s, 2, 4).entries) EXPECT_EQ(e.degeneracy, dim_harmonics(s, e.k));
            for (int d = 0; d <= 6; ++d) EXPECT_EQ(oscillator_level_count(s, d), dim_polynomials(s, d));
        }
}

TEST(Schrodinger, NumericOscillator) {
    for (auto [m, n] : {std::pair{3, 1}, {1, 0}, {5, 1}, {3, 0}, {2, 0}}) {
        Signature s(m, n);
        for (int k = 0; k <= 2; ++k) {
            double top = 4 + k + s.M() / 2.0;
            auto ev = solve_numeric(reduce(s, oscillator_potential(), k), -1, top + 0.5);
            ASSERT_EQ(ev.size(), 3u) << m << "|" << n << " k=" << k;
            for (int j = 0; j <= 2; ++j) EXPECT_NEAR(ev[j].E, 2 * j + k + s.M() / 2.0, 1e-6) << m << "|" << n << " k=" << k;
        }
    }
}

TEST(Schrodinger, NumericKepler) {
    Signature s(3, 0);
    auto problem = reduce(s, kepler_potential(), 0);
    EXPECT_THROW(solve_numeric(problem, -1, 0), DomainError);
    GridSpec g;
    g.box = true;
    g.r_max = 60;
    g.cells = 3000;
    auto ev = solve_numeric(problem, -1, -0.05, g);
    ASSERT_GE(ev.size(), 2u);
    EXPECT_NEAR(ev[0].E, -0.5, 1e-4);
    for (std::size_t j = 0; j < ev.size(); ++j) EXPECT_NEAR(ev[j].E, hydrogenic_energy(3, 0, static_cast<int>(j)), 1e-4);
    // M = 3 realized on a superspace, k = 1
    auto sup = solve_numeric(reduce(Signature(5, 1), kepler_potential(), 1), -1, -0.05, g);
    ASSERT_GE(sup.size(), 1u);
    EXPECT_NEAR(sup[0].E, hydrogenic_energy(3, 1, 0), 1e-4);
}

TEST(Schrodinger, Errors) {
    EXPECT_THROW(solve_numeric(reduce(Signature(1, 1), oscillator_potential(), 0), -1, 5), DomainError);
    EXPECT_THROW(reduce(Signature(3, 1), oscillator_potential(), -1), DomainError);
    EXPECT_THROW(hydrogenic_energy(1, 0, 0), DomainError);
}
