#pragma once
// Reproducible random superpolynomials for property checks. Draws use the
// raw mt19937_64 stream only, so output does not depend on the standard
// library's distribution implementations.

#include "superharm/superpoly.hpp"

#include <cstdint>
#include <random>

namespace superharm {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    long long uniform(long long lo, long long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(engine_() % span);
    }
    /// Uniform double in [lo, hi).
    double real(double lo, double hi) {
        double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

private:
    std::mt19937_64 engine_;
};

/// A random polynomial on one copy with total degree <= max_degree, small
/// integer coefficients and up to `terms` monomials.
inline SuperPolynomial random_poly(const Signature& sig, Rng& rng, int max_degree, int terms = 6) {
    SuperPolynomial p(sig);
    int gens = 2 * sig.n();
    for (int t = 0; t < terms; ++t) {
        Monomial mono;
        int budget = static_cast<int>(rng.uniform(0, max_degree));
        if (gens > 0) {
            for (int j = 0; j < gens && budget > 0; ++j)
                if (rng.uniform(0, 2) == 0) {
                    mono.f |= FermiMask{1} << j;
                    --budget;
                }
        }
        while (budget-- > 0) ++mono.e[rng.uniform(0, sig.m() - 1)];
        long long c = rng.uniform(-5, 5);
        if (c == 0) c = 1;
        p.add(mono, ExactScalar(Rational(c, rng.uniform(1, 3))));
    }
    return p;
}

/// A random homogeneous polynomial of degree d.
inline SuperPolynomial random_homogeneous(const Signature& sig, Rng& rng, int d, int terms = 6) {
    SuperPolynomial p(sig);
    int gens = 2 * sig.n();
    for (int t = 0; t < terms; ++t) {
        Monomial mono;
        int fermi = static_cast<int>(rng.uniform(0, std::min(d, gens)));
        for (int placed = 0; placed < fermi;) {
            int j = static_cast<int>(rng.uniform(0, gens - 1));
            if (!(mono.f >> j & 1)) {
                mono.f |= FermiMask{1} << j;
                ++placed;
            }
        }
        for (int b = fermi; b < d; ++b) ++mono.e[rng.uniform(0, sig.m() - 1)];
        long long c = rng.uniform(-4, 4);
        if (c == 0) c = 2;
        p.add(mono, ExactScalar(Rational(c)));
    }
    return p;
}

}  // namespace superharm
