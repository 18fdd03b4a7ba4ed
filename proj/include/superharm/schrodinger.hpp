#pragma once
// Schroedinger problems H = -1/2 nabla^2 + V(R^2) with radial potential. On
// h(R^2) H_k the problem reduces to an ODE in u = r^2 at effective dimension
// M + 2k; the oscillator spectrum is exact, other potentials are solved by
// finite volumes in r.

#include "superharm/harmonics.hpp"
#include "superharm/profile.hpp"
#include "superharm/radial.hpp"
#include "superharm/zonal.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace superharm {

/// -2u f'' - (2k+M) f' + V(u) f = E f.
struct RadialProblem {
    Signature sig;
    RadialProfile V;
    int k = 0;

    int M() const { return sig.M(); }
    /// Coefficient of f' in the reduced operator.
    int first_order() const { return -(2 * k + sig.M()); }
    /// Effective dimension of the equivalent bosonic radial problem.
    int effective_dimension() const { return 2 * k + sig.M(); }

    /// The reduced operator on a symbolic profile.
    RadialFunction apply(const RadialFunction& f) const {
        RadialFunction d1 = f.d_du();
        return d1.d_du().times_u() * RadialFunction(-2) + d1 * RadialFunction(first_order()) + V.symbolic() * f;
    }
};

inline RadialProblem reduce(const Signature& sig, const RadialProfile& V, int k) {
    if (k < 0) throw DomainError("harmonic sector must be nonnegative");
    return RadialProblem{sig, V, k};
}

/// The oscillator potential V(u) = u/2.
inline RadialProfile oscillator_potential() { return RadialProfile(RadialFunction::power(1) * RadialFunction(ExactScalar(Rational(1, 2))), "osc"); }

/// The Kepler-type potential V(u) = -u^{-1/2} = -1/r.
inline RadialProfile kepler_potential() { return RadialProfile(-RadialFunction::pow_half(-1), "kepler"); }

/// -1/2 nabla^2 + V(R^2) applied to h(R^2) H_k on the full superspace, against E h(R^2) H_k.
inline bool eigenpair_check(const RadialProblem& p, const RadialFunction& h, const SuperPolynomial& harmonic, const ExactScalar& E) {
    RadialSuperPoly f = radial_superfunction(h, p.sig) * lift<RadialFunction>(harmonic);
    RadialSuperPoly v = radial_superfunction(p.V.symbolic(), p.sig);
    RadialSuperPoly lhs = laplacian(f) * RadialFunction(ExactScalar(Rational(-1, 2))) + v * f;
    return radial_equal(lhs, f * RadialFunction(E));
}

struct SpectrumEntry {
    int j = 0, k = 0;
    Rational E;
    long long degeneracy = 0;
};

struct OscillatorSpectrum {
    std::vector<SpectrumEntry> entries;  // sorted by E, then k
    bool basis_complete = true;          // false for M in -2N
};

/// E = 2j + k + M/2 with degeneracy dim H_k.
inline OscillatorSpectrum oscillator_spectrum(const Signature& sig, int j_max, int k_max) {
    if (j_max < 0 || k_max < 0) throw DomainError("quantum number bounds must be nonnegative");
    OscillatorSpectrum s;
    s.basis_complete = !(sig.M() <= 0 && sig.M() % 2 == 0);
    for (int j = 0; j <= j_max; ++j)
        for (int k = 0; k <= k_max; ++k) s.entries.push_back({j, k, Rational(2 * j + k) + half(sig.M()), dim_harmonics(sig, k)});
    std::sort(s.entries.begin(), s.entries.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        return a.E != b.E ? a.E < b.E : a.k < b.k;
    });
    return s;
}

/// Radial eigenfunction of the oscillator in sector k: L_j^{M/2+k-1}(u) exp(-u/2).
inline RadialFunction oscillator_eigenprofile(const Signature& sig, int j, int k) {
    return RadialFunction::laguerre_exp(j, half(sig.M()) + k - 1, Rational(1, 2));
}

/// Number of oscillator states with 2j + k = d, counted through dim H_k.
inline long long oscillator_level_count(const Signature& sig, int d) {
    long long total = 0;
    for (int k = d % 2; k <= d; k += 2) total += dim_harmonics(sig, k);
    return total;
}

/// Bound-state energies of V = -1/r in dimension M, sector k: -1/(2 (j + k + (M-1)/2)^2).
inline double hydrogenic_energy(int M, int k, int j) {
    double nu = j + k + (M - 1) / 2.0;
    if (nu <= 0) throw DomainError("no hydrogenic level for these quantum numbers");
    return -1.0 / (2 * nu * nu);
}

struct GridSpec {
    double r_max = 0;   // 0: chosen from the potential
    int cells = 1500;   // coarse grid; the fine grid doubles it
    bool box = false;   // allow non-confining potentials inside a Dirichlet box
};

struct NumericEigenvalue {
    double E = 0;
    double err = 0;  // Richardson correction size
};

namespace detail {

// Lowest `count` eigenvalues of -1/2 r^{1-D}(r^{D-1} f')' + V(r^2) f on (0, r_max),
// finite volumes on cells of width h, symmetrized against the cell weights.
inline std::vector<double> radial_eigenvalues(const RadialProfile& V, int D, double r_max, int cells) {
    double h = r_max / cells;
    auto face = [&](int i) { return std::pow(i * h, D - 1); };  // r^{D-1} at face i (r = i h)
    Eigen::VectorXd diag(cells), off(std::max(cells - 1, 1));
    std::vector<double> w(cells);
    for (int i = 0; i < cells; ++i) w[i] = (std::pow((i + 1) * h, D) - std::pow(i * h, D)) / (D * h);
    for (int i = 0; i < cells; ++i) {
        double left = i == 0 ? (D == 1 ? 0.0 : face(0)) : face(i);  // D = 1: even branch, zero flux
        double right = face(i + 1);                                   // Dirichlet ghost beyond the box
        // V averaged over the cell against r^{D-1}, so 1/r singularities stay second order
        double a = i * h, b = (i + 1) * h;
        double vbar = boost::math::quadrature::gauss<double, 8>::integrate(
                          [&](double x) { return V(x * x) * std::pow(x, D - 1); }, a, b) /
                      (w[i] * h);
        diag[i] = 0.5 * (left + right) / (w[i] * h * h) + vbar;
        if (i + 1 < cells) off[i] = -0.5 * face(i + 1) / (h * h * std::sqrt(w[i] * w[i + 1]));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, off.head(cells - 1), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolver failed");
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + cells);
    return ev;
}

}  // namespace detail

/// Eigenvalues in [lo, hi] of the reduced problem, from grids with N and 2N
/// cells combined by Richardson extrapolation (second-order scheme).
inline std::vector<NumericEigenvalue> solve_numeric(const RadialProblem& p, double lo, double hi, const GridSpec& grid = {}) {
    int D = p.effective_dimension();
    if (D < 1) throw DomainError("effective dimension M + 2k < 1: the origin term is too singular for the radial grid");
    if (grid.cells < 16) throw DomainError("grid too coarse");
    double r_max = grid.r_max;
    if (r_max <= 0) {
        // first radius where V exceeds the window by a margin, capped at 60
        r_max = 60;
        for (double r = 1; r <= 60; r += 0.5)
            if (p.V(r * r) > hi + 30) {
                r_max = r;
                break;
            }
    }
    bool confining = p.V(r_max * r_max) > hi + 10;
    if (!confining && !grid.box) throw DomainError("potential is not confining on the grid; pass the box flag");
    auto coarse = detail::radial_eigenvalues(p.V, D, r_max, grid.cells);
    auto fine = detail::radial_eigenvalues(p.V, D, r_max, 2 * grid.cells);
    std::vector<NumericEigenvalue> out;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        double e = (4 * fine[i] - coarse[i]) / 3;
        if (e < lo) continue;
        if (e > hi) break;
        out.push_back({e, std::abs(fine[i] - coarse[i]) / 3});
    }
    return out;
}

}  // namespace superharm
