#pragma once
// Numeric special functions: generalized Laguerre, Gegenbauer, the
// dimension-M Legendre polynomials P_l^M and Bessel functions of the first
// kind for integer and half-integer order.

#include "superharm/scalar.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace superharm {

/// L_p^q(u) by the three-term recurrence.
inline double laguerre(int p, double q, double u) {
    if (p < 0) throw DomainError("laguerre degree must be nonnegative");
    double prev = 1.0;
    if (p == 0) return prev;
    double cur = 1.0 + q - u;
    for (int k = 1; k < p; ++k) {
        double next = ((2 * k + 1 + q - u) * cur - (k + q) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// C_k^lambda(t).
inline double gegenbauer(int k, double lambda, double t) {
    if (k < 0) throw DomainError("gegenbauer degree must be nonnegative");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 2.0 * lambda * t;
    for (int j = 1; j < k; ++j) {
        double next = (2.0 * (j + lambda) * t * cur - (j + 2.0 * lambda - 1.0) * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// P_l^M(t) = C_l^{(M-2)/2}(t) / binom(l+M-3, l), normalized so P_l^M(1) = 1.
/// Evaluated through the normalized recurrence, which stays regular at M = 2
/// (Chebyshev limit). Throws when the normalizing binomial vanishes.
inline double jacobi_P_M(int l, int M, double t) {
    if (l < 0) throw DomainError("P_l^M degree must be nonnegative");
    double prev = 1.0;
    if (l == 0) return prev;
    double cur = t;
    for (int j = 1; j < l; ++j) {
        int denom = j + M - 2;
        if (denom == 0) throw DomainError("P_l^M normalization vanishes for this (l, M)");
        double next = (2.0 * (j + (M - 2) / 2.0) * t * cur - j * prev) / denom;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

inline bool is_half_odd(double nu) {
    double twice = 2.0 * nu;
    return std::abs(twice - std::round(twice)) < 1e-12 && static_cast<long long>(std::round(twice)) % 2 != 0;
}

inline bool is_int(double nu) { return std::abs(nu - std::round(nu)) < 1e-12; }

// sum_k (-z/4)^k / (k! Gamma(k+nu+1)), i.e. (t/2)^{-nu} J_nu(t) at z = t^2.
inline long double bessel_reduced_series(double nu, long double z) {
    long double term = 1.0L / std::tgamma(static_cast<long double>(nu) + 1.0L);
    long double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= -z / (4.0L * k * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) && k > 2) break;
    }
    return sum;
}

inline double bessel_half_upward(double nu, double t) {
    double pref = std::sqrt(2.0 / (std::numbers::pi * t));
    double jm = pref * std::cos(t);  // J_{-1/2}
    double j0 = pref * std::sin(t);  // J_{1/2}
    if (nu < 0) return jm;
    double order = 0.5;
    while (order + 0.5 < nu + 1e-9) {
        double next = (2.0 * order / t) * j0 - jm;
        jm = j0;
        j0 = next;
        order += 1.0;
    }
    return j0;
}

// Miller's downward recurrence normalized by J_0 + 2 sum J_2k = 1.
inline double bessel_int_miller(int nu, double t) {
    int start = static_cast<int>(std::max<double>(nu, t)) + 40 + static_cast<int>(std::sqrt(40.0 * std::max<double>(nu, t)));
    if (start % 2) ++start;
    long double jp = 0.0L, j = 1e-30L, norm = 0.0L, want = 0.0L;
    for (int k = start; k > 0; --k) {
        long double jm = (2.0L * k / t) * j - jp;
        jp = j;
        j = jm;
        if (k - 1 == nu) want = j;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0L * j;
        if (std::abs(j) > 1e250L) {
            j *= 1e-250L;
            jp *= 1e-250L;
            norm *= 1e-250L;
            want *= 1e-250L;
        }
    }
    norm += j;
    return static_cast<double>(want / norm);
}

}  // namespace detail

/// J_nu(t) for nu a half-integer >= -1/2 or a nonnegative integer, t >= 0.
inline double bessel_j(double nu, double t) {
    if (t < 0) throw DomainError("bessel_j needs t >= 0");
    bool half_odd = detail::is_half_odd(nu);
    if (!(half_odd || detail::is_int(nu)) || nu < -0.5) throw DomainError("bessel_j order must be a half-integer >= -1/2");
    if (t == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw DomainError("J_{-1/2} is singular at 0");
    }
    if (t < 12.0 || t < nu) {
        long double s = detail::bessel_reduced_series(nu, static_cast<long double>(t) * t);
        return static_cast<double>(s * std::pow(static_cast<long double>(t) / 2.0L, static_cast<long double>(nu)));
    }
    if (half_odd) return detail::bessel_half_upward(nu, t);
    return detail::bessel_int_miller(static_cast<int>(std::round(nu)), t);
}

/// g_nu(z) = z^{-nu/2} J_nu(sqrt z) = t^{-nu} J_nu(t) at z = t^2; analytic in z >= 0.
inline double bessel_kernel(double nu, double z) {
    if (z < 0) throw DomainError("bessel_kernel needs z >= 0");
    double t = std::sqrt(z);
    if (t < 12.0 || t < nu)
        return static_cast<double>(detail::bessel_reduced_series(nu, z) / std::pow(2.0L, static_cast<long double>(nu)));
    return bessel_j(nu, t) / std::pow(t, nu);
}

/// d^p/dz^p g_nu(z) = (-1/2)^p g_{nu+p}(z).
inline double bessel_kernel_derivative(double nu, int p, double z) {
    return std::pow(-0.5, p) * bessel_kernel(nu + p, z);
}

}  // namespace superharm
