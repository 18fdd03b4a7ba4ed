#pragma once
// One-dimensional quadrature: adaptive Gauss-Kronrod with a double-exponential
// fallback when the error estimate misses the tolerance.

#include "superharm/scalar.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>

namespace superharm {

struct QuadratureResult {
    double value = 0;
    double error = 0;
};

inline constexpr double kDefaultQuadTol = 1e-12;

namespace detail {

// Bisection on the 61-point Kronrod rule against an absolute error budget.
// Boost's own adaptive driver uses a tolerance relative to the running
// estimate and subdivides to full depth when the integral vanishes.
inline double gk_bisect(const std::function<double(double)>& f, double a, double b, double budget, int depth, double& error) {
    using boost::math::quadrature::gauss_kronrod;
    double e = 0;
    double v = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0, &e);
    if (depth == 0 || e <= budget || !std::isfinite(v)) {
        error += e;
        return v;
    }
    double mid = (a + b) / 2;
    return gk_bisect(f, a, mid, budget / 2, depth - 1, error) + gk_bisect(f, mid, b, budget / 2, depth - 1, error);
}

}  // namespace detail

/// Integral over [a, b]; b may be +infinity. The error target is
/// tol * max(1, |integral|).
inline QuadratureResult integrate_1d(const std::function<double(double)>& f, double a, double b, double tol = kDefaultQuadTol) {
    std::function<double(double)> g = f;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        // x = a + t/(1-t) on [0, 1)
        g = [&f, a](double t) {
            double s = 1 - t;
            return f(a + t / s) / (s * s);
        };
        lo = 0;
        hi = 1;
    }
    using boost::math::quadrature::gauss_kronrod;
    double e0 = 0;
    double v0 = gauss_kronrod<double, 61>::integrate(g, lo, hi, 0, 0, &e0);
    double budget = tol * std::max(1.0, std::abs(v0));
    QuadratureResult r;
    r.value = detail::gk_bisect(g, lo, hi, budget, 15, r.error);
    double scale = std::max(1.0, std::abs(r.value));
    if (std::isfinite(r.value) && r.error <= tol * scale * 10) return r;
    // fallback
    QuadratureResult alt;
    double l1 = 0;
    try {
        if (std::isinf(b)) {
            boost::math::quadrature::exp_sinh<double> integrator;
            alt.value = integrator.integrate([&](double x) { return f(x + a); }, tol, &alt.error, &l1);
        } else {
            boost::math::quadrature::tanh_sinh<double> integrator;
            alt.value = integrator.integrate(f, a, b, tol, &alt.error, &l1);
        }
    } catch (const std::exception&) {
        return r;
    }
    return alt.error < r.error ? alt : r;
}

inline std::complex<double> integrate_1d_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                                 double tol = kDefaultQuadTol) {
    double re = integrate_1d([&](double x) { return f(x).real(); }, a, b, tol).value;
    double im = integrate_1d([&](double x) { return f(x).imag(); }, a, b, tol).value;
    return {re, im};
}

}  // namespace superharm
