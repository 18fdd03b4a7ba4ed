#pragma once
// Exact scalars: finite sums  sum_s q_s * pi^(s/2)  with rational q_s,
// plus exact Gamma / Pochhammer / binomial combinatorics on half-integers.

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace superharm {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

inline Rational half(long long k) { return Rational(k, 2); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// True when q is an integer or an odd multiple of 1/2.
inline bool is_half_integer(const Rational& q) {
    return denominator(q) == 1 || denominator(q) == 2;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline long long to_ll(const Rational& q) {
    if (!is_integer(q)) throw DomainError("rational is not an integer");
    return numerator(q).convert_to<long long>();
}

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational factorial(long long n) {
    if (n < 0) throw DomainError("factorial of a negative integer");
    Integer r = 1;
    for (long long i = 2; i <= n; ++i) r *= i;
    return Rational(r);
}

/// (a)_j = a (a+1) ... (a+j-1); 1 for j = 0.
inline Rational pochhammer(const Rational& a, int j) {
    if (j < 0) throw DomainError("pochhammer with negative length");
    Rational r = 1;
    for (int i = 0; i < j; ++i) r *= a + i;
    return r;
}

/// Generalized binomial a(a-1)...(a-k+1)/k!.
inline Rational binomial(const Rational& a, int k) {
    if (k < 0) return Rational(0);
    Rational r = 1;
    for (int i = 0; i < k; ++i) r *= a - i;
    return r / factorial(k);
}

inline long long binomial_ll(long long a, long long k) {
    if (k < 0 || a < 0 || k > a) return 0;
    return to_ll(binomial(Rational(a), static_cast<int>(k)));
}

class ExactScalar {
public:
    using Terms = std::map<int, Rational>;

    ExactScalar() = default;
    ExactScalar(long long v) { add_term(0, Rational(v)); }  // NOLINT
    ExactScalar(const Rational& q, int s = 0) { add_term(s, q); }  // NOLINT

    static ExactScalar pi_pow(int s) { return ExactScalar(Rational(1), s); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }
    bool is_single() const { return terms_.size() == 1; }

    Rational rational() const {
        if (!is_rational()) throw DomainError("scalar carries a pi power");
        return terms_.empty() ? Rational(0) : terms_.begin()->second;
    }

    /// Coefficient of pi^(s/2).
    Rational coeff(int s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(int s, const Rational& q) {
        if (q == 0) return;
        auto [it, fresh] = terms_.try_emplace(s, q);
        if (!fresh) {
            it->second += q;
            if (it->second == 0) terms_.erase(it);
        }
    }

    double to_double() const {
        long double acc = 0;
        for (const auto& [s, q] : terms_)
            acc += static_cast<long double>(superharm::to_double(q)) *
                   std::pow(std::numbers::pi_v<long double>, static_cast<long double>(s) / 2);
        return static_cast<double>(acc);
    }

    ExactScalar inverse() const {
        if (terms_.size() != 1) throw DomainError("only single-term scalars are invertible");
        const auto& [s, q] = *terms_.begin();
        return ExactScalar(1 / q, -s);
    }

    ExactScalar& operator+=(const ExactScalar& o) {
        for (const auto& [s, q] : o.terms_) add_term(s, q);
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        for (const auto& [s, q] : o.terms_) add_term(s, -q);
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
    ExactScalar& operator*=(const Rational& q) {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [s, c] : terms_) c *= q;
        return *this;
    }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator-(ExactScalar a) {
        for (auto& [s, c] : a.terms_) c = -c;
        return a;
    }
    friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
        ExactScalar r;
        for (const auto& [sa, qa] : a.terms_)
            for (const auto& [sb, qb] : b.terms_) r.add_term(sa + sb, qa * qb);
        return r;
    }
    friend ExactScalar operator*(ExactScalar a, const Rational& q) { return a *= q; }
    friend ExactScalar operator*(const Rational& q, ExactScalar a) { return a *= q; }
    friend ExactScalar operator/(ExactScalar a, const Rational& q) { return a *= Rational(1) / q; }
    friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }
    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

inline bool is_zero(const ExactScalar& c) { return c.is_zero(); }
inline bool is_zero(double c) { return c == 0.0; }
inline bool is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0, 0.0); }
inline double to_double(const ExactScalar& c) { return c.to_double(); }

/// Exact 1/Gamma(z) for half-integer z; zero at the poles z = 0, -1, -2, ...
inline ExactScalar recip_gamma(const Rational& z) {
    if (!is_half_integer(z)) throw DomainError("recip_gamma needs a half-integer argument");
    if (is_integer(z)) {
        if (z <= 0) return {};
        return ExactScalar(1 / factorial(to_ll(z) - 1));
    }
    // Gamma(z) = c(z) sqrt(pi), c(1/2) = 1, c(z+1) = z c(z)
    Rational c = 1;
    Rational w = half(1);
    if (z > w) {
        for (; w < z; w += 1) c *= w;
    } else {
        for (; w > z; w -= 1) c /= (w - 1);
    }
    return ExactScalar(1 / c, -1);
}

inline ExactScalar gamma_exact(const Rational& z) {
    ExactScalar r = recip_gamma(z);
    if (r.is_zero()) throw DomainError("Gamma has a pole at " + to_string(z));
    return r.inverse();
}

/// sigma_M = 2 pi^(M/2) / Gamma(M/2); exactly zero for M in -2N.
inline ExactScalar sphere_area(int M) {
    return ExactScalar(Rational(2), M) * recip_gamma(half(M));
}

/// Values that may be scaled by pi^(s/2) in generic code.
template <class C>
C pi_power(int s) {
    if constexpr (std::is_same_v<C, ExactScalar>) {
        return ExactScalar::pi_pow(s);
    } else {
        return C(std::pow(std::numbers::pi, s / 2.0));
    }
}

}  // namespace superharm
