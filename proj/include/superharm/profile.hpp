#pragma once
// Radial profiles h(u), u = r^2.
//
// RadialFunction is the closed symbolic family
//     sum c * u^beta * (log u)^q * exp(-a u)
// (beta, a rational, q >= 0, c exact), closed under d/du and products.
// Jet carries the derivatives h(u0), h'(u0), ... of an arbitrary profile at
// one point. Both are coefficient rings for superpolynomials whose
// coefficients depend on |x|^2 of the first copy.
//
// Text form of profiles: sums and products of rationals and the atoms
//     u, pow(alpha) = u^(alpha/2), powlog(alpha) = u^(alpha/2) log u, log,
//     exp(a) = exp(-a u), lagexp(j,q,a) = L_j^q(u) exp(-a u), poly([c0,c1,...])

#include "superharm/scalar.hpp"
#include "superharm/serialize.hpp"
#include "superharm/superpoly.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace superharm {

class RadialFunction {
public:
    struct Key {
        Rational beta;
        int q = 0;
        Rational a;
        bool operator==(const Key&) const = default;
        bool operator<(const Key& o) const { return std::tie(a, q, beta) < std::tie(o.a, o.q, o.beta); }
    };
    using Terms = std::map<Key, ExactScalar>;

    RadialFunction() = default;
    RadialFunction(long long c) : RadialFunction(ExactScalar(c)) {}  // NOLINT
    RadialFunction(const ExactScalar& c) { add(Key{0, 0, 0}, c); }  // NOLINT

    static RadialFunction term(const ExactScalar& c, const Rational& beta, int q = 0, const Rational& a = 0) {
        RadialFunction f;
        f.add(Key{beta, q, a}, c);
        return f;
    }
    /// u^beta
    static RadialFunction power(const Rational& beta) { return term(ExactScalar(1), beta); }
    /// u^(alpha/2) = R^alpha
    static RadialFunction pow_half(const Rational& alpha) { return power(alpha / 2); }
    static RadialFunction powlog_half(const Rational& alpha) { return term(ExactScalar(1), alpha / 2, 1); }
    static RadialFunction log() { return term(ExactScalar(1), 0, 1); }
    /// exp(-a u)
    static RadialFunction exp(const Rational& a) { return term(ExactScalar(1), 0, 0, a); }
    /// L_j^q(u) exp(-a u) = sum_i (-1)^i binom(j+q, j-i) u^i / i! exp(-a u)
    static RadialFunction laguerre_exp(int j, const Rational& q, const Rational& a) {
        if (j < 0) throw DomainError("laguerre degree must be nonnegative");
        RadialFunction f;
        for (int i = 0; i <= j; ++i) {
            Rational c = binomial(Rational(j) + q, j - i) / factorial(i);
            if (i % 2) c = -c;
            f.add(Key{Rational(i), 0, a}, ExactScalar(c));
        }
        return f;
    }
    static RadialFunction polynomial(const std::vector<Rational>& coeffs) {
        RadialFunction f;
        for (std::size_t i = 0; i < coeffs.size(); ++i) f.add(Key{Rational(static_cast<long long>(i)), 0, 0}, ExactScalar(coeffs[i]));
        return f;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& k, const ExactScalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RadialFunction d_du() const {
        RadialFunction r;
        for (const auto& [k, c] : terms_) {
            if (k.beta != 0) r.add(Key{k.beta - 1, k.q, k.a}, c * k.beta);
            if (k.q > 0) r.add(Key{k.beta - 1, k.q - 1, k.a}, c * Rational(k.q));
            if (k.a != 0) r.add(Key{k.beta, k.q, k.a}, c * (-k.a));
        }
        return r;
    }
    RadialFunction derivative(int j) const {
        RadialFunction r = *this;
        for (int i = 0; i < j; ++i) r = r.d_du();
        return r;
    }
    RadialFunction times_u() const {
        RadialFunction r;
        for (const auto& [k, c] : terms_) r.add(Key{k.beta + 1, k.q, k.a}, c);
        return r;
    }

    double eval(double u) const {
        long double acc = 0;
        long double lu = u > 0 ? std::log(static_cast<long double>(u)) : 0;
        for (const auto& [k, c] : terms_) {
            long double t = c.to_double();
            if (k.beta != 0) {
                if (u == 0) {
                    if (k.beta > 0) continue;
                    throw DomainError("profile is singular at u = 0");
                }
                t *= std::pow(static_cast<long double>(u), static_cast<long double>(superharm::to_double(k.beta)));
            }
            if (k.q > 0) {
                if (u == 0) {
                    if (k.beta > 0) continue;
                    throw DomainError("profile is singular at u = 0");
                }
                t *= std::pow(lu, static_cast<long double>(k.q));
            }
            if (k.a != 0) t *= std::exp(-static_cast<long double>(superharm::to_double(k.a)) * u);
            acc += t;
        }
        return static_cast<double>(acc);
    }

    /// Exact h(1) when no transcendental exp(-a) survives.
    std::optional<ExactScalar> value_at_one() const {
        ExactScalar r;
        for (const auto& [k, c] : terms_) {
            if (k.q > 0) continue;
            if (k.a != 0) return std::nullopt;
            r += c;
        }
        return r;
    }
    /// Exact h(0) when the profile is regular there.
    std::optional<ExactScalar> value_at_zero() const {
        ExactScalar r;
        for (const auto& [k, c] : terms_) {
            if (k.beta > 0) continue;
            if (k.beta < 0 || k.q > 0) return std::nullopt;
            r += c;
        }
        return r;
    }

    /// Polynomial in u (nonnegative integer powers, no log / exp).
    bool is_polynomial() const {
        for (const auto& [k, c] : terms_)
            if (k.q != 0 || k.a != 0 || !is_integer(k.beta) || k.beta < 0) return false;
        return true;
    }
    /// exp(-a u) with a > 0 in every term.
    bool decays_exponentially() const {
        if (terms_.empty()) return true;
        for (const auto& [k, c] : terms_)
            if (k.a <= 0) return false;
        return true;
    }

    RadialFunction& operator+=(const RadialFunction& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    RadialFunction& operator-=(const RadialFunction& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    friend RadialFunction operator+(RadialFunction a, const RadialFunction& b) { return a += b; }
    friend RadialFunction operator-(RadialFunction a, const RadialFunction& b) { return a -= b; }
    friend RadialFunction operator-(const RadialFunction& a) {
        RadialFunction r;
        for (const auto& [k, c] : a.terms_) r.add(k, -c);
        return r;
    }
    friend RadialFunction operator*(const RadialFunction& a, const RadialFunction& b) {
        RadialFunction r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add(Key{ka.beta + kb.beta, ka.q + kb.q, ka.a + kb.a}, ca * cb);
        return r;
    }
    friend bool operator==(const RadialFunction& a, const RadialFunction& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

inline bool is_zero(const RadialFunction& f) { return f.is_zero(); }

inline std::string to_string(const RadialFunction& f);

template <>
struct radial_coeff<RadialFunction> {
    static constexpr bool value = true;
    static RadialFunction d_du(const RadialFunction& c) { return c.d_du(); }
    static double eval(const RadialFunction& c, double u) { return c.eval(u); }
};

/// Derivatives h(u0), h'(u0), ..., h^(J)(u0). A scalar jet stands for a
/// constant function and has derivatives of every order.
class Jet {
public:
    Jet() : d_{0.0}, scalar_(true) {}
    Jet(double c) : d_{c}, scalar_(true) {}  // NOLINT
    Jet(long long c) : Jet(static_cast<double>(c)) {}  // NOLINT
    Jet(int c) : Jet(static_cast<double>(c)) {}  // NOLINT
    Jet(std::vector<double> derivs) : d_(std::move(derivs)), scalar_(false) {
        if (d_.empty()) throw std::invalid_argument("empty jet");
    }

    bool scalar() const { return scalar_; }
    std::size_t order() const { return d_.size() - 1; }
    double value() const { return d_[0]; }
    double operator[](std::size_t j) const {
        if (scalar_) return j == 0 ? d_[0] : 0.0;
        if (j >= d_.size()) throw DomainError("jet order exceeded");
        return d_[j];
    }
    bool is_zero() const {
        for (double v : d_)
            if (v != 0.0) return false;
        return true;
    }

    Jet d_du() const {
        if (scalar_) return Jet(0.0);
        if (d_.size() == 1) throw DomainError("jet order exceeded");
        return Jet(std::vector<double>(d_.begin() + 1, d_.end()));
    }

    Jet& operator+=(const Jet& o) { return *this = combine(*this, o, 1.0); }
    Jet& operator-=(const Jet& o) { return *this = combine(*this, o, -1.0); }
    friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, 1.0); }
    friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, -1.0); }
    friend Jet operator-(const Jet& a) { return combine(Jet(0.0), a, -1.0); }
    friend Jet operator*(const Jet& a, const Jet& b) {
        if (a.scalar_ && b.scalar_) return Jet(a.d_[0] * b.d_[0]);
        if (a.scalar_ || b.scalar_) {
            const Jet& s = a.scalar_ ? a : b;
            Jet r = a.scalar_ ? b : a;
            for (double& v : r.d_) v *= s.d_[0];
            return r;
        }
        std::size_t n = std::min(a.d_.size(), b.d_.size());
        std::vector<double> out(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double binom = 1.0;
            for (std::size_t i = 0; i <= j; ++i) {
                out[j] += binom * a.d_[i] * b.d_[j - i];
                binom = binom * static_cast<double>(j - i) / static_cast<double>(i + 1);
            }
        }
        return Jet(std::move(out));
    }

private:
    static Jet combine(const Jet& a, const Jet& b, double sb) {
        if (a.scalar_ && b.scalar_) return Jet(a.d_[0] + sb * b.d_[0]);
        std::size_t n = SIZE_MAX;
        if (!a.scalar_) n = std::min(n, a.d_.size());
        if (!b.scalar_) n = std::min(n, b.d_.size());
        std::vector<double> out(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) out[j] = a[j] + sb * b[j];
        return Jet(std::move(out));
    }

    std::vector<double> d_;
    bool scalar_;
};

inline bool is_zero(const Jet& j) { return j.is_zero(); }

template <>
struct radial_coeff<Jet> {
    static constexpr bool value = true;
    static Jet d_du(const Jet& c) { return c.d_du(); }
    static double eval(const Jet& c, double) { return c.value(); }
};

enum class Decay { none, power, exponential };

/// A profile with derivative access. Symbolic profiles differentiate exactly;
/// numeric profiles supply derivatives up to a declared order.
class RadialProfile {
public:
    using Evaluator = std::function<double(int, double)>;

    RadialProfile(RadialFunction f, std::string name = {}) : symbolic_(std::move(f)), j_max_(kSymbolicOrder) {
        name_ = name.empty() ? to_string(*symbolic_) : std::move(name);
        decay_ = symbolic_->decays_exponentially() ? Decay::exponential : Decay::none;
    }
    RadialProfile(Evaluator eval, int j_max, Decay decay, std::string name)
        : eval_(std::move(eval)), j_max_(j_max), decay_(decay), name_(std::move(name)) {}

    static constexpr int kSymbolicOrder = 64;

    bool is_symbolic() const { return symbolic_.has_value(); }
    const RadialFunction& symbolic() const {
        if (!symbolic_) throw DomainError("profile has no symbolic form");
        return *symbolic_;
    }
    int j_max() const { return j_max_; }
    Decay decay() const { return decay_; }
    const std::string& name() const { return name_; }

    void require_order(int j) const {
        if (j > j_max_) throw DomainError("profile '" + name_ + "' has derivatives only up to order " + std::to_string(j_max_));
    }

    double derivative(int j, double u) const {
        require_order(j);
        if (symbolic_) return symbolic_->derivative(j).eval(u);
        return eval_(j, u);
    }
    double operator()(double u) const { return derivative(0, u); }

    Jet jet(double u, int order) const {
        require_order(order);
        std::vector<double> d(order + 1);
        if (symbolic_) {
            RadialFunction f = *symbolic_;
            for (int j = 0; j <= order; ++j) {
                d[j] = f.eval(u);
                if (j < order) f = f.d_du();
            }
        } else {
            for (int j = 0; j <= order; ++j) d[j] = eval_(j, u);
        }
        return Jet(std::move(d));
    }

private:
    std::optional<RadialFunction> symbolic_;
    Evaluator eval_;
    int j_max_;
    Decay decay_ = Decay::none;
    std::string name_;
};

// ---- text form --------------------------------------------------------------

namespace detail {

inline std::string rational_arg(const Rational& q) { return to_string(q); }

inline std::string radial_term_string(const RadialFunction::Key& k) {
    std::vector<std::string> factors;
    if (k.beta != 0 || k.q > 0) {
        Rational alpha = 2 * k.beta;
        if (k.q == 0) factors.push_back("pow(" + rational_arg(alpha) + ")");
        else factors.push_back("powlog(" + rational_arg(alpha) + ")");
        if (k.q > 1) factors.push_back("log^" + std::to_string(k.q - 1));
    }
    if (k.a != 0) factors.push_back("exp(" + rational_arg(k.a) + ")");
    std::string out;
    for (const auto& f : factors) out += (out.empty() ? "" : "*") + f;
    return out;
}

}  // namespace detail

inline std::string to_string(const RadialFunction& f) {
    if (f.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : f.terms()) {
        std::string atom = detail::radial_term_string(k);
        bool negative = c.is_single() && c.terms().begin()->second < 0;
        std::string body;
        if (c.is_single()) {
            const auto& [s, q] = *c.terms().begin();
            if (atom.empty()) body = detail::scalar_term_abs(q, s);
            else if (s == 0 && abs(q) == 1) body = atom;
            else body = detail::scalar_term_abs(q, s) + "*" + atom;
        } else {
            body = "(" + to_string(c) + ")";
            if (!atom.empty()) body += "*" + atom;
        }
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
        out += body;
        first = false;
    }
    return out;
}

namespace detail {

class ProfileParser {
public:
    explicit ProfileParser(std::string_view text) : text_(text) {}

    RadialFunction parse() {
        RadialFunction r = expression();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at position " + std::to_string(pos_) + " in profile '" + std::string(text_) + "'");
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    RadialFunction expression() {
        bool negate = accept('-');
        if (!negate) accept('+');
        RadialFunction r = product();
        if (negate) r = -r;
        for (;;) {
            if (accept('+')) r += product();
            else if (accept('-')) r -= product();
            else break;
        }
        return r;
    }
    RadialFunction product() {
        RadialFunction r = power();
        while (accept('*')) r = r * power();
        return r;
    }
    RadialFunction power() {
        RadialFunction base = atom();
        if (accept('^')) {
            Rational e = rational();
            if (!is_integer(e) || e < 0) fail("only nonnegative integer powers of profile terms");
            RadialFunction r(1);
            for (long long i = 0; i < to_ll(e); ++i) r = r * base;
            return r;
        }
        return base;
    }

    Rational rational() {
        skip();
        bool paren = accept('(');
        skip();
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        Rational q(Integer(std::string(text_.substr(start, pos_ - start))));
        if (pos_ < text_.size() && text_[pos_] == '.') fail("use rationals p/q, not decimals");
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            std::size_t ds = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            Integer d(std::string(text_.substr(ds, pos_ - ds)));
            if (d == 0) fail("zero denominator");
            q /= Rational(d);
        }
        if (paren) expect(')');
        return neg ? Rational(-q) : q;
    }

    RadialFunction atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            RadialFunction r = expression();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return RadialFunction(ExactScalar(rational()));
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "u") return RadialFunction::power(1);
        if (name == "log") return RadialFunction::log();
        if (name == "pi") return RadialFunction(ExactScalar::pi_pow(2));
        if (name == "pow" || name == "powlog" || name == "exp") {
            expect('(');
            Rational v = rational();
            expect(')');
            if (name == "pow") return RadialFunction::pow_half(v);
            if (name == "powlog") return RadialFunction::powlog_half(v);
            return RadialFunction::exp(v);
        }
        if (name == "lagexp") {
            expect('(');
            Rational j = rational();
            expect(',');
            Rational q = rational();
            expect(',');
            Rational a = rational();
            expect(')');
            if (!is_integer(j) || j < 0) fail("laguerre degree must be a nonnegative integer");
            return RadialFunction::laguerre_exp(static_cast<int>(to_ll(j)), q, a);
        }
        if (name == "poly") {
            expect('(');
            expect('[');
            std::vector<Rational> cs;
            if (!accept(']')) {
                do cs.push_back(rational());
                while (accept(','));
                expect(']');
            }
            expect(')');
            return RadialFunction::polynomial(cs);
        }
        fail("unknown profile atom '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline std::ostream& operator<<(std::ostream& os, const RadialFunction& f) { return os << to_string(f); }

inline RadialFunction parse_profile(std::string_view text) { return detail::ProfileParser(text).parse(); }

// ---- superfunctions with radial coefficients ---------------------------------

using RadialSuperPoly = BasicSuperPoly<RadialFunction>;
using JetSuperPoly = BasicSuperPoly<Jet>;

/// Canonical form for radial coefficients on one copy: every x_m^2 is
/// rewritten as u - x_1^2 - ... - x_{m-1}^2 so that identities holding only
/// modulo r^2 = u become structural equalities.
template <class C>
BasicSuperPoly<C> reduce_radial(const BasicSuperPoly<C>& f) {
    static_assert(radial_coeff<C>::value);
    const Signature& sig = f.sig();
    if (f.copies() != 1) throw std::invalid_argument("radial coefficients live on a single copy");
    int last = sig.m() - 1;
    BasicSuperPoly<C> done(sig);
    BasicSuperPoly<C> work = f;
    while (!work.is_zero()) {
        BasicSuperPoly<C> next(sig);
        for (const auto& [mono, c] : work.terms()) {
            if (mono.e[last] < 2) {
                done.add(mono, c);
                continue;
            }
            Monomial base = mono;
            base.e[last] -= 2;
            if constexpr (std::is_same_v<C, RadialFunction>) {
                next.add(base, c.times_u());
            } else {
                throw DomainError("jet coefficients cannot absorb u");
            }
            for (int i = 0; i < last; ++i) {
                Monomial t = base;
                t.e[i] += 2;
                next.add(t, -c);
            }
        }
        work = next;
    }
    return done;
}

inline bool radial_equal(const RadialSuperPoly& a, const RadialSuperPoly& b) { return reduce_radial(a - b).is_zero(); }

/// h(R^2) = sum_j (-1)^j x`^{2j}/j! h^{(j)}(r^2) with symbolic coefficients.
inline RadialSuperPoly radial_superfunction(const RadialFunction& h, const Signature& sig) {
    RadialSuperPoly r(sig);
    RadialFunction dh = h;
    BasicSuperPoly<RadialFunction> xsq(sig);
    for (int j = 1; j <= sig.n(); ++j)
        xsq += RadialSuperPoly::fermion(sig, 2 * j - 1) * RadialSuperPoly::fermion(sig, 2 * j);
    RadialSuperPoly power = RadialSuperPoly::constant(sig, RadialFunction(1));
    for (int j = 0; j <= sig.n(); ++j) {
        Rational c = Rational(j % 2 ? -1 : 1) / factorial(j);
        r += power * (dh * RadialFunction(ExactScalar(c)));
        power = power * xsq;
        dh = dh.d_du();
    }
    return r;
}

/// The same expansion with numeric derivatives at u0 (jets of the given order).
inline JetSuperPoly radial_superfunction_jet(const RadialProfile& h, const Signature& sig, double u0, int order) {
    h.require_order(order);
    JetSuperPoly r(sig);
    JetSuperPoly xsq(sig);
    for (int j = 1; j <= sig.n(); ++j) xsq += JetSuperPoly::fermion(sig, 2 * j - 1) * JetSuperPoly::fermion(sig, 2 * j);
    JetSuperPoly power = JetSuperPoly::constant(sig, Jet(1.0));
    double fact = 1.0;
    for (int j = 0; j <= sig.n(); ++j) {
        if (j > 0) fact *= j;
        std::vector<double> d(order - j + 1);
        for (int i = 0; i <= order - j; ++i) d[i] = h.derivative(i + j, u0);
        r += power * (Jet(std::move(d)) * Jet((j % 2 ? -1.0 : 1.0) / fact));
        power = power * xsq;
    }
    return r;
}

/// Embeds an exact polynomial into a radial coefficient ring.
template <class C>
BasicSuperPoly<C> lift(const SuperPolynomial& p) {
    return p.map_coeffs([](const ExactScalar& c) {
        if constexpr (std::is_same_v<C, RadialFunction>) return RadialFunction(c);
        else return C(c.to_double());
    });
}

/// Radial coefficients that are constants become exact scalars; throws otherwise.
inline SuperPolynomial lower_to_exact(const RadialSuperPoly& f) {
    RadialSuperPoly g = reduce_radial(f);
    SuperPolynomial out(f.sig());
    for (const auto& [mono, c] : g.terms()) {
        if (!c.is_polynomial()) throw DomainError("coefficient is not polynomial in u");
        // a polynomial in u = r^2 becomes a polynomial in x
        SuperPolynomial r2(f.sig());
        for (int i = 1; i <= f.sig().m(); ++i) {
            SuperPolynomial x = SuperPolynomial::boson(f.sig(), i);
            r2 += x * x;
        }
        SuperPolynomial mono_poly(f.sig());
        mono_poly.add(mono, ExactScalar(1));
        for (const auto& [k, coef] : c.terms()) out += mono_poly * r2.pow(static_cast<int>(to_ll(k.beta))) * coef;
    }
    return out;
}

}  // namespace superharm
