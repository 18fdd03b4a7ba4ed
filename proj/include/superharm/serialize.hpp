#pragma once
// Text form of exact scalars and superpolynomials.
//
//   scalar      2*pi^(1/2) - 1/3*pi^(-1) ; pi ; -3/4
//   polynomial  x1^2 f1 f2 - 1/2*x2 + (1 + pi)*f3 ; copy 2 uses y<i> / fy<j>
//
// The parser accepts any sum of products of numbers, pi powers, variables
// and parenthesized subexpressions (with integer powers). Factors multiply
// in the order written, so "f2 f1" reads as -f1 f2.

#include "superharm/superpoly.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

namespace superharm {

struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string pi_factor(int s) {
    if (s == 2) return "pi";
    Rational e(s, 2);
    return "pi^(" + to_string(e) + ")";
}

// One term q*pi^(s/2) without its leading sign.
inline std::string scalar_term_abs(const Rational& q, int s) {
    Rational a = abs(q);
    if (s == 0) return to_string(a);
    if (a == 1) return pi_factor(s);
    return to_string(a) + "*" + pi_factor(s);
}

}  // namespace detail

inline std::string to_string(const ExactScalar& c) {
    if (c.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, q] : c.terms()) {
        if (first) {
            if (q < 0) out += "-";
        } else {
            out += q < 0 ? " - " : " + ";
        }
        out += detail::scalar_term_abs(q, s);
        first = false;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& c) { return os << to_string(c); }

inline std::string variable_name(const Signature& sig, int copies, int copy, bool fermionic, int index) {
    (void)sig;
    (void)copies;
    if (copy == 0) return (fermionic ? "f" : "x") + std::to_string(index);
    return (fermionic ? "fy" : "y") + std::to_string(index);
}

inline std::string monomial_string(const SuperPolynomial& p, const Monomial& mono) {
    const Signature& sig = p.sig();
    std::string out;
    auto put = [&](const std::string& tok) {
        if (!out.empty()) out += " ";
        out += tok;
    };
    for (int copy = 0; copy < p.copies(); ++copy)
        for (int i = 1; i <= sig.m(); ++i) {
            int e = mono.e[p.boson_slot(i, copy)];
            if (e == 0) continue;
            std::string tok = variable_name(sig, p.copies(), copy, false, i);
            if (e > 1) tok += "^" + std::to_string(e);
            put(tok);
        }
    for (int copy = 0; copy < p.copies(); ++copy)
        for (int j = 1; j <= 2 * sig.n(); ++j)
            if ((mono.f >> p.fermi_bit(j, copy)) & 1) put(variable_name(sig, p.copies(), copy, true, j));
    return out;
}

inline std::string to_string(const SuperPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : p.terms()) {
        std::string m = monomial_string(p, mono);
        bool negative = c.is_single() && c.terms().begin()->second < 0;
        std::string body;
        if (c.is_single()) {
            const auto& [s, q] = *c.terms().begin();
            if (m.empty()) {
                body = detail::scalar_term_abs(q, s);
            } else if (s == 0 && abs(q) == 1) {
                body = m;
            } else {
                body = detail::scalar_term_abs(q, s) + "*" + m;
            }
        } else {
            body = "(" + to_string(c) + ")";
            if (!m.empty()) body += "*" + m;
        }
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += body;
        first = false;
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const SuperPolynomial& p) { return os << to_string(p); }

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, const Signature& sig, int copies) : text_(text), sig_(sig), copies_(copies) {}

    SuperPolynomial parse() {
        SuperPolynomial r = expression();
        skip();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    using P = SuperPolynomial;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    P expression() {
        P r(sig_, copies_);
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        P t = product();
        r = negate ? -t : t;
        for (;;) {
            if (accept('+')) r += product();
            else if (accept('-')) r -= product();
            else break;
        }
        return r;
    }

    bool factor_starts() {
        skip();
        if (pos_ >= text_.size()) return false;
        char c = text_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    P product() {
        P r = power();
        for (;;) {
            if (accept('*')) r = r * power();
            else if (factor_starts()) r = r * power();
            else break;
        }
        return r;
    }

    P power() {
        P base = atom();
        if (accept('^')) {
            long long e = integer();
            if (e < 0) fail("negative powers are not polynomial");
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }

    long long integer() {
        skip();
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
        bool paren = accept('(');
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        long long v = std::stoll(std::string(text_.substr(start, pos_ - start)));
        if (paren && !accept(')')) fail("expected ')'");
        return neg ? -v : v;
    }

    Integer digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    // pi exponent: (p/q) or (p) or bare integer; must be a multiple of 1/2
    int pi_exponent_twice() {
        bool paren = accept('(');
        skip();
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
        skip();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a pi exponent");
        Rational e(digits());
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            e /= Rational(digits());
        }
        if (paren && !accept(')')) fail("expected ')'");
        Rational twice = 2 * e;
        if (!is_integer(twice)) fail("pi exponent must be a multiple of 1/2");
        return static_cast<int>(to_ll(neg ? -twice : twice));
    }

    P atom() {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            P r = expression();
            if (!accept(')')) fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational q(digits());
            if (pos_ + 1 < text_.size() && text_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
                ++pos_;
                Integer d = digits();
                if (d == 0) fail("zero denominator");
                q /= Rational(d);
            }
            return P::constant(sig_, ExactScalar(q), copies_);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "pi") {
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                return P::constant(sig_, ExactScalar::pi_pow(pi_exponent_twice()), copies_);
            }
            return P::constant(sig_, ExactScalar::pi_pow(2), copies_);
        }
        std::size_t num_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (num_start == pos_) fail("unknown symbol '" + name + "'");
        int index = std::stoi(std::string(text_.substr(num_start, pos_ - num_start)));
        int copy = (name == "y" || name == "fy") ? 1 : 0;
        bool fermionic = name == "f" || name == "fy";
        if (name != "x" && name != "y" && name != "f" && name != "fy") fail("unknown variable '" + name + "'");
        if (copy >= copies_) fail("variable of the second copy in a single-copy polynomial");
        if (fermionic) {
            if (index < 1 || index > 2 * sig_.n()) fail("fermionic index out of range");
            return P::fermion(sig_, index, copy, copies_);
        }
        if (index < 1 || index > sig_.m()) fail("bosonic index out of range");
        return P::boson(sig_, index, copy, copies_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Signature sig_;
    int copies_;
};

}  // namespace detail

inline SuperPolynomial parse_polynomial(std::string_view text, const Signature& sig, int copies = 1) {
    return detail::PolyParser(text, sig, copies).parse();
}

inline ExactScalar parse_scalar(std::string_view text) {
    SuperPolynomial p = parse_polynomial(text, Signature(1, 0));
    if (p.degrees().size() > 1 || p.max_degree() > 0) throw ParseError("scalar expected, got a polynomial");
    return constant_term(p);
}

}  // namespace superharm
