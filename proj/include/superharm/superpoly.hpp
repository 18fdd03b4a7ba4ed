#pragma once
// Superpolynomials in R[x_1..x_m] (x) Lambda_{2n} and the orthosymplectic
// operators acting on them.
//
// Supervector indices k are 1-based: k <= m is bosonic, k = m+1..m+2n is
// fermionic. A polynomial may live on one or two copies of the superspace
// (variables x and y); bosonic slot c*m + (i-1) and fermionic bit
// c*2n + (j-1) belong to copy c. The coefficient ring C is ExactScalar by
// default; double / complex rings are used by numeric checks, and radial
// coefficient rings (functions of u = r^2 on copy 0) by the radial module.

#include "superharm/grassmann.hpp"
#include "superharm/scalar.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace superharm {

struct Caps {
    int max_degree = 12;  // per copy
    int max_m = 6;
    int max_n = 3;
};

inline constexpr int kMaxBosonSlots = 12;

class Signature {
public:
    Signature(int m, int n, const Caps& caps = Caps{}) : m_(m), n_(n), caps_(caps) {
        if (m < 1) throw std::invalid_argument("signature needs m >= 1");
        if (n < 0) throw std::invalid_argument("signature needs n >= 0");
        if (m > caps.max_m || n > caps.max_n) throw std::invalid_argument("signature exceeds configured caps");
        if (2 * m > kMaxBosonSlots || 4 * n > kMaxGenerators) throw std::invalid_argument("signature exceeds representation");
    }

    int m() const { return m_; }
    int n() const { return n_; }
    int M() const { return m_ - 2 * n_; }
    int dim() const { return m_ + 2 * n_; }
    const Caps& caps() const { return caps_; }

    /// M in {0, -2, -4, ...}: the degenerate super-dimensions.
    bool degenerate() const { return M() <= 0 && M() % 2 == 0; }

    /// [k]: 0 for bosonic, 1 for fermionic components.
    int parity(int k) const {
        check_index(k);
        return k > m_ ? 1 : 0;
    }

    /// g^{ij}.
    Rational metric(int i, int j) const {
        check_index(i);
        check_index(j);
        if (i <= m_ || j <= m_) return i == j && i <= m_ ? Rational(1) : Rational(0);
        int a = i - m_, b = j - m_;
        if (a % 2 == 1 && b == a + 1) return Rational(-1, 2);
        if (a % 2 == 0 && b == a - 1) return Rational(1, 2);
        return 0;
    }

    void check_index(int k) const {
        if (k < 1 || k > dim()) throw std::out_of_range("supervector index out of range");
    }

    friend bool operator==(const Signature& a, const Signature& b) { return a.m_ == b.m_ && a.n_ == b.n_; }

private:
    int m_;
    int n_;
    Caps caps_;
};

struct Monomial {
    std::array<std::uint8_t, kMaxBosonSlots> e{};
    FermiMask f = 0;

    int boson_degree() const {
        int d = 0;
        for (auto v : e) d += v;
        return d;
    }
    int degree() const { return boson_degree() + std::popcount(f); }
    bool operator==(const Monomial&) const = default;
    // graded, then x1 before x2 (so x1^2 < x1 x2 < x2^2), then fermionic mask
    std::strong_ordering operator<=>(const Monomial& o) const {
        if (auto c = degree() <=> o.degree(); c != 0) return c;
        for (int s = 0; s < kMaxBosonSlots; ++s)
            if (e[s] != o.e[s]) return o.e[s] <=> e[s];
        return f <=> o.f;
    }
};

/// Coefficient rings that are functions of u = |x|^2 on copy 0 specialize
/// this with `value = true`, `d_du(c)` and `eval(c, u)`.
template <class C>
struct radial_coeff {
    static constexpr bool value = false;
};

template <class C>
C from_exact(const ExactScalar& s) {
    if constexpr (std::is_same_v<C, ExactScalar>) {
        return s;
    } else {
        return C(s.to_double());
    }
}

namespace detail {
// unqualified so that coefficient types declared later are found by ADL
template <class C>
bool coeff_is_zero(const C& c) {
    return is_zero(c);
}
}  // namespace detail

template <class C>
class BasicSuperPoly {
public:
    using Terms = std::map<Monomial, C>;

    explicit BasicSuperPoly(const Signature& sig, int copies = 1) : sig_(sig), copies_(copies) {
        if (copies < 1 || copies > 2) throw std::invalid_argument("one or two superspace copies supported");
    }

    static BasicSuperPoly constant(const Signature& sig, const C& c, int copies = 1) {
        BasicSuperPoly p(sig, copies);
        p.add(Monomial{}, c);
        return p;
    }
    /// x_i on the given copy.
    static BasicSuperPoly boson(const Signature& sig, int i, int copy = 0, int copies = 1) {
        if (i < 1 || i > sig.m()) throw std::out_of_range("bosonic index out of range");
        BasicSuperPoly p(sig, copies);
        Monomial mono;
        mono.e[p.boson_slot(i, copy)] = 1;
        p.add(mono, C(1));
        return p;
    }
    /// x`_j on the given copy.
    static BasicSuperPoly fermion(const Signature& sig, int j, int copy = 0, int copies = 1) {
        if (j < 1 || j > 2 * sig.n()) throw std::out_of_range("fermionic index out of range");
        BasicSuperPoly p(sig, copies);
        Monomial mono;
        mono.f = FermiMask{1} << p.fermi_bit(j, copy);
        p.add(mono, C(1));
        return p;
    }
    /// X_k, lower index.
    static BasicSuperPoly coordinate(const Signature& sig, int k, int copy = 0, int copies = 1) {
        sig.check_index(k);
        return k <= sig.m() ? boson(sig, k, copy, copies) : fermion(sig, k - sig.m(), copy, copies);
    }
    /// X^k = sum_i X_i g^{ik}.
    static BasicSuperPoly raised_coordinate(const Signature& sig, int k, int copy = 0, int copies = 1) {
        BasicSuperPoly p(sig, copies);
        for (int i = 1; i <= sig.dim(); ++i) {
            Rational g = sig.metric(i, k);
            if (g != 0) p += coordinate(sig, i, copy, copies) * from_exact<C>(ExactScalar(g));
        }
        return p;
    }

    const Signature& sig() const { return sig_; }
    int copies() const { return copies_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    int boson_slot(int i, int copy) const {
        check_copy(copy);
        return copy * sig_.m() + i - 1;
    }
    int fermi_bit(int j, int copy) const {
        check_copy(copy);
        return copy * 2 * sig_.n() + j - 1;
    }
    int fermi_generators() const { return copies_ * 2 * sig_.n(); }

    /// Degree of a monomial in the variables of one copy.
    int copy_degree(const Monomial& mono, int copy) const {
        int d = 0;
        for (int i = 1; i <= sig_.m(); ++i) d += mono.e[boson_slot(i, copy)];
        for (int j = 1; j <= 2 * sig_.n(); ++j) d += (mono.f >> fermi_bit(j, copy)) & 1;
        return d;
    }

    C coeff(const Monomial& mono) const {
        auto it = terms_.find(mono);
        return it == terms_.end() ? C{} : it->second;
    }

    void add(const Monomial& mono, const C& c) {
        if (detail::coeff_is_zero(c)) return;
        for (int copy = 0; copy < copies_; ++copy)
            if (copy_degree(mono, copy) > sig_.caps().max_degree)
                throw std::length_error("polynomial degree exceeds configured cap");
        auto [it, fresh] = terms_.try_emplace(mono, c);
        if (!fresh) {
            it->second += c;
            if (detail::coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    int max_degree() const {
        int d = -1;
        for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
        return d;
    }
    std::set<int> degrees() const {
        std::set<int> r;
        for (const auto& [mono, c] : terms_) r.insert(mono.degree());
        return r;
    }
    BasicSuperPoly homogeneous_part(int d) const {
        BasicSuperPoly r(sig_, copies_);
        for (const auto& [mono, c] : terms_)
            if (mono.degree() == d) r.terms_.emplace(mono, c);
        return r;
    }
    bool is_homogeneous() const { return degrees().size() <= 1; }

    BasicSuperPoly parity_part(bool odd) const {
        BasicSuperPoly r(sig_, copies_);
        for (const auto& [mono, c] : terms_)
            if ((std::popcount(mono.f) & 1) == static_cast<int>(odd)) r.terms_.emplace(mono, c);
        return r;
    }

    template <class F>
    auto map_coeffs(F&& fn) const {
        using D = std::decay_t<decltype(fn(std::declval<C>()))>;
        BasicSuperPoly<D> r(sig_, copies_);
        for (const auto& [mono, c] : terms_) r.add(mono, fn(c));
        return r;
    }

    BasicSuperPoly& operator+=(const BasicSuperPoly& o) {
        check(o);
        for (const auto& [mono, c] : o.terms_) add(mono, c);
        return *this;
    }
    BasicSuperPoly& operator-=(const BasicSuperPoly& o) {
        check(o);
        for (const auto& [mono, c] : o.terms_) add(mono, -c);
        return *this;
    }
    friend BasicSuperPoly operator+(BasicSuperPoly a, const BasicSuperPoly& b) { return a += b; }
    friend BasicSuperPoly operator-(BasicSuperPoly a, const BasicSuperPoly& b) { return a -= b; }
    friend BasicSuperPoly operator-(const BasicSuperPoly& a) {
        BasicSuperPoly r(a.sig_, a.copies_);
        for (const auto& [mono, c] : a.terms_) r.terms_.emplace(mono, -c);
        return r;
    }
    friend BasicSuperPoly operator*(const BasicSuperPoly& a, const BasicSuperPoly& b) {
        a.check(b);
        BasicSuperPoly r(a.sig_, a.copies_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                if (ma.f & mb.f) continue;
                Monomial mono;
                for (int s = 0; s < kMaxBosonSlots; ++s) mono.e[s] = static_cast<std::uint8_t>(ma.e[s] + mb.e[s]);
                mono.f = ma.f | mb.f;
                C c = ca * cb;
                if (mask_product_sign(ma.f, mb.f) < 0) c = -c;
                r.add(mono, c);
            }
        return r;
    }
    friend BasicSuperPoly operator*(const BasicSuperPoly& a, const C& s) {
        BasicSuperPoly r(a.sig_, a.copies_);
        for (const auto& [mono, c] : a.terms_) r.add(mono, c * s);
        return r;
    }
    friend BasicSuperPoly operator*(const C& s, const BasicSuperPoly& a) { return a * s; }
    friend bool operator==(const BasicSuperPoly& a, const BasicSuperPoly& b) {
        return a.sig_ == b.sig_ && a.copies_ == b.copies_ && a.terms_ == b.terms_;
    }

    BasicSuperPoly pow(int k) const {
        BasicSuperPoly r = constant(sig_, C(1), copies_);
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    void check(const BasicSuperPoly& o) const {
        if (!(o.sig_ == sig_) || o.copies_ != copies_) throw std::invalid_argument("mismatched superspaces");
    }
    void check_copy(int copy) const {
        if (copy < 0 || copy >= copies_) throw std::out_of_range("superspace copy out of range");
    }

private:
    Signature sig_;
    int copies_;
    Terms terms_;
};

using SuperPolynomial = BasicSuperPoly<ExactScalar>;

// ---- derivatives -----------------------------------------------------------

/// d/dx_i on the given copy. For radial coefficient rings the chain rule
/// d/dx_i q(|x|^2) = 2 x_i q'(|x|^2) is applied on copy 0.
template <class C>
BasicSuperPoly<C> d_boson(int i, const BasicSuperPoly<C>& f, int copy = 0) {
    if (i < 1 || i > f.sig().m()) throw std::out_of_range("bosonic index out of range");
    int slot = f.boson_slot(i, copy);
    BasicSuperPoly<C> r(f.sig(), f.copies());
    for (const auto& [mono, c] : f.terms()) {
        if (mono.e[slot] > 0) {
            Monomial lower = mono;
            --lower.e[slot];
            r.add(lower, c * C(static_cast<long long>(mono.e[slot])));
        }
        if constexpr (radial_coeff<C>::value) {
            if (copy == 0) {
                C dc = radial_coeff<C>::d_du(c);
                if (!detail::coeff_is_zero(dc)) {
                    Monomial upper = mono;
                    ++upper.e[slot];
                    r.add(upper, dc * C(2));
                }
            }
        }
    }
    return r;
}

/// Left derivative d/dx`_j on the given copy.
template <class C>
BasicSuperPoly<C> d_fermion(int j, const BasicSuperPoly<C>& f, int copy = 0) {
    if (j < 1 || j > 2 * f.sig().n()) throw std::out_of_range("fermionic index out of range");
    int bit = f.fermi_bit(j, copy);
    FermiMask b = FermiMask{1} << bit;
    BasicSuperPoly<C> r(f.sig(), f.copies());
    for (const auto& [mono, c] : f.terms()) {
        if (!(mono.f & b)) continue;
        Monomial lower = mono;
        lower.f &= ~b;
        r.add(lower, mask_derivative_sign(mono.f, bit) < 0 ? C(-c) : c);
    }
    return r;
}

/// d/dX_k (plain partial derivative in the k-th coordinate).
template <class C>
BasicSuperPoly<C> d_coordinate(int k, const BasicSuperPoly<C>& f, int copy = 0) {
    f.sig().check_index(k);
    int m = f.sig().m();
    return k <= m ? d_boson(k, f, copy) : d_fermion(k - m, f, copy);
}

/// nabla_k = d/dX^k (lower index): 2 d/dx`_{2i} in slot m+2i-1, -2 d/dx`_{2i-1} in slot m+2i.
template <class C>
BasicSuperPoly<C> grad_lower(int k, const BasicSuperPoly<C>& f, int copy = 0) {
    f.sig().check_index(k);
    int m = f.sig().m();
    if (k <= m) return d_boson(k, f, copy);
    int a = k - m;
    if (a % 2 == 1) return d_fermion(a + 1, f, copy) * C(2);
    return d_fermion(a - 1, f, copy) * C(-2);
}

/// nabla^k = (-1)^{[k]} d/dX_k.
template <class C>
BasicSuperPoly<C> grad_upper(int k, const BasicSuperPoly<C>& f, int copy = 0) {
    f.sig().check_index(k);
    if (k <= f.sig().m()) return d_boson(k, f, copy);
    return -d_fermion(k - f.sig().m(), f, copy);
}

template <class C>
std::vector<BasicSuperPoly<C>> gradient(const BasicSuperPoly<C>& f, int copy = 0) {
    std::vector<BasicSuperPoly<C>> r;
    for (int k = 1; k <= f.sig().dim(); ++k) r.push_back(grad_lower(k, f, copy));
    return r;
}

template <class C>
std::vector<BasicSuperPoly<C>> gradient_upper(const BasicSuperPoly<C>& f, int copy = 0) {
    std::vector<BasicSuperPoly<C>> r;
    for (int k = 1; k <= f.sig().dim(); ++k) r.push_back(grad_upper(k, f, copy));
    return r;
}

/// nabla^2 = sum_k nabla^k nabla_k.
template <class C>
BasicSuperPoly<C> laplacian(const BasicSuperPoly<C>& f, int copy = 0) {
    BasicSuperPoly<C> r(f.sig(), f.copies());
    for (int i = 1; i <= f.sig().m(); ++i) r += d_boson(i, d_boson(i, f, copy), copy);
    for (int j = 1; j <= f.sig().n(); ++j)
        r -= d_fermion(2 * j - 1, d_fermion(2 * j, f, copy), copy) * C(4);
    return r;
}

template <class C>
BasicSuperPoly<C> laplacian_pow(const BasicSuperPoly<C>& f, int k, int copy = 0) {
    BasicSuperPoly<C> r = f;
    for (int i = 0; i < k && !r.is_zero(); ++i) r = laplacian(r, copy);
    return r;
}

/// Left multiplication by X_k.
template <class C>
BasicSuperPoly<C> mul_coordinate(int k, const BasicSuperPoly<C>& f, int copy = 0) {
    return BasicSuperPoly<C>::coordinate(f.sig(), k, copy, f.copies()) * f;
}

/// Left multiplication by X^k.
template <class C>
BasicSuperPoly<C> mul_raised(int k, const BasicSuperPoly<C>& f, int copy = 0) {
    return BasicSuperPoly<C>::raised_coordinate(f.sig(), k, copy, f.copies()) * f;
}

/// E = sum_i x_i d/dx_i + sum_j x`_j d/dx`_j.
template <class C>
BasicSuperPoly<C> euler(const BasicSuperPoly<C>& f, int copy = 0) {
    if constexpr (!radial_coeff<C>::value) {
        BasicSuperPoly<C> r(f.sig(), f.copies());
        for (const auto& [mono, c] : f.terms())
            r.add(mono, c * C(static_cast<long long>(f.copy_degree(mono, copy))));
        return r;
    } else {
        BasicSuperPoly<C> r(f.sig(), f.copies());
        for (int k = 1; k <= f.sig().dim(); ++k) r += mul_coordinate(k, d_coordinate(k, f, copy), copy);
        return r;
    }
}

/// R^2 = sum x_i^2 - sum_j x`_{2j-1} x`_{2j} on the given copy.
template <class C = ExactScalar>
BasicSuperPoly<C> norm_squared(const Signature& sig, int copy = 0, int copies = 1) {
    using P = BasicSuperPoly<C>;
    P r(sig, copies);
    for (int i = 1; i <= sig.m(); ++i) {
        P x = P::boson(sig, i, copy, copies);
        r += x * x;
    }
    for (int j = 1; j <= sig.n(); ++j)
        r -= P::fermion(sig, 2 * j - 1, copy, copies) * P::fermion(sig, 2 * j, copy, copies);
    return r;
}

/// <x, y> = sum_k X^k Y_k as a polynomial on two copies.
template <class C = ExactScalar>
BasicSuperPoly<C> build_pairing(const Signature& sig) {
    using P = BasicSuperPoly<C>;
    P r(sig, 2);
    for (int k = 1; k <= sig.dim(); ++k) r += P::raised_coordinate(sig, k, 0, 2) * P::coordinate(sig, k, 1, 2);
    return r;
}

/// Delta_LB = R^2 nabla^2 - E(M - 2 + E).
template <class C>
BasicSuperPoly<C> laplace_beltrami(const BasicSuperPoly<C>& f, int copy = 0) {
    const Signature& sig = f.sig();
    BasicSuperPoly<C> r2 = norm_squared<C>(sig, copy, f.copies());
    BasicSuperPoly<C> ef = euler(f, copy);
    BasicSuperPoly<C> inner = f * C(static_cast<long long>(sig.M() - 2)) + ef;
    return r2 * laplacian(f, copy) - euler(inner, copy);
}

/// L_ij f = X_i nabla_j f - (-1)^{[i][j]} X_j nabla_i f.
template <class C>
BasicSuperPoly<C> osp_generator(int i, int j, const BasicSuperPoly<C>& f, int copy = 0) {
    const Signature& sig = f.sig();
    BasicSuperPoly<C> a = mul_coordinate(i, grad_lower(j, f, copy), copy);
    BasicSuperPoly<C> b = mul_coordinate(j, grad_lower(i, f, copy), copy);
    return sig.parity(i) && sig.parity(j) ? a + b : a - b;
}

/// <nabla, x> f = sum_j nabla^j (X_j f).
template <class C>
BasicSuperPoly<C> divergence_of_position(const BasicSuperPoly<C>& f, int copy = 0) {
    BasicSuperPoly<C> r(f.sig(), f.copies());
    for (int k = 1; k <= f.sig().dim(); ++k) r += grad_upper(k, mul_coordinate(k, f, copy), copy);
    return r;
}

/// -1/2 sum L_ij g^{ik} g^{jl} L_lk, using the sparsity of g. The final
/// generator carries its indices as (l, k); with (k, l) the sum is off by
/// the sign (-1)^{[i][j]+1} termwise, already in the purely bosonic case.
template <class C>
BasicSuperPoly<C> casimir_form(const BasicSuperPoly<C>& f, int copy = 0) {
    const Signature& sig = f.sig();
    int d = sig.dim();
    auto partner = [&](int i) {
        if (i <= sig.m()) return i;
        int a = i - sig.m();
        return a % 2 == 1 ? i + 1 : i - 1;
    };
    BasicSuperPoly<C> r(sig, f.copies());
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            int k = partner(i), l = partner(j);
            Rational g = sig.metric(i, k) * sig.metric(j, l);
            r += osp_generator(i, j, osp_generator(l, k, f, copy), copy) * from_exact<C>(ExactScalar(g));
        }
    return r * from_exact<C>(ExactScalar(Rational(-1, 2)));
}

// ---- restriction and evaluation --------------------------------------------

/// Terms free of the variables of `copy` (the polynomial evaluated at 0 on that copy).
template <class C>
BasicSuperPoly<C> at_origin(const BasicSuperPoly<C>& f, int copy = 0) {
    BasicSuperPoly<C> r(f.sig(), f.copies());
    for (const auto& [mono, c] : f.terms())
        if (f.copy_degree(mono, copy) == 0) r.add(mono, c);
    return r;
}

/// Constant term of a polynomial.
template <class C>
C constant_term(const BasicSuperPoly<C>& f) {
    return f.coeff(Monomial{});
}

/// Moves a polynomial between the single-copy space and a copy of the doubled space.
template <class C>
BasicSuperPoly<C> to_copy(const BasicSuperPoly<C>& f, int from_copy, int to_copy, int copies) {
    const Signature& sig = f.sig();
    BasicSuperPoly<C> r(sig, copies);
    for (const auto& [mono, c] : f.terms()) {
        if (f.copy_degree(mono, from_copy) != mono.degree())
            throw std::invalid_argument("polynomial involves variables outside the source copy");
        Monomial out;
        for (int i = 1; i <= sig.m(); ++i) out.e[r.boson_slot(i, to_copy)] = mono.e[f.boson_slot(i, from_copy)];
        for (int j = 1; j <= 2 * sig.n(); ++j)
            if ((mono.f >> f.fermi_bit(j, from_copy)) & 1) out.f |= FermiMask{1} << r.fermi_bit(j, to_copy);
        r.add(out, c);
    }
    return r;
}

/// Evaluates the bosonic variables at a point (all copies, length copies*m);
/// the result lives in the Grassmann algebra of all fermionic generators.
template <class C, class V = double>
BasicGrassmann<V> eval_bosons(const BasicSuperPoly<C>& f, std::span<const double> x) {
    const Signature& sig = f.sig();
    if (static_cast<int>(x.size()) != f.copies() * sig.m()) throw std::invalid_argument("point has the wrong dimension");
    double u0 = 0;
    for (int i = 0; i < sig.m(); ++i) u0 += x[i] * x[i];
    BasicGrassmann<V> r(f.fermi_generators());
    for (const auto& [mono, c] : f.terms()) {
        V v;
        if constexpr (radial_coeff<C>::value) {
            v = V(radial_coeff<C>::eval(c, u0));
        } else if constexpr (std::is_same_v<C, ExactScalar>) {
            v = V(c.to_double());
        } else {
            v = V(c);
        }
        for (int s = 0; s < f.copies() * sig.m(); ++s)
            for (int p = 0; p < mono.e[s]; ++p) v *= x[s];
        r.add(mono.f, v);
    }
    return r;
}

}  // namespace superharm
