#pragma once
// The Grassmann algebra Lambda_{2n} over a coefficient ring C.
//
// A monomial is a bitmask over the 2n generators; bit i set means the
// generator x`_{i+1} is present, always stored in ascending order. All
// derivatives are left derivatives.

#include "superharm/scalar.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace superharm {

using FermiMask = std::uint32_t;

inline constexpr int kMaxGenerators = 32;

/// (-1)^{#inversions} for the product x`_a x`_b of two disjoint ascending monomials.
inline int mask_product_sign(FermiMask a, FermiMask b) {
    int inversions = 0;
    for (FermiMask rest = b; rest; rest &= rest - 1) {
        int j = std::countr_zero(rest);
        inversions += std::popcount(j + 1 >= 32 ? FermiMask{0} : (a >> (j + 1)));
    }
    return (inversions & 1) ? -1 : 1;
}

/// Sign picked up by a left derivative moving past the generators below bit j.
inline int mask_derivative_sign(FermiMask mask, int j) {
    FermiMask below = j == 0 ? 0 : (mask & ((FermiMask{1} << j) - 1));
    return (std::popcount(below) & 1) ? -1 : 1;
}

template <class C>
class BasicGrassmann {
public:
    using Terms = std::map<FermiMask, C>;

    BasicGrassmann() = default;
    explicit BasicGrassmann(int generators) : gens_(generators) {
        if (generators < 0 || generators > kMaxGenerators) throw std::invalid_argument("generator count out of range");
    }
    BasicGrassmann(int generators, const C& scalar) : BasicGrassmann(generators) { add(0, scalar); }

    /// The generator x`_j, 1 <= j <= generators.
    static BasicGrassmann generator(int generators, int j) {
        BasicGrassmann g(generators);
        if (j < 1 || j > generators) throw std::out_of_range("generator index out of range");
        g.add(FermiMask{1} << (j - 1), C(1));
        return g;
    }

    int generators() const { return gens_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    C coeff(FermiMask mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? C{} : it->second;
    }
    C body() const { return coeff(0); }

    void add(FermiMask mask, const C& c) {
        if (superharm::is_zero(c)) return;
        auto [it, fresh] = terms_.try_emplace(mask, c);
        if (!fresh) {
            it->second += c;
            if (superharm::is_zero(it->second)) terms_.erase(it);
        }
    }

    BasicGrassmann nilpotent() const {
        BasicGrassmann r = *this;
        r.terms_.erase(0);
        return r;
    }

    /// Parity split: even (sign=+1) or odd (sign=-1) part.
    BasicGrassmann parity_part(bool odd) const {
        BasicGrassmann r(gens_);
        for (const auto& [m, c] : terms_)
            if ((std::popcount(m) & 1) == static_cast<int>(odd)) r.terms_.emplace(m, c);
        return r;
    }

    template <class F>
    auto map_coeffs(F&& f) const {
        using D = std::decay_t<decltype(f(std::declval<C>()))>;
        BasicGrassmann<D> r(gens_);
        for (const auto& [m, c] : terms_) r.add(m, f(c));
        return r;
    }

    BasicGrassmann& operator+=(const BasicGrassmann& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    BasicGrassmann& operator-=(const BasicGrassmann& o) {
        check(o);
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend BasicGrassmann operator+(BasicGrassmann a, const BasicGrassmann& b) { return a += b; }
    friend BasicGrassmann operator-(BasicGrassmann a, const BasicGrassmann& b) { return a -= b; }
    friend BasicGrassmann operator-(const BasicGrassmann& a) {
        BasicGrassmann r(a.gens_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend BasicGrassmann operator*(const BasicGrassmann& a, const BasicGrassmann& b) {
        a.check(b);
        BasicGrassmann r(a.gens_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                if (ma & mb) continue;
                C c = ca * cb;
                if (mask_product_sign(ma, mb) < 0) c = -c;
                r.add(ma | mb, c);
            }
        return r;
    }
    friend BasicGrassmann operator*(BasicGrassmann a, const C& s) {
        BasicGrassmann r(a.gens_);
        for (const auto& [m, c] : a.terms_) r.add(m, c * s);
        return r;
    }
    friend BasicGrassmann operator*(const C& s, const BasicGrassmann& a) { return a * s; }
    friend bool operator==(const BasicGrassmann& a, const BasicGrassmann& b) {
        return a.gens_ == b.gens_ && a.terms_ == b.terms_;
    }

    double max_abs() const {
        double r = 0;
        for (const auto& [m, c] : terms_) r = std::max(r, static_cast<double>(std::abs(c)));
        return r;
    }

private:
    void check(const BasicGrassmann& o) const {
        if (o.gens_ != gens_) throw std::invalid_argument("mismatched Grassmann algebras");
    }

    int gens_ = 0;
    Terms terms_;
};

using GrassmannElement = BasicGrassmann<ExactScalar>;

template <class C>
BasicGrassmann<C> gmul(const BasicGrassmann<C>& a, const BasicGrassmann<C>& b) {
    return a * b;
}

/// Left derivative d/dx`_j, 1 <= j <= generators.
template <class C>
BasicGrassmann<C> fermi_derivative(int j, const BasicGrassmann<C>& f) {
    if (j < 1 || j > f.generators()) throw std::out_of_range("fermionic derivative index out of range");
    BasicGrassmann<C> r(f.generators());
    FermiMask bit = FermiMask{1} << (j - 1);
    for (const auto& [m, c] : f.terms())
        if (m & bit) r.add(m & ~bit, mask_derivative_sign(m, j - 1) < 0 ? C(-c) : c);
    return r;
}

/// x`^2 = sum_k x`_{2k-1} x`_{2k} in Lambda_{2n}.
template <class C = ExactScalar>
BasicGrassmann<C> fermi_norm_sq(int n) {
    BasicGrassmann<C> r(2 * n);
    for (int k = 0; k < n; ++k) r.add((FermiMask{1} << (2 * k)) | (FermiMask{1} << (2 * k + 1)), C(1));
    return r;
}

template <class C = ExactScalar>
BasicGrassmann<C> fermi_norm_pow(int n, int j) {
    BasicGrassmann<C> r(2 * n, C(1));
    BasicGrassmann<C> sq = fermi_norm_sq<C>(n);
    for (int i = 0; i < j; ++i) r = r * sq;
    return r;
}

/// Berezin integral pi^{-n} d_{x`_2n} ... d_{x`_1}.
template <class C>
C berezin(const BasicGrassmann<C>& f) {
    int gens = f.generators();
    if (gens % 2) throw std::invalid_argument("Berezin integral needs an even number of generators");
    FermiMask top = gens == 32 ? ~FermiMask{0} : ((FermiMask{1} << gens) - 1);
    return f.coeff(top) * pi_power<C>(-gens);
}

/// Fermionic Laplacian -4 sum_j d_{x`_{2j-1}} d_{x`_{2j}}.
template <class C>
BasicGrassmann<C> fermi_laplacian(const BasicGrassmann<C>& f) {
    BasicGrassmann<C> r(f.generators());
    for (int k = 0; 2 * k + 1 < f.generators(); ++k) r -= fermi_derivative(2 * k + 1, fermi_derivative(2 * k + 2, f));
    return r * C(4);
}

/// h(f) = sum_j f_1^j / j! h^{(j)}(f_0) for the body f_0 and nilpotent part f_1.
/// `derivs[j]` holds h^{(j)}(f_0). Numeric coefficient rings only.
template <class C>
BasicGrassmann<C> compose(std::span<const C> derivs, const BasicGrassmann<C>& f) {
    static_assert(!std::is_same_v<C, ExactScalar>, "compose is numeric");
    BasicGrassmann<C> nil = f.nilpotent();
    BasicGrassmann<C> power(f.generators(), C(1));
    BasicGrassmann<C> out(f.generators());
    double inv_fact = 1.0;
    for (std::size_t j = 0; j < derivs.size() && !power.is_zero(); ++j) {
        out += power * C(derivs[j] * inv_fact);
        power = power * nil;
        inv_fact /= static_cast<double>(j + 1);
    }
    if (!power.is_zero()) throw DomainError("composition needs more derivatives than supplied");
    return out;
}

}  // namespace superharm
