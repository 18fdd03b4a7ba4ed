#pragma once
// Spherical harmonics on superspace: kernel bases of the super Laplacian,
// the dimension formula, the Fischer decomposition and the reproducing kernel.

#include "superharm/scalar.hpp"
#include "superharm/superpoly.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <vector>

namespace superharm {

/// All monomials of degree k on one copy, in the polynomial ordering.
inline std::vector<Monomial> monomials_of_degree(const Signature& sig, int k) {
    std::vector<Monomial> out;
    int gens = 2 * sig.n();
    for (FermiMask mask = 0; mask < (FermiMask{1} << gens); ++mask) {
        int rest = k - std::popcount(mask);
        if (rest < 0) continue;
        // compositions of `rest` into m parts
        std::vector<int> e(sig.m(), 0);
        auto rec = [&](auto&& self, int slot, int left) -> void {
            if (slot == sig.m() - 1) {
                e[slot] = left;
                Monomial mono;
                for (int i = 0; i < sig.m(); ++i) mono.e[i] = static_cast<std::uint8_t>(e[i]);
                mono.f = mask;
                out.push_back(mono);
                return;
            }
            for (int v = left; v >= 0; --v) {
                e[slot] = v;
                self(self, slot + 1, left - v);
            }
        };
        rec(rec, 0, rest);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline long long dim_polynomials(const Signature& sig, int k) {
    if (k < 0) return 0;
    long long total = 0;
    for (int i = 0; i <= std::min(k, 2 * sig.n()); ++i)
        total += binomial_ll(2 * sig.n(), i) * binomial_ll(k - i + sig.m() - 1, sig.m() - 1);
    return total;
}

/// dim H_k = sum_i C(2n,i) C(k-i+m-1, m-1) - sum_i C(2n,i) C(k-i+m-3, m-1).
inline long long dim_harmonics(const Signature& sig, int k) {
    if (k < 0) throw DomainError("degree must be nonnegative");
    return dim_polynomials(sig, k) - dim_polynomials(sig, k - 2);
}

namespace detail {

// Null space of a dense rational matrix (rows x cols), one vector per free column.
inline std::vector<std::vector<Rational>> null_space(std::vector<std::vector<Rational>> a, std::size_t cols) {
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][c];
        for (auto& v : a[row]) v *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][c] == 0) continue;
            Rational factor = a[r][c];
            for (std::size_t j = c; j < cols; ++j)
                if (a[row][j] != 0) a[r][j] -= factor * a[row][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

/// Exact basis of ker(nabla^2) in P_k; one element per free monomial of the
/// row-reduced Laplacian matrix.
inline std::vector<SuperPolynomial> harmonic_basis(const Signature& sig, int k) {
    if (k < 0) throw DomainError("degree must be nonnegative");
    std::vector<Monomial> cols = monomials_of_degree(sig, k);
    std::vector<Monomial> rows = monomials_of_degree(sig, k - 2);
    std::map<Monomial, std::size_t> row_index;
    for (std::size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
    std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        SuperPolynomial mono(sig);
        mono.add(cols[c], ExactScalar(1));
        SuperPolynomial image = laplacian(mono);
        for (const auto& [m, v] : image.terms()) a[row_index.at(m)][c] = v.rational();
    }
    std::vector<SuperPolynomial> basis;
    for (const auto& v : detail::null_space(std::move(a), cols.size())) {
        SuperPolynomial p(sig);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (v[c] != 0) p.add(cols[c], ExactScalar(v[c]));
        basis.push_back(std::move(p));
    }
    return basis;
}

struct FischerBlock {
    int j;                // power of R^2
    SuperPolynomial harmonic;  // H_{d-2j}
};

/// f = sum_j R^{2j} H_{d-2j}. The top block is extracted with
/// nabla^{2J} R^{2J} H_k = prod_{i=1..J} 2i(2i+2k+M-2) H_k, then removed.
inline std::vector<FischerBlock> fischer_decompose(const SuperPolynomial& f) {
    const Signature& sig = f.sig();
    int M = sig.M();
    if (M <= 0 && M % 2 == 0) throw DomainError("no Fischer decomposition for M in -2N");
    if (!f.is_homogeneous()) throw DomainError("Fischer decomposition expects a homogeneous polynomial");
    std::vector<FischerBlock> blocks;
    if (f.is_zero()) return blocks;
    int d = f.max_degree();
    SuperPolynomial rest = f;
    SuperPolynomial r2 = norm_squared<ExactScalar>(sig);
    for (int J = d / 2; J >= 1; --J) {
        int k = d - 2 * J;
        SuperPolynomial top = laplacian_pow(rest, J);
        if (top.is_zero()) continue;
        Rational c = 1;
        for (int i = 1; i <= J; ++i) c *= Rational(2 * i * (2 * i + 2 * k + M - 2));
        SuperPolynomial h = top * ExactScalar(1 / c);
        rest -= r2.pow(J) * h;
        blocks.push_back({J, h});
    }
    if (!laplacian(rest).is_zero()) throw std::logic_error("Fischer remainder is not harmonic");
    if (!rest.is_zero()) blocks.push_back({0, rest});
    std::reverse(blocks.begin(), blocks.end());
    return blocks;
}

inline SuperPolynomial fischer_reconstruct(const std::vector<FischerBlock>& blocks, const Signature& sig) {
    SuperPolynomial r(sig);
    SuperPolynomial r2 = norm_squared<ExactScalar>(sig);
    for (const auto& b : blocks) r += r2.pow(b.j) * b.harmonic;
    return r;
}

/// Reproducing kernel of H_k as a polynomial in (x, y):
///   F_k = (k+lambda)/lambda / sigma_M (R_x R_y)^k C_k^lambda(<x,y>/(R_x R_y)),  lambda = (M-2)/2,
/// expanded as sum_i c_i <x,y>^{k-2i} (R_x^2 R_y^2)^i with
///   c_i = (k+lambda)(lambda+1)_{k-i-1} (-1)^i 2^{k-2i} / (i!(k-2i)!) / sigma_M.
/// At M = 2 this is the Chebyshev limit 2 T_k; `allow_m2_limit = false` rejects M = 2.
inline SuperPolynomial reproducing_kernel(const Signature& sig, int k, bool allow_m2_limit = true) {
    int M = sig.M();
    if (k < 0) throw DomainError("degree must be nonnegative");
    if (M <= 0 && M % 2 == 0) throw DomainError("reproducing kernel undefined for M in -2N");
    if (M == 2 && !allow_m2_limit) throw DomainError("singular normalization (M-2) at M = 2");
    // 1/sigma_M = Gamma(M/2) / (2 pi^{M/2})
    ExactScalar inv_sigma = gamma_exact(half(M)) * ExactScalar(Rational(1, 2), -M);
    if (k == 0) return SuperPolynomial::constant(sig, inv_sigma, 2);
    Rational lambda = half(M - 2);
    SuperPolynomial xy = build_pairing<ExactScalar>(sig);
    SuperPolynomial rr = norm_squared<ExactScalar>(sig, 0, 2) * norm_squared<ExactScalar>(sig, 1, 2);
    SuperPolynomial out(sig, 2);
    for (int i = 0; 2 * i <= k; ++i) {
        Rational c = (k + lambda) * pochhammer(lambda + 1, k - i - 1) * Rational(Integer(1) << (k - 2 * i)) /
                     (factorial(i) * factorial(k - 2 * i));
        if (i % 2) c = -c;
        out += xy.pow(k - 2 * i) * rr.pow(i) * (inv_sigma * c);
    }
    return out;
}

}  // namespace superharm
