#pragma once

// Exact arithmetic in R = Z[t,s,z]/(t^2+t+1, s^2-3, z^2-5) and Sylvester
// elimination down to an integer.
//
// Elements of R are integer vectors on the monomial basis
// {t^a s^b z^c : a,b,c in {0,1}}; multiplication reduces eagerly by
// t^2 -> -t-1, s^2 -> 3, z^2 -> 5.  Because all three moduli are monic,
// the iterated resultant of an element against the moduli equals its norm
// over the eight evaluations (t -> either primitive cube root, s -> +-sqrt 3,
// z -> +-sqrt 5), so the final integer does not depend on the elimination
// order; the fixed default order is t, then s, then z.

#include "errors.hpp"
#include "field.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

namespace a6arc {

enum SymVar : int { VAR_T = 0, VAR_S = 1, VAR_Z = 2 };

struct SymElem {
    // coefficient of t^a s^b z^c at index a + 2b + 4c
    std::array<mpz_class, 8> c{};

    friend bool operator==(const SymElem&, const SymElem&) = default;
    bool is_zero() const {
        for (const mpz_class& v : c)
            if (v != 0) return false;
        return true;
    }
};

inline SymElem sym_int(long v) {
    SymElem e;
    e.c[0] = v;
    return e;
}

inline SymElem sym_var(SymVar v) {
    SymElem e;
    e.c[1 << v] = 1;
    return e;
}

inline SymElem sym_add(const SymElem& a, const SymElem& b) {
    SymElem r;
    for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

inline SymElem sym_sub(const SymElem& a, const SymElem& b) {
    SymElem r;
    for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

inline SymElem sym_neg(const SymElem& a) {
    SymElem r;
    for (int i = 0; i < 8; ++i) r.c[i] = -a.c[i];
    return r;
}

inline SymElem sym_mul(const SymElem& a, const SymElem& b) {
    SymElem r;
    mpz_class prod;
    for (int i = 0; i < 8; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < 8; ++j) {
            if (b.c[j] == 0) continue;
            prod = a.c[i] * b.c[j];
            int ta = (i & 1) + (j & 1);
            int sb = ((i >> 1) & 1) + ((j >> 1) & 1);
            int zc = ((i >> 2) & 1) + ((j >> 2) & 1);
            if (sb == 2) {
                prod *= 3;
                sb = 0;
            }
            if (zc == 2) {
                prod *= 5;
                zc = 0;
            }
            int base = 2 * sb + 4 * zc;
            if (ta == 2) { // t^2 = -t - 1
                r.c[base] -= prod;
                r.c[base + 1] -= prod;
            } else {
                r.c[base + ta] += prod;
            }
        }
    }
    return r;
}

inline SymElem sym_scale(const SymElem& a, const mpz_class& k) {
    SymElem r;
    for (int i = 0; i < 8; ++i) r.c[i] = a.c[i] * k;
    return r;
}

// Integer content: gcd of all coefficients (0 for the zero element).
inline mpz_class sym_content(const SymElem& a) {
    mpz_class g = 0;
    for (const mpz_class& v : a.c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

inline SymElem sym_divexact(const SymElem& a, const mpz_class& k) {
    SymElem r;
    for (int i = 0; i < 8; ++i) mpz_divexact(r.c[i].get_mpz_t(), a.c[i].get_mpz_t(), k.get_mpz_t());
    return r;
}

// Evaluate at concrete field values of t, s, z.
inline FieldElem sym_specialize(const FieldCtx& ctx, FieldElem t, FieldElem s, FieldElem z,
                                const SymElem& a) {
    std::array<FieldElem, 8> mono = {ctx.one(), t,
                                     s,         ctx.mul(t, s),
                                     z,         ctx.mul(t, z),
                                     ctx.mul(s, z), ctx.mul(ctx.mul(t, s), z)};
    FieldElem acc = ctx.zero();
    for (int i = 0; i < 8; ++i) {
        if (a.c[i] == 0) continue;
        uint64_t rem = mpz_fdiv_ui(a.c[i].get_mpz_t(), ctx.p());
        acc = ctx.add(acc, ctx.mul(ctx.decode(rem), mono[i]));
    }
    return acc;
}

// Split e = g0 + g1 * var with g0, g1 free of var.
inline void sym_split(const SymElem& e, SymVar var, SymElem& g0, SymElem& g1) {
    int bit = 1 << var;
    g0 = SymElem{};
    g1 = SymElem{};
    for (int i = 0; i < 8; ++i) {
        if (i & bit)
            g1.c[i ^ bit] = e.c[i];
        else
            g0.c[i] = e.c[i];
    }
}

// Defining polynomial of var, coefficients descending in degree.
inline std::vector<SymElem> sym_modulus(SymVar var) {
    switch (var) {
    case VAR_T: return {sym_int(1), sym_int(1), sym_int(1)};  // t^2 + t + 1
    case VAR_S: return {sym_int(1), sym_int(0), sym_int(-3)}; // s^2 - 3
    case VAR_Z: return {sym_int(1), sym_int(0), sym_int(-5)}; // z^2 - 5
    }
    throw bad_index("unknown symbolic variable");
}

inline SymElem sym_det(std::vector<std::vector<SymElem>> m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    SymElem acc;
    for (std::size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero()) continue;
        std::vector<std::vector<SymElem>> minor(n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t cc = 0; cc < n; ++cc)
                if (cc != col) minor[r - 1].push_back(m[r][cc]);
        SymElem term = sym_mul(m[0][col], sym_det(std::move(minor)));
        acc = (col % 2 == 0) ? sym_add(acc, term) : sym_sub(acc, term);
    }
    return acc;
}

// Resultant as the determinant of the Sylvester matrix.  Leading zero
// coefficients of g are stripped so the degree is exact; a degree-0 g gives
// Res(f, g) = g^(deg f), and g = 0 gives 0.
inline SymElem sylvester_resultant(const std::vector<SymElem>& f, std::vector<SymElem> g) {
    if (f.empty() || f[0].is_zero()) throw std::invalid_argument("f needs a nonzero leading coefficient");
    while (!g.empty() && g[0].is_zero()) g.erase(g.begin());
    std::size_t m = f.size() - 1;
    if (g.empty()) return SymElem{};
    std::size_t n = g.size() - 1;
    if (m == 0 && n == 0) return sym_int(1);
    std::size_t dim = m + n;
    std::vector<std::vector<SymElem>> mat(dim, std::vector<SymElem>(dim, SymElem{}));
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t k = 0; k <= m; ++k) mat[row][row + k] = f[k];
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t k = 0; k <= n; ++k) mat[n + row][row + k] = g[k];
    return sym_det(std::move(mat));
}

// Eliminate one variable: Res_var(modulus(var), e) with e linear in var.
inline SymElem eliminate_var(const SymElem& e, SymVar var) {
    SymElem g0, g1;
    sym_split(e, var, g0, g1);
    return sylvester_resultant(sym_modulus(var), {g1, g0});
}

struct ElimResult {
    mpz_class content;   // integer content divided out of the input
    mpz_class resultant; // final integer of the elimination tower on the primitive part
};

inline const std::array<SymVar, 3> kDefaultElimOrder = {VAR_T, VAR_S, VAR_Z};

inline ElimResult eliminate_with_content(const SymElem& d,
                                         const std::array<SymVar, 3>& order = kDefaultElimOrder) {
    ElimResult res;
    res.content = sym_content(d);
    if (res.content == 0) { // zero element
        res.resultant = 0;
        return res;
    }
    SymElem cur = sym_divexact(d, res.content);
    for (SymVar v : order) cur = eliminate_var(cur, v);
    for (int i = 1; i < 8; ++i)
        if (cur.c[i] != 0) throw internal_inconsistency("elimination left a non-constant");
    res.resultant = cur.c[0];
    return res;
}

// The final resultant of the tower t, then s, then z, content divided first.
inline mpz_class eliminate(const SymElem& d) { return eliminate_with_content(d).resultant; }

// Closed forms, used as oracles against the Sylvester implementation.
inline SymElem res_t_closed(const SymElem& a, const SymElem& b) {
    return sym_add(sym_sub(sym_mul(a, a), sym_mul(a, b)), sym_mul(b, b));
}
inline SymElem res_s_closed(const SymElem& c0, const SymElem& d0) {
    return sym_sub(sym_mul(c0, c0), sym_scale(sym_mul(d0, d0), 3));
}
inline SymElem res_z_closed(const SymElem& e0, const SymElem& f0) {
    return sym_sub(sym_mul(e0, e0), sym_scale(sym_mul(f0, f0), 5));
}

} // namespace a6arc
