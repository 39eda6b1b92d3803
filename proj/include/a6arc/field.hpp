#pragma once

// Exact arithmetic in GF(p^r) for r in {1,2}, p an odd prime >= 7.
//
// Elements are coefficient vectors on the polynomial basis {1, w} of
// GF(p)[w]/(w^2 - n), with n the least quadratic non-residue mod p for
// the r = 2 case.  All operations are pure; a FieldCtx is a small value
// type and two contexts with equal (p, r, n) are interchangeable.

#include "errors.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace a6arc {

struct FieldElem {
    uint32_t c0 = 0;
    uint32_t c1 = 0; // always 0 when r = 1
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class FieldCtx {
public:
    FieldCtx() = default;

    uint64_t p() const { return p_; }
    int r() const { return r_; }
    uint64_t q() const { return q_; }
    // n in the defining relation w^2 = n (meaningful only for r = 2).
    uint64_t nonresidue() const { return n_; }

    friend bool operator==(const FieldCtx&, const FieldCtx&) = default;

    FieldElem zero() const { return {0, 0}; }
    FieldElem one() const { return {1, 0}; }

    FieldElem make(uint64_t a0, uint64_t a1) const {
        if (a1 != 0 && r_ == 1) throw internal_inconsistency("degree-1 context cannot hold w term");
        return {static_cast<uint32_t>(a0 % p_), static_cast<uint32_t>(a1 % p_)};
    }

    FieldElem from_int(int64_t v) const {
        int64_t m = v % static_cast<int64_t>(p_);
        if (m < 0) m += static_cast<int64_t>(p_);
        return {static_cast<uint32_t>(m), 0};
    }

    // Integer encoding c0 + c1*p, a bijection onto [0, q).
    uint64_t encode(FieldElem a) const { return a.c0 + static_cast<uint64_t>(a.c1) * p_; }
    FieldElem decode(uint64_t e) const {
        return {static_cast<uint32_t>(e % p_), static_cast<uint32_t>(e / p_)};
    }

    bool is_zero(FieldElem a) const { return a.c0 == 0 && a.c1 == 0; }

    FieldElem add(FieldElem a, FieldElem b) const {
        return {modp(a.c0 + static_cast<uint64_t>(b.c0)), modp(a.c1 + static_cast<uint64_t>(b.c1))};
    }

    FieldElem sub(FieldElem a, FieldElem b) const {
        return {modp(a.c0 + p_ - static_cast<uint64_t>(b.c0)), modp(a.c1 + p_ - static_cast<uint64_t>(b.c1))};
    }

    FieldElem neg(FieldElem a) const { return sub(zero(), a); }

    FieldElem mul(FieldElem a, FieldElem b) const {
        if (r_ == 1) return {modp(static_cast<uint64_t>(a.c0) * b.c0), 0};
        // (a0 + a1 w)(b0 + b1 w) = a0 b0 + n a1 b1 + (a0 b1 + a1 b0) w
        uint64_t lo = static_cast<uint64_t>(a.c0) * b.c0 % p_ + static_cast<uint64_t>(a.c1) * b.c1 % p_ * n_ % p_;
        uint64_t hi = static_cast<uint64_t>(a.c0) * b.c1 % p_ + static_cast<uint64_t>(a.c1) * b.c0 % p_;
        return {modp(lo), modp(hi)};
    }

    FieldElem pow(FieldElem a, uint64_t e) const {
        FieldElem acc = one();
        while (e != 0) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }

    FieldElem inv(FieldElem a) const {
        if (is_zero(a)) throw std::domain_error("inverse of zero");
        if (r_ == 1) return {inv_mod_p(a.c0), 0};
        // 1/(a0 + a1 w) = (a0 - a1 w) / (a0^2 - n a1^2); the norm is in GF(p)*.
        uint64_t norm = (static_cast<uint64_t>(a.c0) * a.c0 % p_ + p_ - static_cast<uint64_t>(a.c1) * a.c1 % p_ * n_ % p_) % p_;
        uint64_t ni = inv_mod_p(static_cast<uint32_t>(norm));
        return {modp(static_cast<uint64_t>(a.c0) * ni), modp(static_cast<uint64_t>(p_ - a.c1) % p_ * ni)};
    }

    FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

    bool is_square(FieldElem a) const {
        if (is_zero(a)) return true;
        return encode(pow(a, (q_ - 1) / 2)) == 1;
    }

    // Canonical square root: the candidate with the smaller integer encoding.
    // Tonelli-Shanks over the cyclic group GF(q)*, with the non-residue found
    // by a deterministic scan in encoding order.
    std::optional<FieldElem> sqrt(FieldElem a) const {
        if (is_zero(a)) return zero();
        if (!is_square(a)) return std::nullopt;
        uint64_t m = q_ - 1;
        int e = 0;
        while ((m & 1) == 0) {
            m >>= 1;
            ++e;
        }
        FieldElem root;
        if (e == 1) {
            root = pow(a, (q_ + 1) / 4);
        } else {
            FieldElem b = zero();
            for (uint64_t k = 2; k < q_; ++k) {
                b = decode(k);
                if (!is_zero(b) && !is_square(b)) break;
            }
            FieldElem x = pow(a, (m + 1) / 2);
            FieldElem t = pow(a, m);
            FieldElem g = pow(b, m);
            int s = e;
            while (encode(t) != 1) {
                FieldElem t2 = t;
                int i = 0;
                while (encode(t2) != 1) {
                    t2 = mul(t2, t2);
                    ++i;
                }
                FieldElem gp = g;
                for (int j = 0; j < s - i - 1; ++j) gp = mul(gp, gp);
                x = mul(x, gp);
                g = mul(gp, gp);
                t = mul(t, g);
                s = i;
            }
            root = x;
        }
        FieldElem other = neg(root);
        FieldElem canon = encode(root) <= encode(other) ? root : other;
        if (!(mul(canon, canon) == a)) throw internal_inconsistency("square root postcondition failed");
        return canon;
    }

    // x -> x^p, the generator of Gal(GF(p^2)/GF(p)).
    FieldElem frobenius(FieldElem a) const { return pow(a, p_); }

    std::string to_string(FieldElem a) const {
        if (r_ == 1) return std::to_string(a.c0);
        if (a.c1 == 0) return std::to_string(a.c0);
        std::string s;
        if (a.c0 != 0) s = std::to_string(a.c0) + "+";
        return s + std::to_string(a.c1) + "*w";
    }

    std::string modulus_string() const {
        if (r_ == 1) return "w-0"; // degree-1 contexts have no extension generator
        return "w^2-" + std::to_string(n_);
    }

private:
    uint64_t p_ = 0;
    int r_ = 0;
    uint64_t n_ = 0;
    uint64_t q_ = 0;

    friend FieldCtx make_field(uint64_t, int);

    uint32_t modp(uint64_t v) const { return static_cast<uint32_t>(v % p_); }

    uint32_t inv_mod_p(uint32_t a) const {
        // extended Euclid
        int64_t t0 = 0, t1 = 1, r0 = static_cast<int64_t>(p_), r1 = a;
        while (r1 != 0) {
            int64_t d = r0 / r1;
            t0 -= d * t1;
            std::swap(t0, t1);
            r0 -= d * r1;
            std::swap(r0, r1);
        }
        if (t0 < 0) t0 += static_cast<int64_t>(p_);
        return static_cast<uint32_t>(t0);
    }
};

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % d == 0) return n == d;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) {
        uint64_t acc = 1;
        a %= m;
        while (e) {
            if (e & 1) acc = mulmod(acc, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return acc;
    };
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic Miller-Rabin bases for 64-bit inputs
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline FieldCtx make_field(uint64_t p, int r) {
    if (r != 1 && r != 2) throw unsupported_degree("extension degree must be 1 or 2, got " + std::to_string(r));
    if (!is_prime_u64(p) || p < 7) throw composite_p("p must be a prime >= 7, got " + std::to_string(p));
    if (p >= (1ull << 21)) throw unsupported_degree("p too large for this representation");
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.r_ = r;
    ctx.q_ = (r == 1) ? p : p * p;
    ctx.n_ = 0;
    if (r == 2) {
        // modulus x^2 - n, n the least quadratic non-residue mod p
        FieldCtx base;
        base.p_ = p;
        base.r_ = 1;
        base.q_ = p;
        for (uint64_t n = 2; n < p; ++n) {
            if (!base.is_square(base.from_int(static_cast<int64_t>(n)))) {
                ctx.n_ = n;
                break;
            }
        }
        if (ctx.n_ == 0) throw internal_inconsistency("no quadratic non-residue found");
    }
    return ctx;
}

// q = p^r is admissible iff q = 1 or 19 (mod 30); equivalently 3 | q-1 and
// 5 is a square in GF(q).
inline bool validate_q(uint64_t p, int r) {
    uint64_t q = (r == 1) ? p : p * p;
    uint64_t m = q % 30;
    return m == 1 || m == 19;
}

// GF(p) -> GF(p^2) subfield embedding (identity on the constant coefficient).
inline FieldElem embed(const FieldCtx& from, const FieldCtx& to, FieldElem a) {
    if (from.p() != to.p() || from.r() != 1 || to.r() != 2)
        throw internal_inconsistency("embed expects GF(p) -> GF(p^2) over the same p");
    (void)from;
    return {a.c0, 0};
}

// t with t^2 + t + 1 = 0 and t != 1; of the two roots, the one with the
// smaller integer encoding.
inline FieldElem primitive_cube_root(const FieldCtx& ctx) {
    if ((ctx.q() - 1) % 3 != 0) throw no_cube_root("3 does not divide q-1 for q = " + std::to_string(ctx.q()));
    auto disc = ctx.sqrt(ctx.from_int(-3));
    if (!disc) throw no_cube_root("x^2+x+1 has no root in GF(" + std::to_string(ctx.q()) + ")");
    FieldElem half = ctx.inv(ctx.from_int(2));
    FieldElem r1 = ctx.mul(ctx.sub(*disc, ctx.one()), half);
    FieldElem r2 = ctx.mul(ctx.sub(ctx.neg(*disc), ctx.one()), half);
    FieldElem t = ctx.encode(r1) <= ctx.encode(r2) ? r1 : r2;
    FieldElem check = ctx.add(ctx.add(ctx.mul(t, t), t), ctx.one());
    if (!ctx.is_zero(check) || ctx.encode(t) == 1) throw internal_inconsistency("cube root postcondition failed");
    return t;
}

// The special constants of the construction: a primitive cube root t of
// unity, z with z^2 = 5, s with s^2 = 3, and delta = t - t^2.  t and z live
// in the given context; s lives there too when 3 is a square, otherwise in
// the quadratic extension over the same p.
struct SpecialElems {
    FieldCtx base;   // context of t, z, delta
    FieldCtx sctx;   // context of s (== base iff s_in_base)
    bool s_in_base = true;
    FieldElem t, t2, z, s, delta;
};

inline SpecialElems special_elems_variant(const FieldCtx& ctx, bool swap_t, bool negate_z, bool negate_s) {
    if (!validate_q(ctx.p(), ctx.r()))
        throw invalid_q("q = " + std::to_string(ctx.q()) + " = " + std::to_string(ctx.q() % 30) +
                        " (mod 30), expected 1 or 19");
    SpecialElems sp;
    sp.base = ctx;
    sp.t = primitive_cube_root(ctx);
    sp.t2 = ctx.mul(sp.t, sp.t);
    if (swap_t) std::swap(sp.t, sp.t2);
    auto z = ctx.sqrt(ctx.from_int(5));
    if (!z) throw internal_inconsistency("5 must be a square for admissible q");
    sp.z = negate_z ? ctx.neg(*z) : *z;
    sp.delta = ctx.sub(sp.t, sp.t2);
    if (auto s = ctx.sqrt(ctx.from_int(3))) {
        sp.s_in_base = true;
        sp.sctx = ctx;
        sp.s = *s;
    } else {
        if (ctx.r() != 1) throw internal_inconsistency("3 is always a square in GF(p^2)");
        sp.s_in_base = false;
        sp.sctx = make_field(ctx.p(), 2);
        auto s2 = sp.sctx.sqrt(sp.sctx.from_int(3));
        if (!s2) throw internal_inconsistency("3 must be a square in the quadratic extension");
        sp.s = *s2;
    }
    if (negate_s) sp.s = sp.sctx.neg(sp.s);
    return sp;
}

inline SpecialElems special_elems(const FieldCtx& ctx) {
    return special_elems_variant(ctx, false, false, false);
}

} // namespace a6arc
