#pragma once

// The projective plane PG(2,q): points and lines as canonical coordinate
// triples, 3x3 matrices acting on the left, and a total enumeration of the
// q^2 + q + 1 points.
//
// Canonical form for a nonzero triple: scale so the first nonzero entry is 1.
// Two triples represent the same point (line) iff their canonical forms match.

#include "field.hpp"

#include <array>
#include <cstdint>

namespace a6arc {

// Point/line indices reach q^2 + q, which overflows 64 bits for the largest
// supported extension fields (q = p^2 with p near 2^21).
using wide_t = unsigned __int128;

inline std::string to_string(wide_t v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s += static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    return {s.rbegin(), s.rend()};
}

struct ProjPoint {
    std::array<FieldElem, 3> v;
    friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
};

struct ProjLine {
    std::array<FieldElem, 3> v; // [a,b,c]: points (x,y,z) with ax+by+cz = 0
    friend bool operator==(const ProjLine&, const ProjLine&) = default;
};

struct Mat3 {
    std::array<std::array<FieldElem, 3>, 3> m;
    friend bool operator==(const Mat3&, const Mat3&) = default;
};

inline std::array<FieldElem, 3> canonical_triple(const FieldCtx& ctx, std::array<FieldElem, 3> v) {
    for (int i = 0; i < 3; ++i) {
        if (!ctx.is_zero(v[i])) {
            FieldElem s = ctx.inv(v[i]);
            for (int j = 0; j < 3; ++j) v[j] = ctx.mul(v[j], s);
            return v;
        }
    }
    throw internal_inconsistency("projective triple is all zero");
}

inline ProjPoint make_point(const FieldCtx& ctx, FieldElem x, FieldElem y, FieldElem z) {
    return {canonical_triple(ctx, {x, y, z})};
}

inline ProjPoint make_point_i(const FieldCtx& ctx, int64_t x, int64_t y, int64_t z) {
    return make_point(ctx, ctx.from_int(x), ctx.from_int(y), ctx.from_int(z));
}

// Bijection points <-> [0, q^2+q+1): (1,y,z) -> enc(y)*q + enc(z);
// (0,1,z) -> q^2 + enc(z); (0,0,1) -> q^2 + q.
inline wide_t point_index(const FieldCtx& ctx, const ProjPoint& pt) {
    wide_t q = ctx.q();
    if (ctx.encode(pt.v[0]) == 1) return wide_t(ctx.encode(pt.v[1])) * q + ctx.encode(pt.v[2]);
    if (ctx.encode(pt.v[1]) == 1) return q * q + ctx.encode(pt.v[2]);
    return q * q + q;
}

inline wide_t plane_size(const FieldCtx& ctx) {
    wide_t q = ctx.q();
    return q * q + q + 1;
}

inline ProjPoint point_at(const FieldCtx& ctx, wide_t idx) {
    wide_t q = ctx.q();
    if (idx >= q * q + q + 1) throw bad_index("point index out of range");
    if (idx < q * q)
        return {{ctx.one(), ctx.decode(static_cast<uint64_t>(idx / q)),
                 ctx.decode(static_cast<uint64_t>(idx % q))}};
    if (idx < q * q + q) return {{ctx.zero(), ctx.one(), ctx.decode(static_cast<uint64_t>(idx - q * q))}};
    return {{ctx.zero(), ctx.zero(), ctx.one()}};
}

inline FieldElem dot3(const FieldCtx& ctx, const std::array<FieldElem, 3>& a,
                      const std::array<FieldElem, 3>& b) {
    FieldElem acc = ctx.zero();
    for (int i = 0; i < 3; ++i) acc = ctx.add(acc, ctx.mul(a[i], b[i]));
    return acc;
}

inline bool incident(const FieldCtx& ctx, const ProjLine& l, const ProjPoint& p) {
    return ctx.is_zero(dot3(ctx, l.v, p.v));
}

// The line through two distinct points: cross product of the triples.
inline ProjLine line_through(const FieldCtx& ctx, const ProjPoint& a, const ProjPoint& b) {
    if (a == b) throw equal_points("no unique line through equal points");
    std::array<FieldElem, 3> c = {
        ctx.sub(ctx.mul(a.v[1], b.v[2]), ctx.mul(a.v[2], b.v[1])),
        ctx.sub(ctx.mul(a.v[2], b.v[0]), ctx.mul(a.v[0], b.v[2])),
        ctx.sub(ctx.mul(a.v[0], b.v[1]), ctx.mul(a.v[1], b.v[0]))};
    return {canonical_triple(ctx, c)};
}

inline wide_t line_index(const FieldCtx& ctx, const ProjLine& l) {
    return point_index(ctx, ProjPoint{l.v});
}

inline ProjLine line_at(const FieldCtx& ctx, wide_t idx) { return {point_at(ctx, idx).v}; }

inline bool collinear(const FieldCtx& ctx, const ProjPoint& a, const ProjPoint& b,
                      const ProjPoint& c) {
    // det [a; b; c] = 0
    FieldElem d = ctx.zero();
    d = ctx.add(d, ctx.mul(a.v[0], ctx.sub(ctx.mul(b.v[1], c.v[2]), ctx.mul(b.v[2], c.v[1]))));
    d = ctx.sub(d, ctx.mul(a.v[1], ctx.sub(ctx.mul(b.v[0], c.v[2]), ctx.mul(b.v[2], c.v[0]))));
    d = ctx.add(d, ctx.mul(a.v[2], ctx.sub(ctx.mul(b.v[0], c.v[1]), ctx.mul(b.v[1], c.v[0]))));
    return ctx.is_zero(d);
}

inline Mat3 mat_identity(const FieldCtx& ctx) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = (i == j) ? ctx.one() : ctx.zero();
    return r;
}

inline Mat3 mat_mul(const FieldCtx& ctx, const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            FieldElem acc = ctx.zero();
            for (int k = 0; k < 3; ++k) acc = ctx.add(acc, ctx.mul(a.m[i][k], b.m[k][j]));
            r.m[i][j] = acc;
        }
    return r;
}

inline FieldElem mat_det(const FieldCtx& ctx, const Mat3& a) {
    FieldElem d = ctx.zero();
    d = ctx.add(d, ctx.mul(a.m[0][0], ctx.sub(ctx.mul(a.m[1][1], a.m[2][2]), ctx.mul(a.m[1][2], a.m[2][1]))));
    d = ctx.sub(d, ctx.mul(a.m[0][1], ctx.sub(ctx.mul(a.m[1][0], a.m[2][2]), ctx.mul(a.m[1][2], a.m[2][0]))));
    d = ctx.add(d, ctx.mul(a.m[0][2], ctx.sub(ctx.mul(a.m[1][0], a.m[2][1]), ctx.mul(a.m[1][1], a.m[2][0]))));
    return d;
}

inline ProjPoint apply(const FieldCtx& ctx, const Mat3& a, const ProjPoint& p) {
    std::array<FieldElem, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = dot3(ctx, a.m[i], p.v);
    return {canonical_triple(ctx, r)};
}

// Canonical projective representative: scale so the first nonzero entry in
// row-major order is 1.  Requires a nonsingular matrix.
inline Mat3 mat_canonical(const FieldCtx& ctx, const Mat3& a) {
    if (ctx.is_zero(mat_det(ctx, a))) throw singular_matrix("projectivity must be nonsingular");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!ctx.is_zero(a.m[i][j])) {
                FieldElem s = ctx.inv(a.m[i][j]);
                Mat3 r;
                for (int u = 0; u < 3; ++u)
                    for (int v = 0; v < 3; ++v) r.m[u][v] = ctx.mul(a.m[u][v], s);
                return r;
            }
    throw internal_inconsistency("zero matrix reached canonicalization");
}

// Row-major integer key of a canonical matrix, for hashing and ordering.
inline std::array<uint64_t, 9> mat_key(const FieldCtx& ctx, const Mat3& a) {
    std::array<uint64_t, 9> k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k[3 * i + j] = ctx.encode(a.m[i][j]);
    return k;
}

} // namespace a6arc
