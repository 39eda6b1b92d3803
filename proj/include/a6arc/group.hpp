#pragma once

// The projectivity group Gamma, isomorphic to A6, generated inside PGL(3,q)
// by four explicit matrices.  Enumeration is a breadth-first closure under
// left multiplication, so element indices and the recorded generator words
// depend only on the abstract group, not on the field (the group has order
// 360 over every admissible field; any collapse is rejected).

#include "plane.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace a6arc {

enum GenIndex : int { GEN_U = 0, GEN_OMEGA = 1, GEN_V = 2, GEN_W = 3 };

struct GeneratorSet {
    FieldCtx ctx;
    Mat3 U, Omega, V, W; // as displayed, not canonicalized

    const Mat3& operator[](int g) const {
        switch (g) {
        case GEN_U: return U;
        case GEN_OMEGA: return Omega;
        case GEN_V: return V;
        case GEN_W: return W;
        }
        throw bad_index("generator index must be 0..3");
    }
};

// ctx must be the field containing s (SpecialElems::sctx); t, z, delta are
// embedded from the base field when the two differ.
inline GeneratorSet build_generators(const FieldCtx& ctx, const SpecialElems& sp) {
    if (!(ctx == sp.sctx)) throw internal_inconsistency("generators must live in the field containing s");
    bool lift = !(sp.base == ctx);
    FieldElem t = lift ? embed(sp.base, ctx, sp.t) : sp.t;
    FieldElem z = lift ? embed(sp.base, ctx, sp.z) : sp.z;
    FieldElem delta = lift ? embed(sp.base, ctx, sp.delta) : sp.delta;
    FieldElem t2 = ctx.mul(t, t);
    FieldElem dz = ctx.mul(delta, z);
    FieldElem one = ctx.one(), zero = ctx.zero();
    FieldElem m2 = ctx.from_int(-2), p4 = ctx.from_int(4);
    FieldElem opdz = ctx.add(one, dz); // 1 + delta z
    FieldElem omdz = ctx.sub(one, dz); // 1 - delta z

    GeneratorSet g;
    g.ctx = ctx;
    g.U = {{{{zero, zero, one}, {one, zero, zero}, {zero, one, zero}}}};
    g.Omega = {{{{one, zero, zero}, {zero, t, zero}, {zero, zero, t2}}}};
    g.V = {{{{m2, opdz, opdz}, {omdz, p4, m2}, {omdz, m2, p4}}}};
    g.W = {{{{one, one, one}, {one, t, t2}, {one, t2, t}}}};
    for (int i = 0; i < 4; ++i)
        if (ctx.is_zero(mat_det(ctx, g[i]))) throw singular_matrix("generator matrix is singular");
    return g;
}

struct ProjectivityGroup {
    FieldCtx ctx;
    GeneratorSet gens;
    std::vector<Mat3> elements;              // canonical forms, BFS order; [0] = identity
    std::vector<std::vector<uint8_t>> words; // per element, generator indices; product read left to right

    std::size_t order() const { return elements.size(); }
};

inline constexpr std::size_t kGroupOrder = 360;
inline constexpr std::size_t kWordCap = 25;

inline ProjectivityGroup generate(const GeneratorSet& gens) {
    const FieldCtx& ctx = gens.ctx;
    ProjectivityGroup G;
    G.ctx = ctx;
    G.gens = gens;
    std::map<std::array<uint64_t, 9>, std::size_t> seen;
    G.elements.push_back(mat_identity(ctx));
    G.words.push_back({});
    seen.emplace(mat_key(ctx, G.elements[0]), 0);
    for (std::size_t head = 0; head < G.elements.size(); ++head) {
        Mat3 e = G.elements[head]; // copy: the vector may reallocate below
        for (int g = 0; g < 4; ++g) {
            Mat3 n = mat_canonical(ctx, mat_mul(ctx, gens[g], e));
            auto [it, fresh] = seen.emplace(mat_key(ctx, n), G.elements.size());
            if (!fresh) continue;
            std::vector<uint8_t> w;
            w.reserve(G.words[head].size() + 1);
            w.push_back(static_cast<uint8_t>(g));
            w.insert(w.end(), G.words[head].begin(), G.words[head].end());
            if (w.size() > kWordCap)
                throw closure_overflow("generator word exceeds length cap; wrong field setup");
            G.elements.push_back(n);
            G.words.push_back(std::move(w));
            if (G.elements.size() > kGroupOrder)
                throw closure_overflow("closure exceeds 360 elements; wrong field setup");
        }
    }
    if (G.elements.size() != kGroupOrder)
        throw closure_overflow("closure stopped at " + std::to_string(G.elements.size()) +
                               " elements, expected 360");
    return G;
}

// Multiplies the word's generators left to right; equals the stored element.
inline Mat3 evaluate_word(const GeneratorSet& gens, const std::vector<uint8_t>& word) {
    Mat3 m = mat_identity(gens.ctx);
    for (uint8_t g : word) m = mat_mul(gens.ctx, m, gens[g]);
    return mat_canonical(gens.ctx, m);
}

// Projective order: least k >= 1 with M^k scalar.
inline int element_order(const FieldCtx& ctx, const Mat3& m) {
    Mat3 id = mat_identity(ctx);
    Mat3 x = mat_canonical(ctx, m);
    int k = 1;
    while (!(x == id)) {
        x = mat_canonical(ctx, mat_mul(ctx, x, m));
        ++k;
        if (k > 360) throw internal_inconsistency("element order exceeds group order");
    }
    return k;
}

inline std::map<int, int> order_histogram(const ProjectivityGroup& G) {
    std::map<int, int> h;
    for (const Mat3& m : G.elements) ++h[element_order(G.ctx, m)];
    return h;
}

inline std::vector<std::size_t> point_stabilizer(const ProjectivityGroup& G, const ProjPoint& p) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < G.elements.size(); ++i)
        if (apply(G.ctx, G.elements[i], p) == p) s.push_back(i);
    return s;
}

// Orbit points in order of first reach over the BFS element list.
inline std::vector<ProjPoint> group_orbit(const ProjectivityGroup& G, const ProjPoint& p) {
    std::vector<ProjPoint> pts;
    std::map<wide_t, std::size_t> seen;
    for (const Mat3& m : G.elements) {
        ProjPoint im = apply(G.ctx, m, p);
        if (seen.emplace(point_index(G.ctx, im), pts.size()).second) pts.push_back(im);
    }
    return pts;
}

} // namespace a6arc
