#pragma once

// The 90-point Gamma-orbit of P1 and its combinatorics: arc verification,
// the full line spectrum, completeness as a (90,m)-arc, and the generator
// matrix of the associated [90,3,88] MDS code.
//
// For q = p^r with q = 1 or 19 (mod 30) the four generators live in
// PGL(3,q), but the basepoint P1 needs s with s^2 = 3; when 3 is not a
// square in GF(q) the whole computation moves to GF(q^2).  Orbit indices
// follow the first-reach order over the BFS element list, which is the same
// for every admissible field: index 0 is P1, and g, h reach the same point
// exactly when g^-1 h stabilizes P1 (an abstract-group condition).

#include "group.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace a6arc {

// Eigenvector points of W: eigenvalues s, -s, and delta = t - t^2.
// Computed in sp.sctx, the field containing s.
inline std::array<ProjPoint, 3> fixed_points_of_W(const SpecialElems& sp) {
    const FieldCtx& ctx = sp.sctx;
    bool lift = !(sp.base == ctx);
    FieldElem s = sp.s;
    FieldElem half = ctx.inv(ctx.from_int(2));
    FieldElem one = ctx.one();
    FieldElem a = ctx.mul(ctx.sub(s, one), half);            // (s-1)/2
    FieldElem b = ctx.neg(ctx.mul(ctx.add(s, one), half));   // -(s+1)/2
    std::array<ProjPoint, 3> pts = {make_point(ctx, one, a, a), make_point(ctx, one, b, b),
                                    make_point(ctx, ctx.zero(), one, ctx.neg(one))};
    FieldElem delta = lift ? embed(sp.base, ctx, sp.delta) : sp.delta;
    std::array<FieldElem, 3> eigenvalues = {s, ctx.neg(s), delta};
    GeneratorSet gens = build_generators(ctx, sp);
    for (int i = 0; i < 3; ++i) {
        for (int row = 0; row < 3; ++row) {
            FieldElem lhs = dot3(ctx, gens.W.m[row], pts[i].v);
            FieldElem rhs = ctx.mul(eigenvalues[i], pts[i].v[row]);
            if (!(lhs == rhs)) throw internal_inconsistency("eigenvector relation failed");
        }
    }
    return pts;
}

struct OrbitResult {
    uint64_t p = 0;
    int r = 0;
    uint64_t q_base = 0; // p^r, the q of the hypothesis
    FieldCtx plane;      // field of the plane containing the orbit (q_base or q_base^2)
    SpecialElems sp;
    FieldElem t, z, s, delta; // as elements of plane
    ProjectivityGroup group;
    ProjPoint basepoint;
    std::vector<ProjPoint> points;       // the 90 orbit points, index 0 = basepoint
    std::vector<std::size_t> rep_element; // first group element reaching each point
    std::vector<std::size_t> stabilizer;  // element indices fixing P1; always {1, W, W^2, W^3}

    uint64_t plane_q() const { return plane.q(); }
};

inline constexpr std::size_t kOrbitSize = 90;

inline OrbitResult construct_orbit_variant(uint64_t p, int r, bool swap_t, bool negate_z,
                                           bool negate_s) {
    FieldCtx base = make_field(p, r);
    if (!validate_q(p, r))
        throw invalid_q("q = " + std::to_string(base.q()) + " is " + std::to_string(base.q() % 30) +
                        " (mod 30); admissible q are 1 or 19 (mod 30)");
    OrbitResult orb;
    orb.p = p;
    orb.r = r;
    orb.q_base = base.q();
    orb.sp = special_elems_variant(base, swap_t, negate_z, negate_s);
    orb.plane = orb.sp.sctx;
    bool lift = !orb.sp.s_in_base;
    orb.t = lift ? embed(base, orb.plane, orb.sp.t) : orb.sp.t;
    orb.z = lift ? embed(base, orb.plane, orb.sp.z) : orb.sp.z;
    orb.delta = lift ? embed(base, orb.plane, orb.sp.delta) : orb.sp.delta;
    orb.s = orb.sp.s;
    orb.group = generate(build_generators(orb.plane, orb.sp));
    orb.basepoint = fixed_points_of_W(orb.sp)[0];

    std::map<wide_t, std::size_t> seen;
    for (std::size_t i = 0; i < orb.group.elements.size(); ++i) {
        ProjPoint im = apply(orb.plane, orb.group.elements[i], orb.basepoint);
        if (seen.emplace(point_index(orb.plane, im), orb.points.size()).second) {
            orb.points.push_back(im);
            orb.rep_element.push_back(i);
        }
        if (im == orb.basepoint) orb.stabilizer.push_back(i);
    }
    if (orb.points.size() != kOrbitSize || orb.stabilizer.size() != 4)
        throw internal_inconsistency("orbit/stabilizer sizes are not 90/4");
    std::set<std::array<uint64_t, 9>> stab_keys, w_keys;
    for (std::size_t i : orb.stabilizer) stab_keys.insert(mat_key(orb.plane, orb.group.elements[i]));
    Mat3 wpow = mat_identity(orb.plane);
    for (int k = 0; k < 4; ++k) {
        w_keys.insert(mat_key(orb.plane, mat_canonical(orb.plane, wpow)));
        wpow = mat_mul(orb.plane, wpow, orb.group.gens.W);
    }
    if (stab_keys != w_keys) throw internal_inconsistency("stabilizer of P1 is not the W-cycle");
    return orb;
}

inline OrbitResult construct_orbit(uint64_t p, int r) {
    return construct_orbit_variant(p, r, false, false, false);
}

// r = 1 when p itself satisfies the congruence, else 2 (p^2 always does for
// p coprime to 30).
inline int minimal_valid_r(uint64_t p) { return validate_q(p, 1) ? 1 : 2; }

// Distinct lines spanned by orbit point pairs, each with its exact
// intersection size m >= 2, in first-reach order over pairs (i < j).
struct SecantLine {
    ProjLine line;
    int mult;
    int i, j; // the first orbit point pair spanning the line
};

inline std::vector<SecantLine> secant_lines(const OrbitResult& orb) {
    const FieldCtx& ctx = orb.plane;
    std::vector<SecantLine> out;
    std::set<wide_t> seen;
    for (int i = 0; i < static_cast<int>(orb.points.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(orb.points.size()); ++j) {
            ProjLine l = line_through(ctx, orb.points[i], orb.points[j]);
            if (!seen.insert(line_index(ctx, l)).second) continue;
            int m = 0;
            for (const ProjPoint& pt : orb.points)
                if (incident(ctx, l, pt)) ++m;
            out.push_back({l, m, i, j});
        }
    return out;
}

inline int max_secancy(const OrbitResult& orb) {
    int m = 0;
    for (const SecantLine& s : secant_lines(orb)) m = std::max(m, s.mult);
    return m;
}

struct ArcVerdict {
    bool is_arc = false;
    std::vector<std::array<int, 3>> collinear_triples; // i < j < k, lexicographic
};

inline ArcVerdict arc_check(const OrbitResult& orb) {
    const FieldCtx& ctx = orb.plane;
    ArcVerdict v;
    for (int i = 0; i < 90; ++i)
        for (int j = i + 1; j < 90; ++j)
            for (int k = j + 1; k < 90; ++k)
                if (collinear(ctx, orb.points[i], orb.points[j], orb.points[k]))
                    v.collinear_triples.push_back({i, j, k});
    v.is_arc = v.collinear_triples.empty();
    return v;
}

struct LineSpectrum {
    std::map<int, uint64_t> counts; // intersection size m -> number of lines
};

// Exact spectrum without scanning the plane: classify the <= 4005 distinct
// secant lines, then tangents = 90(q+1) - sum of secant multiplicities and
// external lines by subtraction.  Line totals are tabulated in 64 bits,
// which bounds the plane order.
inline LineSpectrum line_spectrum(const OrbitResult& orb) {
    uint64_t q = orb.plane_q();
    if (q > 3'000'000'000ull)
        throw std::domain_error("line totals overflow 64 bits for plane order " + std::to_string(q));
    LineSpectrum sp;
    uint64_t nsecants = 0, on_secants = 0, pair_sum = 0;
    for (const SecantLine& s : secant_lines(orb)) {
        ++sp.counts[s.mult];
        ++nsecants;
        on_secants += static_cast<uint64_t>(s.mult);
        pair_sum += static_cast<uint64_t>(s.mult) * (s.mult - 1) / 2;
    }
    if (pair_sum != 4005) throw internal_inconsistency("secant lines do not cover the 4005 pairs");
    uint64_t tangents = 90 * (q + 1) - on_secants;
    uint64_t total = q * q + q + 1;
    uint64_t external = total - tangents - nsecants;
    if (tangents != 0) sp.counts[1] = tangents;
    if (external != 0) sp.counts[0] = external;
    return sp;
}

// Brute-force cross-check: walk every line of the plane and count incidences.
inline LineSpectrum line_spectrum_oracle(const OrbitResult& orb, uint64_t max_plane = 2'000'000) {
    const FieldCtx& ctx = orb.plane;
    wide_t total = plane_size(ctx);
    if (total > max_plane) throw std::domain_error("plane too large for the full line scan");
    LineSpectrum sp;
    for (wide_t idx = 0; idx < total; ++idx) {
        ProjLine l = line_at(ctx, idx);
        int m = 0;
        for (const ProjPoint& pt : orb.points)
            if (incident(ctx, l, pt)) ++m;
        ++sp.counts[m];
    }
    return sp;
}

// Largest orbit-intersection among the 90 lines joining Q to orbit points.
// Every line through Q meeting the orbit shows up here, so Q extends the
// set to a (91,m)-arc exactly when this value is <= m-1.
inline int max_secancy_through(const OrbitResult& orb, const ProjPoint& q) {
    const FieldCtx& ctx = orb.plane;
    std::array<wide_t, kOrbitSize> keys;
    for (std::size_t k = 0; k < kOrbitSize; ++k)
        keys[k] = line_index(ctx, line_through(ctx, q, orb.points[k]));
    std::sort(keys.begin(), keys.end());
    int best = 1, run = 1;
    for (std::size_t k = 1; k < kOrbitSize; ++k) {
        run = (keys[k] == keys[k - 1]) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

struct CompletenessResult {
    bool complete = false;
    bool exhaustive = false;            // true: every plane point was tried
    std::optional<ProjPoint> witness;   // an extension point, when incomplete
};

// The q + 1 points of a line, given two distinct points on it.
template <typename Fn>
inline void for_points_on_line(const FieldCtx& ctx, const ProjPoint& a, const ProjPoint& b, Fn&& fn) {
    fn(b);
    for (uint64_t e = 0; e < ctx.q(); ++e) {
        FieldElem lam = ctx.decode(e);
        std::array<FieldElem, 3> v;
        for (int i = 0; i < 3; ++i) v[i] = ctx.add(a.v[i], ctx.mul(lam, b.v[i]));
        fn(ProjPoint{canonical_triple(ctx, v)});
    }
}

// A (90,m)-arc is complete when no plane point can be added while keeping
// every line's intersection at most m.  A point Q is blocked exactly when
// it lies on a line already meeting the orbit in m points; on small planes
// those lines' points are marked and the plane is swept for an unmarked
// non-orbit point.  On planes above the budget the blocking lines cover too
// few points, so the set is incomplete and a witness is found by seeded
// random search.  Either way the witness is re-verified directly.
inline CompletenessResult completeness_check(const OrbitResult& orb, int m,
                                             uint64_t exhaustive_budget = 100'000'000ull) {
    const FieldCtx& ctx = orb.plane;
    if (m < 2) throw std::domain_error("completeness needs m >= 2");
    std::set<wide_t> members;
    for (const ProjPoint& pt : orb.points) members.insert(point_index(ctx, pt));
    wide_t total = plane_size(ctx);
    std::vector<SecantLine> secants = secant_lines(orb);
    CompletenessResult res;
    auto verified_witness = [&](const ProjPoint& q) {
        if (max_secancy_through(orb, q) > m - 1)
            throw internal_inconsistency("extension witness failed re-verification");
        res.complete = false;
        res.witness = q;
        return res;
    };
    if (total <= exhaustive_budget) {
        res.exhaustive = true;
        std::vector<bool> blocked(static_cast<std::size_t>(total), false);
        for (const SecantLine& s : secants) {
            if (s.mult < m) continue;
            for_points_on_line(ctx, orb.points[s.i], orb.points[s.j], [&](const ProjPoint& pt) {
                blocked[static_cast<std::size_t>(point_index(ctx, pt))] = true;
            });
        }
        for (wide_t idx = 0; idx < total; ++idx)
            if (!blocked[static_cast<std::size_t>(idx)] && !members.count(idx))
                return verified_witness(point_at(ctx, idx));
        res.complete = true;
        return res;
    }
    res.exhaustive = false;
    uint64_t full_lines = 0;
    for (const SecantLine& s : secants)
        if (s.mult >= m) ++full_lines;
    wide_t covered = wide_t(full_lines) * (orb.plane_q() + 1) + kOrbitSize;
    if (covered >= total)
        throw internal_inconsistency("counting bound inconclusive on a plane above the scan budget");
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (orb.p * 1000003ull + orb.r));
    std::uniform_int_distribution<uint64_t> coord(0, orb.plane_q() - 1);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        ProjPoint q = {{ctx.one(), ctx.decode(coord(rng)), ctx.decode(coord(rng))}};
        if (members.count(point_index(ctx, q))) continue;
        if (max_secancy_through(orb, q) <= m - 1) return verified_witness(q);
    }
    throw std::runtime_error("no extension witness found by random search");
}

struct MdsCode {
    int n = 90, k = 3, d = 88;
    FieldCtx ctx;
    std::vector<ProjPoint> columns; // sorted by canonical point encoding
};

// Generator matrix of the [90,3,88] MDS code: columns are the arc points.
// d = n - max secancy; for an arc the maximum is exactly 2 (bisecants exist).
inline MdsCode export_mds(const OrbitResult& orb) {
    if (!arc_check(orb).is_arc)
        throw not_an_arc("the 90-point orbit is not an arc over this field");
    int ms = max_secancy(orb);
    if (ms != 2) throw internal_inconsistency("arc with maximum secancy != 2");
    MdsCode code;
    code.ctx = orb.plane;
    code.d = 90 - ms;
    code.columns = orb.points;
    std::sort(code.columns.begin(), code.columns.end(),
              [&](const ProjPoint& a, const ProjPoint& b) {
                  return point_index(orb.plane, a) < point_index(orb.plane, b);
              });
    return code;
}

} // namespace a6arc
