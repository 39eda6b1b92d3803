#pragma once

// Symbolic reconstruction of the exceptional-prime machinery.  The 90 orbit
// points are rebuilt inside R = Z[t,s,z]/(t^2+t+1, s^2-3, z^2-5) by
// replaying the generator words recorded for a reference field; collinearity
// of (P1, Qi, Qj) over GF(q) forces p to divide the integer obtained by
// eliminating t, s, z from the determinant D_{i,j}.  Primes of the divided-
// out content count toward delta_{i,j} as well: the full resultant is
// content^8 times the tower value of the primitive part.
//
// R has zero divisors, so symbolic points are never normalized; the prime
// sets may therefore pick up scaling artifacts.  Every prime >= 7 is
// confirmed or refuted by running the numeric orbit over its minimal
// admissible field.

#include "factor.hpp"
#include "orbit.hpp"
#include "poly.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace a6arc {

struct SymPoint {
    std::array<SymElem, 3> v;
};

using SymMat = std::array<std::array<SymElem, 3>, 3>;

inline SymElem sym_t2() { // t^2 = -1 - t
    SymElem e;
    e.c[0] = -1;
    e.c[1] = -1;
    return e;
}

inline SymElem sym_delta_z(int sign) { // +-(z + 2tz), delta = t - t^2 = 1 + 2t
    SymElem e;
    e.c[4] = sign;
    e.c[5] = 2 * sign;
    return e;
}

inline SymMat sym_generator(int g) {
    SymElem z0 = sym_int(0), one = sym_int(1);
    switch (g) {
    case GEN_U: return {{{z0, z0, one}, {one, z0, z0}, {z0, one, z0}}};
    case GEN_OMEGA: return {{{one, z0, z0}, {z0, sym_var(VAR_T), z0}, {z0, z0, sym_t2()}}};
    case GEN_V: {
        SymElem m2 = sym_int(-2), p4 = sym_int(4);
        SymElem opdz = sym_add(one, sym_delta_z(1)), omdz = sym_add(one, sym_delta_z(-1));
        return {{{m2, opdz, opdz}, {omdz, p4, m2}, {omdz, m2, p4}}};
    }
    case GEN_W: return {{{one, one, one}, {one, sym_var(VAR_T), sym_t2()}, {one, sym_t2(), sym_var(VAR_T)}}};
    }
    throw bad_index("generator index must be 0..3");
}

inline SymPoint sym_apply(const SymMat& m, const SymPoint& p) {
    SymPoint r;
    for (int i = 0; i < 3; ++i) {
        SymElem acc;
        for (int k = 0; k < 3; ++k) acc = sym_add(acc, sym_mul(m[i][k], p.v[k]));
        r.v[i] = acc;
    }
    return r;
}

// P1 with the denominator 2 cleared: (2, s-1, s-1).
inline SymPoint symbolic_basepoint() {
    SymElem sm1;
    sm1.c[0] = -1;
    sm1.c[2] = 1;
    return {sym_int(2), sm1, sm1};
}

// Replays each orbit point's generator word on the symbolic basepoint, then
// checks that specializing at the reference field's (t, s, z) reproduces the
// reference orbit point (projectively).
inline std::vector<SymPoint> symbolic_orbit(const OrbitResult& ref) {
    std::array<SymMat, 4> gens = {sym_generator(0), sym_generator(1), sym_generator(2),
                                  sym_generator(3)};
    std::vector<SymPoint> pts;
    pts.reserve(kOrbitSize);
    const FieldCtx& ctx = ref.plane;
    for (std::size_t k = 0; k < kOrbitSize; ++k) {
        const std::vector<uint8_t>& word = ref.group.words[ref.rep_element[k]];
        SymPoint pt = symbolic_basepoint();
        for (auto it = word.rbegin(); it != word.rend(); ++it) pt = sym_apply(gens[*it], pt);
        std::array<FieldElem, 3> spec;
        bool all_zero = true;
        for (int i = 0; i < 3; ++i) {
            spec[i] = sym_specialize(ctx, ref.t, ref.s, ref.z, pt.v[i]);
            all_zero = all_zero && ctx.is_zero(spec[i]);
        }
        if (all_zero || !(make_point(ctx, spec[0], spec[1], spec[2]) == ref.points[k]))
            throw word_replay_mismatch("symbolic point " + std::to_string(k) +
                                       " does not specialize to the reference orbit point");
        pts.push_back(std::move(pt));
    }
    return pts;
}

// det of rows (P1, Qi, Qj) over R, 1 <= i < j <= 89.
inline SymElem collinearity_det(int i, int j, const std::vector<SymPoint>& pts) {
    if (!(1 <= i && i < j && j <= 89)) throw bad_index("pair indices must satisfy 1 <= i < j <= 89");
    std::vector<std::vector<SymElem>> m = {
        {pts[0].v[0], pts[0].v[1], pts[0].v[2]},
        {pts[std::size_t(i)].v[0], pts[std::size_t(i)].v[1], pts[std::size_t(i)].v[2]},
        {pts[std::size_t(j)].v[0], pts[std::size_t(j)].v[1], pts[std::size_t(j)].v[2]}};
    return sym_det(std::move(m));
}

inline constexpr int kPairCount = 3916; // C(89,2)

struct PairResult {
    int i = 0, j = 0;
    mpz_class resultant;            // tower value of the primitive part of D_{i,j}
    std::vector<mpz_class> primes;  // delta_{i,j}: primes of content and resultant, ascending
};

inline std::vector<std::pair<int, int>> pair_order() {
    std::vector<std::pair<int, int>> v;
    v.reserve(kPairCount);
    for (int i = 1; i <= 88; ++i)
        for (int j = i + 1; j <= 89; ++j) v.emplace_back(i, j);
    return v;
}

inline PairResult eliminate_pair(int i, int j, const std::vector<SymPoint>& pts) {
    PairResult r;
    r.i = i;
    r.j = j;
    ElimResult er = eliminate_with_content(collinearity_det(i, j, pts));
    if (er.resultant == 0)
        throw zero_resultant("pair (" + std::to_string(i) + "," + std::to_string(j) +
                             ") eliminates to zero");
    r.resultant = er.resultant;
    r.primes = factor_primes(er.resultant);
    for (const mpz_class& p : factor_primes(er.content)) r.primes.push_back(p);
    std::sort(r.primes.begin(), r.primes.end());
    r.primes.erase(std::unique(r.primes.begin(), r.primes.end()), r.primes.end());
    return r;
}

inline std::vector<PairResult> compute_pairs(const std::vector<SymPoint>& pts, int jobs = 1) {
    std::vector<std::pair<int, int>> order = pair_order();
    std::vector<PairResult> out(order.size());
    auto run = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t k = lo; k < hi; ++k) out[k] = eliminate_pair(order[k].first, order[k].second, pts);
    };
    if (jobs <= 1) {
        run(0, order.size());
    } else {
        std::vector<std::thread> workers;
        std::size_t chunk = (order.size() + jobs - 1) / jobs;
        for (int w = 0; w < jobs; ++w) {
            std::size_t lo = std::min(order.size(), w * chunk);
            std::size_t hi = std::min(order.size(), lo + chunk);
            if (lo < hi) workers.emplace_back(run, lo, hi);
        }
        for (std::thread& t : workers) t.join();
    }
    return out;
}

enum class PrimeStatus {
    out_of_hypothesis, // p < 7
    confirmed,         // numeric orbit over minimal admissible q is not an arc
    spurious,          // numeric orbit is an arc: a scaling artifact
    unverified         // beyond the numeric field range
};

inline constexpr unsigned long kVerifyCap = 2'000'000;

struct DeltaReport {
    std::vector<PairResult> pairs;
    std::vector<mpz_class> delta; // union of all per-pair sets, ascending
    std::map<mpz_class, PrimeStatus> status;

    std::vector<unsigned long> confirmed() const {
        std::vector<unsigned long> v;
        for (const auto& [p, st] : status)
            if (st == PrimeStatus::confirmed) v.push_back(p.get_ui());
        return v;
    }
};

inline DeltaReport finalize_report(std::vector<PairResult> pairs) {
    DeltaReport rep;
    rep.pairs = std::move(pairs);
    for (const PairResult& pr : rep.pairs)
        rep.delta.insert(rep.delta.end(), pr.primes.begin(), pr.primes.end());
    std::sort(rep.delta.begin(), rep.delta.end());
    rep.delta.erase(std::unique(rep.delta.begin(), rep.delta.end()), rep.delta.end());
    for (const mpz_class& p : rep.delta) {
        if (p < 7) {
            rep.status[p] = PrimeStatus::out_of_hypothesis;
        } else if (p > kVerifyCap) {
            rep.status[p] = PrimeStatus::unverified;
        } else {
            unsigned long pu = p.get_ui();
            OrbitResult orb = construct_orbit(pu, minimal_valid_r(pu));
            rep.status[p] =
                arc_check(orb).is_arc ? PrimeStatus::spurious : PrimeStatus::confirmed;
        }
    }
    return rep;
}

inline DeltaReport compute_delta(const std::vector<SymPoint>& pts, int jobs = 1) {
    return finalize_report(compute_pairs(pts, jobs));
}

// Cache: one line per pair, "i j <resultant> p1,p2,..." in pair order; the
// prime list is omitted when empty.  Reload validates syntax and order only.
inline void write_pair_cache(const std::string& path, const std::vector<PairResult>& pairs) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + path);
    for (const PairResult& pr : pairs) {
        out << pr.i << ' ' << pr.j << ' ' << pr.resultant;
        for (std::size_t k = 0; k < pr.primes.size(); ++k)
            out << (k == 0 ? ' ' : ',') << pr.primes[k];
        out << '\n';
    }
}

inline mpz_class parse_mpz(const std::string& s, std::size_t line_no, const std::string& what) {
    mpz_class v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw cache_corrupt(line_no, "unparsable " + what + " \"" + s + "\"");
    return v;
}

inline std::vector<PairResult> load_pair_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read cache file " + path);
    std::vector<std::pair<int, int>> order = pair_order();
    std::vector<PairResult> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.eof()) break;
        if (pairs.size() >= order.size()) throw cache_corrupt(line_no, "extra line beyond 3916 pairs");
        std::istringstream ls(line);
        PairResult pr;
        std::string res_str, primes_str, extra;
        if (!(ls >> pr.i >> pr.j >> res_str)) throw cache_corrupt(line_no, "expected \"i j <integer>\"");
        auto [want_i, want_j] = order[pairs.size()];
        if (pr.i != want_i || pr.j != want_j)
            throw cache_corrupt(line_no, "pair out of order: expected (" + std::to_string(want_i) +
                                             "," + std::to_string(want_j) + ")");
        pr.resultant = parse_mpz(res_str, line_no, "resultant");
        if (pr.resultant == 0) throw cache_corrupt(line_no, "zero resultant");
        if (ls >> primes_str) {
            std::istringstream ps(primes_str);
            std::string tok;
            while (std::getline(ps, tok, ',')) {
                mpz_class p = parse_mpz(tok, line_no, "prime");
                if (p < 2 || (!pr.primes.empty() && p <= pr.primes.back()))
                    throw cache_corrupt(line_no, "primes not ascending integers >= 2");
                pr.primes.push_back(p);
            }
            if (pr.primes.empty()) throw cache_corrupt(line_no, "empty prime list token");
        }
        if (ls >> extra) throw cache_corrupt(line_no, "trailing token \"" + extra + "\"");
        pairs.push_back(std::move(pr));
    }
    if (pairs.size() != order.size())
        throw cache_corrupt(line_no + 1, "cache has " + std::to_string(pairs.size()) +
                                             " pairs, expected 3916");
    return pairs;
}

inline DeltaReport compute_delta_cached(const std::vector<SymPoint>& pts, const std::string& cache_path,
                                        int jobs = 1) {
    if (!cache_path.empty() && std::filesystem::exists(cache_path))
        return finalize_report(load_pair_cache(cache_path));
    DeltaReport rep = compute_delta(pts, jobs);
    if (!cache_path.empty()) write_pair_cache(cache_path, rep.pairs);
    return rep;
}

} // namespace a6arc
