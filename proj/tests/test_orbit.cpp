#include "a6arc/orbit.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <set>

using namespace a6arc;

namespace {

std::set<uint64_t> point_keys(const OrbitResult& orb) {
    std::set<uint64_t> s;
    for (const ProjPoint& pt : orb.points) s.insert(static_cast<uint64_t>(point_index(orb.plane, pt)));
    return s;
}

void check_sum_identities(const OrbitResult& orb, const LineSpectrum& sp) {
    uint64_t q = orb.plane_q();
    uint64_t total = 0, weighted = 0, pairs = 0;
    for (auto& [m, c] : sp.counts) {
        total += c;
        weighted += uint64_t(m) * c;
        pairs += uint64_t(m) * (m - 1) / 2 * c;
    }
    CHECK(total == q * q + q + 1);
    CHECK(weighted == 90 * (q + 1));
    CHECK(pairs == 4005);
}

// Independent completeness oracle: tabulate every plane line's orbit
// multiplicity, then try every non-member point.
std::optional<ProjPoint> brute_extension(const OrbitResult& orb, int m) {
    const FieldCtx& ctx = orb.plane;
    wide_t n = plane_size(ctx);
    std::vector<int> mult(static_cast<std::size_t>(n), 0);
    for (wide_t li = 0; li < n; ++li) {
        ProjLine l = line_at(ctx, li);
        int c = 0;
        for (const ProjPoint& pt : orb.points)
            if (incident(ctx, l, pt)) ++c;
        mult[static_cast<std::size_t>(li)] = c;
    }
    std::set<wide_t> members;
    for (const ProjPoint& pt : orb.points) members.insert(point_index(ctx, pt));
    for (wide_t pi = 0; pi < n; ++pi) {
        if (members.count(pi)) continue;
        ProjPoint q = point_at(ctx, pi);
        bool extends = true;
        for (wide_t li = 0; li < n && extends; ++li)
            if (mult[static_cast<std::size_t>(li)] >= m && incident(ctx, line_at(ctx, li), q))
                extends = false;
        if (extends) return q;
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("orbit over GF(61)") {
    OrbitResult orb = construct_orbit(61, 1);
    CHECK(orb.plane_q() == 61);
    CHECK(orb.plane.r() == 1);
    REQUIRE(orb.points.size() == 90);
    CHECK(point_keys(orb).size() == 90);
    // basepoint (2, s-1, s-1) = (2,7,7), canonically (1,34,34)
    CHECK(orb.points[0] == orb.basepoint);
    CHECK(orb.basepoint == make_point_i(orb.plane, 1, 34, 34));
    CHECK(orb.rep_element[0] == 0);
    CHECK(orb.stabilizer.size() == 4);
    CHECK(orb.stabilizer[0] == 0);
    CHECK(orb.group.order() == 360);
}

TEST_CASE("inadmissible parameters are rejected") {
    CHECK_THROWS_AS(construct_orbit(7, 1), invalid_q);
    CHECK_THROWS_AS(construct_orbit(11, 1), invalid_q);
    CHECK_THROWS_AS(construct_orbit(6, 1), composite_p);
    CHECK_NOTHROW(construct_orbit(7, 2));
    CHECK(minimal_valid_r(7) == 2);
    CHECK(minimal_valid_r(11) == 2);
    CHECK(minimal_valid_r(19) == 1);
    CHECK(minimal_valid_r(61) == 1);
}

TEST_CASE("hypothesis field vs plane field") {
    // p = 19 satisfies the congruence at r = 1, but s needs GF(361)
    OrbitResult orb = construct_orbit(19, 1);
    CHECK(orb.q_base == 19);
    CHECK(orb.plane_q() == 361);
    CHECK(orb.plane.r() == 2);
    // p = 7 enters only at r = 2, where everything lives in GF(49)
    OrbitResult orb49 = construct_orbit(7, 2);
    CHECK(orb49.q_base == 49);
    CHECK(orb49.plane_q() == 49);
}

TEST_CASE("line spectrum over GF(61)") {
    OrbitResult orb = construct_orbit(61, 1);
    LineSpectrum sp = line_spectrum(orb);
    std::map<int, uint64_t> expect = {{0, 1068}, {1, 450}, {2, 2025}, {4, 180}, {6, 60}};
    CHECK(sp.counts == expect);
    check_sum_identities(orb, sp);
    CHECK(max_secancy(orb) == 6);
    ArcVerdict v = arc_check(orb);
    CHECK_FALSE(v.is_arc);
    // 180 four-point lines and 60 six-point lines: 180*C(4,3) + 60*C(6,3)
    CHECK(v.collinear_triples.size() == 180 * 4 + 60 * 20);
}

TEST_CASE("line spectrum over GF(49)") {
    OrbitResult orb = construct_orbit(7, 2);
    LineSpectrum sp = line_spectrum(orb);
    std::map<int, uint64_t> expect = {{0, 336}, {1, 810}, {2, 765}, {4, 540}};
    CHECK(sp.counts == expect);
    check_sum_identities(orb, sp);
    CHECK_FALSE(arc_check(orb).is_arc);
}

TEST_CASE("line spectrum over GF(109)") {
    OrbitResult orb = construct_orbit(109, 1);
    LineSpectrum sp = line_spectrum(orb);
    std::map<int, uint64_t> expect = {{0, 5736}, {1, 2970}, {2, 2925}, {3, 360}};
    CHECK(sp.counts == expect);
    check_sum_identities(orb, sp);
    CHECK(arc_check(orb).collinear_triples.size() == 360);
}

TEST_CASE("line spectrum over GF(361) reached from p = 19") {
    OrbitResult orb = construct_orbit(19, 1);
    LineSpectrum sp = line_spectrum(orb);
    std::map<int, uint64_t> expect = {{0, 101676}, {1, 25650}, {2, 3285}, {5, 72}};
    CHECK(sp.counts == expect);
    check_sum_identities(orb, sp);
}

TEST_CASE("secant route agrees with the full plane scan") {
    for (auto [p, r] : {std::pair<uint64_t, int>{7, 2}, {61, 1}, {109, 1}, {11, 2}}) {
        OrbitResult orb = construct_orbit(p, r);
        CHECK(line_spectrum(orb).counts == line_spectrum_oracle(orb).counts);
    }
}

TEST_CASE("arcs have only external, tangent and bisecant lines") {
    OrbitResult orb = construct_orbit(31, 1);
    CHECK(orb.plane_q() == 961);
    LineSpectrum sp = line_spectrum(orb);
    std::map<int, uint64_t> expect = {{0, 841908}, {1, 78570}, {2, 4005}};
    CHECK(sp.counts == expect);
    check_sum_identities(orb, sp);
    CHECK(arc_check(orb).is_arc);
    CHECK(max_secancy(orb) == 2);
}

TEST_CASE("completeness matches the brute-force oracle") {
    for (auto [p, r, m] : {std::tuple<uint64_t, int, int>{7, 2, 4}, {61, 1, 6}}) {
        OrbitResult orb = construct_orbit(p, r);
        REQUIRE(line_spectrum(orb).counts.rbegin()->first == m);
        CompletenessResult res = completeness_check(orb, m);
        std::optional<ProjPoint> brute = brute_extension(orb, m);
        CHECK(res.complete == !brute.has_value());
        CHECK(res.exhaustive);
        if (res.witness) {
            REQUIRE(brute.has_value());
            CHECK(max_secancy_through(orb, *res.witness) <= m - 1);
        }
    }
}

TEST_CASE("the GF(121) set extends") {
    OrbitResult orb = construct_orbit(11, 2);
    LineSpectrum sp = line_spectrum(orb);
    std::map<int, uint64_t> expect = {{0, 7248}, {1, 4320}, {2, 3105}, {5, 90}};
    CHECK(sp.counts == expect);
    CompletenessResult res = completeness_check(orb, 5);
    CHECK_FALSE(res.complete);
    REQUIRE(res.witness.has_value());
    CHECK(max_secancy_through(orb, *res.witness) <= 4);
}

TEST_CASE("the GF(49) set is complete") {
    OrbitResult orb = construct_orbit(7, 2);
    CompletenessResult res = completeness_check(orb, 4);
    CHECK(res.complete);
    CHECK(res.exhaustive);
    CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("spectrum and verdicts are invariant under every root choice") {
    OrbitResult base = construct_orbit(61, 1);
    auto spec = line_spectrum(base).counts;
    bool arc = arc_check(base).is_arc;
    for (int mask = 1; mask < 8; ++mask) {
        OrbitResult v = construct_orbit_variant(61, 1, (mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0);
        CHECK(v.points.size() == 90);
        CHECK(line_spectrum(v).counts == spec);
        CHECK(arc_check(v).is_arc == arc);
    }
}

TEST_CASE("line walker visits q+1 distinct collinear points") {
    OrbitResult orb = construct_orbit(61, 1);
    const FieldCtx& ctx = orb.plane;
    ProjPoint a = orb.points[3], b = orb.points[70];
    ProjLine l = line_through(ctx, a, b);
    std::set<uint64_t> seen;
    for_points_on_line(ctx, a, b, [&](const ProjPoint& pt) {
        CHECK(incident(ctx, l, pt));
        seen.insert(static_cast<uint64_t>(point_index(ctx, pt)));
    });
    CHECK(seen.size() == ctx.q() + 1);
    CHECK(seen.count(static_cast<uint64_t>(point_index(ctx, a))) == 1);
    CHECK(seen.count(static_cast<uint64_t>(point_index(ctx, b))) == 1);
}

TEST_CASE("secant lines cover all 4005 pairs exactly once") {
    OrbitResult orb = construct_orbit(109, 1);
    uint64_t pair_sum = 0;
    std::set<uint64_t> line_keys;
    for (const SecantLine& s : secant_lines(orb)) {
        CHECK(s.mult >= 2);
        pair_sum += uint64_t(s.mult) * (s.mult - 1) / 2;
        CHECK(line_keys.insert(static_cast<uint64_t>(line_index(orb.plane, s.line))).second);
        CHECK(incident(orb.plane, s.line, orb.points[s.i]));
        CHECK(incident(orb.plane, s.line, orb.points[s.j]));
    }
    CHECK(pair_sum == 4005);
}

TEST_CASE("generator matrix export") {
    OrbitResult orb = construct_orbit(349, 1);
    MdsCode code = export_mds(orb);
    CHECK(code.n == 90);
    CHECK(code.k == 3);
    CHECK(code.d == 88);
    REQUIRE(code.columns.size() == 90);
    std::set<uint64_t> exported;
    for (std::size_t i = 0; i + 1 < code.columns.size(); ++i)
        CHECK(point_index(code.ctx, code.columns[i]) < point_index(code.ctx, code.columns[i + 1]));
    for (const ProjPoint& pt : code.columns) exported.insert(static_cast<uint64_t>(point_index(code.ctx, pt)));
    CHECK(exported == point_keys(orb));
    // non-arcs are refused
    OrbitResult orb61 = construct_orbit(61, 1);
    CHECK_THROWS_AS(export_mds(orb61), not_an_arc);
}
