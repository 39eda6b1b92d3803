#include "a6arc/group.hpp"
#include "a6arc/orbit.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace a6arc;

namespace {

ProjectivityGroup make_group(uint64_t p, int r) {
    FieldCtx F = make_field(p, r);
    SpecialElems sp = special_elems(F);
    return generate(build_generators(sp.sctx, sp));
}

} // namespace

TEST_CASE("generator identities") {
    FieldCtx F = make_field(61, 1);
    SpecialElems sp = special_elems(F);
    GeneratorSet g = build_generators(F, sp);
    // W^2 is 3 times the transposition of the last two coordinates
    Mat3 w2 = mat_mul(F, g.W, g.W);
    FieldElem three = F.from_int(3);
    Mat3 swap12 = mat_identity(F);
    std::swap(swap12.m[1], swap12.m[2]);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(w2.m[i][j] == F.mul(three, swap12.m[i][j]));
    // V^2 = 36 I
    Mat3 v2 = mat_mul(F, g.V, g.V);
    FieldElem c36 = F.from_int(36);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(v2.m[i][j] == (i == j ? c36 : F.zero()));
    // det W = -3 delta
    CHECK(mat_det(F, g.W) == F.neg(F.mul(F.from_int(3), sp.delta)));
    // U cycles coordinates: U^3 = I
    Mat3 u3 = mat_mul(F, g.U, mat_mul(F, g.U, g.U));
    CHECK(u3 == mat_identity(F));
}

TEST_CASE("closure has 360 elements with the alternating-group order profile") {
    for (auto [p, r] : {std::pair<uint64_t, int>{31, 1}, {61, 1}, {7, 2}, {349, 1}}) {
        ProjectivityGroup G = make_group(p, r);
        REQUIRE(G.order() == 360);
        std::map<int, int> h = order_histogram(G);
        std::map<int, int> expect = {{1, 1}, {2, 45}, {3, 80}, {4, 90}, {5, 144}};
        CHECK(h == expect);
    }
}

TEST_CASE("stored words reproduce their elements") {
    ProjectivityGroup G = make_group(61, 1);
    for (std::size_t i = 0; i < G.order(); ++i) {
        CHECK(evaluate_word(G.gens, G.words[i]) == G.elements[i]);
        CHECK(G.words[i].size() <= kWordCap);
    }
    CHECK(G.words[0].empty());
}

TEST_CASE("closure is closed under products and inverses") {
    ProjectivityGroup G = make_group(61, 1);
    std::set<std::array<uint64_t, 9>> keys;
    for (const Mat3& m : G.elements) keys.insert(mat_key(G.ctx, m));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> d(0, G.order() - 1);
    for (int k = 0; k < 300; ++k) {
        const Mat3& a = G.elements[d(rng)];
        const Mat3& b = G.elements[d(rng)];
        CHECK(keys.count(mat_key(G.ctx, mat_canonical(G.ctx, mat_mul(G.ctx, a, b)))) == 1);
    }
    // inverses: a^(order-1) is in the set too, via repeated multiplication
    for (int k = 0; k < 40; ++k) {
        const Mat3& a = G.elements[d(rng)];
        int n = element_order(G.ctx, a);
        Mat3 inv = mat_identity(G.ctx);
        for (int i = 0; i < n - 1; ++i) inv = mat_mul(G.ctx, inv, a);
        inv = mat_canonical(G.ctx, inv);
        CHECK(keys.count(mat_key(G.ctx, inv)) == 1);
        CHECK(mat_canonical(G.ctx, mat_mul(G.ctx, inv, a)) == mat_identity(G.ctx));
    }
}

TEST_CASE("element indexing does not depend on the field") {
    ProjectivityGroup A = make_group(61, 1);
    ProjectivityGroup B = make_group(7, 2);
    ProjectivityGroup C = make_group(19, 1); // plane moves to GF(361)
    REQUIRE(A.order() == B.order());
    CHECK(A.words == B.words);
    CHECK(A.words == C.words);
}

TEST_CASE("the group permutes the W-eigenpoints as expected") {
    FieldCtx F = make_field(61, 1);
    SpecialElems sp = special_elems(F);
    GeneratorSet g = build_generators(F, sp);
    auto pts = fixed_points_of_W(sp);
    // W fixes all three of its eigenpoints projectively
    for (const ProjPoint& pt : pts) CHECK(apply(F, g.W, pt) == pt);
    // V interchanges the first two eigenpoints
    CHECK(apply(F, g.V, pts[0]) == pts[1]);
    CHECK(apply(F, g.V, pts[1]) == pts[0]);
}

TEST_CASE("orbit-stabilizer identity for the eigenpoints") {
    FieldCtx F = make_field(61, 1);
    SpecialElems sp = special_elems(F);
    ProjectivityGroup G = generate(build_generators(F, sp));
    auto pts = fixed_points_of_W(sp);
    for (const ProjPoint& pt : pts) {
        std::size_t orbit = group_orbit(G, pt).size();
        std::size_t stab = point_stabilizer(G, pt).size();
        CHECK(orbit * stab == 360);
    }
    CHECK(group_orbit(G, pts[0]).size() == 90);
    CHECK(point_stabilizer(G, pts[0]).size() == 4);
    CHECK(group_orbit(G, pts[1]).size() == 90);
}

TEST_CASE("collapsed or wrong fields are rejected") {
    // q = 7: inadmissible congruence caught before any group work
    FieldCtx F7 = make_field(7, 1);
    CHECK_THROWS_AS(special_elems(F7), invalid_q);
    // generators demand the field containing s
    FieldCtx F19 = make_field(19, 1);
    SpecialElems sp19 = special_elems(F19);
    REQUIRE_FALSE(sp19.s_in_base);
    CHECK_THROWS_AS(build_generators(F19, sp19), internal_inconsistency);
    CHECK_NOTHROW(build_generators(sp19.sctx, sp19));
}
