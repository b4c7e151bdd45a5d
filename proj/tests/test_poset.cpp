#include <bit>
#include <random>

#include "doctest.h"
#include "mcx/lattice.hpp"
#include "test_util.hpp"

using namespace mcx;
using testutil::build;

namespace {

MultiComplex star(int leaves) {
    std::vector<Face> extra;
    for (int v = 2; v <= leaves + 1; ++v) extra.push_back(Face{1, v});
    return build(leaves + 1, extra);
}

} // namespace

TEST_CASE("ideal enumeration") {
    const auto k3 = build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}});
    const auto tri = build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}, Face{1, 2, 3}},
                           {{0, 3}, {1, 3}, {2, 3}});

    // dimension <= 1: every edge subset is down-closed
    CHECK(enumerate_ideals(k3).size() == 8);
    CHECK(enumerate_ideals(build(1, {})).size() == 1);
    CHECK(enumerate_ideals(build(2, {Face{1, 1}, Face{1, 2}, Face{1, 2}})).size() == 8);

    // the 2-face (bit 1 in lexicographic face order) forces all three edges
    const auto tri_ideals = enumerate_ideals(tri);
    CHECK(tri_ideals.size() == 9);
    CHECK(std::is_sorted(tri_ideals.begin(), tri_ideals.end()));
    for (const auto mask : tri_ideals)
        if (mask & 0b0010u) CHECK((mask & 0b1101u) == 0b1101u);

    const SpanningLattice lat(tri);
    CHECK(lat.size() == 9);
    CHECK(lat.full_mask() == 0b1111u);
    CHECK(lat.contains(0b0101u));
    CHECK_FALSE(lat.contains(0b0011u));
    CHECK(lat.owner() == tri);
}

TEST_CASE("mobius golden values") {
    const SpanningLattice k2(build(2, {Face{1, 2}}));
    CHECK(k2.mobius(0, k2.full_mask()) == -1);
    CHECK(k2.mobius(0, 0) == 1);
    CHECK(k2.mobius(k2.full_mask(), k2.full_mask()) == 1);

    const SpanningLattice k3(build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}}));
    CHECK(k3.mobius(0, k3.full_mask()) == -1);
    CHECK(k3.mobius(0b001, 0b111) == 1);
    CHECK(k3.mobius(0b001, 0b011) == -1);

    // triangle with its boundary: the interval [all edges, full] collapses mu
    const SpanningLattice tri(build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}, Face{1, 2, 3}},
                                    {{0, 3}, {1, 3}, {2, 3}}));
    CHECK(tri.mobius(0, tri.full_mask()) == 0);
    CHECK(tri.mobius(0b1101, 0b1111) == -1);
}

TEST_CASE("mobius errors") {
    const SpanningLattice tri(build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}, Face{1, 2, 3}},
                                    {{0, 3}, {1, 3}, {2, 3}}));
    CHECK_FAILS(errc::not_comparable, tri.mobius(0b0100, 0b1001));
    CHECK_FAILS(errc::not_downward_closed, tri.mobius(0b0010, 0b1111));
    CHECK_FAILS(errc::not_comparable, tri.mobius_chain_oracle(0b1101, 0b0001));
}

TEST_CASE("dimension <= 1: mu is (-1)^(edge difference)") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        std::vector<Face> extra;
        const int m = 1 + static_cast<int>(rng() % 5);
        for (int e = 0; e < m; ++e) {
            const int a = 1 + static_cast<int>(rng() % n);
            const int b = 1 + static_cast<int>(rng() % n);
            extra.push_back(Face{a, b});
        }
        const SpanningLattice lat(build(n, extra));
        for (std::uint32_t hi = 0; hi < (1u << m); ++hi) {
            const std::uint32_t lo = hi & static_cast<std::uint32_t>(rng());
            const int diff = std::popcount(hi ^ lo);
            CHECK(lat.mobius(lo, hi) == Integer(diff % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("chain oracle agrees with the recursion on every interval") {
    std::vector<MultiComplex> owners{
        build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}}),
        build(2, {Face{1, 1}, Face{1, 2}, Face{1, 2}}),
        build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}, Face{1, 2, 3}}, {{0, 3}, {1, 3}, {2, 3}}),
        build(3, {Face{1, 2}, Face{1, 2}, Face{2, 3}, Face{1, 3}, Face{1, 2, 3}},
              {{0, 4}, {2, 4}, {3, 4}}),
    };
    for (const auto& owner : owners) {
        const SpanningLattice lat(owner);
        for (const auto lo : lat.ideals())
            for (const auto hi : lat.ideals()) {
                if ((lo & ~hi) != 0) continue;
                CHECK(lat.mobius(lo, hi) == lat.mobius_chain_oracle(lo, hi));
            }
    }
}

TEST_CASE("mobius multiplies over disjoint unions") {
    const auto k3 = build(3, {Face{1, 2}, Face{1, 3}, Face{2, 3}});
    const auto k2 = build(2, {Face{1, 2}});
    const SpanningLattice lat1(k3), lat2(k2), both(disjoint_union(k3, k2));
    const int m1 = k3.nonsingleton_count();
    for (const auto a : lat1.ideals())
        for (const auto b : lat2.ideals()) {
            const std::uint32_t hi = a | (b << m1);
            for (const auto c : lat1.ideals())
                for (const auto d : lat2.ideals()) {
                    if ((c & ~a) || (d & ~b)) continue;
                    const std::uint32_t lo = c | (d << m1);
                    CHECK(both.mobius(lo, hi) == lat1.mobius(c, a) * lat2.mobius(d, b));
                }
        }
}

TEST_CASE("boolean lattice sanity at larger sizes") {
    // mu over B_8 alternates; the chain oracle handles the full interval
    const SpanningLattice b8(star(8));
    CHECK(b8.size() == 256);
    CHECK(b8.mobius(0, b8.full_mask()) == 1);
    CHECK(b8.mobius_chain_oracle(0, b8.full_mask()) == 1);

    // intervals beyond 4096 elements refuse chain enumeration but not mu
    const SpanningLattice b13(star(13));
    CHECK(b13.size() == 8192);
    CHECK_FAILS(errc::size_limit_exceeded, b13.mobius_chain_oracle(0, b13.full_mask()));
    CHECK(b13.mobius(b13.full_mask() & ~0b111u, b13.full_mask()) == -1);
    CHECK(b13.mobius_chain_oracle(b13.full_mask() & ~0b1u, b13.full_mask()) == -1);
}

TEST_CASE("ideal enumeration face-count guard") {
    const int saved = limits().max_faces;
    limits().max_faces = 28;
    std::vector<Face> extra;
    for (int e = 0; e < 27; ++e) extra.push_back(Face{1, 2});
    const auto crowded = build(2, extra);
    CHECK_FAILS(errc::size_limit_exceeded, enumerate_ideals(crowded));
    limits().max_faces = saved;
}
