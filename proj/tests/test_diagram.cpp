#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "pbratteli/diagram.hpp"

using namespace pbratteli;

namespace {

std::vector<std::int64_t> upper_positions(const std::vector<Edge>& edges) {
    std::vector<std::int64_t> out;
    for (const Edge& e : edges) out.push_back(e.upper.pos());
    return out;
}

std::vector<std::int64_t> lower_positions(const std::vector<Edge>& edges) {
    std::vector<std::int64_t> out;
    for (const Edge& e : edges) out.push_back(e.lower.pos());
    return out;
}

std::vector<std::int64_t> positions(const std::vector<VertexId>& vs) {
    std::vector<std::int64_t> out;
    for (const VertexId& v : vs) out.push_back(v.pos());
    return out;
}

}  // namespace

TEST_CASE("floor_vertices", "[diagram]") {
    const OddPrime p3{3};
    const FloorSlice f4 = floor_vertices(p3, 4);
    REQUIRE(f4.vertices.size() == 10);
    CHECK(f4.vertices.front().class_k() == 2);
    CHECK(f4.vertices[5].class_k() == 2);
    CHECK(f4.vertices[6].class_k() == 1);
    CHECK(f4.vertices[9].class_k() == 0);

    const FloorSlice f1 = floor_vertices(p3, 1);
    REQUIRE(f1.vertices.size() == 2);
    CHECK(vertex_to_hook(f1.vertices[0]).size == 2);
    CHECK(vertex_to_hook(f1.vertices[0]).leg == 0);
    CHECK(vertex_to_hook(f1.vertices[1]).leg == 1);

    std::int64_t class2 = 0;
    for (const VertexId& v : floor_vertices(OddPrime{5}, 10).vertices)
        if (v.class_k() == 2) {
            ++class2;
            CHECK(vertex_to_hook(v).size == 575);
        }
    CHECK(class2 == 25);
}

TEST_CASE("floor cardinalities", "[diagram][property]") {
    for (std::int64_t pv : {3, 5, 7}) {
        const OddPrime p{pv};
        for (std::int64_t f = 1; f <= 10; ++f) {
            const std::int64_t r = half_floor(f);
            std::int64_t want = p.pow(r - 1) * (pv - 1);
            if (f % 2 == 0)
                want += geom_sum(p, r).value();
            else
                for (std::int64_t k = 0; k <= r - 2; ++k) want += p.pow(k + 1);
            CHECK(static_cast<std::int64_t>(floor_vertices(p, f).vertices.size()) == want);
        }
    }
}

TEST_CASE("add_children", "[diagram]") {
    const OddPrime p3{3};
    const std::vector<Edge> a = add_children(VertexId{p3, 2, 0, 0});
    REQUIRE(a.size() == 3);
    CHECK(upper_positions(a) == std::vector<std::int64_t>{0, 1, 2});
    CHECK(a[0].block == Block{2, 2, 0});
    CHECK(a[1].block == Block{2, 1, 1});
    CHECK(a[2].block == Block{2, 0, 2});

    const std::vector<Edge> b = add_children(VertexId{p3, 1, 0, 0});
    REQUIRE(b.size() == 2);
    CHECK(b[0].upper == VertexId{p3, 2, 1, 0});
    CHECK(b[0].block.empty());
    CHECK(vertex_to_hook(b[0].upper).size == 2);

    // Children of floor-8 position 1 on floor 9 are p*1 + t.
    const std::vector<Edge> c = add_children(VertexId{OddPrime{5}, 8, 2, 1});
    CHECK(upper_positions(c) == std::vector<std::int64_t>{5, 6, 7, 8, 9});
}

TEST_CASE("remove_children", "[diagram]") {
    const OddPrime p5{5};
    const std::vector<Edge> a = remove_children(VertexId{p5, 10, 2, 9});
    CHECK(lower_positions(a) == std::vector<std::int64_t>{9, 34, 59, 84, 109});
    for (const Edge& e : a) CHECK(e.block.idx == 9);

    const std::vector<Edge> b = remove_children(VertexId{p5, 9, 2, 34});
    REQUIRE(b.size() == 1);
    CHECK(b[0].lower == VertexId{p5, 8, 2, 6});

    const std::vector<Edge> c = remove_children(VertexId{OddPrime{3}, 2, 0, 0});
    REQUIRE(c.size() == 2);
    CHECK(vertex_to_hook(c[0].lower).leg == 0);
    CHECK(c[0].block == Block{1, 0, 1});
    CHECK(vertex_to_hook(c[1].lower).leg == 1);
    CHECK(c[1].block == Block{1, 1, 0});

    // The floor-7 removal children of floor-8 position 1 are 1 + 25t.
    CHECK(lower_positions(remove_children(VertexId{p5, 8, 2, 1})) == std::vector<std::int64_t>{1, 26, 51, 76, 101});

    CHECK_THROWS_AS(remove_children(VertexId{p5, 1, 0, 0}), std::domain_error);
}

TEST_CASE("projection", "[diagram]") {
    CHECK(projection(OddPrime{3}, 1, 4) == 1);
    CHECK(projection(OddPrime{5}, 2, 34) == 6);
    CHECK(projection(OddPrime{7}, 3, 0) == 0);
    CHECK_THROWS_AS(projection(OddPrime{5}, 2, 125), std::out_of_range);
    for (std::int64_t pv : {3, 5})
        for (std::int64_t k = 1; k <= 3; ++k) {
            const OddPrime p{pv};
            for (std::int64_t x = 0; x < p.pow(k + 1); ++x) CHECK(projection(p, k, x) == x / pv);
        }
}

TEST_CASE("components", "[diagram]") {
    CHECK(positions(components(VertexId{OddPrime{5}, 10, 2, 9})) == std::vector<std::int64_t>{1, 6, 11, 16, 21});
    CHECK(positions(components(VertexId{OddPrime{3}, 6, 1, 0})) == std::vector<std::int64_t>{0, 1, 2});
    CHECK(positions(components(VertexId{OddPrime{5}, 8, 2, 24})) == std::vector<std::int64_t>{4, 9, 14, 19, 24});
    CHECK_THROWS(components(VertexId{OddPrime{5}, 8, 0, 0}));
    CHECK_THROWS(components(VertexId{OddPrime{5}, 8, 4, 0}));
}

TEST_CASE("components are the projections of the removal children", "[diagram][property]") {
    for (std::int64_t pv : {3, 5}) {
        const OddPrime p{pv};
        for (std::int64_t f = 6; f <= 10; f += 2)
            for (const VertexId& v : floor_vertices(p, f).vertices) {
                if (v.class_k() < 1 || v.class_k() > v.r() - 2) continue;
                std::vector<std::int64_t> via_edges;
                for (const Edge& e : remove_children(v)) via_edges.push_back(remove_children(e.lower)[0].lower.pos());
                CHECK(positions(components(v)) == via_edges);
            }
    }
}

TEST_CASE("every edge block is the difference of its two hooks", "[diagram][property]") {
    // Independent of the edge formulas: arm and leg differences of the hooks.
    for (std::int64_t pv : {3, 5}) {
        const OddPrime p{pv};
        for (std::int64_t f = 1; f <= 10; ++f)
            for (const VertexId& v : floor_vertices(p, f).vertices) {
                std::vector<Edge> edges = add_children(v);
                if (f > 1)
                    for (const Edge& e : remove_children(v)) edges.push_back(e);
                for (const Edge& e : edges) {
                    const HookPartition hu = vertex_to_hook(e.upper);
                    const HookPartition hl = vertex_to_hook(e.lower);
                    REQUIRE(e.upper.floor() == e.lower.floor() + 1);
                    REQUIRE(e.block.idx == e.lower.floor());
                    REQUIRE(e.block.horiz == hu.arm() - hl.arm());
                    REQUIRE(e.block.vert == hu.leg - hl.leg);
                }
            }
    }
}

TEST_CASE("up/down consistency", "[diagram][property]") {
    for (std::int64_t pv : {3, 5}) {
        const OddPrime p{pv};
        for (std::int64_t f = 1; f < 10; ++f)
            for (const VertexId& v : floor_vertices(p, f).vertices) {
                for (const Edge& up : add_children(v)) {
                    std::int64_t matches = 0;
                    for (const Edge& down : remove_children(up.upper))
                        if (down.lower == v && down.block == up.block) ++matches;
                    REQUIRE(matches == 1);
                }
                if (f == 1) continue;
                for (const Edge& down : remove_children(v)) {
                    std::int64_t matches = 0;
                    for (const Edge& up : add_children(down.lower))
                        if (up.upper == v && up.block == down.block) ++matches;
                    REQUIRE(matches == 1);
                }
            }
    }
}

TEST_CASE("block sizes by edge family", "[diagram][property]") {
    for (std::int64_t pv : {3, 5, 7}) {
        const OddPrime p{pv};
        for (std::int64_t f = 2; f <= 10; ++f)
            for (const VertexId& v : floor_vertices(p, f).vertices) {
                const std::int64_t r = v.r();
                const std::int64_t k = v.class_k();
                for (const Edge& e : remove_children(v)) {
                    std::int64_t want = 0;
                    if (v.even_floor())
                        want = v.top() ? 0 : (k == r - 1 ? p.pow(r - 1) * (pv - 2) : p.pow(k) * (pv - 1));
                    else
                        want = v.top() ? p.pow(r - 2) * (pv - 1) * (pv - 1) : p.pow(k) * (pv - 1);
                    CHECK(e.block.size() == want);
                }
            }
    }
}
