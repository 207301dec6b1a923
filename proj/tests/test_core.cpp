#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <limits>

#include "pbratteli/core.hpp"

using namespace pbratteli;

TEST_CASE("odd primes are validated at construction", "[core]") {
    CHECK(OddPrime{3}.value() == 3);
    CHECK(OddPrime{7}.half() == 3);
    for (std::int64_t bad : {-3, 0, 1, 2, 4, 9, 15, 21})
        CHECK_THROWS_WITH(OddPrime{bad}, "p must be an odd prime");
}

TEST_CASE("geom_sum", "[core]") {
    CHECK(geom_sum(OddPrime{5}, 0).value() == 0);
    CHECK(geom_sum(OddPrime{5}, 2).value() == 6);
    CHECK(geom_sum(OddPrime{3}, 3).value() == 13);
    for (std::int64_t p : {3, 5, 7})
        for (std::int64_t k = 0; k < 10; ++k) {
            std::int64_t pk = 1;
            for (std::int64_t i = 0; i < k; ++i) pk *= p;
            CHECK(geom_sum(OddPrime{p}, k).value() == (pk - 1) / (p - 1));
        }
}

TEST_CASE("j_kt", "[core]") {
    CHECK(j_kt(OddPrime{5}, 2, 0).value() == 0);
    CHECK(j_kt(OddPrime{5}, 2, 2).value() == 12);
    CHECK(j_kt(OddPrime{3}, 1, 1).value() == 1);
    CHECK_THROWS_AS(j_kt(OddPrime{5}, 2, 5), std::out_of_range);
    CHECK_THROWS_AS(j_kt(OddPrime{5}, 2, -1), std::out_of_range);
}

TEST_CASE("x_ak", "[core]") {
    CHECK(x_ak(OddPrime{5}, 6, 2).value() == 575);
    CHECK(x_ak(OddPrime{5}, 3, 2).value() == 275);
    CHECK(x_ak(OddPrime{3}, 1, 0).value() == 1);
}

TEST_CASE("position_interval picks the j-window containing l", "[core]") {
    const OddPrime p{5};
    CHECK(position_interval(p, 2, 0) == 0);
    CHECK(position_interval(p, 2, 1) == 1);
    CHECK(position_interval(p, 2, 6) == 1);
    CHECK(position_interval(p, 2, 7) == 2);
    CHECK(position_interval(p, 2, 9) == 2);
    CHECK(position_interval(p, 2, 24) == 4);
    CHECK(position_interval(p, 0, 0) == 0);
}

TEST_CASE("vertex_to_hook", "[core]") {
    const HookPartition a = vertex_to_hook(VertexId{OddPrime{5}, 10, 2, 9});
    CHECK(a.size == 575);
    CHECK(a.leg == 284);
    const HookPartition b = vertex_to_hook(VertexId{OddPrime{5}, 9, 2, 9});
    CHECK(b.size == 475);
    CHECK(b.leg == 184);
    const HookPartition c = vertex_to_hook(VertexId{OddPrime{3}, 4, 0, 0});
    CHECK(c.size == 7);
    CHECK(c.leg == 3);
    const HookPartition top = vertex_to_hook(VertexId{OddPrime{3}, 1, 0, 1});
    CHECK(top.size == 2);
    CHECK(top.leg == 1);
}

TEST_CASE("hook_to_vertex", "[core]") {
    const OddPrime p5{5};
    CHECK(hook_to_vertex(p5, {10, 575, 284}) == VertexId{p5, 10, 2, 9});
    CHECK(hook_to_vertex(OddPrime{3}, {2, 3, 1}) == VertexId{OddPrime{3}, 2, 0, 0});
    CHECK_THROWS_WITH(hook_to_vertex(p5, {10, 576, 0}), "not a diagram vertex");
    CHECK_THROWS_WITH(hook_to_vertex(p5, {10, 575, 0}), "not a diagram vertex");
}

TEST_CASE("invalid vertices are rejected", "[core]") {
    const OddPrime p{3};
    CHECK_THROWS_AS(VertexId(p, 4, 3, 0), std::invalid_argument);  // no class 3 on floor 4
    CHECK_THROWS_AS(VertexId(p, 4, 1, 3), std::invalid_argument);  // |V^4_1| = 3
    CHECK_THROWS_AS(VertexId(p, 3, 1, 6), std::invalid_argument);  // top class of floor 3 has 6 legs
    CHECK_NOTHROW(VertexId(p, 3, 1, 5));
    CHECK_THROWS_AS(VertexId(p, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("canonical string form", "[core]") {
    CHECK(VertexId(OddPrime{5}, 10, 2, 9).canonical() == "p:5/f:10/k:2/l:9");
}

TEST_CASE("hook round trip over whole floors", "[core][property]") {
    for (std::int64_t pv : {3, 5}) {
        const OddPrime p{pv};
        for (std::int64_t f = 1; f <= 12; ++f)
            for (std::int64_t k = 0; k <= top_class(f); ++k)
                for (std::int64_t pos = 0; pos < class_size(p, f, k); ++pos) {
                    const VertexId v{p, f, k, pos};
                    const HookPartition h = vertex_to_hook(v);
                    REQUIRE(h.valid());
                    REQUIRE(h.arm() >= 1);
                    REQUIRE(hook_to_vertex(p, h) == v);
                }
    }
}

TEST_CASE("legs stay inside the hook for every position", "[core][property]") {
    for (std::int64_t pv : {3, 5, 7, 11}) {
        const OddPrime p{pv};
        for (std::int64_t s = 1; s <= 6; ++s)
            for (std::int64_t k = 0; k <= 4; ++k)
                CHECK(x_ak(p, s, k).value() + p.pow(k) - 1 < x_ak(p, 2 * s, k).value());
    }
}

TEST_CASE("Count detects overflow", "[core]") {
    const Count big{std::numeric_limits<std::int64_t>::max()};
    CHECK_THROWS_AS(big + Count{1}, std::overflow_error);
    CHECK_THROWS_AS(big * Count{2}, std::overflow_error);
    CHECK_THROWS_AS(OddPrime{3}.pow(40), std::overflow_error);
    CHECK((Count{6} * Count{7}).value() == 42);
    CHECK(Count{42}.exact_div(6).value() == 7);
    CHECK_THROWS_AS(Count{43}.exact_div(6), std::domain_error);
}
