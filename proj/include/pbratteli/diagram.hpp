#pragma once

/**
 * @file diagram.hpp
 * @brief Floors and the four edge families of the p-Bratteli diagram.
 *
 * Edges are produced by closed formulas, one family per (parity, class)
 * combination. The block carried by an edge between floors f and f-1 always
 * has index f-1, so a downward path from floor 2r removes B_{2r-1}, ..., B_1.
 *
 * Upward (add) rules, from floor f to f+1:
 *   even 2r, top class, leg i     -> odd top class, leg p*i + t          (p edges)
 *   even 2r, class k <= r-1, l    -> odd class k, pos p*l + t            (p edges)
 *   odd 2r-1, top class, leg i    -> even top class leg i (empty block),
 *                                    and even class r-1, pos i mod p^{r-1}
 *   odd 2r-1, class k, l + p^k t  -> even class k, pos l                 (1 edge)
 *
 * Downward (remove) rules are the exact reverses.
 */

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace pbratteli {

struct Edge {
    VertexId upper;
    VertexId lower;
    Block block;
};

/// All vertices of one floor, classes in descending order, positions ascending.
struct FloorSlice {
    OddPrime p;
    std::int64_t floor;
    std::vector<VertexId> vertices;
};

inline FloorSlice floor_vertices(OddPrime p, std::int64_t floor) {
    if (floor < 1) throw std::invalid_argument("floor must be at least 1");
    FloorSlice slice{p, floor, {}};
    for (std::int64_t k = top_class(floor); k >= 0; --k) {
        const std::int64_t n = class_size(p, floor, k);
        for (std::int64_t pos = 0; pos < n; ++pos) slice.vertices.emplace_back(p, floor, k, pos);
    }
    return slice;
}

inline std::vector<Edge> add_children(const VertexId& v) {
    using detail::checked_add;
    using detail::checked_mul;
    const OddPrime p = v.p();
    const std::int64_t pv = p.value();
    const std::int64_t f = v.floor();
    const std::int64_t k = v.class_k();
    const std::int64_t pos = v.pos();
    std::vector<Edge> out;

    if (v.even_floor()) {
        const std::int64_t r = v.r();
        if (v.top()) {
            // block size p^{r-1}(p-1)^2, vertical part i(p-1) + t
            const std::int64_t full = checked_mul(p.pow(r - 1), checked_mul(pv - 1, pv - 1));
            for (std::int64_t t = 0; t < pv; ++t) {
                const std::int64_t n = checked_add(checked_mul(pos, pv - 1), t);
                out.push_back({VertexId{p, f + 1, r, checked_add(checked_mul(pv, pos), t)}, v,
                               Block{f, full - n, n}});
            }
        } else {
            const std::int64_t full = checked_mul(p.pow(k), pv - 1);
            for (std::int64_t t = 0; t < pv; ++t) {
                const std::int64_t n = checked_add(checked_mul(pos, pv - 1), t);
                out.push_back({VertexId{p, f + 1, k, checked_add(checked_mul(pv, pos), t)}, v,
                               Block{f, full - n, n}});
            }
        }
        return out;
    }

    const std::int64_t r = v.r();  // f = 2r - 1
    if (v.top()) {
        const std::int64_t unit = p.pow(r - 1);
        const std::int64_t t = pos / unit;  // t <= p-2 since pos < p^{r-1}(p-1)
        out.push_back({VertexId{p, f + 1, r, pos}, v, Block{f, 0, 0}});
        out.push_back({VertexId{p, f + 1, r - 1, pos % unit}, v,
                       Block{f, checked_mul(unit, t), checked_mul(unit, pv - 2 - t)}});
    } else {
        const std::int64_t unit = p.pow(k);
        const std::int64_t t = pos / unit;
        out.push_back({VertexId{p, f + 1, k, pos % unit}, v,
                       Block{f, checked_mul(unit, t), checked_mul(unit, pv - 1 - t)}});
    }
    return out;
}

/// Downward edges out of `v`, ordered by the branch digit t ascending.
inline std::vector<Edge> remove_children(const VertexId& v) {
    using detail::checked_add;
    using detail::checked_mul;
    const OddPrime p = v.p();
    const std::int64_t pv = p.value();
    const std::int64_t f = v.floor();
    const std::int64_t k = v.class_k();
    const std::int64_t pos = v.pos();
    if (f == 1) throw std::domain_error("floor 1 has no removal edges");
    const std::int64_t r = v.r();
    std::vector<Edge> out;

    if (v.even_floor()) {
        if (v.top()) {
            out.push_back({v, VertexId{p, f - 1, r - 1, pos}, Block{f - 1, 0, 0}});
        } else if (k == r - 1) {
            const std::int64_t unit = p.pow(r - 1);
            for (std::int64_t t = 0; t <= pv - 2; ++t)
                out.push_back({v, VertexId{p, f - 1, r - 1, checked_add(pos, checked_mul(unit, t))},
                               Block{f - 1, checked_mul(unit, t), checked_mul(unit, pv - 2 - t)}});
        } else {
            const std::int64_t unit = p.pow(k);
            for (std::int64_t t = 0; t < pv; ++t)
                out.push_back({v, VertexId{p, f - 1, k, checked_add(pos, checked_mul(unit, t))},
                               Block{f - 1, checked_mul(unit, t), checked_mul(unit, pv - 1 - t)}});
        }
        return out;
    }

    // odd floor 2r-1 (r >= 2): exactly one edge, landing at position floor(pos/p)
    const std::int64_t below = pos / pv;
    const std::int64_t n = pos - below;
    const std::int64_t full = v.top() ? checked_mul(p.pow(r - 2), checked_mul(pv - 1, pv - 1))
                                      : checked_mul(p.pow(k), pv - 1);
    out.push_back({v, VertexId{p, f - 1, k, below}, Block{f - 1, full - n, n}});
    return out;
}

/// Position of the unique floor-(2r-2) vertex below an odd class-k position.
inline std::int64_t projection(OddPrime p, std::int64_t k, std::int64_t odd_pos) {
    if (k < 1) throw std::invalid_argument("projection: k must be at least 1");
    const std::int64_t unit = p.pow(k);
    if (odd_pos < 0 || odd_pos >= detail::checked_mul(unit, p.value()))
        throw std::out_of_range("projection: position out of range");
    const std::int64_t t = odd_pos / unit;
    const std::int64_t alpha = (odd_pos % unit) / p.value();
    return alpha + p.pow(k - 1) * t;
}

/// The p floor-(2r-2) vertices alpha + p^{k-1} t' feeding the recurrence at `v`.
inline std::vector<VertexId> components(const VertexId& v) {
    const std::int64_t k = v.class_k();
    if (!v.even_floor() || k < 1 || k > v.r() - 2)
        throw std::domain_error("components are defined for even-floor classes 1 <= k <= r-2");
    const OddPrime p = v.p();
    const std::int64_t alpha = v.pos() / p.value();
    std::vector<VertexId> out;
    for (std::int64_t t = 0; t < p.value(); ++t) out.emplace_back(p, v.floor() - 2, k, alpha + p.pow(k - 1) * t);
    return out;
}

}  // namespace pbratteli
