#pragma once

/**
 * @file stats.hpp
 * @brief Descents, inversions, signs and descent-location totals of paths.
 *
 * For a path from V^{2r}_k only blocks B_{2k+2}..B_{2r-1} are compared; they
 * all have size p^k(p-1). Index 2k carries a descent (and an inversion) when
 * the block B_{2k+1} = (p^k t, .) has t < (p-1)/2; index 2k+1 never does.
 */

#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core.hpp"
#include "diagram.hpp"
#include "paths.hpp"

namespace pbratteli {

/// B_1 > B_2 in the block order: more horizontal and fewer vertical nodes.
inline bool block_gt(const Block& a, const Block& b) {
    if (a.size() != b.size()) throw std::invalid_argument("block_gt: blocks of different size");
    return a.horiz > b.horiz && a.vert < b.vert;
}

struct DescentSet {
    std::set<std::int64_t> indices;
    std::int64_t size() const { return static_cast<std::int64_t>(indices.size()); }
    bool contains(std::int64_t i) const { return indices.count(i) != 0; }
};

struct InversionSet {
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    bool c1 = false;  // the inversion at index 2k
    std::int64_t size() const { return static_cast<std::int64_t>(pairs.size()) + (c1 ? 1 : 0); }
};

/// True when t_{r-1} < (p-1)/2, the condition for the descent at index 2k.
inline bool c1_holds(const Path& path) {
    return path.digits.back() < path.origin.p().half();
}

inline DescentSet descent_set(const Path& path) {
    const std::int64_t k = path.origin.class_k();
    const std::int64_t r = path.origin.r();
    DescentSet d;
    if (c1_holds(path)) d.indices.insert(2 * k);
    for (std::int64_t i = 2 * k + 2; i <= 2 * r - 2; ++i)
        if (block_gt(path.block(i), path.block(i + 1))) d.indices.insert(i);
    return d;
}

inline InversionSet inversion_set(const Path& path) {
    const std::int64_t k = path.origin.class_k();
    const std::int64_t r = path.origin.r();
    InversionSet inv;
    inv.c1 = c1_holds(path);
    for (std::int64_t i = 2 * k + 2; i <= 2 * r - 1; ++i)
        for (std::int64_t j = i + 1; j <= 2 * r - 1; ++j)
            if (block_gt(path.block(i), path.block(j))) inv.pairs.insert({i, j});
    return inv;
}

inline int sign(const Path& path) { return inversion_set(path).size() % 2 == 0 ? 1 : -1; }

namespace detail {

/// Sign of the single forced chain below a top-class even vertex.
inline int top_chain_sign(const VertexId& v) {
    std::vector<Block> blocks;
    VertexId at = v;
    while (at.floor() > 1) {
        const std::vector<Edge> edges = remove_children(at);
        if (edges.size() != 1) throw std::logic_error("top-class chain branches");
        blocks.push_back(edges.front().block);
        at = edges.front().lower;
    }
    std::int64_t inversions = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t j = i + 1; j < blocks.size(); ++j)
            if (!blocks[i].empty() && blocks[i].size() == blocks[j].size() && block_gt(blocks[j], blocks[i]))
                ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// Sum of path signs over all paths from `v`. Top-class vertices have a single chain.
inline Count sign_balance(const VertexId& v) {
    if (!v.even_floor()) throw std::domain_error("sign_balance: even-floor vertex expected");
    if (v.top()) return Count{detail::top_chain_sign(v)};
    Count total{0};
    for_each_path(v, [&](const Path& path) { total += Count{sign(path)}; });
    return total;
}

/// Which block position descent_totals_at inspects.
enum class DescentBlock { second_to_last, third_to_last };  // 2r-2, 2r-3

struct DescentTotals {
    std::int64_t index = 0;
    Count brute;
    Count predicted;
};

/**
 * Number of paths from `v` with a descent at 2r-2 or 2r-3, next to the
 * prediction p^{s-2}(p-1)(p+1)/2 (low l), p^{s-2}(p-1)(p-1)/2 (high l) at
 * 2r-2 and p^{s-3}(p-1)(p(p-1)/2 + t) at 2r-3. For s = 1 the 2r-2 total is
 * (p-1)/2; 2r-3 can only descend when s >= 3.
 */
inline DescentTotals descent_totals_at(const VertexId& v, DescentBlock which) {
    detail::require_path_origin(v);
    const std::int64_t r = v.r();
    if (r < 2) throw std::out_of_range("descent_totals_at: floor 2r needs r >= 2");
    const OddPrime p = v.p();
    const std::int64_t pv = p.value();
    const std::int64_t s = v.s();
    const std::int64_t k = v.class_k();
    DescentTotals out;
    out.index = which == DescentBlock::second_to_last ? 2 * r - 2 : 2 * r - 3;
    for_each_path(v, [&](const Path& path) {
        if (descent_set(path).contains(out.index)) out.brute += Count{1};
    });
    const bool low = k >= 1 && 2 * v.pos() < p.pow(k) - 1;
    if (which == DescentBlock::second_to_last) {
        if (s == 1)
            out.predicted = Count{p.half()};
        else
            out.predicted = Count{p.pow(s - 2)} * Count{pv - 1} * Count{low ? (pv + 1) / 2 : (pv - 1) / 2};
    } else if (s >= 3) {
        const std::int64_t t = position_interval(p, k, v.pos());
        out.predicted = Count{p.pow(s - 3)} * Count{pv - 1} * Count{pv * (pv - 1) / 2 + t};
    }
    return out;
}

/**
 * Per-path prediction of [2r-2 in Des], from the digit t' = t_k chosen at
 * floor 2r. For s = 1 this is the index-2k rule on t_{r-1}.
 */
inline bool predicted_descent_second_to_last(const Path& path) {
    const VertexId& v = path.origin;
    const std::int64_t pv = v.p().value();
    const std::int64_t k = v.class_k();
    if (v.s() == 1) return c1_holds(path);
    const std::int64_t t1 = path.digits[static_cast<std::size_t>(k)];
    const bool low = k >= 1 && 2 * v.pos() < v.p().pow(k) - 1;
    return low ? t1 <= v.p().half() : t1 <= (pv - 3) / 2;
}

/// Per-path prediction of [2r-3 in Des] from t' = t_k and t'' = t_{k+1}.
inline bool predicted_descent_third_to_last(const Path& path) {
    const VertexId& v = path.origin;
    const std::int64_t pv = v.p().value();
    const std::int64_t k = v.class_k();
    if (v.s() < 3) return false;
    const std::int64_t t1 = path.digits[static_cast<std::size_t>(k)];
    const std::int64_t t2 = path.digits[static_cast<std::size_t>(k + 1)];
    if (k == 0 || v.pos() == 0) return t1 >= 1 && t2 >= pv - t1;
    const std::int64_t t = position_interval(v.p(), k, v.pos());
    return (t1 <= t - 1 && t2 >= pv - 1 - t1) || (t1 >= t && t2 >= pv - t1);
}

}  // namespace pbratteli
