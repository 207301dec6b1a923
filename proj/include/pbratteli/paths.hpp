#pragma once

/**
 * @file paths.hpp
 * @brief Downward paths from an even-floor vertex to floor 1, by digit encoding.
 *
 * A path from V^{2r}_k position l is determined by digits t_0..t_{r-1}.
 * The low digits t_0..t_{k-1} are the base-p expansion of l; t_k..t_{r-2}
 * range over [0, p-1] and pick the removal edge at floors 2r, 2r-2, ...,
 * 2k+4; t_{r-1} ranges over [0, p-2] and picks the edge at floor 2k+2.
 * Every other step is forced. Blocks are obtained by walking the removal
 * rules of diagram.hpp, so they agree with the edge data by construction.
 */

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "core.hpp"
#include "diagram.hpp"

namespace pbratteli {

struct DigitRange {
    std::int64_t index = 0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;  // inclusive
};

struct DigitDomain {
    std::vector<std::int64_t> fixed;  // t_0..t_{k-1}
    std::vector<DigitRange> free;     // t_k..t_{r-1}
};

namespace detail {

inline void require_path_origin(const VertexId& v) {
    if (!v.even_floor() || v.top())
        throw std::domain_error("paths start at an even-floor vertex of class k <= r-1");
}

}  // namespace detail

inline DigitDomain digit_domain(const VertexId& v) {
    detail::require_path_origin(v);
    const std::int64_t pv = v.p().value();
    DigitDomain d;
    std::int64_t rest = v.pos();
    for (std::int64_t i = 0; i < v.class_k(); ++i) {
        d.fixed.push_back(rest % pv);
        rest /= pv;
    }
    for (std::int64_t i = v.class_k(); i < v.r() - 1; ++i) d.free.push_back({i, 0, pv - 1});
    d.free.push_back({v.r() - 1, 0, pv - 2});
    return d;
}

struct Path {
    VertexId origin;
    std::vector<std::int64_t> digits;
    std::vector<Block> blocks;  // blocks[i - 1] has idx i, i = 1..2r-1
    VertexId terminal;

    const Block& block(std::int64_t idx) const {
        if (idx < 1 || idx > static_cast<std::int64_t>(blocks.size()))
            throw std::out_of_range("block index out of range");
        return blocks[static_cast<std::size_t>(idx - 1)];
    }
};

/// Digit index consumed by the removal step at even floor f of a path from `v`.
inline std::int64_t digit_index_at(const VertexId& v, std::int64_t f) {
    return v.class_k() + v.r() - f / 2;
}

namespace detail {

struct PathWalker {
    Path path;
    std::optional<std::int64_t> end_leg;
    std::optional<std::int64_t> first_free;
    const std::function<void(const Path&)>* fn = nullptr;

    void step(const VertexId& at) {
        if (at.floor() == 1) {
            path.terminal = at;
            (*fn)(path);
            return;
        }
        const std::vector<Edge> edges = remove_children(at);
        if (edges.size() == 1) {
            path.blocks[static_cast<std::size_t>(at.floor() - 2)] = edges.front().block;
            step(edges.front().lower);
            return;
        }
        const std::int64_t idx = digit_index_at(path.origin, at.floor());
        const bool last = idx == path.origin.r() - 1;
        for (std::size_t t = 0; t < edges.size(); ++t) {
            const auto digit = static_cast<std::int64_t>(t);
            if (last && end_leg && *end_leg != digit) continue;
            if (idx == path.origin.class_k() && first_free && *first_free != digit) continue;
            path.digits[static_cast<std::size_t>(idx)] = digit;
            path.blocks[static_cast<std::size_t>(at.floor() - 2)] = edges[t].block;
            step(edges[t].lower);
        }
    }
};

}  // namespace detail

/**
 * Calls `fn` on every path from `v` in lexicographic digit order. The Path
 * reference is reused between calls. `end_leg` restricts t_{r-1};
 * `first_free` restricts t_k, which is how enumeration is split across workers.
 */
inline void for_each_path(const VertexId& v, const std::function<void(const Path&)>& fn,
                          std::optional<std::int64_t> end_leg = std::nullopt,
                          std::optional<std::int64_t> first_free = std::nullopt) {
    const DigitDomain dom = digit_domain(v);
    detail::PathWalker w{Path{v, {}, {}, v}, end_leg, first_free, &fn};
    w.path.digits = dom.fixed;
    w.path.digits.resize(static_cast<std::size_t>(v.r()), 0);
    w.path.blocks.resize(static_cast<std::size_t>(v.floor() - 1));
    w.step(v);
}

inline std::vector<Path> enumerate_paths(const VertexId& v, std::optional<std::int64_t> end_leg = std::nullopt) {
    std::vector<Path> out;
    for_each_path(v, [&](const Path& path) { out.push_back(path); }, end_leg);
    return out;
}

inline Path path_from_digits(const VertexId& v, const std::vector<std::int64_t>& digits) {
    const DigitDomain dom = digit_domain(v);
    if (digits.size() != static_cast<std::size_t>(v.r())) throw std::invalid_argument("expected r digits");
    for (std::size_t i = 0; i < dom.fixed.size(); ++i)
        if (digits[i] != dom.fixed[i]) throw std::out_of_range("low digits must expand the position");
    for (const DigitRange& rg : dom.free) {
        const std::int64_t d = digits[static_cast<std::size_t>(rg.index)];
        if (d < rg.lo || d > rg.hi) throw std::out_of_range("digit out of range");
    }
    Path path{v, digits, std::vector<Block>(static_cast<std::size_t>(v.floor() - 1)), v};
    VertexId at = v;
    while (at.floor() > 1) {
        const std::vector<Edge> edges = remove_children(at);
        std::size_t choice = 0;
        if (edges.size() > 1) choice = static_cast<std::size_t>(digits[static_cast<std::size_t>(digit_index_at(v, at.floor()))]);
        path.blocks[static_cast<std::size_t>(at.floor() - 2)] = edges[choice].block;
        at = edges[choice].lower;
    }
    path.terminal = at;
    return path;
}

/// p^{s-1}(p-1)
inline Count path_count(const VertexId& v) {
    detail::require_path_origin(v);
    return Count{v.p().pow(v.s() - 1)} * Count{v.p().value() - 1};
}

}  // namespace pbratteli
