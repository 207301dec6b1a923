#pragma once

/**
 * @file verify.hpp
 * @brief Self-checking suites run by `pbratteli verify`.
 *
 * Each suite walks every relevant vertex up to a maximum floor and counts
 * how many individual checks it made and how many failed.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core.hpp"
#include "diagram.hpp"
#include "fibo.hpp"
#include "gfs.hpp"
#include "paths.hpp"
#include "stats.hpp"

namespace pbratteli {

struct SuiteResult {
    std::string name;
    std::int64_t checked = 0;
    std::int64_t failures = 0;
    std::vector<std::string> examples;  // first few failing instances

    void check(bool ok, const std::function<std::string()>& what) {
        ++checked;
        if (ok) return;
        ++failures;
        if (examples.size() < 5) examples.push_back(what());
    }
};

struct VerifyOptions {
    std::int64_t max_floor = 8;
    std::int64_t brute_budget = 1'000'000;
    unsigned threads = 1;
};

namespace detail {

/// Calls fn on every even-floor vertex of class k <= r-1 up to max_floor.
inline void for_each_fib_vertex(OddPrime p, std::int64_t max_floor, const std::function<void(const VertexId&)>& fn) {
    for (std::int64_t f = 2; f <= max_floor; f += 2)
        for (const VertexId& v : floor_vertices(p, f).vertices)
            if (!v.top()) fn(v);
}

}  // namespace detail

inline SuiteResult suite_hook_round_trip(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"hook_round_trip", 0, 0, {}};
    for (std::int64_t f = 1; f <= o.max_floor; ++f)
        for (const VertexId& v : floor_vertices(p, f).vertices) {
            const HookPartition h = vertex_to_hook(v);
            r.check(h.valid() && hook_to_vertex(p, h) == v, [&] { return v.canonical(); });
        }
    return r;
}

inline SuiteResult suite_edge_sizes(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"edge_sizes", 0, 0, {}};
    auto ok = [](const Edge& e) {
        return e.upper.floor() == e.lower.floor() + 1 && e.block.horiz >= 0 && e.block.vert >= 0 &&
               vertex_to_hook(e.upper).size - vertex_to_hook(e.lower).size == e.block.size();
    };
    for (std::int64_t f = 1; f <= o.max_floor; ++f)
        for (const VertexId& v : floor_vertices(p, f).vertices) {
            if (f < o.max_floor)
                for (const Edge& e : add_children(v)) r.check(ok(e), [&] { return "add " + v.canonical(); });
            if (f > 1)
                for (const Edge& e : remove_children(v)) r.check(ok(e), [&] { return "remove " + v.canonical(); });
        }
    return r;
}

/// add_children and remove_children describe the same edges with the same blocks.
inline SuiteResult suite_up_down(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"up_down_edges", 0, 0, {}};
    for (std::int64_t f = 1; f < o.max_floor; ++f)
        for (const VertexId& v : floor_vertices(p, f).vertices)
            for (const Edge& up : add_children(v)) {
                bool found = false;
                for (const Edge& down : remove_children(up.upper))
                    found = found || (down.lower == v && down.block == up.block);
                r.check(found, [&] { return v.canonical() + " -> " + up.upper.canonical(); });
            }
    for (std::int64_t f = 2; f <= o.max_floor; ++f)
        for (const VertexId& v : floor_vertices(p, f).vertices)
            for (const Edge& down : remove_children(v)) {
                bool found = false;
                for (const Edge& up : add_children(down.lower))
                    found = found || (up.upper == v && up.block == down.block);
                r.check(found, [&] { return v.canonical() + " -> " + down.lower.canonical(); });
            }
    return r;
}

inline SuiteResult suite_path_counts(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"path_counts", 0, 0, {}};
    detail::for_each_fib_vertex(p, o.max_floor, [&](const VertexId& v) {
        std::int64_t n = 0;
        bool blocks_ok = true;
        const std::int64_t start = vertex_to_hook(v).size;
        for_each_path(v, [&](const Path& path) {
            ++n;
            std::int64_t removed = 0;
            for (const Block& b : path.blocks) removed += b.size();
            blocks_ok = blocks_ok && start - removed == p.value() - 1 && path.terminal.pos() == path.digits.back();
        });
        r.check(n == path_count(v).value() && blocks_ok, [&] { return v.canonical(); });
    });
    return r;
}

inline SuiteResult suite_sign_balance(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"sign_balance", 0, 0, {}};
    detail::for_each_fib_vertex(p, o.max_floor,
                                [&](const VertexId& v) { r.check(sign_balance(v).value() == 0, [&] { return v.canonical(); }); });
    return r;
}

/// At s = 1 every path has at most the single descent at 2k, (p-1)/2 in total.
inline SuiteResult suite_single_step(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"s1_descent_totals", 0, 0, {}};
    detail::for_each_fib_vertex(p, o.max_floor, [&](const VertexId& v) {
        if (v.s() != 1) return;
        std::int64_t total = 0;
        bool per_path = true;
        for_each_path(v, [&](const Path& path) {
            const DescentSet d = descent_set(path);
            total += d.size();
            per_path = per_path && d.size() == (c1_holds(path) ? 1 : 0);
        });
        r.check(per_path && total == p.half(), [&] { return v.canonical(); });
    });
    return r;
}

/// Paths whose free digits t_k..t_{r-2} all equal the digit t of l = j^k_t.
inline SuiteResult suite_special_paths(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"special_paths", 0, 0, {}};
    const std::int64_t h = p.half();
    for (std::int64_t f = 4; f <= o.max_floor; f += 2) {
        const std::int64_t rr = f / 2;
        for (std::int64_t k = 1; k <= rr - 2; ++k)
            for (std::int64_t t = 0; t < p.value(); ++t) {
                const VertexId v{p, f, k, j_kt(p, k, t).value()};
                for (std::int64_t last = 0; last <= p.value() - 2; ++last) {
                    std::vector<std::int64_t> digits(static_cast<std::size_t>(rr - 1), t);
                    digits.push_back(last);
                    const DescentSet d = descent_set(path_from_digits(v, digits));
                    const bool at2 = d.contains(2 * rr - 2);
                    const bool at3 = d.contains(2 * rr - 3);
                    r.check(at2 == (t < h) && at3 == (t > h && v.s() >= 3),
                            [&] { return v.canonical() + " t=" + std::to_string(t); });
                }
            }
    }
    return r;
}

inline SuiteResult suite_descent_law(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"descent_location_law", 0, 0, {}};
    detail::for_each_fib_vertex(p, o.max_floor, [&](const VertexId& v) {
        if (v.r() < 2) return;
        const std::int64_t rr = v.r();
        for_each_path(v, [&](const Path& path) {
            const DescentSet d = descent_set(path);
            r.check(d.contains(2 * rr - 2) == predicted_descent_second_to_last(path) &&
                        d.contains(2 * rr - 3) == predicted_descent_third_to_last(path),
                    [&] { return v.canonical(); });
        });
        for (DescentBlock w : {DescentBlock::second_to_last, DescentBlock::third_to_last}) {
            const DescentTotals tot = descent_totals_at(v, w);
            r.check(tot.brute == tot.predicted, [&] { return "totals " + v.canonical(); });
        }
    });
    return r;
}

inline SuiteResult suite_triple_agreement(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"triple_agreement", 0, 0, {}};
    RecurrenceSolver solver;
    detail::for_each_fib_vertex(p, o.max_floor, [&](const VertexId& v) {
        const Count closed = m_closed(v);
        bool ok = solver(v) == closed;
        if (path_count(v).value() <= o.brute_budget) ok = ok && m_brute(v, {o.brute_budget, o.threads}) == closed;
        r.check(ok, [&] { return v.canonical(); });
    });
    return r;
}

inline SuiteResult suite_classifier(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"classifier_partition", 0, 0, {}};
    for (std::int64_t k = 0; 2 * (k + 1) <= o.max_floor; ++k)
        for (std::int64_t s = 1; 2 * (k + s) <= o.max_floor; ++s)
            for (std::int64_t l = 0; l < p.pow(k); ++l) {
                bool ok = true;
                try {
                    classify_case(p, k, s, l);
                } catch (const std::logic_error&) {
                    ok = false;
                }
                r.check(ok, [&] { return VertexId::canonical_string(p, 2 * (k + s), k, l); });
            }
    return r;
}

/// The three-term identity wherever its largest floor 2(k+s+2) fits under max_floor.
inline SuiteResult suite_rr(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"rr_identity", 0, 0, {}};
    for (std::int64_t k = 0; 2 * (k + k + 4) <= o.max_floor; ++k)
        for (std::int64_t l = 0; l < p.pow(k); ++l) {
            for (std::int64_t s = k + 2; 2 * (k + s + 2) <= o.max_floor; ++s)
                r.check(detail::rr_residual(p, k, l, s) == rr_b(p, k, l, s), [&] {
                    return VertexId::canonical_string(p, 2 * (k + s + 2), k, l) + " s=" + std::to_string(s);
                });
        }
    return r;
}

inline SuiteResult suite_gf(OddPrime p, const VerifyOptions& o) {
    SuiteResult r{"gf_agreement", 0, 0, {}};
    for (std::int64_t k = 0; 2 * (k + k + 2) <= o.max_floor; ++k)
        for (std::int64_t l = 0; l < p.pow(k); ++l)
            r.check(gf_matches_sequence(p, k, l, 10),
                    [&] { return "k=" + std::to_string(k) + " l=" + std::to_string(l); });
    return r;
}

inline std::vector<SuiteResult> run_verify(OddPrime p, const VerifyOptions& o) {
    return {suite_hook_round_trip(p, o), suite_edge_sizes(p, o),   suite_up_down(p, o),
            suite_path_counts(p, o),     suite_sign_balance(p, o), suite_single_step(p, o),
            suite_special_paths(p, o),   suite_descent_law(p, o),  suite_triple_agreement(p, o),
            suite_classifier(p, o),      suite_rr(p, o),           suite_gf(p, o)};
}

}  // namespace pbratteli
