#pragma once

/**
 * @file fibo.hpp
 * @brief p^(k)-Fibonacci numbers M(v): brute force, recurrence, closed form.
 *
 * M(v) is the total number of descents over all downward paths from an
 * even-floor vertex v of class k <= r-1. Vertices are also addressed by
 * (p, k, s, l) with s = r - k and l the position, so v sits on floor 2(k+s).
 *
 * The closed forms are selected by classify_case. For k >= 2 the position
 * range [0, p^k) is cut into intervals by t (the j^k_t window containing l)
 * and, inside a window, by the finer pieces indexed i or i'.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "paths.hpp"
#include "stats.hpp"

namespace pbratteli {

inline VertexId fib_vertex(OddPrime p, std::int64_t k, std::int64_t s, std::int64_t l) {
    if (k < 0 || s < 1) throw std::invalid_argument("fib vertex needs k >= 0 and s >= 1");
    return VertexId{p, 2 * (k + s), k, l};
}

namespace detail {

inline void require_fib_vertex(const VertexId& v) {
    if (!v.even_floor() || v.top())
        throw std::domain_error("M is defined for even-floor vertices of class k <= r-1");
}

/// Sum_{i=a}^{b} p^i, zero when a > b.
inline Count power_span(OddPrime p, std::int64_t a, std::int64_t b) {
    Count sum{0};
    for (std::int64_t i = std::max<std::int64_t>(a, 0); i <= b; ++i) sum += Count{p.pow(i)};
    return sum;
}

/// Sum_{j=0}^{n} p^j, zero for n < 0.
inline Count power_prefix(OddPrime p, std::int64_t n) { return power_span(p, 0, n); }

inline bool low_position(OddPrime p, std::int64_t k, std::int64_t l) { return k >= 1 && 2 * l < p.pow(k) - 1; }

}  // namespace detail

// ---------------------------------------------------------------- brute force

struct BruteOptions {
    std::int64_t budget = 100'000'000;  // refuse vertices with more paths than this
    unsigned threads = 1;               // 0 = hardware concurrency
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Count m_brute(const VertexId& v, BruteOptions opt = {}) {
    detail::require_fib_vertex(v);
    const Count paths = path_count(v);
    if (paths.value() > opt.budget)
        throw BudgetExceeded("m_brute: " + paths.to_string() + " paths exceed the budget of " +
                             std::to_string(opt.budget));
    unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
    const std::int64_t branches = v.s() == 1 ? v.p().value() - 1 : v.p().value();
    if (threads <= 1 || paths.value() < 4096) {
        Count total{0};
        for_each_path(v, [&](const Path& path) { total += Count{descent_set(path).size()}; });
        return total;
    }
    // One partial sum per value of the first free digit t_k, workers take them round-robin.
    std::vector<Count> partial(static_cast<std::size_t>(branches));
    std::vector<std::thread> pool;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(branches));
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (std::int64_t b = w; b < branches; b += threads) {
                Count sum{0};
                for_each_path(v, [&](const Path& path) { sum += Count{descent_set(path).size()}; }, std::nullopt, b);
                partial[static_cast<std::size_t>(b)] = sum;
            }
        });
    }
    for (std::thread& t : pool) t.join();
    Count total{0};
    for (Count c : partial) total += c;
    return total;
}

// ---------------------------------------------------------------- recurrence

/**
 * The term added on top of the component sum at depth s >= 2:
 *   s = 2:  (p+1)/2 (p-1) for low l, (p-1)/2 (p-1) otherwise;
 *   s >= 3: p^{s-2} A + p^{s-3} (p-1)(p(p-1)/2 + t),
 * with A = (p^2-1)/2 for low l and (p-1)^2/2 otherwise. "Low" means k >= 1
 * and l < (p^k-1)/2.
 */
inline Count recurrence_added_term(OddPrime p, std::int64_t k, std::int64_t s, std::int64_t l) {
    const std::int64_t pv = p.value();
    const bool low = detail::low_position(p, k, l);
    if (s < 2) throw std::invalid_argument("recurrence_added_term: s >= 2");
    if (s == 2) return Count{low ? (pv + 1) / 2 : (pv - 1) / 2} * Count{pv - 1};
    const Count a{low ? (pv * pv - 1) / 2 : (pv - 1) * (pv - 1) / 2};
    const std::int64_t t = position_interval(p, k, l);
    return Count{p.pow(s - 2)} * a + Count{p.pow(s - 3)} * Count{pv - 1} * Count{pv * (pv - 1) / 2 + t};
}

/// Positions (l + p^k t) / p, t = 0..p-1, of the p components one level down.
inline std::vector<std::int64_t> component_positions(OddPrime p, std::int64_t k, std::int64_t l) {
    std::vector<std::int64_t> out;
    for (std::int64_t t = 0; t < p.value(); ++t) out.push_back((l + p.pow(k) * t) / p.value());
    return out;
}

/// Memoized evaluation of the recurrence. Not thread-safe; use one per worker.
class RecurrenceSolver {
public:
    Count operator()(const VertexId& v) {
        detail::require_fib_vertex(v);
        return eval(v.p(), v.class_k(), v.s(), v.pos());
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    Count eval(OddPrime p, std::int64_t k, std::int64_t s, std::int64_t l) {
        if (s == 1) return Count{p.half()};
        const std::string key = VertexId::canonical_string(p, 2 * (k + s), k, l);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Count total = recurrence_added_term(p, k, s, l);
        for (std::int64_t c : component_positions(p, k, l)) total += eval(p, k, s - 1, c);
        memo_.emplace(key, total);
        return total;
    }

    std::unordered_map<std::string, Count> memo_;
};

inline Count m_recurrence(const VertexId& v) {
    RecurrenceSolver solver;
    return solver(v);
}

// ---------------------------------------------------------------- case classifier

enum class Theorem { P0, P1, Base, Less, Greater };

inline const char* theorem_name(Theorem t) {
    switch (t) {
        case Theorem::P0: return "P0";
        case Theorem::P1: return "P1";
        case Theorem::Base: return "Base";
        case Theorem::Less: return "Less";
        case Theorem::Greater: return "Greater";
    }
    return "?";
}

/**
 * Theorem plus case. Case ids: "" for P0; "low"/"high" for P1 and Base;
 * "a", "b-i", "b-ii", "c-i", "c-ii", "c-iii", "c-iv", "d-i", "d-ii" for Less
 * and Greater. t, i and i' are filled in where the case uses them.
 */
struct CaseLabel {
    Theorem theorem = Theorem::P0;
    std::string id;
    std::optional<std::int64_t> t;
    std::optional<std::int64_t> i;
    std::optional<std::int64_t> i_prime;

    bool operator==(const CaseLabel&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const CaseLabel& c) {
    os << theorem_name(c.theorem);
    if (!c.id.empty()) os << ' ' << c.id;
    if (c.t) os << " t=" << *c.t;
    if (c.i) os << " i=" << *c.i;
    if (c.i_prime) os << " i'=" << *c.i_prime;
    return os;
}

inline CaseLabel classify_case(OddPrime p, std::int64_t k, std::int64_t s, std::int64_t l) {
    using detail::power_span;
    if (k < 0 || s < 1) throw std::invalid_argument("classify_case: k >= 0 and s >= 1 required");
    if (l < 0 || l >= p.pow(k)) throw std::out_of_range("classify_case: l outside [0, p^k)");
    const std::int64_t h = p.half();
    if (k == 0) return {Theorem::P0, "", {}, {}, {}};
    if (k == 1) return {Theorem::P1, l < h ? "low" : "high", l, {}, {}};
    if (s <= 2) return {Theorem::Base, detail::low_position(p, k, l) ? "low" : "high", {}, {}, {}};

    const bool less = s < k + 2;
    const Theorem th = less ? Theorem::Less : Theorem::Greater;
    if (l == 0) return {th, "a", {}, {}, {}};

    const std::int64_t t = position_interval(p, k, l);
    const std::int64_t c = t - 1;
    const std::int64_t last_i = less ? s - 4 : k - 2;
    auto in = [&](Count lo, Count hi) { return lo.value() <= l && l <= hi.value(); };

    // pieces [c Sum_{i}^{k-1} p^j + p^i, c Sum_{i+1}^{k-1} p^j + p^{i+1} - 1]
    const std::string grp = t < h ? "b" : (t > h ? "d" : "c");
    for (std::int64_t i = 0; i <= last_i; ++i) {
        const Count lo = Count{c} * power_span(p, i, k - 1) + Count{p.pow(i)};
        const Count hi = Count{c} * power_span(p, i + 1, k - 1) + Count{p.pow(i + 1)} - Count{1};
        if (in(lo, hi)) return {th, grp + "-i", t, i, {}};
    }
    if (t != h) {
        const std::int64_t top = less ? s - 3 : k - 1;
        const Count lo = Count{c} * power_span(p, top, k - 1) + Count{p.pow(top)};
        if (in(lo, j_kt(p, k, t))) return {th, grp + "-ii", t, {}, {}};
        throw std::logic_error("classify_case: uncovered position");
    }

    const Count hg = j_kt(p, k, h);
    if (l == hg.value()) return {th, less ? "c-iv" : "c-iii", t, {}, {}};
    if (less) {
        const Count lo = Count{c} * power_span(p, s - 3, k - 1) + Count{p.pow(s - 3)};
        const Count hi = Count{h} * power_span(p, s - 2, k - 1) - Count{1};
        if (in(lo, hi)) return {th, "c-ii", t, {}, {}};
    }
    const std::int64_t last_ip = less ? s - 2 : k - 1;
    for (std::int64_t ip = 1; ip <= last_ip; ++ip) {
        const Count lo = Count{h} * power_span(p, ip, k - 1);
        const Count hi = Count{h} * power_span(p, ip - 1, k - 1) - Count{1};
        if (in(lo, hi)) return {th, less ? "c-iii" : "c-ii", t, {}, ip};
    }
    throw std::logic_error("classify_case: uncovered position");
}

// ---------------------------------------------------------------- closed forms

inline Count m_closed(OddPrime p, std::int64_t k, std::int64_t s, std::int64_t l) {
    using detail::power_prefix;
    using detail::power_span;
    const CaseLabel c = classify_case(p, k, s, l);
    const std::int64_t pv = p.value();
    const Count P{pv};
    const Count h{p.half()};
    const Count S{s};
    if (s == 1) return h;

    switch (c.theorem) {
        case Theorem::P0:
            return h * (Count{2} * (S - Count{1}) * Count{p.pow(s - 1)} - (Count{2} * S - Count{3}) * Count{p.pow(s - 2)});
        case Theorem::P1: {
            const bool high = c.id == "high";
            if (s == 2) return h * (Count{2} * P + Count{high ? -1 : 1});
            Count e = Count{2} * (S - Count{1}) * P * P + Count{2} * Count{*c.t} - (Count{2} * S - Count{5});
            if (high) e -= Count{2} * P;
            return (Count{p.pow(s - 3)} * Count{pv - 1} * e).exact_div(2);
        }
        case Theorem::Base:
            return h * (Count{2} * P + Count{c.id == "low" ? 1 : -1});
        case Theorem::Less: {
            const Count b = Count{2} * (S - Count{1}) * Count{p.pow(s - 1)};
            const Count one{1};
            const Count two{2};
            const Count t{c.t.value_or(0)};
            auto piece = [&] { return two * power_prefix(p, s - *c.i - 4); };
            const Count g = power_prefix(p, s - 3);
            Count e;
            if (c.id == "a") e = b + one;
            else if (c.id == "b-i") e = b + one + two * t * g - piece();
            else if (c.id == "b-ii") e = b + one + two * t * g;
            else if (c.id == "c-i") e = b + one + Count{pv - 1} * g - piece();
            else if (c.id == "c-ii") e = b + Count{p.pow(s - 2)};
            else if (c.id == "c-iii")
                e = b - two - Count{p.pow(s - 2)} - two * power_span(p, 1, s - 3) +
                    two * power_span(p, s - *c.i_prime - 1, s - 2);
            else if (c.id == "c-iv") e = b - two - Count{p.pow(s - 2)} - two * power_span(p, 1, s - 3);
            else if (c.id == "d-i") e = b - one + (two * t - two * P) * g - piece();
            else if (c.id == "d-ii") e = b - one + (two * t - two * P) * g;
            else throw std::logic_error("m_closed: unknown Less case");
            return h * e;
        }
        case Theorem::Greater: {
            const Count two{2};
            const Count K{k};
            const Count q = two * (S - Count{1}) * Count{p.pow(k + 1)} - two * (S - K) + Count{3};
            const Count g = geom_sum(p, k);
            const Count t{c.t.value_or(0)};
            auto piece = [&] { return two * power_prefix(p, k - *c.i - 2); };
            Count e;
            if (c.id == "a") e = q;
            else if (c.id == "b-i") e = q + two * t * g - piece();
            else if (c.id == "b-ii") e = q + two * t * g;
            else if (c.id == "c-i") e = q + Count{pv - 1} * g - piece();
            else if (c.id == "c-ii")
                e = q - Count{p.pow(k)} - two * power_span(p, 1, k - 1) + two * power_span(p, k - *c.i_prime + 1, k) -
                    Count{1};
            else if (c.id == "c-iii") e = q - Count{p.pow(k)} - two * power_span(p, 1, k - 1) - Count{1};
            else if (c.id == "d-i") e = q + two * (t - P) * g - piece();
            else if (c.id == "d-ii") e = q + two * (t - P) * g;
            else throw std::logic_error("m_closed: unknown Greater case");
            return (Count{p.pow(s - 2 - k)} * Count{pv - 1} * e).exact_div(2);
        }
    }
    throw std::logic_error("m_closed: unknown theorem");
}

inline Count m_closed(const VertexId& v) {
    detail::require_fib_vertex(v);
    return m_closed(v.p(), v.class_k(), v.s(), v.pos());
}

/// m_closed for s = s_lo..s_hi at fixed (p, k, l).
inline std::vector<Count> sequence(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s_lo, std::int64_t s_hi) {
    if (s_lo < 1 || s_hi < s_lo) throw std::invalid_argument("sequence: need 1 <= s_lo <= s_hi");
    std::vector<Count> out;
    for (std::int64_t s = s_lo; s <= s_hi; ++s) out.push_back(m_closed(p, k, s, l));
    return out;
}

// ---------------------------------------------------------------- three-term identity

struct RrReport {
    bool ok = true;
    std::int64_t checked = 0;
    std::vector<std::int64_t> failing_s;
};

namespace detail {

/// M(s+2, l) minus the two component sums, i.e. the b_s the identity must supply.
inline Count rr_residual(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s) {
    const std::vector<std::int64_t> c1 = component_positions(p, k, l);
    const std::vector<std::int64_t> c2 = component_positions(p, k, c1.front());
    Count rest{0};
    for (std::int64_t x : c2) rest += m_closed(p, k, s, x);
    for (std::size_t i = 1; i < c1.size(); ++i) rest += m_closed(p, k, s + 1, c1[i]);
    return m_closed(p, k, s + 2, l) - rest;
}

template <typename BFn>
RrReport rr_run(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s_max, BFn b_of_s) {
    if (k < 0 || l < 0 || l >= p.pow(k)) throw std::out_of_range("rr_check: l outside [0, p^k)");
    RrReport rep;
    for (std::int64_t s = k + 2; s <= s_max - 2; ++s) {
        ++rep.checked;
        if (rr_residual(p, k, l, s) != b_of_s(s)) {
            rep.ok = false;
            rep.failing_s.push_back(s);
        }
    }
    return rep;
}

}  // namespace detail

/**
 * The b_s of the three-term identity
 *   M(s+2, l) = b_s + Sum_{t''} M(s, comps(alpha)) + Sum_{t'=1}^{p-1} M(s+1, comps(l)_{t'})
 * with alpha = floor(l/p): p^{s-1}(p-1)(p^2-1) for k = 0; for k >= 1,
 * p^{s-1}(p-1)(p^2+p+t) when l < (p^k-1)/2 and p^{s-1}(p-1)(p^2+t) otherwise.
 */
inline Count rr_b(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s) {
    const std::int64_t pv = p.value();
    const Count lead = Count{p.pow(s - 1)} * Count{pv - 1};
    if (k == 0) return lead * Count{pv * pv - 1};
    const std::int64_t t = position_interval(p, k, l);
    return lead * Count{pv * pv + t + (detail::low_position(p, k, l) ? pv : 0)};
}

/// b_s assembled from the two recurrence added terms it absorbs.
inline Count rr_b_corrected(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s) {
    return recurrence_added_term(p, k, s + 2, l) + recurrence_added_term(p, k, s + 1, l / p.value());
}

/// Checks the identity with rr_b for s = k+2..s_max-2, using closed-form values.
inline RrReport rr_check(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s_max) {
    return detail::rr_run(p, k, l, s_max, [&](std::int64_t s) { return rr_b(p, k, l, s); });
}

/// Same identity with rr_b_corrected.
inline RrReport rr_check_corrected(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t s_max) {
    return detail::rr_run(p, k, l, s_max, [&](std::int64_t s) { return rr_b_corrected(p, k, l, s); });
}

}  // namespace pbratteli
