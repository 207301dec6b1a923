#pragma once

/**
 * @file core.hpp
 * @brief Shared primitives of the p-Bratteli diagram of hook partitions.
 *
 * Everything here is exact integer arithmetic. Coordinates are int64 and
 * every arithmetic step that could grow goes through the checked helpers,
 * which throw std::overflow_error instead of wrapping.
 *
 * A vertex is addressed by (p, floor, class k, position). On floor 2r the
 * classes are k = 0..r, on floor 2r-1 they are k = 0..r-1; the largest
 * class on a floor is the "top" class whose vertices are the hooks of size
 * p^{r-1}(p-1) with leg equal to the position.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pbratteli {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
    if (exp < 0) throw std::invalid_argument("negative exponent");
    std::int64_t result = 1;
    for (std::int64_t i = 0; i < exp; ++i) result = checked_mul(result, base);
    return result;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d <= n / d; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

/// Exact (signed) integer value with overflow-checked arithmetic.
class Count {
public:
    constexpr Count() = default;
    constexpr explicit Count(std::int64_t v) : v_(v) {}

    constexpr std::int64_t value() const { return v_; }

    friend Count operator+(Count a, Count b) { return Count{detail::checked_add(a.v_, b.v_)}; }
    friend Count operator-(Count a, Count b) { return Count{detail::checked_sub(a.v_, b.v_)}; }
    friend Count operator*(Count a, Count b) { return Count{detail::checked_mul(a.v_, b.v_)}; }
    Count operator-() const { return Count{detail::checked_sub(0, v_)}; }
    Count& operator+=(Count o) { return *this = *this + o; }
    Count& operator-=(Count o) { return *this = *this - o; }
    Count& operator*=(Count o) { return *this = *this * o; }

    /// Exact division; throws std::domain_error if `d` does not divide the value.
    Count exact_div(std::int64_t d) const {
        if (d == 0 || v_ % d != 0) throw std::domain_error("inexact division of " + std::to_string(v_));
        return Count{v_ / d};
    }

    constexpr bool operator==(const Count&) const = default;
    constexpr auto operator<=>(const Count&) const = default;

    std::string to_string() const { return std::to_string(v_); }
    friend std::ostream& operator<<(std::ostream& os, Count c) { return os << c.v_; }

private:
    std::int64_t v_ = 0;
};

class OddPrime {
public:
    explicit OddPrime(std::int64_t p) : p_(p) {
        if (p < 3 || !detail::is_prime(p)) throw std::invalid_argument("p must be an odd prime");
    }

    constexpr std::int64_t value() const { return p_; }
    /// (p-1)/2
    constexpr std::int64_t half() const { return (p_ - 1) / 2; }
    std::int64_t pow(std::int64_t e) const { return detail::checked_pow(p_, e); }

    constexpr bool operator==(const OddPrime&) const = default;

private:
    std::int64_t p_;
};

/// Sum_{i=0}^{k-1} p^i, i.e. (p^k - 1)/(p - 1); zero for k = 0.
inline Count geom_sum(OddPrime p, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("geom_sum: k must be non-negative");
    Count sum{0};
    for (std::int64_t i = 0; i < k; ++i) sum += Count{p.pow(i)};
    return sum;
}

/// t * (1 + p + ... + p^{k-1}); the right end of the t-th position interval.
inline Count j_kt(OddPrime p, std::int64_t k, std::int64_t t) {
    if (k < 1) throw std::invalid_argument("j_kt: k must be at least 1");
    if (t < 0 || t > p.value() - 1) throw std::out_of_range("j_kt: t must lie in [0, p-1]");
    return Count{t} * geom_sum(p, k);
}

/// The t with j^k_{t-1} < l <= j^k_t; 0 when l = 0 or k = 0.
inline std::int64_t position_interval(OddPrime p, std::int64_t k, std::int64_t l) {
    if (k < 0 || l < 0) throw std::invalid_argument("position_interval: negative argument");
    if (k == 0 || l == 0) return 0;
    const std::int64_t g = geom_sum(p, k).value();
    const std::int64_t t = (l + g - 1) / g;
    if (t > p.value() - 1) throw std::out_of_range("position_interval: l beyond j^k_{p-1}");
    return t;
}

/// p^k (a p - (a + 1)); hook sizes and leg offsets are all of this form.
inline Count x_ak(OddPrime p, std::int64_t a, std::int64_t k) {
    if (a < 1 || k < 0) throw std::invalid_argument("x_ak: requires a >= 1 and k >= 0");
    return Count{p.pow(k)} * (Count{a} * Count{p.value()} - Count{a + 1});
}

/// The hook (size - leg, 1^leg) sitting on a given floor.
struct HookPartition {
    std::int64_t floor = 0;
    std::int64_t size = 0;
    std::int64_t leg = 0;

    std::int64_t arm() const { return size - leg; }
    bool valid() const { return floor >= 1 && leg >= 0 && leg < size; }

    constexpr bool operator==(const HookPartition&) const = default;
};

/// B(idx; (horiz, vert)): a removed or added skew block.
struct Block {
    std::int64_t idx = 0;
    std::int64_t horiz = 0;
    std::int64_t vert = 0;

    std::int64_t size() const { return horiz + vert; }
    bool empty() const { return horiz == 0 && vert == 0; }

    constexpr bool operator==(const Block&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const Block& b) {
    return os << "B(" << b.idx << ";(" << b.horiz << "," << b.vert << "))";
}

/// r such that floor is 2r or 2r-1.
constexpr std::int64_t half_floor(std::int64_t floor) { return (floor + 1) / 2; }

/// Largest class index on a floor (the one-dimensional / top class).
constexpr std::int64_t top_class(std::int64_t floor) {
    return floor % 2 == 0 ? floor / 2 : half_floor(floor) - 1;
}

/// Number of positions in class k of the given floor; zero if the class does not exist.
inline std::int64_t class_size(OddPrime p, std::int64_t floor, std::int64_t k) {
    if (floor < 1 || k < 0 || k > top_class(floor)) return 0;
    const std::int64_t r = half_floor(floor);
    if (k == top_class(floor)) return detail::checked_mul(p.pow(r - 1), p.value() - 1);
    return floor % 2 == 0 ? p.pow(k) : p.pow(k + 1);
}

class VertexId {
public:
    VertexId(OddPrime p, std::int64_t floor, std::int64_t class_k, std::int64_t pos)
        : p_(p), floor_(floor), k_(class_k), pos_(pos) {
        if (!valid(p, floor, class_k, pos))
            throw std::invalid_argument("invalid vertex " + canonical_string(p, floor, class_k, pos));
    }

    static bool valid(OddPrime p, std::int64_t floor, std::int64_t class_k, std::int64_t pos) {
        return pos >= 0 && pos < class_size(p, floor, class_k);
    }

    static std::string canonical_string(OddPrime p, std::int64_t floor, std::int64_t k, std::int64_t pos) {
        return "p:" + std::to_string(p.value()) + "/f:" + std::to_string(floor) + "/k:" + std::to_string(k) +
               "/l:" + std::to_string(pos);
    }

    OddPrime p() const { return p_; }
    std::int64_t floor() const { return floor_; }
    std::int64_t class_k() const { return k_; }
    std::int64_t pos() const { return pos_; }

    std::int64_t r() const { return half_floor(floor_); }
    bool even_floor() const { return floor_ % 2 == 0; }
    bool top() const { return k_ == top_class(floor_); }
    /// s = r - k, the recursion depth of an even-floor vertex.
    std::int64_t s() const { return r() - k_; }

    /// `p:<p>/f:<floor>/k:<class>/l:<pos>`
    std::string canonical() const { return canonical_string(p_, floor_, k_, pos_); }

    bool operator==(const VertexId& o) const {
        return p_ == o.p_ && floor_ == o.floor_ && k_ == o.k_ && pos_ == o.pos_;
    }

private:
    OddPrime p_;
    std::int64_t floor_;
    std::int64_t k_;
    std::int64_t pos_;
};

inline std::ostream& operator<<(std::ostream& os, const VertexId& v) { return os << v.canonical(); }

inline HookPartition vertex_to_hook(const VertexId& v) {
    const OddPrime p = v.p();
    const std::int64_t r = v.r();
    const std::int64_t k = v.class_k();
    HookPartition h{v.floor(), 0, 0};
    if (v.top()) {
        h.size = detail::checked_mul(p.pow(r - 1), p.value() - 1);
        h.leg = v.pos();
    } else if (v.even_floor()) {
        const std::int64_t s = r - k;
        h.size = x_ak(p, 2 * s, k).value();
        h.leg = detail::checked_add(x_ak(p, s, k).value(), v.pos());
    } else {
        // odd class k <= r-2: (x_{(2(r-k)-1,k)}, x_{(r-k-1,k)} + pos)
        h.size = x_ak(p, 2 * (r - k) - 1, k).value();
        h.leg = detail::checked_add(x_ak(p, r - k - 1, k).value(), v.pos());
    }
    return h;
}

/// Inverse of vertex_to_hook. Classes on one floor have pairwise distinct sizes.
inline VertexId hook_to_vertex(OddPrime p, const HookPartition& h) {
    if (h.floor < 1) throw std::invalid_argument("not a diagram vertex");
    for (std::int64_t k = 0; k <= top_class(h.floor); ++k) {
        const std::int64_t n = class_size(p, h.floor, k);
        // Any position gives the class size; position 0 always exists.
        const HookPartition first = vertex_to_hook(VertexId{p, h.floor, k, 0});
        if (first.size != h.size) continue;
        const std::int64_t pos = h.leg - first.leg;
        if (pos < 0 || pos >= n) break;
        return VertexId{p, h.floor, k, pos};
    }
    throw std::invalid_argument("not a diagram vertex");
}

}  // namespace pbratteli

template <>
struct std::hash<pbratteli::VertexId> {
    std::size_t operator()(const pbratteli::VertexId& v) const noexcept {
        std::size_t h = std::hash<std::int64_t>{}(v.p().value());
        for (std::int64_t x : {v.floor(), v.class_k(), v.pos()})
            h = h * 1000003u ^ std::hash<std::int64_t>{}(x);
        return h;
    }
};
