#pragma once

/**
 * @file gfs.hpp
 * @brief Generating functions of the sequences a_n = M(p, k, s = n + k + 2, l).
 *
 * Every generating function has the shape
 *   F(x) = (p-1)/2 * ( A/(1-px) + (C - D x)/(1-px)^2 ),
 * so [x^n] F = (p-1)/2 * (A p^n + C (n+1) p^n - D n p^{n-1}).
 * The case is read off at s = k + 2; for s >= k + 2 the intervals do not
 * depend on s, so one label serves the whole sequence.
 */

#include <cstdint>
#include <stdexcept>

#include "core.hpp"
#include "fibo.hpp"

namespace pbratteli {

struct GfSpec {
    OddPrime p;
    std::int64_t scale_num = 0;  // (p-1)/2 as num/den
    std::int64_t scale_den = 2;
    Count a;
    Count c;
    Count d;

    friend GfSpec operator+(const GfSpec& x, const GfSpec& y) {
        if (!(x.p == y.p) || x.scale_num != y.scale_num || x.scale_den != y.scale_den)
            throw std::invalid_argument("GfSpec sum needs equal p and scale");
        return GfSpec{x.p, x.scale_num, x.scale_den, x.a + y.a, x.c + y.c, x.d + y.d};
    }
};

inline GfSpec gf_for_case(OddPrime p, std::int64_t k, const CaseLabel& label) {
    using detail::power_prefix;
    using detail::power_span;
    const std::int64_t pv = p.value();
    GfSpec g{p, pv - 1, 2, Count{0}, Count{0}, Count{0}};
    const Count P{pv};
    const Count two{2};
    if (k == 0) {
        if (label.theorem != Theorem::P0) throw std::invalid_argument("gf_for_case: k = 0 needs a P0 label");
        g.a = Count{-1};
        g.c = two * P;
        g.d = two * P;
        return g;
    }
    if (k == 1) {
        if (label.theorem != Theorem::P1 || !label.t) throw std::invalid_argument("gf_for_case: k = 1 needs a P1 label");
        g.a = two * P * P + two * Count{*label.t} - Count{1};
        if (label.id == "high") g.a -= two * P;
        g.c = two * P * P;
        g.d = two * P;
        return g;
    }
    if (label.theorem != Theorem::Greater)
        throw std::invalid_argument("gf_for_case: k >= 2 needs a label taken at s >= k+2");
    g.c = two * Count{p.pow(k + 1)};
    g.d = two * P;
    const Count base = two * Count{k} * Count{p.pow(k + 1)} - Count{1};
    const Count gk = geom_sum(p, k);
    const Count t{label.t.value_or(0)};
    const std::string& id = label.id;
    if (id == "a") g.a = base;
    else if (id == "b-i" || id == "c-i") g.a = two * t * gk - two * power_prefix(p, k - *label.i - 2) + base;
    else if (id == "d-i") g.a = two * (t - P) * gk - two * power_prefix(p, k - *label.i - 2) + base;
    else if (id == "b-ii") g.a = two * t * gk + base;
    else if (id == "d-ii") g.a = two * (t - P) * gk + base;
    else if (id == "c-ii")
        g.a = base - Count{p.pow(k)} - two * power_span(p, 1, k - 1) + two * power_span(p, k - *label.i_prime + 1, k) -
              Count{1};
    else if (id == "c-iii") g.a = base - Count{1} - Count{p.pow(k)} - two * power_span(p, 1, k - 1);
    else throw std::invalid_argument("gf_for_case: unknown case " + id);
    return g;
}

/// [x^n] of the generating function; throws if the value is not a non-negative integer.
inline Count gf_coeff(const GfSpec& g, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("gf_coeff: n >= 0 required");
    const OddPrime& p = g.p;
    Count raw = g.a * Count{p.pow(n)} + g.c * Count{n + 1} * Count{p.pow(n)};
    if (n > 0) raw -= g.d * Count{n} * Count{p.pow(n - 1)};
    const Count v = (raw * Count{g.scale_num}).exact_div(g.scale_den);
    if (v.value() < 0) throw std::domain_error("gf_coeff: negative coefficient");
    return v;
}

/// The generating function of the sequence at (p, k, l), labelled at s = k + 2.
inline GfSpec gf_for_position(OddPrime p, std::int64_t k, std::int64_t l) {
    return gf_for_case(p, k, classify_case(p, k, k + 2, l));
}

inline bool gf_matches_sequence(OddPrime p, std::int64_t k, std::int64_t l, std::int64_t n_terms) {
    if (n_terms < 1) throw std::invalid_argument("gf_matches_sequence: n_terms >= 1 required");
    const GfSpec g = gf_for_position(p, k, l);
    const std::vector<Count> seq = sequence(p, k, l, k + 2, k + 1 + n_terms);
    for (std::int64_t n = 0; n < n_terms; ++n)
        if (gf_coeff(g, n) != seq[static_cast<std::size_t>(n)]) return false;
    return true;
}

}  // namespace pbratteli
