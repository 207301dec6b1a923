// Command-line front end: diagram export, Fibonacci values, sign balance,
// self-verification and generating functions.
//
// Exit codes: 0 success, 1 a check failed, 2 bad arguments.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pbratteli/pbratteli.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace pbratteli;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::int64_t p = 0;
    std::int64_t k = 0;
    std::int64_t pos = 0;
    std::string s_range = "1";
    std::int64_t max_floor = 1;
    std::string method = "closed";
    std::string format = "table";
    unsigned threads = 1;
    std::int64_t budget = 100'000'000;
    std::int64_t terms = 10;
};

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const std::int64_t v = std::stoll(text, &used);
            if (used != text.size()) throw std::invalid_argument(text);
            return {v, v};
        }
        const std::string lo = text.substr(0, dots);
        const std::string hi = text.substr(dots + 2);
        const std::int64_t a = std::stoll(lo, &used);
        if (used != lo.size()) throw std::invalid_argument(text);
        const std::int64_t b = std::stoll(hi, &used);
        if (used != hi.size()) throw std::invalid_argument(text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw UsageError("--s expects A or A..B, got '" + text + "'");
    }
}

OddPrime parse_prime(std::int64_t p) {
    try {
        return OddPrime{p};
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

json vertex_json(const VertexId& v) {
    const HookPartition h = vertex_to_hook(v);
    return json{{"p", v.p().value()}, {"floor", v.floor()}, {"k", v.class_k()},
                {"pos", v.pos()},     {"size", h.size},     {"leg", h.leg}};
}

json edge_json(const Edge& e) {
    return json{{"upper", e.upper.canonical()},
                {"lower", e.lower.canonical()},
                {"block", json{{"idx", e.block.idx}, {"m", e.block.horiz}, {"n", e.block.vert}}}};
}

// ------------------------------------------------------------------ diagram

int cmd_diagram(const Options& o) {
    const OddPrime p = parse_prime(o.p);
    if (o.max_floor < 1) throw UsageError("--max-floor must be at least 1");
    if (o.format == "bfile") throw UsageError("bfile output is only available for fib");

    std::vector<FloorSlice> floors;
    for (std::int64_t f = 1; f <= o.max_floor; ++f) floors.push_back(floor_vertices(p, f));
    std::vector<Edge> edges;
    for (std::int64_t f = 1; f < o.max_floor; ++f)
        for (const VertexId& v : floors[static_cast<std::size_t>(f - 1)].vertices)
            for (const Edge& e : add_children(v)) edges.push_back(e);

    if (o.format == "json") {
        json out{{"p", p.value()}, {"max_floor", o.max_floor}, {"vertices", json::array()}, {"edges", json::array()}};
        for (const FloorSlice& fs : floors)
            for (const VertexId& v : fs.vertices) out["vertices"].push_back(vertex_json(v));
        for (const Edge& e : edges) out["edges"].push_back(edge_json(e));
        std::cout << out.dump(2) << '\n';
    } else if (o.format == "dot") {
        std::cout << "digraph pbratteli {\n  rankdir=TB;\n";
        for (const FloorSlice& fs : floors)
            for (const VertexId& v : fs.vertices) {
                const HookPartition h = vertex_to_hook(v);
                std::cout << "  \"" << v.canonical() << "\" [label=\"(" << h.size << "," << h.leg << ")\\n"
                          << v.canonical() << "\"];\n";
            }
        for (const Edge& e : edges)
            std::cout << "  \"" << e.lower.canonical() << "\" -> \"" << e.upper.canonical() << "\" [label=\"("
                      << e.block.horiz << "," << e.block.vert << ")\"];\n";
        std::cout << "}\n";
    } else {
        std::cout << "floor\tk\tpos\tsize\tleg\n";
        for (const FloorSlice& fs : floors)
            for (const VertexId& v : fs.vertices) {
                const HookPartition h = vertex_to_hook(v);
                std::cout << v.floor() << '\t' << v.class_k() << '\t' << v.pos() << '\t' << h.size << '\t' << h.leg
                          << '\n';
            }
        std::cout << "edges: " << edges.size() << '\n';
    }
    return kOk;
}

// ------------------------------------------------------------------ fib

void check_position(OddPrime p, std::int64_t k, std::int64_t pos) {
    if (k < 0) throw UsageError("--k must be non-negative");
    if (pos < 0 || pos >= p.pow(k))
        throw UsageError("--pos must lie in [0, p^k) = [0, " + std::to_string(p.pow(k)) + ")");
}

int cmd_fib(const Options& o) {
    const OddPrime p = parse_prime(o.p);
    check_position(p, o.k, o.pos);
    const auto [s_lo, s_hi] = parse_range(o.s_range);
    if (s_lo < 1 || s_hi < s_lo) throw UsageError("--s needs 1 <= A <= B");
    if (o.format == "dot") throw UsageError("dot output is only available for diagram");

    const bool all = o.method == "all";
    RecurrenceSolver solver;
    bool agree = true;
    json records = json::array();
    std::ostringstream text;
    if (o.format == "table") text << (all ? "s\tbrute\trecur\tclosed\tmatch\n" : "s\tvalue\n");

    for (std::int64_t s = s_lo; s <= s_hi; ++s) {
        const VertexId v = fib_vertex(p, o.k, s, o.pos);
        std::optional<Count> brute, recur, closed;
        if (all || o.method == "brute") {
            try {
                brute = m_brute(v, {o.budget, o.threads});
            } catch (const BudgetExceeded& e) {
                throw UsageError(e.what());
            }
        }
        if (all || o.method == "recur") recur = solver(v);
        if (all || o.method == "closed") closed = m_closed(v);
        const Count value = closed ? *closed : (recur ? *recur : *brute);
        const bool match = !all || (*brute == *recur && *recur == *closed);
        agree = agree && match;

        if (o.format == "json") {
            json rec{{"vertex", vertex_json(v)}, {"s", s}};
            if (brute) rec["brute"] = brute->value();
            if (recur) rec["recur"] = recur->value();
            if (closed) rec["closed"] = closed->value();
            if (all) rec["match"] = match;
            records.push_back(rec);
        } else if (o.format == "bfile") {
            text << s << ' ' << value << '\n';
        } else if (all) {
            text << s << '\t' << *brute << '\t' << *recur << '\t' << *closed << '\t' << (match ? "match" : "MISMATCH")
                 << '\n';
        } else {
            text << s << '\t' << value << '\n';
        }
    }
    if (o.format == "json")
        std::cout << json{{"p", p.value()}, {"k", o.k}, {"pos", o.pos}, {"method", o.method}, {"records", records}}.dump(2)
                  << '\n';
    else
        std::cout << text.str();
    if (!agree) {
        std::cerr << "methods disagree\n";
        return kCheckFailed;
    }
    return kOk;
}

// ------------------------------------------------------------------ signbal

int cmd_signbal(const Options& o) {
    const OddPrime p = parse_prime(o.p);
    if (o.max_floor < 1) throw UsageError("--max-floor must be at least 1");
    std::int64_t checked = 0;
    std::int64_t bad = 0;
    for (std::int64_t f = 2; f <= o.max_floor; f += 2)
        for (const VertexId& v : floor_vertices(p, f).vertices) {
            if (v.top()) continue;
            ++checked;
            const Count b = sign_balance(v);
            if (b.value() != 0) {
                ++bad;
                std::cout << "nonzero sign balance " << b << " at " << v.canonical() << '\n';
            }
        }
    std::cout << "checked " << checked << " vertices, " << bad << " nonzero\n";
    return bad == 0 ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ verify

int cmd_verify(const Options& o) {
    const OddPrime p = parse_prime(o.p);
    if (o.max_floor < 1) throw UsageError("--max-floor must be at least 1");
    VerifyOptions vo;
    vo.max_floor = o.max_floor;
    vo.brute_budget = o.budget;
    vo.threads = o.threads;
    json suites = json::array();
    bool ok = true;
    for (const SuiteResult& r : run_verify(p, vo)) {
        ok = ok && r.failures == 0;
        suites.push_back(json{{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"examples", r.examples}});
    }
    std::cout << json{{"p", p.value()}, {"max_floor", o.max_floor}, {"ok", ok}, {"suites", suites}}.dump(2) << '\n';
    return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ gf

int cmd_gf(const Options& o) {
    const OddPrime p = parse_prime(o.p);
    check_position(p, o.k, o.pos);
    if (o.terms < 1) throw UsageError("--terms must be at least 1");
    const GfSpec g = gf_for_position(p, o.k, o.pos);
    const CaseLabel label = classify_case(p, o.k, o.k + 2, o.pos);
    const std::vector<Count> seq = sequence(p, o.k, o.pos, o.k + 2, o.k + 1 + o.terms);
    bool ok = true;
    json rows = json::array();
    std::ostringstream text;
    std::ostringstream case_text;
    case_text << label;
    text << "case " << case_text.str() << "\nA=" << g.a << " C=" << g.c << " D=" << g.d << " scale=" << g.scale_num
         << "/" << g.scale_den << "\nn\ts\tcoeff\tclosed\tmatch\n";
    for (std::int64_t n = 0; n < o.terms; ++n) {
        const Count c = gf_coeff(g, n);
        const Count want = seq[static_cast<std::size_t>(n)];
        ok = ok && c == want;
        text << n << '\t' << n + o.k + 2 << '\t' << c << '\t' << want << '\t' << (c == want ? "match" : "MISMATCH")
             << '\n';
        rows.push_back(json{{"n", n}, {"s", n + o.k + 2}, {"coeff", c.value()}, {"closed", want.value()}, {"match", c == want}});
    }
    if (o.format == "json")
        std::cout << json{{"p", p.value()},
                          {"k", o.k},
                          {"pos", o.pos},
                          {"case", case_text.str()},
                          {"A", g.a.value()},
                          {"C", g.c.value()},
                          {"D", g.d.value()},
                          {"terms", rows}}
                         .dump(2)
                  << '\n';
    else
        std::cout << text.str();
    return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-Bratteli diagram of hook partitions: diagrams, descent statistics and p^(k)-Fibonacci numbers"};
    app.require_subcommand(1);
    Options o;

    auto add_p = [&](CLI::App* c) { c->add_option("--p", o.p, "odd prime")->required(); };
    auto add_format = [&](CLI::App* c, std::vector<std::string> allowed) {
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember(std::move(allowed)));
    };
    auto add_threads = [&](CLI::App* c) {
        c->add_option("--threads", o.threads, "worker threads, 0 = all cores");
        c->add_option("--budget", o.budget, "largest path count brute force will enumerate");
    };

    CLI::App* diagram = app.add_subcommand("diagram", "emit vertices and edges of floors 1..max-floor");
    add_p(diagram);
    diagram->add_option("--max-floor", o.max_floor, "highest floor")->required();
    add_format(diagram, {"json", "table", "dot", "bfile"});

    CLI::App* fib = app.add_subcommand("fib", "p^(k)-Fibonacci numbers M at (p, k, pos) for a range of s");
    add_p(fib);
    fib->add_option("--k", o.k, "class index k")->required();
    fib->add_option("--pos", o.pos, "position l in [0, p^k)");
    fib->add_option("--s", o.s_range, "s or A..B")->required();
    fib->add_option("--method", o.method, "brute, recur, closed or all")
        ->check(CLI::IsMember({"brute", "recur", "closed", "all"}));
    add_format(fib, {"json", "table", "dot", "bfile"});
    add_threads(fib);

    CLI::App* signbal = app.add_subcommand("signbal", "check that every sign balance vanishes");
    add_p(signbal);
    signbal->add_option("--max-floor", o.max_floor, "highest floor")->required();

    CLI::App* verify = app.add_subcommand("verify", "run every self-check suite, JSON report");
    add_p(verify);
    verify->add_option("--max-floor", o.max_floor, "highest floor")->required();
    add_threads(verify);

    CLI::App* gf = app.add_subcommand("gf", "generating function parameters and coefficients");
    add_p(gf);
    gf->add_option("--k", o.k, "class index k")->required();
    gf->add_option("--pos", o.pos, "position l in [0, p^k)");
    gf->add_option("--terms", o.terms, "number of coefficients");
    add_format(gf, {"json", "table"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*diagram) return cmd_diagram(o);
        if (*fib) return cmd_fib(o);
        if (*signbal) return cmd_signbal(o);
        if (*verify) return cmd_verify(o);
        if (*gf) return cmd_gf(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::overflow_error& e) {
        std::cerr << "error: " << e.what() << " (value exceeds 64-bit range)\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
