#pragma once

// Partial latin squares and their fractional completion: P maps to the
// 3-partite non-incidence graph G_P (classes = rows, columns, symbols);
// triangles of G_P are exactly the admissible placements, so a certified
// fractional fan decomposition of G_P is a fractional completion of P.

#include <array>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fandec/errors.hpp"
#include "fandec/fan_solver.hpp"
#include "fandec/partite_graph.hpp"
#include "fandec/rational.hpp"

namespace fandec {

struct PartialLatinSquare {
    int n = 0;
    std::vector<std::array<int, 3>> triples; // (row, col, symbol), 0-indexed, sorted

    bool operator==(const PartialLatinSquare&) const = default;
};

namespace detail {

inline std::string triple_str(const std::array<int, 3>& t) {
    std::ostringstream os;
    os << '(' << t[0] << ',' << t[1] << ',' << t[2] << ')';
    return os.str();
}

/// Latin-property validation; reports the first offending pair of triples.
inline void validate_pls(PartialLatinSquare& p) {
    std::sort(p.triples.begin(), p.triples.end());
    const std::size_t nn = static_cast<std::size_t>(p.n) * static_cast<std::size_t>(p.n);
    // seen[pair kind][i*n + j] = 1 + index of the triple that claimed it
    std::vector<std::size_t> seen(3 * nn, 0);
    const char* clash[3] = {"cell filled twice", "symbol repeated in a row",
                            "symbol repeated in a column"};
    for (std::size_t i = 0; i < p.triples.size(); ++i) {
        const auto& t = p.triples[i];
        for (int c = 0; c < 3; ++c)
            if (t[static_cast<std::size_t>(c)] < 0 || t[static_cast<std::size_t>(c)] >= p.n)
                throw parse_error("latin square: entry out of range in triple " + triple_str(t));
        const std::size_t keys[3] = {
            static_cast<std::size_t>(t[0]) * p.n + t[1],
            nn + static_cast<std::size_t>(t[0]) * p.n + t[2],
            2 * nn + static_cast<std::size_t>(t[1]) * p.n + t[2]};
        for (int kind = 0; kind < 3; ++kind) {
            std::size_t& slot = seen[keys[static_cast<std::size_t>(kind)]];
            if (slot)
                throw parse_error(std::string("latin square: ") + clash[kind] + ": " +
                                  triple_str(p.triples[slot - 1]) + " vs " + triple_str(t));
            slot = i + 1;
        }
    }
}

} // namespace detail

/// Parse either format: a grid (n lines of n tokens, "." or "0" empty,
/// symbols 1-indexed) or triples (header "pls n", lines "r c s" 0-indexed).
inline PartialLatinSquare parse_pls(std::istream& is) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(is, line)) {
        std::istringstream probe(line);
        std::string tok;
        if (probe >> tok) lines.push_back(line);
    }
    if (lines.empty()) throw parse_error("latin square: empty input");

    PartialLatinSquare p;
    std::istringstream first(lines[0]);
    std::string tag;
    first >> tag;
    if (tag == "pls") {
        if (!(first >> p.n) || p.n < 1) throw parse_error("latin square: bad 'pls n' header");
        for (std::size_t i = 1; i < lines.size(); ++i) {
            std::istringstream ls(lines[i]);
            std::array<int, 3> t{};
            std::string extra;
            if (!(ls >> t[0] >> t[1] >> t[2]) || (ls >> extra))
                throw parse_error("latin square: expected 'r c s' on line " +
                                  std::to_string(i + 1));
            p.triples.push_back(t);
        }
        detail::validate_pls(p);
        return p;
    }

    // grid format: the first row fixes n
    std::vector<std::vector<std::string>> rows;
    for (const auto& l : lines) {
        std::istringstream ls(l);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        rows.push_back(std::move(toks));
    }
    p.n = static_cast<int>(rows[0].size());
    if (static_cast<int>(rows.size()) != p.n)
        throw parse_error("latin square: grid must have n rows of n tokens");
    for (int r = 0; r < p.n; ++r) {
        if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != p.n)
            throw parse_error("latin square: ragged grid row " + std::to_string(r + 1));
        for (int c = 0; c < p.n; ++c) {
            const std::string& tok = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (tok == "." || tok == "0") continue;
            int s = 0;
            try {
                s = std::stoi(tok);
            } catch (...) {
                throw parse_error("latin square: bad token '" + tok + "'");
            }
            if (s < 1 || s > p.n)
                throw parse_error("latin square: symbol out of range: '" + tok + "'");
            p.triples.push_back({r, c, s - 1});
        }
    }
    detail::validate_pls(p);
    return p;
}

inline PartialLatinSquare parse_pls(const std::string& text) {
    std::istringstream is(text);
    return parse_pls(is);
}

inline std::string serialize_triples(const PartialLatinSquare& p) {
    std::ostringstream os;
    os << "pls " << p.n << '\n';
    for (const auto& t : p.triples) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    return os.str();
}

inline std::string serialize_grid(const PartialLatinSquare& p) {
    std::vector<std::vector<int>> g(static_cast<std::size_t>(p.n),
                                    std::vector<int>(static_cast<std::size_t>(p.n), 0));
    for (const auto& t : p.triples)
        g[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = t[2] + 1;
    std::ostringstream os;
    for (int r = 0; r < p.n; ++r) {
        for (int c = 0; c < p.n; ++c) {
            if (c) os << ' ';
            if (g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == 0)
                os << '.';
            else
                os << g[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
        os << '\n';
    }
    return os.str();
}

struct DensityReport {
    int max_row_count = 0;
    int max_col_count = 0;
    int max_symbol_count = 0;
    Rat c; // max of the three over n
};

inline DensityReport density(const PartialLatinSquare& p) {
    std::vector<int> rows(static_cast<std::size_t>(p.n), 0), cols(rows), syms(rows);
    for (const auto& t : p.triples) {
        ++rows[static_cast<std::size_t>(t[0])];
        ++cols[static_cast<std::size_t>(t[1])];
        ++syms[static_cast<std::size_t>(t[2])];
    }
    auto mx = [](const std::vector<int>& v) {
        int m = 0;
        for (int x : v) m = std::max(m, x);
        return m;
    };
    DensityReport r;
    r.max_row_count = mx(rows);
    r.max_col_count = mx(cols);
    r.max_symbol_count = mx(syms);
    r.c = make_rat(std::max({r.max_row_count, r.max_col_count, r.max_symbol_count}), p.n);
    return r;
}

/// Non-incidence graph G_P on classes (rows, columns, symbols): an edge
/// joins two vertices exactly when they are not incident in P.  Always
/// locally balanced, with min degree >= 2(1-c)n.
inline PartiteGraph build_gp(const PartialLatinSquare& p) {
    PartiteGraph g = PartiteGraph::complete(3, p.n);
    for (const auto& t : p.triples) {
        g.remove(make_edge(0, t[0], 1, t[1])); // cell (r,c) is filled
        g.remove(make_edge(0, t[0], 2, t[2])); // symbol s used in row r
        g.remove(make_edge(1, t[1], 2, t[2])); // symbol s used in column c
    }
    return g;
}

struct CompletionResult {
    TriangleWeights weights;
    SolveReport report;
    DensityReport density;
    bool above_attempt_ceiling = false; // c > 0.04: no guarantee, still attempted
};

/// Fractional completion pipeline: build G_P, solve the fan system, lift,
/// certify.  Attempts any density; flags c above the guaranteed range.
inline CompletionResult fractional_complete(const PartialLatinSquare& p,
                                            const SolverConfig& cfg = {}) {
    CompletionResult out;
    out.density = density(p);
    out.above_attempt_ceiling = out.density.c > make_rat(4, 100);
    PartiteGraph g = build_gp(p);
    try {
        SolveResult s = solve_fans(g, cfg);
        out.weights = s.lifted;
        out.report = s.report;
    } catch (const precondition_error& e) {
        // a non-incident pair with no admissible placement means no
        // fractional completion exists at all
        throw precondition_error(std::string("no fractional completion is possible: ") +
                                 e.what());
    }
    return out;
}

} // namespace fandec
