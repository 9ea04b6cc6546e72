// Dynkin and folded graphs with the paper's fixed vertex labelings, the
// Nakayama permutation and graph folding.
#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace preproj {

enum class Kind { A, B, D, E, F, ExtA, ExtD, ExtE };

inline std::string kind_name(Kind k) {
    switch (k) {
        case Kind::A: return "A";
        case Kind::B: return "B";
        case Kind::D: return "D";
        case Kind::E: return "E";
        case Kind::F: return "F";
        case Kind::ExtA: return "extended-A";
        case Kind::ExtD: return "extended-D";
        case Kind::ExtE: return "extended-E";
    }
    return "?";
}

struct DynkinGraph {
    struct Edge {
        int i, j;
        int m;  // 3 simply laced, 4 for the marked B/F edge
    };

    Kind kind;
    int rank;
    std::vector<int> vertices;
    std::vector<Edge> edges;

    bool has_vertex(int v) const {
        return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
    }
    bool adjacent(int a, int b) const {
        for (const Edge& e : edges)
            if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) return true;
        return false;
    }
    int edge_label(int a, int b) const {
        for (const Edge& e : edges)
            if ((e.i == a && e.j == b) || (e.i == b && e.j == a)) return e.m;
        return 2;
    }
    /// Coxeter matrix entry m(a, b).
    int coxeter_m(int a, int b) const { return a == b ? 1 : edge_label(a, b); }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (const Edge& e : edges) {
            if (e.i == v) out.push_back(e.j);
            if (e.j == v) out.push_back(e.i);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    bool simply_laced() const {
        return kind == Kind::A || kind == Kind::D || kind == Kind::E;
    }
    std::string name() const { return kind_name(kind) + std::to_string(rank); }
};

/// The path reading order of a type-A diagram: Figure 1 labels the path
/// "m, m-1, ..., 2, 1, m+1, ..., n" with m = ceil(n/2).
inline std::vector<int> a_path_order(int n) {
    int m = (n + 1) / 2;
    std::vector<int> order;
    for (int i = m; i >= 1; --i) order.push_back(i);
    for (int i = m + 1; i <= n; ++i) order.push_back(i);
    return order;
}

inline DynkinGraph build_dynkin(Kind kind, int rank) {
    DynkinGraph g{kind, rank, {}, {}};
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("build_dynkin(" + kind_name(kind) + "," +
                                    std::to_string(rank) + "): " + why);
    };
    auto fill = [&](int lo, int hi) {
        for (int v = lo; v <= hi; ++v) g.vertices.push_back(v);
    };
    switch (kind) {
        case Kind::A: {
            if (rank < 1) fail("rank must be >= 1");
            fill(1, rank);
            std::vector<int> order = a_path_order(rank);
            for (size_t k = 0; k + 1 < order.size(); ++k)
                g.edges.push_back({order[k], order[k + 1], 3});
            break;
        }
        case Kind::B: {
            if (rank < 1) fail("rank must be >= 1");
            fill(1, rank);
            for (int v = 1; v < rank; ++v) g.edges.push_back({v, v + 1, v == 1 ? 4 : 3});
            break;
        }
        case Kind::D: {
            if (rank < 4) fail("rank must be >= 4");
            fill(1, rank);
            g.edges.push_back({1, 2, 3});
            g.edges.push_back({rank, 2, 3});
            for (int v = 2; v + 1 <= rank - 1; ++v) g.edges.push_back({v, v + 1, 3});
            break;
        }
        case Kind::E: {
            if (rank < 6 || rank > 8) fail("rank must be 6, 7 or 8");
            fill(1, rank);
            g.edges.push_back({1, 2, 3});
            g.edges.push_back({4, 3, 3});
            g.edges.push_back({3, 2, 3});
            g.edges.push_back({2, 5, 3});
            for (int v = 5; v + 1 <= rank; ++v) g.edges.push_back({v, v + 1, 3});
            break;
        }
        case Kind::F: {
            if (rank != 4) fail("rank must be 4");
            fill(1, 4);
            g.edges.push_back({1, 2, 3});
            g.edges.push_back({2, 3, 4});
            g.edges.push_back({3, 4, 3});
            break;
        }
        case Kind::ExtA: {
            if (rank < 2) fail("extended A_1 is a multigraph, not supported");
            DynkinGraph base = build_dynkin(Kind::A, rank);
            g.vertices.push_back(0);
            for (int v : base.vertices) g.vertices.push_back(v);
            g.edges = base.edges;
            std::vector<int> order = a_path_order(rank);
            g.edges.push_back({0, order.front(), 3});
            g.edges.push_back({0, order.back(), 3});
            break;
        }
        case Kind::ExtD: {
            if (rank < 4) fail("rank must be >= 4");
            DynkinGraph base = build_dynkin(Kind::D, rank);
            g.vertices.push_back(0);
            for (int v : base.vertices) g.vertices.push_back(v);
            g.edges = base.edges;
            g.edges.push_back({0, rank - 2, 3});
            break;
        }
        case Kind::ExtE: {
            if (rank < 6 || rank > 8) fail("rank must be 6, 7 or 8");
            DynkinGraph base = build_dynkin(Kind::E, rank);
            g.vertices.push_back(0);
            for (int v : base.vertices) g.vertices.push_back(v);
            g.edges = base.edges;
            int attach = rank == 6 ? 1 : (rank == 7 ? 4 : 8);
            g.edges.push_back({0, attach, 3});
            break;
        }
    }
    return g;
}

inline DynkinGraph extended_of(const DynkinGraph& g) {
    switch (g.kind) {
        case Kind::A: return build_dynkin(Kind::ExtA, g.rank);
        case Kind::D: return build_dynkin(Kind::ExtD, g.rank);
        case Kind::E: return build_dynkin(Kind::ExtE, g.rank);
        default: throw std::invalid_argument("extended_of: need a simply-laced graph");
    }
}

struct NakayamaPerm {
    std::map<int, int> map;
    int operator()(int v) const { return map.at(v); }
    bool is_identity() const {
        for (auto& [k, v] : map)
            if (k != v) return false;
        return true;
    }
};

/// The case table of §2.1.
inline NakayamaPerm nakayama_perm(const DynkinGraph& g) {
    if (!g.simply_laced())
        throw std::invalid_argument("nakayama_perm: defined for A/D/E only");
    NakayamaPerm p;
    for (int v : g.vertices) p.map[v] = v;
    int n = g.rank;
    if (g.kind == Kind::A) {
        if (n % 2 == 1) {  // A_{2m-1}: fixes 1, swaps i <-> i+m-1
            int m = (n + 1) / 2;
            for (int i = 2; i <= m; ++i) {
                p.map[i] = i + m - 1;
                p.map[i + m - 1] = i;
            }
        } else {  // A_{2m}: swaps i <-> i+m
            int m = n / 2;
            for (int i = 1; i <= m; ++i) {
                p.map[i] = i + m;
                p.map[i + m] = i;
            }
        }
    } else if (g.kind == Kind::D) {
        if (n % 2 == 1) {  // D_{2m+1}: swaps the two short legs
            p.map[1] = n;
            p.map[n] = 1;
        }
    } else if (g.kind == Kind::E && n == 6) {
        p.map[3] = 5;
        p.map[5] = 3;
        p.map[4] = 6;
        p.map[6] = 4;
    }
    return p;
}

/// Folded graph per the Theorem 3.1 table, with folded vertices labeled by
/// the minimal representative of each Nakayama orbit.
inline DynkinGraph fold(const DynkinGraph& g) {
    if (!g.simply_laced()) throw std::invalid_argument("fold: defined for A/D/E only");
    int n = g.rank;
    switch (g.kind) {
        case Kind::A: return build_dynkin(Kind::B, (n + 1) / 2);
        case Kind::D:
            return n % 2 == 0 ? build_dynkin(Kind::D, n) : build_dynkin(Kind::B, n - 1);
        case Kind::E:
            if (n == 6) return build_dynkin(Kind::F, 4);
            return build_dynkin(Kind::E, n);
        default: break;
    }
    throw std::logic_error("fold: unreachable");
}

/// Orbit representatives {min(i, iota(i))} listed in folded-label order; the
/// identification folded vertex -> orbit used by t_i and e_i^iota.
inline std::vector<int> folded_vertices(const DynkinGraph& g) {
    NakayamaPerm iota = nakayama_perm(g);
    std::vector<int> reps;
    for (int v : g.vertices)
        if (v <= iota(v)) reps.push_back(v);
    std::sort(reps.begin(), reps.end());
    return reps;
}

inline nlohmann::json to_json(const DynkinGraph& g) {
    nlohmann::json je = nlohmann::json::array();
    for (const auto& e : g.edges) je.push_back({{"i", e.i}, {"j", e.j}, {"m", e.m}});
    return {{"kind", kind_name(g.kind)}, {"rank", g.rank}, {"vertices", g.vertices}, {"edges", je}};
}

/// Parse names like "A3", "D4", "E6".
inline DynkinGraph parse_graph(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("bad graph name: " + name);
    Kind k;
    switch (name[0]) {
        case 'A': k = Kind::A; break;
        case 'B': k = Kind::B; break;
        case 'D': k = Kind::D; break;
        case 'E': k = Kind::E; break;
        case 'F': k = Kind::F; break;
        default: throw std::invalid_argument("bad graph name: " + name);
    }
    int rank = std::stoi(name.substr(1));
    return build_dynkin(k, rank);
}

}  // namespace preproj
