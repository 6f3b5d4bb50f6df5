#include "nodalab/nesting.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace nodalab {

NestingGraph build_nesting_graph(const SignedComponents& comps, const NodalCurveSet& curves) {
    NestingGraph g;
    g.num_vertices = (int)comps.components.size();
    g.signs.reserve(g.num_vertices);
    g.areas.reserve(g.num_vertices);
    g.sub_resolution.reserve(g.num_vertices);
    for (const auto& c : comps.components) {
        g.signs.push_back(c.sign);
        g.areas.push_back(c.area);
        g.sub_resolution.push_back(c.sub_resolution);
    }
    for (const auto& c : curves.curves) g.edges.push_back({c.domain_pos, c.domain_neg});
    return g;
}

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const NestingGraph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.num_vertices);
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        adj[g.edges[e][0]].push_back({g.edges[e][1], e});
        adj[g.edges[e][1]].push_back({g.edges[e][0], e});
    }
    return adj;
}

// BFS avoiding one edge; returns visited vertex list and the edge count seen
// inside the component (each undirected edge counted once).
std::vector<int> component_of(const std::vector<std::vector<std::pair<int, int>>>& adj,
                              int start, int skip_edge, long* edges_inside) {
    std::vector<int> order{start};
    std::vector<char> seen(adj.size(), 0);
    seen[start] = 1;
    long ecount = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (auto [w, e] : adj[v]) {
            if (e == skip_edge) continue;
            ecount += 1;  // each edge seen from both sides
            if (!seen[w]) {
                seen[w] = 1;
                order.push_back(w);
            }
        }
    }
    if (edges_inside) *edges_inside = ecount / 2;
    return order;
}

}  // namespace

bool is_tree(const NestingGraph& g) {
    if (g.num_vertices == 0) return false;
    if ((long)g.edges.size() != g.num_vertices - 1) return false;
    auto adj = adjacency(g);
    long edges_inside = 0;
    auto comp = component_of(adj, 0, -1, &edges_inside);
    return (int)comp.size() == g.num_vertices;
}

RootedTree canonical_encode(const NestingGraph& g, int root) {
    if (root < 0 || root >= g.num_vertices)
        throw std::invalid_argument("canonical_encode: root out of range");
    auto adj = adjacency(g);
    // iterative-free: recursion depth bounded by vertex count
    std::vector<char> visiting(g.num_vertices, 0);
    int count = 0;
    std::function<std::string(int, int)> encode = [&](int v, int parent) -> std::string {
        if (visiting[v]) throw std::runtime_error("canonical_encode: cycle detected");
        visiting[v] = 1;
        ++count;
        std::vector<std::string> child_codes;
        for (auto [w, e] : adj[v]) {
            (void)e;
            if (w == parent) {
                parent = -2;  // consume one parent link; a second means a multi-edge cycle
                continue;
            }
            child_codes.push_back(encode(w, v));
        }
        std::sort(child_codes.begin(), child_codes.end());
        std::string out = "(";
        for (const auto& c : child_codes) out += c;
        out += ")";
        return out;
    };
    RootedTree t;
    t.code = encode(root, -1);
    t.size = count;
    return t;
}

RootedTree rooted_tree_from_code(const std::string& code) {
    int depth = 0;
    for (char ch : code) {
        if (ch == '(')
            ++depth;
        else if (ch == ')')
            --depth;
        else
            throw std::invalid_argument("rooted_tree_from_code: bad character");
        if (depth < 0) throw std::invalid_argument("rooted_tree_from_code: unbalanced");
    }
    if (depth != 0 || code.empty())
        throw std::invalid_argument("rooted_tree_from_code: unbalanced");
    RootedTree t;
    t.code = code;
    t.size = (int)code.size() / 2;
    return t;
}

EndResult tree_end(const NestingGraph& g, int edge_index) {
    if (edge_index < 0 || edge_index >= (int)g.edges.size())
        throw std::invalid_argument("tree_end: unknown edge");
    const int u = g.edges[edge_index][0], v = g.edges[edge_index][1];
    auto adj = adjacency(g);
    long eu = 0, ev = 0;
    auto cu = component_of(adj, u, edge_index, &eu);
    if (std::find(cu.begin(), cu.end(), v) != cu.end()) return {EndKind::NonSeparating, {}};
    auto cv = component_of(adj, v, edge_index, &ev);
    if (cu.size() == cv.size()) return {EndKind::Tie, {}};

    int root = cu.size() < cv.size() ? u : v;
    const auto& side = cu.size() < cv.size() ? cu : cv;
    long side_edges = cu.size() < cv.size() ? eu : ev;
    if (side_edges != (long)side.size() - 1) return {EndKind::Cyclic, {}};

    // encode the smaller component rooted at the removed edge's endpoint
    NestingGraph sub;
    sub.num_vertices = (int)side.size();
    std::vector<int> remap(g.num_vertices, -1);
    for (int i = 0; i < (int)side.size(); ++i) remap[side[i]] = i;
    sub.signs.resize(side.size());
    for (int i = 0; i < (int)side.size(); ++i) sub.signs[i] = g.signs[side[i]];
    for (int e = 0; e < (int)g.edges.size(); ++e) {
        if (e == edge_index) continue;
        int a = remap[g.edges[e][0]], b = remap[g.edges[e][1]];
        if (a >= 0 && b >= 0) sub.edges.push_back({a, b});
    }
    EndResult res;
    res.kind = EndKind::Tree;
    res.tree = canonical_encode(sub, remap[root]);
    return res;
}

std::pair<long, long> degree_identity_check(const NestingGraph& g) {
    long degrees = 2 * (long)g.edges.size();
    return {degrees, 2L * g.num_vertices - 2};
}

std::vector<std::string> enumerate_rooted_trees(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_rooted_trees: n must be >= 1");
    // bysize[k] = canonical codes of rooted trees with k vertices
    std::vector<std::vector<std::string>> bysize(n + 1);
    bysize[1] = {"()"};
    for (int total = 2; total <= n; ++total) {
        // children form a multiset drawn from a lex-sorted pool; walking the
        // pool with a non-decreasing index visits each multiset once and the
        // concatenation comes out in canonical (sorted) order
        std::vector<std::pair<std::string, int>> pool;
        for (int s = 1; s < total; ++s)
            for (const auto& c : bysize[s]) pool.push_back({c, s});
        std::sort(pool.begin(), pool.end());
        std::vector<std::string> acc;
        std::string prefix;
        std::function<void(int, int)> rec = [&](int remaining, int min_idx) {
            if (remaining == 0) {
                acc.push_back("(" + prefix + ")");
                return;
            }
            for (int i = min_idx; i < (int)pool.size(); ++i) {
                if (pool[i].second > remaining) continue;
                std::size_t len = prefix.size();
                prefix += pool[i].first;
                rec(remaining - pool[i].second, i);
                prefix.resize(len);
            }
        };
        rec(total - 1, 0);
        std::sort(acc.begin(), acc.end());
        bysize[total] = std::move(acc);
    }
    return bysize[n];
}

}  // namespace nodalab
