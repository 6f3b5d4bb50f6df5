#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nodalab/nesting.hpp"
#include "nodalab/rng.hpp"

using namespace nodalab;

namespace {

NestingGraph make_graph(int n, std::vector<std::array<int, 2>> edges) {
    NestingGraph g;
    g.num_vertices = n;
    g.signs.assign(n, 1);
    g.areas.assign(n, 1.0);
    g.sub_resolution.assign(n, false);
    g.edges = std::move(edges);
    return g;
}

NestingGraph path_graph(int n) {
    std::vector<std::array<int, 2>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return make_graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("nesting graph from a zonal band field on the sphere") {
    // cos(3 theta): three latitude circles, four band domains, a path graph
    auto fn = [](double theta, double) { return std::cos(3.0 * theta); };
    ScalarGrid g;
    g.geometry = Geometry2::SphereLonLat;
    g.rows = 181;
    g.cols = 360;
    g.values.resize((std::size_t)g.rows * g.cols);
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c) {
            auto p = g.pos(r, c);
            g.at(r, c) = fn(p[0], p[1]);
        }
    auto comps = label_domains(g);
    auto curves = extract_nodal_curves(g, comps);
    auto graph = build_nesting_graph(comps, curves);
    CHECK(graph.num_vertices == 4);
    CHECK(graph.edges.size() == 3);
    CHECK(is_tree(graph));
    auto [lhs, rhs] = degree_identity_check(graph);
    CHECK(lhs == rhs);

    // a single circle: f = cos(theta)
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c) g.at(r, c) = std::cos(g.pos(r, c)[0]);
    auto comps2 = label_domains(g);
    auto curves2 = extract_nodal_curves(g, comps2);
    auto graph2 = build_nesting_graph(comps2, curves2);
    CHECK(graph2.num_vertices == 2);
    CHECK(graph2.edges.size() == 1);
    CHECK(is_tree(graph2));
}

TEST_CASE("torus field with essential cycles is not a tree") {
    // cos(2 pi x) on the unit torus: two domains, two curves, one cycle
    auto fn = [](double x, double) { return std::cos(2.0 * std::numbers::pi * x); };
    auto g = grid_function(fn, Geometry2::FlatTorus, 0, 0, 1, 1, 1.0 / 64, 1.0);
    auto comps = label_domains(g);
    auto curves = extract_nodal_curves(g, comps);
    auto graph = build_nesting_graph(comps, curves);
    CHECK(graph.num_vertices == 2);
    CHECK(graph.edges.size() == 2);
    CHECK(!is_tree(graph));
    // both edges are part of the cycle: removal leaves one component
    CHECK(tree_end(graph, 0).kind == EndKind::NonSeparating);
}

TEST_CASE("is_tree on trivial graphs") {
    auto single = make_graph(1, {});
    CHECK(is_tree(single));
    auto two = make_graph(2, {});
    CHECK(!is_tree(two));  // disconnected
    auto star = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(is_tree(star));
}

TEST_CASE("degree identity on synthetic trees") {
    auto two = make_graph(2, {{0, 1}});
    CHECK(degree_identity_check(two) == std::pair<long, long>{2, 2});
    // a 17-vertex tree has 16 edges: sum of degrees 32 = 2*17 - 2
    RootedTree seventeen;
    {
        std::vector<std::array<int, 2>> edges;
        for (int i = 1; i < 17; ++i) edges.push_back({(i - 1) / 2, i});
        auto t = make_graph(17, std::move(edges));
        CHECK(is_tree(t));
        CHECK(degree_identity_check(t) == std::pair<long, long>{32, 32});
    }
    auto star = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(degree_identity_check(star) == std::pair<long, long>{10, 10});
}

TEST_CASE("tree_end basic behaviour") {
    auto path3 = path_graph(3);
    auto end = tree_end(path3, 0);  // edge 0-1; sides {0} and {1,2}
    REQUIRE(end.kind == EndKind::Tree);
    CHECK(end.tree.code == "()");
    CHECK(end.tree.size == 1);

    auto path4 = path_graph(4);
    CHECK(tree_end(path4, 1).kind == EndKind::Tie);  // middle edge: 2 vs 2

    auto star = make_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    for (int e = 0; e < 5; ++e) {
        auto leaf = tree_end(star, e);
        REQUIRE(leaf.kind == EndKind::Tree);
        CHECK(leaf.tree.code == "()");
    }
    CHECK_THROWS_AS(tree_end(star, 7), std::invalid_argument);
}

TEST_CASE("tree_end roots the smaller side at the removed edge's endpoint") {
    // vertices: 0 - 1 - 2, and 2 - 3, 2 - 4 (a Y on a path)
    auto g = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {2, 4}});
    auto end = tree_end(g, 1);  // sides {0,1} and {2,3,4}
    REQUIRE(end.kind == EndKind::Tree);
    CHECK(end.tree.size == 2);
    CHECK(end.tree.code == "(())");  // rooted at vertex 1: child 0
}

TEST_CASE("canonical_encode canonical forms") {
    auto single = make_graph(1, {});
    CHECK(canonical_encode(single, 0).code == "()");
    auto path2 = path_graph(2);
    CHECK(canonical_encode(path2, 0).code == "(())");
    auto cherry = make_graph(3, {{0, 1}, {0, 2}});
    CHECK(canonical_encode(cherry, 0).code == "(()())");
    // child order never matters
    auto cherry_rev = make_graph(3, {{0, 2}, {0, 1}});
    CHECK(canonical_encode(cherry_rev, 0).code == canonical_encode(cherry, 0).code);

    auto cycle = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    CHECK_THROWS_AS(canonical_encode(cycle, 0), std::runtime_error);
}

TEST_CASE("canonical_encode is invariant under relabeling") {
    Rng rng(2718);
    for (int trial = 0; trial < 30; ++trial) {
        // random tree on 12 vertices via random parents
        const int n = 12;
        std::vector<std::array<int, 2>> edges;
        for (int i = 1; i < n; ++i) edges.push_back({(int)rng.below(i), i});
        auto g = make_graph(n, std::move(edges));
        // random relabeling
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
        std::vector<std::array<int, 2>> redges;
        for (auto e : g.edges) redges.push_back({perm[e[0]], perm[e[1]]});
        auto h = make_graph(n, std::move(redges));
        CHECK(canonical_encode(g, 0).code == canonical_encode(h, perm[0]).code);
    }
}

TEST_CASE("every end has at most half the vertices") {
    Rng rng(777);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + (int)rng.below(14);
        std::vector<std::array<int, 2>> edges;
        for (int i = 1; i < n; ++i) edges.push_back({(int)rng.below(i), i});
        auto g = make_graph(n, std::move(edges));
        for (int e = 0; e < (int)g.edges.size(); ++e) {
            auto end = tree_end(g, e);
            if (end.kind == EndKind::Tree) CHECK(end.tree.size <= n / 2);
        }
    }
}

TEST_CASE("rooted tree code validation") {
    CHECK(rooted_tree_from_code("(()())").size == 3);
    CHECK_THROWS_AS(rooted_tree_from_code("(()"), std::invalid_argument);
    CHECK_THROWS_AS(rooted_tree_from_code(")("), std::invalid_argument);
    CHECK_THROWS_AS(rooted_tree_from_code("(a)"), std::invalid_argument);
    CHECK_THROWS_AS(rooted_tree_from_code(""), std::invalid_argument);
}

TEST_CASE("rooted tree enumeration counts match the recurrence") {
    // r(n) by the Euler-transform recurrence, computed independently
    // r(1) = 1; n r(n+1)... use the standard convolution with sigma-sums
    const int N = 8;
    std::vector<long> r(N + 1, 0);
    r[1] = 1;
    for (int n = 1; n < N; ++n) {
        long acc = 0;
        for (int k = 1; k <= n; ++k) {
            long s = 0;
            for (int d = 1; d <= k; ++d)
                if (k % d == 0) s += d * r[d];
            acc += s * r[n - k + 1];
        }
        r[n + 1] = acc / n;
    }
    CHECK(r[2] == 1);
    CHECK(r[3] == 2);
    CHECK(r[4] == 4);
    CHECK(r[5] == 9);
    CHECK(r[6] == 20);
    CHECK(r[7] == 48);
    for (int n = 1; n <= N; ++n) {
        auto codes = enumerate_rooted_trees(n);
        CHECK((long)codes.size() == r[n]);
        // all distinct, all valid, all size n
        for (const auto& code : codes) CHECK(rooted_tree_from_code(code).size == n);
        auto sorted = codes;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        CHECK(sorted.size() == codes.size());
    }
}
