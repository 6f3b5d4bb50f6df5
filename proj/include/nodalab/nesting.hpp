#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nodalab/nodal2d.hpp"

namespace nodalab {

// Vertices are nodal domains, edges are nodal curves (shared boundaries).
struct NestingGraph {
    int num_vertices = 0;
    std::vector<int> signs;                   // per vertex
    std::vector<std::array<int, 2>> edges;    // curve -> its two domains
    std::vector<double> areas;                // per vertex
    std::vector<bool> sub_resolution;         // per vertex
};

// Canonical rooted-tree encoding: balanced parentheses with children codes
// sorted, so two rooted trees are isomorphic iff their codes are equal.
struct RootedTree {
    std::string code;
    int size = 0;  // vertex count = code.length() / 2
};

enum class EndKind { Tree, NonSeparating, Tie, Cyclic };

struct EndResult {
    EndKind kind = EndKind::Tree;
    RootedTree tree;  // valid when kind == Tree
};

NestingGraph build_nesting_graph(const SignedComponents& comps, const NodalCurveSet& curves);

bool is_tree(const NestingGraph& g);

// Remove edge e; the end is the smaller of the two remaining components,
// rooted at the removed edge's endpoint inside it.  "Size" means vertex
// count.  Equal sizes give Tie, a surviving u-v path gives NonSeparating,
// a cycle inside the smaller component gives Cyclic.
EndResult tree_end(const NestingGraph& g, int edge_index);

// AHU-style canonical code of the tree component containing root.
// Throws on a cycle.
RootedTree canonical_encode(const NestingGraph& g, int root);
RootedTree rooted_tree_from_code(const std::string& code);

// (sum of degrees, 2|V| - 2); equal on every nonsingular sphere sample.
std::pair<long, long> degree_identity_check(const NestingGraph& g);

// All canonical codes of rooted trees with exactly n vertices.
std::vector<std::string> enumerate_rooted_trees(int n);

}  // namespace nodalab
