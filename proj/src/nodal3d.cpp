#include "nodalab/nodal3d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace nodalab {

namespace {

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

// corner bit layout: bit0 = +x, bit1 = +y, bit2 = +z
// faces as cyclic corner quadruples
constexpr int kFaces[6][4] = {
    {0, 2, 6, 4},  // x = 0
    {1, 3, 7, 5},  // x = 1
    {0, 1, 5, 4},  // y = 0
    {2, 3, 7, 6},  // y = 1
    {0, 1, 3, 2},  // z = 0
    {4, 5, 7, 6},  // z = 1
};

struct CubeCtx {
    const ScalarGrid3& g;
    bool wrap;
    int i, j, k;
    double v[8];

    std::int64_t edge_key(int corner_a, int corner_b) const {
        int diff = corner_a ^ corner_b;
        int axis = diff == 1 ? 0 : diff == 2 ? 1 : 2;
        int base = corner_a & ~diff;
        int ni = i + (base & 1), nj = j + ((base >> 1) & 1), nk = k + ((base >> 2) & 1);
        if (wrap) {
            ni %= g.nx;
            nj %= g.ny;
            nk %= g.nz;
        }
        return (((std::int64_t)nk * g.ny + nj) * g.nx + ni) * 3 + axis;
    }

    // geometric position of the crossing on edge (a,b), in this cube's local
    // (unwrapped) frame
    std::array<double, 3> local_point(int corner_a, int corner_b) const {
        int diff = corner_a ^ corner_b;
        int lo = corner_a & ~diff, hi = corner_a | diff;
        double v0 = v[lo], v1 = v[hi];
        double t = v0 / (v0 - v1);
        double px = g.x0 + (i + (lo & 1) + 0.5) * g.dx;
        double py = g.y0 + (j + ((lo >> 1) & 1) + 0.5) * g.dy;
        double pz = g.z0 + (k + ((lo >> 2) & 1) + 0.5) * g.dz;
        if (diff == 1) px += t * g.dx;
        if (diff == 2) py += t * g.dy;
        if (diff == 4) pz += t * g.dz;
        return {px, py, pz};
    }
};

}  // namespace

TriangleMesh marching_cubes(const ScalarGrid3& grid) {
    const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
    if (nx < 2 || ny < 2 || nz < 2)
        throw std::invalid_argument("marching_cubes: grid too small");
    const bool wrap = grid.geometry == Geometry3::Torus3;

    TriangleMesh mesh;
    if (wrap) mesh.period = {nx * grid.dx, ny * grid.dy, nz * grid.dz};

    std::unordered_map<std::int64_t, int> vertex_ids;
    auto vertex_for = [&](const CubeCtx& ctx, int a, int b) {
        std::int64_t key = ctx.edge_key(a, b);
        auto [it, fresh] = vertex_ids.try_emplace(key, (int)mesh.vertices.size());
        if (fresh) {
            // canonical position from the unwrapped local frame; periodic
            // reduction happens in area computations
            mesh.vertices.push_back(ctx.local_point(a, b));
        }
        return it->second;
    };

    const int ci = wrap ? nx : nx - 1;
    const int cj = wrap ? ny : ny - 1;
    const int ck = wrap ? nz : nz - 1;

    struct Seg {
        std::int64_t a, b;
        int ca0, ca1, cb0, cb1;  // corner pairs defining each crossing edge
    };
    std::vector<Seg> segs;
    std::vector<std::array<double, 3>> loop_pts;
    std::vector<std::int64_t> loop_keys;

    for (int k = 0; k < ck; ++k) {
        for (int j = 0; j < cj; ++j) {
            for (int i = 0; i < ci; ++i) {
                CubeCtx ctx{grid, wrap, i, j, k, {}};
                int mask = 0;
                for (int b = 0; b < 8; ++b) {
                    int ii = (i + (b & 1)) % nx;
                    int jj = (j + ((b >> 1) & 1)) % ny;
                    int kk = (k + ((b >> 2) & 1)) % nz;
                    ctx.v[b] = grid.at(ii, jj, kk);
                    if (sign_of(ctx.v[b]) > 0) mask |= 1 << b;
                }
                if (mask == 0 || mask == 255) continue;

                segs.clear();
                for (const auto& face : kFaces) {
                    int cross[4];
                    int ncross = 0;
                    for (int e = 0; e < 4; ++e) {
                        int a = face[e], b = face[(e + 1) % 4];
                        if (sign_of(ctx.v[a]) != sign_of(ctx.v[b])) cross[ncross++] = e;
                    }
                    if (ncross == 0) continue;
                    auto add_seg = [&](int e1, int e2) {
                        int a1 = face[e1], b1 = face[(e1 + 1) % 4];
                        int a2 = face[e2], b2 = face[(e2 + 1) % 4];
                        segs.push_back({ctx.edge_key(a1, b1), ctx.edge_key(a2, b2), a1, b1, a2, b2});
                    };
                    if (ncross == 2) {
                        add_seg(cross[0], cross[1]);
                    } else {
                        // alternating face: asymptotic decider on the bilinear
                        double v0 = ctx.v[face[0]], v1 = ctx.v[face[1]];
                        double v2 = ctx.v[face[2]], v3 = ctx.v[face[3]];
                        double saddle = (v0 * v2 - v1 * v3) / (v0 + v2 - v1 - v3);
                        bool join_02 = (saddle >= 0.0) == (sign_of(v0) > 0);
                        if (join_02) {
                            add_seg(0, 1);  // around corner 1
                            add_seg(2, 3);  // around corner 3
                        } else {
                            add_seg(3, 0);  // around corner 0
                            add_seg(1, 2);  // around corner 2
                        }
                    }
                }

                // stitch cube segments into loops (2-regular on edge keys)
                std::unordered_map<std::int64_t, std::array<int, 2>> inc;
                for (int s = 0; s < (int)segs.size(); ++s) {
                    for (std::int64_t e : {segs[s].a, segs[s].b}) {
                        auto [it, fresh] = inc.try_emplace(e, std::array<int, 2>{-1, -1});
                        auto& slots = it->second;
                        if (slots[0] < 0)
                            slots[0] = s;
                        else if (slots[1] < 0)
                            slots[1] = s;
                        else
                            throw std::runtime_error("marching_cubes: inconsistent cube face");
                    }
                }
                // corner pairs per crossing edge (local_point needs corners)
                std::unordered_map<std::int64_t, std::array<int, 2>> key_corners;
                for (const auto& sg : segs) {
                    key_corners[sg.a] = {sg.ca0, sg.ca1};
                    key_corners[sg.b] = {sg.cb0, sg.cb1};
                }
                std::vector<bool> used(segs.size(), false);
                for (int s0 = 0; s0 < (int)segs.size(); ++s0) {
                    if (used[s0]) continue;
                    loop_keys.clear();
                    loop_pts.clear();
                    int s = s0;
                    std::int64_t enter = segs[s0].a;
                    do {
                        used[s] = true;
                        std::int64_t exit_e = segs[s].a == enter ? segs[s].b : segs[s].a;
                        loop_keys.push_back(exit_e);
                        auto slots = inc.at(exit_e);
                        int nxt = slots[0] == s ? slots[1] : slots[0];
                        if (nxt < 0)
                            throw std::runtime_error("marching_cubes: open loop inside cube");
                        s = nxt;
                        enter = exit_e;
                    } while (s != s0);
                    if (loop_keys.size() < 3)
                        throw std::runtime_error("marching_cubes: degenerate loop");

                    std::vector<int> ids(loop_keys.size());
                    for (std::size_t t = 0; t < loop_keys.size(); ++t) {
                        auto cp = key_corners.at(loop_keys[t]);
                        ids[t] = vertex_for(ctx, cp[0], cp[1]);
                        loop_pts.push_back(ctx.local_point(cp[0], cp[1]));
                    }
                    if (ids.size() == 3) {
                        mesh.triangles.push_back({ids[0], ids[1], ids[2]});
                    } else {
                        std::array<double, 3> cen{0, 0, 0};
                        for (const auto& p : loop_pts)
                            for (int d = 0; d < 3; ++d) cen[d] += p[d];
                        for (int d = 0; d < 3; ++d) cen[d] /= (double)loop_pts.size();
                        int cid = (int)mesh.vertices.size();
                        mesh.vertices.push_back(cen);
                        for (std::size_t t = 0; t < ids.size(); ++t) {
                            int u = ids[t], v = ids[(t + 1) % ids.size()];
                            mesh.triangles.push_back({cid, u, v});
                        }
                    }
                }
            }
        }
    }

    // manifold check: no edge may carry more than two triangles
    std::unordered_map<std::uint64_t, int> edge_use;
    auto ekey = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return ((std::uint64_t)a << 32) | (std::uint32_t)b;
    };
    for (const auto& t : mesh.triangles)
        for (int e = 0; e < 3; ++e) {
            int cnt = ++edge_use[ekey(t[e], t[(e + 1) % 3])];
            if (cnt > 2)
                throw std::runtime_error("marching_cubes: non-manifold edge (under-resolved grid)");
        }
    return mesh;
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = (int)i;
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void merge(int a, int b) { parent[find(a)] = find(b); }
};

double triangle_area(const TriangleMesh& m, const std::array<int, 3>& tri) {
    auto wrapd = [&](double d, int axis) {
        double L = m.period[axis];
        if (L > 0) d -= L * std::round(d / L);
        return d;
    };
    const auto& p0 = m.vertices[tri[0]];
    const auto& p1 = m.vertices[tri[1]];
    const auto& p2 = m.vertices[tri[2]];
    double a[3], b[3];
    for (int d = 0; d < 3; ++d) {
        a[d] = wrapd(p1[d] - p0[d], d);
        b[d] = wrapd(p2[d] - p0[d], d);
    }
    double cx = a[1] * b[2] - a[2] * b[1];
    double cy = a[2] * b[0] - a[0] * b[2];
    double cz = a[0] * b[1] - a[1] * b[0];
    return 0.5 * std::sqrt(cx * cx + cy * cy + cz * cz);
}

}  // namespace

std::vector<SurfaceComponent> split_components(const TriangleMesh& mesh) {
    const int F = (int)mesh.triangles.size();
    if (F == 0) return {};
    auto ekey = [](int a, int b) {
        if (a > b) std::swap(a, b);
        return ((std::uint64_t)a << 32) | (std::uint32_t)b;
    };
    std::unordered_map<std::uint64_t, std::array<int, 2>> edge_tris;
    edge_tris.reserve(F * 2);
    for (int t = 0; t < F; ++t)
        for (int e = 0; e < 3; ++e) {
            auto [it, fresh] =
                edge_tris.try_emplace(ekey(mesh.triangles[t][e], mesh.triangles[t][(e + 1) % 3]),
                                      std::array<int, 2>{-1, -1});
            auto& slots = it->second;
            if (slots[0] < 0)
                slots[0] = t;
            else
                slots[1] = t;
        }

    DisjointSet ds(F);
    for (const auto& [key, tris] : edge_tris)
        if (tris[1] >= 0) ds.merge(tris[0], tris[1]);

    std::unordered_map<int, int> comp_of_root;
    std::vector<SurfaceComponent> comps;
    std::vector<int> comp_of_tri(F);
    for (int t = 0; t < F; ++t) {
        int root = ds.find(t);
        auto [it, fresh] = comp_of_root.try_emplace(root, (int)comps.size());
        if (fresh) comps.push_back({});
        comp_of_tri[t] = it->second;
        comps[it->second].num_faces += 1;
        comps[it->second].area += triangle_area(mesh, mesh.triangles[t]);
    }

    // per-component vertex and edge counts
    std::vector<std::unordered_map<int, char>> vset(comps.size());
    for (int t = 0; t < F; ++t)
        for (int v : mesh.triangles[t]) vset[comp_of_tri[t]].emplace(v, 0);
    for (std::size_t c = 0; c < comps.size(); ++c)
        comps[c].num_vertices = (long)vset[c].size();
    std::vector<long> edge_count(comps.size(), 0);
    std::vector<bool> open_edges(comps.size(), false);
    for (const auto& [key, tris] : edge_tris) {
        int c = comp_of_tri[tris[0]];
        edge_count[c] += 1;
        if (tris[1] < 0) open_edges[c] = true;
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        comps[c].num_edges = edge_count[c];
        comps[c].watertight = !open_edges[c];
        comps[c].euler = comps[c].num_vertices - comps[c].num_edges + comps[c].num_faces;
    }

    // orientation propagation
    std::vector<char> flip(F, -1);
    auto directed = [&](int t, int a, int b) {
        // does triangle t traverse a->b in its stored order?
        const auto& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e)
            if (tri[e] == a && tri[(e + 1) % 3] == b) return true;
        return false;
    };
    std::vector<bool> comp_orientable(comps.size(), true);
    std::vector<int> stack;
    for (int t0 = 0; t0 < F; ++t0) {
        if (flip[t0] >= 0) continue;
        flip[t0] = 0;
        stack.push_back(t0);
        while (!stack.empty()) {
            int t = stack.back();
            stack.pop_back();
            const auto& tri = mesh.triangles[t];
            for (int e = 0; e < 3; ++e) {
                int a = tri[e], b = tri[(e + 1) % 3];
                auto slots = edge_tris.at(ekey(a, b));
                int other = slots[0] == t ? slots[1] : slots[0];
                if (other < 0) continue;
                // consistent orientation: the other triangle traverses b->a
                // (modulo both flips)
                bool t_ab = !flip[t];  // t traverses a->b when unflipped
                bool o_ab = directed(other, a, b);
                char needed = (char)((t_ab == o_ab) ? 1 : 0);
                if (flip[other] < 0) {
                    flip[other] = needed;
                    stack.push_back(other);
                } else if (flip[other] != needed) {
                    comp_orientable[comp_of_tri[t]] = false;
                }
            }
        }
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
        comps[c].orientable = comp_orientable[c];
        if (comps[c].watertight && comps[c].orientable && comps[c].euler % 2 == 0 &&
            comps[c].euler <= 2)
            comps[c].genus = (int)((2 - comps[c].euler) / 2);
    }
    return comps;
}

GenusDistributionResult genus_distribution(double alpha, double T, int num_samples,
                                           std::uint64_t seed, double spw) {
    if (num_samples < 1) throw std::invalid_argument("genus_distribution: need samples >= 1");
    GenusDistributionResult out;
    std::vector<SampleAtoms> samples;
    std::vector<double> genus_values;
    std::vector<double> per_sample_mean;
    for (int s = 0; s < num_samples; ++s) {
        BandParams params{alpha, T, alpha == 1.0 ? 0.05 * T : 0.0};
        auto field = sample_torus3(params, derive_seed(seed, s));
        auto grid = grid_torus3(field, spw);
        auto mesh = marching_cubes(grid);
        auto comps = split_components(mesh);
        SampleAtoms atoms;
        double local_sum = 0;
        long local_n = 0;
        for (const auto& c : comps) {
            ++out.total_components;
            if (c.genus < 0) {
                ++out.flagged_components;
                ++atoms.unresolved;
                continue;
            }
            atoms.counts[std::to_string(c.genus)] += 1;
            genus_values.push_back(c.genus);
            out.euler_sum += 2.0 * (1.0 - c.genus);
            local_sum += c.genus;
            ++local_n;
        }
        if (local_n > 0) per_sample_mean.push_back(local_sum / local_n);
        samples.push_back(std::move(atoms));
    }
    out.measure = accumulate(samples);
    out.num_samples = num_samples;
    if (!genus_values.empty()) {
        double sum = 0;
        for (double v : genus_values) sum += v;
        out.mean_genus = sum / genus_values.size();
        double var = 0;
        for (double m : per_sample_mean) var += (m - out.mean_genus) * (m - out.mean_genus);
        if (per_sample_mean.size() > 1)
            out.stderr_ = std::sqrt(var / ((double)per_sample_mean.size() *
                                           (per_sample_mean.size() - 1)));
    }
    return out;
}

}  // namespace nodalab
