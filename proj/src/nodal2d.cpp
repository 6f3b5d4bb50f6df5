#include "nodalab/nodal2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nodalab {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = (int)i;
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline int sign_of(double v) { return v >= 0.0 ? 1 : -1; }  // sign(0) = +

struct PlaquetteRange {
    int row_count;   // number of plaquette rows
    int col_count;   // number of plaquette cols
    bool wrap_rows;  // row r+1 taken mod rows
    bool wrap_cols;
};

PlaquetteRange plaquette_range(const ScalarGrid& g) {
    switch (g.geometry) {
        case Geometry2::FlatTorus:
            return {g.rows, g.cols, true, true};
        case Geometry2::SphereLonLat:
            return {g.rows - 1, g.cols, false, true};
        default:
            return {g.rows - 1, g.cols - 1, false, false};
    }
}

// saddle decision for the plaquette with top-left sample (r,c): +1 joins the
// positive diagonal, -1 the negative, 0 tie.  A center value negligibly
// small against the corner scale counts as a tie (a genuinely degenerate
// crossing, e.g. the unperturbed barrier base).
int saddle_decision(const ScalarGrid& g, int r, int c) {
    double v;
    int r2 = (r + 1) % g.rows, c2 = (c + 1) % g.cols;
    if (g.sampler) {
        auto p00 = g.pos(r, c);
        double px, py;
        if (g.geometry == Geometry2::SphereLonLat) {
            px = p00[0] + 0.5 * std::numbers::pi / (g.rows - 1);
            py = p00[1] + 0.5 * 2.0 * std::numbers::pi / g.cols;
        } else {
            px = p00[0] + 0.5 * g.dx;
            py = p00[1] + 0.5 * g.dy;
        }
        v = g.sampler(px, py);
    } else {
        v = 0.25 * (g.at(r, c) + g.at(r, c2) + g.at(r2, c) + g.at(r2, c2));
    }
    double scale = std::max({std::abs(g.at(r, c)), std::abs(g.at(r, c2)),
                             std::abs(g.at(r2, c)), std::abs(g.at(r2, c2))});
    if (std::abs(v) <= 1e-9 * scale) return 0;
    return v > 0.0 ? 1 : -1;
}

}  // namespace

SignedComponents label_domains(const ScalarGrid& grid) {
    const int rows = grid.rows, cols = grid.cols;
    if (rows < 2 || cols < 2) throw std::invalid_argument("label_domains: grid too small");
    const std::size_t n = (std::size_t)rows * cols;
    UnionFind uf(n);
    auto pix = [cols](int r, int c) { return r * cols + c; };
    auto sgn = [&](int r, int c) { return sign_of(grid.at(r, c)); };

    const bool wrap_c = grid.geometry != Geometry2::PlanarRect;
    const bool wrap_r = grid.geometry == Geometry2::FlatTorus;

    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int c2 = c + 1 < cols ? c + 1 : (wrap_c ? 0 : -1);
            if (c2 >= 0 && sgn(r, c) == sgn(r, c2)) uf.merge(pix(r, c), uf.find(pix(r, c2)));
            int r2 = r + 1 < rows ? r + 1 : (wrap_r ? 0 : -1);
            if (r2 >= 0 && sgn(r, c) == sgn(r2, c)) uf.merge(pix(r, c), uf.find(pix(r2, c)));
        }
    }

    // saddle plaquettes join one diagonal pair
    SignedComponents out;
    out.rows = rows;
    out.cols = cols;
    auto range = plaquette_range(grid);
    for (int r = 0; r < range.row_count; ++r) {
        for (int c = 0; c < range.col_count; ++c) {
            int r2 = (r + 1) % rows, c2 = (c + 1) % cols;
            int s00 = sgn(r, c), s01 = sgn(r, c2), s10 = sgn(r2, c), s11 = sgn(r2, c2);
            if (s00 != s11 || s01 != s10 || s00 == s01) continue;
            int d = saddle_decision(grid, r, c);
            std::int64_t key = (std::int64_t)r * cols + c;
            out.saddle_decisions.emplace(key, d);
            if (d == 0) {
                ++out.degenerate_saddles;
                continue;
            }
            if (d == s00)
                uf.merge(pix(r, c), pix(r2, c2));
            else
                uf.merge(pix(r, c2), pix(r2, c));
        }
    }

    out.label.assign(n, -1);
    std::vector<int> root_to_id(n, -1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int root = uf.find(pix(r, c));
            if (root_to_id[root] < 0) {
                root_to_id[root] = (int)out.components.size();
                ComponentInfo info;
                info.id = root_to_id[root];
                info.sign = sgn(r, c);
                out.components.push_back(info);
            }
            int id = root_to_id[root];
            out.label[pix(r, c)] = id;
            auto& comp = out.components[id];
            comp.cell_count += 1;
            comp.area += grid.pixel_area(r, c);
            if (grid.geometry == Geometry2::PlanarRect &&
                (r == 0 || r == rows - 1 || c == 0 || c == cols - 1))
                comp.touches_boundary = true;
        }
    }
    for (auto& comp : out.components) comp.sub_resolution = comp.cell_count < 4;
    return out;
}

namespace {

// Crossing points live on grid edges; axis 0 = horizontal (between columns),
// axis 1 = vertical (between rows).
struct EdgeKey {
    int r, c, axis;
    bool operator==(const EdgeKey& o) const { return r == o.r && c == o.c && axis == o.axis; }
};
struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const {
        return ((std::size_t)k.r * 2654435761u) ^ ((std::size_t)k.c * 40503u) ^ (std::size_t)k.axis;
    }
};

struct Segment {
    EdgeKey a, b;
};

}  // namespace

NodalCurveSet extract_nodal_curves(const ScalarGrid& grid, const SignedComponents& comps) {
    const int rows = grid.rows, cols = grid.cols;
    if ((int)comps.label.size() != rows * cols || comps.rows != rows || comps.cols != cols)
        throw std::invalid_argument("extract_nodal_curves: components do not match grid");
    auto sgn = [&](int r, int c) { return sign_of(grid.at(r, c)); };
    NodalCurveSet out;

    auto prange = plaquette_range(grid);
    std::vector<Segment> segments;
    for (int r = 0; r < prange.row_count; ++r) {
        for (int c = 0; c < prange.col_count; ++c) {
            int r2 = (r + 1) % rows, c2 = (c + 1) % cols;
            int s00 = sgn(r, c), s01 = sgn(r, c2), s10 = sgn(r2, c), s11 = sgn(r2, c2);
            EdgeKey top{r, c, 0}, bottom{r2, c, 0}, left{r, c, 1}, right{r, c2, 1};
            bool xt = s00 != s01, xb = s10 != s11, xl = s00 != s10, xr = s01 != s11;
            int crossings = (int)xt + xb + xl + xr;
            if (crossings == 0) continue;
            if (crossings == 2) {
                EdgeKey e[2];
                int k = 0;
                if (xt) e[k++] = top;
                if (xb) e[k++] = bottom;
                if (xl) e[k++] = left;
                if (xr) e[k++] = right;
                segments.push_back({e[0], e[1]});
            } else if (crossings == 4) {
                // saddle: reuse the labeling decision
                std::int64_t key = (std::int64_t)r * cols + c;
                auto it = comps.saddle_decisions.find(key);
                int d = it != comps.saddle_decisions.end() ? it->second : 0;
                if (d == 0) {
                    ++out.degenerate_saddles;
                    d = 1;  // deterministic fallback pairing
                }
                bool join_main_diag = (d == s00);  // join (r,c)-(r2,c2)?
                if (join_main_diag) {
                    segments.push_back({top, right});
                    segments.push_back({left, bottom});
                } else {
                    segments.push_back({top, left});
                    segments.push_back({right, bottom});
                }
            } else {
                throw std::runtime_error("extract_nodal_curves: impossible crossing parity");
            }
        }
    }

    // stitch segments into curves: each edge key is hit by exactly two
    // segments on closed geometries, once at a planar window boundary
    std::unordered_map<EdgeKey, std::array<int, 2>, EdgeKeyHash> incident;
    incident.reserve(segments.size() * 2);
    for (int i = 0; i < (int)segments.size(); ++i) {
        for (const EdgeKey& e : {segments[i].a, segments[i].b}) {
            auto [it, fresh] = incident.try_emplace(e, std::array<int, 2>{-1, -1});
            if ((*it).second[0] < 0)
                (*it).second[0] = i;
            else if ((*it).second[1] < 0)
                (*it).second[1] = i;
            else
                throw std::runtime_error("extract_nodal_curves: edge used by >2 segments");
        }
    }

    auto interp_point = [&](const EdgeKey& e) -> std::array<double, 2> {
        int r2 = e.axis == 0 ? e.r : (e.r + 1) % rows;
        int c2 = e.axis == 0 ? (e.c + 1) % cols : e.c;
        double v0 = grid.at(e.r, e.c), v1 = grid.at(r2, c2);
        double t = v0 / (v0 - v1);
        auto p = grid.pos(e.r, e.c);
        if (grid.geometry == Geometry2::SphereLonLat) {
            double dth = std::numbers::pi / (rows - 1), dph = 2.0 * std::numbers::pi / cols;
            if (e.axis == 0) return {p[0], p[1] + t * dph};
            return {p[0] + t * dth, p[1]};
        }
        if (e.axis == 0) return {p[0] + t * grid.dx, p[1]};
        return {p[0], p[1] + t * grid.dy};
    };
    auto pos_side_domain = [&](const EdgeKey& e) {
        int r2 = e.axis == 0 ? e.r : (e.r + 1) % rows;
        int c2 = e.axis == 0 ? (e.c + 1) % cols : e.c;
        bool first_pos = sign_of(grid.at(e.r, e.c)) > 0;
        int rr = first_pos ? e.r : r2, cc = first_pos ? e.c : c2;
        int rn = first_pos ? r2 : e.r, cn = first_pos ? c2 : e.c;
        return std::array<int, 2>{comps.label[rr * cols + cc], comps.label[rn * cols + cn]};
    };
    auto seg_dist = [&](const std::array<double, 2>& a, const std::array<double, 2>& b) {
        if (grid.geometry == Geometry2::SphereLonLat) {
            // great-circle distance between (theta,phi) points
            double s1 = std::sin(a[0]), s2 = std::sin(b[0]);
            double cosd = std::cos(a[0]) * std::cos(b[0]) + s1 * s2 * std::cos(a[1] - b[1]);
            return std::acos(std::clamp(cosd, -1.0, 1.0));
        }
        double ddx = a[0] - b[0], ddy = a[1] - b[1];
        if (grid.geometry == Geometry2::FlatTorus) {
            double Lx = cols * grid.dx, Ly = rows * grid.dy;
            ddx -= Lx * std::round(ddx / Lx);
            ddy -= Ly * std::round(ddy / Ly);
        }
        return std::hypot(ddx, ddy);
    };

    std::vector<bool> used(segments.size(), false);

    // open polylines first (planar boundary exits); discarded per contract
    for (const auto& [edge, inc] : incident) {
        if (inc[1] >= 0) continue;  // interior edge
        int s = inc[0];
        if (used[s]) continue;
        EdgeKey e = edge;
        while (true) {
            used[s] = true;
            EdgeKey exit_e = (segments[s].a == e) ? segments[s].b : segments[s].a;
            auto next_inc = incident[exit_e];
            int nxt = next_inc[0] == s ? next_inc[1] : next_inc[0];
            if (nxt < 0 || used[nxt]) break;
            s = nxt;
            e = exit_e;
        }
        ++out.discarded_open;
    }

    // remaining segments form disjoint closed loops
    for (int s0 = 0; s0 < (int)segments.size(); ++s0) {
        if (used[s0]) continue;
        std::vector<EdgeKey> path;
        int s = s0;
        EdgeKey e = segments[s0].a;
        do {
            used[s] = true;
            EdgeKey exit_e = (segments[s].a == e) ? segments[s].b : segments[s].a;
            path.push_back(exit_e);
            auto inc = incident[exit_e];
            int nxt = inc[0] == s ? inc[1] : inc[0];
            if (nxt < 0) throw std::runtime_error("extract_nodal_curves: broken loop");
            s = nxt;
            e = exit_e;
        } while (s != s0);

        Curve curve;
        curve.closed = true;
        auto ends = pos_side_domain(path.front());
        curve.domain_pos = ends[0];
        curve.domain_neg = ends[1];
        for (const auto& ek : path) {
            auto d = pos_side_domain(ek);
            if (d[0] != curve.domain_pos || d[1] != curve.domain_neg)
                throw std::runtime_error(
                    "extract_nodal_curves: curve adjacent to >2 domains (resolution too low)");
        }
        curve.points.reserve(path.size());
        for (const auto& ek : path) curve.points.push_back(interp_point(ek));
        for (std::size_t i = 0; i < curve.points.size(); ++i)
            curve.length +=
                seg_dist(curve.points[i], curve.points[(i + 1) % curve.points.size()]);
        out.curves.push_back(std::move(curve));
    }
    return out;
}

DomainConnectivity connectivity(const SignedComponents& comps, const NodalCurveSet& curves) {
    DomainConnectivity out;
    out.m.assign(comps.components.size(), 0);
    for (const auto& c : curves.curves) {
        if (c.domain_pos >= 0) ++out.m[c.domain_pos];
        if (c.domain_neg >= 0) ++out.m[c.domain_neg];
    }
    return out;
}

FilteredView filter_boundary(const ScalarGrid& grid, const SignedComponents& comps,
                             const NodalCurveSet& curves, double margin) {
    if (grid.geometry != Geometry2::PlanarRect)
        throw std::invalid_argument("filter_boundary: planar geometry only");
    FilteredView out;
    out.raw_domains = (int)comps.components.size();
    out.raw_curves = (int)curves.curves.size();

    const double xlo = grid.x0 + margin, xhi = grid.x0 + grid.cols * grid.dx - margin;
    const double ylo = grid.y0 + margin, yhi = grid.y0 + grid.rows * grid.dy - margin;

    std::vector<bool> near_edge(comps.components.size(), false);
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c) {
            auto p = grid.pos(r, c);
            if (p[0] < xlo || p[0] > xhi || p[1] < ylo || p[1] > yhi)
                near_edge[comps.label[r * grid.cols + c]] = true;
        }
    for (const auto& comp : comps.components)
        if (!comp.touches_boundary && !near_edge[comp.id]) out.kept_domains.push_back(comp.id);

    for (int i = 0; i < (int)curves.curves.size(); ++i) {
        bool ok = true;
        for (const auto& p : curves.curves[i].points)
            if (p[0] < xlo || p[0] > xhi || p[1] < ylo || p[1] > yhi) {
                ok = false;
                break;
            }
        if (ok) out.kept_curves.push_back(i);
    }
    return out;
}

}  // namespace nodalab
