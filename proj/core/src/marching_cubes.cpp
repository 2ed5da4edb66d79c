#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "apspec/mesh.hpp"

namespace aps {

namespace {

double fv(double x, double y, double z) {
    return x * x + y * y + z * z - 2.0 * x * y * z - 1.0;
}

std::array<double, 3> fv_grad(const std::array<double, 3>& p) {
    auto [x, y, z] = p;
    return {2 * x - 2 * y * z, 2 * y - 2 * x * z, 2 * z - 2 * x * y};
}

// cube corner offsets, bit order (x, y, z)
constexpr int kCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                               {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};

// 5-tetrahedron cube decomposition; parity alternates in a checkerboard so
// that face diagonals of adjacent cubes coincide and vertices are shared.
constexpr int kTetsEven[5][4] = {
    {0, 2, 5, 7}, {0, 1, 2, 5}, {0, 2, 3, 7}, {4, 0, 5, 7}, {6, 2, 7, 5}};
constexpr int kTetsOdd[5][4] = {
    {1, 3, 4, 6}, {0, 1, 3, 4}, {2, 1, 6, 3}, {5, 1, 4, 6}, {7, 3, 6, 4}};

// triangles per sign case, as tet-edge index pairs; edge e = (a, b)
constexpr int kTetEdge[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
// case -> list of triangles over edge ids (terminated by -1)
constexpr int kTetTri[8][7] = {
    {-1, -1, -1, -1, -1, -1, -1},     // 0000
    {0, 1, 2, -1, -1, -1, -1},        // v0 in: e01 e02 e03
    {0, 4, 3, -1, -1, -1, -1},        // v1 in: e01 e13 e12
    {1, 2, 4, 1, 4, 3, -1},           // v0 v1
    {1, 3, 5, -1, -1, -1, -1},        // v2 in: e02 e12 e23
    {0, 3, 5, 0, 5, 2, -1},           // v0 v2
    {0, 1, 5, 0, 5, 4, -1},           // v1 v2
    {2, 4, 5, -1, -1, -1, -1},        // v0 v1 v2 in, v3 out
};

}  // namespace

int SurfaceMesh::component_count() const {
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (const auto& t : triangles) {
        int a = find(t[0]);
        parent[find(t[1])] = a;
        parent[find(t[2])] = a;
    }
    int count = 0;
    std::vector<bool> used(vertices.size(), false);
    for (const auto& t : triangles)
        for (int v : t) used[static_cast<std::size_t>(v)] = true;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (used[i] && find(static_cast<int>(i)) == static_cast<int>(i)) ++count;
    return count;
}

SurfaceMesh surface_mesh(double level, double halfwidth, int resolution) {
    if (resolution < 8) throw std::invalid_argument("mesh resolution must be >= 8");
    if (!(halfwidth > 0)) throw std::invalid_argument("halfwidth must be positive");

    const int n = resolution;
    const double h = 2.0 * halfwidth / n;
    auto coord = [&](int i) { return -halfwidth + i * h; };

    // sampled field on the (n+1)^3 grid
    std::vector<double> field(static_cast<std::size_t>(n + 1) * (n + 1) * (n + 1));
    auto gid = [&](int ix, int iy, int iz) {
        return static_cast<std::size_t>(ix) +
               static_cast<std::size_t>(n + 1) *
                   (static_cast<std::size_t>(iy) + static_cast<std::size_t>(n + 1) * iz);
    };
    for (int iz = 0; iz <= n; ++iz)
        for (int iy = 0; iy <= n; ++iy)
            for (int ix = 0; ix <= n; ++ix)
                field[gid(ix, iy, iz)] = fv(coord(ix), coord(iy), coord(iz));

    SurfaceMesh mesh;
    std::map<std::pair<std::size_t, std::size_t>, int> edge_vertex;

    auto edge_point = [&](std::size_t ga, std::size_t gb, const std::array<double, 3>& pa,
                          const std::array<double, 3>& pb, double fa, double fb) {
        auto key = ga < gb ? std::make_pair(ga, gb) : std::make_pair(gb, ga);
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;
        double t = (level - fa) / (fb - fa);
        std::array<double, 3> p{pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]),
                                pa[2] + t * (pb[2] - pa[2])};
        // Newton refinement along the gradient
        for (int it2 = 0; it2 < 4; ++it2) {
            double r = fv(p[0], p[1], p[2]) - level;
            if (std::fabs(r) <= 1e-4) break;
            auto g = fv_grad(p);
            double g2 = g[0] * g[0] + g[1] * g[1] + g[2] * g[2];
            if (g2 < 1e-30) break;  // conic singularity
            for (int d = 0; d < 3; ++d) p[d] -= r * g[d] / g2;
        }
        int idx = static_cast<int>(mesh.vertices.size());
        mesh.vertices.push_back(p);
        edge_vertex[key] = idx;
        return idx;
    };

    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                std::size_t cg[8];
                std::array<double, 3> cp[8];
                double cf[8];
                for (int c = 0; c < 8; ++c) {
                    int jx = ix + kCorner[c][0], jy = iy + kCorner[c][1], jz = iz + kCorner[c][2];
                    cg[c] = gid(jx, jy, jz);
                    cp[c] = {coord(jx), coord(jy), coord(jz)};
                    cf[c] = field[cg[c]];
                }
                bool odd = (ix + iy + iz) & 1;
                const auto& tets = odd ? kTetsOdd : kTetsEven;
                for (int t = 0; t < 5; ++t) {
                    int tv[4] = {tets[t][0], tets[t][1], tets[t][2], tets[t][3]};
                    int mask = 0;
                    for (int v = 0; v < 4; ++v)
                        if (cf[tv[v]] < level) mask |= 1 << v;
                    if (mask == 0 || mask == 15) continue;
                    if (mask > 7) mask = 15 - mask;
                    const int* tri = kTetTri[mask];
                    int verts[6];
                    for (int e = 0; e < 6; ++e) verts[e] = -1;
                    for (int k = 0; tri[k] >= 0; k += 3) {
                        std::array<int, 3> ids{};
                        for (int j = 0; j < 3; ++j) {
                            int e = tri[k + j];
                            if (verts[e] < 0) {
                                int a = tv[kTetEdge[e][0]], b = tv[kTetEdge[e][1]];
                                verts[e] = edge_point(cg[a], cg[b], cp[a], cp[b], cf[a], cf[b]);
                            }
                            ids[static_cast<std::size_t>(j)] = verts[e];
                        }
                        if (ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2])
                            mesh.triangles.push_back(ids);
                    }
                }
            }
    return mesh;
}

void write_obj(const SurfaceMesh& mesh, std::ostream& os) {
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
        os << buf;
    }
    for (const auto& t : mesh.triangles) {
        std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
        os << buf;
    }
}

void write_mesh_csv(const SurfaceMesh& mesh, std::ostream& os) {
    os << "x,y,z,triangle_id\n";
    char buf[160];
    for (std::size_t i = 0; i < mesh.triangles.size(); ++i)
        for (int v : mesh.triangles[i]) {
            const auto& p = mesh.vertices[static_cast<std::size_t>(v)];
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu\n", p[0], p[1], p[2], i);
            os << buf;
        }
}

}  // namespace aps
