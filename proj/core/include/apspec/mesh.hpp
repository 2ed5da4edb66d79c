#pragma once

#include <array>
#include <iosfwd>
#include <vector>

namespace aps {

struct SurfaceMesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;

    /// Connected components of the triangle graph (shared vertices connect).
    int component_count() const;
};

/// Marching-cubes triangulation of the Fricke-Vogt level surface
/// {I(x,y,z) = level} inside the cube [-halfwidth, halfwidth]^3.
/// Each vertex gets a few Newton refinements along the gradient so that
/// |I(v) - level| <= 1e-3.
SurfaceMesh surface_mesh(double level, double halfwidth, int resolution);

void write_obj(const SurfaceMesh& mesh, std::ostream& os);
/// CSV rows: x, y, z, triangle_id (three rows per triangle).
void write_mesh_csv(const SurfaceMesh& mesh, std::ostream& os);

}  // namespace aps
