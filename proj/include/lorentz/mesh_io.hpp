#pragma once

#include <iosfwd>
#include <string>

#include "lorentz/surface.hpp"

namespace lorentz {

struct MeshStats {
    int n_vertices = 0;
    int n_triangles = 0;
};

// Triangulated nu x nv node grid of the patch in Wavefront OBJ text format.
// Nodes sit on the closed domain rectangle; quads touching a masked node
// are dropped, so the mesh is watertight except along the mask boundary.
// Coordinates are printed with 12 significant digits.
MeshStats export_mesh(const SurfacePatch& patch, int nu, int nv, std::ostream& out);
MeshStats export_mesh(const SurfacePatch& patch, int nu, int nv, const std::string& path);

}  // namespace lorentz
