#pragma once

#include <string>

#include "lorentz/surface.hpp"

namespace lorentz {

// Named surface presets for the CLI and tests. Grammar:
//
//   sphere:cx,cy,cz,r
//   ellipsoid:cx,cy,cz,ax,ay,az
//   graph:flat[:z0[,extent]]
//   graph:saddle[:slope[,z0[,extent]]]       default slope 3, z0 6, extent 1
//   graph:paraboloid[:slope[,z0[,extent]]]   default slope 1, z0 6, extent 1
//
// The graph presets are z = z0 + slope (u^2 - v^2)/2 (saddle) or
// z0 + slope (u^2 + v^2)/2 (paraboloid) over [-extent, extent]^2; the
// defaults sit well inside the timelike region so their inversions are
// unmasked. Throws Error on an unknown name or malformed parameters.
SurfacePatch parse_surface_preset(const std::string& spec);

}  // namespace lorentz
