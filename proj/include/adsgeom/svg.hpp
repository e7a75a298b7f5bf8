#pragma once

#include <string>

#include "adsgeom/hs_surfaces.hpp"

namespace adsgeom {

// Hyperbolic disks on the left and right, de Sitter regions in the middle,
// photon circles as dashed connectors and singular points labeled by type.
// Fixed viewport; output depends only on the surface.
std::string surface_svg(const HSSurface& s);

// First-return map in the compactified leaf coordinate with cobweb orbits
// and closed leaves marked.
std::string cobweb_svg(const FirstReturnSystem& sys);

}  // namespace adsgeom
