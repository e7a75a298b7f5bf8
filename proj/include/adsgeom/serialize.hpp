#pragma once

#include <json.hpp>

#include "adsgeom/hs_surfaces.hpp"
#include "adsgeom/isometries.hpp"
#include "adsgeom/links.hpp"
#include "adsgeom/polyhedra.hpp"
#include "adsgeom/spacetimes.hpp"

namespace adsgeom {

using Json = nlohmann::json;

// All *_from_json functions throw InputError on schema violations.

Json to_json(const ProjMatrix& g);
// Accepts [a, b, c, d] or "a,b,c,d".
ProjMatrix matrix_from_json(const Json& j);

Json to_json(const LiftedIsometry& h);
LiftedIsometry lifted_from_json(const Json& j);

Json to_json(const IsomClass& c);
Json to_json(const FormVector& v);

Json to_json(const SingularityType& t);
SingularityType singularity_type_from_json(const Json& j);

Json to_json(const LinkCircle& l);
// Explicit circle, or {"model": type, "params": {...}}.
LinkCircle link_from_json(const Json& j);

Json to_json(const RP1Invariants& inv);
Json to_json(const Census& c);
Json to_json(const CausalVerdict& v);

// Surface recipes: regular, btz_pair, doubled_triangle, collision_triangle,
// btz_collision_triangle, link_suspension, regions.
HSSurface surface_from_json(const Json& j);
// Explicit "regions" recipe; surface_from_json(surface_to_json(s)) rebuilds s.
Json surface_to_json(const HSSurface& s);

FirstReturnSystem first_return_from_json(const Json& j);
Json to_json(const FirstReturnSystem& sys);
Json to_json(const CCCResult& r);

// Polyhedron recipes: explicit, hull, random_bihyperbolic.
HS3Polyhedron polyhedron_from_json(const Json& j);
Json to_json(const InducedReport& r);

// Spacetime recipes: suspension, warped_product, model_wedge, btz_quotient,
// surgery, btz_surgery.
Spacetime spacetime_from_json(const Json& j);
WarpedProductRecipe warped_from_json(const Json& j);
Json recipe_to_json(const SpacetimeRecipe& r);
// Node/edge export: nodes are interactions and open ends, edges are lines.
Json graph_to_json(const SingularGraph& g);

}  // namespace adsgeom
