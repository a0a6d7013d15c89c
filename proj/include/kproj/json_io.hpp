#pragma once

#include <json.hpp>

#include "kproj/domain.hpp"
#include "kproj/dynamics.hpp"
#include "kproj/hilbert.hpp"
#include "kproj/moebius.hpp"

namespace kproj {

using nlohmann::json;

// Scalars serialize as arrays of 1/2/4 numbers; the field tag lives on the
// enclosing object.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Field f);

json matrix_to_json(const KMatrix& m);
KMatrix matrix_from_json(const json& j);

json point_to_json(const ProjPoint& p);
json dual_to_json(const DualPoint& f);
ProjPoint point_from_json(const json& j);
DualPoint dual_from_json(const json& j);
KVec coords_from_json(const json& j, Field f);

json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const json& j);

json domain_to_json(const Domain& d);
Domain domain_from_json(const json& j);

json distance_to_json(const DistanceResult& r);
json proximal_to_json(const ProximalClass& c);
json limit_set_to_json(const LimitSetSample& s);

json moebius_to_json(const MoebiusMap& m);
MoebiusMap moebius_from_json(const json& j);
json sphereplane_to_json(const SpherePlane& s, Field f);
SpherePlane sphereplane_from_json(const json& j, Field f);

}  // namespace kproj
