#pragma once

#include "json.hpp"

#include "thetakit/simplex.hpp"
#include "thetakit/theta.hpp"

namespace thetakit {

/// {"src": n, "tgt": m, "values": [...]}.
nlohmann::json to_json(const SimplexMap& f);
SimplexMap simplex_map_from_json(const nlohmann::json& j);

/// Nested arrays: the point is "*", [m](I_1..I_m) is [I_1, ..., I_m]. Level-1
/// objects are arrays of "*". Since [0]() is [] at every level, decoding
/// takes the level explicitly.
nlohmann::json to_json(const ThetaObject& obj);
ThetaObject theta_object_from_json(int level, const nlohmann::json& j);

/// {"phi": <simplex map>, "psi": [[...], ...]} with psi rows as in
/// ThetaMorphism::inner_rows(); the level-0 identity is "*".
nlohmann::json to_json(const ThetaMorphism& f);
ThetaMorphism theta_morphism_from_json(const ThetaObject& src, const ThetaObject& tgt, const nlohmann::json& j);

}  // namespace thetakit
