#include "thetakit/json_io.hpp"

#include "thetakit/error.hpp"

namespace thetakit {

using nlohmann::json;

json to_json(const SimplexMap& f) { return {{"src", f.src()}, {"tgt", f.tgt()}, {"values", f.values()}}; }

SimplexMap simplex_map_from_json(const json& j) {
  try {
    return SimplexMap(j.at("src").get<int>(), j.at("tgt").get<int>(), j.at("values").get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("simplex map: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("simplex map: ") + e.what());
  }
}

json to_json(const ThetaObject& obj) {
  if (obj.level() == 0) return "*";
  json out = json::array();
  for (const auto& c : obj.children()) out.push_back(to_json(c));
  return out;
}

ThetaObject theta_object_from_json(int level, const json& j) {
  if (level < 0) throw ParseError("negative level");
  if (level == 0) {
    if (j != "*") throw ParseError("expected \"*\" at level 0, got " + j.dump());
    return ThetaObject::point();
  }
  if (!j.is_array()) throw ParseError("expected an array at level " + std::to_string(level) + ", got " + j.dump());
  std::vector<ThetaObject> children;
  for (const auto& c : j) children.push_back(theta_object_from_json(level - 1, c));
  return ThetaObject::make(level, std::move(children));
}

json to_json(const ThetaMorphism& f) {
  if (f.level() == 0) return "*";
  json rows = json::array();
  for (const auto& row : f.inner_rows()) {
    json r = json::array();
    for (const auto& g : row) r.push_back(to_json(g));
    rows.push_back(std::move(r));
  }
  return {{"phi", to_json(f.outer())}, {"psi", std::move(rows)}};
}

ThetaMorphism theta_morphism_from_json(const ThetaObject& src, const ThetaObject& tgt, const json& j) {
  if (src.level() != tgt.level()) throw ParseError("endpoints at different levels");
  if (src.level() == 0) {
    if (j != "*") throw ParseError("expected \"*\" for a level-0 morphism, got " + j.dump());
    return ThetaMorphism::identity(src);
  }
  try {
    const auto phi = simplex_map_from_json(j.at("phi"));
    if (phi.src() != src.length() || phi.tgt() != tgt.length())
      throw ParseError("outer map " + phi.to_string() + " does not match " + src.to_string() + " -> " + tgt.to_string());
    const auto& psi = j.at("psi");
    if (!psi.is_array() || psi.size() != static_cast<std::size_t>(src.length()))
      throw ParseError("psi needs one row per source column");
    ThetaMorphism::Rows rows;
    for (int i = 1; i <= src.length(); ++i) {
      const auto& row = psi[static_cast<std::size_t>(i - 1)];
      const int lo = phi(i - 1), hi = phi(i);
      if (!row.is_array() || row.size() != static_cast<std::size_t>(hi - lo))
        throw ParseError("psi row " + std::to_string(i) + " has the wrong length");
      std::vector<ThetaMorphism> r;
      for (int jj = lo + 1; jj <= hi; ++jj)
        r.push_back(theta_morphism_from_json(src.children()[static_cast<std::size_t>(i - 1)],
                                             tgt.children()[static_cast<std::size_t>(jj - 1)],
                                             row[static_cast<std::size_t>(jj - lo - 1)]));
      rows.push_back(std::move(r));
    }
    return ThetaMorphism(src, tgt, phi.values(), std::move(rows));
  } catch (const json::exception& e) {
    throw ParseError(std::string("theta morphism: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("theta morphism: ") + e.what());
  }
}

}  // namespace thetakit
