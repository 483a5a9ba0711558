#pragma once

#include "csrigid/central_symmetry.hpp"
#include "csrigid/constructions.hpp"
#include "csrigid/geometry.hpp"
#include "csrigid/rigidity.hpp"
#include "csrigid/simplicial_complex.hpp"
#include "csrigid/subdivision.hpp"

#include "json.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace csrigid {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// On-disk complex document:
/// {"name": str?, "facets": [[int]], "involution": [[int,int]]?,
///  "dimension": int?, "coordinates": {"<vid>": ["num/den", ...]}?}
struct ComplexFile {
  std::optional<std::string> name;
  SimplicialComplex complex;
  std::optional<Involution> involution;
  std::optional<int> dimension;
  std::optional<Embedding> embedding;
};

namespace detail {

inline Face face_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("face must be an array of vertex ids");
  std::vector<VertexId> v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw std::invalid_argument("vertex id must be an integer");
    v.push_back(x.get<VertexId>());
  }
  return make_face(std::move(v));
}

}  // namespace detail

inline SimplicialComplex complex_from_json(const json& j) {
  if (!j.contains("facets") || !j["facets"].is_array())
    throw std::invalid_argument("complex document needs a \"facets\" array");
  std::vector<Face> facets;
  for (const auto& f : j["facets"]) facets.push_back(detail::face_from_json(f));
  return SimplicialComplex::from_facets(facets);
}

inline ComplexFile parse_complex_file(const json& j) {
  ComplexFile out;
  out.complex = complex_from_json(j);
  if (j.contains("name")) out.name = j["name"].get<std::string>();
  if (j.contains("involution")) {
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (const auto& p : j["involution"]) {
      if (!p.is_array() || p.size() != 2)
        throw std::invalid_argument("involution entries must be vertex pairs");
      pairs.emplace_back(p[0].get<VertexId>(), p[1].get<VertexId>());
    }
    out.involution = Involution::from_pairs(pairs);
  }
  if (j.contains("dimension")) out.dimension = j["dimension"].get<int>();
  if (j.contains("coordinates")) {
    Embedding e;
    for (const auto& [key, arr] : j["coordinates"].items()) {
      QVector p;
      for (const auto& s : arr) p.push_back(parse_rational(s.get<std::string>()));
      if (e.coords.empty()) e.dim = static_cast<int>(p.size());
      else if (static_cast<int>(p.size()) != e.dim)
        throw std::invalid_argument("coordinate vectors have mixed lengths");
      e.coords[std::stoi(key)] = std::move(p);
    }
    if (out.dimension && e.dim != *out.dimension)
      throw std::invalid_argument("dimension field disagrees with coordinate length");
    out.embedding = std::move(e);
  }
  return out;
}

inline ordered_json complex_file_json(const ComplexFile& cf) {
  ordered_json j;
  if (cf.name) j["name"] = *cf.name;
  ordered_json facets = ordered_json::array();
  for (const Face& f : cf.complex.facets()) facets.push_back(f);
  j["facets"] = std::move(facets);
  if (cf.involution) {
    ordered_json pairs = ordered_json::array();
    for (auto [v, w] : cf.involution->pairs()) pairs.push_back(ordered_json::array({v, w}));
    j["involution"] = std::move(pairs);
  }
  if (cf.dimension) j["dimension"] = *cf.dimension;
  if (cf.embedding) {
    ordered_json coords = ordered_json::object();
    for (const auto& [v, p] : cf.embedding->coords) {
      ordered_json arr = ordered_json::array();
      for (const Rational& q : p) arr.push_back(format_rational(q));
      coords[std::to_string(v)] = std::move(arr);
    }
    j["coordinates"] = std::move(coords);
  }
  return j;
}

inline std::string canonical_dump(const ordered_json& j) { return j.dump(2) + "\n"; }

inline ComplexFile load_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return parse_complex_file(j);
}

inline void save_complex_file(const ComplexFile& cf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << canonical_dump(complex_file_json(cf));
}

inline ComplexFile to_complex_file(const RealizedPolytope& rp, std::string name) {
  ComplexFile cf;
  cf.name = std::move(name);
  cf.complex = rp.complex;
  cf.involution = rp.alpha;
  cf.dimension = rp.embedding.dim;
  cf.embedding = rp.embedding;
  return cf;
}

// --- subdivision maps -------------------------------------------------------

inline SubdivisionMap parse_subdivision_map(const json& j) {
  if (!j.contains("base") || !j.contains("refinement"))
    throw std::invalid_argument("subdivision document needs \"base\" and \"refinement\"");
  SimplicialComplex base = complex_from_json(j["base"]);
  SimplicialComplex refinement = complex_from_json(j["refinement"]);
  std::map<VertexId, Face> carrier;
  if (j.contains("carrier"))
    for (const auto& [key, f] : j["carrier"].items())
      carrier[std::stoi(key)] = detail::face_from_json(f);
  return make_subdivision_map(std::move(base), std::move(refinement), std::move(carrier));
}

inline ordered_json subdivision_map_json(const SubdivisionMap& s) {
  ordered_json j;
  ordered_json base, refinement;
  base["facets"] = ordered_json::array();
  for (const Face& f : s.base.facets()) base["facets"].push_back(f);
  refinement["facets"] = ordered_json::array();
  for (const Face& f : s.refinement.facets()) refinement["facets"].push_back(f);
  j["base"] = std::move(base);
  j["refinement"] = std::move(refinement);
  ordered_json carrier = ordered_json::object();
  for (const auto& [v, f] : s.carrier) carrier[std::to_string(v)] = f;
  j["carrier"] = std::move(carrier);
  return j;
}

inline SubdivisionMap load_subdivision_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return parse_subdivision_map(j);
}

// --- stresses ----------------------------------------------------------------

inline ordered_json stress_vector_json(const StressVector& s) {
  ordered_json arr = ordered_json::array();
  for (const auto& [e, w] : s.weights) {
    ordered_json entry;
    entry["edge"] = e;
    entry["weight"] = format_rational(w);
    arr.push_back(std::move(entry));
  }
  return arr;
}

inline ordered_json stress_basis_json(const StressBasis& b) {
  ordered_json arr = ordered_json::array();
  for (const StressVector& s : b.basis) arr.push_back(stress_vector_json(s));
  return arr;
}

// --- stacking scripts --------------------------------------------------------

inline StackingScript parse_stacking_script(const json& j) {
  StackingScript s;
  if (!j.contains("base") || !j["base"].contains("kind"))
    throw std::invalid_argument("script needs base.kind");
  std::string kind = j["base"]["kind"].get<std::string>();
  if (kind == "cross") s.base = StackingScript::Base::cross;
  else if (kind == "simplex") s.base = StackingScript::Base::simplex;
  else throw std::invalid_argument("unknown script base kind: " + kind);
  s.d = j["base"]["d"].get<int>();
  if (j.contains("steps"))
    for (const auto& st : j["steps"]) {
      StackingStep step;
      step.facet = detail::face_from_json(st["facet"]);
      std::string mode = st.value("mode", "single");
      if (mode == "symmetric") step.symmetric = true;
      else if (mode == "single") step.symmetric = false;
      else throw std::invalid_argument("unknown step mode: " + mode);
      s.steps.push_back(std::move(step));
    }
  return s;
}

inline ordered_json stacking_script_json(const StackingScript& s) {
  ordered_json j;
  j["base"]["kind"] = s.base == StackingScript::Base::cross ? "cross" : "simplex";
  j["base"]["d"] = s.d;
  j["steps"] = ordered_json::array();
  for (const StackingStep& st : s.steps) {
    ordered_json step;
    step["facet"] = st.facet;
    step["mode"] = st.symmetric ? "symmetric" : "single";
    j["steps"].push_back(std::move(step));
  }
  return j;
}

}  // namespace csrigid
