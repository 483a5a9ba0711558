#pragma once

#include "csrigid/constructions.hpp"
#include "csrigid/face_enumeration.hpp"
#include "csrigid/simplicial_complex.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace csrigid {

/// A subdivision Gamma of a base complex Delta together with the carrier of
/// every refinement vertex (the base face it subdivides; original vertices
/// carry themselves).
struct SubdivisionMap {
  SimplicialComplex base;
  SimplicialComplex refinement;
  std::map<VertexId, Face> carrier;
};

inline SubdivisionMap make_subdivision_map(SimplicialComplex base, SimplicialComplex refinement,
                                           std::map<VertexId, Face> carrier) {
  const auto& bv = base.vertices();
  for (VertexId v : refinement.vertices()) {
    bool original = std::binary_search(bv.begin(), bv.end(), v);
    auto it = carrier.find(v);
    if (original) {
      if (it == carrier.end()) carrier[v] = Face{v};
      else if (it->second != Face{v})
        throw std::invalid_argument("subdivision: original vertex " + std::to_string(v) +
                                    " must carry itself");
    } else if (it == carrier.end()) {
      throw std::invalid_argument("subdivision: new vertex " + std::to_string(v) +
                                  " has no carrier");
    }
  }
  for (const auto& [v, f] : carrier) {
    if (!base.contains(f))
      throw std::invalid_argument("subdivision: carrier of " + std::to_string(v) +
                                  " is not a base face");
  }
  for (const Face& f : refinement.facets()) {
    Face u;
    for (VertexId v : f) u = face_union(u, carrier.at(v));
    if (!base.contains(u))
      throw std::invalid_argument("subdivision: facet " + face_str(f) +
                                  " has carriers spanning the non-face " + face_str(u));
  }
  return SubdivisionMap{std::move(base), std::move(refinement), std::move(carrier)};
}

inline SubdivisionMap identity_subdivision(const SimplicialComplex& c) {
  return make_subdivision_map(c, c, {});
}

inline SubdivisionMap stellar_subdivision_map(const SimplicialComplex& c, const Face& tau,
                                              VertexId v_new) {
  SimplicialComplex refined = stellar_subdivide(c, tau, v_new);
  return make_subdivision_map(c, refined, {{v_new, make_face(tau)}});
}

inline SubdivisionMap stellar_subdivision_map(const SimplicialComplex& c, const Face& tau) {
  return stellar_subdivision_map(c, tau, fresh_vertex(c));
}

/// Restriction Gamma_W: the induced subcomplex of the refinement on the
/// vertices whose carrier is contained in W.
inline SimplicialComplex restrict_to(const SubdivisionMap& s, const Face& w_in) {
  Face w = make_face(w_in);
  if (!s.base.contains(w))
    throw std::invalid_argument("restrict_to: " + face_str(w) + " is not a base face");
  std::set<VertexId> keep;
  for (const auto& [v, f] : s.carrier)
    if (is_subface(f, w)) keep.insert(v);
  std::vector<Face> facets;
  for (const Face& f : s.refinement.facets()) {
    Face g;
    for (VertexId v : f)
      if (keep.count(v)) g.push_back(v);
    facets.push_back(g);
  }
  return SimplicialComplex::from_facets(facets);
}

/// Local h-polynomial of the induced subdivision of the simplex on V, by
/// inclusion-exclusion over the subsets of V:
///   l_V = sum_{W subset V} (-1)^{|V \ W|} h(Gamma_W).
/// Closed-form, exact, O(2^|V|) restrictions.
inline IntPolynomial local_h(const SubdivisionMap& s, const Face& v_in) {
  Face v = make_face(v_in);
  if (!s.base.contains(v))
    throw std::invalid_argument("local_h: " + face_str(v) + " is not a base face");
  int n = static_cast<int>(v.size());
  IntPolynomial acc;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Face w;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) w.push_back(v[i]);
    IntPolynomial h = h_polynomial_with_ambient(restrict_to(s, w), static_cast<int>(w.size()));
    int missing = n - static_cast<int>(w.size());
    if (missing % 2 == 0) acc = acc + h;
    else acc = acc - h;
  }
  return acc;
}

/// Exact polynomial identity h(refinement) = sum over base faces tau of
/// l_tau * h(link_base(tau)), including tau = {}.
inline bool check_ellh_identity(const SubdivisionMap& s) {
  if (s.base.dim() != s.refinement.dim()) return false;
  int d = s.base.dim() + 1;
  IntPolynomial lhs = h_polynomial_with_ambient(s.refinement, d);
  IntPolynomial rhs;
  for (int i = -1; i <= s.base.dim(); ++i) {
    for (const Face& tau : s.base.faces(i)) {
      IntPolynomial l = local_h(s, tau);
      if (l.c.empty()) continue;
      IntPolynomial h =
          h_polynomial_with_ambient(s.base.link(tau), d - static_cast<int>(tau.size()));
      rhs = rhs + l * h;
    }
  }
  return lhs == rhs;
}

}  // namespace csrigid
