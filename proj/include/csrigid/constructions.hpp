#pragma once

#include "csrigid/central_symmetry.hpp"
#include "csrigid/face_enumeration.hpp"
#include "csrigid/simplicial_complex.hpp"

#include <cassert>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace csrigid {

/// Boundary of the n-simplex on vertices 0..n.
inline SimplicialComplex simplex_boundary(int n) {
  if (n < 1) throw std::invalid_argument("simplex_boundary: n must be >= 1");
  std::vector<Face> facets;
  for (int drop = 0; drop <= n; ++drop) {
    Face f;
    for (int v = 0; v <= n; ++v)
      if (v != drop) f.push_back(v);
    facets.push_back(f);
  }
  return SimplicialComplex::from_facets(facets);
}

/// Boundary of the d-dimensional cross-polytope. Axis k contributes the
/// antipodal pair (2k, 2k+1); the 2^d facets pick one vertex per axis.
inline CsComplex cross_polytope_boundary(int d) {
  if (d < 1) throw std::invalid_argument("cross_polytope_boundary: d must be >= 1");
  std::vector<Face> facets;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Face f;
    for (int k = 0; k < d; ++k) f.push_back(2 * k + ((mask >> k) & 1));
    facets.push_back(make_face(f));
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (int k = 0; k < d; ++k) pairs.emplace_back(2 * k, 2 * k + 1);
  return validate_cs(SimplicialComplex::from_facets(facets), Involution::from_pairs(pairs));
}

inline VertexId fresh_vertex(const SimplicialComplex& c) {
  return c.vertices().empty() ? 0 : c.vertices().back() + 1;
}

/// Connected sum glued along the facets tau1 and tau2; `identify` maps the
/// vertices of tau2 onto tau1, all other vertices of `b` get fresh labels.
inline SimplicialComplex connected_sum(const SimplicialComplex& a, const Face& tau1_in,
                                       const SimplicialComplex& b, const Face& tau2_in,
                                       const std::map<VertexId, VertexId>& identify) {
  Face tau1 = make_face(tau1_in), tau2 = make_face(tau2_in);
  if (a.dim() != b.dim())
    throw std::invalid_argument("connected_sum: dimensions differ");
  auto is_facet = [](const SimplicialComplex& c, const Face& t) {
    return std::binary_search(c.facets().begin(), c.facets().end(), t);
  };
  if (!is_facet(a, tau1)) throw std::invalid_argument("connected_sum: tau1 is not a facet");
  if (!is_facet(b, tau2)) throw std::invalid_argument("connected_sum: tau2 is not a facet");
  if (identify.size() != tau2.size())
    throw std::invalid_argument("connected_sum: identification is not total on tau2");
  std::set<VertexId> image;
  for (VertexId v : tau2) {
    auto it = identify.find(v);
    if (it == identify.end())
      throw std::invalid_argument("connected_sum: identification misses vertex " +
                                  std::to_string(v));
    if (!face_contains(tau1, it->second))
      throw std::invalid_argument("connected_sum: identification leaves tau1");
    if (!image.insert(it->second).second)
      throw std::invalid_argument("connected_sum: identification collapses distinct vertices");
  }

  std::map<VertexId, VertexId> relabel(identify.begin(), identify.end());
  VertexId next = std::max(fresh_vertex(a), fresh_vertex(b));
  for (VertexId v : b.vertices())
    if (!relabel.count(v)) relabel[v] = next++;

  std::vector<Face> facets;
  for (const Face& f : a.facets())
    if (f != tau1) facets.push_back(f);
  for (const Face& f : b.facets()) {
    if (f == tau2) continue;
    Face g;
    for (VertexId v : f) g.push_back(relabel.at(v));
    facets.push_back(make_face(g));
  }
  return SimplicialComplex::from_facets(facets);
}

/// Attach a shallow simplex over the facet tau: tau is removed and replaced
/// by the cone facets {v_new} ∪ (tau \ {w}).
inline SimplicialComplex stack(const SimplicialComplex& c, const Face& tau_in, VertexId v_new) {
  Face tau = make_face(tau_in);
  if (!std::binary_search(c.facets().begin(), c.facets().end(), tau))
    throw std::invalid_argument("stack: tau is not a facet");
  if (std::binary_search(c.vertices().begin(), c.vertices().end(), v_new))
    throw std::invalid_argument("stack: vertex " + std::to_string(v_new) + " already present");
  std::vector<Face> facets;
  for (const Face& f : c.facets())
    if (f != tau) facets.push_back(f);
  for (VertexId w : tau) {
    Face f = face_difference(tau, {w});
    f.push_back(v_new);
    facets.push_back(make_face(f));
  }
  SimplicialComplex out = SimplicialComplex::from_facets(facets);
#ifndef NDEBUG
  if (c.is_pure() && c.dim() >= 2) {
    int d = c.dim() + 1;
    assert(g2_from_counts(out.face_count(0), out.face_count(1), d) ==
           g2_from_counts(c.face_count(0), c.face_count(1), d));
  }
#endif
  return out;
}

inline SimplicialComplex stack(const SimplicialComplex& c, const Face& tau) {
  return stack(c, tau, fresh_vertex(c));
}

/// Stack over tau and over -tau with fresh apexes v+ and v-, extending the
/// involution by v+ <-> v-. The result is re-validated as cs.
inline CsComplex symmetric_stack(const CsComplex& c, const Face& tau_in) {
  Face tau = make_face(tau_in);
  Face mtau = c.alpha.map_face(tau);
  VertexId vp = fresh_vertex(c.complex);
  VertexId vm = vp + 1;
  SimplicialComplex s = stack(stack(c.complex, tau, vp), mtau, vm);
  return validate_cs(s, c.alpha.extended_with(vp, vm));
}

/// Replace star(tau) with v_new * ∂(simplex on tau) * link(tau).
inline SimplicialComplex stellar_subdivide(const SimplicialComplex& c, const Face& tau_in,
                                           VertexId v_new) {
  Face tau = make_face(tau_in);
  if (!c.contains(tau)) throw std::invalid_argument("stellar_subdivide: not a face");
  if (tau.size() < 2) throw std::invalid_argument("stellar_subdivide: face must have dim >= 1");
  if (std::binary_search(c.vertices().begin(), c.vertices().end(), v_new))
    throw std::invalid_argument("stellar_subdivide: vertex already present");
  std::vector<Face> facets;
  for (const Face& f : c.facets()) {
    if (!is_subface(tau, f)) {
      facets.push_back(f);
      continue;
    }
    for (VertexId w : tau) {
      Face g = face_difference(f, {w});
      g.push_back(v_new);
      facets.push_back(make_face(g));
    }
  }
  return SimplicialComplex::from_facets(facets);
}

inline SimplicialComplex stellar_subdivide(const SimplicialComplex& c, const Face& tau) {
  return stellar_subdivide(c, tau, fresh_vertex(c));
}

/// Inverse of stellar_subdivide: requires link(v) = ∂(simplex on sigma) * L
/// and sigma not a face; star(v) is replaced by simplex(sigma) * L.
inline SimplicialComplex stellar_weld(const SimplicialComplex& c, VertexId v,
                                      const Face& sigma_in) {
  Face sigma = make_face(sigma_in);
  if (sigma.size() < 2) throw std::invalid_argument("stellar_weld: sigma must have dim >= 1");
  if (!c.contains({v})) throw std::invalid_argument("stellar_weld: unknown vertex");
  if (c.contains(sigma))
    throw std::invalid_argument("stellar_weld: " + face_str(sigma) + " is already a face");
  SimplicialComplex lk = c.link({v});
  for (VertexId s : sigma)
    if (!std::binary_search(lk.vertices().begin(), lk.vertices().end(), s))
      throw std::invalid_argument("stellar_weld: sigma not contained in the link");

  std::vector<Face> l_facets;
  for (const Face& f : lk.facets()) l_facets.push_back(face_difference(f, sigma));
  SimplicialComplex l = SimplicialComplex::from_facets(l_facets);

  std::vector<Face> boundary;
  for (VertexId w : sigma) boundary.push_back(face_difference(sigma, {w}));
  SimplicialComplex expected = join(SimplicialComplex::from_facets(boundary), l);
  if (expected != lk)
    throw std::invalid_argument("stellar_weld: link of " + std::to_string(v) +
                                " does not split as boundary(sigma) * L");

  std::vector<Face> facets;
  for (const Face& f : c.facets())
    if (!face_contains(f, v)) facets.push_back(f);
  for (const Face& k : l.facets()) facets.push_back(face_union(sigma, k));
  return SimplicialComplex::from_facets(facets);
}

/// Swartz's operation: split the vertex v0, whose link has the missing facet
/// tau, into two cone points x and y over the halves of link(v0).
///
/// The halves are found on the dual graph of link(v0): two link facets are
/// adjacent when they share a ridge not contained in tau, and the traversal
/// must yield exactly two classes.
inline SimplicialComplex swartz_operation(const SimplicialComplex& c, VertexId v0,
                                          const Face& tau_in, VertexId x, VertexId y) {
  Face tau = make_face(tau_in);
  if (!c.is_pure()) throw std::invalid_argument("swartz_operation: complex is not pure");
  if (!c.contains({v0})) throw std::invalid_argument("swartz_operation: unknown vertex");
  const auto& vs = c.vertices();
  if (x == y || std::binary_search(vs.begin(), vs.end(), x) ||
      std::binary_search(vs.begin(), vs.end(), y))
    throw std::invalid_argument("swartz_operation: x, y must be fresh and distinct");
  if (c.contains(tau))
    throw std::invalid_argument("swartz_operation: tau is a face of the complex");

  SimplicialComplex lk = c.link({v0});
  if (static_cast<int>(tau.size()) != lk.dim() + 1 || lk.contains(tau))
    throw std::invalid_argument("swartz_operation: tau is not a missing facet of link(v0)");
  for (VertexId w : tau)
    if (!lk.contains(face_difference(tau, {w})))
      throw std::invalid_argument("swartz_operation: tau is not a missing facet of link(v0)");

  const auto& lf = lk.facets();
  int n = static_cast<int>(lf.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Face shared;
      std::set_intersection(lf[i].begin(), lf[i].end(), lf[j].begin(), lf[j].end(),
                            std::back_inserter(shared));
      if (shared.size() + 1 != lf[i].size()) continue;  // not a ridge
      if (is_subface(shared, tau)) continue;            // crossing the separating sphere
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  std::vector<int> part(n, -1);
  int parts = 0;
  for (int s = 0; s < n; ++s) {
    if (part[s] != -1) continue;
    std::queue<int> q;
    q.push(s);
    part[s] = parts;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (part[w] == -1) {
          part[w] = parts;
          q.push(w);
        }
    }
    ++parts;
  }
  if (parts != 2)
    throw std::invalid_argument("swartz_operation: link does not split into two parts (got " +
                                std::to_string(parts) + ")");

  std::vector<Face> s1{tau}, s2{tau};
  for (int i = 0; i < n; ++i) (part[i] == 0 ? s1 : s2).push_back(lf[i]);

  std::vector<Face> facets;
  for (const Face& f : c.facets())
    if (!face_contains(f, v0)) facets.push_back(f);
  for (const Face& f : s1) facets.push_back(make_face(face_union(f, {x})));
  for (const Face& f : s2) facets.push_back(make_face(face_union(f, {y})));
  return SimplicialComplex::from_facets(facets);
}

// --- stacking scripts ------------------------------------------------------

struct StackingStep {
  Face facet;
  bool symmetric = false;
};

struct StackingScript {
  enum class Base { cross, simplex };
  Base base = Base::cross;
  int d = 3;
  std::vector<StackingStep> steps;
};

struct ScriptResult {
  SimplicialComplex complex;
  std::optional<Involution> alpha;
};

/// Apply a stacking script combinatorially. A `single` step on a cs base
/// keeps the (now incomplete) involution around so that downstream
/// cs-validation can report the designed failure.
inline ScriptResult apply_script(const StackingScript& s) {
  ScriptResult r;
  if (s.base == StackingScript::Base::cross) {
    CsComplex c = cross_polytope_boundary(s.d);
    r.complex = c.complex;
    r.alpha = c.alpha;
  } else {
    r.complex = simplex_boundary(s.d);
  }
  for (const StackingStep& step : s.steps) {
    if (step.symmetric) {
      if (!r.alpha) throw std::invalid_argument("symmetric step requires a cs base");
      CsComplex c = symmetric_stack(CsComplex{r.complex, *r.alpha}, step.facet);
      r.complex = c.complex;
      r.alpha = c.alpha;
    } else {
      r.complex = stack(r.complex, step.facet);
    }
  }
  return r;
}

}  // namespace csrigid
