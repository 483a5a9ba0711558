#pragma once

#include "csrigid/central_symmetry.hpp"
#include "csrigid/constructions.hpp"
#include "csrigid/linalg.hpp"
#include "csrigid/rational.hpp"
#include "csrigid/simplicial_complex.hpp"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace csrigid {

using QVector = std::vector<Rational>;

inline QVector qv_add(const QVector& a, const QVector& b) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVector qv_sub(const QVector& a, const QVector& b) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVector qv_scale(const Rational& s, const QVector& a) {
  QVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

inline QVector qv_neg(const QVector& a) { return qv_scale(Rational(-1), a); }

inline Rational qv_dot(const QVector& a, const QVector& b) {
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

inline bool qv_is_zero(const QVector& a) {
  for (const Rational& x : a)
    if (x != 0) return false;
  return true;
}

/// Exact coordinates of the vertices of a framework.
struct Embedding {
  int dim = 0;
  std::map<VertexId, QVector> coords;

  const QVector& at(VertexId v) const {
    auto it = coords.find(v);
    if (it == coords.end())
      throw std::invalid_argument("no coordinates for vertex " + std::to_string(v));
    return it->second;
  }
};

/// Oriented hyperplane normal·x = offset; points with normal·x < offset are
/// beneath (on the interior side).
struct Hyperplane {
  QVector normal;
  Rational offset;
};

inline Rational plane_side(const Hyperplane& h, const QVector& x) {
  return qv_dot(h.normal, x) - h.offset;
}

/// k points are affinely independent iff their difference vectors have rank
/// k-1.
inline bool affinely_independent(const std::vector<QVector>& pts) {
  if (pts.empty()) return true;
  int k = static_cast<int>(pts.size());
  int d = static_cast<int>(pts[0].size());
  QMatrix diffs(k - 1, d);
  for (int i = 1; i < k; ++i)
    for (int j = 0; j < d; ++j) diffs(i - 1, j) = pts[i][j] - pts[0][j];
  return rank(diffs) == k - 1;
}

/// Hyperplane through d affinely independent points in R^d, oriented so the
/// given interior point is strictly beneath.
inline Hyperplane hyperplane_through(const std::vector<QVector>& pts, const QVector& interior) {
  int d = static_cast<int>(interior.size());
  if (static_cast<int>(pts.size()) != d)
    throw std::invalid_argument("hyperplane_through: need exactly d points");
  QMatrix diffs(d - 1, d);
  for (int i = 1; i < d; ++i)
    for (int j = 0; j < d; ++j) diffs(i - 1, j) = pts[i][j] - pts[0][j];
  auto ker = kernel_basis(diffs);
  if (ker.size() != 1)
    throw std::invalid_argument("hyperplane_through: points are affinely dependent");
  Hyperplane h{ker[0], qv_dot(ker[0], pts[0])};
  Rational s = plane_side(h, interior);
  if (s == 0) throw std::invalid_argument("hyperplane_through: interior point on the plane");
  if (s > 0) {
    h.normal = qv_neg(h.normal);
    h.offset = -h.offset;
  }
  return h;
}

/// A simplicial complex realized as the boundary of a convex polytope: exact
/// vertex coordinates plus the supporting hyperplane of every facet and a
/// certified interior point.
struct RealizedPolytope {
  SimplicialComplex complex;
  std::optional<Involution> alpha;
  Embedding embedding;
  std::map<Face, Hyperplane> facet_planes;
  QVector interior_point;
};

/// Recompute and verify every facet hyperplane: facet vertices on the plane,
/// all other vertices strictly beneath. Throws when convex position fails.
inline void validate_realized(const RealizedPolytope& rp) {
  for (const Face& f : rp.complex.facets()) {
    auto it = rp.facet_planes.find(f);
    if (it == rp.facet_planes.end())
      throw std::invalid_argument("realized polytope: missing plane for " + face_str(f));
    const Hyperplane& h = it->second;
    for (VertexId v : f)
      if (plane_side(h, rp.embedding.at(v)) != 0)
        throw std::invalid_argument("realized polytope: facet vertex off its plane");
    for (VertexId v : rp.complex.vertices()) {
      if (face_contains(f, v)) continue;
      if (plane_side(h, rp.embedding.at(v)) >= 0)
        throw std::invalid_argument("realized polytope: vertex " + std::to_string(v) +
                                    " not strictly beneath facet " + face_str(f));
    }
  }
}

/// Deterministic generator for the small rational perturbations: numerators
/// uniform in [-1024, 1024] over 2^20.
class SeededRng {
 public:
  explicit SeededRng(unsigned seed) : eng_(seed) {}

  long long uniform(long long lo, long long hi) {
    return lo + static_cast<long long>(eng_() % static_cast<unsigned long long>(hi - lo + 1));
  }

  Rational perturbation() { return Rational(uniform(-1024, 1024), Integer(1) << 20); }

 private:
  std::mt19937_64 eng_;
};

/// Every d vertices, no two of which are antipodal, are affinely independent
/// (exact rank tests over all qualifying d-subsets).
inline bool is_symmetrically_generic(const Embedding& e, const Involution& alpha) {
  std::vector<VertexId> vs;
  for (const auto& [v, p] : e.coords) vs.push_back(v);
  int n = static_cast<int>(vs.size());
  int d = e.dim;
  if (n < d) return true;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    bool has_antipodal = false;
    for (int i = 0; i < d && !has_antipodal; ++i)
      for (int j = i + 1; j < d && !has_antipodal; ++j)
        if (alpha.defined_at(vs[idx[i]]) && alpha(vs[idx[i]]) == vs[idx[j]]) has_antipodal = true;
    if (!has_antipodal) {
      std::vector<QVector> pts;
      for (int i = 0; i < d; ++i) pts.push_back(e.at(vs[idx[i]]));
      if (!affinely_independent(pts)) return false;
    }
    int t = d;
    while (t > 0 && idx[t - 1] == n - d + t - 1) --t;
    if (t == 0) break;
    ++idx[t - 1];
    for (int s = t; s < d; ++s) idx[s] = idx[s - 1] + 1;
  }
  return true;
}

namespace detail {

inline QVector vertex_centroid(const Embedding& e) {
  QVector c(e.dim, Rational(0));
  for (const auto& [v, p] : e.coords) c = qv_add(c, p);
  return qv_scale(Rational(1, static_cast<int>(e.coords.size())), c);
}

inline std::map<Face, Hyperplane> facet_planes_of(const SimplicialComplex& c, const Embedding& e,
                                                  const QVector& interior) {
  std::map<Face, Hyperplane> planes;
  for (const Face& f : c.facets()) {
    std::vector<QVector> pts;
    for (VertexId v : f) pts.push_back(e.at(v));
    planes[f] = hyperplane_through(pts, interior);
  }
  return planes;
}

}  // namespace detail

/// Symmetric generic realization of the cross-polytope: coords(+-axis k) =
/// +-(e_k + delta_k). Resamples the perturbation until the genericity
/// predicate and the convex-position hyperplane checks pass.
inline RealizedPolytope realize_cross_polytope(int d, unsigned seed) {
  if (d < 2) throw std::invalid_argument("realize_cross_polytope: d must be >= 2");
  CsComplex cs = cross_polytope_boundary(d);
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Embedding e;
    e.dim = d;
    for (int k = 0; k < d; ++k) {
      QVector p(d, Rational(0));
      p[k] = 1;
      for (int j = 0; j < d; ++j) p[j] += rng.perturbation();
      e.coords[2 * k] = p;
      e.coords[2 * k + 1] = qv_neg(p);
    }
    if (!is_symmetrically_generic(e, cs.alpha)) continue;
    RealizedPolytope rp{cs.complex, cs.alpha, std::move(e), {}, QVector(d, Rational(0))};
    try {
      rp.facet_planes = detail::facet_planes_of(rp.complex, rp.embedding, rp.interior_point);
      validate_realized(rp);
    } catch (const std::invalid_argument&) {
      continue;
    }
    return rp;
  }
  throw std::runtime_error("realize_cross_polytope: no valid perturbation found");
}

/// Generic realization of the simplex boundary: vertex 0 at delta_0, vertex i
/// at e_i + delta_i.
inline RealizedPolytope realize_simplex_boundary(int d, unsigned seed) {
  if (d < 2) throw std::invalid_argument("realize_simplex_boundary: d must be >= 2");
  SimplicialComplex c = simplex_boundary(d);
  SeededRng rng(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    Embedding e;
    e.dim = d;
    for (int v = 0; v <= d; ++v) {
      QVector p(d, Rational(0));
      if (v > 0) p[v - 1] = 1;
      for (int j = 0; j < d; ++j) p[j] += rng.perturbation();
      e.coords[v] = p;
    }
    std::vector<QVector> all;
    for (const auto& [v, p] : e.coords) all.push_back(p);
    if (!affinely_independent(all)) continue;
    RealizedPolytope rp;
    rp.complex = c;
    rp.embedding = std::move(e);
    rp.interior_point = detail::vertex_centroid(rp.embedding);
    rp.facet_planes = detail::facet_planes_of(rp.complex, rp.embedding, rp.interior_point);
    validate_realized(rp);
    return rp;
  }
  throw std::runtime_error("realize_simplex_boundary: no valid perturbation found");
}

/// Apex for stacking over a facet: centroid + eps * outward normal, with eps
/// halved until the apex is strictly beyond the facet plane and strictly
/// beneath every other facet plane.
inline QVector stacking_apex(const std::vector<QVector>& facet_points,
                             const Hyperplane& facet_plane,
                             const std::vector<Hyperplane>& other_planes) {
  if (facet_points.empty()) throw std::invalid_argument("stacking_apex: no facet points");
  QVector centroid(facet_points[0].size(), Rational(0));
  for (const QVector& p : facet_points) centroid = qv_add(centroid, p);
  centroid = qv_scale(Rational(1, static_cast<int>(facet_points.size())), centroid);
  Rational eps(1);
  for (int i = 0; i < 128; ++i, eps /= 2) {
    QVector apex = qv_add(centroid, qv_scale(eps, facet_plane.normal));
    if (plane_side(facet_plane, apex) <= 0) continue;
    bool beneath_all = true;
    for (const Hyperplane& h : other_planes)
      if (plane_side(h, apex) >= 0) {
        beneath_all = false;
        break;
      }
    if (beneath_all) return apex;
  }
  throw std::runtime_error("stacking_apex: no valid apex within the retry bound");
}

namespace detail {

inline std::vector<Hyperplane> planes_except(const std::map<Face, Hyperplane>& planes,
                                             const Face& skip) {
  std::vector<Hyperplane> out;
  for (const auto& [f, h] : planes)
    if (f != skip) out.push_back(h);
  return out;
}

}  // namespace detail

/// Geometric stacking: place an apex over tau and update the facet-plane
/// book-keeping. Convex position is re-validated on the result.
inline RealizedPolytope stack_realized(const RealizedPolytope& rp, const Face& tau_in,
                                       VertexId v_new) {
  Face tau = make_face(tau_in);
  auto it = rp.facet_planes.find(tau);
  if (it == rp.facet_planes.end())
    throw std::invalid_argument("stack_realized: tau is not a facet");
  std::vector<QVector> pts;
  for (VertexId v : tau) pts.push_back(rp.embedding.at(v));
  QVector apex = stacking_apex(pts, it->second, detail::planes_except(rp.facet_planes, tau));

  RealizedPolytope out;
  out.complex = stack(rp.complex, tau, v_new);
  out.alpha = rp.alpha;
  out.embedding = rp.embedding;
  out.embedding.coords[v_new] = apex;
  out.interior_point = rp.interior_point;
  out.facet_planes = rp.facet_planes;
  out.facet_planes.erase(tau);
  for (VertexId w : tau) {
    Face nf = make_face(face_union(face_difference(tau, {w}), {v_new}));
    std::vector<QVector> npts;
    for (VertexId v : nf) npts.push_back(out.embedding.at(v));
    out.facet_planes[nf] = hyperplane_through(npts, out.interior_point);
  }
  validate_realized(out);
  return out;
}

inline RealizedPolytope stack_realized(const RealizedPolytope& rp, const Face& tau) {
  return stack_realized(rp, tau, fresh_vertex(rp.complex));
}

/// Geometric symmetric stacking: apexes at +-(centroid(tau) + eps*normal),
/// eps halved until both mirrored beneath/beyond conditions hold exactly.
inline RealizedPolytope symmetric_stack_realized(const RealizedPolytope& rp, const Face& tau_in) {
  if (!rp.alpha) throw std::invalid_argument("symmetric_stack_realized: not a cs realization");
  Face tau = make_face(tau_in);
  Face mtau = rp.alpha->map_face(tau);
  auto it = rp.facet_planes.find(tau);
  auto mit = rp.facet_planes.find(mtau);
  if (it == rp.facet_planes.end() || mit == rp.facet_planes.end())
    throw std::invalid_argument("symmetric_stack_realized: tau is not a facet");

  std::vector<QVector> pts;
  for (VertexId v : tau) pts.push_back(rp.embedding.at(v));
  QVector centroid(pts[0].size(), Rational(0));
  for (const QVector& p : pts) centroid = qv_add(centroid, p);
  centroid = qv_scale(Rational(1, static_cast<int>(pts.size())), centroid);

  VertexId vp = fresh_vertex(rp.complex);
  VertexId vm = vp + 1;
  Rational eps(1);
  for (int i = 0; i < 128; ++i, eps /= 2) {
    QVector apex = qv_add(centroid, qv_scale(eps, it->second.normal));
    QVector mapex = qv_neg(apex);
    if (plane_side(it->second, apex) <= 0 || plane_side(mit->second, mapex) <= 0) continue;

    // planes of the intermediate polytope after the first apex
    std::map<Face, Hyperplane> inter = rp.facet_planes;
    inter.erase(tau);
    bool ok = true;
    for (const auto& [f, h] : inter)
      if (plane_side(h, apex) >= 0) {
        ok = false;
        break;
      }
    if (!ok) continue;
    Embedding e1 = rp.embedding;
    e1.coords[vp] = apex;
    for (VertexId w : tau) {
      Face nf = make_face(face_union(face_difference(tau, {w}), {vp}));
      std::vector<QVector> npts;
      for (VertexId v : nf) npts.push_back(e1.at(v));
      inter[nf] = hyperplane_through(npts, rp.interior_point);
    }
    for (const auto& [f, h] : inter) {
      if (f == mtau) continue;
      if (plane_side(h, mapex) >= 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    RealizedPolytope out;
    CsComplex sc = symmetric_stack(CsComplex{rp.complex, *rp.alpha}, tau);
    out.complex = sc.complex;
    out.alpha = sc.alpha;
    out.embedding = e1;
    out.embedding.coords[vm] = mapex;
    out.interior_point = rp.interior_point;
    out.facet_planes = inter;
    out.facet_planes.erase(mtau);
    for (VertexId w : mtau) {
      Face nf = make_face(face_union(face_difference(mtau, {w}), {vm}));
      std::vector<QVector> npts;
      for (VertexId v : nf) npts.push_back(out.embedding.at(v));
      out.facet_planes[nf] = hyperplane_through(npts, out.interior_point);
    }
    validate_realized(out);
    return out;
  }
  throw std::runtime_error("symmetric_stack_realized: no valid apex pair found");
}

/// Orthogonal projection of the points of W onto the complement of `normal`,
/// expressed in an exact unnormalized Gram-Schmidt frame of the complement.
/// The frame map is a fixed invertible linear map of the hyperplane, so
/// rigidity ranks are unaffected. Throws when the projection is not injective
/// on W.
inline Embedding project_orthogonal(const Embedding& e, const QVector& normal,
                                    const std::set<VertexId>& w) {
  if (qv_is_zero(normal)) throw std::invalid_argument("project_orthogonal: zero normal");
  int d = e.dim;
  std::vector<QVector> frame{normal};
  for (int k = 0; k < d && static_cast<int>(frame.size()) < d; ++k) {
    QVector cand(d, Rational(0));
    cand[k] = 1;
    for (const QVector& q : frame)
      cand = qv_sub(cand, qv_scale(qv_dot(q, cand) / qv_dot(q, q), q));
    if (!qv_is_zero(cand)) frame.push_back(cand);
  }
  if (static_cast<int>(frame.size()) != d)
    throw std::runtime_error("project_orthogonal: frame construction failed");

  Embedding out;
  out.dim = d - 1;
  for (VertexId v : w) {
    const QVector& p = e.at(v);
    QVector img(d - 1);
    for (int j = 1; j < d; ++j) img[j - 1] = qv_dot(frame[j], p);
    out.coords[v] = std::move(img);
  }
  std::set<QVector> images;
  for (const auto& [v, p] : out.coords)
    if (!images.insert(p).second)
      throw std::invalid_argument("project_orthogonal: projection not injective on W");
  return out;
}

/// Full realization pipeline for a stacking script.
inline RealizedPolytope realize_script(const StackingScript& s, unsigned seed) {
  RealizedPolytope rp = (s.base == StackingScript::Base::cross)
                            ? realize_cross_polytope(s.d, seed)
                            : realize_simplex_boundary(s.d, seed);
  for (const StackingStep& step : s.steps) {
    if (step.symmetric) rp = symmetric_stack_realized(rp, step.facet);
    else rp = stack_realized(rp, step.facet);
  }
  return rp;
}

}  // namespace csrigid
