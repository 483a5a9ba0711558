#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace csrigid {

using VertexId = int;

// A face is a strictly increasing list of vertex labels; {} is the empty face.
using Face = std::vector<VertexId>;

inline Face make_face(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument("face has a duplicate vertex");
  if (!v.empty() && v.front() < 0)
    throw std::invalid_argument("vertex labels must be non-negative");
  return v;
}

inline Face make_face(std::initializer_list<VertexId> v) {
  return make_face(std::vector<VertexId>(v));
}

inline bool face_contains(const Face& f, VertexId v) {
  return std::binary_search(f.begin(), f.end(), v);
}

inline bool is_subface(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool faces_disjoint(const Face& a, const Face& b) {
  Face tmp;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(tmp));
  return tmp.empty();
}

inline Face face_union(const Face& a, const Face& b) {
  Face out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Face face_difference(const Face& a, const Face& b) {
  Face out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::string face_str(const Face& f) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) os << ',';
    os << f[i];
  }
  os << '}';
  return os.str();
}

struct Graph {
  std::vector<VertexId> vertices;  // sorted, unique
  std::vector<Face> edges;         // sorted 2-element faces

  long long vertex_count() const { return static_cast<long long>(vertices.size()); }
  long long edge_count() const { return static_cast<long long>(edges.size()); }
};

inline Graph make_graph(std::vector<VertexId> vertices, std::vector<Face> edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  for (auto& e : edges) {
    e = make_face(e);
    if (e.size() != 2) throw std::invalid_argument("graph edge must have two endpoints");
    for (VertexId v : e)
      if (!std::binary_search(vertices.begin(), vertices.end(), v))
        throw std::invalid_argument("edge endpoint not a graph vertex");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph{std::move(vertices), std::move(edges)};
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  std::vector<VertexId> v = a.vertices;
  v.insert(v.end(), b.vertices.begin(), b.vertices.end());
  std::vector<Face> e = a.edges;
  e.insert(e.end(), b.edges.begin(), b.edges.end());
  return make_graph(std::move(v), std::move(e));
}

/// Number of connected components of the graph after deleting the vertices in
/// `excluded` together with their incident edges.
inline int component_count(const Graph& g, const std::set<VertexId>& excluded = {}) {
  std::map<VertexId, std::vector<VertexId>> adj;
  for (VertexId v : g.vertices)
    if (!excluded.count(v)) adj[v];
  for (const Face& e : g.edges) {
    if (excluded.count(e[0]) || excluded.count(e[1])) continue;
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  std::set<VertexId> seen;
  int components = 0;
  for (const auto& [start, _] : adj) {
    if (seen.count(start)) continue;
    ++components;
    std::queue<VertexId> q;
    q.push(start);
    seen.insert(start);
    while (!q.empty()) {
      VertexId u = q.front();
      q.pop();
      for (VertexId w : adj[u])
        if (seen.insert(w).second) q.push(w);
    }
  }
  return components;
}

/// Abstract simplicial complex stored as its facet list (inclusion-maximal
/// faces, lexicographically sorted). Faces of each dimension are enumerated on
/// demand and memoized; the cache is shared between copies and guarded by a
/// mutex, so values are immutable and safe to use concurrently.
class SimplicialComplex {
 public:
  SimplicialComplex() : facets_{Face{}}, cache_(std::make_shared<FaceCache>()) {}

  static SimplicialComplex from_facets(const std::vector<Face>& faces) {
    std::vector<Face> canon;
    canon.reserve(faces.size());
    for (const Face& f : faces) canon.push_back(make_face(f));
    std::sort(canon.begin(), canon.end(),
              [](const Face& a, const Face& b) { return a.size() > b.size(); });
    std::vector<Face> maximal;
    for (const Face& f : canon) {
      bool dominated = false;
      for (const Face& g : maximal)
        if (is_subface(f, g)) {
          dominated = true;
          break;
        }
      if (!dominated) maximal.push_back(f);
    }
    if (maximal.empty()) maximal.push_back(Face{});
    std::sort(maximal.begin(), maximal.end());
    SimplicialComplex c;
    c.facets_ = std::move(maximal);
    c.vertices_.clear();
    for (const Face& f : c.facets_)
      c.vertices_.insert(c.vertices_.end(), f.begin(), f.end());
    std::sort(c.vertices_.begin(), c.vertices_.end());
    c.vertices_.erase(std::unique(c.vertices_.begin(), c.vertices_.end()), c.vertices_.end());
    c.cache_ = std::make_shared<FaceCache>();
    return c;
  }

  const std::vector<Face>& facets() const { return facets_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }

  int dim() const {
    std::size_t m = 0;
    for (const Face& f : facets_) m = std::max(m, f.size());
    return static_cast<int>(m) - 1;
  }

  bool is_pure() const {
    for (const Face& f : facets_)
      if (f.size() != facets_.front().size()) return false;
    return true;
  }

  bool contains(const Face& f) const {
    for (const Face& g : facets_)
      if (is_subface(f, g)) return true;
    return false;
  }

  /// All i-dimensional faces in lexicographic order. i = -1 yields the empty
  /// face; out-of-range i yields an empty list.
  std::vector<Face> faces(int i) const {
    if (i == -1) return {Face{}};
    if (i < -1 || i > dim()) return {};
    std::lock_guard<std::mutex> lock(cache_->m);
    auto it = cache_->by_dim.find(i);
    if (it != cache_->by_dim.end()) return it->second;
    std::set<Face> out;
    std::size_t k = static_cast<std::size_t>(i) + 1;
    for (const Face& f : facets_) {
      if (f.size() < k) continue;
      std::vector<std::size_t> idx(k);
      for (std::size_t t = 0; t < k; ++t) idx[t] = t;
      while (true) {
        Face sub(k);
        for (std::size_t t = 0; t < k; ++t) sub[t] = f[idx[t]];
        out.insert(std::move(sub));
        std::size_t t = k;
        while (t > 0 && idx[t - 1] == f.size() - k + t - 1) --t;
        if (t == 0) break;
        ++idx[t - 1];
        for (std::size_t s = t; s < k; ++s) idx[s] = idx[s - 1] + 1;
      }
    }
    std::vector<Face> v(out.begin(), out.end());
    cache_->by_dim.emplace(i, v);
    return v;
  }

  long long face_count(int i) const {
    if (i == -1) return 1;
    return static_cast<long long>(faces(i).size());
  }

  SimplicialComplex link(const Face& tau) const {
    Face t = make_face(tau);
    if (!contains(t)) throw std::invalid_argument("link: not a face: " + face_str(t));
    std::vector<Face> fs;
    for (const Face& f : facets_)
      if (is_subface(t, f)) fs.push_back(face_difference(f, t));
    return from_facets(fs);
  }

  SimplicialComplex star(const Face& tau) const {
    Face t = make_face(tau);
    if (!contains(t)) throw std::invalid_argument("star: not a face: " + face_str(t));
    std::vector<Face> fs;
    for (const Face& f : facets_)
      if (is_subface(t, f)) fs.push_back(f);
    return from_facets(fs);
  }

  SimplicialComplex skeleton(int i) const {
    if (i >= dim()) return *this;
    if (i < -1) throw std::invalid_argument("skeleton: dimension below -1");
    std::vector<Face> fs = faces(i);
    for (const Face& f : facets_)
      if (static_cast<int>(f.size()) - 1 < i) fs.push_back(f);
    return from_facets(fs);
  }

  Graph graph() const { return Graph{vertices_, faces(1)}; }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.facets_ == b.facets_;
  }
  friend bool operator!=(const SimplicialComplex& a, const SimplicialComplex& b) {
    return !(a == b);
  }

 private:
  struct FaceCache {
    std::mutex m;
    std::map<int, std::vector<Face>> by_dim;
  };

  std::vector<Face> facets_;
  std::vector<VertexId> vertices_;
  std::shared_ptr<FaceCache> cache_;
};

/// Join of two complexes on disjoint vertex sets; facets are unions of facets.
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  for (VertexId v : a.vertices())
    if (std::binary_search(b.vertices().begin(), b.vertices().end(), v))
      throw std::invalid_argument("join: vertex sets overlap at " + std::to_string(v));
  std::vector<Face> fs;
  for (const Face& f : a.facets())
    for (const Face& g : b.facets()) fs.push_back(face_union(f, g));
  return SimplicialComplex::from_facets(fs);
}

/// The full simplex on a vertex set.
inline SimplicialComplex full_simplex(const Face& sigma) {
  return SimplicialComplex::from_facets({make_face(sigma)});
}

/// All missing faces of size <= max_size: non-faces all of whose proper
/// subsets are faces. Candidates of size k are grown from (k-1)-faces, so no
/// power-set scan happens.
inline std::vector<Face> missing_faces(const SimplicialComplex& c, int max_size) {
  if (max_size < 2) throw std::invalid_argument("missing_faces: max_size must be >= 2");
  std::vector<Face> out;
  const auto& verts = c.vertices();
  for (int k = 2; k <= max_size; ++k) {
    for (const Face& f : c.faces(k - 2)) {
      for (VertexId v : verts) {
        if (v <= f.back()) continue;  // each candidate grown once, from its max
        Face cand = f;
        cand.push_back(v);
        bool all_subsets_faces = true;
        for (std::size_t drop = 0; drop + 1 < cand.size() && all_subsets_faces; ++drop) {
          Face sub;
          for (std::size_t t = 0; t < cand.size(); ++t)
            if (t != drop) sub.push_back(cand[t]);
          if (!c.contains(sub)) all_subsets_faces = false;
        }
        if (all_subsets_faces && !c.contains(cand)) out.push_back(cand);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

/// True iff the (pure) complex has no missing facet, i.e. no missing face of
/// size 1 + dim.
inline bool is_prime(const SimplicialComplex& c) {
  if (!c.is_pure()) throw std::invalid_argument("is_prime: complex is not pure");
  int facet_size = c.dim() + 1;
  if (facet_size < 2) return true;
  for (const Face& f : missing_faces(c, facet_size))
    if (static_cast<int>(f.size()) == facet_size) return false;
  return true;
}

/// True iff the complex is the boundary of a simplex on its vertex set.
inline bool is_simplex_boundary(const SimplicialComplex& c) {
  std::size_t n = c.vertices().size();
  if (n < 2) return false;
  return c.facets().size() == n && c.dim() == static_cast<int>(n) - 2 && c.is_pure();
}

inline int components_excluding(const SimplicialComplex& c, const std::set<VertexId>& w) {
  return component_count(c.graph(), w);
}

/// Closed pseudomanifold test: pure, every ridge lies in exactly two facets,
/// and the facet adjacency graph is connected.
inline bool is_closed_pseudomanifold(const SimplicialComplex& c) {
  if (!c.is_pure() || c.dim() < 0) return false;
  const auto& facets = c.facets();
  std::map<Face, std::vector<int>> ridge_to_facets;
  for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
    const Face& f = facets[i];
    for (std::size_t drop = 0; drop < f.size(); ++drop) {
      Face r;
      for (std::size_t t = 0; t < f.size(); ++t)
        if (t != drop) r.push_back(f[t]);
      ridge_to_facets[r].push_back(i);
    }
  }
  for (const auto& [r, fs] : ridge_to_facets)
    if (fs.size() != 2) return false;
  std::vector<std::vector<int>> adj(facets.size());
  for (const auto& [r, fs] : ridge_to_facets) {
    adj[fs[0]].push_back(fs[1]);
    adj[fs[1]].push_back(fs[0]);
  }
  std::vector<bool> seen(facets.size(), false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : adj[u])
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        q.push(w);
      }
  }
  return reached == facets.size();
}

}  // namespace csrigid
