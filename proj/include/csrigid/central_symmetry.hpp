#pragma once

#include "csrigid/simplicial_complex.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace csrigid {

/// Fixed-point-free involution on vertex labels, stored as an explicit map so
/// that surgeries can extend it to vertices with no natural sign.
class Involution {
 public:
  Involution() = default;

  static Involution from_map(std::map<VertexId, VertexId> m) {
    for (const auto& [v, w] : m) {
      if (v == w) throw std::invalid_argument("involution has fixed point " + std::to_string(v));
      auto it = m.find(w);
      if (it == m.end() || it->second != v)
        throw std::invalid_argument("involution is not self-inverse at " + std::to_string(v));
    }
    Involution a;
    a.map_ = std::move(m);
    return a;
  }

  static Involution from_pairs(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::map<VertexId, VertexId> m;
    for (auto [v, w] : pairs) {
      if (m.count(v) || m.count(w))
        throw std::invalid_argument("involution pair repeats a vertex");
      m[v] = w;
      m[w] = v;
    }
    return from_map(std::move(m));
  }

  VertexId operator()(VertexId v) const {
    auto it = map_.find(v);
    if (it == map_.end())
      throw std::invalid_argument("involution undefined at vertex " + std::to_string(v));
    return it->second;
  }

  bool defined_at(VertexId v) const { return map_.count(v) != 0; }

  Face map_face(const Face& f) const {
    Face out;
    out.reserve(f.size());
    for (VertexId v : f) out.push_back((*this)(v));
    return make_face(out);
  }

  const std::map<VertexId, VertexId>& mapping() const { return map_; }

  std::vector<VertexId> domain() const {
    std::vector<VertexId> d;
    d.reserve(map_.size());
    for (const auto& [v, w] : map_) d.push_back(v);
    return d;
  }

  /// Each orbit once, smaller label first, sorted. Canonical JSON form.
  std::vector<std::pair<VertexId, VertexId>> pairs() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [v, w] : map_)
      if (v < w) out.emplace_back(v, w);
    return out;
  }

  Involution extended_with(VertexId a, VertexId b) const {
    if (map_.count(a) || map_.count(b))
      throw std::invalid_argument("involution already defined at new vertex");
    std::map<VertexId, VertexId> m = map_;
    m[a] = b;
    m[b] = a;
    return from_map(std::move(m));
  }

  Involution restricted_to(const std::set<VertexId>& vs) const {
    std::map<VertexId, VertexId> m;
    for (VertexId v : vs) {
      VertexId w = (*this)(v);
      if (!vs.count(w))
        throw std::invalid_argument("restriction set is not involution-closed at " +
                                    std::to_string(v));
      m[v] = w;
    }
    return from_map(std::move(m));
  }

  friend bool operator==(const Involution& a, const Involution& b) = default;

 private:
  std::map<VertexId, VertexId> map_;
};

struct CsComplex {
  SimplicialComplex complex;
  Involution alpha;
};

struct CsViolation {
  std::string reason;
  Face face;  // empty when the problem is not tied to a single face
};

/// First obstruction to (complex, alpha) being centrally symmetric, if any:
/// alpha must be a fixed-point-free involution that is total on the vertex
/// set and must map every non-empty face to a distinct face. The scan is
/// eager and total over all faces; this invariant gates every downstream
/// symmetry argument.
inline std::optional<CsViolation> find_cs_violation(const SimplicialComplex& c,
                                                    const Involution& alpha) {
  for (VertexId v : c.vertices())
    if (!alpha.defined_at(v))
      return CsViolation{"involution undefined at vertex " + std::to_string(v), {v}};
  for (const auto& [v, w] : alpha.mapping()) {
    if (!std::binary_search(c.vertices().begin(), c.vertices().end(), v))
      return CsViolation{"involution defined at non-vertex " + std::to_string(v), {v}};
    if (v == w) return CsViolation{"involution fixes vertex " + std::to_string(v), {v}};
  }
  for (int i = 0; i <= c.dim(); ++i) {
    for (const Face& tau : c.faces(i)) {
      Face image = alpha.map_face(tau);
      if (image == tau)
        return CsViolation{"face is its own antipode: " + face_str(tau), tau};
      if (!c.contains(image))
        return CsViolation{"antipode of " + face_str(tau) + " is not a face", tau};
    }
  }
  return std::nullopt;
}

inline CsComplex validate_cs(const SimplicialComplex& c, const Involution& alpha) {
  if (auto v = find_cs_violation(c, alpha))
    throw std::invalid_argument("not centrally symmetric: " + v->reason);
  return CsComplex{c, alpha};
}

inline Face antipode(const CsComplex& c, const Face& tau) { return c.alpha.map_face(tau); }

/// V(link(u)) ∩ V(link(-u)), sorted.
inline std::vector<VertexId> common_link_vertices(const CsComplex& c, VertexId u) {
  auto lu = c.complex.link({u}).vertices();
  auto lv = c.complex.link({c.alpha(u)}).vertices();
  std::vector<VertexId> out;
  std::set_intersection(lu.begin(), lu.end(), lv.begin(), lv.end(), std::back_inserter(out));
  return out;
}

/// Number of antipodal pairs {v, alpha(v)} contained in W.
inline long long antipodal_pairs_in(const CsComplex& c, const std::vector<VertexId>& w) {
  std::set<VertexId> ws(w.begin(), w.end());
  long long n = 0;
  for (VertexId v : ws) {
    if (!c.alpha.defined_at(v)) continue;
    VertexId a = c.alpha(v);
    if (v < a && ws.count(a)) ++n;
  }
  return n;
}

}  // namespace csrigid
