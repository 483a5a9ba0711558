#pragma once

#include "csrigid/central_symmetry.hpp"
#include "csrigid/constructions.hpp"
#include "csrigid/face_enumeration.hpp"
#include "csrigid/geometry.hpp"
#include "csrigid/json_io.hpp"
#include "csrigid/rigidity.hpp"
#include "csrigid/simplicial_complex.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace csrigid {

struct CheckFailure {
  std::string instance;
  std::string observed;
  std::string expected;
};

/// Result of one named check over a family of instances. Observations that a
/// statement's hypotheses exclude are recorded in `notes` ("observed, not
/// asserted"), never as assertions; the same goes for explicit vacuous-truth
/// qualifiers.
struct CheckReport {
  std::string name;
  long long instances = 0;
  long long passed = 0;
  std::vector<CheckFailure> failures;
  std::vector<std::string> notes;
  double wall_time_s = 0;

  bool ok() const { return failures.empty(); }
};

namespace detail {

class CheckRecorder {
 public:
  explicit CheckRecorder(std::string name) : start_(std::chrono::steady_clock::now()) {
    report_.name = std::move(name);
  }

  void expect(bool cond, const std::string& instance, const std::string& observed,
              const std::string& expected) {
    ++report_.instances;
    if (cond) ++report_.passed;
    else report_.failures.push_back({instance, observed, expected});
  }

  void expect_eq(long long observed, long long expected, const std::string& instance) {
    expect(observed == expected, instance, std::to_string(observed), std::to_string(expected));
  }

  // An instance the hypotheses exclude: recorded, counted, never asserted.
  void observe(const std::string& instance, const std::string& observed) {
    ++report_.instances;
    ++report_.passed;
    report_.notes.push_back(instance + ": observed " + observed + " (not asserted)");
  }

  void note(const std::string& s) { report_.notes.push_back(s); }

  CheckReport finish() {
    report_.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return report_;
  }

 private:
  CheckReport report_;
  std::chrono::steady_clock::time_point start_;
};

inline std::string describe_script(const StackingScript& s) {
  std::ostringstream os;
  os << (s.base == StackingScript::Base::cross ? "cross d=" : "simplex d=") << s.d << ", "
     << s.steps.size() << " step(s)";
  return os.str();
}

}  // namespace detail

/// g_2 of the cross-polytope boundary equals C(d,2) - d, by full enumeration.
inline CheckReport check_g2_cross_polytope(int d_min, int d_max) {
  detail::CheckRecorder rec("g2-cross-polytope");
  for (int d = std::max(3, d_min); d <= d_max; ++d) {
    long long g2 = g_number(cross_polytope_boundary(d).complex, 2);
    rec.expect_eq(g2, binomial(d, 2) - d, "C*_" + std::to_string(d));
  }
  return rec.finish();
}

/// Forward direction of the characterization: a symmetric stacking of the
/// cross-polytope keeps g_2 = C(d,2) - d, realizes as a rigid cs framework,
/// and all its stresses are symmetric. A script with a single (asymmetric)
/// step is treated as a designed negative: cs-validation must reject it.
inline CheckReport check_main_theorem_forward(const StackingScript& script, unsigned seed) {
  detail::CheckRecorder rec("main-theorem-forward");
  std::string inst = detail::describe_script(script);
  if (script.base != StackingScript::Base::cross)
    throw std::invalid_argument("main-theorem-forward: script base must be a cross-polytope");
  bool all_symmetric_steps = true;
  for (const auto& st : script.steps)
    if (!st.symmetric) all_symmetric_steps = false;

  ScriptResult r = apply_script(script);
  if (!all_symmetric_steps) {
    bool rejected = !r.alpha || find_cs_violation(r.complex, *r.alpha).has_value();
    rec.expect(rejected, inst + " [negative control]",
               rejected ? "cs-validation rejected" : "cs-validation accepted",
               "cs-validation rejected");
    return rec.finish();
  }

  int d = script.d;
  long long bound = binomial(d, 2) - d;
  rec.expect_eq(g_number(r.complex, 2), bound, inst + ": g2");
  bool cs_ok = !find_cs_violation(r.complex, *r.alpha).has_value();
  rec.expect(cs_ok, inst + ": cs-valid", cs_ok ? "valid" : "invalid", "valid");

  RealizedPolytope rp = realize_script(script, seed);
  Graph g = rp.complex.graph();
  bool rigid = is_infinitesimally_rigid(g, rp.embedding);
  rec.expect(rigid, inst + ": rigid", rigid ? "true" : "false", "true");
  StressBasis b = stress_basis(rigidity_matrix(g, rp.embedding));
  SymmetricSubspace sym = symmetric_stress_subspace(b, *rp.alpha);
  rec.expect(sym.all_symmetric && sym.dim_sym == b.dim(), inst + ": stresses symmetric",
             "dim=" + std::to_string(b.dim()) + " sym=" + std::to_string(sym.dim_sym),
             "all symmetric");
  return rec.finish();
}

/// Common neighbors of antipodal vertex pairs: asserted to be exactly 2d-2 on
/// the cross-polytope; on other complexes (where the statement's primality or
/// minimality hypotheses may fail) counts are only observed.
inline CheckReport check_common_neighbors(const CsComplex& c, int d) {
  detail::CheckRecorder rec("common-neighbors");
  FVector fv = f_vector(c.complex);
  bool is_cross = fv == f_vector(cross_polytope_boundary(d).complex);
  for (auto [u, w] : c.alpha.pairs()) {
    long long n = static_cast<long long>(common_link_vertices(c, u).size());
    std::string inst = "vertex " + std::to_string(u);
    if (is_cross) rec.expect_eq(n, 2LL * d - 2, inst);
    else rec.observe(inst, std::to_string(n) + " common link vertices");
  }
  if (!is_cross) rec.note("hypotheses not met (complex is not the cross-polytope)");
  return rec.finish();
}

/// Degree/handshake identity 4 f_1 = sum_u 2 deg(u) = f_0 (f_0 + 2d - 4),
/// asserted only after its premise (every vertex pair u,-u dominates the rest
/// and shares exactly 2d-2 neighbors) is verified.
inline CheckReport check_handshake_identity(const CsComplex& c, int d) {
  detail::CheckRecorder rec("handshake");
  Graph g = c.complex.graph();
  std::map<VertexId, long long> deg;
  for (const Face& e : g.edges) {
    ++deg[e[0]];
    ++deg[e[1]];
  }
  bool premise = true;
  for (VertexId u : g.vertices) {
    VertexId mu = c.alpha(u);
    if (static_cast<long long>(common_link_vertices(c, u).size()) != 2LL * d - 2)
      premise = false;
    auto lu = c.complex.link({u}).vertices();
    auto lmu = c.complex.link({mu}).vertices();
    for (VertexId w : g.vertices) {
      if (w == u || w == mu) continue;
      if (!std::binary_search(lu.begin(), lu.end(), w) &&
          !std::binary_search(lmu.begin(), lmu.end(), w))
        premise = false;
    }
    if (!premise) break;
  }
  long long f0 = g.vertex_count(), f1 = g.edge_count();
  long long degsum = 0;
  for (auto [v, k] : deg) degsum += 2 * k;
  std::ostringstream inst;
  inst << "f0=" << f0 << " f1=" << f1;
  if (!premise) {
    rec.observe(inst.str(), "premise failed; identity not asserted");
    return rec.finish();
  }
  rec.expect(4 * f1 == degsum && degsum == f0 * (f0 + 2 * d - 4), inst.str(),
             "4f1=" + std::to_string(4 * f1) + " sum=" + std::to_string(degsum) +
                 " rhs=" + std::to_string(f0 * (f0 + 2 * d - 4)),
             "all equal");
  return rec.finish();
}

/// For a realized cs sphere at the g_2 bound with a rigid framework: every
/// missing face tau with 3 <= |tau| <= d-1 and every edge e in tau satisfy
/// (tau \ e) ∪ -e ∈ the complex. Vacuous truth (no qualifying missing face)
/// is reported explicitly.
inline CheckReport check_missing_face_graph_lemma(const CsComplex& c, const Embedding& e) {
  detail::CheckRecorder rec("missing-face-graph-lemma");
  int d = e.dim;
  long long bound = binomial(d, 2) - d;
  long long g2 = g_number(c.complex, 2);
  bool rigid = is_infinitesimally_rigid(c.complex.graph(), e);
  if (g2 != bound || !rigid || d < 4) {
    rec.observe("g2=" + std::to_string(g2) + " rigid=" + (rigid ? "true" : "false"),
                "out of hypothesis (need g2 at the bound, rigid, d >= 4)");
    return rec.finish();
  }
  long long qualifying = 0;
  for (const Face& tau : missing_faces(c.complex, d - 1)) {
    if (static_cast<int>(tau.size()) < 3) continue;
    ++qualifying;
    for (std::size_t i = 0; i < tau.size(); ++i)
      for (std::size_t j = i + 1; j < tau.size(); ++j) {
        Face edge = make_face({tau[i], tau[j]});
        Face target = face_union(face_difference(tau, edge), c.alpha.map_face(edge));
        bool is_face = c.complex.contains(target);
        rec.expect(is_face, "tau=" + face_str(tau) + " e=" + face_str(edge),
                   is_face ? "face" : "non-face", face_str(target) + " is a face");
      }
  }
  if (qualifying == 0) {
    rec.expect(true, "no missing face of size 3..d-1", "vacuous", "vacuous");
    rec.note("vacuously true: no missing faces of size 3..d-1 exist");
  }
  return rec.finish();
}

/// Equality side of the classical lower bound: realized stacked polytopes
/// carry no non-trivial stress (dim S = 0, g_2 = 0).
inline CheckReport check_lbt_equality(const StackingScript& script, unsigned seed) {
  detail::CheckRecorder rec("lbt-equality");
  if (script.base != StackingScript::Base::simplex)
    throw std::invalid_argument("lbt-equality: script base must be a simplex");
  for (const auto& st : script.steps)
    if (st.symmetric) throw std::invalid_argument("lbt-equality: steps must be ordinary stacks");
  std::string inst = detail::describe_script(script);
  RealizedPolytope rp = realize_script(script, seed);
  rec.expect_eq(g_number(rp.complex, 2), 0, inst + ": g2");
  StressBasis b = stress_basis(rigidity_matrix(rp.complex.graph(), rp.embedding));
  rec.expect_eq(b.dim(), 0, inst + ": dim S");
  return rec.finish();
}

// --- suite runner -----------------------------------------------------------

struct VerifyConfig {
  int d_min = 3;
  int d_max = 5;
  int max_stackings = 4;
  std::vector<unsigned> seeds = {0};
  std::vector<std::string> checks;  // empty = all
  std::string failure_dump_dir = "csrigid-failures";
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {
      "g2-cross-polytope",  "handshake",    "common-neighbors",
      "main-theorem-forward", "lbt-equality", "missing-face-graph-lemma",
      "symm-stress-lower-bound"};
  return names;
}

inline VerifyConfig parse_verify_config(const json& j) {
  VerifyConfig c;
  c.d_min = j.value("d_min", c.d_min);
  c.d_max = j.value("d_max", c.d_max);
  c.max_stackings = j.value("max_stackings", c.max_stackings);
  if (j.contains("seeds")) {
    c.seeds.clear();
    for (const auto& s : j["seeds"]) c.seeds.push_back(s.get<unsigned>());
  }
  if (j.contains("checks")) {
    for (const auto& s : j["checks"]) {
      std::string name = s.get<std::string>();
      if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
        throw std::invalid_argument("unknown check: " + name);
      c.checks.push_back(name);
    }
  }
  c.failure_dump_dir = j.value("failure_dump_dir", c.failure_dump_dir);
  if (c.d_min < 3 || c.d_max < c.d_min || c.max_stackings < 0 || c.seeds.empty())
    throw std::invalid_argument("invalid verify configuration");
  return c;
}

/// Deterministic script: k stackings with facets drawn by seeded index.
inline StackingScript scripted_stacking(StackingScript::Base base, int d, int steps,
                                        bool symmetric, unsigned seed) {
  StackingScript s;
  s.base = base;
  s.d = d;
  SeededRng rng(seed);
  ScriptResult r;
  r = apply_script(s);
  for (int k = 0; k < steps; ++k) {
    const auto& facets = r.complex.facets();
    StackingStep step;
    step.symmetric = symmetric;
    step.facet = facets[static_cast<std::size_t>(
        rng.uniform(0, static_cast<long long>(facets.size()) - 1))];
    s.steps.push_back(step);
    if (symmetric) {
      CsComplex c = symmetric_stack(CsComplex{r.complex, *r.alpha}, step.facet);
      r.complex = c.complex;
      r.alpha = c.alpha;
    } else {
      r.complex = stack(r.complex, step.facet);
    }
  }
  return s;
}

namespace detail {

inline bool check_enabled(const VerifyConfig& c, const std::string& name) {
  return c.checks.empty() ||
         std::find(c.checks.begin(), c.checks.end(), name) != c.checks.end();
}

/// dim S_sym >= f1/2 - d f0/2 + C(d,2) over every cs framework the suite
/// generates; a violation would falsify the symmetric-stress dimension count
/// and aborts the suite as a hard failure.
inline CheckReport check_symm_stress_lower_bound(const VerifyConfig& cfg) {
  CheckRecorder rec("symm-stress-lower-bound");
  for (int d = std::max(3, cfg.d_min); d <= cfg.d_max; ++d) {
    for (unsigned seed : cfg.seeds) {
      RealizedPolytope rp = realize_cross_polytope(d, seed);
      bool ok = symm_stress_lower_bound_check(rp.complex.graph(), rp.embedding, *rp.alpha);
      rec.expect(ok, "C*_" + std::to_string(d) + " seed=" + std::to_string(seed),
                 ok ? "holds" : "violated", "holds");
    }
  }
  for (int d = 4; d <= std::min(5, cfg.d_max); ++d) {
    for (int k = 1; k <= cfg.max_stackings; ++k) {
      StackingScript s =
          scripted_stacking(StackingScript::Base::cross, d, k, true, cfg.seeds.front());
      RealizedPolytope rp = realize_script(s, cfg.seeds.front());
      bool ok = symm_stress_lower_bound_check(rp.complex.graph(), rp.embedding, *rp.alpha);
      rec.expect(ok, describe_script(s), ok ? "holds" : "violated", "holds");
    }
  }
  return rec.finish();
}

inline void dump_failures(const VerifyConfig& cfg, const CheckReport& r,
                          const ordered_json& instance) {
  std::filesystem::create_directories(cfg.failure_dump_dir);
  ordered_json j;
  j["check"] = r.name;
  j["failures"] = ordered_json::array();
  for (const auto& f : r.failures) {
    ordered_json e;
    e["instance"] = f.instance;
    e["observed"] = f.observed;
    e["expected"] = f.expected;
    j["failures"].push_back(std::move(e));
  }
  j["reproducing_instance"] = instance;
  std::ofstream out(cfg.failure_dump_dir + "/" + r.name + ".json");
  out << canonical_dump(j);
}

}  // namespace detail

inline ordered_json check_report_json(const CheckReport& r) {
  ordered_json j;
  j["name"] = r.name;
  j["instances"] = r.instances;
  j["passed"] = r.passed;
  j["failures"] = ordered_json::array();
  for (const auto& f : r.failures) {
    ordered_json e;
    e["instance"] = f.instance;
    e["observed"] = f.observed;
    e["expected"] = f.expected;
    j["failures"].push_back(std::move(e));
  }
  j["notes"] = r.notes;
  j["wall_time_s"] = r.wall_time_s;
  return j;
}

/// Run the configured checks over deterministically generated instances.
/// Every failed assertion gets its reproducing instance serialized under the
/// configured dump directory.
inline std::vector<CheckReport> run_all(const VerifyConfig& cfg) {
  std::vector<CheckReport> out;
  auto push = [&](CheckReport r, const ordered_json& instance) {
    if (!r.ok()) detail::dump_failures(cfg, r, instance);
    out.push_back(std::move(r));
  };

  if (detail::check_enabled(cfg, "g2-cross-polytope"))
    push(check_g2_cross_polytope(cfg.d_min, cfg.d_max), {{"d_min", cfg.d_min}, {"d_max", cfg.d_max}});

  if (detail::check_enabled(cfg, "handshake")) {
    for (int d = std::max(3, cfg.d_min); d <= cfg.d_max; ++d) {
      CsComplex c = cross_polytope_boundary(d);
      push(check_handshake_identity(c, d), complex_file_json(ComplexFile{
                                                "cross-" + std::to_string(d), c.complex,
                                                c.alpha, std::nullopt, std::nullopt}));
    }
  }

  if (detail::check_enabled(cfg, "common-neighbors")) {
    for (int d = std::max(3, cfg.d_min); d <= cfg.d_max; ++d) {
      CsComplex c = cross_polytope_boundary(d);
      push(check_common_neighbors(c, d), complex_file_json(ComplexFile{
                                             "cross-" + std::to_string(d), c.complex, c.alpha,
                                             std::nullopt, std::nullopt}));
    }
    if (cfg.d_max >= 4) {
      StackingScript s = scripted_stacking(StackingScript::Base::cross, 4, 1, true,
                                                   cfg.seeds.front());
      ScriptResult r = apply_script(s);
      push(check_common_neighbors(CsComplex{r.complex, *r.alpha}, 4),
           stacking_script_json(s));
    }
  }

  if (detail::check_enabled(cfg, "main-theorem-forward")) {
    for (int d = 4; d <= std::min(5, cfg.d_max); ++d)
      for (int k = 1; k <= cfg.max_stackings; ++k)
        for (unsigned seed : cfg.seeds) {
          StackingScript s =
              scripted_stacking(StackingScript::Base::cross, d, k, true, seed);
          push(check_main_theorem_forward(s, seed), stacking_script_json(s));
        }
    // designed negative control: one asymmetric step must fail cs-validation
    if (cfg.d_max >= 4) {
      StackingScript s =
          scripted_stacking(StackingScript::Base::cross, 4, 1, false, cfg.seeds.front());
      push(check_main_theorem_forward(s, cfg.seeds.front()), stacking_script_json(s));
    }
  }

  if (detail::check_enabled(cfg, "lbt-equality")) {
    for (int d = 4; d <= std::min(5, cfg.d_max); ++d)
      for (int k = 1; k <= cfg.max_stackings; ++k) {
        StackingScript s = scripted_stacking(StackingScript::Base::simplex, d, k, false,
                                                     cfg.seeds.front());
        push(check_lbt_equality(s, cfg.seeds.front()), stacking_script_json(s));
      }
    if (cfg.d_max >= 4) {
      // expected non-example: the cross-polytope is not stacked
      CheckReport r;
      r.name = "lbt-equality";
      RealizedPolytope rp = realize_cross_polytope(4, cfg.seeds.front());
      long long dim = stress_basis(rigidity_matrix(rp.complex.graph(), rp.embedding)).dim();
      r.instances = 1;
      r.passed = 1;
      r.notes.push_back("expected non-example C*_4: dim S = " + std::to_string(dim) +
                        " != 0 (not asserted; not a stacked polytope)");
      push(std::move(r), ordered_json{{"instance", "cross-4"}});
    }
  }

  if (detail::check_enabled(cfg, "missing-face-graph-lemma")) {
    for (int d = std::max(4, cfg.d_min); d <= std::min(5, cfg.d_max); ++d) {
      RealizedPolytope rp = realize_cross_polytope(d, cfg.seeds.front());
      push(check_missing_face_graph_lemma(CsComplex{rp.complex, *rp.alpha}, rp.embedding),
           ordered_json{{"instance", "cross-" + std::to_string(d)}});
      for (int k = 1; k <= std::min(2, cfg.max_stackings); ++k) {
        StackingScript s = scripted_stacking(StackingScript::Base::cross, d, k, true,
                                                     cfg.seeds.front());
        RealizedPolytope srp = realize_script(s, cfg.seeds.front());
        push(check_missing_face_graph_lemma(CsComplex{srp.complex, *srp.alpha}, srp.embedding),
             stacking_script_json(s));
      }
    }
  }

  if (detail::check_enabled(cfg, "symm-stress-lower-bound"))
    push(detail::check_symm_stress_lower_bound(cfg),
         ordered_json{{"d_min", cfg.d_min}, {"d_max", cfg.d_max}});

  return out;
}

inline bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.ok()) return false;
  return true;
}

}  // namespace csrigid
