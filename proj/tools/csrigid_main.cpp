// Command-line front end: generate, inspect, analyze and verify centrally
// symmetric complexes and their realized frameworks. All randomness is
// seeded; exit codes are 0 = success, 1 = check failure, 2 = usage or
// input error.

#include "csrigid/constructions.hpp"
#include "csrigid/face_enumeration.hpp"
#include "csrigid/geometry.hpp"
#include "csrigid/json_io.hpp"
#include "csrigid/rigidity.hpp"
#include "csrigid/subdivision.hpp"
#include "csrigid/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace csrigid;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct GenerateOptions {
  std::string kind;
  int d = 4;
  int steps = 1;
  unsigned seed = 0;
  std::string out;
};

ComplexFile build_generated(const GenerateOptions& opt) {
  if (opt.kind == "simplex") {
    if (opt.d >= 2) {
      RealizedPolytope rp = realize_simplex_boundary(opt.d, opt.seed);
      return to_complex_file(rp, "simplex-" + std::to_string(opt.d));
    }
    ComplexFile cf;
    cf.name = "simplex-" + std::to_string(opt.d);
    cf.complex = simplex_boundary(opt.d);
    return cf;
  }
  if (opt.kind == "cross") {
    if (opt.d >= 2) {
      RealizedPolytope rp = realize_cross_polytope(opt.d, opt.seed);
      return to_complex_file(rp, "cross-" + std::to_string(opt.d));
    }
    CsComplex c = cross_polytope_boundary(opt.d);
    ComplexFile cf;
    cf.name = "cross-" + std::to_string(opt.d);
    cf.complex = c.complex;
    cf.involution = c.alpha;
    return cf;
  }
  if (opt.kind == "stacked" || opt.kind == "symmetric-stacked") {
    bool symmetric = opt.kind == "symmetric-stacked";
    StackingScript s = scripted_stacking(
        symmetric ? StackingScript::Base::cross : StackingScript::Base::simplex, opt.d,
        opt.steps, symmetric, opt.seed);
    RealizedPolytope rp = realize_script(s, opt.seed);
    return to_complex_file(rp, opt.kind + "-" + std::to_string(opt.d) + "-" +
                                   std::to_string(opt.steps) + "-seed" +
                                   std::to_string(opt.seed));
  }
  if (opt.kind == "swartz-demo") {
    // prime 3-sphere with a non-prime vertex link: the boundary of the
    // 4-cross-polytope stellarly subdivided at a 2-face
    CsComplex base = cross_polytope_boundary(4);
    Face two_face = make_face({0, 2, 4});
    VertexId v0 = fresh_vertex(base.complex);
    SimplicialComplex before = stellar_subdivide(base.complex, two_face, v0);
    SimplicialComplex after = swartz_operation(before, v0, two_face, v0 + 1, v0 + 2);
    std::printf("swartz operation on the subdivided cross-polytope boundary:\n");
    std::printf("  f0: %lld -> %lld\n", before.face_count(0), after.face_count(0));
    std::printf("  f1: %lld -> %lld\n", before.face_count(1), after.face_count(1));
    std::printf("  g2: %lld -> %lld\n", g_number(before, 2), g_number(after, 2));
    ComplexFile cf;
    cf.name = "swartz-demo";
    cf.complex = after;
    return cf;
  }
  throw CLI::ValidationError("generate", "unknown kind: " + opt.kind);
}

int run_generate(const GenerateOptions& opt) {
  ComplexFile cf = build_generated(opt);
  save_complex_file(cf, opt.out);
  std::printf("wrote %s (%zu facets)\n", opt.out.c_str(), cf.complex.facets().size());
  return kExitOk;
}

int run_info(const std::string& path, bool as_json) {
  ComplexFile cf = load_complex_file(path);
  const SimplicialComplex& c = cf.complex;
  int dim = c.dim();
  FVector fv = f_vector(c);
  bool pure = c.is_pure();

  std::optional<bool> prime;
  if (pure) prime = is_prime(c) && !is_simplex_boundary(c);
  std::vector<Face> missing = dim + 1 >= 2 ? missing_faces(c, dim + 1) : std::vector<Face>{};

  std::optional<std::string> cs_reason;
  bool cs_valid = false;
  if (cf.involution) {
    auto violation = find_cs_violation(c, *cf.involution);
    cs_valid = !violation.has_value();
    if (violation) cs_reason = violation->reason;
  }

  if (as_json) {
    ordered_json j;
    if (cf.name) j["name"] = *cf.name;
    j["dimension"] = dim;
    j["f_vector"] = fv.counts;
    j["pure"] = pure;
    if (pure) {
      j["h_vector"] = h_vector(c, dim + 1);
      ordered_json g = ordered_json::array();
      for (int r = 0; r <= (dim + 1) / 2; ++r) g.push_back(g_number(c, r));
      j["g_numbers"] = std::move(g);
      j["prime"] = *prime;
    }
    ordered_json mf = ordered_json::array();
    for (const Face& f : missing) mf.push_back(f);
    j["missing_faces"] = std::move(mf);
    if (cf.involution) {
      j["cs_valid"] = cs_valid;
      if (cs_reason) j["cs_violation"] = *cs_reason;
    }
    if (cf.embedding) j["coordinates_dim"] = cf.embedding->dim;
    std::cout << canonical_dump(j);
    return kExitOk;
  }

  if (cf.name) std::printf("name: %s\n", cf.name->c_str());
  std::printf("dimension: %d\n", dim);
  std::printf("f-vector: %s\n", fv.str().c_str());
  std::printf("pure: %s\n", pure ? "true" : "false");
  if (pure) {
    std::printf("h-polynomial: %s\n", h_polynomial(c).str().c_str());
    for (int r = 0; r <= (dim + 1) / 2; ++r)
      std::printf("g_%d = %lld\n", r, g_number(c, r));
    std::printf("prime: %s\n", *prime ? "true" : "false");
  }
  std::printf("missing faces (size <= %d): %zu\n", dim + 1, missing.size());
  for (const Face& f : missing) std::printf("  %s\n", face_str(f).c_str());
  if (cf.involution)
    std::printf("cs-valid: %s%s%s\n", cs_valid ? "true" : "false", cs_reason ? " — " : "",
                cs_reason ? cs_reason->c_str() : "");
  if (cf.embedding)
    std::printf("coordinates: %zu vertices in Q^%d\n", cf.embedding->coords.size(),
                cf.embedding->dim);
  return kExitOk;
}

int run_rigidity(const std::string& path, bool dump_stresses, bool dump_motions,
                 bool symmetric_detail, bool as_json) {
  ComplexFile cf = load_complex_file(path);
  if (!cf.embedding) throw std::invalid_argument("no embedding in " + path);
  Graph g = cf.complex.graph();
  const Embedding& e = *cf.embedding;
  RigidityMatrix rm = rigidity_matrix(g, e);
  int rk = rank(rm);
  bool rigid = is_infinitesimally_rigid(g, e);
  StressBasis b = stress_basis(rm);
  std::optional<SymmetricSubspace> sym;
  if (cf.involution) sym = symmetric_stress_subspace(b, *cf.involution);

  if (as_json) {
    ordered_json j;
    j["dimension"] = e.dim;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["rank"] = rk;
    j["rigid"] = rigid;
    j["stress_dim"] = b.dim();
    j["g2_framework"] = g2_framework(g, e.dim);
    if (sym) {
      j["symmetric_stress_dim"] = sym->dim_sym;
      j["all_stresses_symmetric"] = sym->all_symmetric;
    }
    if (dump_stresses) j["stress_basis"] = stress_basis_json(b);
    if (dump_motions) j["motion_dim"] = static_cast<long long>(motions_basis(g, e).size());
    std::cout << canonical_dump(j);
    return kExitOk;
  }

  std::printf("dimension: %d\n", e.dim);
  std::printf("vertices: %lld, edges: %lld\n", g.vertex_count(), g.edge_count());
  std::printf("rank: %d\n", rk);
  std::printf("rigid: %s\n", rigid ? "true" : "false");
  std::printf("dim S = %d\n", b.dim());
  if (sym)
    std::printf("dim S_sym = %d%s\n", sym->dim_sym,
                sym->all_symmetric ? " (all stresses symmetric)" : "");
  if (symmetric_detail && sym)
    std::printf("g2(framework) = %lld, bound C(d,2)-d = %lld\n", g2_framework(g, e.dim),
                binomial(e.dim, 2) - e.dim);
  if (dump_stresses) std::cout << canonical_dump(stress_basis_json(b));
  if (dump_motions)
    std::printf("motion space dimension: %zu\n", motions_basis(g, e).size());
  return kExitOk;
}

int run_localh(const std::string& path, const std::string& face_csv, bool as_json) {
  SubdivisionMap s = load_subdivision_map(path);
  std::vector<Face> targets;
  if (!face_csv.empty()) {
    Face f;
    std::stringstream ss(face_csv);
    for (std::string part; std::getline(ss, part, ',');) f.push_back(std::stoi(part));
    targets.push_back(make_face(f));
  } else {
    targets = s.base.facets();
  }
  bool identity = check_ellh_identity(s);

  if (as_json) {
    ordered_json j;
    j["ellh_identity"] = identity;
    ordered_json lh = ordered_json::array();
    for (const Face& v : targets) {
      ordered_json entry;
      entry["face"] = v;
      entry["local_h"] = local_h(s, v).c;
      lh.push_back(std::move(entry));
    }
    j["local_h"] = std::move(lh);
    std::cout << canonical_dump(j);
  } else {
    for (const Face& v : targets)
      std::printf("local h at %s: %s\n", face_str(v).c_str(), local_h(s, v).str().c_str());
    std::printf("ell-h identity: %s\n", identity ? "holds" : "FAILS");
  }
  return identity ? kExitOk : kExitCheckFailure;
}

void print_report(const CheckReport& r) {
  std::printf("%-26s %5lld/%-5lld %s  (%.2fs)\n", r.name.c_str(), r.passed, r.instances,
              r.ok() ? "ok" : "FAIL", r.wall_time_s);
  for (const auto& f : r.failures)
    std::printf("  FAIL %s: observed %s, expected %s\n", f.instance.c_str(), f.observed.c_str(),
                f.expected.c_str());
  for (const auto& n : r.notes) std::printf("  note: %s\n", n.c_str());
}

int run_verify(const std::string& config_path, const std::string& out_path, bool as_json,
               int jobs) {
  VerifyConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("cannot open " + config_path);
    json j;
    in >> j;
    cfg = parse_verify_config(j);
  }

  std::vector<CheckReport> reports;
  std::vector<std::string> enabled = cfg.checks.empty() ? known_checks() : cfg.checks;
  if (jobs > 1) {
    // independent checks run concurrently; reports merge in name order
    std::vector<std::future<std::vector<CheckReport>>> futures;
    for (const std::string& name : enabled) {
      VerifyConfig sub = cfg;
      sub.checks = {name};
      futures.push_back(std::async(std::launch::async, [sub] { return run_all(sub); }));
    }
    for (auto& f : futures)
      for (auto& r : f.get()) reports.push_back(std::move(r));
  } else {
    VerifyConfig sub = cfg;
    sub.checks = enabled;
    reports = run_all(sub);
  }

  ordered_json jr = ordered_json::array();
  for (const auto& r : reports) jr.push_back(check_report_json(r));
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << canonical_dump(jr);
  }
  if (as_json) {
    std::cout << canonical_dump(jr);
  } else {
    for (const auto& r : reports) print_report(r);
    long long total = 0, passed = 0;
    for (const auto& r : reports) {
      total += r.instances;
      passed += r.passed;
    }
    std::printf("total: %lld/%lld instances passed\n", passed, total);
  }
  return all_passed(reports) ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"centrally symmetric simplicial complexes, face enumeration and rigidity"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "generate a complex and write it as JSON");
  generate->add_option("kind", gen.kind, "simplex|cross|stacked|symmetric-stacked|swartz-demo")
      ->required();
  generate->add_option("--d", gen.d, "dimension")->check(CLI::PositiveNumber);
  generate->add_option("--steps", gen.steps, "number of stackings")->check(CLI::NonNegativeNumber);
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--out", gen.out, "output path")->required();

  std::string info_path;
  bool info_json = false;
  auto* info = app.add_subcommand("info", "face numbers, h/g-numbers, primality, cs validity");
  info->add_option("file", info_path)->required();
  info->add_flag("--json", info_json);

  std::string rig_path;
  bool rig_stresses = false, rig_motions = false, rig_symmetric = false, rig_json = false;
  auto* rig = app.add_subcommand("rigidity", "rank, rigidity and stress space of a framework");
  rig->add_option("file", rig_path)->required();
  rig->add_flag("--stresses", rig_stresses, "dump a stress basis");
  rig->add_flag("--motions", rig_motions, "report the motion space dimension");
  rig->add_flag("--symmetric", rig_symmetric, "report symmetric-subspace detail");
  rig->add_flag("--json", rig_json);

  std::string lh_path, lh_face;
  bool lh_json = false;
  auto* lh = app.add_subcommand("localh", "local h-vectors of a subdivision");
  lh->add_option("file", lh_path)->required();
  lh->add_option("--face", lh_face, "base face as comma-separated vertex ids");
  lh->add_flag("--json", lh_json);

  std::string verify_config, verify_out;
  bool verify_json = false;
  int verify_jobs = 1;
  auto* ver = app.add_subcommand("verify", "run the named check suites");
  ver->add_option("config", verify_config, "configuration JSON (optional)");
  ver->add_option("--out", verify_out, "write the JSON report here");
  ver->add_flag("--json", verify_json);
  ver->add_option("--jobs", verify_jobs, "run independent checks concurrently")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
    if (*generate) return run_generate(gen);
    if (*info) return run_info(info_path, info_json);
    if (*rig) return run_rigidity(rig_path, rig_stresses, rig_motions, rig_symmetric, rig_json);
    if (*lh) return run_localh(lh_path, lh_face, lh_json);
    if (*ver) return run_verify(verify_config, verify_out, verify_json, verify_jobs);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
