// Scratch timing harness (not part of the test suite).
#include <chrono>
#include <cstdio>

#include "symcube/bistellar.hpp"
#include "symcube/datasets.hpp"
#include "symcube/group.hpp"
#include "symcube/homology.hpp"
#include "symcube/isomorphism.hpp"

using namespace symcube;
using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
  const std::string what = argc > 1 ? argv[1] : "all";
  auto t0 = Clock::now();

  if (what == "expand" || what == "all") {
    const auto spec = load_orbit_spec("s2s2s2_124");
    auto t1 = Clock::now();
    const auto expanded = orbit_expand(spec.reps, spec.group);
    auto t2 = Clock::now();
    const auto fv = f_vector(expanded.complex);
    auto t3 = Clock::now();
    std::printf("[expand] parse %.2fs expand %.2fs fvector %.2fs -> %s\n",
                secs(t0, t1), secs(t1, t2), secs(t2, t3), fv.to_string().c_str());
  }

  if (what == "action") {
    const auto spec = load_orbit_spec("s2s2s2_124");
    const auto expanded = orbit_expand(spec.reps, spec.group);
    const Group s3 = builtin_action(BuiltinAction::S3_on_V124);
    auto t1 = Clock::now();
    const auto report = check_action(expanded.complex, s3);
    auto t2 = Clock::now();
    std::printf("[action] good=%d pure=%d violations=%zu in %.2fs\n",
                int(report.is_good), int(report.is_pure), report.violations.size(),
                secs(t1, t2));
    const auto naming = load_naming_map();
    const auto q = quotient(expanded.complex, s3, &naming);
    auto t3 = Clock::now();
    std::printf("[quotient] f=%s in %.2fs\n", f_vector(q.complex).to_string().c_str(),
                secs(t2, t3));
    const auto spec30 = load_orbit_spec("cp3_30");
    const auto cp30 = orbit_expand(spec30.reps, spec30.group);
    std::printf("[cp3_30] identical=%d\n",
                int(q.complex.render() == cp30.complex.render()));
    auto t4 = Clock::now();
    const auto iso = are_isomorphic(q.complex, cp30.complex);
    auto t5 = Clock::now();
    std::printf("[iso] found=%d in %.2fs\n", int(iso.has_value()), secs(t4, t5));
  }

  if (what == "hom124") {
    const auto spec = load_orbit_spec("s2s2s2_124");
    const auto expanded = orbit_expand(spec.reps, spec.group);
    auto t1 = Clock::now();
    const auto chain = boundary_matrices(expanded.complex);
    auto t2 = Clock::now();
    std::printf("[chain] built in %.2fs\n", secs(t1, t2));
    for (int p : {2, 3, 5}) {
      auto ta = Clock::now();
      const auto profile = homology(expanded.complex, Ring::GF(p));
      auto tb = Clock::now();
      std::printf("[gf%d] betti =", p);
      for (auto b : profile.betti) std::printf(" %lld", (long long)b);
      std::printf(" in %.2fs\n", secs(ta, tb));
    }
    auto ta = Clock::now();
    const auto profile = homology(expanded.complex, Ring::Q());
    auto tb = Clock::now();
    std::printf("[q] betti =");
    for (auto b : profile.betti) std::printf(" %lld", (long long)b);
    std::printf(" in %.2fs\n", secs(ta, tb));
  }

  if (what == "hom18") {
    const Complex cp18 = load_facet_complex("cp3_18");
    auto t1 = Clock::now();
    const auto profile = homology(cp18, Ring::Z());
    auto t2 = Clock::now();
    std::printf("[cp18/z] betti =");
    for (auto b : profile.betti) std::printf(" %lld", (long long)b);
    std::printf(" torsion:");
    for (const auto& t : profile.torsion) std::printf(" %zu", t.size());
    std::printf(" in %.2fs\n", secs(t1, t2));
  }

  if (what == "links18") {
    const Complex cp18 = load_facet_complex("cp3_18");
    SearchConfig budget;
    budget.seed = 1;
    budget.max_moves = 10000;
    budget.max_seconds = 60;
    auto t1 = Clock::now();
    const auto report = certify_manifold(cp18, budget);
    auto t2 = Clock::now();
    int spheres = 0;
    for (const auto& [v, o] : report.link_outcomes)
      if (o == "sphere") ++spheres;
    std::printf("[links18] verdict=%d spheres=%d/18 in %.2fs\n", int(report.verdict),
                spheres, secs(t1, t2));
  }

  if (what == "bd3") {
    // barycentric subdivision of the 3-sphere boundary: 30 vertices
    Complex s3 = standard_sphere(3);
    // build barycentric via flags
    VertexTable table;
    std::unordered_map<Face, VertexId, FaceHash> cone;
    for (int k = 0; k <= s3.dim(); ++k)
      for (const Face& f : s3.faces(k)) {
        std::string label = "c";
        for (VertexId v : f) label += "_" + s3.vertices().label(v);
        cone.emplace(f, table.intern(label));
      }
    std::vector<Face> facets;
    for (const Face& f : s3.facets()) {
      std::vector<VertexId> order(f.begin(), f.end());
      do {
        Face flag, partial;
        for (VertexId v : order) {
          partial.push_back(v);
          std::sort(partial.begin(), partial.end());
          flag.push_back(cone.at(partial));
        }
        std::sort(flag.begin(), flag.end());
        facets.push_back(flag);
      } while (std::next_permutation(order.begin(), order.end()));
    }
    const Complex bd = Complex::from_facets(table, std::move(facets));
    std::printf("[bd3] f0=%lld facets=%zu\n", (long long)f_vector(bd).counts[0],
                bd.facet_count());
    SearchConfig cfg;
    cfg.seed = 1;
    cfg.max_moves = 100000;
    cfg.max_seconds = 55;
    cfg.target_vertices = 5;
    auto t1 = Clock::now();
    const auto result = reduce_search(bd, cfg);
    auto t2 = Clock::now();
    std::printf("[bd3] status=%d best f0=%lld moves=%lld in %.2fs\n", int(result.status),
                (long long)f_vector(result.best_complex).counts[0],
                (long long)result.moves_applied, secs(t1, t2));
  }

  if (what == "cp30") {
    const auto spec30 = load_orbit_spec("cp3_30");
    const auto cp30 = orbit_expand(spec30.reps, spec30.group);
    SearchConfig cfg;
    cfg.seed = 1;
    cfg.max_moves = 1000000;
    cfg.max_seconds = argc > 2 ? std::atof(argv[2]) : 300;
    cfg.target_vertices = 26;
    auto t1 = Clock::now();
    const auto result = reduce_search(cp30.complex, cfg);
    auto t2 = Clock::now();
    std::printf("[cp30] status=%d best f0=%lld moves=%lld in %.2fs\n", int(result.status),
                (long long)f_vector(result.best_complex).counts[0],
                (long long)result.moves_applied, secs(t1, t2));
  }

  if (what == "aut124") {
    const auto spec = load_orbit_spec("s2s2s2_124");
    const auto expanded = orbit_expand(spec.reps, spec.group);
    auto t1 = Clock::now();
    const auto aut = automorphism_group(expanded.complex);
    auto t2 = Clock::now();
    std::printf("[aut124] order=%llu gens=%zu in %.2fs\n",
                (unsigned long long)aut.order, aut.generators.size(), secs(t1, t2));
  }

  if (what == "aut30") {
    const auto spec30 = load_orbit_spec("cp3_30");
    const auto cp30 = orbit_expand(spec30.reps, spec30.group);
    auto t1 = Clock::now();
    const auto aut = automorphism_group(cp30.complex);
    auto t2 = Clock::now();
    std::printf("[aut30] order=%llu in %.2fs\n", (unsigned long long)aut.order,
                secs(t1, t2));
    const Complex cp18 = load_facet_complex("cp3_18");
    auto t3 = Clock::now();
    const auto aut18 = automorphism_group(cp18);
    auto t4 = Clock::now();
    std::printf("[aut18] order=%llu in %.2fs\n", (unsigned long long)aut18.order,
                secs(t3, t4));
  }

  return 0;
}
