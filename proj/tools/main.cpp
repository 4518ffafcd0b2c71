// symcube: command-line interface to the simplicial-complex toolkit.
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symcube/bistellar.hpp"
#include "symcube/datasets.hpp"
#include "symcube/group.hpp"
#include "symcube/homology.hpp"
#include "symcube/isomorphism.hpp"

using nlohmann::json;
using namespace symcube;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

bool looks_like_orbit_spec(const std::string& text) {
  return text.find("VERTICES:") != std::string::npos;
}

// A positional input is a file path if it exists, otherwise a dataset name.
Complex load_complex_arg(const std::string& arg) {
  std::ifstream probe(arg);
  if (probe.good()) {
    const std::string text = read_file(arg);
    if (looks_like_orbit_spec(text)) {
      const GroupSpec spec = parse_group_spec(text);
      return orbit_expand(spec.reps, spec.group).complex;
    }
    return parse_facets(text).complex;
  }
  const Dataset& d = load_dataset(arg);
  if (d.kind == Dataset::Kind::facet_list) return parse_facets(d.payload).complex;
  if (d.kind == Dataset::Kind::orbit_spec) {
    const GroupSpec spec = parse_group_spec(d.payload);
    return orbit_expand(spec.reps, spec.group).complex;
  }
  throw Error("dataset '" + arg + "' is not a complex");
}

struct ComplexInput {
  std::string in_file;
  std::string dataset;

  void attach(CLI::App* cmd) {
    auto* in = cmd->add_option("--in", in_file, "facet file or orbit-spec file");
    auto* ds = cmd->add_option("--dataset", dataset, "built-in dataset name");
    in->excludes(ds);
  }

  Complex load() const {
    if (!in_file.empty()) {
      const std::string text = read_file(in_file);
      if (looks_like_orbit_spec(text)) {
        const GroupSpec spec = parse_group_spec(text);
        return orbit_expand(spec.reps, spec.group).complex;
      }
      return parse_facets(text).complex;
    }
    if (!dataset.empty()) return load_complex_arg(dataset);
    throw Error("need --in FILE or --dataset NAME");
  }

  GroupSpec load_spec() const {
    if (!in_file.empty()) {
      const std::string text = read_file(in_file);
      if (!looks_like_orbit_spec(text))
        throw Error("'" + in_file + "' is not an orbit spec (no VERTICES: section)");
      return parse_group_spec(text);
    }
    if (!dataset.empty()) return load_orbit_spec(dataset);
    throw Error("need --in FILE or --dataset NAME");
  }
};

// --group S3 / A4 / comma-separated generator names; default all generators.
Group subgroup_of(const GroupSpec& spec, std::string names) {
  if (names.empty() || names == "all") return spec.group;
  if (names == "S3" || names == "s3") names = "gamma,delta";
  if (names == "A4" || names == "a4") names = "alpha,beta";
  std::vector<NamedPermutation> gens;
  std::stringstream ss(names);
  std::string name;
  while (std::getline(ss, name, ',')) {
    bool found = false;
    for (const auto& g : spec.group.generators()) {
      if (g.name == name) {
        gens.push_back(g);
        found = true;
      }
    }
    if (!found) throw Error("no generator named '" + name + "' in the spec");
  }
  return Group(spec.vertices, std::move(gens));
}

json fvector_json(const Complex& x) {
  json j = json::array();
  for (auto c : f_vector(x).counts) j.push_back(c);
  return j;
}

void emit(const json& j, bool as_json, const std::string& plain) {
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << plain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simplicial complexes: orbit expansion, quotients, homology, flips"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json appear after the subcommand
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  // ---- expand
  auto* expand = app.add_subcommand("expand", "expand orbit representatives");
  ComplexInput expand_in;
  expand_in.attach(expand);
  bool expand_fvec = false;
  std::string expand_out;
  expand->add_flag("--fvector", expand_fvec, "also print the f-vector");
  expand->add_option("--out", expand_out, "write the expanded facet file");

  // ---- fvector / euler / neighborly
  auto* fvec_cmd = app.add_subcommand("fvector", "face counts per dimension");
  ComplexInput fvec_in;
  fvec_in.attach(fvec_cmd);
  auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic");
  ComplexInput euler_in;
  euler_in.attach(euler_cmd);
  auto* nb_cmd = app.add_subcommand("neighborly", "largest k with complete (k-1)-skeleton");
  ComplexInput nb_in;
  nb_in.attach(nb_cmd);

  // ---- check
  auto* check = app.add_subcommand("check", "structural checks");
  check->require_subcommand(1);
  auto* check_pm = check->add_subcommand("pseudomanifold", "pure/closed/ridges/connected");
  ComplexInput pm_in;
  pm_in.attach(check_pm);
  auto* check_pure = check->add_subcommand("pure", "purity of a group action");
  auto* check_good = check->add_subcommand("good", "goodness of a group action");
  ComplexInput pure_in, good_in;
  pure_in.attach(check_pure);
  good_in.attach(check_good);
  std::string pure_group = "all", good_group = "all";
  check_pure->add_option("--group", pure_group, "S3, A4, or generator names");
  check_good->add_option("--group", good_group, "S3, A4, or generator names");
  auto* check_mfd = check->add_subcommand("manifold", "certify all vertex links as spheres");
  ComplexInput mfd_in;
  mfd_in.attach(check_mfd);
  std::uint64_t mfd_seed = 0;
  std::int64_t mfd_moves = 10000;
  double mfd_seconds = 600;
  check_mfd->add_option("--seed", mfd_seed, "search seed")->required();
  check_mfd->add_option("--max-moves", mfd_moves, "move budget per link");
  check_mfd->add_option("--max-seconds", mfd_seconds, "time budget per link");

  // ---- homology
  auto* hom = app.add_subcommand("homology", "Betti numbers and torsion");
  ComplexInput hom_in;
  hom_in.attach(hom);
  std::string ring_name = "z";
  hom->add_option("--ring", ring_name, "z, q, gf2, gf3, gf5, ...");

  // ---- quotient
  auto* quot = app.add_subcommand("quotient", "complex modulo a pure action");
  ComplexInput quot_in;
  quot_in.attach(quot);
  std::string quot_group = "all", quot_naming, quot_compare, quot_out;
  bool quot_check_good = false;
  quot->add_option("--group", quot_group, "S3, A4, or generator names");
  quot->add_option("--naming", quot_naming, "naming-map dataset or file");
  quot->add_flag("--check-good", quot_check_good, "report goodness first");
  quot->add_option("--compare", quot_compare, "complex to compare up to isomorphism");
  quot->add_option("--out", quot_out, "write the quotient facet file");

  // ---- reduce
  auto* reduce = app.add_subcommand("reduce", "bistellar flip reduction");
  ComplexInput reduce_in;
  reduce_in.attach(reduce);
  std::uint64_t reduce_seed = 0;
  std::int64_t reduce_moves = 100000, reduce_target = 0, reduce_checkpoint = 0;
  double reduce_seconds = 60;
  std::string reduce_out, reduce_log;
  reduce->add_option("--seed", reduce_seed, "search seed")->required();
  reduce->add_option("--max-moves", reduce_moves, "move budget");
  reduce->add_option("--max-seconds", reduce_seconds, "time budget");
  reduce->add_option("--target-vertices", reduce_target, "stop when f0 reaches this");
  reduce->add_option("--checkpoint-every", reduce_checkpoint,
                     "verify GF(2) homology every N moves");
  reduce->add_option("--out", reduce_out, "write the best complex found");
  reduce->add_option("--log", reduce_log, "write the move log");

  // ---- iso / aut
  auto* iso = app.add_subcommand("iso", "isomorphism test");
  std::vector<std::string> iso_args;
  iso->add_option("complexes", iso_args, "two files or dataset names")
      ->expected(2)
      ->required();
  auto* aut = app.add_subcommand("aut", "automorphism group");
  ComplexInput aut_in;
  aut_in.attach(aut);

  // ---- links
  auto* links = app.add_subcommand("links", "vertex links");
  ComplexInput links_in;
  links_in.attach(links);
  std::string links_vertex;
  links->add_option("--vertex", links_vertex, "single vertex label");

  // ---- product
  auto* product = app.add_subcommand("product", "staircase triangulation of a product");
  std::vector<std::string> product_args;
  product->add_option("complexes", product_args, "two files or dataset names")
      ->expected(2)
      ->required();
  std::string product_out;
  product->add_option("--out", product_out, "write the product facet file");

  // ---- dataset
  auto* dataset = app.add_subcommand("dataset", "built-in datasets");
  dataset->require_subcommand(1);
  auto* ds_list = dataset->add_subcommand("list", "list datasets");
  auto* ds_emit = dataset->add_subcommand("emit", "write a dataset payload");
  std::string ds_name, ds_out;
  ds_emit->add_option("name", ds_name, "dataset name")->required();
  ds_emit->add_option("--out", ds_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*expand) {
      const GroupSpec spec = expand_in.load_spec();
      const auto result = orbit_expand(spec.reps, spec.group);
      std::map<std::size_t, std::size_t> hist;
      for (auto len : result.orbit_lengths) ++hist[len];
      json j{{"facets", result.complex.facet_count()},
             {"group_order", spec.group.order()},
             {"orbit_lengths", json::object()}};
      std::string plain = "facets: " + std::to_string(result.complex.facet_count()) +
                          "\ngroup order: " + std::to_string(spec.group.order()) + "\n";
      for (const auto& [len, count] : hist) {
        j["orbit_lengths"][std::to_string(len)] = count;
        plain += "orbits of length " + std::to_string(len) + ": " +
                 std::to_string(count) + "\n";
      }
      if (expand_fvec) {
        j["f_vector"] = fvector_json(result.complex);
        plain += "f-vector: " + f_vector(result.complex).to_string() + "\n";
      }
      if (!expand_out.empty()) write_file(expand_out, result.complex.render());
      emit(j, as_json, plain);
      return 0;
    }

    if (*fvec_cmd) {
      const Complex x = fvec_in.load();
      emit(json{{"f_vector", fvector_json(x)}}, as_json,
           f_vector(x).to_string() + "\n");
      return 0;
    }
    if (*euler_cmd) {
      const Complex x = euler_in.load();
      const auto chi = euler_characteristic(x);
      emit(json{{"euler", chi}}, as_json, std::to_string(chi) + "\n");
      return 0;
    }
    if (*nb_cmd) {
      const Complex x = nb_in.load();
      const int k = neighborliness(x);
      emit(json{{"neighborliness", k}}, as_json, std::to_string(k) + "\n");
      return 0;
    }

    if (*check_pm) {
      const Complex x = pm_in.load();
      const auto r = pseudomanifold_check(x);
      json j{{"pure", r.pure},
             {"closed", r.closed},
             {"ridge_degrees_ok", r.ridge_degrees_ok},
             {"strongly_connected", r.strongly_connected}};
      std::string plain;
      for (auto& [k, v] : j.items())
        plain += k + ": " + (v.get<bool>() ? "true" : "false") + "\n";
      emit(j, as_json, plain);
      return r.all() ? 0 : 1;
    }
    if (*check_pure || *check_good) {
      const bool want_good = bool(*check_good);
      const ComplexInput& input = want_good ? good_in : pure_in;
      const GroupSpec spec = input.load_spec();
      const Group group = subgroup_of(spec, want_good ? good_group : pure_group);
      const Complex x = orbit_expand(spec.reps, spec.group).complex;
      const auto report = check_action(x, group);
      json j{{"pure", report.is_pure},
             {"good", report.is_good},
             {"violations", report.violations.size()}};
      std::string plain = std::string("pure: ") + (report.is_pure ? "true" : "false") +
                          "\ngood: " + (report.is_good ? "true" : "false") + "\n";
      for (const auto& v : report.violations) {
        std::string line = "violation:";
        for (const auto& w : v.witness) line += " " + w;
        plain += line + "\n";
      }
      emit(j, as_json, plain);
      return (want_good ? report.is_good : report.is_pure) ? 0 : 1;
    }
    if (*check_mfd) {
      const Complex x = mfd_in.load();
      SearchConfig budget;
      budget.seed = mfd_seed;
      budget.max_moves = mfd_moves;
      budget.max_seconds = mfd_seconds;
      const auto report = certify_manifold(x, budget);
      const char* verdict = report.verdict == ManifoldReport::Verdict::manifold
                                ? "manifold"
                                : (report.verdict == ManifoldReport::Verdict::not_manifold
                                       ? "not_manifold"
                                       : "unknown");
      json j{{"verdict", verdict}, {"links", json::object()}};
      std::string plain = std::string("verdict: ") + verdict + "\n";
      for (const auto& [v, outcome] : report.link_outcomes) {
        j["links"][v] = outcome;
        plain += "  link(" + v + "): " + outcome + "\n";
      }
      emit(j, as_json, plain);
      return report.verdict == ManifoldReport::Verdict::manifold ? 0 : 1;
    }

    if (*hom) {
      const Complex x = hom_in.load();
      const auto t0 = std::chrono::steady_clock::now();
      const auto profile = homology(x, Ring::parse(ring_name));
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      json j{{"ring", profile.ring.name()},
             {"betti", profile.betti},
             {"torsion", profile.torsion},
             {"ranks", profile.ranks},
             {"elapsed_ms", ms}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (*quot) {
      const GroupSpec spec = quot_in.load_spec();
      const Group group = subgroup_of(spec, quot_group);
      const Complex x = orbit_expand(spec.reps, spec.group).complex;
      json j;
      std::string plain;
      if (quot_check_good) {
        const auto report = check_action(x, group);
        j["good"] = report.is_good;
        j["pure"] = report.is_pure;
        plain += std::string("good: ") + (report.is_good ? "true" : "false") + "\n";
      }
      std::unordered_map<std::string, std::string> naming;
      const std::unordered_map<std::string, std::string>* naming_ptr = nullptr;
      if (!quot_naming.empty()) {
        if (quot_naming == "cp3_30_naming") {
          naming = load_naming_map();
        } else {
          for (std::istringstream in(read_file(quot_naming)); !in.eof();) {
            std::string line;
            if (!std::getline(in, line)) break;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.resize(hash);
            std::istringstream ls(line);
            std::string from, to;
            if (ls >> from >> to) naming[from] = to;
          }
        }
        naming_ptr = &naming;
      }
      const auto q = quotient(x, group, naming_ptr);
      j["f_vector"] = fvector_json(q.complex);
      plain += "f-vector: " + f_vector(q.complex).to_string() + "\n";
      if (!quot_compare.empty()) {
        const Complex other = load_complex_arg(quot_compare);
        const bool identical = q.complex.render() == other.render();
        const bool isomorphic = identical || are_isomorphic(q.complex, other).has_value();
        j["identical_labels"] = identical;
        j["isomorphic"] = isomorphic;
        plain += std::string("isomorphic: ") + (isomorphic ? "true" : "false") +
                 (identical ? " (identical labels)" : "") + "\n";
        if (!isomorphic) {
          emit(j, as_json, plain);
          return 1;
        }
      }
      if (!quot_out.empty()) write_file(quot_out, q.complex.render());
      emit(j, as_json, plain);
      return 0;
    }

    if (*reduce) {
      const Complex x = reduce_in.load();
      SearchConfig cfg;
      cfg.seed = reduce_seed;
      cfg.max_moves = reduce_moves;
      cfg.max_seconds = reduce_seconds;
      cfg.target_vertices = reduce_target;
      bool homology_broken = false;
      std::vector<std::int64_t> reference_betti;
      if (reduce_checkpoint > 0) {
        reference_betti = homology(x, Ring::GF(2)).betti;
        cfg.checkpoint_every = reduce_checkpoint;
        cfg.checkpoint = [&](const Complex& c, std::int64_t) {
          if (homology(c, Ring::GF(2)).betti != reference_betti) {
            homology_broken = true;
            return false;
          }
          return true;
        };
      }
      const auto result = reduce_search(x, cfg);
      const char* status = nullptr;
      switch (result.status) {
        case SearchStatus::reached_target: status = "target"; break;
        case SearchStatus::budget_moves: status = "budget"; break;
        case SearchStatus::budget_seconds: status = "budget"; break;
        case SearchStatus::stuck: status = "stuck"; break;
        case SearchStatus::stopped: status = "stopped"; break;
      }
      json j{{"status", status},
             {"moves", result.moves_applied},
             {"best_at", result.best_at},
             {"best_f_vector", fvector_json(result.best_complex)}};
      std::string plain = std::string("status: ") + status +
                          "\nmoves: " + std::to_string(result.moves_applied) +
                          "\nbest f-vector: " +
                          f_vector(result.best_complex).to_string() + "\n";
      if (homology_broken) {
        j["homology_checkpoint"] = "changed";
        plain += "homology checkpoint: CHANGED (bug)\n";
      } else if (reduce_checkpoint > 0) {
        j["homology_checkpoint"] = "unchanged";
        plain += "homology checkpoint: unchanged\n";
      }
      if (!reduce_out.empty()) write_file(reduce_out, result.best_complex.render());
      if (!reduce_log.empty()) write_file(reduce_log, result.log.render());
      emit(j, as_json, plain);
      return homology_broken ? 1 : 0;
    }

    if (*iso) {
      const Complex a = load_complex_arg(iso_args[0]);
      const Complex b = load_complex_arg(iso_args[1]);
      const auto found = are_isomorphic(a, b);
      if (!found) {
        emit(json{{"isomorphic", false}}, as_json, "not isomorphic\n");
        return 1;
      }
      json j{{"isomorphic", true}, {"map", json::object()}};
      std::string plain;
      for (VertexId v = 0; v < a.vertices().size(); ++v) {
        const std::string& from = a.vertices().label(v);
        const std::string& to = b.vertices().label((*found)[v]);
        j["map"][from] = to;
        plain += from + " -> " + to + "\n";
      }
      emit(j, as_json, plain);
      return 0;
    }

    if (*aut) {
      const Complex x = aut_in.load();
      const auto group = automorphism_group(x);
      json j{{"order", group.order}, {"generators", json::array()}};
      std::string plain = "order: " + std::to_string(group.order) + "\n";
      for (const auto& g : group.generators) {
        const std::string cycles = g.to_cycles(x.vertices());
        j["generators"].push_back(cycles);
        plain += cycles + "\n";
      }
      emit(j, as_json, plain);
      return 0;
    }

    if (*links) {
      const Complex x = links_in.load();
      json j = json::object();
      std::string plain;
      for (VertexId v = 0; v < x.vertices().size(); ++v) {
        const std::string& label = x.vertices().label(v);
        if (!links_vertex.empty() && label != links_vertex) continue;
        const Complex lk = link(x, Face{v});
        j[label] = fvector_json(lk);
        plain += "link(" + label + "): f = " + f_vector(lk).to_string() + "\n";
      }
      if (!links_vertex.empty() && j.empty())
        throw Error("vertex '" + links_vertex + "' not in complex");
      emit(j, as_json, plain);
      return 0;
    }

    if (*product) {
      const Complex a = load_complex_arg(product_args[0]);
      const Complex b = load_complex_arg(product_args[1]);
      const Complex p = staircase_product(a, b, a.vertices().labels(),
                                          b.vertices().labels());
      json j{{"f_vector", fvector_json(p)}, {"facets", p.facet_count()}};
      if (!product_out.empty()) write_file(product_out, p.render());
      emit(j, as_json, "f-vector: " + f_vector(p).to_string() + "\n");
      return 0;
    }

    if (*ds_list) {
      json j = json::array();
      std::string plain;
      for (const auto& name : dataset_names()) {
        const Dataset& d = load_dataset(name);
        j.push_back({{"name", name}, {"sha256", d.sha256}, {"note", d.note}});
        plain += name + "  " + d.note + "\n";
      }
      emit(j, as_json, plain);
      return 0;
    }
    if (*ds_emit) {
      const Dataset& d = load_dataset(ds_name);
      if (ds_out.empty())
        std::cout << d.payload;
      else
        write_file(ds_out, d.payload);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
