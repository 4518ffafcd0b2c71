#include "symcube/datasets.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "symcube/sha256.hpp"

// Embedded copies of the data files under src/data/ (generated by CMake).
extern const char kDataS2s2s2_124[];
extern const char kDataCp3_30[];
extern const char kDataCp3_18[];
extern const char kDataCp3_30Naming[];

namespace symcube {

namespace {

constexpr const char* kDigestS2s2s2_124 =
    "beee5382c26f0e41483bef4bc4c40c20a5ed0f118f550c59f2717d3d6fc44c19";
constexpr const char* kDigestCp3_30 =
    "59a8eae9ea5b83f787b7256f3e18e0edb38ddce8aafb6f9868decc7a30b8a683";
constexpr const char* kDigestCp3_18 =
    "abbbff080ba6c3a89c36de2538cb3bffe8d101626f6ce4f8d17393ab44833664";
constexpr const char* kDigestCp3_30Naming =
    "8e602a4efae2da738eeb2596d1301f9fa55337aa18fa6a17f85b190ce94af29e";

Dataset make_dataset(const std::string& name) {
  Dataset d;
  d.name = name;
  if (name == "s2s2s2_124") {
    d.kind = Dataset::Kind::orbit_spec;
    d.payload = kDataS2s2s2_124;
    d.sha256 = kDigestS2s2s2_124;
    d.expected_f_vector = {124, 1908, 11740, 34140, 50532, 36876, 10536};
    d.expected_orbits = {{72, 145}, {24, 4}};
    d.note = "124-vertex triangulation of S^2 x S^2 x S^2 with S3 x A4 symmetry";
  } else if (name == "cp3_30") {
    d.kind = Dataset::Kind::orbit_spec;
    d.payload = kDataCp3_30;
    d.sha256 = kDigestCp3_30;
    d.expected_f_vector = {30, 362, 2066, 5810, 8470, 6146, 1756};
    d.expected_orbits = {{12, 145}, {4, 4}};
    d.note = "30-vertex triangulation of CP^3 (S3-quotient of the 124-vertex complex)";
  } else if (name == "cp3_18") {
    d.kind = Dataset::Kind::facet_list;
    d.payload = kDataCp3_18;
    d.sha256 = kDigestCp3_18;
    d.expected_f_vector = {18, 153, 783, 2110, 3021, 2177, 622};
    d.note = "18-vertex triangulation of CP^3 found by bistellar reduction";
  } else if (name == "cp3_30_naming") {
    d.kind = Dataset::Kind::naming_map;
    d.payload = kDataCp3_30Naming;
    d.sha256 = kDigestCp3_30Naming;
    d.note = "orbit naming for the quotient map V124 -> V30";
  } else {
    throw Error("unknown dataset '" + name + "'");
  }
  const std::string digest = sha256_hex(d.payload);
  if (digest != d.sha256)
    throw Error("dataset '" + name + "' payload digest mismatch: " + digest);
  return d;
}

}  // namespace

const Dataset& load_dataset(const std::string& name) {
  static std::unordered_map<std::string, Dataset> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_dataset(name)).first;
  return it->second;
}

std::vector<std::string> dataset_names() {
  return {"s2s2s2_124", "cp3_30", "cp3_18", "cp3_30_naming"};
}

GroupSpec load_orbit_spec(const std::string& name) {
  const Dataset& d = load_dataset(name);
  if (d.kind != Dataset::Kind::orbit_spec)
    throw Error("dataset '" + name + "' is not an orbit spec");
  return parse_group_spec(d.payload);
}

Complex load_facet_complex(const std::string& name) {
  const Dataset& d = load_dataset(name);
  if (d.kind != Dataset::Kind::facet_list)
    throw Error("dataset '" + name + "' is not a facet list");
  return parse_facets(d.payload).complex;
}

std::unordered_map<std::string, std::string> load_naming_map() {
  const Dataset& d = load_dataset("cp3_30_naming");
  std::unordered_map<std::string, std::string> map;
  std::size_t pos = 0;
  const std::string& text = d.payload;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string from, to;
    if (ls >> from >> to) map[from] = to;
  }
  return map;
}

// ---------------------------------------------------------------------------
// Programmatic group actions

namespace {

int wrap6(int i) { return (i - 1) % 6 + 1; }

std::string u(int i, int j) { return "u" + std::to_string(i) + std::to_string(j); }

// subscripts of an x/v vertex under a value permutation s: {1,2,3,4}->{1,2,3,4}
std::string value_image(const std::string& label, const std::array<int, 5>& s) {
  std::string out;
  out.push_back(label[0]);
  for (std::size_t k = 1; k < label.size(); ++k)
    out.push_back(char('0' + s[label[k] - '0']));
  return out;
}

// position permutation: the subscript in position p moves to position pi[p]
std::string position_image(const std::string& label, const std::array<int, 4>& pi) {
  std::string subs = label.substr(1);
  std::string out = subs;
  for (std::size_t p = 0; p < subs.size(); ++p) out[pi[p + 1] - 1] = subs[p];
  return label.substr(0, 1) + out;
}

Permutation perm_from_map(const VertexTable& table,
                          const std::unordered_map<std::string, std::string>& map) {
  std::vector<VertexId> images(table.size());
  for (VertexId v = 0; v < table.size(); ++v) {
    const std::string& from = table.label(v);
    auto it = map.find(from);
    images[v] = table.id_of(it == map.end() ? from : it->second);
  }
  return Permutation(std::move(images));
}

}  // namespace

VertexTable v124_table() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = 1; k <= 4; ++k)
        labels.push_back("x" + std::to_string(i) + std::to_string(j) +
                         std::to_string(k));
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q)
      for (int r = 1; r <= 4; ++r)
        if (p != q && q != r && p != r)
          labels.push_back("v" + std::to_string(p) + std::to_string(q) +
                           std::to_string(r));
  for (int i = 1; i <= 6; ++i)
    for (int j = 1; j <= 6; ++j) labels.push_back(u(i, j));
  return VertexTable(std::move(labels));
}

VertexTable v30_table() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      labels.push_back("x" + std::to_string(i) + std::to_string(j));
  for (int i = 1; i <= 4; ++i) labels.push_back("y" + std::to_string(i));
  for (int i = 1; i <= 4; ++i) labels.push_back("v" + std::to_string(i));
  for (int j = 1; j <= 6; ++j) labels.push_back("u" + std::to_string(j));
  return VertexTable(std::move(labels));
}

Group builtin_action(BuiltinAction which) {
  if (which == BuiltinAction::A4_on_V30) {
    const VertexTable table = v30_table();
    const char* alpha =
        "(x11 x22 x33)(x12 x23 x31)(x13 x21 x32)(x14 x24 x34)(x41 x42 x43)"
        "(y1 y2 y3)(v1 v2 v3)(u1 u2 u4)(u3 u6 u5)";
    const char* beta =
        "(x11 x22 x44)(x12 x24 x41)(x21 x42 x14)(x13 x23 x43)(x31 x32 x34)"
        "(y1 y2 y4)(v1 v2 v4)(u1 u3 u2)(u4 u5 u6)";
    std::vector<NamedPermutation> gens{
        {"alpha", Permutation::from_cycles(alpha, table)},
        {"beta", Permutation::from_cycles(beta, table)}};
    return Group(table, std::move(gens));
  }

  const VertexTable table = v124_table();
  std::unordered_map<std::string, std::string> alpha_map, beta_map, gamma_map,
      delta_map;

  // u-vertex cycles; first subscripts wrap modulo 6
  auto add_cycle = [](std::unordered_map<std::string, std::string>& map,
                      std::initializer_list<std::string> cyc) {
    auto it = cyc.begin();
    std::string first = *it;
    std::string prev = first;
    ++it;
    for (; it != cyc.end(); ++it) {
      map[prev] = *it;
      prev = *it;
    }
    map[prev] = first;
  };
  for (int i = 1; i <= 6; ++i) {
    add_cycle(alpha_map, {u(i, 1), u(i, 2), u(i, 4)});
    add_cycle(alpha_map, {u(i, 6), u(i, 5), u(wrap6(i + 3), 3)});
    add_cycle(beta_map, {u(i, 1), u(i, 3), u(wrap6(i + 3), 2)});
    add_cycle(beta_map, {u(i, 4), u(i, 5), u(wrap6(i + 3), 6)});
    add_cycle(gamma_map, {u(1, i), u(2, i), u(3, i)});
    add_cycle(gamma_map, {u(4, i), u(5, i), u(6, i)});
    add_cycle(delta_map, {u(1, i), u(6, i)});
    add_cycle(delta_map, {u(2, i), u(5, i)});
    add_cycle(delta_map, {u(3, i), u(4, i)});
  }

  // value action (alpha, beta) and position action (gamma, delta) on x/v
  const std::array<int, 5> alpha_vals = {0, 2, 3, 1, 4};  // (1 2 3)
  const std::array<int, 5> beta_vals = {0, 2, 4, 3, 1};   // (1 2 4)
  const std::array<int, 4> gamma_pos = {0, 2, 3, 1};      // (1 2 3)
  const std::array<int, 4> delta_pos = {0, 2, 1, 3};      // (1 2)
  for (VertexId v = 0; v < table.size(); ++v) {
    const std::string& l = table.label(v);
    if (l[0] == 'u') continue;
    alpha_map[l] = value_image(l, alpha_vals);
    beta_map[l] = value_image(l, beta_vals);
    gamma_map[l] = position_image(l, gamma_pos);
    delta_map[l] = position_image(l, delta_pos);
  }

  std::vector<NamedPermutation> gens;
  if (which == BuiltinAction::A4_on_V124) {
    gens.push_back({"alpha", perm_from_map(table, alpha_map)});
    gens.push_back({"beta", perm_from_map(table, beta_map)});
  } else {
    gens.push_back({"gamma", perm_from_map(table, gamma_map)});
    gens.push_back({"delta", perm_from_map(table, delta_map)});
  }
  return Group(table, std::move(gens));
}

}  // namespace symcube
