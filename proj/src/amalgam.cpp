#include "eulercert/amalgam.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "eulercert/error.hpp"
#include "eulercert/io.hpp"

namespace eulercert {

using Json = nlohmann::json;

namespace {

constexpr const char* kLocalSchema = "eulercert.local_certificate/v1";

GroupPtr group_ref(const Json& j, const std::filesystem::path& base) {
  if (j.is_string()) return io::load_group(base / j.get<std::string>());
  if (j.is_object()) return io::group_from_json(j);
  throw FormatError("group reference must be a path or an inline group, got " + j.dump());
}

Character construct_character(const Json& j, const GroupPtr& group) {
  const std::string kind = j.at("construct").get<std::string>();
  if (kind == "normal_sylow") return normal_sylow_effective(group, j.at("prime").get<std::uint64_t>());
  if (kind == "central_induction") return central_induction(group, j.value("index", std::size_t{0}));
  throw FormatError("unknown character construction \"" + kind + "\"");
}

// The graph subgroup <(e_i, theta(e_i))> on deg(E) + deg(G_v) points.
GroupPtr graph_subgroup(const EdgeMap& edge, std::size_t end, std::size_t vertex_degree) {
  const auto& gens = edge.group->generators();
  const auto& images = edge.ends[end].images;
  const std::size_t n = edge.group->degree();
  std::vector<Permutation> pairs;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Point> img(n + vertex_degree);
    for (std::size_t x = 0; x < n; ++x) img[x] = gens[i](static_cast<Point>(x));
    for (std::size_t x = 0; x < vertex_degree; ++x) img[n + x] = static_cast<Point>(n + images[i](static_cast<Point>(x)));
    pairs.emplace_back(std::move(img));
  }
  return PermGroup::from_generators(n + vertex_degree, std::move(pairs));
}

std::pair<Permutation, Permutation> split(const Permutation& x, std::size_t n) {
  const auto& img = x.images();
  std::vector<Point> a(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Point> b;
  for (std::size_t i = n; i < img.size(); ++i) b.push_back(static_cast<Point>(img[i] - n));
  return {Permutation(std::move(a)), Permutation(std::move(b))};
}

}  // namespace

GraphOfGroups graph_of_groups_from_json(const Json& j, const std::filesystem::path& base) {
  try {
    if (j.value("schema", std::string{}) != "eulercert.graph_of_groups/v1") {
      throw FormatError("expected schema eulercert.graph_of_groups/v1");
    }
    GraphOfGroups gog;
    gog.name = j.value("name", std::string{});
    gog.equivalence = j.value("equivalence", std::string{});
    for (const auto& v : j.at("vertices")) {
      GroupPtr g = group_ref(v.at("group"), base);
      const Json& c = v.at("character");
      if (c.is_object() && c.contains("construct")) {
        gog.vertices.push_back({g, construct_character(c, g), c});
      } else if (c.is_string()) {
        gog.vertices.push_back({g, ingest_class_function(io::read_json(base / c.get<std::string>()), g), std::nullopt});
      } else {
        gog.vertices.push_back({g, ingest_class_function(c, g), std::nullopt});
      }
    }
    for (const auto& e : j.at("edges")) {
      EdgeMap edge{group_ref(e.at("group"), base), {}};
      const Json& ends = e.at("ends");
      if (!ends.is_array() || ends.size() != 2) throw FormatError("an edge needs exactly two ends");
      for (std::size_t k = 0; k < 2; ++k) {
        const auto vi = ends[k].at("vertex").get<std::size_t>();
        if (vi >= gog.vertices.size()) throw FormatError("edge end refers to missing vertex " + std::to_string(vi));
        EdgeEnd end{vi, {}};
        const Json& imgs = ends[k].at("images");
        if (imgs.size() != edge.group->generators().size()) {
          throw FormatError("edge map lists " + std::to_string(imgs.size()) + " images for " +
                            std::to_string(edge.group->generators().size()) + " generators");
        }
        for (const auto& x : imgs) end.images.push_back(io::permutation_from_json(x, gog.vertices[vi].group->degree()));
        edge.ends[k] = std::move(end);
      }
      gog.edges.push_back(std::move(edge));
    }
    if (j.contains("target")) {
      const Json& t = j.at("target");
      AmalgamTarget target{t.at("name").get<std::string>(), t.at("prime").get<std::uint64_t>(), nullptr};
      if (t.contains("group")) target.group = group_ref(t.at("group"), base);
      gog.target = std::move(target);
    }
    return gog;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("graph of groups: ") + e.what());
  }
}

GraphOfGroups load_graph_of_groups(const std::filesystem::path& path) {
  return graph_of_groups_from_json(io::read_json(path), path.parent_path());
}

Json to_json(const GraphOfGroups& gog) {
  Json vertices = Json::array();
  for (const auto& v : gog.vertices) {
    vertices.push_back({{"group", io::group_to_json(*v.group)},
                        {"character", v.construction ? *v.construction : class_function_to_json(v.character)}});
  }
  Json edges = Json::array();
  for (const auto& e : gog.edges) {
    Json ends = Json::array();
    for (const auto& end : e.ends) {
      Json imgs = Json::array();
      for (const auto& x : end.images) imgs.push_back(io::permutation_to_json(x));
      ends.push_back({{"vertex", end.vertex}, {"images", imgs}});
    }
    edges.push_back({{"group", io::group_to_json(*e.group)}, {"ends", ends}});
  }
  Json j{{"schema", "eulercert.graph_of_groups/v1"},
         {"name", gog.name},
         {"vertices", vertices},
         {"edges", edges},
         {"equivalence", gog.equivalence}};
  if (gog.target) {
    Json t{{"name", gog.target->name}, {"prime", gog.target->prime}};
    if (gog.target->group) t["group"] = io::group_to_json(*gog.target->group);
    j["target"] = t;
  }
  return j;
}

ValidationReport validate(const GraphOfGroups& gog) {
  ValidationReport r;
  if (gog.vertices.empty()) r.problems.push_back("graph has no vertices");

  for (std::size_t ei = 0; ei < gog.edges.size(); ++ei) {
    const EdgeMap& edge = gog.edges[ei];
    for (std::size_t k = 0; k < 2; ++k) {
      EdgeEndCheck c{ei, k, false, false, false, {}};
      const GraphVertex& v = gog.vertices[edge.ends[k].vertex];
      const auto& gens = edge.group->generators();
      const auto& images = edge.ends[k].images;
      const std::string where = "edge " + std::to_string(ei) + " end " + std::to_string(k);
      c.members = true;
      for (std::size_t i = 0; i < images.size() && c.members; ++i) {
        if (!v.group->contains(images[i])) {
          c.members = false;
          c.witness = "image " + images[i].cycle_string() + " of generator " + std::to_string(i) +
                      " is not in the vertex group";
        }
      }
      if (c.members) {
        const GroupPtr graph = graph_subgroup(edge, k, v.group->degree());
        c.homomorphism = graph->order() == edge.group->order();
        if (!c.homomorphism) {
          for (std::size_t i = 0; i < gens.size() && c.witness.empty(); ++i) {
            if (gens[i].order() % images[i].order() != 0) {
              c.witness = "generator " + std::to_string(i) + " " + gens[i].cycle_string() + " has order " +
                          std::to_string(gens[i].order()) + " but its image " + images[i].cycle_string() +
                          " has order " + std::to_string(images[i].order());
            }
          }
          if (c.witness.empty()) {
            for (const auto& x : graph->elements().elements()) {
              auto [a, b] = split(x, edge.group->degree());
              if (a.is_identity() && !b.is_identity()) {
                c.witness = "a relation of the edge group is sent to " + b.cycle_string();
                break;
              }
            }
          }
        } else {
          const GroupPtr image = PermGroup::from_generators(v.group->degree(), images);
          c.injective = image->order() == edge.group->order();
          if (!c.injective) {
            for (const auto& x : graph->elements().elements()) {
              auto [a, b] = split(x, edge.group->degree());
              if (!a.is_identity() && b.is_identity()) {
                c.witness = "nontrivial element " + a.cycle_string() + " is sent to the identity";
                break;
              }
            }
          }
        }
      }
      if (!c.witness.empty()) r.problems.push_back(where + ": " + c.witness);
      r.maps.push_back(std::move(c));
    }
  }

  std::vector<std::size_t> parent(gog.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (const auto& e : gog.edges) parent[root(e.ends[0].vertex)] = root(e.ends[1].vertex);
  r.connected = !gog.vertices.empty();
  for (std::size_t v = 1; v < gog.vertices.size(); ++v) {
    if (root(v) != root(0)) {
      r.connected = false;
      r.problems.push_back("graph is disconnected: vertex " + std::to_string(v) + " is not joined to vertex 0");
      break;
    }
  }
  r.valid = r.problems.empty();
  return r;
}

std::vector<Permutation> edge_map_values(const EdgeMap& edge, std::size_t end, const GraphVertex& vertex) {
  const GroupPtr graph = graph_subgroup(edge, end, vertex.group->degree());
  if (graph->order() != edge.group->order()) throw ValidationError("edge map is not a homomorphism");
  const auto& elems = edge.group->elements();
  std::vector<Permutation> out(elems.size());
  for (const auto& x : graph->elements().elements()) {
    auto [a, b] = split(x, edge.group->degree());
    out[elems.index_of(a)] = std::move(b);
  }
  return out;
}

std::vector<EdgeCompatibility> edge_compatible(const GraphOfGroups& gog) {
  std::vector<EdgeCompatibility> out;
  for (std::size_t ei = 0; ei < gog.edges.size(); ++ei) {
    const EdgeMap& edge = gog.edges[ei];
    const auto& elems = edge.group->elements();
    const auto& ecls = edge.group->classes();
    EdgeCompatibility c{ei, true, {}, {}};
    std::array<std::vector<Permutation>, 2> theta;
    for (std::size_t k = 0; k < 2; ++k) {
      const GraphVertex& v = gog.vertices[edge.ends[k].vertex];
      theta[k] = edge_map_values(edge, k, v);
      std::vector<std::size_t> needed;
      for (const auto& x : theta[k]) needed.push_back(v.group->classes().class_of(x));
      v.character.require(needed, "edge " + std::to_string(ei) + " pullback");
      std::vector<std::optional<Cyclotomic>> values(ecls.size());
      for (std::size_t cl = 0; cl < ecls.size(); ++cl) {
        values[cl] = v.character.at(theta[k][elems.index_of(ecls[cl].representative)]);
      }
      const std::string name = v.character.name().empty() ? "" : "theta" + std::to_string(k) + "^*" + v.character.name();
      c.pullbacks[k] = ClassFunction(edge.group, std::move(values), name);
    }
    const Character& a = gog.vertices[edge.ends[0].vertex].character;
    const Character& b = gog.vertices[edge.ends[1].vertex].character;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const Cyclotomic& x = a.at(theta[0][i]);
      const Cyclotomic& y = b.at(theta[1][i]);
      if (x != y) {
        c.compatible = false;
        c.mismatch = "at " + elems[i].cycle_string() + " of the edge group: " + x.str() + " vs " + y.str();
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

LocalEulerCertificate local_certificate(const GraphOfGroups& gog) {
  const ValidationReport report = validate(gog);
  if (!report.valid) {
    std::string msg;
    for (const auto& p : report.problems) msg += (msg.empty() ? "" : "; ") + p;
    throw ValidationError("invalid graph of groups: " + msg);
  }
  if (!gog.target || gog.target->prime == 0) throw ValidationError("graph of groups declares no target prime");
  LocalEulerCertificate c;
  c.target = gog.target->name;
  c.p = gog.target->prime;
  c.equivalence = gog.equivalence;
  for (const auto& v : gog.vertices) {
    if (v.group->order() % c.p == 0) c.local_rank = std::max(c.local_rank, p_rank(v.group, c.p));
  }
  if (gog.target->group) {
    const unsigned target_rank = p_rank(gog.target->group, c.p);
    if (target_rank != c.local_rank) {
      c.failures.push_back("local " + std::to_string(c.p) + "-rank " + std::to_string(c.local_rank) +
                           " differs from the target's " + std::to_string(target_rank));
    }
  }
  const Rational n = gog.vertices.front().character.degree();
  c.degree = 2 * static_cast<std::uint64_t>(numerator(n));
  for (std::size_t i = 0; i < gog.vertices.size(); ++i) {
    const GraphVertex& v = gog.vertices[i];
    if (v.character.degree() != n) {
      c.failures.push_back("vertex " + std::to_string(i) + " has character degree " + v.character.degree().str() +
                           ", vertex 0 has " + n.str());
    }
    c.vertices.push_back(p_effective_at_rank(v.character, c.p, c.local_rank));
    if (!c.vertices.back().effective) {
      c.failures.push_back("vertex " + std::to_string(i) + " (" + v.group->name() + "): character is not " +
                           std::to_string(c.p) + "-effective");
    }
  }
  c.edges = edge_compatible(gog);
  for (const auto& e : c.edges) {
    if (!e.compatible) c.failures.push_back("edge " + std::to_string(e.edge) + " incompatible " + e.mismatch);
  }
  c.positive = c.failures.empty();
  return c;
}

Json to_json(const ValidationReport& r) {
  Json maps = Json::array();
  for (const auto& m : r.maps) {
    maps.push_back({{"edge", m.edge},
                    {"end", m.end},
                    {"members", m.members},
                    {"homomorphism", m.homomorphism},
                    {"injective", m.injective},
                    {"witness", m.witness}});
  }
  return {{"valid", r.valid}, {"connected", r.connected}, {"maps", maps}, {"problems", r.problems}};
}

Json to_json(const LocalEulerCertificate& c) {
  Json vertices = Json::array();
  for (const auto& v : c.vertices) vertices.push_back(to_json(v));
  Json edges = Json::array();
  for (const auto& e : c.edges) {
    Json pb = Json::array();
    for (const auto& f : e.pullbacks) pb.push_back(f ? class_function_to_json(*f) : Json(nullptr));
    edges.push_back({{"edge", e.edge}, {"compatible", e.compatible}, {"pullbacks", pb}, {"mismatch", e.mismatch}});
  }
  return {{"schema", kLocalSchema},
          {"target", c.target},
          {"prime", c.p},
          {"local_rank", c.local_rank},
          {"degree", c.degree},
          {"vertices", vertices},
          {"edges", edges},
          {"equivalence", c.equivalence},
          {"positive", c.positive},
          {"failures", c.failures}};
}

}  // namespace eulercert
