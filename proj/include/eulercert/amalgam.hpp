#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "eulercert/character.hpp"
#include "eulercert/effectiveness.hpp"

namespace eulercert {

struct EdgeEnd {
  std::size_t vertex = 0;
  /// Images of the edge group's generators in the vertex group.
  std::vector<Permutation> images;
};

struct EdgeMap {
  GroupPtr group;
  std::array<EdgeEnd, 2> ends;
};

struct GraphVertex {
  GroupPtr group;
  Character character;
  /// Set when the character was built from a directive such as
  /// {"construct": "normal_sylow", "prime": 3}; serialized instead of the values.
  std::optional<nlohmann::json> construction;
};

struct AmalgamTarget {
  std::string name;
  std::uint64_t prime = 0;
  GroupPtr group;  // may be null
};

struct GraphOfGroups {
  std::string name;
  std::vector<GraphVertex> vertices;
  std::vector<EdgeMap> edges;
  std::optional<AmalgamTarget> target;
  /// Declared p-equivalence between the amalgam and the target, with its citation.
  std::string equivalence;
};

/// File references are resolved against `base`; groups and characters may also be inline.
GraphOfGroups graph_of_groups_from_json(const nlohmann::json& j, const std::filesystem::path& base);
GraphOfGroups load_graph_of_groups(const std::filesystem::path& path);
/// Self-contained form with every group and character inline.
nlohmann::json to_json(const GraphOfGroups& gog);

struct EdgeEndCheck {
  std::size_t edge = 0;
  std::size_t end = 0;
  bool members = false;  // every image lies in the vertex group
  bool homomorphism = false;
  bool injective = false;
  std::string witness;   // empty when the map is a monomorphism
};

struct ValidationReport {
  bool valid = false;
  bool connected = false;
  std::vector<EdgeEndCheck> maps;
  std::vector<std::string> problems;
};

/// Each edge map is checked through the graph subgroup <(e_i, theta(e_i))>:
/// theta extends to a homomorphism iff that subgroup has order |G_e|, and is
/// then injective iff the image also has order |G_e|.
ValidationReport validate(const GraphOfGroups& gog);

/// theta(e) for every element of the edge group, in the edge group's element order.
/// Throws ValidationError if the map is not a homomorphism.
std::vector<Permutation> edge_map_values(const EdgeMap& edge, std::size_t end, const GraphVertex& vertex);

struct EdgeCompatibility {
  std::size_t edge = 0;
  bool compatible = false;
  /// Pullbacks of the two vertex characters, as class functions on the edge group.
  std::array<std::optional<ClassFunction>, 2> pullbacks;
  std::string mismatch;
};

/// Throws InsufficientData when a vertex character lacks a value on some image.
std::vector<EdgeCompatibility> edge_compatible(const GraphOfGroups& gog);

struct LocalEulerCertificate {
  std::string target;
  std::uint64_t p = 0;
  unsigned local_rank = 0;
  std::uint64_t degree = 0;  // 2n for vertex characters of degree n
  std::vector<PrimeVerdict> vertices;
  std::vector<EdgeCompatibility> edges;
  std::string equivalence;
  bool positive = false;
  std::vector<std::string> failures;
};

/// Throws ValidationError when validate() fails or no target prime is given.
LocalEulerCertificate local_certificate(const GraphOfGroups& gog);

nlohmann::json to_json(const ValidationReport& r);
nlohmann::json to_json(const LocalEulerCertificate& c);

}  // namespace eulercert
