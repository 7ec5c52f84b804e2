#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "eulercert/permgroup.hpp"

namespace eulercert {

/// An elementary abelian p-subgroup (Z/p)^rank of `parent`.
struct ElementaryAbelian {
  GroupPtr parent;
  std::uint64_t p = 0;
  unsigned rank = 0;
  std::vector<Permutation> generators;
  /// Sorted indices into parent->elements(); this is also the canonical key.
  std::vector<std::size_t> members;

  Subgroup subgroup() const;
  std::uint64_t order() const { return members.size(); }
};

/// Elementary abelian p-subgroups of rank >= 1, sorted by rank and then by
/// member list. With `up_to_conjugacy` one representative per class is
/// returned, namely the orbit's least member list.
std::vector<ElementaryAbelian> elementary_abelians(const GroupPtr& group, std::uint64_t p,
                                                   bool up_to_conjugacy);

unsigned p_rank(const GroupPtr& group, std::uint64_t p);
/// Maximum of p_rank over the primes dividing |G|; 0 for the trivial group.
unsigned rank(const GroupPtr& group);
std::vector<std::uint64_t> maximal_rank_primes(const GroupPtr& group);
bool contains_p_cube(const GroupPtr& group, std::uint64_t p);

/// Realization of the poset of nontrivial elementary abelian p-subgroups
/// when r_p(G) <= 2.
struct PosetGraph {
  GroupPtr group;
  std::uint64_t p = 0;
  std::vector<ElementaryAbelian> vertices;             // rank 1 first, then rank 2
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (rank-1 vertex, rank-2 vertex)
  /// generator_action[i][v]: vertex index of vertices[v] conjugated by generator i.
  std::vector<std::vector<std::size_t>> generator_action;

  /// Vertex index of vertices[v]^g for an arbitrary element g.
  std::size_t act(const Permutation& g, std::size_t v) const;
  std::optional<std::size_t> find(const std::vector<std::size_t>& members) const;
};

/// Throws DimensionError when r_p(G) >= 3.
PosetGraph build_poset_graph(const GroupPtr& group, std::uint64_t p);

struct VertexOrbit {
  std::size_t representative;
  std::size_t size;
  Subgroup stabilizer;  // N_G(E)
};

struct EdgeOrbit {
  std::size_t representative;  // index into PosetGraph::edges
  std::size_t size;
  Subgroup stabilizer;
  std::size_t rank_one_orbit;  // indices into vertex_orbits
  std::size_t rank_two_orbit;
};

struct QuotientGraphOfGroups {
  PosetGraph base;
  std::vector<VertexOrbit> vertex_orbits;
  std::vector<EdgeOrbit> edge_orbits;
  bool connected = false;
  /// Stabilizer of the component containing vertex 0 when not connected.
  std::optional<Subgroup> component_stabilizer;
};

QuotientGraphOfGroups graph_of_groups(const GroupPtr& group, std::uint64_t p);

}  // namespace eulercert
