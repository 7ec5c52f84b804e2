#include "eulercert/ranks.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eulercert/error.hpp"

namespace eulercert {

namespace {

using Members = std::vector<std::size_t>;

Members conjugate_members(const Members& members, const std::vector<std::uint32_t>& table) {
  Members out;
  out.reserve(members.size());
  for (std::size_t i : members) out.push_back(table[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Members conjugate_members(const ElementIndex& elems, const Members& members, const Permutation& g) {
  Members out;
  out.reserve(members.size());
  for (std::size_t i : members) out.push_back(elems.index_of(elems[i].conjugate_by(g)));
  std::sort(out.begin(), out.end());
  return out;
}

// Closure of `members` under multiplication by powers of x (x commutes with all).
Members extend_members(const ElementIndex& elems, const Members& members, std::size_t x, std::uint64_t p) {
  Members out;
  out.reserve(members.size() * p);
  for (std::size_t m : members) {
    Permutation y = elems[m];
    for (std::uint64_t k = 0; k < p; ++k) {
      out.push_back(elems.index_of(y));
      y = y * elems[x];
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementaryAbelian make_elementary(const GroupPtr& group, std::uint64_t p, Members members) {
  const ElementIndex& elems = group->elements();
  ElementaryAbelian e;
  e.parent = group;
  e.p = p;
  e.members = std::move(members);
  // Greedy generators in index order.
  std::set<std::size_t> span{elems.index_of(group->identity())};
  for (std::size_t i : e.members) {
    if (span.count(i)) continue;
    e.generators.push_back(elems[i]);
    ++e.rank;
    Members grown = extend_members(elems, Members(span.begin(), span.end()), i, p);
    span = std::set<std::size_t>(grown.begin(), grown.end());
  }
  return e;
}

struct Enumeration {
  // Orbits of subgroups under conjugation, per rank, each sorted.
  std::vector<std::vector<std::vector<Members>>> orbits_by_rank;
};

Enumeration enumerate(const GroupPtr& group, std::uint64_t p) {
  Enumeration out;
  if (!is_prime(p) || group->order() % p != 0) return out;
  const ElementIndex& elems = group->elements();
  const auto& conj = group->generator_conjugation();
  std::set<Members> seen;

  auto register_orbit = [&](const Members& start) {
    std::vector<Members> orbit{start};
    seen.insert(start);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& table : conj) {
        Members y = conjugate_members(orbit[i], table);
        if (seen.insert(y).second) orbit.push_back(std::move(y));
      }
    }
    std::sort(orbit.begin(), orbit.end());
    return orbit;
  };

  const std::size_t identity = elems.index_of(group->identity());
  std::vector<std::size_t> order_p;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems.order_of(i) == p) order_p.push_back(i);
  }

  std::vector<std::vector<Members>> level;
  for (std::size_t x : order_p) {
    Members cyc = extend_members(elems, {identity}, x, p);
    if (!seen.count(cyc)) level.push_back(register_orbit(cyc));
  }
  while (!level.empty()) {
    std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    out.orbits_by_rank.push_back(level);
    std::vector<std::vector<Members>> next;
    for (const auto& orbit : level) {
      const Members& rep = orbit.front();
      for (std::size_t x : order_p) {
        if (std::binary_search(rep.begin(), rep.end(), x)) continue;
        const bool central = std::all_of(rep.begin(), rep.end(), [&](std::size_t m) {
          return elems[m].commutes_with(elems[x]);
        });
        if (!central) continue;
        Members bigger = extend_members(elems, rep, x, p);
        if (!seen.count(bigger)) next.push_back(register_orbit(bigger));
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

Subgroup ElementaryAbelian::subgroup() const { return subgroup_from_elements(parent, members); }

std::vector<ElementaryAbelian> elementary_abelians(const GroupPtr& group, std::uint64_t p,
                                                   bool up_to_conjugacy) {
  Enumeration en = enumerate(group, p);
  std::vector<ElementaryAbelian> out;
  for (const auto& level : en.orbits_by_rank) {
    std::vector<Members> chosen;
    for (const auto& orbit : level) {
      if (up_to_conjugacy) {
        chosen.push_back(orbit.front());
      } else {
        chosen.insert(chosen.end(), orbit.begin(), orbit.end());
      }
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto& m : chosen) out.push_back(make_elementary(group, p, std::move(m)));
  }
  return out;
}

unsigned p_rank(const GroupPtr& group, std::uint64_t p) {
  if (!is_prime(p) || group->order() % p != 0) return 0;
  if (p_part(group->order(), p) == p) return 1;
  return static_cast<unsigned>(enumerate(group, p).orbits_by_rank.size());
}

unsigned rank(const GroupPtr& group) {
  unsigned r = 0;
  for (std::uint64_t p : prime_divisors(group->order())) r = std::max(r, p_rank(group, p));
  return r;
}

std::vector<std::uint64_t> maximal_rank_primes(const GroupPtr& group) {
  std::vector<std::pair<std::uint64_t, unsigned>> ranks;
  unsigned r = 0;
  for (std::uint64_t p : prime_divisors(group->order())) {
    ranks.emplace_back(p, p_rank(group, p));
    r = std::max(r, ranks.back().second);
  }
  std::vector<std::uint64_t> out;
  for (const auto& [p, rp] : ranks) {
    if (rp == r && rp > 0) out.push_back(p);
  }
  return out;
}

bool contains_p_cube(const GroupPtr& group, std::uint64_t p) { return p_rank(group, p) >= 3; }

std::optional<std::size_t> PosetGraph::find(const std::vector<std::size_t>& members) const {
  const unsigned r = members.size() == p ? 1 : 2;
  auto it = std::lower_bound(vertices.begin(), vertices.end(), members,
                             [r](const ElementaryAbelian& v, const Members& m) {
                               return v.rank != r ? v.rank < r : v.members < m;
                             });
  if (it != vertices.end() && it->members == members) return static_cast<std::size_t>(it - vertices.begin());
  return std::nullopt;
}

std::size_t PosetGraph::act(const Permutation& g, std::size_t v) const {
  auto found = find(conjugate_members(group->elements(), vertices.at(v).members, g));
  if (!found) throw NotAMember("element does not act on the poset");
  return *found;
}

PosetGraph build_poset_graph(const GroupPtr& group, std::uint64_t p) {
  const unsigned rp = p_rank(group, p);
  if (rp >= 3) {
    throw DimensionError("p-rank " + std::to_string(rp) + " at p = " + std::to_string(p) +
                         "; the poset realization is not a graph");
  }
  PosetGraph g;
  g.group = group;
  g.p = p;
  g.vertices = elementary_abelians(group, p, false);
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    if (g.vertices[v].rank != 2) continue;
    const auto& members = g.vertices[v].members;
    for (std::size_t u = 0; u < g.vertices.size() && g.vertices[u].rank == 1; ++u) {
      const auto& sub = g.vertices[u].members;
      if (std::includes(members.begin(), members.end(), sub.begin(), sub.end())) g.edges.emplace_back(u, v);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (const auto& table : group->generator_conjugation()) {
    std::vector<std::size_t> action;
    for (const auto& v : g.vertices) action.push_back(*g.find(conjugate_members(v.members, table)));
    g.generator_action.push_back(std::move(action));
  }
  return g;
}

namespace {

// Orbits of a set of points under permutations given as index maps.
std::vector<std::vector<std::size_t>> orbits(std::size_t n, const std::vector<std::vector<std::size_t>>& action) {
  std::vector<bool> done(n, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::vector<std::size_t> orbit{s};
    done[s] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (const auto& a : action) {
        if (!done[a[orbit[i]]]) {
          done[a[orbit[i]]] = true;
          orbit.push_back(a[orbit[i]]);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace

QuotientGraphOfGroups graph_of_groups(const GroupPtr& group, std::uint64_t p) {
  QuotientGraphOfGroups q;
  q.base = build_poset_graph(group, p);
  const PosetGraph& base = q.base;
  const std::size_t nv = base.vertices.size();
  const ElementIndex& elems = group->elements();

  std::vector<std::size_t> vertex_orbit_of(nv);
  for (const auto& orbit : orbits(nv, base.generator_action)) {
    const std::size_t rep = orbit.front();
    for (std::size_t v : orbit) vertex_orbit_of[v] = q.vertex_orbits.size();
    q.vertex_orbits.push_back({rep, orbit.size(), normalizer(group, base.vertices[rep].subgroup())});
  }

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_index;
  for (std::size_t e = 0; e < base.edges.size(); ++e) edge_index[base.edges[e]] = e;
  std::vector<std::vector<std::size_t>> edge_action;
  for (const auto& a : base.generator_action) {
    std::vector<std::size_t> act;
    for (const auto& [u, v] : base.edges) act.push_back(edge_index.at({a[u], a[v]}));
    edge_action.push_back(std::move(act));
  }
  for (const auto& orbit : orbits(base.edges.size(), edge_action)) {
    const std::size_t rep = orbit.front();
    const auto [u, v] = base.edges[rep];
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (base.act(elems[i], u) == u && base.act(elems[i], v) == v) members.push_back(i);
    }
    q.edge_orbits.push_back({rep, orbit.size(), subgroup_from_elements(group, members), vertex_orbit_of[u],
                             vertex_orbit_of[v]});
  }

  // Component of vertex 0.
  std::vector<std::vector<std::size_t>> adjacency(nv);
  for (const auto& [u, v] : base.edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  std::vector<bool> in_component(nv, false);
  std::size_t reached = 0;
  if (nv > 0) {
    std::vector<std::size_t> stack{0};
    in_component[0] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      ++reached;
      for (std::size_t w : adjacency[v]) {
        if (!in_component[w]) {
          in_component[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  q.connected = reached == nv;
  if (!q.connected) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (in_component[base.act(elems[i], 0)]) members.push_back(i);
    }
    q.component_stabilizer = subgroup_from_elements(group, members);
  }
  return q;
}

}  // namespace eulercert
