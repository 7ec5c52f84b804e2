#include <map>

#include "doctest.h"
#include "eulercert/error.hpp"
#include "eulercert/ranks.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace eulercert;

TEST_CASE("elementary abelians match subset enumeration") {
  for (const char* name : {"s4", "d8", "q8", "a4", "z2x2", "z2x3", "s3"}) {
    auto g = fixture_group(name);
    auto all = oracle::closure(g->generators());
    for (std::uint64_t p : prime_divisors(g->order())) {
      CAPTURE(name);
      CAPTURE(p);
      auto subsets = oracle::elementary_abelians_by_subsets(all, p);
      CHECK(elementary_abelians(g, p, false).size() == subsets.size());
      CHECK(elementary_abelians(g, p, true).size() == oracle::conjugacy_class_count(subsets, all));
    }
  }
}

TEST_CASE("elementary abelian invariants and conjugation closure") {
  for (const char* name : {"s4", "a5", "gl2_3", "sl3_2", "d8"}) {
    auto g = fixture_group(name);
    const auto& elems = g->elements();
    for (std::uint64_t p : prime_divisors(g->order())) {
      auto reps = elementary_abelians(g, p, true);
      auto all = elementary_abelians(g, p, false);
      std::map<std::vector<std::size_t>, bool> is_rep;
      for (const auto& e : reps) is_rep[e.members] = true;
      for (const auto& e : all) {
        std::uint64_t expected = 1;
        for (unsigned i = 0; i < e.rank; ++i) expected *= p;
        CHECK(e.members.size() == expected);
        CHECK(e.generators.size() == e.rank);
        for (std::size_t i : e.members) {
          CHECK((elems[i].is_identity() || elems.order_of(i) == p));
          for (std::size_t j : e.members) CHECK(elems[i].commutes_with(elems[j]));
        }
      }
      // Every conjugate of a representative is in the full list.
      std::map<std::vector<std::size_t>, bool> in_all;
      for (const auto& e : all) in_all[e.members] = true;
      for (const auto& e : reps) {
        for (std::size_t k = 0; k < elems.size(); k += 7) {
          std::vector<std::size_t> c;
          for (std::size_t i : e.members) c.push_back(elems.index_of(elems[i].conjugate_by(elems[k])));
          std::sort(c.begin(), c.end());
          CHECK(in_all.count(c));
        }
      }
    }
  }
}

TEST_CASE("p-ranks") {
  CHECK(p_rank(fixture_group("s4"), 2) == 2);
  CHECK(p_rank(fixture_group("a5"), 2) == 2);
  CHECK(p_rank(fixture_group("sl3_2"), 2) == 2);
  CHECK(p_rank(fixture_group("gl2_3"), 2) == 2);
  CHECK(p_rank(fixture_group("m11"), 2) == 2);
  CHECK(p_rank(fixture_group("m11"), 3) == 2);
  CHECK(rank(fixture_group("q8")) == 1);
  CHECK(p_rank(fixture_group("z3"), 2) == 0);
  CHECK(elementary_abelians(fixture_group("z3"), 2, true).empty());
  auto q8 = elementary_abelians(fixture_group("q8"), 2, true);
  REQUIRE(q8.size() == 1);
  CHECK(q8[0].rank == 1);
  CHECK(maximal_rank_primes(fixture_group("m11")) == std::vector<std::uint64_t>{2, 3});
  CHECK(maximal_rank_primes(fixture_group("a5")) == std::vector<std::uint64_t>{2});
  CHECK_FALSE(contains_p_cube(fixture_group("d8"), 2));
  auto s4 = elementary_abelians(fixture_group("s4"), 2, true);
  CHECK(std::count_if(s4.begin(), s4.end(), [](const auto& e) { return e.rank == 2; }) == 2);
}

TEST_CASE("p-rank is monotone on subgroups") {
  auto g = fixture_group("gl2_3");
  for (std::uint64_t p : {2u, 3u}) {
    auto syl = sylow(g, p).subgroup.group;
    CHECK(p_rank(syl, p) <= p_rank(g, p));
    CHECK(p_rank(syl, p) == p_rank(g, p));
  }
  auto c = centralizer(g, g->generators()[0]).group;
  CHECK(p_rank(c, 2) <= p_rank(g, 2));
}

TEST_CASE("poset graph") {
  auto v4 = build_poset_graph(fixture_group("z2x2"), 2);
  CHECK(v4.vertices.size() == 4);
  CHECK(v4.edges.size() == 3);
  for (const char* name : {"s4", "sl3_2", "gl2_3", "a5"}) {
    auto pg = build_poset_graph(fixture_group(name), 2);
    std::size_t rank_two = 0;
    for (const auto& v : pg.vertices) rank_two += v.rank == 2;
    CHECK(pg.edges.size() == 3 * rank_two);
    for (const auto& a : pg.generator_action) {
      std::set<std::pair<std::size_t, std::size_t>> edges(pg.edges.begin(), pg.edges.end());
      for (const auto& [u, v] : pg.edges) CHECK(edges.count({a[u], a[v]}));
    }
  }
  auto cyclic = build_poset_graph(fixture_group("s4"), 3);
  CHECK(cyclic.edges.empty());
  CHECK_THROWS_AS(build_poset_graph(PermGroup::from_generators(6, {Permutation::from_cycles(6, {{0, 1}}),
                                                                    Permutation::from_cycles(6, {{2, 3}}),
                                                                    Permutation::from_cycles(6, {{4, 5}})}),
                                    2),
                  DimensionError);
}

TEST_CASE("graph of groups") {
  auto check_orbits = [](const QuotientGraphOfGroups& q) {
    std::size_t nv = 0, ne = 0;
    const auto order = q.base.group->order();
    for (const auto& o : q.vertex_orbits) {
      nv += o.size;
      CHECK(o.size * o.stabilizer.order() == order);
    }
    for (const auto& o : q.edge_orbits) {
      ne += o.size;
      CHECK(o.size * o.stabilizer.order() == order);
    }
    CHECK(nv == q.base.vertices.size());
    CHECK(ne == q.base.edges.size());
  };
  auto s4 = graph_of_groups(fixture_group("s4"), 2);
  check_orbits(s4);
  CHECK(s4.connected);

  auto v4 = graph_of_groups(fixture_group("z2x2"), 2);
  check_orbits(v4);
  for (const auto& o : v4.vertex_orbits) CHECK(o.stabilizer.order() == 4);

  auto sl = graph_of_groups(fixture_group("sl3_2"), 2);
  check_orbits(sl);
  CHECK(sl.connected);
  std::multiset<std::uint64_t> stab;
  for (const auto& o : sl.vertex_orbits) stab.insert(o.stabilizer.order());
  CHECK(stab == std::multiset<std::uint64_t>{8, 24, 24});

  auto m11 = graph_of_groups(fixture_group("m11"), 2);
  check_orbits(m11);
  CHECK(m11.connected);
  REQUIRE(m11.vertex_orbits.size() == 2);
  CHECK(m11.vertex_orbits[0].stabilizer.order() == 48);
  CHECK(m11.vertex_orbits[1].stabilizer.order() == 24);
  REQUIRE(m11.edge_orbits.size() == 1);
  CHECK(m11.edge_orbits[0].stabilizer.order() == 8);

  auto a5 = graph_of_groups(fixture_group("a5"), 2);
  check_orbits(a5);
  CHECK_FALSE(a5.connected);
  REQUIRE(a5.component_stabilizer);
  CHECK(a5.component_stabilizer->order() == 12);
}
