#include "doctest.h"
#include "eulercert/effectiveness.hpp"
#include "eulercert/error.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace eulercert;

namespace {

Character load_character(const std::string& name, const GroupPtr& g) {
  return ingest_class_function(io::read_json(fixture("characters/" + name + ".json")), g);
}

std::size_t find_irreducible(const CharacterTable& t, const std::vector<std::pair<std::string, Cyclotomic>>& values) {
  const auto& cls = t.group->classes();
  for (std::size_t i = 0; i < t.irreducibles.size(); ++i) {
    bool ok = true;
    for (const auto& [label, v] : values) ok = ok && t.irreducibles[i].value(*cls.find_label(label)) == v;
    if (ok) return i;
  }
  throw Error("no such irreducible");
}

}  // namespace

TEST_CASE("involution criterion agrees with Klein four restrictions") {
  for (const char* name : {"s4", "gl2_3"}) {
    CAPTURE(name);
    const GroupPtr g = fixture_group(name);
    const auto t = character_table(g);
    const auto fours = oracle::klein_fours(g);
    REQUIRE(!fours.empty());
    std::size_t checked = 0, passing = 0;
    for (const auto& m : oracle::combinations(*t, 12)) {
      const Character chi = t->combination(m);
      CAPTURE(chi.name());
      const bool expected = oracle::klein_oracle(chi, fours);
      CHECK(involution_criterion(chi).passes == expected);
      CHECK(klein_four_restrictions_reduced_regular(chi) == expected);
      ++checked;
      passing += expected;
    }
    CHECK(checked > 100);
    CHECK(passing > 0);
  }
}

TEST_CASE("involution criterion on ingested characters") {
  const GroupPtr gl = fixture_group("gl2_3");
  const auto c = involution_criterion(load_character("gl2_3_2chi2_chi8", gl));
  CHECK(c.applies);
  CHECK(c.passes);
  CHECK(*c.involution_value == Cyclotomic(-2));
  const auto partial = involution_criterion(load_character("gl2_3_partial", gl));
  CHECK(partial.passes);
  const auto chi2 = involution_criterion(load_character("gl2_3_chi2", gl));
  CHECK_FALSE(chi2.applies);
  CHECK_FALSE(chi2.passes);
}

TEST_CASE("search finds degree-3 effective characters") {
  for (const char* name : {"s4", "a5", "sl3_2"}) {
    CAPTURE(name);
    const GroupPtr g = fixture_group(name);
    const auto found = search_effective(g, 3);
    REQUIRE(!found.empty());
    CHECK(found.front().degree() <= 3);
    bool degree_three = false;
    for (const auto& chi : found) {
      CHECK(is_effective(chi).effective);
      degree_three = degree_three || chi.degree() == 3;
    }
    CHECK(degree_three);
    // Exhaustive cross-check of the search against the decision procedure.
    const auto t = character_table(g);
    std::size_t effective = 0;
    for (const auto& m : oracle::combinations(*t, 3)) effective += is_effective(t->combination(m)).effective;
    CHECK(effective == found.size());
  }
  const GroupPtr s4 = fixture_group("s4");
  const Character nu = load_character("s4_nu", s4);
  bool has_nu = false;
  for (const auto& chi : search_effective(s4, 3)) has_nu = has_nu || chi == nu;
  CHECK(has_nu);
}

TEST_CASE("search over an elementary abelian group includes the reduced regular character") {
  auto g = PermGroup::from_generators(
      6, {Permutation::from_cycles(6, {{0, 1}}), Permutation::from_cycles(6, {{2, 3}}),
          Permutation::from_cycles(6, {{4, 5}})});
  const auto found = search_effective(g, 7, {2});
  std::vector<Cyclotomic> values(g->classes().size(), Cyclotomic(-1));
  values[0] = Cyclotomic(7);
  const Character rr(g, values);
  CHECK(std::find(found.begin(), found.end(), rr) != found.end());
  // Any nonzero sum of nontrivial linear characters is effective here;
  // there are C(7+7,7) - 1 such sums of degree at most 7.
  CHECK(found.size() == 3431);
}

TEST_CASE("reduced regular character of (Z/p)^n") {
  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}}) {
    std::vector<Permutation> gens;
    const std::size_t deg = p * n;
    for (unsigned i = 0; i < n; ++i) {
      std::vector<long long> images(deg);
      for (std::size_t k = 0; k < deg; ++k) images[k] = static_cast<long long>(k);
      for (unsigned k = 0; k < p; ++k) images[i * p + k] = i * p + (k + 1) % p;
      gens.push_back(Permutation::from_images(images));
    }
    auto g = PermGroup::from_generators(deg, gens);
    const auto all = elementary_abelians(g, p, false);
    const ElementaryAbelian& top = all.back();
    REQUIRE(top.rank == n);
    const Character rr = reduced_regular(top);
    const GroupPtr& h = rr.group();
    CHECK(rr.degree() == static_cast<long long>(top.order()) - 1);
    CHECK(is_effective(rr).effective);
    CHECK(fixed_dim(rr, whole_group(h)) == 0);
    for (const auto& e : elementary_abelians(h, p, false)) {
      if (e.rank < n) CHECK(fixed_dim(rr, e.subgroup()) > 0);
    }
  }
}

TEST_CASE("effectiveness is invariant under conjugation") {
  for (const char* name : {"s4", "a4", "d8", "q8", "gl2_3", "a5", "sl3_2", "z2x2", "s3"}) {
    CAPTURE(name);
    const GroupPtr g = fixture_group(name);
    REQUIRE(g->order() <= 500);
    const auto t = character_table(g);
    const unsigned r = rank(g);
    for (const auto& m : oracle::combinations(*t, 6)) {
      const Character chi = t->combination(m);
      for (std::uint64_t p : prime_divisors(g->order())) {
        const auto reps = p_effective_at_rank(chi, p, r, false);
        const auto all = p_effective_at_rank(chi, p, r, true);
        CHECK(reps.effective == all.effective);
        CHECK(all.witnesses.size() >= reps.witnesses.size());
      }
    }
  }
}

TEST_CASE("effectiveness of ingested characters") {
  SUBCASE("U3(3)") {
    const GroupPtr g = fixture_group("u3_3");
    const auto cert = is_effective(load_character("u3_3_chi2", g));
    CHECK(cert.effective);
    CHECK(cert.group_rank == 2);
    REQUIRE(cert.primes.size() == 2);
    CHECK(cert.primes[0].p == 2);
    CHECK(cert.primes[1].p == 3);
    REQUIRE(cert.primes[1].free_element.has_value());
    CHECK(cert.primes[1].free_element->class_label == "3A");
    CHECK(cert.primes[1].free_element->fixed_dim == 0);
  }
  SUBCASE("U3(4)") {
    const GroupPtr g = fixture_group("u3_4");
    const auto cert = is_effective(load_character("u3_4_chi", g));
    CHECK(cert.effective);
    REQUIRE(cert.primes.size() == 2);
    CHECK(cert.primes[0].p == 2);
    CHECK(cert.primes[1].p == 5);
    // Classes 5C/5D are unknown, so the rank-two 5-subgroups are bounded by a 5A element.
    for (const auto& w : cert.primes[1].witnesses) CHECK(w.cyclic_generator.has_value());
  }
  SUBCASE("GL2(3)") {
    const GroupPtr g = fixture_group("gl2_3");
    const Character chi = load_character("gl2_3_2chi2_chi8", g);
    CHECK(is_effective(chi).effective);
    CHECK(chi.degree() == 6);
  }
  SUBCASE("missing data is reported") {
    const GroupPtr g = fixture_group("u3_3");
    nlohmann::json j = io::read_json(fixture("characters/u3_3_chi2.json"));
    j["classes"].erase(3);
    j["classes"].erase(2);
    const Character partial = ingest_class_function(j, g);
    CHECK(is_p_effective(partial, 2).effective);
    try {
      (void)is_p_effective(partial, 3);
      FAIL("expected InsufficientData");
    } catch (const InsufficientData& e) {
      CHECK(!e.missing_classes().empty());
    }
  }
  SUBCASE("non-effective characters carry a nonzero witness") {
    const GroupPtr g = fixture_group("s4");
    const auto v = is_p_effective(trivial_character(g), 2);
    CHECK_FALSE(v.effective);
    CHECK(std::any_of(v.witnesses.begin(), v.witnesses.end(), [](const FixedDimWitness& w) { return w.fixed_dim > 0; }));
  }
}

TEST_CASE("vacuous primes") {
  const GroupPtr g = fixture_group("s4");
  const auto v = p_effective_at_rank(trivial_character(g), 3, 2);
  CHECK(v.vacuous);
  CHECK(v.effective);
}

TEST_CASE("acts_freely") {
  const GroupPtr g = fixture_group("u3_3");
  const Character chi = load_character("u3_3_chi2", g);
  const auto& cls = g->classes();
  CHECK(acts_freely(chi, cls[*cls.find_label("3A")].representative));
  CHECK_FALSE(acts_freely(chi, cls[*cls.find_label("3B")].representative));
}

TEST_CASE("isotropy profiles") {
  SUBCASE("GL2(3) acts freely on S(chi6) x S(chi2)") {
    const GroupPtr g = fixture_group("gl2_3");
    const auto t = character_table(g);
    const std::size_t i6 = find_irreducible(*t, {{"1A", 2}, {"2A", -2}, {"3A", -1}});
    const std::size_t i2 = find_irreducible(*t, {{"1A", 1}, {"2A", 1}, {"2B", -1}});
    const auto prof = isotropy_profile({t->irreducibles[i6], t->irreducibles[i2]});
    CHECK(prof.free);
    CHECK(prof.max_isotropy_rank == 0);
    CHECK_FALSE(prof.undetermined);
  }
  SUBCASE("trivial character: everything fixes a point") {
    for (const char* name : {"d8", "s4", "z2x2", "a5"}) {
      const GroupPtr g = fixture_group(name);
      const auto prof = isotropy_profile({trivial_character(g)});
      CHECK(prof.max_isotropy_rank == rank(g));
      CHECK_FALSE(prof.free);
    }
  }
  SUBCASE("central induction on D8 has rank-one isotropy") {
    const GroupPtr g = fixture_group("d8");
    const auto prof = isotropy_profile({central_induction(g, 0)});
    CHECK(prof.max_isotropy_rank <= 1);
  }
  SUBCASE("free iff every prime-order element acts freely on some factor") {
    const GroupPtr g = fixture_group("gl2_3");
    const auto t = character_table(g);
    const auto& cls = g->classes();
    for (std::size_t a = 0; a < t->irreducibles.size(); ++a) {
      for (std::size_t b = a; b < t->irreducibles.size(); ++b) {
        const auto& x = t->irreducibles[a];
        const auto& y = t->irreducibles[b];
        bool expected = true;
        for (std::size_t c = 1; c < cls.size(); ++c) {
          if (!is_prime(cls[c].element_order)) continue;
          expected = expected && (acts_freely(x, cls[c].representative) || acts_freely(y, cls[c].representative));
        }
        CHECK(isotropy_profile({x, y}).free == expected);
      }
    }
  }
  SUBCASE("undetermined rows") {
    const GroupPtr g = fixture_group("gl2_3");
    const auto prof = isotropy_profile({load_character("gl2_3_partial", g)});
    CHECK(prof.undetermined);
    CHECK_FALSE(prof.free);
  }
}

TEST_CASE("p-group and normal Sylow constructions") {
  const GroupPtr d8 = fixture_group("d8");
  const Character v = pgroup_effective_character(d8);
  CHECK(v.degree() == 4);
  CHECK(is_effective(v).effective);

  const GroupPtr a4 = fixture_group("a4");
  const Character ind = normal_sylow_effective(a4, 2);
  CHECK(ind.degree() == 3);
  CHECK(is_p_effective(ind, 2).effective);

  CHECK_THROWS_AS(normal_sylow_effective(fixture_group("s4"), 2), HypothesisFailure);
  CHECK_THROWS_AS(pgroup_effective_character(fixture_group("s3")), HypothesisFailure);

  const GroupPtr n3 = fixture_group("m11_n3");
  const Character local = normal_sylow_effective(n3, 3);
  CHECK(local.degree() == 16);
  CHECK(p_effective_at_rank(local, 3, 2).effective);
}

TEST_CASE("certificate JSON") {
  const GroupPtr g = fixture_group("u3_3");
  const auto j = to_json(is_effective(load_character("u3_3_chi2", g)));
  CHECK(j["effective"] == true);
  CHECK(j["primes"][1]["free_element"]["class"] == "3A");
  const auto prof = to_json(isotropy_profile({load_character("u3_3_chi2", g)}));
  CHECK(prof["max_isotropy_rank"] == 1);
}
