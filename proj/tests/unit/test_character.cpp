#include <chrono>
#include <random>

#include "doctest.h"
#include "eulercert/character.hpp"
#include "eulercert/error.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace eulercert;

namespace {

ClassFunction load_char(const std::string& file, const GroupPtr& g) {
  return ingest_class_function(io::read_json(fixture("characters/" + file + ".json")), g);
}

std::vector<Rational> degrees(const CharacterTable& t) {
  std::vector<Rational> out;
  for (const auto& c : t.irreducibles) out.push_back(c.degree());
  return out;
}

}  // namespace

TEST_CASE("character tables: orthogonality and centralizer orders") {
  for (const char* name : {"s3", "s4", "a4", "d8", "q8", "a5", "gl2_3", "sl3_2", "z2x3", "z6", "m11_n3"}) {
    CAPTURE(name);
    auto g = fixture_group(name);
    auto t = character_table(g);
    const auto& cls = g->classes();
    REQUIRE(t->irreducibles.size() == cls.size());
    Rational sum = 0;
    for (const auto& chi : t->irreducibles) {
      sum += chi.degree() * chi.degree();
      for (std::size_t k = 0; k < cls.size(); ++k) {
        CHECK(chi.value(k).is_algebraic_integer());
        CHECK(std::abs(chi.value(k).approx()) <= chi.degree().convert_to<double>() + 1e-9);
      }
    }
    CHECK(sum == Rational(static_cast<long long>(g->order())));
    // Columns: sum_chi chi(g_k) conj chi(g_l) = |C_G(g_k)| delta_kl, with the
    // centralizer counted by brute force.
    auto all = oracle::closure(g->generators());
    for (std::size_t k = 0; k < cls.size(); ++k) {
      std::size_t cent = 0;
      for (const auto& x : all) cent += x.commutes_with(cls[k].representative);
      for (std::size_t l = 0; l < cls.size(); ++l) {
        Cyclotomic s;
        for (const auto& chi : t->irreducibles) s += chi.value(k) * chi.value(l).conj();
        CHECK(s == Cyclotomic(k == l ? static_cast<long long>(cent) : 0));
      }
    }
  }
}

TEST_CASE("known tables") {
  auto s4 = character_table(fixture_group("s4"));
  CHECK(degrees(*s4) == std::vector<Rational>{1, 1, 2, 3, 3});
  auto gl = character_table(fixture_group("gl2_3"));
  CHECK(degrees(*gl) == std::vector<Rational>{1, 1, 2, 2, 2, 3, 3, 4});
  CHECK(fixture_group("gl2_3")->classes().size() == 8);
  auto a5 = character_table(fixture_group("a5"));
  CHECK(degrees(*a5) == std::vector<Rational>{1, 3, 3, 4, 5});
  // The two degree-3 characters of A5 take the values (1 +- sqrt 5)/2 on 5-cycles.
  const auto& chi = a5->irreducibles[1];
  CHECK(chi.value(3).modulus() == 5);
  CHECK(chi.value(3) + a5->irreducibles[2].value(3) == Cyclotomic(1));
  auto triv = PermGroup::from_generators(3, {});
  auto tt = character_table(triv);
  REQUIRE(tt->irreducibles.size() == 1);
  CHECK(tt->irreducibles[0].degree() == 1);
}

TEST_CASE("permutation characters decompose with nonnegative multiplicities") {
  for (const char* name : {"s4", "a5", "gl2_3", "sl3_2"}) {
    auto g = fixture_group(name);
    auto t = character_table(g);
    std::vector<Cyclotomic> fix;
    for (const auto& c : g->classes().classes()) {
      long long n = 0;
      for (std::size_t i = 0; i < g->degree(); ++i) n += c.representative(static_cast<Point>(i)) == i;
      fix.push_back(Cyclotomic(n));
    }
    auto m = decompose(ClassFunction(g, fix), *t);
    CHECK(m[0] >= 1);
    for (long long x : m) CHECK(x >= 0);
    CHECK(decompose(regular_character(g), *t) ==
          [&] {
            std::vector<long long> d;
            for (const auto& chi : t->irreducibles) d.push_back(static_cast<long long>(numerator(chi.degree())));
            return d;
          }());
  }
}

TEST_CASE("inner products") {
  auto g = fixture_group("s4");
  auto t = character_table(g);
  CHECK(inner_product(t->irreducibles[0], t->irreducibles[1]) == Cyclotomic(0));
  CHECK(inner_product(t->irreducibles[3], t->irreducibles[3]) == Cyclotomic(1));
  auto partial = load_char("s4_missing", g);
  CHECK_THROWS_AS(inner_product(partial, t->irreducibles[0]), InsufficientData);
  try {
    inner_product(partial, t->irreducibles[0]);
  } catch (const InsufficientData& e) {
    CHECK(e.missing_classes() == std::vector<std::string>{"3A", "4A"});
  }
}

TEST_CASE("restriction and induction") {
  auto a4 = fixture_group("a4");
  auto v4 = sylow(a4, 2).subgroup;
  auto vt = character_table(v4.group);
  auto ind = induce(vt->irreducibles[1], v4);
  CHECK(ind.degree() == 3);
  auto back = restrict_to(ind, v4);
  CHECK(decompose(back, *vt) == std::vector<long long>{0, 1, 1, 1});

  auto q8 = fixture_group("q8");
  auto v = central_induction(q8, 0);
  CHECK(v.degree() == 4);
  auto z = center(q8).subgroup;
  auto zt = character_table(z.group);
  auto res = restrict_to(v, z);
  CHECK(res == zt->irreducibles[1].scaled(4));

  auto s4 = fixture_group("s4");
  auto triv = trivial_character(s4);
  auto h = sylow(s4, 3).subgroup;
  CHECK(restrict_to(triv, h) == trivial_character(h.group));
}

TEST_CASE("Frobenius reciprocity on random characters") {
  std::mt19937 rng(2024);
  for (const char* name : {"s3", "s4", "a4", "d8", "q8", "a5", "gl2_3", "sl3_2", "m11_n3"}) {
    CAPTURE(name);
    auto g = fixture_group(name);
    if (g->order() > 500) continue;
    auto gt = character_table(g);
    std::vector<Subgroup> subs;
    for (std::uint64_t p : prime_divisors(g->order())) subs.push_back(sylow(g, p).subgroup);
    subs.push_back(centralizer(g, g->generators()[0]));
    subs.push_back(center(g).subgroup);
    for (const auto& h : subs) {
      auto ht = character_table(h.group);
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<long long> mh(ht->irreducibles.size()), mg(gt->irreducibles.size());
        for (auto& x : mh) x = static_cast<long long>(rng() % 3);
        for (auto& x : mg) x = static_cast<long long>(rng() % 3);
        auto chi = ht->combination(mh);
        auto psi = gt->combination(mg);
        CHECK(inner_product(induce(chi, h), psi) == inner_product(chi, restrict_to(psi, h)));
      }
    }
  }
}

TEST_CASE("fixed dimensions") {
  auto v4g = fixture_group("z2x2");
  auto e = elementary_abelians(v4g, 2, true).back();
  REQUIRE(e.rank == 2);
  auto rr = reduced_regular(e);
  CHECK(rr.degree() == 3);
  CHECK(fixed_dim(rr, whole_group(rr.group())) == 0);

  auto s4 = fixture_group("s4");
  auto nu = load_char("s4_nu", s4);
  auto klein = make_subgroup(s4, {Permutation::from_cycles(4, {{0, 1}, {2, 3}}),
                                  Permutation::from_cycles(4, {{0, 2}, {1, 3}})});
  CHECK(fixed_dim(nu, klein) == 0);
  CHECK(fixed_dim(trivial_character(s4), klein) == 1);

  auto u33 = fixture_group("u3_3");
  auto chi2 = load_char("u3_3_chi2", u33);
  const auto& cls = u33->classes();
  auto k3a = *cls.find_label("3A");
  CHECK(cls[k3a].size == 56);
  auto c3 = make_subgroup(u33, {cls[k3a].representative});
  CHECK(fixed_dim(chi2, c3) == 0);
  auto k2a = *cls.find_label("2A");
  CHECK(fixed_dim(chi2, make_subgroup(u33, {cls[k2a].representative})) == 2);

  // Non-characters are rejected.
  std::vector<Cyclotomic> bad(s4->classes().size(), Cyclotomic(0));
  bad[0] = Cyclotomic(1);
  CHECK_THROWS_AS(fixed_dim(ClassFunction(s4, bad), klein), InvalidCharacter);
}

TEST_CASE("fixed_dim additivity and antitonicity") {
  std::mt19937 rng(7);
  for (const char* name : {"s4", "gl2_3", "a5", "d8"}) {
    auto g = fixture_group(name);
    auto t = character_table(g);
    auto eas = elementary_abelians(g, 2, false);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<long long> m1(t->irreducibles.size()), m2(t->irreducibles.size());
      for (auto& x : m1) x = static_cast<long long>(rng() % 3);
      for (auto& x : m2) x = static_cast<long long>(rng() % 3);
      auto a = t->combination(m1), b = t->combination(m2);
      for (const auto& e : eas) {
        auto h = e.subgroup();
        CHECK(fixed_dim(a + b, h) == fixed_dim(a, h) + fixed_dim(b, h));
      }
      for (const auto& big : eas) {
        if (big.rank != 2) continue;
        for (const auto& small : eas) {
          if (small.rank != 1 ||
              !std::includes(big.members.begin(), big.members.end(), small.members.begin(), small.members.end())) {
            continue;
          }
          CHECK(fixed_dim(a, big.subgroup()) <= fixed_dim(a, small.subgroup()));
        }
      }
    }
  }
}

TEST_CASE("central induction") {
  auto d8 = fixture_group("d8");
  auto v = central_induction(d8, 0);
  CHECK(v.degree() == 4);
  for (const auto& e : elementary_abelians(d8, 2, false)) {
    if (e.rank == 2) CHECK(fixed_dim(v, e.subgroup()) == 0);
  }
  auto z6 = fixture_group("z6");
  auto lin = central_induction(z6, 0);
  CHECK(lin.degree() == 1);
  CHECK_THROWS_AS(central_induction(fixture_group("s3"), 0), HypothesisFailure);
  for (const char* name : {"q8", "d8", "gl2_3"}) {
    auto g = fixture_group(name);
    CHECK(central_induction(g, 0).degree() == Rational(static_cast<long long>(g->order() / center(g).subgroup.order())));
  }
}

TEST_CASE("ingestion") {
  auto u34 = fixture_group("u3_4");
  auto chi = load_char("u3_4_chi", u34);
  std::size_t defined = 0;
  for (std::size_t k = 0; k < chi.size(); ++k) defined += chi.defined(k);
  CHECK(defined == 6);  // 1A, 2A and the four classes of 5A
  CHECK(chi.provenance() == Provenance::Ingested);

  auto s4 = fixture_group("s4");
  io::Json bad = io::read_json(fixture("characters/s4_nu.json"));
  bad["classes"].push_back({{"order", 5}, {"size", 1}, {"value", 0}});
  CHECK_THROWS_AS(ingest_class_function(bad, s4), FormatError);
  io::Json frac = io::read_json(fixture("characters/s4_nu.json"));
  frac["classes"][1]["value"] = {{"m", 1}, {"terms", {{0, "1/2"}}}};
  CHECK_THROWS_AS(ingest_class_function(frac, s4), FormatError);

  // A5 has two classes of 5-cycles of size 12.
  auto a5 = fixture_group("a5");
  io::Json amb = {{"classes", {{{"order", 1}, {"size", 1}, {"value", 3}}, {{"order", 5}, {"size", 12}, {"value", 0}}}}};
  CHECK_THROWS_AS(ingest_class_function(amb, a5), FormatError);
  amb["classes"][1]["rational"] = true;
  auto both = ingest_class_function(amb, a5);
  CHECK(both.defined(3));
  CHECK(both.defined(4));
  amb["classes"][1].erase("rational");
  amb["classes"][1]["rep"] = {1, 2, 3, 4, 0};
  auto one = ingest_class_function(amb, a5);
  CHECK(one.defined(3) != one.defined(4));
}

TEST_CASE("U3(4) degree-12 character agrees with a computed irreducible") {
  auto u34 = fixture_group("u3_4");
  auto chi = load_char("u3_4_chi", u34);
  auto start = std::chrono::steady_clock::now();
  auto t = character_table(u34);
  MESSAGE("U3(4) table: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s");
  bool found = false;
  for (const auto& irr : t->irreducibles) {
    bool agrees = true;
    for (std::size_t k = 0; k < chi.size(); ++k) {
      if (chi.defined(k) && chi.value(k) != irr.value(k)) agrees = false;
    }
    found = found || agrees;
  }
  CHECK(found);
}
