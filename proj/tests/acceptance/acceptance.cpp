// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>

#include "eulercert/amalgam.hpp"
#include "eulercert/certify.hpp"
#include "eulercert/error.hpp"
#include "../unit/fixtures.hpp"
#include "../unit/oracle.hpp"

using namespace eulercert;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok) failures_.push_back(what);
  }
  // Runs f and fails the check if it takes longer than limit seconds.
  template <class F>
  void within(double limit, const std::string& what, F&& f) {
    const auto t0 = Clock::now();
    f();
    const double s = seconds_since(t0);
    std::ostringstream o;
    o << what << " took " << s << " s (limit " << limit << " s)";
    expect(s <= limit, o.str());
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool passed() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream o;
    if (failures_.empty()) {
      o << total_ << " checks";
      for (const auto& n : notes_) o << "; " << n;
    } else {
      o << failures_.size() << "/" << total_ << " failed: " << failures_.front();
      for (std::size_t i = 1; i < failures_.size() && i < 4; ++i) o << "; " << failures_[i];
    }
    return o.str();
  }

 private:
  std::size_t total_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct Criterion {
  int id;
  std::string name;
  double limit;  // seconds for the whole criterion, 0 when only per-item limits apply
  std::function<void(Checks&)> run;
};

// Certificates produced along the way, replayed by the property criterion.
std::vector<ActionCertificate> produced;

Character load_character(const std::string& name, const GroupPtr& g) {
  return ingest_class_function(io::read_json(fixture("characters/" + name + ".json")), g);
}

Cyclotomic at(const ClassFunction& chi, const std::string& label) {
  return chi.value(*chi.group()->classes().find_label(label));
}

const Character& irreducible_with(const CharacterTable& t,
                                  const std::vector<std::pair<std::string, long long>>& values) {
  for (const auto& chi : t.irreducibles) {
    bool ok = true;
    for (const auto& [label, v] : values) ok = ok && at(chi, label) == Cyclotomic(v);
    if (ok) return chi;
  }
  throw Error("no irreducible with the requested values");
}

std::vector<std::string> fixture_group_names() {
  std::vector<std::string> names;
  for (const auto& e : std::filesystem::directory_iterator(fixture("groups"))) {
    names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

GroupPtr elementary_abelian_group(unsigned p, unsigned n) {
  std::vector<Permutation> gens;
  const std::size_t deg = p * n;
  for (unsigned i = 0; i < n; ++i) {
    std::vector<long long> images(deg);
    for (std::size_t k = 0; k < deg; ++k) images[k] = static_cast<long long>(k);
    for (unsigned k = 0; k < p; ++k) images[i * p + k] = i * p + (k + 1) % p;
    gens.push_back(Permutation::from_images(images));
  }
  return PermGroup::from_generators(deg, gens);
}

void orders(Checks& c) {
  const std::vector<std::pair<std::string, std::uint64_t>> expected = {
      {"a5", 60}, {"s4", 24}, {"sl3_2", 168}, {"gl2_3", 48}, {"u3_3", 6048}, {"u3_4", 62400}};
  for (const auto& [name, n] : expected) {
    c.within(30, name, [&, n = n, name = name] {
      const GroupPtr g = fixture_group(name);
      c.expect(g->order() == n, name + " order " + std::to_string(g->order()));
    });
  }
}

void ranks(Checks& c) {
  for (const char* name : {"s4", "a5", "sl3_2", "gl2_3", "m11"}) {
    c.expect(p_rank(fixture_group(name), 2) == 2, std::string("r_2 of ") + name);
  }
  const GroupPtr u33 = fixture_group("u3_3");
  c.expect(p_rank(u33, 2) == 2, "r_2 of u3_3");
  c.expect(p_rank(u33, 3) == 2, "r_3 of u3_3");
  c.expect(rank(fixture_group("q8")) == 1, "r of q8");
  c.expect(contains_p_cube(elementary_abelian_group(2, 3), 2), "(Z/2)^3 contains a 2-cube");
}

void involution(Checks& c) {
  std::size_t cases = 0, passing = 0;
  for (const char* name : {"s4", "gl2_3"}) {
    const GroupPtr g = fixture_group(name);
    const auto t = character_table(g);
    const auto fours = oracle::klein_fours(g);
    for (const auto& m : oracle::combinations(*t, 12)) {
      const Character chi = t->combination(m);
      const bool expected = oracle::klein_oracle(chi, fours);
      c.expect(involution_criterion(chi).passes == expected, std::string(name) + " " + chi.name());
      ++cases;
      passing += expected;
    }
  }
  c.note(std::to_string(cases) + " combinations, " + std::to_string(passing) + " pass the criterion");
}

void effective_search(Checks& c) {
  for (const char* name : {"s4", "a5", "sl3_2"}) {
    const GroupPtr g = fixture_group(name);
    const auto found = search_effective(g, 3);
    const auto it = std::find_if(found.begin(), found.end(), [](const Character& x) { return x.degree() == 3; });
    c.expect(it != found.end(), std::string("degree-3 effective character for ") + name);
    if (it == found.end()) continue;
    produced.push_back(apply_rank_two(g, is_effective(*it)));
    c.expect(produced.back().statement() == "Y ~ S^N x S^5", std::string(name) + ": " + produced.back().statement());
  }
  // nu takes 3, -1, -1 on 1, 2A, 2B, 1 on 4-cycles and 0 on 3-cycles.
  const GroupPtr s4 = fixture_group("s4");
  const auto found = search_effective(s4, 3);
  const bool has_nu = std::any_of(found.begin(), found.end(), [](const Character& x) {
    return at(x, "1A") == Cyclotomic(3) && at(x, "2A") == Cyclotomic(-1) && at(x, "2B") == Cyclotomic(-1) &&
           at(x, "4A") == Cyclotomic(1) && at(x, "3A") == Cyclotomic(0);
  });
  c.expect(has_nu, "nu among the S4 search results");
}

void ingested(Checks& c) {
  c.within(300, "U3(3)", [&] {
    const GroupPtr g = fixture_group("u3_3");
    const Character chi = load_character("u3_3_chi2", g);
    c.expect(at(chi, "1A") == Cyclotomic(6) && at(chi, "2A") == Cyclotomic(-2) && at(chi, "3A") == Cyclotomic(-3) &&
                 at(chi, "3B") == Cyclotomic(0),
             "U3(3) chi2 values");
    const auto cert = is_effective(chi);
    c.expect(is_p_effective(chi, 2).effective, "U3(3) 2-effective");
    c.expect(is_p_effective(chi, 3).effective, "U3(3) 3-effective");
    c.expect(sphere_of_character(chi) == SphereDim::of(11), "U3(3) sphere S^11");
    const auto& p3 = cert.primes.at(1);
    c.expect(p3.p == 3 && p3.free_element && p3.free_element->class_label == "3A" && p3.free_element->fixed_dim == 0,
             "U3(3) 3A witness with fixed_dim 0");
    produced.push_back(apply_rank_two(g, cert));
    c.expect(to_json(produced.back()).dump().find("\"3A\"") != std::string::npos, "3A witness recorded");
  });
  c.within(300, "U3(4)", [&] {
    const GroupPtr g = fixture_group("u3_4");
    const Character chi = load_character("u3_4_chi", g);
    c.expect(chi.degree() == 12, "U3(4) degree");
    c.expect(is_p_effective(chi, 2).effective, "U3(4) 2-effective");
    c.expect(is_p_effective(chi, 5).effective, "U3(4) 5-effective");
    c.expect(sphere_of_character(chi) == SphereDim::of(23), "U3(4) sphere S^23");
    produced.push_back(apply_rank_two(g, is_effective(chi)));
    c.expect(produced.back().statement() == "Y ~ S^N x S^23", "U3(4) conclusion");
  });
}

void gl2_3(Checks& c) {
  const GroupPtr g = fixture_group("gl2_3");
  const auto t = character_table(g);
  const Character chi = load_character("gl2_3_2chi2_chi8", g);
  c.expect(at(chi, "1A") == Cyclotomic(6) && at(chi, "2A") == Cyclotomic(-2) && at(chi, "2B") == Cyclotomic(-2),
           "values (6, -2, -2)");
  const Character& sign = irreducible_with(*t, {{"1A", 1}, {"2A", 1}, {"2B", -1}});
  const Character& deg4 = irreducible_with(*t, {{"1A", 4}});
  c.expect(chi == sign.scaled(2) + deg4, "equals twice the sign character plus the degree-4 irreducible");
  c.expect(involution_criterion(chi).passes, "passes the involution criterion");
  c.expect(is_effective(chi).effective, "effective");
  c.expect(sphere_of_character(chi) == SphereDim::of(11), "sphere S^11");
  produced.push_back(apply_rank_two(g, is_effective(chi)));
  // The faithful degree-2 character, giving S^3, and the sign character, giving S^1.
  const Character& faithful = irreducible_with(*t, {{"1A", 2}, {"2A", -2}, {"3A", -1}});
  const auto prof = isotropy_profile({faithful, sign});
  c.expect(prof.free, "S(faithful) x S(sign) is free");
}

void m11(Checks& c) {
  const GroupPtr g = fixture_group("m11");
  const GraphOfGroups two = load_graph_of_groups(fixture("amalgams/m11_2local.json"));
  const GraphOfGroups three = load_graph_of_groups(fixture("amalgams/m11_3local.json"));
  c.expect(validate(two).valid, "2-local amalgam validates");
  const auto compat = edge_compatible(two);
  c.expect(std::all_of(compat.begin(), compat.end(), [](const EdgeCompatibility& e) { return e.compatible; }),
           "edge compatible");
  const auto local2 = local_certificate(two);
  c.expect(local2.positive && local2.p == 2 && local2.degree == 12, "2-local degree 12");
  const auto local3 = local_certificate(three);
  c.expect(local3.positive && local3.p == 3 && local3.degree == 32, "3-local degree 32");
  const AssembledClass a = assemble_local(g, std::vector<GraphOfGroups>{two, three});
  c.expect(a.lcm_degree == 96, "lcm alignment " + std::to_string(a.lcm_degree));
  c.expect(a.product_degree == 384, "product alignment " + std::to_string(a.product_degree));
  produced.push_back(apply_rank_two(g, a, Alignment::Product));
  c.expect(produced.back().statement() == "Y ~ S^N x S^383", produced.back().statement());
}

void properties(Checks& c) {
  std::mt19937 rng(2024);
  std::size_t tables = 0, frobenius = 0, invariance = 0;
  for (const auto& name : fixture_group_names()) {
    const GroupPtr g = fixture_group(name);
    const auto t = character_table(g);
    const auto& cls = g->classes();
    const Rational order(static_cast<long long>(g->order()));
    // Rows against class sizes, columns against centralizer orders.
    bool rows = true, cols = true;
    for (std::size_t i = 0; i < t->irreducibles.size(); ++i) {
      for (std::size_t j = i; j < t->irreducibles.size(); ++j) {
        Cyclotomic s;
        for (std::size_t k = 0; k < cls.size(); ++k) {
          s += Cyclotomic(static_cast<long long>(cls[k].size)) * t->irreducibles[i].value(k) *
               t->irreducibles[j].value(k).conj();
        }
        rows = rows && s == Cyclotomic(i == j ? order : Rational(0));
      }
    }
    for (std::size_t k = 0; k < cls.size(); ++k) {
      for (std::size_t l = k; l < cls.size(); ++l) {
        Cyclotomic s;
        for (const auto& chi : t->irreducibles) s += chi.value(k) * chi.value(l).conj();
        const Rational cent = order / static_cast<long long>(cls[k].size);
        cols = cols && s == Cyclotomic(k == l ? cent : Rational(0));
      }
    }
    c.expect(rows && cols, name + " orthogonality");
    ++tables;

    if (g->order() > 500) continue;
    std::vector<Subgroup> subs;
    for (std::uint64_t p : prime_divisors(g->order())) subs.push_back(sylow(g, p).subgroup);
    subs.push_back(centralizer(g, g->generators()[0]));
    subs.push_back(center(g).subgroup);
    for (const auto& h : subs) {
      const auto ht = character_table(h.group);
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<long long> mh(ht->irreducibles.size()), mg(t->irreducibles.size());
        for (auto& x : mh) x = static_cast<long long>(rng() % 3);
        for (auto& x : mg) x = static_cast<long long>(rng() % 3);
        const auto chi = ht->combination(mh);
        const auto psi = t->combination(mg);
        c.expect(inner_product(induce(chi, h), psi) == inner_product(chi, restrict_to(psi, h)), name + " Frobenius");
        ++frobenius;
      }
    }

    const unsigned r = rank(g);
    for (const auto& m : oracle::combinations(*t, 4)) {
      const Character chi = t->combination(m);
      for (std::uint64_t p : prime_divisors(g->order())) {
        const bool reps = p_effective_at_rank(chi, p, r, false).effective;
        const bool all = p_effective_at_rank(chi, p, r, true).effective;
        c.expect(reps == all, name + " conjugation invariance for " + chi.name());
        ++invariance;
      }
    }
  }

  std::size_t fixed = 0;
  for (const char* name : {"s4", "gl2_3", "a5", "d8", "sl3_2"}) {
    const GroupPtr g = fixture_group(name);
    const auto t = character_table(g);
    const auto eas = elementary_abelians(g, 2, false);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<long long> m1(t->irreducibles.size()), m2(t->irreducibles.size());
      for (auto& x : m1) x = static_cast<long long>(rng() % 3);
      for (auto& x : m2) x = static_cast<long long>(rng() % 3);
      const auto a = t->combination(m1), b = t->combination(m2);
      for (const auto& e : eas) {
        const auto h = e.subgroup();
        c.expect(fixed_dim(a + b, h) == fixed_dim(a, h) + fixed_dim(b, h), std::string(name) + " additivity");
        ++fixed;
        for (const auto& small : eas) {
          if (small.rank >= e.rank ||
              !std::includes(e.members.begin(), e.members.end(), small.members.begin(), small.members.end())) {
            continue;
          }
          c.expect(fixed_dim(a, h) <= fixed_dim(a, small.subgroup()), std::string(name) + " antitonicity");
          ++fixed;
        }
      }
    }
  }

  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t k1 = 1 + rng() % 50, k2 = 1 + rng() % 50, r = rng() % 200;
    c.expect(join_dim(k1, join_dim(k2, r)) == join_dim(k1 * k2, r), "join composition");
  }

  produced.push_back(apply_center_construction(fixture_group("d8"), 2));
  produced.push_back(apply_center_construction(fixture_group("z2x2"), 2));
  for (const auto& cert : produced) {
    const auto r = replay(to_json(cert));
    c.expect(r.reproduced, "replay of " + cert.group()->name() + " " + cert.statement());
  }

  c.note(std::to_string(tables) + " tables");
  c.note(std::to_string(frobenius) + " reciprocity pairs");
  c.note(std::to_string(fixed) + " fixed_dim checks");
  c.note(std::to_string(invariance) + " invariance verdicts");
  c.note(std::to_string(produced.size()) + " certificates replayed");
}

void pgroups(Checks& c) {
  const GroupPtr d8 = fixture_group("d8");
  const Character v = central_induction(d8, 0);
  c.expect(v.degree() == 4, "D8 central induction has degree 4");
  c.expect(is_effective(v).effective, "D8 central induction is effective");
  const auto cert = apply_center_construction(d8, 2);
  c.expect(cert.statement() == "Y ~ S^N x S^7", "D8: " + cert.statement());

  const GroupPtr a4 = fixture_group("a4");
  const Character ind = normal_sylow_effective(a4, 2);
  c.expect(ind.degree() == 3, "A4 induction has degree 3");
  c.expect(is_p_effective(ind, 2).effective, "A4 induction is 2-effective");

  for (auto [p, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {5, 2}}) {
    const std::string tag = "(Z/" + std::to_string(p) + ")^" + std::to_string(n);
    const auto all = elementary_abelians(elementary_abelian_group(p, n), p, false);
    const ElementaryAbelian& top = all.back();
    c.expect(top.rank == n, tag + " rank");
    const Character rr = reduced_regular(top);
    c.expect(is_effective(rr).effective, tag + " reduced regular is effective");
    for (const auto& e : elementary_abelians(rr.group(), p, false)) {
      if (e.rank < n) c.expect(fixed_dim(rr, e.subgroup()) > 0, tag + " proper subgroup fixes a vector");
    }
  }
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "group orders", 0, orders},
      {2, "ranks", 60, ranks},
      {3, "involution criterion against Klein-four restrictions", 60, involution},
      {4, "degree-3 effective characters and S^N x S^5", 0, effective_search},
      {5, "ingested U3(3) and U3(4) characters", 0, ingested},
      {6, "GL2(3) character and free product of spheres", 0, gl2_3},
      {7, "M11 amalgam, assembly and S^N x S^383", 0, m11},
      {8, "property suites", 0, properties},
      {9, "p-group constructions", 0, pgroups},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks c;
    const auto t0 = Clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    if (cr.limit > 0) {
      std::ostringstream o;
      o << "took " << s << " s (limit " << cr.limit << " s)";
      c.expect(s <= cr.limit, o.str());
    }
    failed += !c.passed();
    std::printf("%s [%d] %s (%.2f s): %s\n", c.passed() ? "PASS" : "FAIL", cr.id, cr.name.c_str(), s,
                c.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
