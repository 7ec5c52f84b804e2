#include "eulercert/effectiveness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "eulercert/error.hpp"
#include "eulercert/io.hpp"

namespace eulercert {

using Json = nlohmann::json;

namespace {

using Distribution = std::vector<std::uint64_t>;

Distribution distribution_of(const GroupPtr& g, const std::vector<std::size_t>& members) {
  const auto& cls = g->classes();
  Distribution d(cls.size(), 0);
  for (std::size_t m : members) ++d[cls.class_of_index(m)];
  return d;
}

// Distribution of <x> for an element of class c and prime order p.
Distribution cyclic_distribution(const GroupPtr& g, std::size_t c, std::uint64_t p) {
  const auto& cls = g->classes();
  Distribution d(cls.size(), 0);
  d[0] = 1;
  for (std::uint64_t k = 1; k < p; ++k) ++d[cls.power_class(c, static_cast<long long>(k))];
  return d;
}

std::vector<std::size_t> support(const Distribution& d) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k]) out.push_back(k);
  }
  return out;
}

std::optional<std::uint64_t> try_fixed_dim(const ClassFunction& chi, const Distribution& d) {
  if (!chi.missing(support(d)).empty()) return std::nullopt;
  return fixed_dim(chi, d);
}

// Some <x> <= E with complete data and fixed_dim 0, scanning classes in order.
std::optional<Permutation> free_cyclic_in(const ClassFunction& chi, const ElementaryAbelian& e) {
  const auto& g = chi.group();
  const auto& cls = g->classes();
  std::map<std::size_t, std::size_t> first_of_class;
  for (std::size_t m : e.members) {
    const std::size_t c = cls.class_of_index(m);
    if (c != 0) first_of_class.emplace(c, m);
  }
  for (const auto& [c, m] : first_of_class) {
    auto fd = try_fixed_dim(chi, cyclic_distribution(g, c, e.p));
    if (fd && *fd == 0) return g->elements()[m];
  }
  return std::nullopt;
}

std::optional<FreeElementWitness> free_element(const ClassFunction& chi, std::uint64_t p) {
  const auto& g = chi.group();
  const auto& cls = g->classes();
  for (std::size_t c = 1; c < cls.size(); ++c) {
    if (cls[c].element_order != p) continue;
    auto fd = try_fixed_dim(chi, cyclic_distribution(g, c, p));
    if (fd && *fd == 0) return FreeElementWitness{cls[c].label, cls[c].representative, 0};
  }
  return std::nullopt;
}

// Rejects class functions that are visibly not characters of positive degree.
void check_degree(const ClassFunction& chi) {
  const Rational d = chi.degree();
  if (d <= 0 || denominator(d) != 1) {
    throw InvalidCharacter("degree of " + (chi.name().empty() ? std::string("class function") : chi.name()) +
                           " is " + d.str() + ", not a positive integer");
  }
}

}  // namespace

bool acts_freely(const ClassFunction& chi, const Permutation& g) {
  const GroupPtr& group = chi.group();
  if (!group->contains(g)) throw NotAMember("element is not in the group of the character");
  std::vector<std::size_t> members;
  Permutation x = g;
  const std::uint64_t n = g.order();
  for (std::uint64_t k = 0; k < n; ++k, x = x * g) members.push_back(group->elements().index_of(x));
  return fixed_dim(chi, distribution_of(group, members)) == 0;
}

PrimeVerdict p_effective_at_rank(const ClassFunction& chi, std::uint64_t p, unsigned rank, bool all_subgroups) {
  check_degree(chi);
  const GroupPtr& group = chi.group();
  PrimeVerdict v;
  v.p = p;
  v.required_rank = rank;
  v.p_rank = group->order() % p == 0 ? p_rank(group, p) : 0;
  v.free_element = free_element(chi, p);
  if (v.p_rank < rank || rank == 0) {
    v.vacuous = v.p_rank < rank;
    v.effective = v.vacuous;
    return v;
  }
  v.effective = true;
  for (const auto& e : elementary_abelians(group, p, !all_subgroups)) {
    if (e.rank != rank) continue;
    FixedDimWitness w{p, e.rank, e.generators, 0, std::nullopt};
    const Distribution d = distribution_of(group, e.members);
    if (auto fd = try_fixed_dim(chi, d)) {
      w.fixed_dim = *fd;
    } else if (auto x = free_cyclic_in(chi, e)) {
      w.cyclic_generator = *x;
    } else {
      throw InsufficientData("effectiveness at p=" + std::to_string(p) +
                                 (chi.name().empty() ? "" : " (" + chi.name() + ")"),
                             chi.missing(support(d)));
    }
    if (w.fixed_dim != 0) v.effective = false;
    v.witnesses.push_back(std::move(w));
  }
  return v;
}

PrimeVerdict is_p_effective(const ClassFunction& chi, std::uint64_t p) {
  return p_effective_at_rank(chi, p, rank(chi.group()));
}

EffectivenessCertificate is_effective(const ClassFunction& chi) {
  EffectivenessCertificate c{chi, rank(chi.group()), {}, false};
  const auto primes = maximal_rank_primes(chi.group());
  c.effective = !primes.empty();
  for (std::uint64_t p : primes) {
    c.primes.push_back(p_effective_at_rank(chi, p, c.group_rank));
    c.effective = c.effective && c.primes.back().effective;
  }
  return c;
}

InvolutionCriterion involution_criterion(const ClassFunction& chi) {
  const auto& cls = chi.classes();
  std::vector<std::size_t> involutions;
  for (std::size_t k = 1; k < cls.size(); ++k) {
    if (cls[k].element_order == 2) involutions.push_back(k);
  }
  InvolutionCriterion out;
  if (involutions.empty()) return out;
  involutions.push_back(0);
  chi.require(involutions, "involution criterion");
  involutions.pop_back();
  const Cyclotomic& t = chi.value(involutions.front());
  out.applies = std::all_of(involutions.begin(), involutions.end(), [&](std::size_t k) { return chi.value(k) == t; });
  if (out.applies) {
    out.involution_value = t;
    out.passes = chi.value(0) == t.scaled(Rational(-3));
  }
  return out;
}

bool klein_four_restrictions_reduced_regular(const ClassFunction& chi) {
  const GroupPtr& group = chi.group();
  if (group->order() % 4 != 0) return true;
  const auto& cls = group->classes();
  for (const auto& e : elementary_abelians(group, 2, false)) {
    if (e.rank != 2) continue;
    const Cyclotomic& one = chi.value(0);
    for (std::size_t m : e.members) {
      const std::size_t c = cls.class_of_index(m);
      if (c == 0) continue;
      // chi|V = k (reg - 1) means chi(1) = 3k and chi(v) = -k.
      if (chi.value(c).scaled(Rational(-3)) != one) return false;
    }
    const Rational k = one.to_rational() / 3;
    if (k < 0 || denominator(k) != 1) return false;
  }
  return true;
}

IsotropyProfile isotropy_profile(const std::vector<ClassFunction>& factors) {
  if (factors.empty()) throw Error("isotropy profile of an empty product");
  const GroupPtr& group = factors.front().group();
  for (const auto& f : factors) {
    if (f.group() != group) throw Error("product factors live on different groups");
    check_degree(f);
  }
  IsotropyProfile out;
  out.factors = factors;
  for (std::uint64_t p : prime_divisors(group->order())) {
    for (const auto& e : elementary_abelians(group, p, true)) {
      IsotropyRow row{p, e.rank, e.generators, {}, std::nullopt};
      const Distribution d = distribution_of(group, e.members);
      bool all_positive = true, some_zero = false;
      for (const auto& f : factors) {
        auto fd = try_fixed_dim(f, d);
        row.fixed_dims.push_back(fd);
        if (fd) {
          all_positive = all_positive && *fd > 0;
          some_zero = some_zero || *fd == 0;
        } else {
          all_positive = false;
          some_zero = some_zero || free_cyclic_in(f, e).has_value();
        }
      }
      // E fixes a point of S(V_1) x ... x S(V_k) iff it fixes a point on every factor.
      if (some_zero) {
        row.fixes_point = false;
      } else if (all_positive) {
        row.fixes_point = true;
        out.max_isotropy_rank = std::max(out.max_isotropy_rank, e.rank);
      } else {
        out.undetermined = true;
        out.max_isotropy_rank = std::max(out.max_isotropy_rank, e.rank);
      }
      out.rows.push_back(std::move(row));
    }
  }
  out.free = out.max_isotropy_rank == 0 && !out.undetermined;
  return out;
}

std::vector<Character> search_effective(const GroupPtr& group, unsigned max_degree,
                                        const std::vector<std::uint64_t>& primes) {
  const auto table = character_table(group);
  const unsigned r = rank(group);
  std::vector<std::uint64_t> ps = primes.empty() ? maximal_rank_primes(group) : primes;
  const std::size_t n = table->irreducibles.size();

  std::vector<bool> allowed(n, true);
  for (std::uint64_t p : ps) {
    if (group->order() % p != 0 || p_rank(group, p) < r) continue;
    for (const auto& e : elementary_abelians(group, p, true)) {
      if (e.rank != r) continue;
      const Distribution d = distribution_of(group, e.members);
      for (std::size_t i = 0; i < n; ++i) {
        if (allowed[i] && fixed_dim(table->irreducibles[i], d) != 0) allowed[i] = false;
      }
    }
  }

  std::vector<long long> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = static_cast<long long>(numerator(table->irreducibles[i].degree()));

  std::vector<Character> out;
  std::vector<long long> m(n, 0);
  std::function<void(std::size_t, long long)> fill = [&](std::size_t i, long long left) {
    if (i == n) {
      if (left == 0) out.push_back(table->combination(m));
      return;
    }
    if (!allowed[i]) {
      fill(i + 1, left);
      return;
    }
    for (long long k = 0; k * degree[i] <= left; ++k) {
      m[i] = k;
      fill(i + 1, left - k * degree[i]);
    }
    m[i] = 0;
  };
  for (long long d = 1; d <= static_cast<long long>(max_degree); ++d) fill(0, d);
  return out;
}

Character pgroup_effective_character(const GroupPtr& p_group) {
  const auto ps = prime_divisors(p_group->order());
  if (ps.size() != 1) throw HypothesisFailure("group of order " + std::to_string(p_group->order()) + " is not a p-group");
  const std::uint64_t p = ps.front();
  Character chi = central_induction(p_group, 0);
  chi.set_name("V1");
  const PrimeVerdict v = p_effective_at_rank(chi, p, p_rank(p_group, p));
  if (!v.effective) throw HypothesisFailure("central induction is not effective");
  return chi;
}

Character normal_sylow_effective(const GroupPtr& group, std::uint64_t p) {
  const SylowSubgroup s = sylow(group, p);
  if (!s.normal) throw HypothesisFailure("Sylow " + std::to_string(p) + "-subgroup is not normal");
  Character psi = pgroup_effective_character(s.subgroup.group);
  Character chi = induce(psi, s.subgroup);
  chi.set_name("Ind(V1)");
  const PrimeVerdict v = p_effective_at_rank(chi, p, p_rank(group, p));
  if (!v.effective) throw HypothesisFailure("induced character is not effective");
  return chi;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

Json generators_json(const std::vector<Permutation>& gens) {
  Json a = Json::array();
  for (const auto& g : gens) a.push_back(io::permutation_to_json(g));
  return a;
}

}  // namespace

Json to_json(const PrimeVerdict& v) {
  Json j{{"p", v.p},
         {"p_rank", v.p_rank},
         {"required_rank", v.required_rank},
         {"vacuous", v.vacuous},
         {"effective", v.effective}};
  Json ws = Json::array();
  for (const auto& w : v.witnesses) {
    Json x{{"rank", w.rank}, {"generators", generators_json(w.generators)}, {"fixed_dim", w.fixed_dim}};
    if (w.cyclic_generator) x["bounded_by"] = io::permutation_to_json(*w.cyclic_generator);
    ws.push_back(std::move(x));
  }
  j["witnesses"] = std::move(ws);
  if (v.free_element) {
    j["free_element"] = {{"class", v.free_element->class_label},
                         {"element", io::permutation_to_json(v.free_element->element)},
                         {"fixed_dim", v.free_element->fixed_dim}};
  }
  return j;
}

Json to_json(const EffectivenessCertificate& c) {
  Json ps = Json::array();
  for (const auto& v : c.primes) ps.push_back(to_json(v));
  return {{"character", class_function_to_json(c.character)},
          {"group_rank", c.group_rank},
          {"primes", std::move(ps)},
          {"effective", c.effective}};
}

Json to_json(const IsotropyProfile& profile) {
  Json factors = Json::array();
  for (const auto& f : profile.factors) factors.push_back(class_function_to_json(f));
  Json rows = Json::array();
  for (const auto& r : profile.rows) {
    Json dims = Json::array();
    for (const auto& d : r.fixed_dims) dims.push_back(d ? Json(*d) : Json(nullptr));
    rows.push_back({{"p", r.p},
                    {"rank", r.rank},
                    {"generators", generators_json(r.generators)},
                    {"fixed_dims", std::move(dims)},
                    {"fixes_point", r.fixes_point ? Json(*r.fixes_point) : Json(nullptr)}});
  }
  return {{"factors", std::move(factors)},
          {"rows", std::move(rows)},
          {"max_isotropy_rank", profile.max_isotropy_rank},
          {"undetermined", profile.undetermined},
          {"free", profile.free}};
}

}  // namespace eulercert
