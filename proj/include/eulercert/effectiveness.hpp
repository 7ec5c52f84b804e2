#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "eulercert/character.hpp"
#include "eulercert/ranks.hpp"

namespace eulercert {

/// fixed_dim of a character on one elementary abelian subgroup. When the
/// character lacks values on some classes meeting E, a cyclic subgroup
/// <x> <= E with fixed_dim 0 bounds fixed_dim(E) from above and is recorded
/// in `cyclic_generator`.
struct FixedDimWitness {
  std::uint64_t p = 0;
  unsigned rank = 0;
  std::vector<Permutation> generators;
  std::uint64_t fixed_dim = 0;
  std::optional<Permutation> cyclic_generator;
};

/// An element of prime order acting without fixed points on S(V).
struct FreeElementWitness {
  std::string class_label;
  Permutation element;
  std::uint64_t fixed_dim = 0;
};

struct PrimeVerdict {
  std::uint64_t p = 0;
  unsigned p_rank = 0;
  unsigned required_rank = 0;
  bool vacuous = false;
  bool effective = false;
  std::vector<FixedDimWitness> witnesses;
  std::optional<FreeElementWitness> free_element;
};

struct EffectivenessCertificate {
  Character character;
  unsigned group_rank = 0;
  std::vector<PrimeVerdict> primes;  // one per maximal-rank prime
  bool effective = false;
};

/// fixed_dim(chi, <g>) == 0.
bool acts_freely(const ClassFunction& chi, const Permutation& g);

/// Checks fixed_dim(chi, E) = 0 for every conjugacy representative E of rank
/// `rank` at p (all such subgroups when `all_subgroups`). Vacuously true when
/// r_p(G) < rank. Throws InsufficientData naming the missing classes.
PrimeVerdict p_effective_at_rank(const ClassFunction& chi, std::uint64_t p, unsigned rank,
                                 bool all_subgroups = false);
PrimeVerdict is_p_effective(const ClassFunction& chi, std::uint64_t p);
EffectivenessCertificate is_effective(const ClassFunction& chi);

struct InvolutionCriterion {
  bool applies = false;  // chi is constant on involutions
  bool passes = false;   // and chi(1) = -3 chi(2)
  std::optional<Cyclotomic> involution_value;
};
InvolutionCriterion involution_criterion(const ClassFunction& chi);
/// Whether the restriction of chi to every Klein four-subgroup is a
/// nonnegative multiple of its reduced regular character.
bool klein_four_restrictions_reduced_regular(const ClassFunction& chi);

struct IsotropyRow {
  std::uint64_t p = 0;
  unsigned rank = 0;
  std::vector<Permutation> generators;
  std::vector<std::optional<std::uint64_t>> fixed_dims;  // per factor; empty when data is missing
  std::optional<bool> fixes_point;                        // unset when undetermined
};

struct IsotropyProfile {
  std::vector<Character> factors;
  std::vector<IsotropyRow> rows;  // every elementary abelian representative, all primes
  unsigned max_isotropy_rank = 0;
  /// Set when some subgroup could not be decided; max_isotropy_rank is then an upper bound.
  bool undetermined = false;
  bool free = false;
};
IsotropyProfile isotropy_profile(const std::vector<ClassFunction>& factors);

/// Effective characters (at `primes`, or at every maximal-rank prime when
/// empty) of degree <= max_degree, ordered by degree and then by the
/// multiplicity vector.
std::vector<Character> search_effective(const GroupPtr& group, unsigned max_degree,
                                        const std::vector<std::uint64_t>& primes = {});

/// Central induction for a p-group, certified on its maximal-rank elementary abelians.
Character pgroup_effective_character(const GroupPtr& p_group);
/// Ind_P^G of pgroup_effective_character(P) for a normal Sylow p-subgroup P.
/// Throws HypothesisFailure when Syl_p(G) is not normal.
Character normal_sylow_effective(const GroupPtr& group, std::uint64_t p);

nlohmann::json to_json(const PrimeVerdict& v);
nlohmann::json to_json(const EffectivenessCertificate& c);
nlohmann::json to_json(const IsotropyProfile& profile);

}  // namespace eulercert
