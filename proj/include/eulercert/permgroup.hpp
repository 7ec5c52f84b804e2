#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "eulercert/permutation.hpp"

namespace eulercert {

/// Base and strong generating set built by deterministic Schreier-Sims.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, const std::vector<Permutation>& generators);

  std::size_t degree() const { return degree_; }
  std::uint64_t order() const;
  bool contains(const Permutation& g) const;
  /// Adds `g` as a generator; a no-op when it is already a member.
  void extend(const Permutation& g);

  std::vector<Point> base() const;
  std::vector<std::size_t> transversal_sizes() const;

  /// Every element, each once, as a product of coset representatives.
  std::vector<Permutation> enumerate() const;

 private:
  struct Level {
    Point base_point;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> reps;  // indexed by point
  };

  void add_generator(std::size_t level, const Permutation& g);
  void rebuild_orbit(Level& level) const;
  /// Residue after sifting from `level`; identity iff a member of that stabilizer.
  Permutation sift(Permutation g, std::size_t level) const;

  std::size_t degree_;
  std::vector<Level> levels_;
};

/// All elements of a group with a hash index and cached element orders.
class ElementIndex {
 public:
  explicit ElementIndex(std::vector<Permutation> elements);

  std::size_t size() const { return elements_.size(); }
  const Permutation& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Permutation>& elements() const { return elements_; }
  std::optional<std::size_t> find(const Permutation& g) const;
  /// Throws NotAMember.
  std::size_t index_of(const Permutation& g) const;
  std::uint64_t order_of(std::size_t i) const { return orders_[i]; }

 private:
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index_;
  std::vector<std::uint64_t> orders_;
};

struct ConjugacyClass {
  Permutation representative;  // lexicographically least member
  std::uint64_t size = 0;
  std::uint64_t element_order = 0;
  std::string label;  // "1A", "2A", "2B", ...
};

class PermGroup;

/// Conjugacy classes ordered identity first, then by element order, class
/// size and least representative.
class ConjugacyClasses {
 public:
  ConjugacyClasses(const PermGroup& group, std::vector<ConjugacyClass> classes,
                   std::vector<std::uint32_t> class_of_element);

  std::size_t size() const { return classes_.size(); }
  const ConjugacyClass& operator[](std::size_t k) const { return classes_[k]; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }

  std::size_t class_of_index(std::size_t element_index) const { return class_of_[element_index]; }
  /// Resolver: class index of a group element. Throws NotAMember.
  std::size_t class_of(const Permutation& g) const;
  /// Class of rep(k)^n.
  std::size_t power_class(std::size_t k, long long n) const;
  std::size_t inverse_class(std::size_t k) const { return power_class(k, -1); }
  std::optional<std::size_t> find_label(const std::string& label) const;

 private:
  const PermGroup* group_;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::uint32_t> class_of_;
};

class PermGroup;
using GroupPtr = std::shared_ptr<const PermGroup>;

/// Finite permutation group backed by a stabilizer chain. Immutable; the
/// element list and class data are computed on first use.
class PermGroup {
 public:
  /// Throws DegreeMismatch if a generator has the wrong degree. An empty
  /// generator list yields the trivial group.
  static GroupPtr from_generators(std::size_t degree, std::vector<Permutation> generators,
                                  std::string name = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  std::uint64_t order() const { return order_; }
  const StabilizerChain& chain() const { return chain_; }

  bool contains(const Permutation& g) const;
  Permutation identity() const { return Permutation::identity(degree_); }
  bool is_abelian() const;

  /// Throws CapacityExceeded above Limits::element_bound().
  const ElementIndex& elements() const;
  const ConjugacyClasses& classes() const;
  /// For each generator g, the map i -> index of elements()[i]^g.
  const std::vector<std::vector<std::uint32_t>>& generator_conjugation() const;

 private:
  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name);

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::string name_;
  StabilizerChain chain_;
  std::uint64_t order_;

  mutable std::once_flag elements_once_;
  mutable std::unique_ptr<ElementIndex> elements_;
  mutable std::once_flag classes_once_;
  mutable std::unique_ptr<ConjugacyClasses> classes_;
  mutable std::once_flag conjugation_once_;
  mutable std::vector<std::vector<std::uint32_t>> conjugation_;
};

/// A subgroup together with its parent. `group` is a standalone PermGroup on
/// the parent's points.
struct Subgroup {
  GroupPtr parent;
  GroupPtr group;

  std::uint64_t order() const { return group->order(); }
  const std::vector<Permutation>& generators() const { return group->generators(); }
};

/// Throws NotAMember if a generator is not in `parent`.
Subgroup make_subgroup(const GroupPtr& parent, std::vector<Permutation> generators,
                       std::string name = {});
/// Subgroup on an explicit element set of `parent` (element indices); a small
/// generating set is chosen greedily in index order.
Subgroup subgroup_from_elements(const GroupPtr& parent, const std::vector<std::size_t>& members,
                                std::string name = {});
Subgroup whole_group(const GroupPtr& group);
/// Indices (in the parent's element list) of all elements of `h`.
std::vector<std::size_t> member_indices(const Subgroup& h);

Subgroup centralizer(const GroupPtr& group, const Permutation& g);
Subgroup centralizer(const GroupPtr& group, const std::vector<Permutation>& elements);
Subgroup normalizer(const GroupPtr& group, const Subgroup& h);
bool is_normal(const GroupPtr& group, const Subgroup& h);

struct CenterDecomposition {
  Subgroup subgroup;
  /// n_1 | n_2 | ... | n_k with Z(G) = <x_1> x ... x <x_k>, |x_j| = n_j.
  std::vector<std::uint64_t> invariant_factors;
  std::vector<Permutation> factor_generators;
};
CenterDecomposition center(const GroupPtr& group);

/// Direct decomposition of an abelian group (given by its element list) into
/// cyclic factors with ascending divisibility.
std::pair<std::vector<std::uint64_t>, std::vector<Permutation>> abelian_invariants(
    const std::vector<Permutation>& elements);

struct SylowSubgroup {
  Subgroup subgroup;
  std::uint64_t prime = 0;
  bool normal = false;
  bool abelian = false;
};
/// Throws HypothesisFailure unless p is a prime dividing |G|.
SylowSubgroup sylow(const GroupPtr& group, std::uint64_t p);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);
/// Whether every element of the group has p-power order.
bool is_p_group(const PermGroup& group, std::uint64_t p);

}  // namespace eulercert
