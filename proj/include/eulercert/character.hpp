#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "eulercert/cyclotomic.hpp"
#include "eulercert/permgroup.hpp"
#include "eulercert/ranks.hpp"

namespace eulercert {

enum class Provenance { ComputedIrreducible, Combination, Ingested };

std::string to_string(Provenance p);

/// A class function on a group, possibly defined on only some classes.
class ClassFunction {
 public:
  ClassFunction(GroupPtr group, std::vector<std::optional<Cyclotomic>> values, std::string name = {},
                Provenance provenance = Provenance::Combination);
  ClassFunction(GroupPtr group, const std::vector<Cyclotomic>& values, std::string name = {},
                Provenance provenance = Provenance::Combination);

  const GroupPtr& group() const { return group_; }
  const ConjugacyClasses& classes() const { return group_->classes(); }
  std::size_t size() const { return values_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  Provenance provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = p; }

  bool defined(std::size_t k) const { return values_[k].has_value(); }
  bool is_complete() const;
  const std::optional<Cyclotomic>& maybe(std::size_t k) const { return values_[k]; }
  /// Throws InsufficientData naming the class.
  const Cyclotomic& value(std::size_t k) const;
  const Cyclotomic& at(const Permutation& g) const { return value(classes().class_of(g)); }
  /// Value at the identity as a rational number.
  Rational degree() const;

  /// Labels of the classes in `needed` without a value.
  std::vector<std::string> missing(const std::vector<std::size_t>& needed) const;
  /// Throws InsufficientData when any class in `needed` lacks a value.
  void require(const std::vector<std::size_t>& needed, const std::string& context) const;
  void require_complete(const std::string& context) const;

  ClassFunction conj() const;
  ClassFunction scaled(long long k) const;
  /// Pointwise sum and product; undefined wherever either side is undefined.
  friend ClassFunction operator+(const ClassFunction& a, const ClassFunction& b);
  friend ClassFunction operator*(const ClassFunction& a, const ClassFunction& b);

  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.group_ == b.group_ && a.values_ == b.values_;
  }

 private:
  GroupPtr group_;
  std::vector<std::optional<Cyclotomic>> values_;
  std::string name_;
  Provenance provenance_;
};

using Character = ClassFunction;

struct CharacterTable {
  GroupPtr group;
  std::vector<Character> irreducibles;

  /// Sum of m_i * irreducibles[i].
  Character combination(const std::vector<long long>& multiplicities, std::string name = {}) const;
};

/// Dixon-Schneider over a prime field, lifted to exact values and checked
/// for orthogonality. Results are cached per group. Throws CapacityExceeded
/// above Limits::class_bound() classes.
std::shared_ptr<const CharacterTable> character_table(const GroupPtr& group);

/// (1/|G|) sum_g a(g) conj(b(g)); both must be complete.
Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);
/// Multiplicities of the irreducibles in a virtual character.
/// Throws InvalidCharacter when some multiplicity is not an integer.
std::vector<long long> decompose(const ClassFunction& chi, const CharacterTable& table);

/// fusion[c] = class of the parent containing the H-class c.
std::vector<std::size_t> class_fusion(const Subgroup& h);
ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& h);
ClassFunction induce(const ClassFunction& chi, const Subgroup& h);

/// Number of elements of h in each class of h.parent.
std::vector<std::uint64_t> class_distribution(const Subgroup& h);
/// dim V^H. Throws InsufficientData or, when the average is not a
/// nonnegative integer, InvalidCharacter.
std::uint64_t fixed_dim(const ClassFunction& chi, const Subgroup& h);
/// Same, for a subgroup given by its class distribution (see class_distribution).
std::uint64_t fixed_dim(const ClassFunction& chi, const std::vector<std::uint64_t>& distribution);

Character trivial_character(const GroupPtr& group);
Character regular_character(const GroupPtr& group);
/// Regular minus trivial character of E, as a character of E itself.
Character reduced_regular(const ElementaryAbelian& e);
/// Ind_Z^G of the linear character sending x_j to zeta_{n_j} and the other
/// invariant-factor generators to 1. Throws HypothesisFailure for a trivial center.
Character central_induction(const GroupPtr& group, std::size_t j);

/// Values are matched to classes by element order and class size. Entries
/// may carry "rep" (an element) or "rational": true (the value holds on the
/// whole rational class) to resolve ties. Throws FormatError.
ClassFunction ingest_class_function(const nlohmann::json& j, const GroupPtr& group);

nlohmann::json cyclotomic_to_json(const Cyclotomic& v);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);
/// Defined classes only, each with label, order, size, representative and value.
nlohmann::json class_function_to_json(const ClassFunction& chi);

}  // namespace eulercert
