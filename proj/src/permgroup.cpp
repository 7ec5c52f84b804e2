#include "eulercert/permgroup.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

#include "eulercert/error.hpp"
#include "eulercert/limits.hpp"

namespace eulercert {

namespace {
std::atomic<std::uint64_t> g_element_bound{Limits::kDefaultElementBound};
std::atomic<std::size_t> g_class_bound{Limits::kDefaultClassBound};
}  // namespace

std::uint64_t Limits::element_bound() { return g_element_bound.load(); }
void Limits::set_element_bound(std::uint64_t bound) { g_element_bound.store(bound); }
std::size_t Limits::class_bound() { return g_class_bound.load(); }
void Limits::set_class_bound(std::size_t bound) { g_class_bound.store(bound); }

// ---------------------------------------------------------------------------
// StabilizerChain

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Permutation>& generators)
    : degree_(degree) {
  for (const auto& g : generators) extend(g);
}

void StabilizerChain::extend(const Permutation& g) {
  if (g.degree() != degree_) throw DegreeMismatch("generator degree differs from group degree");
  if (g.is_identity() || contains(g)) return;
  add_generator(0, g);
}

void StabilizerChain::rebuild_orbit(Level& level) const {
  level.orbit.assign(1, level.base_point);
  level.reps.assign(degree_, std::nullopt);
  level.reps[level.base_point] = Permutation::identity(degree_);
  for (std::size_t i = 0; i < level.orbit.size(); ++i) {
    Point pt = level.orbit[i];
    for (const auto& s : level.generators) {
      Point img = s(pt);
      if (!level.reps[img]) {
        level.reps[img] = *level.reps[pt] * s;
        level.orbit.push_back(img);
      }
    }
  }
}

void StabilizerChain::add_generator(std::size_t level_index, const Permutation& g) {
  if (level_index == levels_.size()) {
    levels_.push_back(Level{static_cast<Point>(g.first_moved()), {}, {}, {}});
  }
  levels_[level_index].generators.push_back(g);
  rebuild_orbit(levels_[level_index]);

  // Every Schreier generator of this level must sift through the levels below.
  // Copies are taken because recursive calls may grow `levels_`.
  const std::vector<Point> orbit = levels_[level_index].orbit;
  const std::vector<Permutation> gens = levels_[level_index].generators;
  for (Point pt : orbit) {
    for (const auto& s : gens) {
      const Level& lv = levels_[level_index];
      Permutation schreier = *lv.reps[pt] * s * lv.reps[s(pt)]->inverse();
      Permutation residue = sift(std::move(schreier), level_index + 1);
      if (!residue.is_identity()) add_generator(level_index + 1, residue);
    }
  }
}

Permutation StabilizerChain::sift(Permutation g, std::size_t level) const {
  for (std::size_t i = level; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    Point img = g(lv.base_point);
    if (!lv.reps[img]) return g;
    g = g * lv.reps[img]->inverse();
  }
  return g;
}

bool StabilizerChain::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw DegreeMismatch("membership test with a permutation of different degree");
  return sift(g, 0).is_identity();
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t order = 1;
  for (const auto& lv : levels_) {
    if (__builtin_mul_overflow(order, lv.orbit.size(), &order)) {
      throw CapacityExceeded("group order exceeds 64 bits");
    }
  }
  return order;
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> out;
  for (const auto& lv : levels_) out.push_back(lv.base_point);
  return out;
}

std::vector<std::size_t> StabilizerChain::transversal_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& lv : levels_) out.push_back(lv.orbit.size());
  return out;
}

std::vector<Permutation> StabilizerChain::enumerate() const {
  // g = u_k * ... * u_1 * u_0 with u_i a coset representative at level i.
  std::vector<Permutation> current{Permutation::identity(degree_)};
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const Level& lv = levels_[i];
    std::vector<Permutation> next;
    next.reserve(current.size() * lv.orbit.size());
    for (Point pt : lv.orbit) {
      for (const auto& x : current) next.push_back(x * *lv.reps[pt]);
    }
    current = std::move(next);
  }
  return current;
}

// ---------------------------------------------------------------------------
// ElementIndex / ConjugacyClasses

ElementIndex::ElementIndex(std::vector<Permutation> elements) : elements_(std::move(elements)) {
  index_.reserve(elements_.size() * 2);
  orders_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    index_.emplace(elements_[i], static_cast<std::uint32_t>(i));
    orders_.push_back(elements_[i].order());
  }
}

std::optional<std::size_t> ElementIndex::find(const Permutation& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ElementIndex::index_of(const Permutation& g) const {
  auto i = find(g);
  if (!i) throw NotAMember("element " + g.cycle_string() + " is not in the group");
  return *i;
}

ConjugacyClasses::ConjugacyClasses(const PermGroup& group, std::vector<ConjugacyClass> classes,
                                   std::vector<std::uint32_t> class_of_element)
    : group_(&group), classes_(std::move(classes)), class_of_(std::move(class_of_element)) {}

std::size_t ConjugacyClasses::class_of(const Permutation& g) const {
  return class_of_[group_->elements().index_of(g)];
}

std::size_t ConjugacyClasses::power_class(std::size_t k, long long n) const {
  return class_of(classes_[k].representative.pow(n));
}

std::optional<std::size_t> ConjugacyClasses::find_label(const std::string& label) const {
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    if (classes_[k].label == label) return k;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators, std::string name)
    : degree_(degree),
      generators_(std::move(generators)),
      name_(std::move(name)),
      chain_(degree, generators_),
      order_(chain_.order()) {}

GroupPtr PermGroup::from_generators(std::size_t degree, std::vector<Permutation> generators,
                                    std::string name) {
  if (degree == 0) throw MalformedPermutation("group degree must be positive");
  for (const auto& g : generators) {
    if (g.degree() != degree) {
      throw DegreeMismatch("generator " + g.cycle_string() + " has degree " +
                           std::to_string(g.degree()) + ", expected " + std::to_string(degree));
    }
  }
  if (generators.empty()) generators.push_back(Permutation::identity(degree));
  return GroupPtr(new PermGroup(degree, std::move(generators), std::move(name)));
}

bool PermGroup::contains(const Permutation& g) const { return chain_.contains(g); }

bool PermGroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (std::size_t j = i + 1; j < generators_.size(); ++j) {
      if (!generators_[i].commutes_with(generators_[j])) return false;
    }
  }
  return true;
}

const ElementIndex& PermGroup::elements() const {
  std::call_once(elements_once_, [this] {
    if (order_ > Limits::element_bound()) {
      throw CapacityExceeded("group order " + std::to_string(order_) + " exceeds the enumeration bound " +
                             std::to_string(Limits::element_bound()));
    }
    elements_ = std::make_unique<ElementIndex>(chain_.enumerate());
  });
  return *elements_;
}

const std::vector<std::vector<std::uint32_t>>& PermGroup::generator_conjugation() const {
  std::call_once(conjugation_once_, [this] {
    const ElementIndex& elems = elements();
    for (const auto& g : generators_) {
      std::vector<std::uint32_t> table(elems.size());
      for (std::size_t i = 0; i < elems.size(); ++i) {
        table[i] = static_cast<std::uint32_t>(elems.index_of(elems[i].conjugate_by(g)));
      }
      conjugation_.push_back(std::move(table));
    }
  });
  return conjugation_;
}

namespace {

std::string class_letters(std::size_t i) {
  std::string s(1, static_cast<char>('A' + i % 26));
  if (i >= 26) s += std::to_string(i / 26);
  return s;
}

}  // namespace

const ConjugacyClasses& PermGroup::classes() const {
  std::call_once(classes_once_, [this] {
    const ElementIndex& elems = elements();
    const auto& conj = generator_conjugation();
    constexpr std::uint32_t kUnassigned = ~std::uint32_t{0};
    std::vector<std::uint32_t> raw(elems.size(), kUnassigned);
    struct Raw {
      std::size_t rep;
      std::uint64_t size;
    };
    std::vector<Raw> found;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (raw[i] != kUnassigned) continue;
      const auto id = static_cast<std::uint32_t>(found.size());
      std::vector<std::size_t> members{i};
      raw[i] = id;
      for (std::size_t m = 0; m < members.size(); ++m) {
        for (const auto& table : conj) {
          std::size_t j = table[members[m]];
          if (raw[j] == kUnassigned) {
            raw[j] = id;
            members.push_back(j);
          }
        }
      }
      std::size_t rep = *std::min_element(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return elems[a] < elems[b];
      });
      found.push_back({rep, members.size()});
    }
    std::vector<std::size_t> order(found.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto oa = elems.order_of(found[a].rep), ob = elems.order_of(found[b].rep);
      if (oa != ob) return oa < ob;
      if (found[a].size != found[b].size) return found[a].size < found[b].size;
      return elems[found[a].rep] < elems[found[b].rep];
    });
    std::vector<std::uint32_t> remap(found.size());
    std::vector<ConjugacyClass> classes;
    std::uint64_t last_order = 0;
    std::size_t letter = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Raw& r = found[order[k]];
      remap[order[k]] = static_cast<std::uint32_t>(k);
      const std::uint64_t o = elems.order_of(r.rep);
      letter = (o == last_order) ? letter + 1 : 0;
      last_order = o;
      classes.push_back({elems[r.rep], r.size, o, std::to_string(o) + class_letters(letter)});
    }
    for (auto& c : raw) c = remap[c];
    classes_ = std::make_unique<ConjugacyClasses>(*this, std::move(classes), std::move(raw));
  });
  return *classes_;
}

// ---------------------------------------------------------------------------
// Subgroups

Subgroup make_subgroup(const GroupPtr& parent, std::vector<Permutation> generators, std::string name) {
  for (const auto& g : generators) {
    if (!parent->contains(g)) throw NotAMember("generator " + g.cycle_string() + " is not in the parent group");
  }
  return Subgroup{parent, PermGroup::from_generators(parent->degree(), std::move(generators), std::move(name))};
}

Subgroup subgroup_from_elements(const GroupPtr& parent, const std::vector<std::size_t>& members,
                                std::string name) {
  const ElementIndex& elems = parent->elements();
  StabilizerChain chain(parent->degree(), {});
  std::vector<Permutation> gens;
  for (std::size_t i : members) {
    if (chain.order() == members.size()) break;
    if (!chain.contains(elems[i])) {
      gens.push_back(elems[i]);
      chain.extend(elems[i]);
    }
  }
  Subgroup h{parent, PermGroup::from_generators(parent->degree(), std::move(gens), std::move(name))};
  if (h.order() != members.size()) throw Error("element set is not closed under multiplication");
  return h;
}

Subgroup whole_group(const GroupPtr& group) { return Subgroup{group, group}; }

std::vector<std::size_t> member_indices(const Subgroup& h) {
  const ElementIndex& parent = h.parent->elements();
  std::vector<std::size_t> out;
  for (const auto& x : h.group->elements().elements()) out.push_back(parent.index_of(x));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup centralizer(const GroupPtr& group, const std::vector<Permutation>& elements) {
  for (const auto& g : elements) {
    if (!group->contains(g)) throw NotAMember("element " + g.cycle_string() + " is not in the group");
  }
  const ElementIndex& elems = group->elements();
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (std::all_of(elements.begin(), elements.end(), [&](const Permutation& g) { return elems[i].commutes_with(g); })) {
      members.push_back(i);
    }
  }
  return subgroup_from_elements(group, members);
}

Subgroup centralizer(const GroupPtr& group, const Permutation& g) {
  return centralizer(group, std::vector<Permutation>{g});
}

Subgroup normalizer(const GroupPtr& group, const Subgroup& h) {
  for (const auto& g : h.generators()) {
    if (!group->contains(g)) throw NotAMember("subgroup generator " + g.cycle_string() + " is not in the group");
  }
  const ElementIndex& elems = group->elements();
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    bool normalizes = std::all_of(h.generators().begin(), h.generators().end(), [&](const Permutation& s) {
      return h.group->contains(s.conjugate_by(elems[i]));
    });
    if (normalizes) members.push_back(i);
  }
  return subgroup_from_elements(group, members);
}

bool is_normal(const GroupPtr& group, const Subgroup& h) {
  for (const auto& g : group->generators()) {
    for (const auto& s : h.generators()) {
      if (!h.group->contains(s.conjugate_by(g))) return false;
    }
  }
  return true;
}

namespace {

std::vector<Permutation> abelian_span(const std::vector<Permutation>& gens, const Permutation& identity) {
  std::vector<Permutation> span{identity};
  std::unordered_set<Permutation, PermutationHash> seen{identity};
  for (std::size_t i = 0; i < span.size(); ++i) {
    for (const auto& g : gens) {
      Permutation y = span[i] * g;
      if (seen.insert(y).second) span.push_back(y);
    }
  }
  return span;
}

// Cyclic decomposition of an abelian p-group by depth-first search over
// candidates of decreasing order.
bool decompose_p_group(const std::vector<Permutation>& candidates, std::size_t target, const Permutation& identity,
                       std::vector<Permutation>& chosen, std::size_t span_size) {
  if (span_size == target) return true;
  for (const auto& x : candidates) {
    chosen.push_back(x);
    const std::size_t grown = abelian_span(chosen, identity).size();
    if (grown == span_size * x.order() &&
        decompose_p_group(candidates, target, identity, chosen, grown)) {
      return true;
    }
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::pair<std::vector<std::uint64_t>, std::vector<Permutation>> abelian_invariants(
    const std::vector<Permutation>& elements) {
  if (elements.empty()) throw Error("empty element list");
  const Permutation identity = Permutation::identity(elements.front().degree());
  std::vector<std::vector<Permutation>> factors_by_prime;  // each sorted by decreasing order
  for (std::uint64_t q : prime_divisors(elements.size())) {
    std::vector<Permutation> part;
    for (const auto& x : elements) {
      if (p_part(x.order(), q) == x.order()) part.push_back(x);
    }
    std::vector<Permutation> candidates;
    for (const auto& x : part) {
      if (!x.is_identity()) candidates.push_back(x);
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const Permutation& a, const Permutation& b) {
      if (a.order() != b.order()) return a.order() > b.order();
      return a < b;
    });
    std::vector<Permutation> chosen;
    if (!decompose_p_group(candidates, part.size(), identity, chosen, 1)) {
      throw Error("no cyclic decomposition found; group is not abelian");
    }
    factors_by_prime.push_back(std::move(chosen));
  }
  // Combine the i-th largest factor of every prime into one invariant factor.
  std::size_t k = 0;
  for (const auto& f : factors_by_prime) k = std::max(k, f.size());
  std::vector<std::uint64_t> orders;
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < k; ++i) {
    Permutation g = identity;
    std::uint64_t n = 1;
    for (const auto& f : factors_by_prime) {
      if (i < f.size()) {
        g = g * f[i];
        n *= f[i].order();
      }
    }
    orders.push_back(n);
    gens.push_back(g);
  }
  std::reverse(orders.begin(), orders.end());
  std::reverse(gens.begin(), gens.end());
  return {orders, gens};
}

CenterDecomposition center(const GroupPtr& group) {
  Subgroup z = centralizer(group, group->generators());
  CenterDecomposition out{z, {}, {}};
  if (z.order() > 1) {
    auto [orders, gens] = abelian_invariants(z.group->elements().elements());
    out.invariant_factors = std::move(orders);
    out.factor_generators = std::move(gens);
  }
  return out;
}

SylowSubgroup sylow(const GroupPtr& group, std::uint64_t p) {
  if (!is_prime(p) || group->order() % p != 0) {
    throw HypothesisFailure("prime " + std::to_string(p) + " does not divide |G| = " + std::to_string(group->order()));
  }
  const std::uint64_t target = p_part(group->order(), p);
  Subgroup current = whole_group(PermGroup::from_generators(group->degree(), {}));
  current.parent = group;
  // Extend a p-subgroup P by an element of N_G(P) whose p-th power lies in P.
  while (current.order() < target) {
    Subgroup n = normalizer(group, current);
    std::optional<Permutation> ext;
    for (const auto& x : n.group->elements().elements()) {
      if (!current.group->contains(x) && current.group->contains(x.pow(static_cast<long long>(p)))) {
        if (!ext || x < *ext) ext = x;
      }
    }
    if (!ext) throw Error("Sylow extension failed");
    std::vector<Permutation> gens = current.generators();
    if (gens.size() == 1 && gens.front().is_identity()) gens.clear();
    gens.push_back(*ext);
    current = make_subgroup(group, std::move(gens));
  }
  SylowSubgroup out;
  out.subgroup = current;
  out.prime = p;
  out.normal = is_normal(group, current);
  out.abelian = current.group->is_abelian();
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t out = 1;
  while (n > 0 && n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

bool is_p_group(const PermGroup& group, std::uint64_t p) { return p_part(group.order(), p) == group.order(); }

}  // namespace eulercert
