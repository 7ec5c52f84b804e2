#pragma once

// Brute-force reference computations used to cross-check the library.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "eulercert/character.hpp"
#include "eulercert/permutation.hpp"

namespace oracle {

using eulercert::Permutation;

inline std::set<Permutation> closure(const std::vector<Permutation>& gens) {
  std::set<Permutation> seen{Permutation::identity(gens.front().degree())};
  std::vector<Permutation> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    Permutation x = todo.back();
    todo.pop_back();
    for (const auto& g : gens) {
      Permutation y = x * g;
      if (seen.insert(y).second) todo.push_back(y);
    }
  }
  return seen;
}

inline std::multiset<std::size_t> class_sizes(const std::set<Permutation>& elems) {
  std::set<Permutation> done;
  std::multiset<std::size_t> sizes;
  for (const auto& x : elems) {
    if (done.count(x)) continue;
    std::set<Permutation> cls;
    for (const auto& g : elems) cls.insert(x.conjugate_by(g));
    done.insert(cls.begin(), cls.end());
    sizes.insert(cls.size());
  }
  return sizes;
}

}  // namespace oracle

namespace oracle {

// Elementary abelian subgroups of order p^k, k >= 1, found by testing every
// subset of order-p elements for closure. Only for groups with few such elements.
inline std::vector<std::set<Permutation>> elementary_abelians_by_subsets(const std::set<Permutation>& elems,
                                                                         std::uint64_t p) {
  std::vector<Permutation> xs;
  for (const auto& x : elems) {
    if (x.order() == p) xs.push_back(x);
  }
  const Permutation id = Permutation::identity(elems.begin()->degree());
  std::vector<std::set<Permutation>> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << xs.size()); ++mask) {
    std::set<Permutation> s{id};
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (mask >> i & 1) s.insert(xs[i]);
    }
    if (s.size() != static_cast<std::size_t>(__builtin_popcountll(mask)) + 1) continue;
    bool ok = true;
    for (const auto& a : s) {
      for (const auto& b : s) {
        if (!a.commutes_with(b) || !s.count(a * b)) ok = false;
      }
    }
    if (ok) out.push_back(s);
  }
  return out;
}

inline std::size_t conjugacy_class_count(const std::vector<std::set<Permutation>>& subgroups,
                                         const std::set<Permutation>& elems) {
  std::set<std::set<Permutation>> done;
  std::size_t classes = 0;
  for (const auto& h : subgroups) {
    if (done.count(h)) continue;
    ++classes;
    for (const auto& g : elems) {
      std::set<Permutation> c;
      for (const auto& x : h) c.insert(x.conjugate_by(g));
      done.insert(c);
    }
  }
  return classes;
}

}  // namespace oracle

namespace oracle {

// Every nonzero multiplicity vector with sum m_i deg_i <= max_degree.
inline std::vector<std::vector<long long>> combinations(const eulercert::CharacterTable& t, long long max_degree) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> m(t.irreducibles.size(), 0);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long left) {
    if (i == m.size()) {
      if (std::any_of(m.begin(), m.end(), [](long long x) { return x != 0; })) out.push_back(m);
      return;
    }
    const long long d = static_cast<long long>(boost::multiprecision::numerator(t.irreducibles[i].degree()));
    for (long long k = 0; k * d <= left; ++k) {
      m[i] = k;
      rec(i + 1, left - k * d);
    }
    m[i] = 0;
  };
  rec(0, max_degree);
  return out;
}

// All Klein four-subgroups, found from pairs of commuting involutions.
inline std::vector<eulercert::Subgroup> klein_fours(const eulercert::GroupPtr& g) {
  std::vector<Permutation> inv;
  for (const auto& x : g->elements().elements()) {
    if (x.order() == 2) inv.push_back(x);
  }
  std::set<std::set<Permutation>> seen;
  std::vector<eulercert::Subgroup> out;
  for (std::size_t i = 0; i < inv.size(); ++i) {
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      if (!inv[i].commutes_with(inv[j])) continue;
      auto v = oracle::closure({inv[i], inv[j]});
      if (seen.insert(v).second) out.push_back(eulercert::make_subgroup(g, {inv[i], inv[j]}));
    }
  }
  return out;
}

// chi|V = k (reg_V - 1) for every Klein four V, checked by decomposing the restriction.
inline bool klein_oracle(const eulercert::Character& chi, const std::vector<eulercert::Subgroup>& fours) {
  for (const auto& v : fours) {
    const auto table = eulercert::character_table(v.group);
    const auto m = eulercert::decompose(eulercert::restrict_to(chi, v), *table);
    // irreducibles[0] is the trivial character.
    if (m[0] != 0) return false;
    for (std::size_t i = 2; i < m.size(); ++i) {
      if (m[i] != m[1]) return false;
    }
  }
  return true;
}

}  // namespace oracle
