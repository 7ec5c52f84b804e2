#include "eulercert/character.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "eulercert/error.hpp"
#include "eulercert/limits.hpp"

namespace eulercert {

using Json = nlohmann::json;

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ComputedIrreducible: return "computed-irreducible";
    case Provenance::Combination: return "combination";
    case Provenance::Ingested: return "ingested-unverified";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ClassFunction

ClassFunction::ClassFunction(GroupPtr group, std::vector<std::optional<Cyclotomic>> values, std::string name,
                             Provenance provenance)
    : group_(std::move(group)), values_(std::move(values)), name_(std::move(name)), provenance_(provenance) {
  if (values_.size() != group_->classes().size()) {
    throw InvalidCharacter("class function has " + std::to_string(values_.size()) + " values for " +
                           std::to_string(group_->classes().size()) + " classes");
  }
}

ClassFunction::ClassFunction(GroupPtr group, const std::vector<Cyclotomic>& values, std::string name,
                             Provenance provenance)
    : ClassFunction(std::move(group), std::vector<std::optional<Cyclotomic>>(values.begin(), values.end()),
                    std::move(name), provenance) {}

bool ClassFunction::is_complete() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
}

const Cyclotomic& ClassFunction::value(std::size_t k) const {
  if (!values_.at(k)) {
    throw InsufficientData(name_.empty() ? "class function" : name_, {classes()[k].label});
  }
  return *values_[k];
}

Rational ClassFunction::degree() const { return value(0).to_rational(); }

std::vector<std::string> ClassFunction::missing(const std::vector<std::size_t>& needed) const {
  std::vector<std::string> out;
  for (std::size_t k : needed) {
    if (!values_.at(k)) out.push_back(classes()[k].label);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void ClassFunction::require(const std::vector<std::size_t>& needed, const std::string& context) const {
  auto m = missing(needed);
  if (!m.empty()) throw InsufficientData(context + (name_.empty() ? "" : " (" + name_ + ")"), m);
}

void ClassFunction::require_complete(const std::string& context) const {
  std::vector<std::size_t> all(values_.size());
  std::iota(all.begin(), all.end(), 0);
  require(all, context);
}

ClassFunction ClassFunction::conj() const {
  auto v = values_;
  for (auto& x : v) {
    if (x) x = x->conj();
  }
  return ClassFunction(group_, std::move(v), name_.empty() ? "" : "conj(" + name_ + ")", Provenance::Combination);
}

ClassFunction ClassFunction::scaled(long long k) const {
  auto v = values_;
  for (auto& x : v) {
    if (x) x = x->scaled(Rational(k));
  }
  return ClassFunction(group_, std::move(v), name_.empty() ? "" : std::to_string(k) + name_, Provenance::Combination);
}

ClassFunction operator+(const ClassFunction& a, const ClassFunction& b) {
  if (a.group_ != b.group_) throw Error("sum of class functions on different groups");
  std::vector<std::optional<Cyclotomic>> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (a.values_[k] && b.values_[k]) v[k] = *a.values_[k] + *b.values_[k];
  }
  std::string name = a.name_.empty() || b.name_.empty() ? "" : a.name_ + "+" + b.name_;
  return ClassFunction(a.group_, std::move(v), std::move(name), Provenance::Combination);
}

ClassFunction operator*(const ClassFunction& a, const ClassFunction& b) {
  if (a.group_ != b.group_) throw Error("product of class functions on different groups");
  std::vector<std::optional<Cyclotomic>> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (a.values_[k] && b.values_[k]) v[k] = *a.values_[k] * *b.values_[k];
  }
  std::string name = a.name_.empty() || b.name_.empty() ? "" : a.name_ + "*" + b.name_;
  return ClassFunction(a.group_, std::move(v), std::move(name), Provenance::Combination);
}

Character CharacterTable::combination(const std::vector<long long>& multiplicities, std::string name) const {
  if (multiplicities.size() != irreducibles.size()) throw Error("multiplicity vector has the wrong length");
  std::vector<Cyclotomic> values(group->classes().size());
  for (std::size_t i = 0; i < irreducibles.size(); ++i) {
    if (multiplicities[i] == 0) continue;
    for (std::size_t k = 0; k < values.size(); ++k) {
      values[k] += irreducibles[i].value(k).scaled(Rational(multiplicities[i]));
    }
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < multiplicities.size(); ++i) {
      if (multiplicities[i] == 0) continue;
      if (!name.empty()) name += "+";
      if (multiplicities[i] != 1) name += std::to_string(multiplicities[i]);
      name += "chi" + std::to_string(i + 1);
    }
  }
  return Character(group, values, name, Provenance::Combination);
}

// ---------------------------------------------------------------------------
// Dixon-Schneider

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 primitive_root(u64 p) {
  const auto factors = prime_divisors(p - 1);
  for (u64 g = 2;; ++g) {
    if (std::all_of(factors.begin(), factors.end(), [&](u64 q) { return powmod(g, (p - 1) / q, p) != 1; })) return g;
  }
}

using Matrix = std::vector<std::vector<u64>>;

// Null space of a d x d matrix mod p, as column vectors.
std::vector<std::vector<u64>> null_space(Matrix a, u64 p) {
  const std::size_t n = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[row]);
    const u64 inv = invmod(a[row][col], p);
    for (auto& x : a[row]) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const u64 f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = (a[r][c] + p - mulmod(f, a[row][c], p)) % p;
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = (p - a[r][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// Characteristic polynomial by Faddeev-LeVerrier (d < p), lowest degree first.
std::vector<u64> char_poly(const Matrix& a, u64 p) {
  const std::size_t d = a.size();
  std::vector<u64> c(d + 1, 0);
  c[d] = 1;
  Matrix m(d, std::vector<u64>(d, 0));
  for (std::size_t k = 1; k <= d; ++k) {
    Matrix next(d, std::vector<u64>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        u64 s = (i == j) ? c[d - k + 1] : 0;
        for (std::size_t t = 0; t < d; ++t) s = (s + mulmod(a[i][t], m[t][j], p)) % p;
        next[i][j] = s;
      }
    }
    m = std::move(next);
    u64 tr = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t t = 0; t < d; ++t) tr = (tr + mulmod(a[i][t], m[t][i], p)) % p;
    }
    c[d - k] = mulmod(p - tr % p, invmod(k % p, p), p) % p;
  }
  return c;
}

// Column basis in reduced form: rows `pivots` of the basis form an identity.
struct Space {
  std::vector<std::vector<u64>> basis;  // column vectors of length r
  std::vector<std::size_t> pivots;
};

Space make_space(std::vector<std::vector<u64>> vecs, u64 p) {
  Space s;
  for (auto& v : vecs) {
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
      const u64 f = v[s.pivots[i]];
      if (f == 0) continue;
      for (std::size_t t = 0; t < v.size(); ++t) v[t] = (v[t] + p - mulmod(f, s.basis[i][t], p)) % p;
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) continue;
    const u64 inv = invmod(v[piv], p);
    for (auto& x : v) x = mulmod(x, inv, p);
    for (auto& b : s.basis) {
      const u64 f = b[piv];
      if (f == 0) continue;
      for (std::size_t t = 0; t < b.size(); ++t) b[t] = (b[t] + p - mulmod(f, v[t], p)) % p;
    }
    s.basis.push_back(std::move(v));
    s.pivots.push_back(piv);
  }
  return s;
}

std::vector<Space> split(const Space& space, const Matrix& a, u64 p) {
  const std::size_t d = space.basis.size();
  const std::size_t r = a.size();
  // Restriction R with A B = B R, read off at the pivot rows.
  Matrix restricted(d, std::vector<u64>(d, 0));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t row = space.pivots[i];
      u64 s = 0;
      for (std::size_t t = 0; t < r; ++t) s = (s + mulmod(a[row][t], space.basis[j][t], p)) % p;
      restricted[i][j] = s;
    }
  }
  const auto poly = char_poly(restricted, p);
  std::vector<Space> out;
  for (u64 lambda = 0; lambda < p; ++lambda) {
    u64 val = 0;
    for (std::size_t k = poly.size(); k-- > 0;) val = (mulmod(val, lambda, p) + poly[k]) % p;
    if (val != 0) continue;
    Matrix shifted = restricted;
    for (std::size_t i = 0; i < d; ++i) shifted[i][i] = (shifted[i][i] + p - lambda) % p;
    std::vector<std::vector<u64>> vecs;
    for (const auto& w : null_space(shifted, p)) {
      std::vector<u64> v(r, 0);
      for (std::size_t j = 0; j < d; ++j) {
        if (w[j] == 0) continue;
        for (std::size_t t = 0; t < r; ++t) v[t] = (v[t] + mulmod(w[j], space.basis[j][t], p)) % p;
      }
      vecs.push_back(std::move(v));
    }
    out.push_back(make_space(std::move(vecs), p));
    if (out.size() == d) break;
  }
  std::size_t total = 0;
  for (const auto& s : out) total += s.basis.size();
  if (total != d) throw Error("class matrix is not diagonalizable over the chosen prime");
  return out;
}

bool less_row(const Character& a, const Character& b) {
  const Rational da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.value(k) != b.value(k)) return b.value(k) < a.value(k);
  }
  return false;
}

std::shared_ptr<const CharacterTable> compute_table(const GroupPtr& group) {
  const ConjugacyClasses& cls = group->classes();
  const std::size_t r = cls.size();
  if (r > Limits::class_bound()) {
    throw CapacityExceeded(std::to_string(r) + " classes exceed the table bound " +
                           std::to_string(Limits::class_bound()) + "; ingest the needed characters instead");
  }
  const ElementIndex& elems = group->elements();
  const u64 order = group->order();
  u64 exponent = 1;
  for (const auto& c : cls.classes()) exponent = std::lcm(exponent, c.element_order);

  u64 p = exponent + 1;
  const u64 floor = 2 * static_cast<u64>(std::sqrt(static_cast<double>(order))) + 2;
  while (p <= floor || !is_prime(p)) p += exponent;

  // a[j][k][l] = #{x in C_j : x^-1 g_l in C_k}
  std::vector<Matrix> a(r, Matrix(r, std::vector<u64>(r, 0)));
  for (std::size_t l = 0; l < r; ++l) {
    const Permutation& gl = cls[l].representative;
    for (std::size_t x = 0; x < elems.size(); ++x) {
      const std::size_t j = cls.class_of_index(x);
      const std::size_t k = cls.class_of(elems[x].inverse() * gl);
      ++a[j][k][l];
    }
  }
  for (auto& m : a) {
    for (auto& row : m) {
      for (auto& x : row) x %= p;
    }
  }

  std::vector<std::vector<u64>> start(r, std::vector<u64>(r, 0));
  for (std::size_t i = 0; i < r; ++i) start[i][i] = 1;
  std::vector<Space> spaces{make_space(start, p)};
  for (std::size_t j = 1; j < r; ++j) {
    std::vector<Space> next;
    for (const auto& s : spaces) {
      if (s.basis.size() == 1) {
        next.push_back(s);
        continue;
      }
      for (auto& piece : split(s, a[j], p)) next.push_back(std::move(piece));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw Error("eigenspace splitting did not separate the characters");

  std::vector<std::size_t> inverse(r);
  for (std::size_t l = 0; l < r; ++l) inverse[l] = cls.inverse_class(l);
  // power[l][s] = class of g_l^s
  std::vector<std::vector<std::size_t>> power(r);
  for (std::size_t l = 0; l < r; ++l) {
    for (u64 s = 0; s < cls[l].element_order; ++s) power[l].push_back(cls.power_class(l, static_cast<long long>(s)));
  }
  const u64 gamma = primitive_root(p);

  auto table = std::make_shared<CharacterTable>();
  table->group = group;
  for (const auto& s : spaces) {
    std::vector<u64> omega = s.basis.front();
    if (omega[0] == 0) throw Error("eigenvector vanishes at the identity class");
    const u64 inv0 = invmod(omega[0], p);
    for (auto& x : omega) x = mulmod(x, inv0, p);
    u64 sum = 0;
    for (std::size_t l = 0; l < r; ++l) {
      sum = (sum + mulmod(mulmod(omega[l], omega[inverse[l]], p), invmod(cls[l].size % p, p), p)) % p;
    }
    const u64 d2 = mulmod(order % p, invmod(sum, p), p);
    u64 degree = 0;
    for (u64 d = 1; d * d <= order; ++d) {
      if (mulmod(d, d, p) == d2) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw Error("no admissible degree for a character");
    std::vector<u64> modp(r);
    for (std::size_t l = 0; l < r; ++l) {
      modp[l] = mulmod(mulmod(omega[l], degree % p, p), invmod(cls[l].size % p, p), p);
    }
    std::vector<Cyclotomic> values(r);
    for (std::size_t l = 0; l < r; ++l) {
      const u64 n = cls[l].element_order;
      const u64 z = powmod(gamma, (p - 1) / n, p);
      const u64 inv_n = invmod(n % p, p);
      std::vector<std::pair<long long, Rational>> terms;
      for (u64 t = 0; t < n; ++t) {
        u64 m = 0;
        for (u64 s = 0; s < n; ++s) {
          m = (m + mulmod(modp[power[l][s]], powmod(z, (n - (t * s) % n) % n, p), p)) % p;
        }
        m = mulmod(m, inv_n, p);
        if (m > degree) throw Error("eigenvalue multiplicity out of range");
        if (m) terms.emplace_back(static_cast<long long>(t), Rational(static_cast<long long>(m)));
      }
      values[l] = Cyclotomic::from_terms(n, terms);
    }
    table->irreducibles.emplace_back(group, values, "", Provenance::ComputedIrreducible);
  }
  std::sort(table->irreducibles.begin(), table->irreducibles.end(), less_row);
  for (std::size_t i = 0; i < table->irreducibles.size(); ++i) {
    table->irreducibles[i].set_name("chi" + std::to_string(i + 1));
  }

  Rational sum_sq = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const auto& chi = table->irreducibles[i];
    sum_sq += chi.degree() * chi.degree();
    for (std::size_t j = i; j < r; ++j) {
      const Cyclotomic ip = inner_product(chi, table->irreducibles[j]);
      if (ip != Cyclotomic(i == j ? 1 : 0)) throw Error("computed table fails orthogonality");
    }
  }
  if (sum_sq != Rational(order)) throw Error("computed degrees do not satisfy sum of squares = |G|");
  return table;
}

}  // namespace

std::shared_ptr<const CharacterTable> character_table(const GroupPtr& group) {
  static std::mutex mu;
  static std::map<const PermGroup*, std::pair<std::weak_ptr<const PermGroup>, std::shared_ptr<const CharacterTable>>>
      cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(group.get());
    if (it != cache.end()) {
      if (it->second.first.lock() == group) return it->second.second;
      cache.erase(it);
    }
  }
  auto table = compute_table(group);
  std::lock_guard lock(mu);
  cache[group.get()] = {group, table};
  return table;
}

// ---------------------------------------------------------------------------
// Inner products, restriction, induction

namespace {

// Sums values with a fast path for rationals.
class Accumulator {
 public:
  void add(const Cyclotomic& x) {
    if (x.is_rational()) {
      rational_ += x.to_rational();
    } else {
      other_ += x;
    }
  }
  Cyclotomic value() const { return other_ + Cyclotomic(rational_); }

 private:
  Rational rational_ = 0;
  Cyclotomic other_;
};

}  // namespace

Cyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.group() != b.group()) throw Error("inner product of class functions on different groups");
  a.require_complete("inner product");
  b.require_complete("inner product");
  const auto& cls = a.classes();
  Accumulator acc;
  for (std::size_t k = 0; k < cls.size(); ++k) {
    acc.add((a.value(k) * b.value(k).conj()).scaled(Rational(static_cast<long long>(cls[k].size))));
  }
  return acc.value().scaled(Rational(1, static_cast<long long>(a.group()->order())));
}

std::vector<long long> decompose(const ClassFunction& chi, const CharacterTable& table) {
  std::vector<long long> out;
  for (const auto& irr : table.irreducibles) {
    const Cyclotomic m = inner_product(chi, irr);
    if (!m.is_integer()) throw InvalidCharacter("multiplicity of " + irr.name() + " is " + m.str());
    out.push_back(static_cast<long long>(numerator(m.to_rational())));
  }
  return out;
}

std::vector<std::size_t> class_fusion(const Subgroup& h) {
  const auto& parent = h.parent->classes();
  std::vector<std::size_t> out;
  for (const auto& c : h.group->classes().classes()) out.push_back(parent.class_of(c.representative));
  return out;
}

ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& h) {
  if (chi.group() != h.parent) throw Error("restriction to a subgroup of a different group");
  const auto fusion = class_fusion(h);
  std::vector<std::optional<Cyclotomic>> v;
  for (std::size_t c : fusion) v.push_back(chi.maybe(c));
  return ClassFunction(h.group, std::move(v), chi.name().empty() ? "" : "Res(" + chi.name() + ")",
                       Provenance::Combination);
}

ClassFunction induce(const ClassFunction& chi, const Subgroup& h) {
  if (chi.group() != h.group) throw Error("induction of a class function on a different group");
  chi.require_complete("induction");
  const auto fusion = class_fusion(h);
  const auto& hcls = h.group->classes();
  const auto& gcls = h.parent->classes();
  std::vector<Accumulator> acc(gcls.size());
  for (std::size_t c = 0; c < fusion.size(); ++c) {
    acc[fusion[c]].add(chi.value(c).scaled(Rational(static_cast<long long>(hcls[c].size))));
  }
  std::vector<Cyclotomic> values;
  for (std::size_t k = 0; k < gcls.size(); ++k) {
    const Rational f(static_cast<long long>(h.parent->order()),
                     static_cast<long long>(gcls[k].size * h.group->order()));
    values.push_back(acc[k].value().scaled(f));
  }
  return ClassFunction(h.parent, values, chi.name().empty() ? "" : "Ind(" + chi.name() + ")",
                       Provenance::Combination);
}

std::vector<std::uint64_t> class_distribution(const Subgroup& h) {
  const auto& cls = h.parent->classes();
  std::vector<std::uint64_t> out(cls.size(), 0);
  for (const auto& x : h.group->elements().elements()) ++out[cls.class_of(x)];
  return out;
}

std::uint64_t fixed_dim(const ClassFunction& chi, const Subgroup& h) {
  if (chi.group() != h.parent) throw Error("fixed_dim over a subgroup of a different group");
  return fixed_dim(chi, class_distribution(h));
}

std::uint64_t fixed_dim(const ClassFunction& chi, const std::vector<std::uint64_t>& distribution) {
  if (distribution.size() != chi.size()) throw Error("class distribution does not match the group");
  std::vector<std::size_t> needed;
  std::uint64_t order = 0;
  for (std::size_t k = 0; k < distribution.size(); ++k) {
    if (distribution[k]) needed.push_back(k);
    order += distribution[k];
  }
  chi.require(needed, "fixed_dim");
  Accumulator acc;
  for (std::size_t k : needed) acc.add(chi.value(k).scaled(Rational(static_cast<long long>(distribution[k]))));
  const Cyclotomic avg = acc.value().scaled(Rational(1, static_cast<long long>(order)));
  if (!avg.is_integer() || avg.to_rational() < 0) {
    throw InvalidCharacter("average of " + (chi.name().empty() ? std::string("class function") : chi.name()) +
                           " over a subgroup of order " + std::to_string(order) + " is " + avg.str() +
                           ", not a nonnegative integer");
  }
  return static_cast<std::uint64_t>(numerator(avg.to_rational()));
}

// ---------------------------------------------------------------------------
// Constructions

Character trivial_character(const GroupPtr& group) {
  return Character(group, std::vector<Cyclotomic>(group->classes().size(), Cyclotomic(1)), "1",
                   Provenance::Combination);
}

Character regular_character(const GroupPtr& group) {
  std::vector<Cyclotomic> v(group->classes().size(), Cyclotomic(0));
  v[0] = Cyclotomic(static_cast<long long>(group->order()));
  return Character(group, v, "reg", Provenance::Combination);
}

Character reduced_regular(const ElementaryAbelian& e) {
  GroupPtr g = e.subgroup().group;
  std::vector<Cyclotomic> v(g->classes().size(), Cyclotomic(-1));
  v[0] = Cyclotomic(static_cast<long long>(g->order()) - 1);
  return Character(g, v, "reduced_regular", Provenance::Combination);
}

Character central_induction(const GroupPtr& group, std::size_t j) {
  const CenterDecomposition z = center(group);
  if (z.invariant_factors.empty()) throw HypothesisFailure("center of " + group->name() + " is trivial");
  if (j >= z.invariant_factors.size()) {
    throw Error("invariant factor index " + std::to_string(j) + " out of range (" +
                std::to_string(z.invariant_factors.size()) + " factors)");
  }
  const GroupPtr zg = z.subgroup.group;
  const auto& zcls = zg->classes();
  // Walk all exponent vectors to express each central element in the basis.
  std::vector<std::optional<Cyclotomic>> values(zcls.size());
  std::vector<std::uint64_t> exps(z.invariant_factors.size(), 0);
  while (true) {
    Permutation x = group->identity();
    for (std::size_t h = 0; h < exps.size(); ++h) x = x * z.factor_generators[h].pow(static_cast<long long>(exps[h]));
    values[zcls.class_of(x)] = Cyclotomic::root_of_unity(z.invariant_factors[j], static_cast<long long>(exps[j]));
    std::size_t h = 0;
    while (h < exps.size() && ++exps[h] == z.invariant_factors[h]) exps[h++] = 0;
    if (h == exps.size()) break;
  }
  ClassFunction lin(zg, std::move(values), "lambda" + std::to_string(j + 1), Provenance::Combination);
  Character v = induce(lin, z.subgroup);
  v.set_name("V" + std::to_string(j + 1));
  return v;
}

// ---------------------------------------------------------------------------
// JSON

Json cyclotomic_to_json(const Cyclotomic& v) {
  if (v.is_integer()) return Json(static_cast<long long>(numerator(v.to_rational())));
  Json terms = Json::array();
  for (const auto& [e, c] : v.terms()) {
    Json coeff = denominator(c) == 1 ? Json(static_cast<long long>(numerator(c))) : Json(c.str());
    terms.push_back(Json::array({e, coeff}));
  }
  return Json{{"m", v.modulus()}, {"terms", terms}};
}

namespace {

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw FormatError("coefficient must be an integer or a \"p/q\" string, got " + j.dump());
}

}  // namespace

Cyclotomic cyclotomic_from_json(const Json& j) {
  if (j.is_number_integer()) return Cyclotomic(j.get<long long>());
  if (!j.is_object() || !j.contains("m") || !j.contains("terms")) {
    throw FormatError("value must be an integer or {\"m\": int, \"terms\": [[exp, coeff], ...]}, got " + j.dump());
  }
  const Json& m = j.at("m");
  if (!m.is_number_integer() || m.get<long long>() <= 0) throw FormatError("modulus must be a positive integer");
  std::vector<std::pair<long long, Rational>> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) {
      throw FormatError("term must be [exp, coeff], got " + t.dump());
    }
    terms.emplace_back(t[0].get<long long>(), rational_from_json(t[1]));
  }
  return Cyclotomic::from_terms(m.get<std::uint64_t>(), terms);
}

Json class_function_to_json(const ClassFunction& chi) {
  const auto& cls = chi.classes();
  Json classes = Json::array();
  for (std::size_t k = 0; k < cls.size(); ++k) {
    if (!chi.defined(k)) continue;
    Json rep = Json::array();
    for (Point x : cls[k].representative.images()) rep.push_back(x);
    classes.push_back(Json{{"label", cls[k].label},
                           {"order", cls[k].element_order},
                           {"size", cls[k].size},
                           {"rep", rep},
                           {"value", cyclotomic_to_json(chi.value(k))}});
  }
  return Json{{"schema", "eulercert.character/v1"},
              {"group", chi.group()->name()},
              {"name", chi.name()},
              {"provenance", to_string(chi.provenance())},
              {"classes", classes}};
}

ClassFunction ingest_class_function(const Json& j, const GroupPtr& group) {
  if (!j.is_object() || !j.contains("classes") || !j.at("classes").is_array()) {
    throw FormatError("character file needs a \"classes\" array");
  }
  if (j.contains("schema") && j.at("schema") != "eulercert.character/v1") {
    throw FormatError("unsupported character schema " + j.at("schema").dump());
  }
  const auto& cls = group->classes();
  std::vector<std::optional<Cyclotomic>> values(cls.size());
  const std::string name = j.value("name", std::string{});

  for (const auto& entry : j.at("classes")) {
    const std::string where = entry.contains("label") ? entry.at("label").dump() : entry.dump();
    if (!entry.contains("order") || !entry.contains("size") || !entry.contains("value")) {
      throw FormatError("class entry " + where + " needs order, size and value");
    }
    const auto order = entry.at("order").get<std::uint64_t>();
    const auto size = entry.at("size").get<std::uint64_t>();
    const Cyclotomic value = cyclotomic_from_json(entry.at("value"));
    if (!value.is_algebraic_integer()) {
      throw FormatError("value " + value.str() + " for class " + where + " is not an algebraic integer");
    }

    std::vector<std::size_t> candidates;
    for (std::size_t k = 0; k < cls.size(); ++k) {
      if (cls[k].element_order == order && cls[k].size == size) candidates.push_back(k);
    }
    if (candidates.empty()) {
      throw FormatError("class " + where + " (order " + std::to_string(order) + ", size " + std::to_string(size) +
                        ") does not exist in " + group->name());
    }
    std::vector<std::size_t> targets;
    if (entry.contains("rep")) {
      const Json& rep_json = entry.at("rep");
      std::vector<long long> images;
      for (const auto& x : rep_json) images.push_back(x.get<long long>());
      const Permutation rep = Permutation::from_images(images);
      if (rep.degree() != group->degree()) throw FormatError("representative of class " + where + " has wrong degree");
      const std::size_t k = cls.class_of(rep);
      if (std::find(candidates.begin(), candidates.end(), k) == candidates.end()) {
        throw FormatError("representative of class " + where + " lies in " + cls[k].label +
                          ", whose order or size differs");
      }
      targets = {k};
    } else if (entry.value("rational", false)) {
      if (!value.is_rational()) throw FormatError("class " + where + " is marked rational but its value is not");
      std::set<std::size_t> galois;
      for (std::uint64_t s = 1; s <= order; ++s) {
        if (std::gcd(s, order) == 1) galois.insert(cls.power_class(candidates.front(), static_cast<long long>(s)));
      }
      for (std::size_t k : candidates) {
        if (!galois.count(k)) {
          std::string list;
          for (std::size_t c : candidates) list += (list.empty() ? "" : ", ") + cls[c].label;
          throw FormatError("class " + where + " is ambiguous: candidates " + list +
                            " are not a single rational class; add \"rep\"");
        }
      }
      targets.assign(galois.begin(), galois.end());
    } else if (candidates.size() == 1) {
      targets = candidates;
    } else {
      std::string list;
      for (std::size_t c : candidates) list += (list.empty() ? "" : ", ") + cls[c].label;
      throw FormatError("class " + where + " is ambiguous: candidates " + list +
                        "; add \"rep\" or \"rational\": true");
    }
    for (std::size_t k : targets) {
      if (values[k] && *values[k] != value) throw FormatError("conflicting values for class " + cls[k].label);
      values[k] = value;
    }
  }
  if (!values[0]) throw FormatError("character file gives no value at the identity");
  if (!values[0]->is_integer() || values[0]->to_rational() < 1) {
    throw FormatError("degree must be a positive integer");
  }
  ClassFunction chi(group, std::move(values), name, Provenance::Ingested);
  // A claimed computed provenance is accepted only after checking it against the table.
  const std::string claimed = j.value("provenance", to_string(Provenance::Ingested));
  if (claimed == to_string(Provenance::Ingested)) return chi;
  if (!chi.is_complete()) throw FormatError("character with provenance " + claimed + " must be complete");
  const auto table = character_table(group);
  if (claimed == to_string(Provenance::ComputedIrreducible)) {
    if (std::find(table->irreducibles.begin(), table->irreducibles.end(), chi) == table->irreducibles.end()) {
      throw FormatError("character " + name + " is not an irreducible of " + group->name());
    }
    chi.set_provenance(Provenance::ComputedIrreducible);
  } else if (claimed == to_string(Provenance::Combination)) {
    const auto m = decompose(chi, *table);
    if (std::any_of(m.begin(), m.end(), [](long long x) { return x < 0; })) {
      throw FormatError("character " + name + " is a virtual character");
    }
    chi.set_provenance(Provenance::Combination);
  } else {
    throw FormatError("unknown provenance " + claimed);
  }
  return chi;
}

}  // namespace eulercert
