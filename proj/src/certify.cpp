#include "eulercert/certify.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "eulercert/error.hpp"
#include "eulercert/io.hpp"

namespace eulercert {

using Json = nlohmann::json;

namespace {

constexpr const char* kCertificateSchema = "eulercert.certificate/v1";

const char* kSymbolicNote =
    "N is symbolic: the first sphere comes from the finite-complex construction and its dimension is not computed";
const char* kHsopNote =
    "h.s.o.p.: effectiveness of the Euler class beta is machine-checked; a companion class alpha completing a "
    "homogeneous system of parameters is taken from the rank-two theorem, not computed";
const char* kAlignmentNote =
    "alignment: whether the lcm-aligned class satisfies the rank-two degree hypotheses as the product-aligned "
    "class does is unsettled; both are reported";

std::string group_label(const GroupPtr& g) { return g->name().empty() ? "G" : g->name(); }

std::string generators_str(const std::vector<Permutation>& gens) {
  std::string s = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].cycle_string();
  return s + ">";
}

std::uint64_t character_degree(const Character& chi) {
  const Rational d = chi.degree();
  if (d < 1 || denominator(d) != 1) throw InvalidCharacter("character degree " + d.str() + " is not a positive integer");
  return static_cast<std::uint64_t>(numerator(d));
}

Alignment alignment_from_string(const std::string& s) {
  if (s == "lcm") return Alignment::Lcm;
  if (s == "product") return Alignment::Product;
  throw FormatError("unknown alignment \"" + s + "\"");
}

Theorem theorem_from_string(const std::string& s) {
  for (Theorem t : {Theorem::RankOneIsotropy, Theorem::RankTwo, Theorem::PGroupCenter, Theorem::Gluing}) {
    if (to_string(t) == s) return t;
  }
  throw FormatError("unknown theorem tag \"" + s + "\"");
}

Json sphere_json(const SphereDim& s) {
  Json j = s.dimension ? Json(*s.dimension) : Json("N");
  if (s.p_local) return Json{{"dimension", j}, {"p_local", s.p_local}};
  return j;
}

// Missing classes among those meeting <gens>, for an undecided isotropy row.
std::vector<std::string> missing_on(const std::vector<Character>& factors, const std::vector<Permutation>& gens) {
  const GroupPtr& g = factors.front().group();
  const auto dist = class_distribution(make_subgroup(g, gens));
  std::vector<std::size_t> needed;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist[k]) needed.push_back(k);
  }
  std::vector<std::string> out;
  for (const auto& f : factors) {
    for (auto& l : f.missing(needed)) out.push_back(std::move(l));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string SphereDim::str() const {
  std::string s = "S^" + (dimension ? std::to_string(*dimension) : std::string("N"));
  if (p_local) s += "_(" + std::to_string(p_local) + ")";
  return s;
}

std::uint64_t join_dim(std::uint64_t k, std::uint64_t r) {
  if (k == 0) throw Error("join of zero spheres");
  return k * (r + 1) - 1;
}

SphereDim sphere_of_character(const Character& chi) { return SphereDim::of(2 * character_degree(chi) - 1); }

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::RankOneIsotropy: return "rank-one-isotropy";
    case Theorem::RankTwo: return "rank-two";
    case Theorem::PGroupCenter: return "p-group-center";
    case Theorem::Gluing: return "gluing";
  }
  return "unknown";
}

std::string to_string(Alignment a) { return a == Alignment::Lcm ? "lcm" : "product"; }

// ---------------------------------------------------------------------------
// Assembly

AssembledClass assemble_local(const GroupPtr& group, const std::vector<LocalEulerCertificate>& certs) {
  AssembledClass a;
  for (const auto& c : certs) {
    if (!c.positive) {
      throw HypothesisFailure("local certificate at p=" + std::to_string(c.p) + " for " + c.target + " is negative");
    }
    if (c.degree == 0) throw HypothesisFailure("local certificate at p=" + std::to_string(c.p) + " has degree 0");
    if (!a.degrees.emplace(c.p, c.degree).second) {
      throw HypothesisFailure("two local certificates at p=" + std::to_string(c.p));
    }
  }
  const auto primes = maximal_rank_primes(group);
  for (std::uint64_t p : primes) {
    if (!a.degrees.count(p)) throw HypothesisFailure("no local certificate at maximal-rank prime " + std::to_string(p));
  }
  for (const auto& [p, d] : a.degrees) {
    if (std::find(primes.begin(), primes.end(), p) == primes.end()) {
      throw HypothesisFailure("p=" + std::to_string(p) + " is not a maximal-rank prime of " + group_label(group));
    }
  }
  a.locals = certs;
  a.lcm_degree = 1;
  a.product_degree = 1;
  for (const auto& [p, d] : a.degrees) {
    a.lcm_degree = std::lcm(a.lcm_degree, d);
    a.product_degree *= d;
  }
  return a;
}

AssembledClass assemble_local(const GroupPtr& group, const std::vector<GraphOfGroups>& sources) {
  std::vector<LocalEulerCertificate> certs;
  for (const auto& g : sources) certs.push_back(local_certificate(g));
  AssembledClass a = assemble_local(group, certs);
  a.sources = sources;
  return a;
}

// ---------------------------------------------------------------------------
// Certificates

ActionCertificate::ActionCertificate(GroupPtr group, Theorem theorem, CertificateInputs inputs,
                                     CertificateHypotheses hypotheses, std::vector<SphereDim> conclusion,
                                     std::vector<std::string> notes)
    : group_(std::move(group)),
      theorem_(theorem),
      inputs_(std::move(inputs)),
      hypotheses_(std::move(hypotheses)),
      conclusion_(std::move(conclusion)),
      notes_(std::move(notes)) {
  if (hypotheses_.empty()) throw ValidationError("action certificate without verified hypotheses");
  if (conclusion_.empty()) throw ValidationError("action certificate without a conclusion");
  group_rank_ = rank(group_);
  primes_ = eulercert::maximal_rank_primes(group_);
}

std::string ActionCertificate::statement() const {
  std::string s;
  for (const auto& f : conclusion_) s += (s.empty() ? "" : " x ") + f.str();
  if (conclusion_.front().is_symbolic()) return "Y ~ " + s;
  return group_label(group_) + " acts freely on " + s;
}

ActionCertificate apply_rank_one_isotropy(const GroupPtr& group, const std::vector<Character>& factors) {
  if (factors.empty()) throw HypothesisFailure("no representations given");
  for (const auto& f : factors) {
    if (f.group() != group) throw Error("character " + f.name() + " lives on a different group");
  }
  IsotropyProfile profile = isotropy_profile(factors);
  if (profile.max_isotropy_rank >= 2) {
    for (const auto& row : profile.rows) {
      if (row.rank < 2) continue;
      if (row.fixes_point.value_or(false)) {
        throw HypothesisFailure("rank-" + std::to_string(row.rank) + " subgroup " + generators_str(row.generators) +
                                " fixes a point in every factor");
      }
    }
    for (const auto& row : profile.rows) {
      if (row.rank >= 2 && !row.fixes_point) {
        throw InsufficientData("isotropy of " + generators_str(row.generators), missing_on(factors, row.generators));
      }
    }
  }
  CertificateHypotheses h;
  if (factors.size() == 1) h.effectiveness.push_back(is_effective(factors.front()));
  h.profile = std::move(profile);
  std::vector<SphereDim> conclusion{SphereDim::symbolic()};
  for (const auto& f : factors) conclusion.push_back(sphere_of_character(f));
  return ActionCertificate(group, Theorem::RankOneIsotropy, {factors, std::nullopt, std::nullopt}, std::move(h),
                           std::move(conclusion),
                           {"isotropy: every isotropy subgroup has rank at most one", kSymbolicNote});
}

ActionCertificate apply_center_construction(const GroupPtr& group, std::uint64_t p) {
  const unsigned r = rank(group);
  const CenterDecomposition z = center(group);
  const unsigned rz = z.subgroup.order() % p == 0 ? p_rank(z.subgroup.group, p) : 0;
  const bool free = rz == r;
  if (r == 0 || (rz + 1 != r && !free)) {
    throw HypothesisFailure("r_" + std::to_string(p) + "(Z(G)) = " + std::to_string(rz) + " but r(G) = " +
                            std::to_string(r) + "; the center construction needs r(G) - 1 or r(G)");
  }
  // Invariant factors ascend by divisibility, so the p-divisible ones come last.
  std::vector<Character> factors;
  const std::size_t k = z.invariant_factors.size();
  const unsigned wanted = free ? r : r - 1;
  for (std::size_t j = k - wanted; j < k; ++j) factors.push_back(central_induction(group, j));

  CertificateHypotheses h;
  for (const auto& f : factors) h.effectiveness.push_back(is_effective(f));
  IsotropyProfile profile = isotropy_profile(factors);
  if (free ? !profile.free : profile.max_isotropy_rank > 1) {
    throw HypothesisFailure(free ? "central characters do not give a free action"
                                 : "central characters leave isotropy of rank two");
  }
  h.profile = std::move(profile);
  std::vector<SphereDim> conclusion;
  std::vector<std::string> notes{"dimension: each factor is S^(2[G:Z(G)]-1)"};
  if (!free) {
    conclusion.push_back(SphereDim::symbolic());
    notes.push_back(kSymbolicNote);
  }
  for (const auto& f : factors) conclusion.push_back(sphere_of_character(f));
  return ActionCertificate(group, Theorem::PGroupCenter, {{}, p, std::nullopt}, std::move(h), std::move(conclusion),
                           std::move(notes));
}

ActionCertificate apply_rank_two(const GroupPtr& group, const EffectivenessCertificate& beta) {
  const unsigned r = rank(group);
  if (r != 2) throw HypothesisFailure("the rank-two theorem needs r(G) = 2, got " + std::to_string(r));
  if (beta.character.group() != group) throw Error("Euler class character lives on a different group");
  EffectivenessCertificate checked = is_effective(beta.character);
  if (!checked.effective) throw HypothesisFailure("the Euler class of " + beta.character.name() + " is not effective");
  const std::uint64_t d = character_degree(beta.character);
  if (2 * d <= 2) throw HypothesisFailure("the Euler class has degree 2; the rank-two theorem needs degree > 2");
  CertificateHypotheses h;
  h.effectiveness.push_back(std::move(checked));
  return ActionCertificate(group, Theorem::RankTwo, {{beta.character}, std::nullopt, std::nullopt}, std::move(h),
                           {SphereDim::symbolic(), sphere_of_character(beta.character)}, {kHsopNote, kSymbolicNote});
}

ActionCertificate apply_rank_two(const GroupPtr& group, const AssembledClass& beta, Alignment alignment) {
  const unsigned r = rank(group);
  if (r != 2) throw HypothesisFailure("the rank-two theorem needs r(G) = 2, got " + std::to_string(r));
  // Reassemble so that only verified local certificates are cited.
  AssembledClass a = beta.sources.empty() ? assemble_local(group, beta.locals) : assemble_local(group, beta.sources);
  const std::uint64_t d = a.degree(alignment);
  if (d % 2 != 0 || d <= 2) {
    throw HypothesisFailure("aligned degree " + std::to_string(d) + " must be even and larger than 2");
  }
  std::vector<std::string> notes{kHsopNote, kSymbolicNote};
  for (const auto& l : a.locals) {
    if (!l.equivalence.empty()) {
      notes.push_back("p-equivalence at p=" + std::to_string(l.p) + " declared, not verified: " + l.equivalence);
    }
  }
  if (a.degrees.size() > 1) notes.push_back(kAlignmentNote);
  return ActionCertificate(group, Theorem::RankTwo, {{}, std::nullopt, alignment}, {{}, std::nullopt, std::move(a)},
                           {SphereDim::symbolic(), SphereDim::of(d - 1)}, std::move(notes));
}

// ---------------------------------------------------------------------------
// Serialization

Json to_json(const AssembledClass& a) {
  Json degrees = Json::object(), lcm_powers = Json::object(), product_powers = Json::object();
  for (const auto& [p, d] : a.degrees) {
    degrees[std::to_string(p)] = d;
    lcm_powers[std::to_string(p)] = a.lcm_degree / d;
    product_powers[std::to_string(p)] = a.product_degree / d;
  }
  Json locals = Json::array();
  for (const auto& l : a.locals) locals.push_back(to_json(l));
  return {{"step", to_string(Theorem::Gluing)},
          {"degrees", degrees},
          {"lcm_degree", a.lcm_degree},
          {"product_degree", a.product_degree},
          {"lcm_powers", lcm_powers},
          {"product_powers", product_powers},
          {"locals", locals}};
}

Json to_json(const ActionCertificate& c) {
  Json characters = Json::array();
  for (const auto& chi : c.inputs().characters) characters.push_back(class_function_to_json(chi));
  Json amalgams = Json::array();
  if (c.hypotheses().assembly) {
    for (const auto& g : c.hypotheses().assembly->sources) amalgams.push_back(to_json(g));
  }
  Json inputs{{"characters", characters},
              {"prime", c.inputs().prime ? Json(*c.inputs().prime) : Json(nullptr)},
              {"alignment", c.inputs().alignment ? Json(to_string(*c.inputs().alignment)) : Json(nullptr)},
              {"amalgams", amalgams}};
  Json eff = Json::array();
  for (const auto& e : c.hypotheses().effectiveness) eff.push_back(to_json(e));
  Json hyp{{"effectiveness", eff},
           {"isotropy", c.hypotheses().profile ? to_json(*c.hypotheses().profile) : Json(nullptr)},
           {"assembly", c.hypotheses().assembly ? to_json(*c.hypotheses().assembly) : Json(nullptr)}};
  Json spheres = Json::array();
  for (const auto& s : c.conclusion()) spheres.push_back(sphere_json(s));
  return {{"schema", kCertificateSchema},
          {"theorem", to_string(c.theorem())},
          {"group", io::group_to_json(*c.group())},
          {"group_order", c.group()->order()},
          {"group_rank", c.group_rank()},
          {"maximal_rank_primes", c.maximal_rank_primes()},
          {"inputs", inputs},
          {"hypotheses", hyp},
          {"conclusion", {{"spheres", spheres}, {"statement", c.statement()}}},
          {"notes", c.notes()}};
}

std::string report_text(const ActionCertificate& c) {
  std::ostringstream out;
  const GroupPtr& g = c.group();
  out << "certificate: " << to_string(c.theorem()) << "\n";
  out << "group: " << group_label(g) << ", order " << g->order() << ", rank " << c.group_rank()
      << ", maximal-rank primes";
  for (std::uint64_t p : c.maximal_rank_primes()) out << " " << p;
  out << "\n";
  for (const auto& chi : c.inputs().characters) {
    out << "character " << (chi.name().empty() ? "?" : chi.name()) << ": degree " << chi.degree() << ", "
        << sphere_of_character(chi).str() << " (" << to_string(chi.provenance()) << ")\n";
  }
  for (const auto& e : c.hypotheses().effectiveness) {
    out << "[effective] " << (e.character.name().empty() ? "?" : e.character.name()) << ": "
        << (e.effective ? "effective" : "not effective") << "\n";
    for (const auto& v : e.primes) {
      out << "  p=" << v.p << ": r_p=" << v.p_rank << (v.vacuous ? " (vacuous)" : "")
          << (v.effective ? " effective" : " not effective") << ", " << v.witnesses.size()
          << " subgroup(s) with fixed_dim 0";
      if (v.free_element) out << "; " << v.free_element->class_label << " acts freely (fixed_dim 0)";
      out << "\n";
      for (const auto& w : v.witnesses) {
        out << "    " << generators_str(w.generators) << " fixed_dim " << w.fixed_dim;
        if (w.cyclic_generator) out << " (bounded by <" << w.cyclic_generator->cycle_string() << ">)";
        out << "\n";
      }
    }
  }
  if (const auto& prof = c.hypotheses().profile) {
    out << "[rank one isotropy] max isotropy rank " << prof->max_isotropy_rank
        << (prof->undetermined ? " (upper bound)" : "") << (prof->free ? ", free" : "") << "\n";
    for (const auto& row : prof->rows) {
      out << "  p=" << row.p << " rank " << row.rank << " " << generators_str(row.generators) << " fixed dims";
      for (const auto& d : row.fixed_dims) out << " " << (d ? std::to_string(*d) : std::string("?"));
      out << " -> " << (row.fixes_point ? (*row.fixes_point ? "fixes a point" : "no fixed point") : "undetermined")
          << "\n";
    }
  }
  if (const auto& a = c.hypotheses().assembly) {
    out << "[gluing] local Euler classes:\n";
    for (const auto& l : a->locals) {
      out << "  p=" << l.p << ": " << l.target << ", degree " << l.degree << ", local rank " << l.local_rank
          << (l.positive ? ", positive" : ", negative") << "\n";
    }
    out << "  alignment: lcm " << a->lcm_degree << ", product " << a->product_degree;
    if (c.inputs().alignment) out << " (using " << to_string(*c.inputs().alignment) << ")";
    out << "\n";
  }
  out << "conclusion: " << c.statement() << "\n";
  for (const auto& n : c.notes()) out << "note: " << n << "\n";
  return out.str();
}

ReplayResult replay(const Json& j) {
  if (!j.is_object() || j.value("schema", std::string{}) != kCertificateSchema) {
    throw FormatError(std::string("expected schema ") + kCertificateSchema);
  }
  try {
    const GroupPtr group = io::group_from_json(j.at("group"));
    const Json& in = j.at("inputs");
    std::vector<Character> characters;
    for (const auto& c : in.at("characters")) characters.push_back(ingest_class_function(c, group));
    std::vector<GraphOfGroups> amalgams;
    for (const auto& g : in.at("amalgams")) amalgams.push_back(graph_of_groups_from_json(g, "."));
    const Theorem theorem = theorem_from_string(j.at("theorem").get<std::string>());

    auto rebuild = [&]() -> ActionCertificate {
      switch (theorem) {
        case Theorem::RankOneIsotropy: return apply_rank_one_isotropy(group, characters);
        case Theorem::PGroupCenter: return apply_center_construction(group, in.at("prime").get<std::uint64_t>());
        case Theorem::RankTwo:
        case Theorem::Gluing:
          if (!amalgams.empty()) {
            return apply_rank_two(group, assemble_local(group, amalgams),
                                  alignment_from_string(in.at("alignment").get<std::string>()));
          }
          if (j.at("hypotheses").at("assembly").is_object()) {
            throw FormatError("assembled certificate does not embed its amalgams and cannot be replayed");
          }
          if (characters.size() != 1) throw FormatError("rank-two certificate needs exactly one character");
          return apply_rank_two(group, is_effective(characters.front()));
      }
      throw FormatError("unknown theorem");
    };
    ReplayResult r;
    r.original = io::dump(j);
    r.certificate = rebuild();
    r.regenerated = io::dump(to_json(*r.certificate));
    r.reproduced = r.original == r.regenerated;
    return r;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
}

}  // namespace eulercert
