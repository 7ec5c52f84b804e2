#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "eulercert/amalgam.hpp"
#include "eulercert/character.hpp"
#include "eulercert/effectiveness.hpp"

namespace eulercert {

/// A sphere S^d, or the symbolic S^N, integral or localized at a prime.
struct SphereDim {
  std::optional<std::uint64_t> dimension;  // unset for N
  std::uint64_t p_local = 0;               // 0 for integral

  static SphereDim symbolic() { return {}; }
  static SphereDim of(std::uint64_t d, std::uint64_t p = 0) { return {d, p}; }
  bool is_symbolic() const { return !dimension.has_value(); }
  std::string str() const;  // "S^N", "S^11", "S^11_(2)"
  friend bool operator==(const SphereDim&, const SphereDim&) = default;
};

/// The k-fold join of S^r is S^(k(r+1)-1).
std::uint64_t join_dim(std::uint64_t k, std::uint64_t r);
/// S(V) for a character of degree d is S^(2d-1).
SphereDim sphere_of_character(const Character& chi);

enum class Theorem { RankOneIsotropy, RankTwo, PGroupCenter, Gluing };
std::string to_string(Theorem t);

enum class Alignment { Lcm, Product };
std::string to_string(Alignment a);

/// Per-prime local Euler classes raised to a common integral degree.
struct AssembledClass {
  std::vector<LocalEulerCertificate> locals;
  std::vector<GraphOfGroups> sources;  // empty when assembled from bare certificates
  std::map<std::uint64_t, std::uint64_t> degrees;
  std::uint64_t lcm_degree = 0;
  std::uint64_t product_degree = 0;

  std::uint64_t degree(Alignment a) const { return a == Alignment::Lcm ? lcm_degree : product_degree; }
};

/// Throws HypothesisFailure unless the primes are exactly the maximal-rank
/// primes of `group` and every certificate is positive.
AssembledClass assemble_local(const GroupPtr& group, const std::vector<LocalEulerCertificate>& certs);
AssembledClass assemble_local(const GroupPtr& group, const std::vector<GraphOfGroups>& sources);

struct CertificateInputs {
  std::vector<Character> characters;
  std::optional<std::uint64_t> prime;
  std::optional<Alignment> alignment;
};

struct CertificateHypotheses {
  std::vector<EffectivenessCertificate> effectiveness;
  std::optional<IsotropyProfile> profile;
  std::optional<AssembledClass> assembly;

  bool empty() const { return effectiveness.empty() && !profile && !assembly; }
};

class ActionCertificate {
 public:
  /// Throws ValidationError for empty hypotheses or an empty conclusion.
  ActionCertificate(GroupPtr group, Theorem theorem, CertificateInputs inputs, CertificateHypotheses hypotheses,
                    std::vector<SphereDim> conclusion, std::vector<std::string> notes);

  const GroupPtr& group() const { return group_; }
  Theorem theorem() const { return theorem_; }
  unsigned group_rank() const { return group_rank_; }
  const std::vector<std::uint64_t>& maximal_rank_primes() const { return primes_; }
  const CertificateInputs& inputs() const { return inputs_; }
  const CertificateHypotheses& hypotheses() const { return hypotheses_; }
  /// Factors of Y (or of the acted-on space in the free case).
  const std::vector<SphereDim>& conclusion() const { return conclusion_; }
  const std::vector<std::string>& notes() const { return notes_; }
  /// e.g. "Y ~ S^N x S^11".
  std::string statement() const;

 private:
  GroupPtr group_;
  Theorem theorem_;
  unsigned group_rank_ = 0;
  std::vector<std::uint64_t> primes_;
  CertificateInputs inputs_;
  CertificateHypotheses hypotheses_;
  std::vector<SphereDim> conclusion_;
  std::vector<std::string> notes_;
};

/// Y ~ S^N x S(V_1) x ... x S(V_k). Throws HypothesisFailure naming a
/// rank-two subgroup that fixes a point in every factor, or InsufficientData.
ActionCertificate apply_rank_one_isotropy(const GroupPtr& group, const std::vector<Character>& factors);
/// Central characters Ind_Z^G for r_p(Z(G)) = r(G) - 1, or r(G) (free action, no S^N).
ActionCertificate apply_center_construction(const GroupPtr& group, std::uint64_t p);
/// Y ~ S^N x S^(2d-1) from an effective character of degree d >= 2 on a rank-two group.
ActionCertificate apply_rank_two(const GroupPtr& group, const EffectivenessCertificate& beta);
/// Same from an assembled class, using the chosen alignment. The graphs
/// in `beta.sources` are embedded for replay.
ActionCertificate apply_rank_two(const GroupPtr& group, const AssembledClass& beta, Alignment alignment);

nlohmann::json to_json(const AssembledClass& a);
nlohmann::json to_json(const ActionCertificate& c);
std::string report_text(const ActionCertificate& c);

struct ReplayResult {
  bool reproduced = false;
  std::string original;
  std::string regenerated;
  std::optional<ActionCertificate> certificate;
};
/// Rebuilds the certificate from its embedded inputs, re-running every check,
/// and compares the serializations byte for byte.
ReplayResult replay(const nlohmann::json& certificate);

}  // namespace eulercert
