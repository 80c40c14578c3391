#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vex/core/mapping.hpp"
#include "vex/families/family.hpp"
#include "vex/prefs/levelset.hpp"

namespace vex {

enum class Property { Extremal, Stationary, ApproxStationary, ExtremalPoint };

std::string property_str(Property p);
Property parse_property(const std::string& s);

/// Finite audit schedule standing in for "for every ε > 0".
struct EpsSchedule {
  std::vector<Rational> levels;

  /// 2^-1, ..., 2^-k
  static EpsSchedule dyadic(int k);
  void validate() const;
};

/// The extremality radius grid: +inf, then 2^k for k = depth down to -depth.
std::vector<ExtRational> rho_grid(int depth);

/// One (ρ, x̄ + c0 + c1·r + c2·r²) candidate common point per grid radius.
/// Extremal templates use r = min(ρ, cap) and the level ε = e0 + e1·r + e2·r²;
/// stationary templates use r = ρ and the fixed level eps_star over every
/// grid ρ < eps_star.
struct RefutationTemplate {
  std::string name;
  Property property = Property::Extremal;
  std::optional<Rational> cap;
  Vec c0, c1, c2;
  Rational e0, e1, e2;
  Rational eps_star;
};

/// Templates shipped with the library; each is verified exactly before use.
std::vector<RefutationTemplate> builtin_templates();

struct SearchConfig {
  std::size_t budget = 64;
  int grid_depth = 12;
  /// Restricts the extremality search (and refutation) to one radius.
  std::optional<ExtRational> rho_only;
  std::vector<RefutationTemplate> templates;
  bool use_builtin_templates = true;
  /// Per-family member cap inside multi-mapping combinations.
  std::size_t multi_member_cap = 4;
};

struct WitnessRecord {
  Rational eps;
  ExtRational rho;
  std::vector<MemberParam> params;
  std::vector<SetExpr> members;
  /// Shift points x_i; empty for extremality and stationarity.
  std::vector<Vec> shifts;
};

struct RefutationEvidence {
  ExtRational rho;
  Rational eps;
  Vec point;
};

struct CheckVerdict {
  enum class Outcome { HoldsOnSchedule, RefutedOnGrid, Inconclusive };

  Property property = Property::Extremal;
  Outcome outcome = Outcome::Inconclusive;
  std::optional<ExtRational> rho;
  std::vector<WitnessRecord> witnesses;
  std::optional<Rational> eps_star;
  std::string template_name;
  std::vector<RefutationEvidence> evidence;
  std::string reason;

  bool holds() const { return outcome == Outcome::HoldsOnSchedule; }
  bool refuted() const { return outcome == Outcome::RefutedOnGrid; }
};

std::string outcome_str(CheckVerdict::Outcome o);

/// Definition of extremality, stationarity and approximate stationarity for
/// a collection of families at x̄, audited on the schedule.
CheckVerdict check_collection(const std::vector<SetFamily>& families, const Vec& x_bar, Property property,
                              const EpsSchedule& schedule, const SearchConfig& cfg = {});

/// Re-verifies one witness from scratch.
bool verify_witness(const std::vector<SetFamily>& families, const Vec& x_bar, Property property,
                    const WitnessRecord& w);

/// Re-verifies one refutation point: it lies in B_ρ(x̄) and in every member
/// within the evidence level of x̄.
bool verify_evidence(const std::vector<SetFamily>& families, const Vec& x_bar, Property property,
                     const RefutationEvidence& e);

/// {F, Ω, Ξ} with x̄ ∈ Ω and ȳ ∈ F(x̄).
struct TripleProblem {
  MappingExpr F;
  SetExpr omega;
  SetFamily family;
  Vec x_bar, y_bar;

  /// Checks dimensions and the reference point; throws MalformedInput.
  static TripleProblem make(MappingExpr F, SetExpr omega, SetFamily family, Vec x_bar, Vec y_bar);

  /// {gph F} and {Ω × A : A ∈ Ξ}
  std::vector<SetFamily> pair() const;
  Vec ref() const { return concat(x_bar, y_bar); }
};

CheckVerdict check_triple(const TripleProblem& p, Property property, const EpsSchedule& schedule,
                          const SearchConfig& cfg = {});

/// Extremality of (x̄, ȳ) for F on Ω under the preference L, decided exactly
/// for each radius of the grid.
CheckVerdict check_extremal_point(const MappingExpr& F, const SetExpr& omega, const LevelSetMapping& l,
                                  const Vec& x_bar, const Vec& y_bar, const std::vector<ExtRational>& grid);

/// Mappings F_i : ℝᵈ ⇉ ℝ^{m_i} with families Ξ_i.
struct MultiProblem {
  std::vector<MappingExpr> mappings;
  std::vector<SetFamily> families;
  SetExpr omega;
  Vec x_bar;
  std::vector<Vec> y_bars;

  static MultiProblem make(std::vector<MappingExpr> mappings, std::vector<SetFamily> families, SetExpr omega,
                           Vec x_bar, std::vector<Vec> y_bars);
};

/// Witness of the multi-mapping approximate stationarity characterization.
struct MultiWitness {
  Rational eps, rho;
  std::vector<MemberParam> params;
  std::vector<SetExpr> members;
  std::vector<Vec> xs;  // x_1..x_{n+1}
  std::vector<Vec> ys;  // y_1..y_n
  std::vector<Vec> vs;  // v_1..v_n
};

struct MultiVerdict {
  CheckVerdict::Outcome outcome = CheckVerdict::Outcome::Inconclusive;
  std::vector<MultiWitness> witnesses;
  std::string reason;
};

/// Only approximate stationarity is characterized for several mappings.
MultiVerdict check_multi(const MultiProblem& p, const EpsSchedule& schedule, const SearchConfig& cfg = {});

bool verify_multi_witness(const MultiProblem& p, const MultiWitness& w);

/// Extremal witness at level ε with radius ρ0 turned into a stationary one
/// (ρ = min(ε/2, ρ0), members chosen within ερ). Empty when no member
/// combination is found; the result is always re-verified.
std::optional<WitnessRecord> extremal_to_stationary(const std::vector<SetFamily>& families, const Vec& x_bar,
                                                    const ExtRational& rho0, const Rational& eps,
                                                    const SearchConfig& cfg = {});

/// Stationary witness with all shifts x_i = x̄.
WitnessRecord stationary_to_approx(const WitnessRecord& w, const Vec& x_bar);

}  // namespace vex
